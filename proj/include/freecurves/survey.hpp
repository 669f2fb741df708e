// Exhaustive surveys of short free homotopy classes: enumerate canonical
// cyclic words up to a length cap, filter by series membership, compute
// self-intersection numbers, and report the minimum plus a histogram.
//
// Work is partitioned into fixed blocks of the word enumeration; block
// results merge associatively in block order, so output is identical for
// any worker count.
#pragma once

#include <atomic>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "freecurves/intersection.hpp"
#include "freecurves/magnus.hpp"
#include "freecurves/surfaces.hpp"
#include "freecurves/words.hpp"

namespace freecurves {

enum class SeriesFilter {
    lcs,      ///< lcs_weight(w) >= k
    derived2, ///< w in [F, F] (k = 2 only)
};

inline std::string to_string(SeriesFilter s) {
    return s == SeriesFilter::lcs ? "lcs" : "derived2";
}

struct SurveyRequest {
    SurfaceWithBoundary surface;
    SeriesFilter series = SeriesFilter::lcs;
    int k = 1;
    int max_len = 6;
    int jobs = 1;
};

/// Histogram cell: classes of one (length, weight) pair.
struct SurveyCell {
    uint64_t count = 0;
    uint64_t min_i = UINT64_MAX;
};

struct SurveyResult {
    SurveyRequest request;
    uint64_t classes_scanned = 0;
    uint64_t classes_matching = 0;
    std::optional<uint64_t> min_i;
    std::optional<CyclicWord> witness; ///< first class attaining the minimum
    std::map<std::pair<int, int>, SurveyCell> histogram; ///< keyed (length, weight)
    double elapsed_seconds = 0;
};

namespace detail {

/// True when w is its own canonical cyclic form: cyclically reduced and the
/// least rotation. Each conjugacy class of length <= cap appears exactly
/// once among such words.
inline bool is_canonical_cyclic(const Word& w) {
    const auto& ls = w.letters();
    if (ls.empty()) return false;
    if (ls.front() == ls.back().inverse() && ls.size() >= 2) return false;
    return least_rotation(ls) == 0;
}

struct SurveyBlock {
    uint64_t scanned = 0;
    uint64_t matching = 0;
    std::optional<uint64_t> min_i;
    std::optional<CyclicWord> witness;
    std::map<std::pair<int, int>, SurveyCell> histogram;

    void merge_from(const SurveyBlock& later) {
        scanned += later.scanned;
        matching += later.matching;
        if (later.min_i && (!min_i || *later.min_i < *min_i)) {
            min_i = later.min_i;
            witness = later.witness;
        }
        for (const auto& [key, cell] : later.histogram) {
            SurveyCell& mine = histogram[key];
            mine.count += cell.count;
            mine.min_i = std::min(mine.min_i, cell.min_i);
        }
    }
};

template <typename PerClass>
void run_blocks(int rank, int max_len, int jobs, std::vector<SurveyBlock>& blocks,
                PerClass&& per_class) {
    const uint64_t total = word_count_upto(rank, max_len);
    const uint64_t block_size = 4096;
    const uint64_t n_blocks = (total + block_size - 1) / block_size;
    blocks.assign(n_blocks, SurveyBlock{});
    std::atomic<uint64_t> next{0};
    auto work = [&]() {
        while (true) {
            const uint64_t bi = next.fetch_add(1);
            if (bi >= n_blocks) return;
            const uint64_t lo = bi * block_size;
            const uint64_t hi = std::min(total, lo + block_size);
            enumerate_words_block(rank, lo, hi, [&](const Word& w) {
                if (!is_canonical_cyclic(w)) return;
                per_class(blocks[bi], w);
            });
        }
    };
    if (jobs <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < jobs; ++t) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }
}

} // namespace detail

/// Minimum self-intersection over all nontrivial classes of length <=
/// max_len that pass the series filter. An upper bound for μ_k restricted
/// to short words.
inline SurveyResult survey_minimum(const SurveyRequest& req) {
    if (!req.surface.nonabelian())
        throw std::invalid_argument("survey_minimum: surface must have nonabelian π₁");
    if (req.series == SeriesFilter::derived2 && req.k != 2)
        throw std::invalid_argument("survey_minimum: derived-series filter supports k = 2 only");
    if (req.k < 1) throw std::invalid_argument("survey_minimum: k must be >= 1");

    const SurfaceGenerators sg = standard_generators(req.surface);
    std::vector<detail::SurveyBlock> blocks;
    detail::run_blocks(sg.gens.rank(), req.max_len, req.jobs, blocks,
                       [&](detail::SurveyBlock& blk, const Word& w) {
                           blk.scanned += 1;
                           bool member;
                           int weight;
                           if (req.series == SeriesFilter::derived2) {
                               member = in_commutator_subgroup(w);
                               weight = member ? lcs_weight(w) : 0;
                           } else {
                               weight = lcs_weight(w);
                               member = weight >= req.k;
                           }
                           if (!member) return;
                           blk.matching += 1;
                           const CyclicWord cls = CyclicWord::from_cyclically_reduced(w);
                           const uint64_t i = self_intersection(sg, cls).value;
                           if (!blk.min_i || i < *blk.min_i) {
                               blk.min_i = i;
                               blk.witness = cls;
                           }
                           auto& cell = blk.histogram[{(int)w.length(), weight}];
                           cell.count += 1;
                           cell.min_i = std::min(cell.min_i, i);
                       });

    SurveyResult res{req};
    detail::SurveyBlock acc;
    for (const auto& blk : blocks) acc.merge_from(blk);
    res.classes_scanned = acc.scanned;
    res.classes_matching = acc.matching;
    res.min_i = acc.min_i;
    res.witness = acc.witness;
    res.histogram = std::move(acc.histogram);
    return res;
}

} // namespace freecurves
