// Minimal self-intersection numbers of free homotopy classes on surfaces
// with boundary, by the combinatorial linked-pair method.
//
// A taut representative of a cyclically reduced class c_0 ... c_{L-1} runs
// once along each spine edge per letter and passes through the wedge-point
// disk between consecutive letters. The passage at position t leaves the
// disk toward the infinite reduced ray
//     W+_t = c_t c_{t+1} c_{t+2} ...            (indices mod L)
// and enters it from
//     W-_t = c_{t-1}^-1 c_{t-2}^-1 ...
// Two passages must cross if and only if their end pairs {W-, W+} separate
// each other in the circular order that the ribbon structure puts on the
// ends of the universal-cover tree. For a primitive class the minimal
// self-intersection number is exactly the number of linked position pairs;
// for c = z^m with z primitive it is m^2 i(z) + (m - 1), the m strands of
// the z-geodesic crossing pairwise over every crossing of z plus the m - 1
// crossings of the closing shift.
//
// Rays are compared lazily: two distinct rays of a primitive length-L class
// differ within L letters, so comparisons terminate.
#pragma once

#include <cstdint>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include "freecurves/surfaces.hpp"
#include "freecurves/words.hpp"

namespace freecurves {

namespace detail {

/// An infinite periodic reduced ray read off a cyclic word, forward from
/// position `start` or backward (inverted letters) from `start - 1`.
struct Ray {
    const std::vector<Letter>* letters;
    int start;
    bool forward;

    Letter at(size_t k) const {
        const size_t n = letters->size();
        if (forward) return (*letters)[(start + k) % n];
        const size_t idx = ((start - 1 - static_cast<long long>(k)) % static_cast<long long>(n) +
                            static_cast<long long>(n)) %
                           static_cast<long long>(n);
        return (*letters)[idx].inverse();
    }
};

/// Linear order on ends: the circular order induced by the ribbon structure,
/// cut at the gap before the first direction of the order.
///
/// Two ends with a common prefix p and next letters x != y compare by the
/// cyclic position of x and y counted from just after the direction back
/// along p (= inverse of the last prefix letter); ends differing at the
/// first letter compare by raw ribbon position.
inline bool ray_less(const RibbonOrder& rib, const Ray& a, const Ray& b, size_t cap) {
    Letter la = a.at(0), lb = b.at(0);
    if (la != lb) return rib.position(la) < rib.position(lb);
    for (size_t k = 1; k <= cap; ++k) {
        const Letter prev = la;
        la = a.at(k);
        lb = b.at(k);
        if (la != lb)
            return rib.position_after(prev.inverse(), la) <
                   rib.position_after(prev.inverse(), lb);
    }
    throw std::logic_error("ray_less: rays did not diverge within the period bound");
}

/// Sorted circular ranks of the 2L ends of a primitive class, index layout:
/// rank_of[2t] = W-_t, rank_of[2t+1] = W+_t.
inline std::vector<int> end_ranks(const RibbonOrder& rib, const std::vector<Letter>& cyc) {
    const int L = static_cast<int>(cyc.size());
    std::vector<Ray> rays;
    rays.reserve(2 * L);
    for (int t = 0; t < L; ++t) {
        rays.push_back(Ray{&cyc, t, false});
        rays.push_back(Ray{&cyc, t, true});
    }
    // Distinct periodic rays with period L diverge within L letters; give
    // slack and treat non-divergence as a hard error (it would mean the
    // class was not primitive or a word invariant broke).
    const size_t cap = 2 * static_cast<size_t>(L) + 2;
    std::vector<int> idx(2 * L);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](int i, int j) {
        if (i == j) return false;
        return ray_less(rib, rays[i], rays[j], cap);
    });
    std::vector<int> rank_of(2 * L);
    for (int r = 0; r < 2 * L; ++r) rank_of[idx[r]] = r;
    return rank_of;
}

inline bool pairs_linked(int a1, int a2, int b1, int b2) {
    const int lo = std::min(a1, a2), hi = std::max(a1, a2);
    const int inside = (lo < b1 && b1 < hi ? 1 : 0) + (lo < b2 && b2 < hi ? 1 : 0);
    return inside == 1;
}

} // namespace detail

/// Linked position pairs of a primitive cyclically reduced class. The size
/// of the result is the self-intersection number of the class.
inline std::vector<std::pair<int, int>> linked_pairs(const RibbonOrder& rib,
                                                     const CyclicWord& primitive) {
    const auto& cyc = primitive.letters();
    const int L = static_cast<int>(cyc.size());
    if (L == 0) throw std::domain_error("linked_pairs: trivial class");
    std::vector<std::pair<int, int>> out;
    if (L == 1) return out;
    const std::vector<int> rank = detail::end_ranks(rib, cyc);
    for (int t = 0; t < L; ++t)
        for (int u = t + 1; u < L; ++u)
            if (detail::pairs_linked(rank[2 * t], rank[2 * t + 1], rank[2 * u], rank[2 * u + 1]))
                out.emplace_back(t, u);
    return out;
}

enum class IntersectionMethod { combinatorial, oracle };

struct IntersectionResult {
    uint64_t value;
    IntersectionMethod method;
    /// Linked position pairs of the primitive root (value decomposes as
    /// multiplicity^2 * pairs + multiplicity - 1).
    std::vector<std::pair<int, int>> certificate;
    int root_multiplicity = 1;
};

/// Lemma-3.1 style envelope: i(x) <= C(len, 2) for a length-`len` class.
inline uint64_t word_length_bound(uint64_t len) {
    return len < 2 ? 0 : len * (len - 1) / 2;
}

inline uint64_t word_length_bound(const SurfaceCurve& c) {
    return word_length_bound(c.cls.length());
}

/// Minimal self-intersection number of a nontrivial class.
inline IntersectionResult self_intersection(const SurfaceGenerators& sg, const CyclicWord& cls) {
    if (cls.trivial()) throw std::domain_error("self_intersection: trivial class");
    if (!cls.letters().empty() && cls.rank() != sg.gens.rank())
        throw std::invalid_argument("self_intersection: class over the wrong generator set");

    // Boundary components themselves are embedded.
    for (const Word& bw : sg.boundary_words) {
        const CyclicWord bc = cyclic_reduce(bw).cyclic;
        if (cls == bc || cls == bc.inverse())
            return {0, IntersectionMethod::combinatorial, {}, 1};
    }

    auto [root, mult] = cls.primitive_root();
    auto pairs = linked_pairs(sg.ribbon, root);
    const uint64_t m = static_cast<uint64_t>(mult);
    const uint64_t value = m * m * pairs.size() + (m - 1);
    return {value, IntersectionMethod::combinatorial, std::move(pairs), mult};
}

inline IntersectionResult self_intersection(const SurfaceGenerators& sg, const SurfaceCurve& c) {
    if (!(c.surface == sg.surface))
        throw std::invalid_argument("self_intersection: curve lives on a different surface");
    return self_intersection(sg, c.cls);
}

} // namespace freecurves
