// Compact orientable surfaces Σ_{g,b} with boundary (b >= 1), their
// standard free generating sets, boundary words, and the one-vertex ribbon
// model that fixes how curves are laid out on the surface.
//
// π₁(Σ_{g,b}) is free of rank 2g + b - 1 on
//     α_1, β_1, ..., α_g, β_g, x_1, ..., x_{b-1},
// coming from the presentation [α_1,β_1]···[α_g,β_g] = x_1···x_b.
// The boundary words are ∂_j = x_j for j < b and
// ∂_b = (x_1···x_{b-1})^-1 [α_1,β_1]···[α_g,β_g].
//
// The surface deformation-retracts to a wedge of 2g + b - 1 circles; the
// cyclic order of the 2(2g+b-1) edge-ends around the wedge point is the
// ribbon structure. Writing A_i, B_i, X_j for inverse directions, the order
// used here is
//
//     g = 0:          x_1 X_1 x_2 X_2 ... x_{b-1} X_{b-1}
//     g >= 1, b = 1:  a_1 | b_g A_g B_g a_g | b_{g-1} A_{g-1} B_{g-1} a_{g-1} | ... | b_1 A_1 B_1
//     g >= 1, b >= 2: a_1 | x_1 X_1 ... x_{b-1} X_{b-1} | b_g A_g B_g a_g | ... | b_1 A_1 B_1
//
// (bars are cosmetic). This is exactly the arrangement whose fatgraph
// boundary traces recover the ∂_j above; boundary_trace() recomputes the
// traces so tests can pin the convention down.
#pragma once

#include <string>
#include <vector>

#include "freecurves/words.hpp"

namespace freecurves {

struct SurfaceWithBoundary {
    int genus;          ///< g >= 0
    int boundary_count; ///< b >= 1

    SurfaceWithBoundary(int g, int b) : genus(g), boundary_count(b) {
        if (g < 0) throw std::invalid_argument("SurfaceWithBoundary: negative genus");
        if (b < 1)
            throw std::invalid_argument(
                "SurfaceWithBoundary: closed surfaces are not supported (b >= 1 required)");
    }

    int rank() const { return 2 * genus + boundary_count - 1; }
    bool nonabelian() const { return rank() >= 2; }

    std::string label() const {
        return std::to_string(genus) + "," + std::to_string(boundary_count);
    }

    friend bool operator==(const SurfaceWithBoundary& a, const SurfaceWithBoundary& b) {
        return a.genus == b.genus && a.boundary_count == b.boundary_count;
    }
};

/// Cyclic order of the 2n letter-directions around the wedge point.
/// Directions are identified with Letter::code values.
class RibbonOrder {
public:
    explicit RibbonOrder(std::vector<int> order) : order_(std::move(order)) {
        pos_.assign(order_.size(), -1);
        for (size_t i = 0; i < order_.size(); ++i) {
            if (order_[i] < 0 || order_[i] >= static_cast<int>(order_.size()) ||
                pos_[order_[i]] != -1)
                throw std::invalid_argument("RibbonOrder: not a permutation of directions");
            pos_[order_[i]] = static_cast<int>(i);
        }
    }

    int directions() const { return static_cast<int>(order_.size()); }
    int position(Letter l) const { return pos_[l.code()]; }
    Letter at(int i) const { return Letter::from_code(order_[i]); }

    /// Position of `l`, counted cyclically starting just after `cut`
    /// (so the result lies in 1 .. 2n-1 for l != cut).
    int position_after(Letter cut, Letter l) const {
        const int n = directions();
        return ((pos_[l.code()] - pos_[cut.code()]) % n + n) % n;
    }

private:
    std::vector<int> order_;
    std::vector<int> pos_;
};

struct SurfaceGenerators {
    SurfaceWithBoundary surface;
    GeneratorSet gens;                 ///< α_1, β_1, ..., α_g, β_g, x_1, ..., x_{b-1}
    std::vector<Word> boundary_words;  ///< ∂_1 ... ∂_b
    RibbonOrder ribbon;

    int alpha_index(int i) const { return 2 * i; }          // i in 0..g-1
    int beta_index(int i) const { return 2 * i + 1; }
    int puncture_index(int j) const { return 2 * surface.genus + j; } // j in 0..b-2
};

namespace detail {

inline std::vector<int> ribbon_order_codes(const SurfaceWithBoundary& s) {
    const int g = s.genus, b = s.boundary_count;
    std::vector<int> order;
    auto push = [&](int gen, int sign) { order.push_back(Letter(gen, sign).code()); };
    if (g == 0) {
        for (int j = 0; j < b - 1; ++j) {
            push(j, +1);
            push(j, -1);
        }
    } else {
        push(0, +1); // a_1
        for (int j = 0; j < b - 1; ++j) {
            push(2 * g + j, +1);
            push(2 * g + j, -1);
        }
        for (int i = g - 1; i >= 0; --i) {
            push(2 * i + 1, +1); // b_{i+1}
            push(2 * i, -1);     // A_{i+1}
            push(2 * i + 1, -1); // B_{i+1}
            if (i > 0) push(2 * i, +1); // a_{i+1}; a_1 already leads the order
        }
    }
    return order;
}

} // namespace detail

/// The standard generating data of Σ_{g,b}. Rejects the disk (rank 0).
inline SurfaceGenerators standard_generators(const SurfaceWithBoundary& s) {
    const int g = s.genus, b = s.boundary_count;
    const int rank = s.rank();
    if (rank < 1)
        throw std::invalid_argument("standard_generators: the disk has trivial π₁");

    std::vector<std::string> names;
    for (int i = 1; i <= g; ++i) {
        names.push_back("a" + std::to_string(i));
        names.push_back("b" + std::to_string(i));
    }
    for (int j = 1; j <= b - 1; ++j) names.push_back("x" + std::to_string(j));
    GeneratorSet gens{names};

    std::vector<Word> boundary;
    for (int j = 0; j < b - 1; ++j) boundary.push_back(Word::generator(rank, 2 * g + j));
    Word last(rank);
    for (int j = b - 2; j >= 0; --j) last = last * Word::generator(rank, 2 * g + j, -1);
    for (int i = 0; i < g; ++i)
        last = last * commutator(Word::generator(rank, 2 * i), Word::generator(rank, 2 * i + 1));
    boundary.push_back(last);

    return SurfaceGenerators{s, std::move(gens), std::move(boundary),
                             RibbonOrder(detail::ribbon_order_codes(s))};
}

/// Boundary cycles of the ribbon graph: follow next(d) = succ(d^-1), one
/// letter per traversed edge. Returns one cyclic word per boundary
/// component; with the order above these are the classes of the ∂_j^-1.
inline std::vector<CyclicWord> boundary_trace(const SurfaceGenerators& sg) {
    const RibbonOrder& rib = sg.ribbon;
    const int n2 = rib.directions();
    auto succ = [&](Letter l) { return rib.at((rib.position(l) + 1) % n2); };
    std::vector<bool> seen(n2, false);
    std::vector<CyclicWord> cycles;
    for (int start = 0; start < n2; ++start) {
        Letter d = rib.at(start);
        if (seen[d.code()]) continue;
        std::vector<Letter> cyc;
        while (!seen[d.code()]) {
            seen[d.code()] = true;
            cyc.push_back(d);
            d = succ(d.inverse());
        }
        Word w = Word::reduce(sg.gens.rank(), cyc);
        cycles.push_back(cyclic_reduce(w).cyclic);
    }
    return cycles;
}

/// A free homotopy class on a surface.
struct SurfaceCurve {
    SurfaceWithBoundary surface;
    CyclicWord cls;

    static SurfaceCurve from_word(const SurfaceWithBoundary& s, const Word& w) {
        return SurfaceCurve{s, cyclic_reduce(w).cyclic};
    }
};

/// True iff the class is conjugate to ∂_j^{±n} for some j and n >= 1.
inline bool is_boundary_parallel(const SurfaceGenerators& sg, const CyclicWord& cls) {
    if (cls.trivial()) throw std::domain_error("is_boundary_parallel: trivial class");
    auto [root, mult] = cls.primitive_root();
    (void)mult;
    for (const Word& bw : sg.boundary_words) {
        CyclicWord bc = cyclic_reduce(bw).cyclic;
        if (bc.trivial()) continue; // disk-like degenerate boundary
        auto [broot, bmult] = bc.primitive_root();
        (void)bmult;
        if (root == broot || root == broot.inverse()) return true;
    }
    return false;
}

} // namespace freecurves
