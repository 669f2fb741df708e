// Finite-group detection machinery: multiplication-table groups, the
// degree-8 detection targets (Z/8 and the dihedral group of order 8),
// nilpotency class, normal cores, and the core-index bound checks.
//
// Every group here has order <= 64, so tables are validated exhaustively on
// construction and all subgroup computations are brute force on purpose.
#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "freecurves/words.hpp"

namespace freecurves {

class FiniteGroup {
public:
    FiniteGroup(std::string name, std::vector<std::string> element_names,
                std::vector<int> table_row_major)
        : name_(std::move(name)),
          names_(std::move(element_names)),
          order_(static_cast<int>(names_.size())),
          table_(std::move(table_row_major)) {
        if (order_ < 1 || table_.size() != static_cast<size_t>(order_) * order_)
            throw std::invalid_argument("FiniteGroup: bad table shape");
        validate();
    }

    const std::string& name() const { return name_; }
    int order() const { return order_; }
    int identity() const { return identity_; }
    int mul(int a, int b) const { return table_[static_cast<size_t>(a) * order_ + b]; }
    int inv(int a) const { return inverse_[a]; }
    int conj(int a, int x) const { return mul(mul(inv(a), x), a); } // a^-1 x a
    const std::string& element_name(int i) const { return names_.at(i); }

    std::optional<int> element_index(const std::string& name) const {
        for (int i = 0; i < order_; ++i)
            if (names_[i] == name) return i;
        return std::nullopt;
    }

    int power(int a, long long e) const {
        int base = e >= 0 ? a : inv(a);
        long long n = e >= 0 ? e : -e;
        int acc = identity_;
        for (long long i = 0; i < n; ++i) acc = mul(acc, base);
        return acc;
    }

private:
    void validate() {
        for (int v : table_)
            if (v < 0 || v >= order_) throw std::invalid_argument("FiniteGroup: entry out of range");
        identity_ = -1;
        for (int e = 0; e < order_; ++e) {
            bool ok = true;
            for (int x = 0; x < order_ && ok; ++x) ok = mul(e, x) == x && mul(x, e) == x;
            if (ok) {
                identity_ = e;
                break;
            }
        }
        if (identity_ < 0) throw std::invalid_argument("FiniteGroup: no identity");
        inverse_.assign(order_, -1);
        for (int a = 0; a < order_; ++a) {
            for (int b = 0; b < order_; ++b)
                if (mul(a, b) == identity_ && mul(b, a) == identity_) {
                    inverse_[a] = b;
                    break;
                }
            if (inverse_[a] < 0) throw std::invalid_argument("FiniteGroup: missing inverse");
        }
        for (int a = 0; a < order_; ++a)
            for (int b = 0; b < order_; ++b)
                for (int c = 0; c < order_; ++c)
                    if (mul(mul(a, b), c) != mul(a, mul(b, c)))
                        throw std::invalid_argument("FiniteGroup: associativity fails");
    }

    std::string name_;
    std::vector<std::string> names_;
    int order_;
    std::vector<int> table_;
    int identity_ = -1;
    std::vector<int> inverse_;
};

// ---------------------------------------------------------------------------
// Constructions
// ---------------------------------------------------------------------------

inline FiniteGroup cyclic_group(int n) {
    if (n < 1) throw std::invalid_argument("cyclic_group: order must be >= 1");
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) names.push_back(std::to_string(i));
    std::vector<int> t(static_cast<size_t>(n) * n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) t[static_cast<size_t>(a) * n + b] = (a + b) % n;
    return FiniteGroup("Z" + std::to_string(n), std::move(names), std::move(t));
}

/// Dihedral group of order 2m: relations s^2 = 1, r^m = 1, s r s = r^-1.
/// Elements are ordered 1, r, ..., r^{m-1}, s, rs, ..., r^{m-1}s.
inline FiniteGroup dihedral_group(int m) {
    if (m < 1) throw std::invalid_argument("dihedral_group: m must be >= 1");
    const int n = 2 * m;
    auto nm = [&](int i) {
        const int rot = i % m;
        const bool flip = i >= m;
        std::string s = rot == 0 ? (flip ? "" : "1") : (rot == 1 ? "r" : "r" + std::to_string(rot));
        if (flip) s += "s";
        return s;
    };
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) names.push_back(nm(i));
    auto enc = [&](int rot, bool flip) { return ((rot % m + m) % m) + (flip ? m : 0); };
    std::vector<int> t(static_cast<size_t>(n) * n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            const int ra = a % m, rb = b % m;
            const bool fa = a >= m, fb = b >= m;
            // (r^ra s^fa)(r^rb s^fb) = r^(ra ± rb) s^(fa xor fb)
            const int rot = fa ? ra - rb : ra + rb;
            t[static_cast<size_t>(a) * n + b] = enc(rot, fa != fb);
        }
    return FiniteGroup("D" + std::to_string(n), std::move(names), std::move(t));
}

/// The paper's degree-8 dihedral target, with elements {1, r, r2, r3, s, rs, r2s, r3s}.
inline FiniteGroup dihedral8() { return dihedral_group(4); }

/// Generalized quaternion group of order 4m (m >= 2):
/// a of order 2m, b^2 = a^m, b a b^-1 = a^-1.
inline FiniteGroup quaternion_group(int m) {
    if (m < 2) throw std::invalid_argument("quaternion_group: m must be >= 2");
    const int n = 4 * m, two_m = 2 * m;
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) {
        const int e = i % two_m;
        std::string s = e == 0 ? (i < two_m ? "1" : "") : (e == 1 ? "a" : "a" + std::to_string(e));
        if (i >= two_m) s += "b";
        if (s.empty()) s = "b";
        names.push_back(s);
    }
    auto enc = [&](int e, bool fb) { return ((e % two_m + two_m) % two_m) + (fb ? two_m : 0); };
    std::vector<int> t(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const int ea = i % two_m, eb = j % two_m;
            const bool fa = i >= two_m, fb = j >= two_m;
            // (a^ea b^fa)(a^eb b^fb): move b past a^eb, then b^2 = a^m.
            int e = fa ? ea - eb : ea + eb;
            if (fa && fb) e += m;
            t[static_cast<size_t>(i) * n + j] = enc(e, fa != fb);
        }
    return FiniteGroup("Q" + std::to_string(n), std::move(names), std::move(t));
}

inline FiniteGroup direct_product(const FiniteGroup& g, const FiniteGroup& h) {
    const int n = g.order() * h.order();
    std::vector<std::string> names;
    names.reserve(n);
    for (int a = 0; a < g.order(); ++a)
        for (int b = 0; b < h.order(); ++b)
            names.push_back("(" + g.element_name(a) + "," + h.element_name(b) + ")");
    std::vector<int> t(static_cast<size_t>(n) * n);
    auto enc = [&](int a, int b) { return a * h.order() + b; };
    for (int a1 = 0; a1 < g.order(); ++a1)
        for (int b1 = 0; b1 < h.order(); ++b1)
            for (int a2 = 0; a2 < g.order(); ++a2)
                for (int b2 = 0; b2 < h.order(); ++b2)
                    t[static_cast<size_t>(enc(a1, b1)) * n + enc(a2, b2)] =
                        enc(g.mul(a1, a2), h.mul(b1, b2));
    return FiniteGroup(g.name() + "x" + h.name(), std::move(names), std::move(t));
}

inline FiniteGroup elementary_abelian(int k) {
    if (k < 1 || k > 6) throw std::invalid_argument("elementary_abelian: k in 1..6");
    const int n = 1 << k;
    std::vector<std::string> names;
    for (int v = 0; v < n; ++v) {
        std::string s;
        for (int i = 0; i < k; ++i) s += char('0' + ((v >> i) & 1));
        names.push_back(s);
    }
    std::vector<int> t(static_cast<size_t>(n) * n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) t[static_cast<size_t>(a) * n + b] = a ^ b;
    return FiniteGroup("Z2^" + std::to_string(k), std::move(names), std::move(t));
}

/// Wreath-style product Z_m wr Z_n: base (Z_m)^n, a cyclic shift on top.
inline FiniteGroup wreath_cyclic(int m, int n) {
    int base = 1;
    for (int i = 0; i < n; ++i) base *= m;
    const int order = base * n;
    if (order > 4096) throw std::invalid_argument("wreath_cyclic: too large");
    auto coords = [&](int v) {
        std::vector<int> c(n);
        for (int i = 0; i < n; ++i) {
            c[i] = v % m;
            v /= m;
        }
        return c;
    };
    auto pack = [&](const std::vector<int>& c) {
        int v = 0;
        for (int i = n - 1; i >= 0; --i) v = v * m + c[i];
        return v;
    };
    auto enc = [&](int v, int t) { return t * base + v; };
    std::vector<std::string> names;
    names.reserve(order);
    for (int t = 0; t < n; ++t)
        for (int v = 0; v < base; ++v) {
            auto c = coords(v);
            std::string s = "[";
            for (int i = 0; i < n; ++i) s += std::to_string(c[i]) + (i + 1 < n ? "," : "");
            s += "];" + std::to_string(t);
            names.push_back(s);
        }
    // Names were pushed in (t, v) order; rebuild in enc order (same thing).
    std::vector<int> tab(static_cast<size_t>(order) * order);
    for (int t1 = 0; t1 < n; ++t1)
        for (int v1 = 0; v1 < base; ++v1)
            for (int t2 = 0; t2 < n; ++t2)
                for (int v2 = 0; v2 < base; ++v2) {
                    const auto c1 = coords(v1);
                    const auto c2 = coords(v2);
                    std::vector<int> c(n);
                    // (v1, t1)(v2, t2) = (v1 + t1.v2, t1 + t2), (t.v)_i = v_{(i - t) mod n}
                    for (int i = 0; i < n; ++i)
                        c[i] = (c1[i] + c2[((i - t1) % n + n) % n]) % m;
                    tab[static_cast<size_t>(enc(v1, t1)) * order + enc(v2, t2)] =
                        enc(pack(c), (t1 + t2) % n);
                }
    return FiniteGroup("Z" + std::to_string(m) + "wrZ" + std::to_string(n), std::move(names),
                       std::move(tab));
}

// ---------------------------------------------------------------------------
// Subgroups
// ---------------------------------------------------------------------------

/// A subgroup as a sorted element list.
using Subgroup = std::vector<int>;

inline Subgroup subgroup_closure(const FiniteGroup& g, const std::vector<int>& gens) {
    std::set<int> s{g.identity()};
    for (int x : gens) s.insert(x);
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<int> cur(s.begin(), s.end());
        for (int a : cur)
            for (int b : cur)
                if (s.insert(g.mul(a, b)).second) grew = true;
        for (int a : cur)
            if (s.insert(g.inv(a)).second) grew = true;
    }
    return Subgroup(s.begin(), s.end());
}

inline bool is_subgroup(const FiniteGroup& g, const Subgroup& h) {
    if (h.empty() || !std::binary_search(h.begin(), h.end(), g.identity())) return false;
    for (int a : h) {
        if (!std::binary_search(h.begin(), h.end(), g.inv(a))) return false;
        for (int b : h)
            if (!std::binary_search(h.begin(), h.end(), g.mul(a, b))) return false;
    }
    return true;
}

inline bool contains(const Subgroup& h, int x) {
    return std::binary_search(h.begin(), h.end(), x);
}

inline bool subgroup_le(const Subgroup& a, const Subgroup& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

/// K normal in H: h^-1 k h in K for all h in H, k in K.
inline bool normal_in(const FiniteGroup& g, const Subgroup& k, const Subgroup& h) {
    for (int x : h)
        for (int y : k)
            if (!contains(k, g.conj(x, y))) return false;
    return true;
}

inline Subgroup whole_group(const FiniteGroup& g) {
    Subgroup s(g.order());
    std::iota(s.begin(), s.end(), 0);
    return s;
}

/// Largest subgroup of c normal in the ambient subgroup a:
/// the intersection of the conjugates x^-1 c x over x in a.
inline Subgroup normal_core_in(const FiniteGroup& g, const Subgroup& ambient, const Subgroup& c) {
    if (!is_subgroup(g, c)) throw std::invalid_argument("normal_core_in: C is not closed");
    std::set<int> core(c.begin(), c.end());
    for (int a : ambient) {
        std::set<int> conj;
        for (int y : c) conj.insert(g.conj(a, y));
        std::set<int> inter;
        std::set_intersection(core.begin(), core.end(), conj.begin(), conj.end(),
                              std::inserter(inter, inter.begin()));
        core.swap(inter);
    }
    return Subgroup(core.begin(), core.end());
}

inline Subgroup normal_core(const FiniteGroup& g, const Subgroup& c) {
    return normal_core_in(g, whole_group(g), c);
}

/// Subgroup generated by the commutators [a, b], a in A, b in B.
inline Subgroup commutator_subgroup(const FiniteGroup& g, const Subgroup& a, const Subgroup& b) {
    std::vector<int> gens;
    for (int x : a)
        for (int y : b) gens.push_back(g.mul(g.mul(g.mul(x, y), g.inv(x)), g.inv(y)));
    return subgroup_closure(g, gens);
}

/// γ_1 = G, γ_{k+1} = [γ_k, G], until the chain stabilizes.
inline std::vector<Subgroup> lower_central_series_of(const FiniteGroup& g) {
    std::vector<Subgroup> out{whole_group(g)};
    while (true) {
        Subgroup next = commutator_subgroup(g, out.back(), out.front());
        if (next == out.back()) break;
        out.push_back(std::move(next));
        if (out.back().size() == 1) break;
    }
    return out;
}

/// Smallest c with γ_{c+1}(G) = 1, or nullopt when G is not nilpotent.
inline std::optional<int> nilpotency_class(const FiniteGroup& g) {
    auto series = lower_central_series_of(g);
    if (series.back().size() != 1) return std::nullopt;
    return static_cast<int>(series.size()) - 1;
}

/// Quotient of g by a normal subgroup: elements are cosets, named after a
/// representative.
inline FiniteGroup quotient_group(const FiniteGroup& g, const Subgroup& n) {
    if (!is_subgroup(g, n) || !normal_in(g, n, whole_group(g)))
        throw std::invalid_argument("quotient_group: subgroup is not normal");
    std::vector<int> coset_of(g.order(), -1);
    std::vector<int> reps;
    for (int x = 0; x < g.order(); ++x) {
        if (coset_of[x] != -1) continue;
        const int id = static_cast<int>(reps.size());
        for (int h : n) coset_of[g.mul(x, h)] = id;
        reps.push_back(x);
    }
    const int q = static_cast<int>(reps.size());
    std::vector<std::string> names;
    for (int r : reps) names.push_back(g.element_name(r) + "N");
    std::vector<int> t(static_cast<size_t>(q) * q);
    for (int a = 0; a < q; ++a)
        for (int b = 0; b < q; ++b)
            t[static_cast<size_t>(a) * q + b] = coset_of[g.mul(reps[a], reps[b])];
    return FiniteGroup(g.name() + "/N", std::move(names), std::move(t));
}

// ---------------------------------------------------------------------------
// Homomorphisms from free groups and degree-8 detection
// ---------------------------------------------------------------------------

/// A homomorphism from a free group given by generator images. Any image
/// assignment works; freeness imposes no relation to check.
struct FiniteHom {
    int source_rank;
    const FiniteGroup* target;
    std::vector<int> images;

    int evaluate(const Word& w) const {
        if (w.rank() != source_rank)
            throw std::invalid_argument("FiniteHom: word over the wrong generator set");
        int acc = target->identity();
        for (Letter l : w.letters()) {
            const int img = images[l.generator()];
            acc = target->mul(acc, l.is_inverse() ? target->inv(img) : img);
        }
        return acc;
    }

    bool surjective() const {
        return static_cast<int>(subgroup_closure(*target, images).size()) == target->order();
    }
};

struct DetectResult {
    FiniteHom hom;
    int value; ///< ψ(w), nontrivial by construction
    bool surjective;
};

/// Searches the order-8 detection targets for a homomorphism that does not
/// kill w: all maps to Z/8 first, then all maps to the dihedral group of
/// order 8, image tuples in lexicographic order of element indices. The
/// first hit wins, so the result is deterministic.
inline std::optional<DetectResult> detect(const Word& w, const FiniteGroup& z8,
                                          const FiniteGroup& d8) {
    if (w.trivial()) throw std::domain_error("detect: trivial word");
    const int rank = w.rank();
    for (const FiniteGroup* target : {&z8, &d8}) {
        const int n = target->order();
        std::vector<int> images(rank, 0);
        while (true) {
            FiniteHom hom{rank, target, images};
            const int v = hom.evaluate(w);
            if (v != target->identity())
                return DetectResult{std::move(hom), v, FiniteHom{rank, target, images}.surjective()};
            int pos = rank - 1;
            while (pos >= 0 && images[pos] == n - 1) images[pos--] = 0;
            if (pos < 0) break;
            ++images[pos];
        }
    }
    return std::nullopt;
}

inline std::optional<DetectResult> detect(const Word& w) {
    static const FiniteGroup z8 = cyclic_group(8);
    static const FiniteGroup d8 = dihedral8();
    return detect(w, z8, d8);
}

} // namespace freecurves
