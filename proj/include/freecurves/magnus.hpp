// Truncated noncommutative power series, the Magnus-style evaluation
// s -> 1 + X_s, and the exact lower-central-series weight of a word.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "freecurves/group_ring.hpp"
#include "freecurves/words.hpp"

namespace freecurves {

/// A noncommutative monomial: a sequence of generator indices.
using Monomial = std::vector<uint8_t>;

/// Degree-then-lex order; fixes the printing order of series terms.
struct DegLexLess {
    bool operator()(const Monomial& a, const Monomial& b) const {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    }
};

/// Integer noncommutative polynomial truncated at a degree bound.
/// Sparse: only nonzero coefficients are stored.
class TruncatedSeries {
public:
    explicit TruncatedSeries(int degree_cap) : cap_(degree_cap) {
        if (degree_cap < 0) throw std::invalid_argument("TruncatedSeries: negative cap");
    }

    static TruncatedSeries one(int degree_cap) {
        TruncatedSeries s(degree_cap);
        s.coeffs_[Monomial{}] = 1;
        return s;
    }

    int degree_cap() const { return cap_; }
    const std::map<Monomial, BigInt, DegLexLess>& coefficients() const { return coeffs_; }

    BigInt coefficient(const Monomial& m) const {
        auto it = coeffs_.find(m);
        return it == coeffs_.end() ? BigInt(0) : it->second;
    }

    void add_term(const Monomial& m, const BigInt& c) {
        if (c == 0 || static_cast<int>(m.size()) > cap_) return;
        auto [it, inserted] = coeffs_.try_emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) coeffs_.erase(it);
        }
    }

    /// Lowest degree >= 1 with a nonzero term, if any.
    std::optional<int> lowest_positive_degree() const {
        std::optional<int> best;
        for (const auto& [m, c] : coeffs_) {
            if (m.empty()) continue;
            return static_cast<int>(m.size()); // map is degree-sorted
        }
        return best;
    }

    friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
        if (a.cap_ != b.cap_) throw std::invalid_argument("TruncatedSeries: cap mismatch");
        TruncatedSeries r(a.cap_);
        for (const auto& [ma, ca] : a.coeffs_)
            for (const auto& [mb, cb] : b.coeffs_) {
                if (static_cast<int>(ma.size() + mb.size()) > a.cap_) continue;
                Monomial m = ma;
                m.insert(m.end(), mb.begin(), mb.end());
                r.add_term(m, ca * cb);
            }
        return r;
    }

    friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
        return a.cap_ == b.cap_ && a.coeffs_ == b.coeffs_;
    }
    friend bool operator!=(const TruncatedSeries& a, const TruncatedSeries& b) { return !(a == b); }

private:
    int cap_;
    std::map<Monomial, BigInt, DegLexLess> coeffs_;
};

namespace detail {

/// Image of a single letter: 1 + X_s, or the truncated alternating series
/// 1 - X_s + X_s^2 - ... for an inverse letter.
inline TruncatedSeries letter_series(Letter l, int cap) {
    TruncatedSeries s(cap);
    Monomial m;
    int sign = 1;
    s.add_term(m, 1);
    for (int d = 1; d <= cap; ++d) {
        m.push_back(static_cast<uint8_t>(l.generator()));
        if (!l.is_inverse() && d > 1) break;
        sign = l.is_inverse() ? -sign : sign;
        s.add_term(m, l.is_inverse() ? sign : 1);
    }
    return s;
}

} // namespace detail

/// The ring homomorphism s -> 1 + X_s evaluated on w, truncated at
/// degree_cap. The constant term is always 1.
inline TruncatedSeries magnus_expand(const Word& w, int degree_cap) {
    TruncatedSeries acc = TruncatedSeries::one(degree_cap);
    for (Letter l : w.letters()) acc = acc * detail::letter_series(l, degree_cap);
    return acc;
}

/// Signed exponent sum of one generator.
inline long long exponent_sum(const Word& w, int generator) {
    long long s = 0;
    for (Letter l : w.letters())
        if (l.generator() == generator) s += l.sign();
    return s;
}

/// Membership in the commutator subgroup [F, F]: every exponent sum is zero.
inline bool in_commutator_subgroup(const Word& w) {
    for (int g = 0; g < w.rank(); ++g)
        if (exponent_sum(w, g) != 0) return false;
    return true;
}

/// The largest k with w in γ_k(F), for nontrivial w. Equals the lowest
/// degree of a nonzero term of the Magnus expansion. Every nontrivial word
/// has weight <= |w|, so the incremental degree scan below is exact; going
/// degree by degree keeps the sparse series small on long inputs.
inline int lcs_weight(const Word& w) {
    if (w.trivial()) throw std::domain_error("lcs_weight: the identity has no finite weight");
    // Degree 1 is the abelianization; skip the series for it.
    for (int g = 0; g < w.rank(); ++g)
        if (exponent_sum(w, g) != 0) return 1;
    for (int cap = 2; cap <= static_cast<int>(w.length()); ++cap) {
        TruncatedSeries s = magnus_expand(w, cap);
        if (auto d = s.lowest_positive_degree()) {
            // Lower degrees were zero at smaller caps, so d == cap.
            return *d;
        }
    }
    throw std::logic_error("lcs_weight: no nonzero term up to |w| (reduction bug)");
}

/// True if all terms of degree 1..(k-1) vanish, i.e. weight(w) >= k.
/// Cheaper than lcs_weight when only a lower bound is needed.
inline bool lcs_weight_at_least(const Word& w, int k) {
    if (w.trivial()) throw std::domain_error("lcs_weight_at_least: trivial word");
    if (k <= 1) return true;
    TruncatedSeries s = magnus_expand(w, k - 1);
    return !s.lowest_positive_degree().has_value();
}

} // namespace freecurves
