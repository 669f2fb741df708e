// Short elements deep in the derived and lower central series of the
// rank-2 free group, built by the iterated-commutator recursion
//   x_1 = a, y_1 = b,  x_k = [x_{k-1}, y_{k-1}],  y_k = [x_{k-1}, y_{k-1}^-1],
// together with a certificate of the properties the construction promises.
#pragma once

#include <cmath>
#include <cstdint>
#include <string>

#include "freecurves/magnus.hpp"
#include "freecurves/words.hpp"

namespace freecurves {

/// Hard cap on the recursion depth: level 12 already yields words of
/// 4^11 letters; beyond that construction is refused, never truncated.
inline constexpr int kWitnessMaxLevel = 12;

struct WitnessPair {
    int level; ///< k >= 1
    Word x;    ///< lies in the k-th derived subgroup
    Word y;    ///< companion element of the recursion
};

/// x_k and y_k over the fixed rank-2 set {a, b}; both of length <= 4^{k-1}.
inline WitnessPair derived_witness(int k) {
    if (k < 1 || k > kWitnessMaxLevel)
        throw std::out_of_range("derived_witness: level must be in 1.." +
                                std::to_string(kWitnessMaxLevel));
    Word x = Word::generator(2, 0);
    Word y = Word::generator(2, 1);
    for (int level = 2; level <= k; ++level) {
        Word nx = commutator(x, y);
        Word ny = commutator(x, y.inverse());
        x = std::move(nx);
        y = std::move(ny);
    }
    return {k, std::move(x), std::move(y)};
}

/// The smallest l with 2^{l-1} >= k; then x_l lies in γ_{2^{l-1}} ⊆ γ_k.
inline int derived_level_for_lcs(int k) {
    int l = 1;
    while ((uint64_t{1} << (l - 1)) < static_cast<uint64_t>(k)) ++l;
    return l;
}

/// A short nontrivial element of γ_k(F_2), of length <= 4^{l-1} for the
/// smallest l with 2^{l-1} >= k.
inline Word lcs_witness(int k) {
    if (k < 1) throw std::out_of_range("lcs_witness: level must be >= 1");
    const int l = derived_level_for_lcs(k);
    if (l > kWitnessMaxLevel)
        throw std::out_of_range("lcs_witness: level out of guard range");
    return derived_witness(l).x;
}

struct WitnessCertificate {
    int level;
    uint64_t length_x;
    uint64_t length_y;
    uint64_t length_bound;      ///< 4^{k-1}
    bool x_nontrivial;
    bool y_nontrivial;
    bool commutator_nontrivial; ///< [x_k, y_k] != 1, the induction step
    bool lengths_ok;
    /// Present when 4^{k-1} <= 64: the verified statement weight(x_k) >= 2^{k-1},
    /// plus the exact weight when it is attained at exactly 2^{k-1}.
    bool weight_checked = false;
    uint64_t weight_lower_bound = 0;
    bool weight_is_exact = false;
    uint64_t weight_value = 0;
    /// Derived-series membership holds by construction (the recursion);
    /// it is recorded, not re-tested.
    std::string membership = "by construction";

    bool all_ok() const {
        return x_nontrivial && y_nontrivial && commutator_nontrivial && lengths_ok &&
               (!weight_checked || weight_lower_bound >= 1);
    }
};

/// Checks the certificate clauses and throws on the first failure,
/// identifying the failing clause.
inline WitnessCertificate certify_witness(const WitnessPair& p) {
    WitnessCertificate cert;
    cert.level = p.level;
    cert.length_x = p.x.length();
    cert.length_y = p.y.length();
    cert.length_bound = uint64_t{1} << (2 * (p.level - 1)); // 4^{k-1}
    cert.x_nontrivial = !p.x.trivial();
    cert.y_nontrivial = !p.y.trivial();
    if (!cert.x_nontrivial) throw std::runtime_error("certify_witness: x is trivial");
    if (!cert.y_nontrivial) throw std::runtime_error("certify_witness: y is trivial");
    cert.lengths_ok = cert.length_x <= cert.length_bound && cert.length_y <= cert.length_bound;
    if (!cert.lengths_ok) throw std::runtime_error("certify_witness: length bound 4^{k-1} violated");
    cert.commutator_nontrivial = !commutator(p.x, p.y).trivial();
    if (!cert.commutator_nontrivial)
        throw std::runtime_error("certify_witness: [x_k, y_k] is trivial");

    if (cert.length_bound <= 64) {
        const uint64_t target = uint64_t{1} << (p.level - 1); // 2^{k-1}
        cert.weight_checked = true;
        if (!lcs_weight_at_least(p.x, static_cast<int>(target)))
            throw std::runtime_error("certify_witness: weight below 2^{k-1}");
        cert.weight_lower_bound = target;
        // Report the exact weight when it sits right at the bound.
        TruncatedSeries s = magnus_expand(p.x, static_cast<int>(target));
        if (auto d = s.lowest_positive_degree()) {
            cert.weight_is_exact = true;
            cert.weight_value = static_cast<uint64_t>(*d);
        }
    }
    return cert;
}

} // namespace freecurves
