// Integral group ring of a free group, the augmentation map, and Fox free
// derivatives. Coefficients are arbitrary-precision integers.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <map>
#include <vector>

#include "freecurves/words.hpp"

namespace freecurves {

using BigInt = boost::multiprecision::cpp_int;

/// Finite integer combination of reduced words. Zero coefficients are never
/// stored; the empty map is the ring zero.
class GroupRingElement {
public:
    GroupRingElement() : rank_(0) {}
    explicit GroupRingElement(int rank) : rank_(rank) {}

    static GroupRingElement zero(int rank) { return GroupRingElement(rank); }

    static GroupRingElement of(const Word& w, BigInt coeff = 1) {
        GroupRingElement e(w.rank());
        if (coeff != 0) e.terms_[w] = std::move(coeff);
        return e;
    }

    static GroupRingElement one(int rank) { return of(Word(rank)); }

    int rank() const { return rank_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<Word, BigInt>& terms() const { return terms_; }

    BigInt coefficient(const Word& w) const {
        auto it = terms_.find(w);
        return it == terms_.end() ? BigInt(0) : it->second;
    }

    void add_term(const Word& w, const BigInt& c) {
        if (c == 0) return;
        if (rank_ == 0) rank_ = w.rank();
        if (w.rank() != rank_) throw std::invalid_argument("GroupRingElement: mixed generator sets");
        auto [it, inserted] = terms_.try_emplace(w, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    friend GroupRingElement operator+(const GroupRingElement& a, const GroupRingElement& b) {
        GroupRingElement r = a;
        for (const auto& [w, c] : b.terms_) r.add_term(w, c);
        return r;
    }

    friend GroupRingElement operator-(const GroupRingElement& a, const GroupRingElement& b) {
        GroupRingElement r = a;
        for (const auto& [w, c] : b.terms_) r.add_term(w, -c);
        return r;
    }

    friend GroupRingElement operator*(const GroupRingElement& a, const GroupRingElement& b) {
        GroupRingElement r(a.rank_ ? a.rank_ : b.rank_);
        for (const auto& [wa, ca] : a.terms_)
            for (const auto& [wb, cb] : b.terms_) r.add_term(wa * wb, ca * cb);
        return r;
    }

    GroupRingElement operator-() const {
        GroupRingElement r(rank_);
        for (const auto& [w, c] : terms_) r.terms_[w] = -c;
        return r;
    }

    friend bool operator==(const GroupRingElement& a, const GroupRingElement& b) {
        return a.terms_ == b.terms_;
    }
    friend bool operator!=(const GroupRingElement& a, const GroupRingElement& b) { return !(a == b); }

private:
    int rank_;
    std::map<Word, BigInt> terms_;
};

/// ε: the unique linear map with ε(g) = 1, i.e. the coefficient sum.
inline BigInt augmentation(const GroupRingElement& x) {
    BigInt s = 0;
    for (const auto& [w, c] : x.terms()) s += c;
    return s;
}

/// Fox derivative D_s on a single word, letter by letter:
///   D_s(s) = 1,  D_s(s') = 0 for s' != s,  D(g^-1) = -g^-1 D(g),
///   D(xy) = D(x) ε(y) + x D(y).
inline GroupRingElement fox_derivative(int s, const Word& w) {
    GroupRingElement out(w.rank());
    for (size_t i = 0; i < w.length(); ++i) {
        const Letter l = w.at(i);
        if (l.generator() != s) continue;
        if (!l.is_inverse())
            out.add_term(w.prefix(i), 1);      // prefix * D_s(s) = prefix
        else
            out.add_term(w.prefix(i + 1), -1); // prefix * (-s^-1) = -(prefix s^-1)
    }
    return out;
}

/// Linear extension of D_s to the group ring.
inline GroupRingElement fox_derivative(int s, const GroupRingElement& x) {
    GroupRingElement out(x.rank());
    for (const auto& [w, c] : x.terms()) {
        GroupRingElement d = fox_derivative(s, w);
        for (const auto& [dw, dc] : d.terms()) out.add_term(dw, c * dc);
    }
    return out;
}

/// An order-n free derivative D_{s_1} ... D_{s_n} given by its generator
/// indices. Applied innermost-last: the rightmost factor acts first.
using DerivativeSequence = std::vector<int>;

/// ε(D_{s_1}(... D_{s_n}(w) ...)).
inline BigInt iterated_derivative_augmentation(const DerivativeSequence& seq, const Word& w) {
    if (seq.empty()) throw std::invalid_argument("iterated_derivative_augmentation: empty sequence");
    GroupRingElement cur = GroupRingElement::of(w);
    for (auto it = seq.rbegin(); it != seq.rend(); ++it) cur = fox_derivative(*it, cur);
    return augmentation(cur);
}

/// Product of the syllable exponents m_1 ... m_n. Always nonzero, and equal
/// to the iterated derivative augmentation along the syllable sequence.
inline BigInt syllable_augmentation(const Word& w) {
    BigInt p = 1;
    for (const auto& syl : syllables(w)) p *= syl.exponent;
    return p;
}

inline DerivativeSequence syllable_sequence(const Word& w) {
    DerivativeSequence seq;
    for (const auto& syl : syllables(w)) seq.push_back(syl.generator);
    return seq;
}

} // namespace freecurves
