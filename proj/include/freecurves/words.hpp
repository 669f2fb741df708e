// Free-group word arithmetic: reduction, cyclic words, conjugacy,
// commutators, syllable decomposition, and deterministic enumeration
// of short reduced words.
//
// All types are immutable values; every operation is pure.
#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace freecurves {

/// One symbol of S ∪ S⁻¹: a generator index plus a sign.
class Letter {
public:
    constexpr Letter(int generator, int sign)
        : v_(sign >= 0 ? static_cast<int16_t>(generator + 1)
                       : static_cast<int16_t>(-(generator + 1))) {
        assert(generator >= 0 && generator < 16000);
        assert(sign == 1 || sign == -1);
    }

    constexpr int generator() const { return (v_ > 0 ? v_ : -v_) - 1; }
    constexpr bool is_inverse() const { return v_ < 0; }
    constexpr int sign() const { return v_ > 0 ? 1 : -1; }
    constexpr Letter inverse() const { return Letter(generator(), -sign()); }

    // Total order used everywhere: generator index first, then +1 before -1.
    constexpr int code() const { return 2 * generator() + (is_inverse() ? 1 : 0); }
    static constexpr Letter from_code(int code) {
        return Letter(code / 2, (code % 2) ? -1 : 1);
    }

    friend constexpr bool operator==(Letter a, Letter b) { return a.v_ == b.v_; }
    friend constexpr bool operator!=(Letter a, Letter b) { return a.v_ != b.v_; }
    friend constexpr bool operator<(Letter a, Letter b) { return a.code() < b.code(); }

private:
    int16_t v_;
};

/// A ranked generating set with printable names (default a, b, c, ...).
class GeneratorSet {
public:
    explicit GeneratorSet(int rank) : rank_(rank) {
        if (rank < 1) throw std::invalid_argument("GeneratorSet: rank must be >= 1");
        if (rank > 26)
            throw std::invalid_argument("GeneratorSet: default names support rank <= 26");
        names_.reserve(rank);
        for (int i = 0; i < rank; ++i) names_.push_back(std::string(1, char('a' + i)));
    }

    GeneratorSet(std::vector<std::string> names) : rank_((int)names.size()), names_(std::move(names)) {
        if (rank_ < 1) throw std::invalid_argument("GeneratorSet: rank must be >= 1");
        for (size_t i = 0; i < names_.size(); ++i)
            for (size_t j = i + 1; j < names_.size(); ++j)
                if (names_[i] == names_[j])
                    throw std::invalid_argument("GeneratorSet: duplicate name " + names_[i]);
    }

    int rank() const { return rank_; }
    const std::string& name(int i) const { return names_.at(i); }
    const std::vector<std::string>& names() const { return names_; }

    std::optional<int> index_of(const std::string& name) const {
        for (int i = 0; i < rank_; ++i)
            if (names_[i] == name) return i;
        return std::nullopt;
    }

private:
    int rank_;
    std::vector<std::string> names_;
};

namespace detail {

inline void push_reduced(std::vector<Letter>& out, Letter l) {
    if (!out.empty() && out.back() == l.inverse())
        out.pop_back();
    else
        out.push_back(l);
}

} // namespace detail

/// A freely reduced word. The empty word is the identity.
class Word {
public:
    Word() : rank_(0) {}
    explicit Word(int rank) : rank_(rank) {}

    /// Free reduction of an arbitrary letter sequence. Idempotent.
    static Word reduce(int rank, std::span<const Letter> raw) {
        Word w(rank);
        w.letters_.reserve(raw.size());
        for (Letter l : raw) {
            if (l.generator() >= rank) throw std::invalid_argument("Word: letter outside generator set");
            detail::push_reduced(w.letters_, l);
        }
        return w;
    }
    static Word reduce(int rank, std::initializer_list<Letter> raw) {
        return reduce(rank, std::span<const Letter>(raw.begin(), raw.size()));
    }

    static Word generator(int rank, int index, int sign = 1) {
        Word w(rank);
        if (index < 0 || index >= rank) throw std::invalid_argument("Word: generator index out of range");
        w.letters_.push_back(Letter(index, sign));
        return w;
    }

    int rank() const { return rank_; }
    size_t length() const { return letters_.size(); }
    bool trivial() const { return letters_.empty(); }
    const std::vector<Letter>& letters() const { return letters_; }
    Letter at(size_t i) const { return letters_[i]; }

    Word inverse() const {
        Word w(rank_);
        w.letters_.reserve(letters_.size());
        for (auto it = letters_.rbegin(); it != letters_.rend(); ++it)
            w.letters_.push_back(it->inverse());
        return w;
    }

    /// Prefix of the first n letters (already reduced).
    Word prefix(size_t n) const {
        Word w(rank_);
        w.letters_.assign(letters_.begin(), letters_.begin() + std::min(n, letters_.size()));
        return w;
    }

    friend Word operator*(const Word& u, const Word& v) {
        if (u.rank_ != v.rank_)
            throw std::invalid_argument("Word: mismatched generator sets");
        Word w(u.rank_);
        w.letters_ = u.letters_;
        for (Letter l : v.letters_) detail::push_reduced(w.letters_, l);
        return w;
    }

    friend bool operator==(const Word& u, const Word& v) {
        return u.rank_ == v.rank_ && u.letters_ == v.letters_;
    }
    friend bool operator!=(const Word& u, const Word& v) { return !(u == v); }

    /// Shortlex: length first, then the letter order of Letter::code.
    friend bool operator<(const Word& u, const Word& v) {
        if (u.letters_.size() != v.letters_.size())
            return u.letters_.size() < v.letters_.size();
        return std::lexicographical_compare(
            u.letters_.begin(), u.letters_.end(), v.letters_.begin(), v.letters_.end());
    }

private:
    int rank_;
    std::vector<Letter> letters_;
};

inline Word commutator(const Word& u, const Word& v) {
    // [u, v] = u v u^-1 v^-1
    return u * v * u.inverse() * v.inverse();
}

inline Word power(const Word& u, int n) {
    Word r(u.rank());
    Word base = n >= 0 ? u : u.inverse();
    for (int i = 0; i < std::abs(n); ++i) r = r * base;
    return r;
}

namespace detail {

/// Booth's least-rotation algorithm on letter codes. Returns the start
/// index of the lexicographically least rotation.
inline size_t least_rotation(std::span<const Letter> s) {
    const size_t n = s.size();
    if (n <= 1) return 0;
    std::vector<ptrdiff_t> f(2 * n, -1);
    size_t k = 0;
    for (size_t j = 1; j < 2 * n; ++j) {
        const int sj = s[j % n].code();
        ptrdiff_t i = f[j - k - 1];
        while (i != -1 && sj != s[(k + i + 1) % n].code()) {
            if (sj < s[(k + i + 1) % n].code()) k = j - i - 1;
            i = f[i];
        }
        if (sj != s[(k + i + 1) % n].code()) {
            if (sj < s[(k + i + 1) % n].code()) k = j;
            f[j - k] = -1;
        } else {
            f[j - k] = i + 1;
        }
    }
    return k;
}

} // namespace detail

/// A cyclically reduced word in its canonical rotation (the lexicographically
/// least one). Carrier for conjugacy classes / free homotopy classes.
class CyclicWord {
public:
    CyclicWord() : rank_(0) {}

    /// Canonicalizes an already cyclically reduced word.
    static CyclicWord from_cyclically_reduced(const Word& w) {
        CyclicWord c(w.rank());
        const auto& ls = w.letters();
        if (!ls.empty() && ls.front() == ls.back().inverse())
            throw std::invalid_argument("CyclicWord: input not cyclically reduced");
        const size_t k = detail::least_rotation(ls);
        c.letters_.reserve(ls.size());
        for (size_t i = 0; i < ls.size(); ++i) c.letters_.push_back(ls[(k + i) % ls.size()]);
        return c;
    }

    int rank() const { return rank_; }
    size_t length() const { return letters_.size(); }
    bool trivial() const { return letters_.empty(); }
    const std::vector<Letter>& letters() const { return letters_; }
    Letter at(size_t i) const { return letters_[i % letters_.size()]; }

    /// The underlying word read once around, from the canonical start.
    Word to_word() const {
        Word w = Word::reduce(rank_, letters_);
        assert(w.length() == letters_.size());
        return w;
    }

    CyclicWord inverse() const {
        return from_cyclically_reduced(to_word().inverse());
    }

    /// Smallest rotation period: the class equals root^m with root primitive.
    size_t primitive_period() const {
        const size_t n = letters_.size();
        for (size_t p = 1; p <= n / 2; ++p) {
            if (n % p != 0) continue;
            bool ok = true;
            for (size_t i = 0; ok && i < n; ++i)
                if (letters_[i] != letters_[(i + p) % n]) ok = false;
            if (ok) return p;
        }
        return n;
    }

    /// Decomposes the class as root^multiplicity with root primitive.
    std::pair<CyclicWord, int> primitive_root() const {
        if (trivial()) throw std::domain_error("primitive_root: trivial class");
        const size_t p = primitive_period();
        Word root(rank_);
        root = Word::reduce(rank_, std::span<const Letter>(letters_.data(), p));
        return {from_cyclically_reduced(root), static_cast<int>(letters_.size() / p)};
    }

    friend bool operator==(const CyclicWord& a, const CyclicWord& b) {
        return a.rank_ == b.rank_ && a.letters_ == b.letters_;
    }
    friend bool operator!=(const CyclicWord& a, const CyclicWord& b) { return !(a == b); }
    friend bool operator<(const CyclicWord& a, const CyclicWord& b) {
        if (a.letters_.size() != b.letters_.size()) return a.letters_.size() < b.letters_.size();
        return std::lexicographical_compare(a.letters_.begin(), a.letters_.end(),
                                            b.letters_.begin(), b.letters_.end());
    }

private:
    explicit CyclicWord(int rank) : rank_(rank) {}
    int rank_;
    std::vector<Letter> letters_;
};

struct CyclicReduction {
    CyclicWord cyclic;
    Word conjugator; ///< original = conjugator * cyclic * conjugator^-1
};

/// Strips conjugating ends and canonicalizes the rotation.
inline CyclicReduction cyclic_reduce(const Word& u) {
    const auto& ls = u.letters();
    size_t lo = 0, hi = ls.size();
    while (hi - lo >= 2 && ls[lo] == ls[hi - 1].inverse()) {
        ++lo;
        --hi;
    }
    Word core(u.rank());
    core = Word::reduce(u.rank(), std::span<const Letter>(ls.data() + lo, hi - lo));
    assert(core.length() == hi - lo);
    const size_t rot = detail::least_rotation(core.letters());
    CyclicWord cyc = CyclicWord::from_cyclically_reduced(core);
    // original = prefix * core * prefix^-1 and core = rot_prefix * canon * rot_prefix^-1.
    Word conj = u.prefix(lo) * core.prefix(rot);
    return {cyc, conj};
}

inline bool is_conjugate(const Word& u, const Word& v) {
    if (u.rank() != v.rank())
        throw std::invalid_argument("is_conjugate: mismatched generator sets");
    return cyclic_reduce(u).cyclic == cyclic_reduce(v).cyclic;
}

/// Maximal-run decomposition w = s_1^{m_1} ... s_n^{m_n}, s_i != s_{i+1}.
struct Syllable {
    int generator;
    long long exponent; // nonzero
};

inline std::vector<Syllable> syllables(const Word& w) {
    if (w.trivial()) throw std::domain_error("syllables: trivial word");
    std::vector<Syllable> out;
    for (Letter l : w.letters()) {
        if (!out.empty() && out.back().generator == l.generator())
            out.back().exponent += l.sign();
        else
            out.push_back({l.generator(), l.sign()});
    }
    for (const auto& s : out) assert(s.exponent != 0); // reduced input cannot cancel a run
    return out;
}

// ---------------------------------------------------------------------------
// Text syntax: whitespace-separated letters, inverse marked by ' or ^-1.
// The empty string is the identity.
// ---------------------------------------------------------------------------

inline Word parse_word(const GeneratorSet& gens, const std::string& text) {
    std::istringstream in(text);
    std::vector<Letter> raw;
    std::string tok;
    while (in >> tok) {
        int sign = 1;
        if (tok.size() >= 1 && tok.back() == '\'') {
            sign = -1;
            tok.pop_back();
        } else if (tok.size() > 3 && tok.compare(tok.size() - 3, 3, "^-1") == 0) {
            sign = -1;
            tok.resize(tok.size() - 3);
        }
        auto idx = gens.index_of(tok);
        if (!idx) throw std::invalid_argument("parse_word: unknown symbol '" + tok + "'");
        raw.push_back(Letter(*idx, sign));
    }
    return Word::reduce(gens.rank(), raw);
}

inline std::string format_word(const GeneratorSet& gens, std::span<const Letter> letters) {
    std::string out;
    for (Letter l : letters) {
        if (!out.empty()) out += ' ';
        out += gens.name(l.generator());
        if (l.is_inverse()) out += '\'';
    }
    return out;
}

inline std::string format_word(const GeneratorSet& gens, const Word& w) {
    return format_word(gens, w.letters());
}

inline std::string format_word(const GeneratorSet& gens, const CyclicWord& w) {
    return format_word(gens, w.letters());
}

// ---------------------------------------------------------------------------
// Deterministic enumeration of reduced words in length-then-lex order.
// Indexable, so the stream partitions into disjoint blocks for workers.
// ---------------------------------------------------------------------------

/// Number of reduced words of length exactly n: 2r (2r-1)^{n-1} for n >= 1.
inline uint64_t word_count_of_length(int rank, int n) {
    if (n == 0) return 1;
    uint64_t c = 2 * static_cast<uint64_t>(rank);
    for (int i = 1; i < n; ++i) {
        const uint64_t b = 2 * static_cast<uint64_t>(rank) - 1;
        if (c > UINT64_MAX / b) throw std::overflow_error("word_count_of_length: overflow");
        c *= b;
    }
    return c;
}

/// Count of all reduced words of length <= max_len (the identity included).
inline uint64_t word_count_upto(int rank, int max_len) {
    uint64_t total = 0;
    for (int n = 0; n <= max_len; ++n) {
        const uint64_t c = word_count_of_length(rank, n);
        if (total > UINT64_MAX - c) throw std::overflow_error("word_count_upto: overflow");
        total += c;
    }
    return total;
}

/// The idx-th reduced word (0-based) in length-then-lex order.
inline Word word_at(int rank, uint64_t idx) {
    int n = 0;
    while (true) {
        const uint64_t c = word_count_of_length(rank, n);
        if (idx < c) break;
        idx -= c;
        ++n;
    }
    Word w(rank);
    if (n == 0) return w;
    // Mixed radix: first digit over 2r codes, later digits over the 2r-1
    // codes that do not cancel the previous letter, all in code order.
    std::vector<int> digits(n);
    uint64_t rem = idx;
    for (int i = n - 1; i >= 1; --i) {
        digits[i] = static_cast<int>(rem % (2 * rank - 1));
        rem /= (2 * rank - 1);
    }
    digits[0] = static_cast<int>(rem);
    assert(digits[0] < 2 * rank);

    std::vector<Letter> ls;
    ls.reserve(n);
    ls.push_back(Letter::from_code(digits[0]));
    for (int i = 1; i < n; ++i) {
        const int banned = ls.back().inverse().code();
        int code = digits[i];
        if (code >= banned) ++code; // skip the cancelling letter
        ls.push_back(Letter::from_code(code));
    }
    return Word::reduce(rank, ls); // already reduced by construction
}

/// Applies fn to every reduced word with index in [begin, end).
template <typename Fn>
void enumerate_words_block(int rank, uint64_t begin, uint64_t end, Fn&& fn) {
    for (uint64_t i = begin; i < end; ++i) fn(word_at(rank, i));
}

/// Applies fn to every reduced word of length <= max_len, in order.
template <typename Fn>
void enumerate_words(int rank, int max_len, Fn&& fn) {
    enumerate_words_block(rank, 0, word_count_upto(rank, max_len), std::forward<Fn>(fn));
}

} // namespace freecurves
