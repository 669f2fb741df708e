// Independent numeric check of self-intersection numbers.
//
// The surface is realized as the convex core of a Fuchsian Schottky group:
// one interval on the real line per letter-direction, placed in the ribbon
// order, with each generator the composition of the inversions in its two
// interval circles. That map sends the exterior of the s^-1 interval onto
// the interior of the s interval, so the ping-pong lemma applies and the
// quotient is Σ_{g,b} with geodesic boundary, marked the same way as the
// combinatorial model.
//
// The geodesic representative of a primitive class lifts to the axes of the
// cyclic rotations; two strands cross iff their axis endpoints (numeric
// fixed points of the rotation matrices) link on the circle. Crossings are
// counted from those fixed points with no word combinatorics involved.
#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "freecurves/intersection.hpp"
#include "freecurves/surfaces.hpp"

namespace freecurves {

/// Raised when the numeric route cannot certify its answer (near-parabolic
/// matrix or fixed points too close to separate). Callers treat it like a
/// disagreement: a hard failure, never silently reconciled.
struct OracleDegeneracy : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

struct Mat2 {
    long double a, b, c, d;

    friend Mat2 operator*(const Mat2& m, const Mat2& n) {
        return Mat2{m.a * n.a + m.b * n.c, m.a * n.b + m.b * n.d,
                    m.c * n.a + m.d * n.c, m.c * n.b + m.d * n.d};
    }

    Mat2 normalized() const {
        const long double det = a * d - b * c;
        if (!(det > 0))
            throw OracleDegeneracy("oracle: non-positive determinant");
        const long double s = std::sqrt(det);
        return Mat2{a / s, b / s, c / s, d / s};
    }

    Mat2 inverse() const { // for det = 1
        return Mat2{d, -b, -c, a};
    }

    long double apply(long double x) const { return (a * x + b) / (c * x + d); }
};

/// Inversion in the circle of center c, radius r, as an anti-Moebius matrix;
/// the composition of two of these is an honest element of PSL(2, R).
inline Mat2 inversion_matrix(long double c, long double r) {
    return Mat2{c, r * r - c * c, 1.0L, -c};
}

struct FixedPoints {
    long double attracting;
    long double repelling;
};

inline FixedPoints axis_endpoints(const Mat2& m) {
    const long double tr = m.a + m.d;
    if (std::fabs(tr) <= 2.0L + 1e-9L)
        throw OracleDegeneracy("oracle: matrix is not clearly hyperbolic");
    if (std::fabs(m.c) < 1e-15L)
        throw OracleDegeneracy("oracle: fixed point at infinity");
    // c x^2 + (d - a) x - b = 0, solved with the stable split.
    const long double B = m.d - m.a;
    const long double disc = B * B + 4.0L * m.c * m.b;
    if (!(disc > 0)) throw OracleDegeneracy("oracle: non-real fixed points");
    const long double sq = std::sqrt(disc);
    const long double q = -0.5L * (B + (B >= 0 ? sq : -sq));
    const long double x1 = q / m.c;
    const long double x2 = (q != 0.0L) ? (-m.b / q) : (-B / m.c - x1);
    // Attracting fixed point: |derivative| = 1/(c x + d)^2 < 1.
    const long double d1 = std::fabs(m.c * x1 + m.d);
    const long double d2 = std::fabs(m.c * x2 + m.d);
    if (std::fabs(d1 - d2) < 1e-12L)
        throw OracleDegeneracy("oracle: cannot separate attracting/repelling");
    return d1 > d2 ? FixedPoints{x1, x2} : FixedPoints{x2, x1};
}

} // namespace detail

class HyperbolicOracle {
public:
    explicit HyperbolicOracle(const SurfaceGenerators& sg)
        : rank_(sg.gens.rank()) {
        const RibbonOrder& rib = sg.ribbon;
        const int n2 = rib.directions();
        centers_.assign(n2, 0.0L);
        for (int p = 0; p < n2; ++p) centers_[rib.at(p).code()] = 3.0L * p;
        gen_mats_.reserve(rank_);
        for (int s = 0; s < rank_; ++s) {
            const detail::Mat2 m =
                (detail::inversion_matrix(centers_[Letter(s, +1).code()], kRadius) *
                 detail::inversion_matrix(centers_[Letter(s, -1).code()], kRadius))
                    .normalized();
            gen_mats_.push_back(m);
        }
        validate_ping_pong();
    }

    /// Numeric self-intersection of a nontrivial class: linked fixed-point
    /// pairs on the primitive root, then the power rule m^2 i + m - 1.
    IntersectionResult self_intersection(const CyclicWord& cls) const {
        if (cls.trivial()) throw std::domain_error("oracle: trivial class");
        auto [root, mult] = cls.primitive_root();
        const uint64_t crossings = primitive_crossings(root);
        const uint64_t m = static_cast<uint64_t>(mult);
        return {m * m * crossings + (m - 1), IntersectionMethod::oracle, {}, mult};
    }

    uint64_t primitive_crossings(const CyclicWord& root) const {
        const auto& cyc = root.letters();
        const int L = static_cast<int>(cyc.size());
        if (L == 1) return 0;
        // Axis endpoints of every rotation of the root.
        std::vector<detail::FixedPoints> ends;
        ends.reserve(L);
        for (int t = 0; t < L; ++t) {
            detail::Mat2 m = letter_matrix(cyc[t % L]);
            for (int k = 1; k < L; ++k) m = (m * letter_matrix(cyc[(t + k) % L])).normalized();
            ends.push_back(detail::axis_endpoints(m));
        }
        check_separation(ends);
        uint64_t crossings = 0;
        for (int t = 0; t < L; ++t)
            for (int u = t + 1; u < L; ++u) {
                const long double lo = std::min(ends[t].repelling, ends[t].attracting);
                const long double hi = std::max(ends[t].repelling, ends[t].attracting);
                const int inside = ((lo < ends[u].repelling && ends[u].repelling < hi) ? 1 : 0) +
                                   ((lo < ends[u].attracting && ends[u].attracting < hi) ? 1 : 0);
                if (inside == 1) ++crossings;
            }
        return crossings;
    }

private:
    static constexpr long double kRadius = 1.0L;

    detail::Mat2 letter_matrix(Letter l) const {
        return l.is_inverse() ? gen_mats_[l.generator()].inverse() : gen_mats_[l.generator()];
    }

    void validate_ping_pong() const {
        for (int s = 0; s < rank_; ++s) {
            const long double target = centers_[Letter(s, +1).code()];
            const size_t avoid = static_cast<size_t>(Letter(s, -1).code());
            for (size_t code = 0; code < centers_.size(); ++code) {
                if (code == avoid) continue;
                for (long double e : {centers_[code] - kRadius, centers_[code] + kRadius}) {
                    const long double img = gen_mats_[s].apply(e);
                    if (std::fabs(img - target) >= kRadius)
                        throw std::logic_error("oracle: ping-pong violation at construction");
                }
            }
        }
    }

    void check_separation(const std::vector<detail::FixedPoints>& ends) const {
        std::vector<long double> pts;
        for (const auto& e : ends) {
            pts.push_back(e.attracting);
            pts.push_back(e.repelling);
        }
        std::sort(pts.begin(), pts.end());
        for (size_t i = 1; i < pts.size(); ++i)
            if (pts[i] - pts[i - 1] < 1e-11L)
                throw OracleDegeneracy("oracle: fixed points too close to separate");
    }

    int rank_;
    std::vector<long double> centers_;
    std::vector<detail::Mat2> gen_mats_;
};

} // namespace freecurves
