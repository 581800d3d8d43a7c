#ifndef CANTORSPEC_STURM_HPP
#define CANTORSPEC_STURM_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "cantorspec/errors.hpp"

namespace cantorspec {

// Eigenvalue counting for symmetric tridiagonal matrices with unit
// off-diagonals, by the LDL^T pivot-sign recursion. Zero pivots are replaced
// by a tiny negative value so an exact eigenvalue hit counts as "<= x" instead
// of derailing the factorization.
inline int tridiag_count_below(std::span<const double> diag, double x) {
    constexpr double tiny = 1e-300;
    int count = 0;
    double d = std::numeric_limits<double>::infinity(); // 1/d vanishes for the first pivot
    for (double a : diag) {
        d = (a - x) - 1.0 / d;
        if (std::abs(d) < tiny) d = -tiny;
        if (d < 0.0) ++count;
    }
    return count;
}

// Same for the cyclic (ring) variant: tridiagonal plus symmetric corner
// entries `corner` at (1,q) and (q,1). Elimination keeps the usual pivot
// recursion and tracks the fill the corner smears into the last row. For
// q = 1 and q = 2 the wrap-around hops accumulate onto existing entries.
inline int ring_count_below(std::span<const double> diag, double corner, double x) {
    constexpr double tiny = 1e-300;
    const std::size_t q = diag.size();
    if (q == 0) return 0;
    if (q == 1) return diag[0] + 2.0 * corner - x < 0.0 ? 1 : 0;
    if (q == 2) {
        // single pair of sites coupled through both edges: off-diagonal 1 + corner
        const double off = 1.0 + corner;
        double d1 = diag[0] - x;
        if (std::abs(d1) < tiny) d1 = -tiny;
        double d2 = (diag[1] - x) - off * off / d1;
        if (std::abs(d2) < tiny) d2 = -tiny;
        return (d1 < 0.0 ? 1 : 0) + (d2 < 0.0 ? 1 : 0);
    }

    int count = 0;
    double d = diag[0] - x;      // running pivot
    double fill = corner;        // entry (q, k) of the trailing matrix
    double acc = diag[q - 1] - x; // entry (q, q) being eaten by eliminations
    for (std::size_t k = 0; k + 2 < q; ++k) {
        if (std::abs(d) < tiny) d = -tiny;
        if (d < 0.0) ++count;
        const double next = (diag[k + 1] - x) - 1.0 / d;
        const double orig = (k + 2 == q - 1) ? 1.0 : 0.0; // bulk subdiagonal reaches (q, q-1)
        acc -= fill * fill / d;
        fill = orig - fill / d;
        d = next;
    }
    // 2x2 tail on rows q-1, q: [[d, fill],[fill, acc]]
    if (std::abs(d) < tiny) d = -tiny;
    if (d < 0.0) ++count;
    double last = acc - fill * fill / d;
    if (std::abs(last) < tiny) last = -tiny;
    if (last < 0.0) ++count;
    return count;
}

namespace detail {

template <class CountFn>
void bisect_eigenvalues(const CountFn& count, double lo, double hi, int c_lo, int c_hi,
                        double tol, std::vector<double>& out) {
    if (c_hi - c_lo <= 0) return;
    if (hi - lo <= tol) {
        const double mid = lo + (hi - lo) / 2.0;
        for (int i = 0; i < c_hi - c_lo; ++i) out.push_back(mid);
        return;
    }
    const double mid = lo + (hi - lo) / 2.0;
    // the computed count wobbles by +-1 within ~sqrt(eps) of a multiple
    // eigenvalue; clamping keeps the emitted total exactly c_hi - c_lo
    const int c_mid = std::clamp(count(mid), c_lo, c_hi);
    bisect_eigenvalues(count, lo, mid, c_lo, c_mid, tol, out);
    bisect_eigenvalues(count, mid, hi, c_mid, c_hi, tol, out);
}

} // namespace detail

// All eigenvalues of the ring matrix, sorted, each located to width <= tol.
// Multiple eigenvalues are emitted with multiplicity.
inline std::vector<double> ring_eigenvalues(std::span<const double> diag, double corner,
                                            double tol) {
    double lo = diag[0], hi = diag[0];
    for (double a : diag) {
        lo = std::min(lo, a);
        hi = std::max(hi, a);
    }
    // Gershgorin, padded asymmetrically: bisection midpoints must not land on
    // symmetric special points (x exactly equal to an eigenvalue of a leading
    // minor makes the pivot count ambiguous by one)
    lo -= 2.0 + std::abs(corner) + 1.2345678e-9;
    hi += 2.0 + std::abs(corner) + 2.7182818e-9;
    auto count = [&](double x) { return ring_count_below(diag, corner, x); };
    std::vector<double> out;
    out.reserve(diag.size());
    detail::bisect_eigenvalues(count, lo, hi, 0, static_cast<int>(diag.size()), tol, out);
    return out;
}

} // namespace cantorspec

#endif
