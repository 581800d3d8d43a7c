#ifndef CANTORSPEC_AMO_HPP
#define CANTORSPEC_AMO_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cantorspec/diophantine.hpp"
#include "cantorspec/errors.hpp"
#include "cantorspec/intervals.hpp"
#include "cantorspec/parallel.hpp"
#include "cantorspec/sturm.hpp"

namespace cantorspec {

struct AmoParams {
    double lambda = 0.0;
    Rational freq{0, 1}; // taken mod 1
    double phase = 0.0;  // omega in [0, 1)

    AmoParams() = default;
    AmoParams(double lambda_, Rational freq_, double phase_ = 0.0)
        : lambda(lambda_), freq(freq_.mod1()), phase(phase_ - std::floor(phase_)) {}
};

struct Matrix2 {
    double a = 1, b = 0, c = 0, d = 1; // [[a, b], [c, d]]

    friend Matrix2 operator*(const Matrix2& m, const Matrix2& n) {
        return {m.a * n.a + m.b * n.c, m.a * n.b + m.b * n.d,
                m.c * n.a + m.d * n.c, m.c * n.b + m.d * n.d};
    }
    double trace() const { return a + d; }
    double det() const { return a * d - b * c; }
    double max_abs() const {
        return std::max(std::max(std::abs(a), std::abs(b)), std::max(std::abs(c), std::abs(d)));
    }
};

// Potential value 2*lambda*cos(2*pi*(n*p/q + omega)); the angle is reduced
// with integer arithmetic so large n costs no accuracy.
inline double amo_potential(const AmoParams& params, std::int64_t n) {
    const std::int64_t q = params.freq.q;
    const std::int64_t m = ((n % q) * (params.freq.p % q)) % q;
    const double angle = 2.0 * std::numbers::pi * (static_cast<double>(m) / static_cast<double>(q) + params.phase);
    return 2.0 * params.lambda * std::cos(angle);
}

// One-step transfer matrix [[E - V(n), -1], [1, 0]].
inline Matrix2 transfer_matrix(double E, const AmoParams& params, std::int64_t n) {
    return {E - amo_potential(params, n), -1.0, 1.0, 0.0};
}

// Trace of the period-q product T(q)...T(1) for a fixed phase. The potential
// over one period is cached; products are rescaled by powers of two when the
// entries grow, so values far outside the spectrum saturate to +-inf with the
// correct sign instead of overflowing.
class PeriodTrace {
public:
    PeriodTrace(double lambda, Rational freq, double omega) {
        const AmoParams params(lambda, freq, omega);
        v_.reserve(static_cast<std::size_t>(params.freq.q));
        for (std::int64_t n = 1; n <= params.freq.q; ++n) v_.push_back(amo_potential(params, n));
    }

    double operator()(double E) const {
        Matrix2 m; // identity
        int exp2 = 0;
        for (double v : v_) {
            m = Matrix2{E - v, -1.0, 1.0, 0.0} * m;
            if (m.max_abs() > 1e250) {
                m.a = std::ldexp(m.a, -512);
                m.b = std::ldexp(m.b, -512);
                m.c = std::ldexp(m.c, -512);
                m.d = std::ldexp(m.d, -512);
                exp2 += 512;
            }
        }
        return std::ldexp(m.trace(), exp2);
    }

    std::size_t period() const { return v_.size(); }

private:
    std::vector<double> v_;
};

// t(E, omega) = Delta(E) + A cos(2 pi q omega) + B sin(2 pi q omega).
// delta_coeffs holds Delta in the monomial basis (ascending, monic degree q),
// obtained by exact polynomial transfer products at two opposite phases; for
// root finding Delta is always evaluated through the numerically stable
// two-phase trace average, never through these coefficients.
struct TraceModel {
    double lambda = 0.0;
    Rational freq{0, 1};
    std::vector<double> delta_coeffs;
    double a_coeff = 0.0; // A
    double b_coeff = 0.0; // B
    double amp = 0.0;     // sqrt(A^2 + B^2)
    double fit_residual = 0.0;

    double delta_poly(double E) const {
        double acc = 0.0;
        for (std::size_t i = delta_coeffs.size(); i-- > 0;) acc = acc * E + delta_coeffs[i];
        return acc;
    }
};

namespace detail {

// 2x2 matrices with polynomial entries (coefficients ascending in E).
struct Poly {
    std::vector<double> c{0.0};

    static Poly constant(double v) { return Poly{{v}}; }
    static Poly linear(double c0, double c1) { return Poly{{c0, c1}}; }

    friend Poly operator*(const Poly& p, const Poly& q) {
        Poly r;
        r.c.assign(p.c.size() + q.c.size() - 1, 0.0);
        for (std::size_t i = 0; i < p.c.size(); ++i)
            for (std::size_t j = 0; j < q.c.size(); ++j) r.c[i + j] += p.c[i] * q.c[j];
        return r;
    }
    friend Poly operator+(const Poly& p, const Poly& q) {
        Poly r;
        r.c.assign(std::max(p.c.size(), q.c.size()), 0.0);
        for (std::size_t i = 0; i < p.c.size(); ++i) r.c[i] += p.c[i];
        for (std::size_t i = 0; i < q.c.size(); ++i) r.c[i] += q.c[i];
        return r;
    }
    friend Poly operator-(const Poly& p) {
        Poly r = p;
        for (double& v : r.c) v = -v;
        return r;
    }
};

struct PolyMatrix2 {
    Poly a, b, c, d;

    static PolyMatrix2 identity() {
        return {Poly::constant(1), Poly::constant(0), Poly::constant(0), Poly::constant(1)};
    }
    friend PolyMatrix2 operator*(const PolyMatrix2& m, const PolyMatrix2& n) {
        return {m.a * n.a + m.b * n.c, m.a * n.b + m.b * n.d,
                m.c * n.a + m.d * n.c, m.c * n.b + m.d * n.d};
    }
};

inline std::vector<double> period_trace_coeffs(double lambda, Rational freq, double omega) {
    const AmoParams params(lambda, freq, omega);
    PolyMatrix2 m = PolyMatrix2::identity();
    for (std::int64_t n = 1; n <= params.freq.q; ++n) {
        PolyMatrix2 t{Poly::linear(-amo_potential(params, n), 1.0), Poly::constant(-1),
                      Poly::constant(1), Poly::constant(0)};
        m = t * m;
    }
    Poly tr = m.a + m.d;
    tr.c.resize(static_cast<std::size_t>(params.freq.q) + 1, 0.0);
    return tr.c;
}

inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline double uniform01(std::uint64_t& state) {
    return static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-53;
}

} // namespace detail

// Extracts Delta, A, B from trace evaluations at the three phases
// {0, 1/(4q), 1/(2q)}: t0 = Delta + A, t1 = Delta + B, t2 = Delta - A.
// A and B are averaged over Chebyshev nodes spanning the search window and the
// affine-in-(cos, sin) structure is validated on a pseudo-random grid.
inline TraceModel fit_trace_model(double lambda, Rational freq) {
    freq = freq.mod1();
    const std::int64_t q = freq.q;

    TraceModel model;
    model.lambda = lambda;
    model.freq = freq;

    const PeriodTrace t0(lambda, freq, 0.0);
    const PeriodTrace t1(lambda, freq, 1.0 / (4.0 * static_cast<double>(q)));
    const PeriodTrace t2(lambda, freq, 1.0 / (2.0 * static_cast<double>(q)));

    // A and B come from differences of traces, so they are extracted at the
    // Chebyshev node where the trace magnitudes are smallest; elsewhere the
    // cancellation noise of O(|t| * eps) can exceed the amplitude itself,
    // which shrinks like 2*|lambda|^q.
    const double hull = 2.0 + 2.0 * std::abs(lambda);
    const int nodes = static_cast<int>(q) + 1;
    double best_mag = std::numeric_limits<double>::infinity();
    for (int j = 0; j < nodes; ++j) {
        const double x = hull * std::cos(std::numbers::pi * (2.0 * j + 1.0) / (2.0 * nodes));
        const double v0 = t0(x), v1 = t1(x), v2 = t2(x);
        const double mag = std::max(std::abs(v0), std::max(std::abs(v1), std::abs(v2)));
        if (mag < best_mag) {
            best_mag = mag;
            model.a_coeff = (v0 - v2) / 2.0;
            model.b_coeff = v1 - (v0 + v2) / 2.0;
        }
    }
    model.amp = std::hypot(model.a_coeff, model.b_coeff);

    const std::vector<double> c0 = detail::period_trace_coeffs(lambda, freq, 0.0);
    const std::vector<double> c2 =
        detail::period_trace_coeffs(lambda, freq, 1.0 / (2.0 * static_cast<double>(q)));
    model.delta_coeffs.resize(c0.size());
    for (std::size_t i = 0; i < c0.size(); ++i) model.delta_coeffs[i] = (c0[i] + c2[i]) / 2.0;

    // Validation sweep over the spectral hull. Deep inside gaps the trace
    // grows exponentially and double precision cannot certify tiny absolute
    // residuals on values of size e^{qL}; the residual is therefore taken over
    // the half of the samples with the smallest trace magnitude, which is the
    // region where the model steers root finding.
    std::uint64_t rng = 0x5ca1ab1e00000000ULL ^ static_cast<std::uint64_t>(q);
    std::vector<std::pair<double, double>> devs; // (|direct|, |direct - modeled|)
    for (int i = 0; i < 128; ++i) {
        const double E = hull * (2.0 * detail::uniform01(rng) - 1.0);
        const double w = detail::uniform01(rng);
        const PeriodTrace tw(lambda, freq, w);
        const double direct = tw(E);
        const double delta = (t0(E) + t2(E)) / 2.0;
        const double angle = 2.0 * std::numbers::pi * static_cast<double>(q) * w;
        const double modeled =
            delta + model.a_coeff * std::cos(angle) + model.b_coeff * std::sin(angle);
        devs.emplace_back(std::abs(direct), std::abs(direct - modeled));
    }
    std::sort(devs.begin(), devs.end());
    double residual = 0.0;
    for (std::size_t i = 0; i < devs.size() / 2; ++i)
        residual = std::max(residual, devs[i].second);
    model.fit_residual = residual;

    const double bound = 1e-8 * std::pow(1.0 + std::abs(lambda), static_cast<double>(q));
    if (!(residual <= bound))
        throw ModelMismatch("fit_trace_model: residual " + std::to_string(residual) +
                            " exceeds bound " + std::to_string(bound) + " for lambda=" +
                            std::to_string(lambda) + " freq=" + freq.str());
    return model;
}

struct SpectrumResult {
    AmoParams params;
    int approx_order = 0; // convergent index; 0 for exact rational input
    IntervalUnion spectrum;
    bool phase_union = true;
    double edge_tol = 0.0;
    double gap_close_tol = 0.0;
    int merged_hairline_gaps = 0;
};

namespace detail {

// Complete root set of g(E) = level on [lo, hi] where g is a period-q
// discriminant-type function: a uniform scan plus bisection finds the simple
// roots, and an exact eigenvalue count for the associated ring matrix
// (expected_count = q in total) locates anything the grid stepped over.
// Tangencies (even-multiplicity touchings) are identified and dropped: they
// do not open gaps. Throws EdgeFindingFailure when the accounting cannot be
// reconciled.
template <class G, class CountFn>
std::vector<double> level_roots(const G& g, double level, double lo, double hi, int grid_nodes,
                                double edge_tol, const CountFn& count, int expected_count,
                                const std::string& what) {
    auto f = [&](double E) { return g(E) - level; };
    const double polish_tol = edge_tol / 4.0;

    std::vector<double> roots;
    double prev_x = lo, prev_f = f(lo);
    for (int i = 1; i <= grid_nodes; ++i) {
        const double x = lo + (hi - lo) * i / grid_nodes;
        const double fx = f(x);
        if ((prev_f < 0.0 && fx >= 0.0) || (prev_f >= 0.0 && fx < 0.0)) {
            double a = prev_x, b = x, fa = prev_f;
            while (b - a > polish_tol) {
                const double m = a + (b - a) / 2.0;
                const double fm = f(m);
                if ((fa < 0.0) == (fm < 0.0)) {
                    a = m;
                    fa = fm;
                } else
                    b = m;
            }
            roots.push_back(a + (b - a) / 2.0);
        }
        prev_x = x;
        prev_f = fx;
    }

    if (static_cast<int>(roots.size()) == expected_count) return roots;
    if (static_cast<int>(roots.size()) > expected_count)
        throw EdgeFindingFailure(what + ": found " + std::to_string(roots.size()) +
                                 " sign changes, expected at most " +
                                 std::to_string(expected_count));

    // Rescue pass: count-guided subdivision isolates every eigenvalue cluster
    // of the associated ring matrix; clusters already matched by a scanned
    // root are skipped, odd clusters yield a crossing the grid stepped over,
    // and even clusters with no interior sign flip are tangencies (closed
    // gaps) which open no edge.
    const int c_lo = count(lo), c_hi = count(hi);
    if (c_hi - c_lo != expected_count)
        throw EdgeFindingFailure(what + ": eigenvalue count over the search window is " +
                                 std::to_string(c_hi - c_lo) + ", expected " +
                                 std::to_string(expected_count));

    auto near_found_root = [&](double x) {
        auto it = std::lower_bound(roots.begin(), roots.end(), x);
        if (it != roots.end() && std::abs(*it - x) <= 2 * edge_tol) return true;
        if (it != roots.begin() && std::abs(*std::prev(it) - x) <= 2 * edge_tol) return true;
        return false;
    };

    // Below this magnitude a trace value cannot be distinguished from an
    // exact band tangency, where the level function has second-order contact
    // and the count transitions themselves wander by ~sqrt(eps). Treating
    // such clusters as crossings would fabricate sub-resolution gaps.
    const double noise_floor = 1e-11 * (1.0 + std::abs(level));

    std::vector<double> extra;
    struct Window {
        double a, b;
        int ca, cb;
    };
    std::vector<Window> stack{{lo, hi, c_lo, c_hi}};
    while (!stack.empty()) {
        Window win = stack.back();
        stack.pop_back();
        if (win.cb - win.ca == 0) continue;
        if (win.b - win.a <= edge_tol) {
            const double mid = win.a + (win.b - win.a) / 2.0;
            if (near_found_root(mid)) continue;
            const int mult = win.cb - win.ca;
            const double fa = f(win.a), fb = f(win.b);
            if ((fa < 0.0) != (fb < 0.0)) {
                if (std::max(std::abs(fa), std::abs(fb)) >= noise_floor)
                    extra.push_back(mid); // odd crossing missed by the grid
            } else if (mult >= 2) {
                const double fm = f(mid);
                if ((fm < 0.0) != (fa < 0.0) && std::abs(fm) >= noise_floor) {
                    extra.push_back(win.a); // hairline pair, resolved at tol width
                    extra.push_back(win.b);
                }
                // else: tangency, no gap opens
            }
            continue;
        }
        const double m = win.a + (win.b - win.a) / 2.0;
        const int cm = std::clamp(count(m), win.ca, win.cb);
        stack.push_back({m, win.b, cm, win.cb});
        stack.push_back({win.a, m, win.ca, cm});
    }

    roots.insert(roots.end(), extra.begin(), extra.end());
    std::sort(roots.begin(), roots.end());
    if (static_cast<int>(roots.size()) > expected_count)
        throw EdgeFindingFailure(what + ": located " + std::to_string(roots.size()) +
                                 " edges, expected at most " + std::to_string(expected_count));
    return roots;
}

struct BandAssembly {
    std::vector<Interval> bands;
    int merged_hairline_gaps = 0;
};

template <class G>
BandAssembly assemble_bands(const G& g, double level_up, double level_dn,
                            std::vector<double> roots, double lo, double hi,
                            double gap_close_tol, int max_parts, const std::string& what) {
    std::sort(roots.begin(), roots.end());
    if (roots.empty())
        throw EdgeFindingFailure(what + ": no band edges found on the search window");

    // Tolerant membership: where the trace is exactly tangent to a level the
    // computed value at the touching point is pure rounding noise, and a
    // strict comparison would cut a closed band apart. Genuine gaps clear the
    // floor at their midpoint because the trace overshoots the level there.
    const double floor_up = 1e-11 * (1.0 + std::abs(level_up));
    const double floor_dn = 1e-11 * (1.0 + std::abs(level_dn));
    auto member = [&](double E) {
        const double v = g(E);
        return v <= level_up + floor_up && v >= level_dn - floor_dn;
    };

    std::vector<Interval> bands;
    std::optional<double> open;
    for (std::size_t i = 0; i + 1 < roots.size(); ++i) {
        const double mid = roots[i] + (roots[i + 1] - roots[i]) / 2.0;
        if (member(mid)) {
            if (!open) open = roots[i];
        } else if (open) {
            bands.emplace_back(*open, roots[i]);
            open.reset();
        }
    }
    if (open) bands.emplace_back(*open, roots.back());
    if (member(lo) || member(hi))
        throw EdgeFindingFailure(what + ": spectrum leaks out of the search window");
    if (bands.empty())
        throw EdgeFindingFailure(what + ": no bands assembled");

    // merge gaps below numerical resolution; hairline gaps would pollute
    // thickness, which divides by gap length
    BandAssembly out;
    out.bands.push_back(bands.front());
    for (std::size_t i = 1; i < bands.size(); ++i) {
        if (bands[i].lo - out.bands.back().hi < gap_close_tol) {
            out.bands.back().hi = bands[i].hi;
            ++out.merged_hairline_gaps;
        } else
            out.bands.push_back(bands[i]);
    }
    if (static_cast<int>(out.bands.size()) > max_parts)
        throw EdgeFindingFailure(what + ": assembled " + std::to_string(out.bands.size()) +
                                 " bands, structure allows at most " + std::to_string(max_parts));
    return out;
}

inline std::vector<double> ring_diagonal(double lambda, Rational freq, double omega) {
    const AmoParams params(lambda, freq, omega);
    std::vector<double> diag;
    diag.reserve(static_cast<std::size_t>(freq.q));
    for (std::int64_t n = 1; n <= freq.q; ++n) diag.push_back(amo_potential(params, n));
    return diag;
}

} // namespace detail

inline double default_gap_close_tol(double lambda) {
    return 1e-9 * (4.0 + 4.0 * std::abs(lambda));
}

// Phase-union spectrum at a rational frequency:
// {E : min_omega |t(E, omega)| <= 2} = {E : |Delta(E)| <= 2 + amp}.
// Band edges are the roots of Delta = +-(2 + amp). Root counts are audited
// against exact ring-matrix eigenvalue counts taken at the phases where the
// oscillating trace term is extremal, which is where those root sets coincide
// with periodic/antiperiodic eigenvalue sets.
inline SpectrumResult spectrum_rational(double lambda, Rational freq, double edge_tol = 1e-10,
                                        double gap_close_tol = -1.0) {
    if (!(edge_tol > 0.0)) throw ValidationError("spectrum_rational: edge_tol must be > 0");
    freq = freq.mod1();
    if (gap_close_tol < 0.0) gap_close_tol = default_gap_close_tol(lambda);
    const std::int64_t q = freq.q;
    const TraceModel model = fit_trace_model(lambda, freq);

    const PeriodTrace t0(lambda, freq, 0.0);
    const PeriodTrace t2(lambda, freq, 1.0 / (2.0 * static_cast<double>(q)));
    auto delta = [&](double E) { return (t0(E) + t2(E)) / 2.0; };

    const double lo = -2.0 - 2.0 * std::abs(lambda) - 1.0;
    const double hi = -lo;
    const int grid = std::max<int>(1024, 64 * static_cast<int>(q));
    const double level = 2.0 + model.amp;

    // extremal phases: trig term equals -amp at omega_minus, +amp at omega_plus
    const double phi = std::atan2(model.b_coeff, model.a_coeff);
    const double two_pi_q = 2.0 * std::numbers::pi * static_cast<double>(q);
    const double omega_minus = (phi + std::numbers::pi) / two_pi_q;
    const double omega_plus = phi / two_pi_q;

    const std::vector<double> diag_minus = detail::ring_diagonal(lambda, freq, omega_minus);
    const std::vector<double> diag_plus = detail::ring_diagonal(lambda, freq, omega_plus);
    auto count_up = [&](double x) { return ring_count_below(diag_minus, +1.0, x); };
    auto count_dn = [&](double x) { return ring_count_below(diag_plus, -1.0, x); };

    const std::string what = "spectrum_rational(lambda=" + std::to_string(lambda) +
                             ", freq=" + freq.str() + ")";
    std::vector<double> roots =
        detail::level_roots(delta, +level, lo, hi, grid, edge_tol, count_up,
                            static_cast<int>(q), what + " upper level");
    const std::vector<double> lower =
        detail::level_roots(delta, -level, lo, hi, grid, edge_tol, count_dn,
                            static_cast<int>(q), what + " lower level");
    roots.insert(roots.end(), lower.begin(), lower.end());

    detail::BandAssembly assembly = detail::assemble_bands(
        delta, +level, -level, std::move(roots), lo, hi, gap_close_tol, static_cast<int>(q), what);

    SpectrumResult res{AmoParams(lambda, freq, 0.0), 0, IntervalUnion(std::move(assembly.bands)),
                       true, edge_tol, gap_close_tol, assembly.merged_hairline_gaps};
    return res;
}

// Fixed-phase spectrum {E : |t(E, omega)| <= 2}. Root counts at the two levels
// are exactly the periodic / antiperiodic eigenvalue counts at this phase.
inline SpectrumResult spectrum_fixed_phase(double lambda, Rational freq, double phase,
                                           double edge_tol = 1e-10) {
    if (!(edge_tol > 0.0)) throw ValidationError("spectrum_fixed_phase: edge_tol must be > 0");
    freq = freq.mod1();
    const std::int64_t q = freq.q;
    const AmoParams params(lambda, freq, phase);

    const PeriodTrace tw(lambda, freq, params.phase);
    auto trace = [&](double E) { return tw(E); };

    const double lo = -2.0 - 2.0 * std::abs(lambda) - 1.0;
    const double hi = -lo;
    const int grid = std::max<int>(1024, 64 * static_cast<int>(q));

    const std::vector<double> diag = detail::ring_diagonal(lambda, freq, params.phase);
    auto count_up = [&](double x) { return ring_count_below(diag, +1.0, x); };
    auto count_dn = [&](double x) { return ring_count_below(diag, -1.0, x); };

    const std::string what = "spectrum_fixed_phase(lambda=" + std::to_string(lambda) +
                             ", freq=" + freq.str() + ", omega=" + std::to_string(params.phase) +
                             ")";
    std::vector<double> roots = detail::level_roots(trace, +2.0, lo, hi, grid, edge_tol,
                                                    count_up, static_cast<int>(q),
                                                    what + " upper level");
    const std::vector<double> lower = detail::level_roots(trace, -2.0, lo, hi, grid, edge_tol,
                                                          count_dn, static_cast<int>(q),
                                                          what + " lower level");
    roots.insert(roots.end(), lower.begin(), lower.end());

    detail::BandAssembly assembly = detail::assemble_bands(trace, +2.0, -2.0, std::move(roots),
                                                           lo, hi, 0.0, static_cast<int>(q), what);

    SpectrumResult res{params, 0, IntervalUnion(std::move(assembly.bands)), false, edge_tol, 0.0,
                       assembly.merged_hairline_gaps};
    return res;
}

// Spectrum at an irrational frequency, approximated through the order-th
// continued-fraction convergent (0-based). The phase-union spectrum at the
// convergent is the Hausdorff-continuous rational proxy; approx_order records
// which truncation produced the set.
inline SpectrumResult spectrum_irrational(double lambda, const FrequencySpec& spec, int order,
                                          double edge_tol = 1e-10, double gap_close_tol = -1.0) {
    if (order < 1) throw ValidationError("spectrum_irrational: order must be >= 1");
    if (spec.is_rational())
        throw RationalInput("spectrum_irrational: frequency is rational; use spectrum_rational");
    const std::vector<Rational> conv = convergents(spec, order + 1);
    if (static_cast<int>(conv.size()) <= order)
        throw PrecisionExhausted("spectrum_irrational: could not produce convergent of order " +
                                 std::to_string(order));
    SpectrumResult res = spectrum_rational(lambda, conv[static_cast<std::size_t>(order)],
                                           edge_tol, gap_close_tol);
    res.approx_order = order;
    return res;
}

// Independent oracle: for each omega on the grid, all eigenvalues of the q x q
// periodic-boundary matrices are extracted by bisection with Sturm counts and
// paired into bands. The Bloch phase enters through its extreme values 0 and
// pi (corner entries +1 / -1): as theta sweeps [0, pi] the j-th eigenvalue
// moves monotonically between those two endpoints, so the sorted interleaving
// [e_1,e_2], [e_3,e_4], ... of the two eigenvalue sets brackets the swept
// eigenvalues exactly; interior theta samples would add no set content.
inline IntervalUnion bloch_oracle(double lambda, Rational freq, int omega_grid, int theta_grid,
                                  int threads = 1) {
    if (omega_grid < 8 || theta_grid < 8)
        throw ValidationError("bloch_oracle: grids must be >= 8");
    freq = freq.mod1();
    const std::size_t q = static_cast<std::size_t>(freq.q);
    const double tol = 1e-9;
    // multiple eigenvalues (touching bands) are only localizable to ~sqrt(eps)
    // by counting, so brackets carry that much slack
    const double pad = 1e-7;

    std::vector<std::vector<Interval>> rows(static_cast<std::size_t>(omega_grid));
    parallel_for(static_cast<std::size_t>(omega_grid), threads, [&](std::size_t i) {
        const double omega = static_cast<double>(i) / omega_grid;
        const std::vector<double> diag = detail::ring_diagonal(lambda, freq, omega);
        std::vector<double> evs = ring_eigenvalues(diag, +1.0, tol);
        std::vector<double> anti = ring_eigenvalues(diag, -1.0, tol);
        evs.insert(evs.end(), anti.begin(), anti.end());
        std::sort(evs.begin(), evs.end());
        std::vector<Interval> bands;
        bands.reserve(q);
        for (std::size_t j = 0; j + 1 < evs.size(); j += 2)
            bands.emplace_back(evs[j] - pad, evs[j + 1] + pad);
        rows[i] = std::move(bands);
    });

    std::vector<Interval> all;
    all.reserve(static_cast<std::size_t>(omega_grid) * q);
    for (const auto& row : rows) all.insert(all.end(), row.begin(), row.end());
    return IntervalUnion(std::move(all));
}

// Spectra for all reduced p/q with q <= q_max, as a plot dataset.
inline std::vector<std::pair<Rational, IntervalUnion>> butterfly(double lambda, int q_max,
                                                                 double edge_tol = 1e-10,
                                                                 int threads = 1) {
    if (q_max < 2) throw ValidationError("butterfly: q_max must be >= 2");
    std::vector<Rational> freqs;
    freqs.emplace_back(0, 1);
    for (int q = 2; q <= q_max; ++q)
        for (int p = 1; p < q; ++p)
            if (std::gcd(p, q) == 1) freqs.emplace_back(p, q);

    std::vector<std::optional<std::pair<Rational, IntervalUnion>>> rows(freqs.size());
    parallel_for(freqs.size(), threads, [&](std::size_t i) {
        rows[i] = std::make_pair(freqs[i], spectrum_rational(lambda, freqs[i], edge_tol).spectrum);
    });
    std::vector<std::pair<Rational, IntervalUnion>> out;
    out.reserve(rows.size());
    for (auto& r : rows) out.push_back(std::move(*r));
    return out;
}

} // namespace cantorspec

#endif
