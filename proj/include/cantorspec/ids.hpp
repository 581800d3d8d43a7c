#ifndef CANTORSPEC_IDS_HPP
#define CANTORSPEC_IDS_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "cantorspec/amo.hpp"
#include "cantorspec/diophantine.hpp"
#include "cantorspec/errors.hpp"
#include "cantorspec/parallel.hpp"
#include "cantorspec/sturm.hpp"

namespace cantorspec {

struct IdsCurve {
    AmoParams params;
    int volume = 0;    // N
    int phase_avg = 1; // number of omega samples averaged
    std::vector<std::pair<double, double>> samples; // (x, value), x ascending

    // monotone piecewise-linear evaluation with flat extrapolation
    double operator()(double x) const {
        if (samples.empty()) return 0.0;
        if (x <= samples.front().first) return samples.front().second;
        if (x >= samples.back().first) return samples.back().second;
        auto it = std::lower_bound(samples.begin(), samples.end(), x,
                                   [](const auto& s, double v) { return s.first < v; });
        const auto& [x1, y1] = *it;
        const auto& [x0, y0] = *std::prev(it);
        if (x1 == x0) return y0;
        return y0 + (y1 - y0) * (x - x0) / (x1 - x0);
    }
};

struct GapLabelAssignment {
    int gap_index = 0;
    std::int64_t label_n = 0; // 0 marks "no label found within tolerance"
    double ids_value = 0.0;
    double residual = 0.0;
    Interval gap;
    bool labeled = false;
};

namespace detail {

inline std::vector<double> dirichlet_diagonal(const AmoParams& params, int N, double omega) {
    AmoParams shifted = params;
    shifted.phase = omega - std::floor(omega);
    std::vector<double> diag;
    diag.reserve(static_cast<std::size_t>(N));
    for (int n = 1; n <= N; ++n) diag.push_back(amo_potential(shifted, n));
    return diag;
}

} // namespace detail

// Normalized eigenvalue count of the N x N Dirichlet truncation, exact by
// Sturm pivot signs.
inline double count_below(const AmoParams& params, int N, double x) {
    if (N < 2) throw ValidationError("count_below: N must be >= 2");
    const std::vector<double> diag = detail::dirichlet_diagonal(params, N, params.phase);
    return static_cast<double>(tridiag_count_below(diag, x)) / static_cast<double>(N);
}

// count_below averaged over phase_avg equi-spaced phases starting at
// params.phase; monotone in x by construction.
inline IdsCurve ids_curve(const AmoParams& params, int N, int phase_avg,
                          const std::vector<double>& grid, int threads = 1) {
    if (N < 2) throw ValidationError("ids_curve: N must be >= 2");
    if (phase_avg < 1) throw ValidationError("ids_curve: phase_avg must be >= 1");
    if (!std::is_sorted(grid.begin(), grid.end()))
        throw ValidationError("ids_curve: grid must be sorted");

    std::vector<std::vector<double>> diags;
    diags.reserve(static_cast<std::size_t>(phase_avg));
    for (int j = 0; j < phase_avg; ++j)
        diags.push_back(detail::dirichlet_diagonal(
            params, N, params.phase + static_cast<double>(j) / phase_avg));

    IdsCurve curve;
    curve.params = params;
    curve.volume = N;
    curve.phase_avg = phase_avg;
    curve.samples.resize(grid.size());
    parallel_for(grid.size(), threads, [&](std::size_t i) {
        long total = 0;
        for (const auto& diag : diags) total += tridiag_count_below(diag, grid[i]);
        curve.samples[i] = {grid[i], static_cast<double>(total) /
                                         (static_cast<double>(N) * phase_avg)};
    });
    return curve;
}

inline double default_label_tol(int N) { return std::max(5.0 / N, 1e-4); }

// For each bounded gap, the curve value at the gap midpoint is matched to
// frac(n * alpha) over |n| <= n_max; candidates are scanned as 1, -1, 2, -2,
// ..., so ties resolve to the smallest |n|, positive first. Targets equal to
// 0 belong to the unbounded gap and are never assigned.
inline std::vector<GapLabelAssignment> label_gaps(const SpectrumResult& spec,
                                                  const IdsCurve& curve,
                                                  const FrequencySpec& freq_spec,
                                                  std::int64_t n_max, double tol) {
    if (n_max < 1) throw ValidationError("label_gaps: n_max must be >= 1");
    if (!(tol > 0.0)) throw ValidationError("label_gaps: tol must be > 0");

    const std::vector<Interval> gaps = bounded_gaps(spec.spectrum);
    std::vector<GapLabelAssignment> out;
    out.reserve(gaps.size());
    for (std::size_t g = 0; g < gaps.size(); ++g) {
        const double mid = gaps[g].lo + (gaps[g].hi - gaps[g].lo) / 2.0;
        const double value = curve(mid);

        GapLabelAssignment a;
        a.gap_index = static_cast<int>(g);
        a.gap = gaps[g];
        a.ids_value = value;
        double best = std::numeric_limits<double>::infinity();
        for (std::int64_t k = 1; k <= n_max; ++k) {
            for (const std::int64_t n : {k, -k}) {
                const double target = frac_multiple(freq_spec, n);
                if (target == 0.0) continue;
                const double r = std::abs(value - target);
                if (r < best) {
                    best = r;
                    a.label_n = n;
                    a.residual = r;
                }
            }
        }
        a.labeled = std::isfinite(best) && best <= tol;
        if (!a.labeled) a.label_n = 0;
        out.push_back(a);
    }
    return out;
}

struct HolderFit {
    double C_H_hat = 0.0;
    double h_hat = 0.0;
    int pairs_used = 0;
};

// Log-log regression of |N(x) - N(y)| against |x - y| over sampled pairs in
// the window (defaults to the spectral hull). The constant is the envelope
// value: the smallest C with |dN| <= C |dx|^h over every sampled pair.
inline HolderFit estimate_holder(const std::vector<AmoParams>& sweep, int N, int pairs,
                                 std::uint64_t seed = 1,
                                 std::optional<Interval> window = std::nullopt) {
    if (pairs < 100) throw ValidationError("estimate_holder: need at least 100 pairs");
    if (sweep.empty()) throw ValidationError("estimate_holder: empty sweep");

    std::mt19937_64 rng(seed);
    std::vector<double> lx, ly;
    lx.reserve(static_cast<std::size_t>(pairs) * sweep.size());
    for (const AmoParams& params : sweep) {
        const double hull = 2.0 + 2.0 * std::abs(params.lambda);
        const double lo = window ? window->lo : -hull;
        const double hi = window ? window->hi : hull;
        std::uniform_real_distribution<double> u(lo, hi);
        const std::vector<double> diag = detail::dirichlet_diagonal(params, N, params.phase);
        for (int i = 0; i < pairs; ++i) {
            const double x = u(rng), y = u(rng);
            if (x == y) continue;
            const double nx = static_cast<double>(tridiag_count_below(diag, x)) / N;
            const double ny = static_cast<double>(tridiag_count_below(diag, y)) / N;
            const double dn = std::abs(nx - ny);
            if (dn <= 0.0) continue;
            lx.push_back(std::log(std::abs(x - y)));
            ly.push_back(std::log(dn));
        }
    }
    if (lx.size() < 10)
        throw ValidationError("estimate_holder: too few informative pairs sampled");

    const double n = static_cast<double>(lx.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        mx += lx[i];
        my += ly[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sxy += (lx[i] - mx) * (ly[i] - my);
        sxx += (lx[i] - mx) * (lx[i] - mx);
    }
    HolderFit fit;
    fit.h_hat = sxy / sxx;
    double log_c = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < lx.size(); ++i)
        log_c = std::max(log_c, ly[i] - fit.h_hat * lx[i]);
    fit.C_H_hat = std::exp(log_c);
    fit.pairs_used = static_cast<int>(lx.size());
    return fit;
}

} // namespace cantorspec

#endif
