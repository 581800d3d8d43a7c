#ifndef CANTORSPEC_BOUNDS_HPP
#define CANTORSPEC_BOUNDS_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "cantorspec/errors.hpp"

namespace cantorspec {

// Constants feeding the analytic inequalities. All are existence-quantified
// in the theory; here they are plain inputs, typically fitted from data.
struct BoundParams {
    int b = 1;              // number of frequencies
    double c = 1.0;         // Diophantine constant
    double t = 2.0;         // Diophantine exponent, > b
    double C_H = 1.0;       // Holder constant
    double h = 0.5;         // Holder exponent in (0, 1]
    double C_E = 1.0;       // gap-decay rate
    double C_lambda = 1.0;  // gap-decay prefactor C(lambda)
    double v_norm = 1.0;    // analytic sup-norm |v|_{r0}
    double r0 = 1.0;
    double r = 0.5;         // 0 < r < r0

    void validate() const {
        if (b < 1) throw ValidationError("bounds: b must be >= 1");
        if (!(c > 0.0)) throw ValidationError("bounds: c must be > 0");
        if (!(t > b)) throw ValidationError("bounds: t must exceed b");
        if (!(C_H > 0.0)) throw ValidationError("bounds: C_H must be > 0");
        if (!(h > 0.0 && h <= 1.0)) throw ValidationError("bounds: h must lie in (0, 1]");
        if (!(C_E > 0.0)) throw ValidationError("bounds: C_E must be > 0");
        if (!(C_lambda > 0.0)) throw ValidationError("bounds: C_lambda must be > 0");
        if (!(v_norm > 0.0)) throw ValidationError("bounds: v_norm must be > 0");
        if (!(r0 > 0.0 && r > 0.0 && r < r0))
            throw ValidationError("bounds: need 0 < r < r0");
    }
};

struct PerturbationBounds {
    double dist_bound = 0.0; // Hausdorff distance of the spectrum to [-2, 2]
    double diam_bound = 0.0; // deviation of the diameter from 4
};

// With potential norm 2|lambda|: spectra move at most 2|lambda| in Hausdorff
// distance and diameters at most 4|lambda|.
inline PerturbationBounds perturbation_bounds(double lambda) {
    return {2.0 * std::abs(lambda), 4.0 * std::abs(lambda)};
}

// (v_norm)^{2/3} * exp(-2 pi r |n|). Valid only when v_norm is inside the
// (unquantified) smallness regime, which is the caller's responsibility;
// serialization marks the value as conditional on that regime.
inline double gap_length_bound(const BoundParams& params, std::int64_t n) {
    params.validate();
    if (n == 0) throw ValidationError("gap_length_bound: n must be nonzero");
    return std::pow(params.v_norm, 2.0 / 3.0) *
           std::exp(-2.0 * std::numbers::pi * params.r * static_cast<double>(std::llabs(n)));
}

// (c/C_H)^{1/h} / (C_lambda * e^{-C_E kappa} * (2 kappa)^{(t-1)/h}).
inline double thickness_lower_bound(const BoundParams& params, double kappa) {
    params.validate();
    if (!(kappa > 0.0)) throw ValidationError("thickness_lower_bound: kappa must be > 0");
    const double numer = std::pow(params.c / params.C_H, 1.0 / params.h);
    const double denom = params.C_lambda * std::exp(-params.C_E * kappa) *
                         std::pow(2.0 * kappa, (params.t - 1.0) / params.h);
    return numer / denom;
}

// Inverse of gap_length = C_lambda * e^{-C_E kappa}.
inline double kappa_of_gap(double gap_length, double C_lambda, double C_E) {
    if (!(gap_length > 0.0) || !(C_lambda > 0.0) || !(C_E > 0.0))
        throw ValidationError("kappa_of_gap: arguments must be positive");
    return -std::log(gap_length / C_lambda) / C_E;
}

struct LabeledGapLength {
    std::int64_t n = 0;
    double length = 0.0;
};

struct GapDecaySample {
    double lambda = 0.0;
    std::vector<LabeledGapLength> gaps;
};

struct GapDecayFit {
    double C_E_hat = 0.0;
    double C_lambda_hat = 0.0; // envelope constant at the smallest |lambda|
    std::vector<std::pair<double, double>> c_by_lambda; // (lambda, C(lambda)), input order
    bool decreasing_toward_zero = false; // C(lambda) non-increasing as |lambda| shrinks
    std::vector<std::pair<double, LabeledGapLength>> raw; // every (lambda, n, length) kept
};

// Common-slope regression of log(length) against |n| across couplings (one
// intercept per lambda), then per-lambda envelope constants: the minimal
// C(lambda) with length <= C(lambda) e^{-C_E |n|} over all of that coupling's
// gaps.
inline GapDecayFit fit_gap_decay(const std::vector<GapDecaySample>& sweep) {
    if (sweep.size() < 3)
        throw InsufficientLabels("fit_gap_decay: need labeled spectra for >= 3 couplings");
    for (const auto& s : sweep)
        if (s.gaps.size() < 3)
            throw InsufficientLabels("fit_gap_decay: fewer than 3 labeled gaps at lambda=" +
                                     std::to_string(s.lambda));

    double sxx = 0.0, sxy = 0.0;
    for (const auto& s : sweep) {
        double mx = 0.0, my = 0.0;
        for (const auto& g : s.gaps) {
            mx += static_cast<double>(std::llabs(g.n));
            my += std::log(g.length);
        }
        mx /= static_cast<double>(s.gaps.size());
        my /= static_cast<double>(s.gaps.size());
        for (const auto& g : s.gaps) {
            const double dx = static_cast<double>(std::llabs(g.n)) - mx;
            sxx += dx * dx;
            sxy += dx * (std::log(g.length) - my);
        }
    }
    if (!(sxx > 0.0))
        throw InsufficientLabels("fit_gap_decay: gap labels are degenerate (single |n|)");

    GapDecayFit fit;
    fit.C_E_hat = std::max(-sxy / sxx, 0.0); // decay rate; clamp to the physical sign

    for (const auto& s : sweep) {
        double log_c = -std::numeric_limits<double>::infinity();
        for (const auto& g : s.gaps) {
            log_c = std::max(log_c,
                             std::log(g.length) + fit.C_E_hat * static_cast<double>(std::llabs(g.n)));
            fit.raw.emplace_back(s.lambda, g);
        }
        fit.c_by_lambda.emplace_back(s.lambda, std::exp(log_c));
    }

    std::vector<std::pair<double, double>> by_size = fit.c_by_lambda;
    std::sort(by_size.begin(), by_size.end(), [](const auto& a, const auto& b) {
        return std::abs(a.first) > std::abs(b.first);
    });
    fit.decreasing_toward_zero = true;
    for (std::size_t i = 1; i < by_size.size(); ++i)
        if (by_size[i].second > by_size[i - 1].second) fit.decreasing_toward_zero = false;
    fit.C_lambda_hat = by_size.back().second;
    return fit;
}

} // namespace cantorspec

#endif
