#ifndef CANTORSPEC_PIPELINE_HPP
#define CANTORSPEC_PIPELINE_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "cantorspec/amo.hpp"
#include "cantorspec/diophantine.hpp"
#include "cantorspec/errors.hpp"
#include "cantorspec/gap_lemma.hpp"
#include "cantorspec/intervals.hpp"
#include "cantorspec/parallel.hpp"

namespace cantorspec {

struct Tolerances {
    double edge_tol = 1e-10;
    double gap_close_tol = -1.0; // < 0: per-coupling default
    double label_tol = -1.0;     // < 0: set from the IDS volume
};

struct ExperimentConfig {
    int dims = 2;
    std::vector<FrequencySpec> freq_specs;
    std::vector<std::vector<double>> lambdas; // one sweep list per dimension
    int approx_order = 7;
    Tolerances tol;
    std::uint64_t seeds = 1;
    int threads = 1;

    void validate() const {
        if (dims < 2) throw ValidationError("config: dims must be >= 2");
        if (static_cast<int>(freq_specs.size()) != dims)
            throw ValidationError("config: freq_specs length must equal dims");
        if (static_cast<int>(lambdas.size()) != dims)
            throw ValidationError("config: lambdas needs one sweep list per dimension");
        for (const auto& sweep : lambdas) {
            if (sweep.empty()) throw ValidationError("config: empty lambda sweep");
            for (double l : sweep)
                if (l == 0.0 || !std::isfinite(l))
                    throw ValidationError(
                        "config: lambda sweep values must satisfy 0 < |lambda| "
                        "(zero coupling excluded)");
        }
        if (approx_order < 0) throw ValidationError("config: approx_order must be >= 0");
        if (!(tol.edge_tol > 0.0)) throw ValidationError("config: edge_tol must be > 0");
        if (threads < 1) throw ValidationError("config: threads must be >= 1");
    }
};

struct SpectrumSummary {
    double lambda = 0.0;
    Rational convergent{0, 1};
    int approx_order = 0;
    std::size_t parts = 0;
    double tau = 0.0;
    double gamma = 0.0;
    double diam = 0.0;
};

struct TupleRecord {
    std::vector<double> lambdas;
    std::vector<SpectrumSummary> spectra;
    GapLemmaVerdict verdict;
    IntervalUnion oracle_sum;
    bool is_interval = false; // always read off the oracle sum, never the verdict
    bool verdict_consistent = true;
};

struct ExperimentReport {
    ExperimentConfig config;
    std::vector<TupleRecord> records;
    std::optional<double> empirical_threshold; // min over gapped tuples of max_k |lambda_k|
    bool all_intervals = false;
};

namespace detail {

inline SpectrumResult spectrum_for(const FrequencySpec& spec, double lambda, int order,
                                   const Tolerances& tol) {
    if (spec.is_rational())
        return spectrum_rational(lambda, spec.rat, tol.edge_tol, tol.gap_close_tol);
    return spectrum_irrational(lambda, spec, order, tol.edge_tol, tol.gap_close_tol);
}

} // namespace detail

// Full grid experiment: spectra per dimension, thickness, the d-set verdict,
// and the exact Minkowski sum per lambda-tuple. The d-dimensional spectrum is
// obtained through the separability identity (sum of the 1D spectra); no
// d-dimensional eigensolver is involved.
inline ExperimentReport run_main_theorem(const ExperimentConfig& config) {
    config.validate();

    std::vector<std::size_t> shape;
    std::size_t total = 1;
    for (const auto& sweep : config.lambdas) {
        shape.push_back(sweep.size());
        total *= sweep.size();
    }

    std::vector<std::optional<TupleRecord>> slots(total);
    parallel_for(total, config.threads, [&](std::size_t idx) {
        std::size_t rem = idx;
        std::vector<double> lam(static_cast<std::size_t>(config.dims));
        for (std::size_t k = shape.size(); k-- > 0;) {
            lam[k] = config.lambdas[k][rem % shape[k]];
            rem /= shape[k];
        }

        TupleRecord rec{lam,
                        {},
                        {},
                        IntervalUnion{Interval(0.0, 0.0)},
                        false,
                        true};
        std::vector<IntervalUnion> sets;
        sets.reserve(lam.size());
        for (std::size_t k = 0; k < lam.size(); ++k) {
            const SpectrumResult s =
                detail::spectrum_for(config.freq_specs[k], lam[k], config.approx_order,
                                     config.tol);
            const ThicknessReport t = thickness(s.spectrum);
            rec.spectra.push_back(SpectrumSummary{lam[k], s.params.freq, s.approx_order,
                                                  s.spectrum.size(), t.tau, t.gamma, t.diam});
            sets.push_back(s.spectrum);
        }
        rec.verdict = check_astels(sets);
        rec.oracle_sum = minkowski_sum(sets);
        rec.is_interval = rec.oracle_sum.is_interval();
        if (rec.verdict.predicted_interval) {
            rec.verdict_consistent =
                rec.is_interval && rec.oracle_sum.parts().front() == *rec.verdict.predicted_interval;
        }
        slots[idx] = std::move(rec);
    });

    ExperimentReport report;
    report.config = config;
    report.records.reserve(total);
    for (auto& s : slots) report.records.push_back(std::move(*s));

    double threshold = std::numeric_limits<double>::infinity();
    bool any_gapped = false;
    for (const TupleRecord& rec : report.records) {
        if (!rec.is_interval) {
            any_gapped = true;
            double worst = 0.0;
            for (double l : rec.lambdas) worst = std::max(worst, std::abs(l));
            threshold = std::min(threshold, worst);
        }
    }
    report.all_intervals = !any_gapped;
    if (any_gapped) report.empirical_threshold = threshold;
    return report;
}

struct ThresholdProbe {
    double lambda = 0.0;
    bool is_interval = false;
};

struct ThresholdReport {
    double lambda_star = 0.0;
    int approx_order = 0;
    bool non_monotonic = false;
    std::vector<ThresholdProbe> probes;
};

// Equal-coupling bisection for the switch point of "the exact sum is an
// interval". A coarse ascending scan over [lo, hi] locates sign changes of the
// predicate; the first one is bisected. More than one change is reported as
// non-monotonicity instead of being averaged away.
inline ThresholdReport find_threshold(const std::vector<FrequencySpec>& freq_specs,
                                      int approx_order, const Tolerances& tol, double lo,
                                      double hi, int bisection_steps, int coarse_points = 9,
                                      int threads = 1) {
    if (freq_specs.size() < 2) throw TooFewSets("find_threshold: need dims >= 2");
    if (bisection_steps < 4)
        throw ValidationError("find_threshold: bisection_steps must be >= 4");
    if (!(0.0 < lo && lo < hi)) throw ValidationError("find_threshold: need 0 < lo < hi");
    if (coarse_points < 2) throw ValidationError("find_threshold: coarse_points must be >= 2");

    auto predicate = [&](double lambda) {
        std::vector<IntervalUnion> sets;
        sets.reserve(freq_specs.size());
        for (const auto& spec : freq_specs)
            sets.push_back(detail::spectrum_for(spec, lambda, approx_order, tol).spectrum);
        return minkowski_sum(sets).is_interval();
    };

    ThresholdReport report;
    report.approx_order = approx_order;
    report.probes.resize(static_cast<std::size_t>(coarse_points));
    parallel_for(static_cast<std::size_t>(coarse_points), threads, [&](std::size_t i) {
        const double lambda = lo + (hi - lo) * static_cast<double>(i) / (coarse_points - 1);
        report.probes[i] = ThresholdProbe{lambda, predicate(lambda)};
    });

    int flips = 0;
    std::size_t first_flip = 0;
    for (std::size_t i = 0; i + 1 < report.probes.size(); ++i) {
        if (report.probes[i].is_interval != report.probes[i + 1].is_interval) {
            if (flips == 0) first_flip = i;
            ++flips;
        }
    }
    if (flips == 0)
        throw NoSwitchFound("find_threshold: predicate is constant (" +
                            std::string(report.probes.front().is_interval ? "interval"
                                                                          : "gapped") +
                            ") over [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    report.non_monotonic = flips > 1;

    double a = report.probes[first_flip].lambda;
    double b = report.probes[first_flip + 1].lambda;
    bool pa = report.probes[first_flip].is_interval;
    for (int step = 0; step < bisection_steps; ++step) {
        const double m = a + (b - a) / 2.0;
        const bool pm = predicate(m);
        report.probes.push_back(ThresholdProbe{m, pm});
        if (pm == pa)
            a = m;
        else
            b = m;
    }
    report.lambda_star = a + (b - a) / 2.0;
    return report;
}

struct ThicknessSweepRow {
    double lambda = 0.0;
    double tau = 0.0;
    double gamma = 0.0;
    double diam = 0.0;
    std::size_t parts = 0;
    Rational convergent{0, 1};
};

// tau per coupling at a fixed approximation order; input couplings must be
// nonzero and sorted descending in magnitude.
inline std::vector<ThicknessSweepRow> thickness_sweep(const FrequencySpec& spec,
                                                      const std::vector<double>& lambdas,
                                                      int approx_order, const Tolerances& tol,
                                                      int threads = 1) {
    if (lambdas.empty()) throw ValidationError("thickness_sweep: empty sweep");
    for (double l : lambdas)
        if (l == 0.0) throw ValidationError("thickness_sweep: lambda values must be nonzero");
    for (std::size_t i = 1; i < lambdas.size(); ++i)
        if (std::abs(lambdas[i]) >= std::abs(lambdas[i - 1]))
            throw ValidationError("thickness_sweep: lambdas must be sorted descending");

    std::vector<ThicknessSweepRow> rows(lambdas.size());
    parallel_for(lambdas.size(), threads, [&](std::size_t i) {
        const SpectrumResult s = detail::spectrum_for(spec, lambdas[i], approx_order, tol);
        const ThicknessReport t = thickness(s.spectrum);
        rows[i] = ThicknessSweepRow{lambdas[i], t.tau,           t.gamma,
                                    t.diam,     s.spectrum.size(), s.params.freq};
    });
    return rows;
}

} // namespace cantorspec

#endif
