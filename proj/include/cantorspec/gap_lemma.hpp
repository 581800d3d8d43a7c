#ifndef CANTORSPEC_GAP_LEMMA_HPP
#define CANTORSPEC_GAP_LEMMA_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "cantorspec/intervals.hpp"

namespace cantorspec {

// tau/(tau+1), with tau = +inf contributing the limit value 1 and tau = 0
// contributing 0.
inline double thickness_weight(double tau) {
    if (std::isinf(tau)) return 1.0;
    return tau / (tau + 1.0);
}

struct GapLemmaVerdict {
    bool hypotheses_hold = false;
    std::vector<std::string> failed_conditions;
    double astels_sum = 0.0; // S = sum of tau_i/(tau_i+1)
    std::optional<Interval> predicted_interval;
    std::optional<double> predicted_tau_lower_bound;
    std::optional<std::vector<std::size_t>> order_used; // set by permutation search
};

namespace detail {

struct SetSummary {
    double lo, hi, diam, gamma, tau;
};

inline SetSummary summarize(const IntervalUnion& K) {
    ThicknessReport t = thickness(K);
    return SetSummary{K.inf(), K.sup(), t.diam, t.gamma, t.tau};
}

// The two-family inequality system of the d-set lemma, checked in the given
// order. Indices in failure messages are 1-based.
inline bool astels_system_holds(const std::vector<SetSummary>& s,
                                std::vector<std::string>* failures) {
    bool ok = true;
    for (std::size_t i = 1; i < s.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            if (!(s[j].gamma <= s[i].diam)) {
                ok = false;
                if (failures)
                    failures->push_back("max_gap(K" + std::to_string(j + 1) + ") > diam(K" +
                                        std::to_string(i + 1) + ")");
            }
        }
        double prefix_diam = 0.0;
        for (std::size_t j = 0; j < i; ++j) prefix_diam += s[j].diam;
        if (!(s[i].gamma <= prefix_diam)) {
            ok = false;
            if (failures)
                failures->push_back("max_gap(K" + std::to_string(i + 1) +
                                    ") > diam(K1)+...+diam(K" + std::to_string(i) + ")");
        }
    }
    return ok;
}

} // namespace detail

// Two-set check: hulls intersect, each set's longest gap fits inside the
// other's diameter, and the thickness product is at least 1. When all four
// hold, the sum is the full interval between the summed extremes.
inline GapLemmaVerdict check_newhouse(const IntervalUnion& K1, const IntervalUnion& K2) {
    const auto s1 = detail::summarize(K1);
    const auto s2 = detail::summarize(K2);

    GapLemmaVerdict v;
    v.astels_sum = thickness_weight(s1.tau) + thickness_weight(s2.tau);

    if (!(s1.lo <= s2.hi && s2.lo <= s1.hi))
        v.failed_conditions.push_back("hulls do not intersect");
    if (!(s2.gamma <= s1.diam))
        v.failed_conditions.push_back("max_gap(K2) > diam(K1)");
    if (!(s1.gamma <= s2.diam))
        v.failed_conditions.push_back("max_gap(K1) > diam(K2)");

    // Product condition; tau = 0 fails regardless of the other factor, and
    // +inf times a positive factor passes.
    bool product_ok;
    if (s1.tau == 0.0 || s2.tau == 0.0)
        product_ok = false;
    else if (std::isinf(s1.tau) || std::isinf(s2.tau))
        product_ok = true;
    else
        product_ok = s1.tau * s2.tau >= 1.0;
    if (!product_ok) v.failed_conditions.push_back("thickness product below 1");

    v.hypotheses_hold = v.failed_conditions.empty();
    if (v.hypotheses_hold)
        v.predicted_interval = Interval(s1.lo + s2.lo, s1.hi + s2.hi);
    return v;
}

enum class AstelsOrdering { input_order, search_permutations };

// d-set check. hypotheses_hold reflects the ordered inequality system; the
// thickness sum S then selects between the interval conclusion (S >= 1) and
// the lower bound S/(1-S).
inline GapLemmaVerdict check_astels(const std::vector<IntervalUnion>& Ks,
                                    AstelsOrdering ordering = AstelsOrdering::input_order) {
    if (Ks.size() < 2) throw TooFewSets("check_astels: need at least 2 sets");

    std::vector<detail::SetSummary> s;
    s.reserve(Ks.size());
    for (const auto& K : Ks) s.push_back(detail::summarize(K));

    GapLemmaVerdict v;
    double S = 0.0, lo_sum = 0.0, hi_sum = 0.0;
    for (const auto& e : s) {
        S += thickness_weight(e.tau);
        lo_sum += e.lo;
        hi_sum += e.hi;
    }
    v.astels_sum = S;
    v.hypotheses_hold = detail::astels_system_holds(s, &v.failed_conditions);

    if (!v.hypotheses_hold && ordering == AstelsOrdering::search_permutations) {
        std::vector<std::size_t> perm(s.size());
        std::iota(perm.begin(), perm.end(), 0);
        do {
            std::vector<detail::SetSummary> reordered;
            reordered.reserve(s.size());
            for (std::size_t idx : perm) reordered.push_back(s[idx]);
            if (detail::astels_system_holds(reordered, nullptr)) {
                v.hypotheses_hold = true;
                v.failed_conditions.clear();
                v.order_used = perm;
                break;
            }
        } while (std::next_permutation(perm.begin(), perm.end()));
    }

    if (v.hypotheses_hold) {
        if (S >= 1.0)
            v.predicted_interval = Interval(lo_sum, hi_sum);
        else
            v.predicted_tau_lower_bound = S / (1.0 - S);
    }
    return v;
}

struct PredictionReport {
    GapLemmaVerdict verdict;
    IntervalUnion oracle_sum;
    std::optional<double> oracle_tau;    // set when a tau lower bound was predicted
    bool interval_prediction_matches = true; // false only on verdict/oracle contradiction
    bool tau_bound_satisfied = true;
    bool hard_failure = false; // a proved prediction contradicted by the exact sum
};

// Cross-checks the d-set verdict against the exact Minkowski sum. A
// contradiction is reported as a hard failure: the underlying statements are
// theorems, so disagreement means an implementation bug.
inline PredictionReport verify_prediction(const std::vector<IntervalUnion>& Ks,
                                          AstelsOrdering ordering = AstelsOrdering::input_order) {
    if (Ks.size() < 2) throw TooFewSets("verify_prediction: need at least 2 sets");
    PredictionReport rep{check_astels(Ks, ordering), minkowski_sum(Ks), {}, true, true, false};

    if (rep.verdict.predicted_interval) {
        const Interval want = *rep.verdict.predicted_interval;
        rep.interval_prediction_matches =
            rep.oracle_sum.is_interval() && rep.oracle_sum.parts().front() == want;
        if (!rep.interval_prediction_matches) rep.hard_failure = true;
    }
    if (rep.verdict.predicted_tau_lower_bound) {
        rep.oracle_tau = thickness(rep.oracle_sum).tau;
        rep.tau_bound_satisfied = *rep.oracle_tau >= *rep.verdict.predicted_tau_lower_bound;
        if (!rep.tau_bound_satisfied) rep.hard_failure = true;
    }
    return rep;
}

} // namespace cantorspec

#endif
