#ifndef CANTORSPEC_JSON_IO_HPP
#define CANTORSPEC_JSON_IO_HPP

#include <cmath>
#include <limits>
#include <string>

#include <json.hpp>

#include "cantorspec/amo.hpp"
#include "cantorspec/bounds.hpp"
#include "cantorspec/diophantine.hpp"
#include "cantorspec/gap_lemma.hpp"
#include "cantorspec/ids.hpp"
#include "cantorspec/intervals.hpp"
#include "cantorspec/pipeline.hpp"

namespace cantorspec {

using json = nlohmann::ordered_json;

// tau = +inf must survive JSON, which has no infinity literal.
inline json tau_to_json(double tau) {
    if (std::isinf(tau)) return json("inf");
    return json(tau);
}

inline double tau_from_json(const json& j) {
    if (j.is_string() && j.get<std::string>() == "inf")
        return std::numeric_limits<double>::infinity();
    return j.get<double>();
}

inline json to_json(const Interval& iv) { return json::array({iv.lo, iv.hi}); }

inline Interval interval_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2)
        throw ParseError("interval: expected [lo, hi]");
    return Interval(j[0].get<double>(), j[1].get<double>());
}

inline json to_json(const IntervalUnion& K) {
    json parts = json::array();
    for (const Interval& iv : K.parts()) parts.push_back(to_json(iv));
    return json{{"parts", parts}};
}

inline IntervalUnion interval_union_from_json(const json& j) {
    if (!j.contains("parts")) throw ParseError("interval union: missing 'parts'");
    std::vector<Interval> parts;
    for (const auto& p : j.at("parts")) parts.push_back(interval_from_json(p));
    return IntervalUnion(std::move(parts));
}

inline json to_json(const GapReport& g) {
    return json{{"gap", to_json(g.gap)},
                {"left_plank_len", g.left_plank_len},
                {"right_plank_len", g.right_plank_len},
                {"local_tau", g.local_tau}};
}

inline json to_json(const ThicknessReport& t) {
    json gaps = json::array();
    for (const GapReport& g : t.gaps) gaps.push_back(to_json(g));
    return json{{"tau", tau_to_json(t.tau)}, {"gamma", t.gamma}, {"diam", t.diam},
                {"gaps", gaps}};
}

inline json to_json(const GapLemmaVerdict& v) {
    json j{{"hypotheses_hold", v.hypotheses_hold},
           {"failed_conditions", v.failed_conditions},
           {"astels_sum", v.astels_sum},
           {"predicted_interval", nullptr},
           {"predicted_tau_lower_bound", nullptr}};
    if (v.predicted_interval) j["predicted_interval"] = to_json(*v.predicted_interval);
    if (v.predicted_tau_lower_bound) j["predicted_tau_lower_bound"] = *v.predicted_tau_lower_bound;
    if (v.order_used) j["order_used"] = *v.order_used;
    return j;
}

inline json to_json(const PredictionReport& r) {
    json j{{"verdict", to_json(r.verdict)},
           {"oracle_sum", to_json(r.oracle_sum)},
           {"interval_prediction_matches", r.interval_prediction_matches},
           {"tau_bound_satisfied", r.tau_bound_satisfied},
           {"hard_failure", r.hard_failure}};
    if (r.oracle_tau) j["oracle_tau"] = tau_to_json(*r.oracle_tau);
    return j;
}

inline json to_json(const AmoParams& p) {
    return json{{"lambda", p.lambda}, {"freq", p.freq.str()}, {"phase", p.phase}};
}

inline json to_json(const SpectrumResult& s) {
    return json{{"params", to_json(s.params)},
                {"approx_order", s.approx_order},
                {"phase_union", s.phase_union},
                {"edge_tol", s.edge_tol},
                {"gap_close_tol", s.gap_close_tol},
                {"merged_hairline_gaps", s.merged_hairline_gaps},
                {"union", to_json(s.spectrum)}};
}

inline json to_json(const DCReport& r) {
    return json{{"t", r.t},
                {"q_max", r.q_max},
                {"c_best", r.c_best},
                {"argmin_q", r.argmin_q},
                {"two_pi_form", r.two_pi_form}};
}

inline json to_json(const GapLabelAssignment& a) {
    return json{{"gap_index", a.gap_index}, {"gap", to_json(a.gap)},
                {"label_n", a.label_n},     {"ids_value", a.ids_value},
                {"residual", a.residual},   {"labeled", a.labeled}};
}

inline json to_json(const HolderFit& f) {
    return json{{"C_H_hat", f.C_H_hat}, {"h_hat", f.h_hat}, {"pairs_used", f.pairs_used}};
}

inline json to_json(const GapDecayFit& f) {
    json c_by_lambda = json::array();
    for (const auto& [lambda, c] : f.c_by_lambda)
        c_by_lambda.push_back(json{{"lambda", lambda}, {"C_lambda", c}});
    json raw = json::array();
    for (const auto& [lambda, g] : f.raw)
        raw.push_back(json{{"lambda", lambda}, {"n", g.n}, {"length", g.length}});
    return json{{"C_E_hat", f.C_E_hat},
                {"C_lambda_hat", f.C_lambda_hat},
                {"c_by_lambda", c_by_lambda},
                {"decreasing_toward_zero", f.decreasing_toward_zero},
                {"raw_gaps", raw}};
}

inline json to_json(const Tolerances& t) {
    return json{{"edge_tol", t.edge_tol},
                {"gap_close_tol", t.gap_close_tol},
                {"label_tol", t.label_tol}};
}

inline json to_json(const ExperimentConfig& c) {
    json freqs = json::array();
    for (const auto& f : c.freq_specs) freqs.push_back(f.str());
    return json{{"dims", c.dims},
                {"freq_specs", freqs},
                {"lambdas", c.lambdas},
                {"approx_order", c.approx_order},
                {"tolerances", to_json(c.tol)},
                {"seeds", c.seeds},
                {"threads", c.threads}};
}

// Strict parse: unknown keys are errors, defaults are materialized so the
// emitted config is self-describing.
inline ExperimentConfig experiment_config_from_json(const json& j) {
    static const std::vector<std::string> known{
        "dims", "freq_specs", "lambdas", "approx_order", "tolerances", "seeds", "threads"};
    static const std::vector<std::string> known_tol{"edge_tol", "gap_close_tol", "label_tol"};
    for (const auto& item : j.items()) {
        if (std::find(known.begin(), known.end(), item.key()) == known.end())
            throw ParseError("config: unknown key '" + item.key() + "'");
    }
    ExperimentConfig c;
    if (!j.contains("dims")) throw ParseError("config: missing 'dims'");
    if (!j.contains("freq_specs")) throw ParseError("config: missing 'freq_specs'");
    if (!j.contains("lambdas")) throw ParseError("config: missing 'lambdas'");
    c.dims = j.at("dims").get<int>();
    for (const auto& f : j.at("freq_specs"))
        c.freq_specs.push_back(FrequencySpec::parse(f.get<std::string>()));
    c.lambdas = j.at("lambdas").get<std::vector<std::vector<double>>>();
    if (j.contains("approx_order")) c.approx_order = j.at("approx_order").get<int>();
    if (j.contains("tolerances")) {
        const json& t = j.at("tolerances");
        for (const auto& item : t.items())
            if (std::find(known_tol.begin(), known_tol.end(), item.key()) == known_tol.end())
                throw ParseError("config: unknown tolerance key '" + item.key() + "'");
        if (t.contains("edge_tol")) c.tol.edge_tol = t.at("edge_tol").get<double>();
        if (t.contains("gap_close_tol")) c.tol.gap_close_tol = t.at("gap_close_tol").get<double>();
        if (t.contains("label_tol")) c.tol.label_tol = t.at("label_tol").get<double>();
    }
    if (j.contains("seeds")) c.seeds = j.at("seeds").get<std::uint64_t>();
    if (j.contains("threads")) c.threads = j.at("threads").get<int>();
    c.validate();
    return c;
}

inline json to_json(const SpectrumSummary& s) {
    return json{{"lambda", s.lambda},
                {"convergent", s.convergent.str()},
                {"approx_order", s.approx_order},
                {"parts", s.parts},
                {"tau", tau_to_json(s.tau)},
                {"gamma", s.gamma},
                {"diam", s.diam}};
}

inline json to_json(const TupleRecord& r) {
    json spectra = json::array();
    for (const auto& s : r.spectra) spectra.push_back(to_json(s));
    return json{{"lambdas", r.lambdas},
                {"spectra", spectra},
                {"verdict", to_json(r.verdict)},
                {"oracle_sum", to_json(r.oracle_sum)},
                {"is_interval", r.is_interval},
                {"verdict_consistent", r.verdict_consistent}};
}

inline json to_json(const ExperimentReport& r) {
    json records = json::array();
    for (const auto& rec : r.records) records.push_back(to_json(rec));
    json j{{"config", to_json(r.config)},
           {"records", records},
           {"all_intervals", r.all_intervals},
           {"empirical_threshold", nullptr}};
    if (r.empirical_threshold) j["empirical_threshold"] = *r.empirical_threshold;
    return j;
}

inline json to_json(const ThresholdReport& r) {
    json probes = json::array();
    for (const auto& p : r.probes)
        probes.push_back(json{{"lambda", p.lambda}, {"is_interval", p.is_interval}});
    return json{{"lambda_star", r.lambda_star},
                {"approx_order", r.approx_order},
                {"non_monotonic", r.non_monotonic},
                {"probes", probes}};
}

inline json to_json(const std::vector<ThicknessSweepRow>& rows) {
    json arr = json::array();
    for (const auto& row : rows)
        arr.push_back(json{{"lambda", row.lambda},
                           {"tau", tau_to_json(row.tau)},
                           {"gamma", row.gamma},
                           {"diam", row.diam},
                           {"parts", row.parts},
                           {"convergent", row.convergent.str()}});
    return arr;
}

} // namespace cantorspec

#endif
