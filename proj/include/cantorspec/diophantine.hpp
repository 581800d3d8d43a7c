#ifndef CANTORSPEC_DIOPHANTINE_HPP
#define CANTORSPEC_DIOPHANTINE_HPP

#include <cctype>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include "cantorspec/errors.hpp"

namespace cantorspec {

using big_int = boost::multiprecision::cpp_int;
using big_rational = boost::multiprecision::cpp_rational;
using big_float = boost::multiprecision::cpp_bin_float_50;

struct Rational {
    std::int64_t p = 0;
    std::int64_t q = 1;

    Rational() = default;
    Rational(std::int64_t p_, std::int64_t q_) : p(p_), q(q_) {
        if (q <= 0) throw ParseError("rational: denominator must be positive");
        if (p < 0) throw ParseError("rational: numerator must be nonnegative");
        const std::int64_t g = std::gcd(p, q);
        if (g > 1) { p /= g; q /= g; }
    }

    // Frequencies live on the circle; reduce p into [0, q).
    Rational mod1() const { return Rational(p % q, q); }
    double value() const { return static_cast<double>(p) / static_cast<double>(q); }
    std::string str() const { return std::to_string(p) + "/" + std::to_string(q); }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.p == b.p && a.q == b.q;
    }
    friend bool operator<(const Rational& a, const Rational& b) {
        return static_cast<long double>(a.p) * b.q < static_cast<long double>(b.p) * a.q;
    }
};

// A frequency given exactly (rational or periodic continued fraction) or by a
// decimal digit string with explicit precision.
struct FrequencySpec {
    enum class Kind { rational, quadratic, decimal };

    Kind kind = Kind::rational;
    Rational rat{0, 1};
    std::vector<std::int64_t> cf_preamble;  // a0, a1, ... before the period
    std::vector<std::int64_t> cf_repeating; // non-empty for quadratic kind
    std::string digits;                     // e.g. "0.618033988749894848204586834366"

    bool is_rational() const { return kind == Kind::rational; }

    int decimal_precision() const {
        int n = 0;
        for (char c : digits)
            if (std::isdigit(static_cast<unsigned char>(c))) ++n;
        return n;
    }

    static FrequencySpec from_rational(Rational r) {
        FrequencySpec s;
        s.kind = Kind::rational;
        s.rat = r;
        return s;
    }

    static FrequencySpec from_quadratic(std::vector<std::int64_t> preamble,
                                        std::vector<std::int64_t> repeating) {
        if (repeating.empty())
            throw ParseError("quadratic frequency: repeating block must be non-empty");
        if (preamble.empty())
            throw ParseError("quadratic frequency: need at least a0");
        for (std::size_t i = 1; i < preamble.size(); ++i)
            if (preamble[i] < 1) throw ParseError("continued fraction: a_k >= 1 required");
        for (std::int64_t b : repeating)
            if (b < 1) throw ParseError("continued fraction: repeating terms >= 1 required");
        FrequencySpec s;
        s.kind = Kind::quadratic;
        s.cf_preamble = std::move(preamble);
        s.cf_repeating = std::move(repeating);
        return s;
    }

    static FrequencySpec from_decimal(std::string d) {
        FrequencySpec s;
        s.kind = Kind::decimal;
        s.digits = std::move(d);
        if (s.decimal_precision() == 0) throw ParseError("decimal frequency: no digits");
        return s;
    }

    // Accepts "p/q", periodic continued fractions "[a0;a1,(b1,b2)]" (plain
    // "[a0;a1,a2]" is a finite expansion, hence rational), and decimal strings.
    static FrequencySpec parse(const std::string& text);

    std::string str() const;

    // 50-digit value; used by the q-scan and by label targets.
    big_float value_hp() const;

    double value() const { return value_hp().convert_to<double>(); }
};

struct DCReport {
    double t = 2.0;
    std::int64_t q_max = 0;
    double c_best = 0.0;
    std::int64_t argmin_q = 0;
    bool two_pi_form = false;
};

namespace detail {

inline std::string strip_spaces(const std::string& s) {
    std::string out;
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
    return out;
}

inline std::int64_t parse_int(const std::string& s) {
    if (s.empty()) throw ParseError("expected integer, got empty token");
    std::size_t pos = 0;
    long long v = 0;
    try {
        v = std::stoll(s, &pos);
    } catch (const std::exception&) {
        throw ParseError("malformed integer '" + s + "'");
    }
    if (pos != s.size()) throw ParseError("malformed integer '" + s + "'");
    return v;
}

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else
            cur.push_back(c);
    }
    out.push_back(cur);
    return out;
}

// Matrix [[a,1],[1,0]] products drive both convergents and the quadratic
// fixed point.
struct CfMatrix {
    big_int a = 1, b = 0, c = 0, d = 1; // identity
    void append(std::int64_t term) {
        // right-multiply by [[term,1],[1,0]]
        big_int na = a * term + b;
        big_int nc = c * term + d;
        b = a;
        d = c;
        a = std::move(na);
        c = std::move(nc);
    }
};

inline big_float quadratic_value(const std::vector<std::int64_t>& preamble,
                                 const std::vector<std::int64_t>& repeating) {
    CfMatrix rep;
    for (std::int64_t b : repeating) rep.append(b);
    // y = (rep.a*y + rep.b) / (rep.c*y + rep.d), take the positive root.
    const big_float A(rep.a.str()), B(rep.b.str()), C(rep.c.str()), D(rep.d.str());
    const big_float disc = (D - A) * (D - A) + 4 * B * C;
    const big_float y = ((A - D) + sqrt(disc)) / (2 * C);
    CfMatrix pre;
    for (std::int64_t a : preamble) pre.append(a);
    const big_float P(pre.a.str()), Q(pre.b.str()), R(pre.c.str()), S(pre.d.str());
    return (P * y + Q) / (R * y + S);
}

} // namespace detail

inline FrequencySpec FrequencySpec::parse(const std::string& text) {
    const std::string s = detail::strip_spaces(text);
    if (s.empty()) throw ParseError("empty frequency");

    if (s.front() == '[') {
        if (s.back() != ']') throw ParseError("continued fraction: missing ']'");
        const std::string body = s.substr(1, s.size() - 2);
        const auto semi = body.find(';');
        if (semi == std::string::npos) throw ParseError("continued fraction: missing ';'");
        std::vector<std::int64_t> preamble{detail::parse_int(body.substr(0, semi))};
        std::string rest = body.substr(semi + 1);
        std::vector<std::int64_t> repeating;
        const auto paren = rest.find('(');
        if (paren != std::string::npos) {
            if (rest.back() != ')') throw ParseError("continued fraction: missing ')'");
            const std::string rep = rest.substr(paren + 1, rest.size() - paren - 2);
            for (const auto& tok : detail::split(rep, ',')) repeating.push_back(detail::parse_int(tok));
            rest = rest.substr(0, paren);
            if (!rest.empty() && rest.back() == ',') rest.pop_back();
        }
        if (!rest.empty())
            for (const auto& tok : detail::split(rest, ','))
                preamble.push_back(detail::parse_int(tok));
        else if (repeating.empty())
            throw ParseError("continued fraction: nothing after ';'");
        if (!repeating.empty()) return from_quadratic(std::move(preamble), std::move(repeating));
        // finite expansion: fold into an exact rational
        big_rational v(preamble.back());
        for (std::size_t i = preamble.size() - 1; i-- > 0;)
            v = big_rational(preamble[i]) + 1 / v;
        const big_int num = numerator(v), den = denominator(v);
        if (num < 0 || den > std::numeric_limits<std::int64_t>::max() ||
            num > std::numeric_limits<std::int64_t>::max())
            throw ParseError("finite continued fraction out of range");
        return from_rational(Rational(num.convert_to<std::int64_t>(), den.convert_to<std::int64_t>()));
    }

    if (s.find('/') != std::string::npos) {
        const auto toks = detail::split(s, '/');
        if (toks.size() != 2) throw ParseError("malformed rational '" + text + "'");
        const std::int64_t p = detail::parse_int(toks[0]);
        const std::int64_t q = detail::parse_int(toks[1]);
        if (q <= 0) throw ParseError("malformed rational '" + text + "': denominator must be >= 1");
        if (p < 0) throw ParseError("malformed rational '" + text + "': numerator must be >= 0");
        return from_rational(Rational(p, q));
    }

    // decimal digits
    bool seen_digit = false, seen_dot = false;
    for (char c : s) {
        if (c == '.') {
            if (seen_dot) throw ParseError("malformed decimal '" + text + "'");
            seen_dot = true;
        } else if (std::isdigit(static_cast<unsigned char>(c)))
            seen_digit = true;
        else
            throw ParseError("unrecognized frequency '" + text + "'");
    }
    if (!seen_digit) throw ParseError("unrecognized frequency '" + text + "'");
    return from_decimal(s);
}

inline std::string FrequencySpec::str() const {
    switch (kind) {
        case Kind::rational: return rat.str();
        case Kind::decimal: return digits;
        case Kind::quadratic: {
            std::string out = "[" + std::to_string(cf_preamble[0]) + ";";
            for (std::size_t i = 1; i < cf_preamble.size(); ++i) {
                out += std::to_string(cf_preamble[i]);
                out += ",";
            }
            out += "(";
            for (std::size_t i = 0; i < cf_repeating.size(); ++i) {
                if (i) out += ",";
                out += std::to_string(cf_repeating[i]);
            }
            out += ")]";
            return out;
        }
    }
    return {};
}

inline big_float FrequencySpec::value_hp() const {
    switch (kind) {
        case Kind::rational:
            return big_float(rat.p) / big_float(rat.q);
        case Kind::quadratic:
            return detail::quadratic_value(cf_preamble, cf_repeating);
        case Kind::decimal:
            return big_float(digits);
    }
    return big_float(0);
}

namespace detail {

// Stream of partial quotients a0, a1, ... For decimal specs every quotient is
// certified against the digit-string uncertainty interval; when the interval
// straddles an integer the stream throws rather than guess.
class PartialQuotients {
public:
    explicit PartialQuotients(const FrequencySpec& spec) : spec_(spec) {
        switch (spec.kind) {
            case FrequencySpec::Kind::rational: {
                big_int num = spec.rat.p, den = spec.rat.q;
                while (den != 0) {
                    finite_.push_back((num / den).convert_to<std::int64_t>());
                    big_int r = num % den;
                    num = den;
                    den = r;
                }
                break;
            }
            case FrequencySpec::Kind::quadratic:
                break;
            case FrequencySpec::Kind::decimal: {
                // value v with all digits exact except the last place: [v-u, v+u]
                big_int scale = 1;
                big_int mant = 0;
                bool seen_dot = false;
                for (char c : spec.digits) {
                    if (c == '.') {
                        seen_dot = true;
                        continue;
                    }
                    mant = mant * 10 + (c - '0');
                    if (seen_dot) scale *= 10;
                }
                lo_ = big_rational(mant - 1, scale);
                hi_ = big_rational(mant + 1, scale);
                if (lo_ < 0) lo_ = 0;
                break;
            }
        }
    }

    std::optional<std::int64_t> next() {
        switch (spec_.kind) {
            case FrequencySpec::Kind::rational:
                if (idx_ < finite_.size()) return finite_[idx_++];
                return std::nullopt;
            case FrequencySpec::Kind::quadratic: {
                std::int64_t a;
                if (idx_ < spec_.cf_preamble.size())
                    a = spec_.cf_preamble[idx_];
                else {
                    const std::size_t k =
                        (idx_ - spec_.cf_preamble.size()) % spec_.cf_repeating.size();
                    a = spec_.cf_repeating[k];
                }
                ++idx_;
                return a;
            }
            case FrequencySpec::Kind::decimal: {
                const big_int fl = floor_rational(lo_);
                const big_int fh = floor_rational(hi_);
                if (fl != fh)
                    throw PrecisionExhausted(
                        "decimal frequency: digits cannot certify partial quotient " +
                        std::to_string(idx_));
                big_rational frac_lo = lo_ - big_rational(fl);
                big_rational frac_hi = hi_ - big_rational(fh);
                if (frac_lo == 0 || frac_hi == 0)
                    throw PrecisionExhausted(
                        "decimal frequency: expansion terminates within uncertainty");
                ++idx_;
                // reciprocal swaps the interval
                big_rational new_lo = 1 / frac_hi;
                big_rational new_hi = 1 / frac_lo;
                lo_ = new_lo;
                hi_ = new_hi;
                if (fl > std::numeric_limits<std::int64_t>::max())
                    throw PrecisionExhausted("partial quotient exceeds 64-bit range");
                return fl.convert_to<std::int64_t>();
            }
        }
        return std::nullopt;
    }

private:
    static big_int floor_rational(const big_rational& r) {
        big_int n = numerator(r), d = denominator(r);
        big_int q = n / d;
        if (n < 0 && q * d != n) --q;
        return q;
    }

    FrequencySpec spec_;
    std::vector<std::int64_t> finite_;
    std::size_t idx_ = 0;
    big_rational lo_, hi_;
};

} // namespace detail

// First `depth` continued-fraction convergents p_k/q_k (k = 0 based); a
// rational frequency terminates early at itself.
inline std::vector<Rational> convergents(const FrequencySpec& spec, int depth) {
    if (depth < 1) throw ValidationError("convergents: depth must be >= 1");
    detail::PartialQuotients stream(spec);
    std::vector<Rational> out;
    big_int p_m2 = 0, q_m2 = 1; // index k-2
    big_int p_m1 = 1, q_m1 = 0; // index k-1
    for (int k = 0; k < depth; ++k) {
        const auto a = stream.next();
        if (!a) break;
        big_int p = big_int(*a) * p_m1 + p_m2;
        big_int q = big_int(*a) * q_m1 + q_m2;
        if (p > std::numeric_limits<std::int64_t>::max() ||
            q > std::numeric_limits<std::int64_t>::max())
            throw PrecisionExhausted("convergent exceeds 64-bit range at k=" + std::to_string(k));
        out.emplace_back(p.convert_to<std::int64_t>(), q.convert_to<std::int64_t>());
        p_m2 = std::move(p_m1);
        q_m2 = std::move(q_m1);
        p_m1 = std::move(p);
        q_m1 = std::move(q);
    }
    return out;
}

// Best Diophantine constant for exponent t up to denominator q_max:
// min over 1 <= q <= q_max of q^{t-1} * dist(q*alpha, Z). The two_pi_form flag
// measures dist(q*alpha, 2*pi*Z) instead.
inline DCReport dc_constants(const FrequencySpec& spec, double t, std::int64_t q_max,
                             bool two_pi_form = false) {
    if (!(t > 1.0)) throw ValidationError("dc_constants: t must be > 1");
    if (q_max < 1) throw ValidationError("dc_constants: q_max must be >= 1");
    if (spec.is_rational())
        throw RationalInput("dc_constants: rational frequency has no positive constant");
    if (spec.kind == FrequencySpec::Kind::decimal) {
        // q * (last-place uncertainty) must stay far below the distances probed
        const double u = std::pow(10.0, -(spec.decimal_precision() - 1));
        if (static_cast<double>(q_max) * u > 1e-15)
            throw PrecisionExhausted("dc_constants: decimal digits insufficient for q_max");
    }

    const big_float alpha = spec.value_hp();
    const big_float period = two_pi_form ? 2 * atan(big_float(1)) * 4 : big_float(1);

    DCReport rep;
    rep.t = t;
    rep.q_max = q_max;
    rep.two_pi_form = two_pi_form;
    double best = std::numeric_limits<double>::infinity();
    std::int64_t best_q = 0;
    big_float qa = 0;
    for (std::int64_t q = 1; q <= q_max; ++q) {
        qa += alpha;
        const big_float k = floor(qa / period + big_float(0.5));
        const double dist = abs(qa - k * period).convert_to<double>();
        const double score = std::pow(static_cast<double>(q), t - 1.0) * dist;
        if (score < best) {
            best = score;
            best_q = q;
        }
    }
    rep.c_best = best;
    rep.argmin_q = best_q;
    return rep;
}

// frac(n*alpha) for n = -n_max..-1, 1..n_max in ascending n order. Values of 0
// occur when n*alpha is an integer (rational frequencies only).
inline std::vector<double> frac_multiples(const FrequencySpec& spec, int n_max) {
    if (n_max < 1) throw ValidationError("frac_multiples: n_max must be >= 1");
    const big_float alpha = spec.value_hp();
    std::vector<double> out;
    out.reserve(2 * static_cast<std::size_t>(n_max));
    for (int n = -n_max; n <= n_max; ++n) {
        if (n == 0) continue;
        const big_float v = n * alpha;
        out.push_back((v - floor(v)).convert_to<double>());
    }
    return out;
}

inline double frac_multiple(const FrequencySpec& spec, std::int64_t n) {
    const big_float v = n * spec.value_hp();
    return (v - floor(v)).convert_to<double>();
}

inline FrequencySpec golden_mean() {
    return FrequencySpec::from_quadratic({0}, {1});
}

} // namespace cantorspec

#endif
