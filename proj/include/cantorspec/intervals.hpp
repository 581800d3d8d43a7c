#ifndef CANTORSPEC_INTERVALS_HPP
#define CANTORSPEC_INTERVALS_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "cantorspec/errors.hpp"

namespace cantorspec {

// Closed interval [lo, hi]; degenerate points (lo == hi) are allowed.
struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    Interval() = default;
    Interval(double lo_, double hi_) : lo(lo_), hi(hi_) {}

    double length() const { return hi - lo; }
    bool contains(double x) const { return lo <= x && x <= hi; }

    friend bool operator==(const Interval& a, const Interval& b) {
        return a.lo == b.lo && a.hi == b.hi;
    }
};

// Canonical finite union of disjoint closed intervals: parts are sorted and
// strictly separated (parts[i].hi < parts[i+1].lo). Touching or overlapping
// inputs are merged at construction, so the bounded gaps are exactly the open
// intervals between consecutive parts.
class IntervalUnion {
public:
    explicit IntervalUnion(std::vector<Interval> raw) {
        if (raw.empty())
            throw EmptyInput("IntervalUnion: at least one interval required");
        for (const Interval& iv : raw) {
            if (!(iv.lo <= iv.hi))
                throw BadInterval("IntervalUnion: interval with lo > hi");
            if (!std::isfinite(iv.lo) || !std::isfinite(iv.hi))
                throw BadInterval("IntervalUnion: non-finite endpoint");
        }
        std::sort(raw.begin(), raw.end(), [](const Interval& a, const Interval& b) {
            return a.lo < b.lo || (a.lo == b.lo && a.hi < b.hi);
        });
        parts_.push_back(raw.front());
        for (std::size_t i = 1; i < raw.size(); ++i) {
            if (raw[i].lo <= parts_.back().hi)
                parts_.back().hi = std::max(parts_.back().hi, raw[i].hi);
            else
                parts_.push_back(raw[i]);
        }
    }

    IntervalUnion(std::initializer_list<Interval> raw)
        : IntervalUnion(std::vector<Interval>(raw)) {}

    const std::vector<Interval>& parts() const { return parts_; }
    std::size_t size() const { return parts_.size(); }

    double inf() const { return parts_.front().lo; }
    double sup() const { return parts_.back().hi; }
    double diameter() const { return sup() - inf(); }
    bool is_interval() const { return parts_.size() == 1; }

    bool contains(double x) const {
        auto it = std::upper_bound(parts_.begin(), parts_.end(), x,
                                   [](double v, const Interval& iv) { return v < iv.lo; });
        if (it == parts_.begin()) return false;
        return std::prev(it)->hi >= x;
    }

    // Distance from a point to the set (0 if inside).
    double distance_to(double x) const {
        auto it = std::upper_bound(parts_.begin(), parts_.end(), x,
                                   [](double v, const Interval& iv) { return v < iv.lo; });
        double d = std::numeric_limits<double>::infinity();
        if (it != parts_.end()) d = std::min(d, it->lo - x);
        if (it != parts_.begin()) {
            const Interval& left = *std::prev(it);
            d = std::min(d, x <= left.hi ? 0.0 : x - left.hi);
        }
        return d;
    }

    friend bool operator==(const IntervalUnion& a, const IntervalUnion& b) {
        return a.parts_ == b.parts_;
    }

private:
    std::vector<Interval> parts_;
};

// Per-gap plank/ratio breakdown. The gap field stores the open gap's endpoints.
struct GapReport {
    Interval gap;
    double left_plank_len = 0.0;
    double right_plank_len = 0.0;
    double local_tau = 0.0;
};

struct ThicknessReport {
    double tau = std::numeric_limits<double>::infinity(); // +inf when no bounded gaps
    double gamma = 0.0;                                   // longest bounded gap, 0 if none
    double diam = 0.0;
    std::vector<GapReport> gaps;
};

inline IntervalUnion make_union(const std::vector<Interval>& raw) {
    return IntervalUnion(raw);
}

inline std::vector<Interval> bounded_gaps(const IntervalUnion& K) {
    std::vector<Interval> gaps;
    const auto& p = K.parts();
    gaps.reserve(p.size() > 0 ? p.size() - 1 : 0);
    for (std::size_t i = 0; i + 1 < p.size(); ++i)
        gaps.emplace_back(p[i].hi, p[i + 1].lo);
    return gaps;
}

inline double diameter(const IntervalUnion& K) { return K.diameter(); }
inline bool is_interval(const IntervalUnion& K) { return K.is_interval(); }

// Length of the longest bounded gap (0 when the set is an interval).
inline double max_gap_length(const IntervalUnion& K) {
    double g = 0.0;
    const auto& p = K.parts();
    for (std::size_t i = 0; i + 1 < p.size(); ++i)
        g = std::max(g, p[i + 1].lo - p[i].hi);
    return g;
}

// Planks and thickness. The left-plank of a gap U is the maximal interval
// [a, U.lo] inside the hull such that every bounded gap meeting it is
// strictly shorter than U; it therefore reaches left until the nearest gap of
// length >= length(U), or until the hull's left end. An open gap V touching
// the plank only at its own closure (V.hi == a) does not intersect it.
inline ThicknessReport thickness(const IntervalUnion& K) {
    ThicknessReport rep;
    rep.diam = K.diameter();
    const std::vector<Interval> gaps = bounded_gaps(K);
    if (gaps.empty()) return rep; // tau = +inf, gamma = 0

    rep.gaps.reserve(gaps.size());
    double tau = std::numeric_limits<double>::infinity();
    double gamma = 0.0;
    const double lo_hull = K.inf();
    const double hi_hull = K.sup();

    for (std::size_t i = 0; i < gaps.size(); ++i) {
        const double len = gaps[i].length();
        gamma = std::max(gamma, len);

        double left_limit = lo_hull;
        for (std::size_t j = i; j-- > 0;) {
            if (gaps[j].length() >= len) {
                left_limit = gaps[j].hi;
                break;
            }
        }
        double right_limit = hi_hull;
        for (std::size_t j = i + 1; j < gaps.size(); ++j) {
            if (gaps[j].length() >= len) {
                right_limit = gaps[j].lo;
                break;
            }
        }

        GapReport g;
        g.gap = gaps[i];
        g.left_plank_len = gaps[i].lo - left_limit;
        g.right_plank_len = right_limit - gaps[i].hi;
        g.local_tau = std::min(g.left_plank_len, g.right_plank_len) / len;
        tau = std::min(tau, g.local_tau);
        rep.gaps.push_back(g);
    }
    rep.tau = tau;
    rep.gamma = gamma;
    return rep;
}

inline IntervalUnion minkowski_sum(const IntervalUnion& K1, const IntervalUnion& K2) {
    std::vector<Interval> sums;
    sums.reserve(K1.size() * K2.size());
    for (const Interval& a : K1.parts())
        for (const Interval& b : K2.parts())
            sums.emplace_back(a.lo + b.lo, a.hi + b.hi);
    return IntervalUnion(std::move(sums));
}

inline IntervalUnion minkowski_sum(const std::vector<IntervalUnion>& Ks) {
    if (Ks.empty()) throw EmptyInput("minkowski_sum: no sets");
    IntervalUnion acc = Ks.front();
    for (std::size_t i = 1; i < Ks.size(); ++i) acc = minkowski_sum(acc, Ks[i]);
    return acc;
}

// Exact Hausdorff distance. sup_{x in A} dist(x, B) is attained at a part
// endpoint of A or at a midpoint of a bounded gap of B that lies inside A.
inline double hausdorff_distance(const IntervalUnion& K1, const IntervalUnion& K2) {
    auto one_sided = [](const IntervalUnion& A, const IntervalUnion& B) {
        double best = 0.0;
        for (const Interval& part : A.parts()) {
            best = std::max(best, B.distance_to(part.lo));
            best = std::max(best, B.distance_to(part.hi));
        }
        const auto& bp = B.parts();
        for (std::size_t i = 0; i + 1 < bp.size(); ++i) {
            const double mid = bp[i].hi + (bp[i + 1].lo - bp[i].hi) / 2.0;
            if (A.contains(mid)) best = std::max(best, B.distance_to(mid));
        }
        return best;
    };
    return std::max(one_sided(K1, K2), one_sided(K2, K1));
}

// Image under x -> a*x + b with a > 0 (used by covariance checks and scaling).
inline IntervalUnion affine_image(const IntervalUnion& K, double a, double b) {
    if (!(a > 0.0)) throw BadInterval("affine_image: scale must be positive");
    std::vector<Interval> parts;
    parts.reserve(K.size());
    for (const Interval& iv : K.parts()) parts.emplace_back(a * iv.lo + b, a * iv.hi + b);
    return IntervalUnion(std::move(parts));
}

} // namespace cantorspec

#endif
