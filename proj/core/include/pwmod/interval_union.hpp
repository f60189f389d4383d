#pragma once

#include <optional>
#include <vector>

#include "pwmod/rational.hpp"

namespace pwmod {

struct Interval {
    Rat lo, hi;  // closed [lo, hi], lo <= hi
    Rat length() const { return hi - lo; }
};

/// A compact subset of [0,1] stored as a finite disjoint union of closed
/// intervals with exact rational endpoints. Canonical form: sorted, and
/// hi_i < lo_{i+1} strictly (touching intervals are merged).
class IntervalUnion {
public:
    IntervalUnion() = default;
    explicit IntervalUnion(std::vector<Interval> parts);  // normalizes

    static IntervalUnion empty() { return IntervalUnion(); }
    static IntervalUnion unit() { return IntervalUnion({{Rat(0), Rat(1)}}); }

    const std::vector<Interval>& components() const { return comps_; }
    size_t size() const { return comps_.size(); }
    bool is_empty() const { return comps_.empty(); }

    Rat measure() const;
    bool contains(const Rat& t) const;
    /// Index of the component containing t, if any.
    std::optional<size_t> locate(const Rat& t) const;
    bool contains_set(const IntervalUnion& other) const;

    IntervalUnion intersect(const IntervalUnion& other) const;
    IntervalUnion unite(const IntervalUnion& other) const;
    IntervalUnion subtract(const IntervalUnion& other) const;
    /// Complement within [lo, hi].
    IntervalUnion complement_in(const Rat& lo, const Rat& hi) const;

    /// The open gaps between consecutive components, as closed intervals.
    std::vector<Interval> gaps() const;

    friend bool operator==(const IntervalUnion& a, const IntervalUnion& b);

private:
    std::vector<Interval> comps_;
};

/// Stage-`depth` Smith-Volterra-Cantor set: starting from [0,1], stage n
/// removes the open middle interval of length 4^{-n} from each of the
/// 2^{n-1} current components. measure = 1/2 + 2^{-depth-1}.
IntervalUnion svc_set(int depth);

/// Indicator function of a set; chi(x)=1 on the set, 0 off it.
struct Indicator {
    IntervalUnion set;
};

}  // namespace pwmod
