#include "pwmod/interval_union.hpp"

#include <algorithm>
#include <stdexcept>

namespace pwmod {

IntervalUnion::IntervalUnion(std::vector<Interval> parts) {
    for (const auto& iv : parts) {
        if (iv.lo > iv.hi) throw std::invalid_argument("IntervalUnion: lo > hi");
    }
    std::sort(parts.begin(), parts.end(),
              [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    for (auto& iv : parts) {
        if (!comps_.empty() && iv.lo <= comps_.back().hi) {
            comps_.back().hi = max(comps_.back().hi, iv.hi);
        } else {
            comps_.push_back(iv);
        }
    }
}

Rat IntervalUnion::measure() const {
    Rat m(0);
    for (const auto& iv : comps_) m += iv.length();
    return m;
}

bool IntervalUnion::contains(const Rat& t) const {
    return locate(t).has_value();
}

std::optional<size_t> IntervalUnion::locate(const Rat& t) const {
    size_t lo = 0, hi = comps_.size();
    while (lo < hi) {
        size_t mid = (lo + hi) / 2;
        if (comps_[mid].hi < t) {
            lo = mid + 1;
        } else {
            hi = mid;
        }
    }
    if (lo < comps_.size() && comps_[lo].lo <= t && t <= comps_[lo].hi) return lo;
    return std::nullopt;
}

bool IntervalUnion::contains_set(const IntervalUnion& other) const {
    for (const auto& iv : other.comps_) {
        auto idx = locate(iv.lo);
        if (!idx || comps_[*idx].hi < iv.hi) return false;
    }
    return true;
}

IntervalUnion IntervalUnion::intersect(const IntervalUnion& other) const {
    std::vector<Interval> out;
    size_t i = 0, j = 0;
    while (i < comps_.size() && j < other.comps_.size()) {
        Rat lo = max(comps_[i].lo, other.comps_[j].lo);
        Rat hi = min(comps_[i].hi, other.comps_[j].hi);
        if (lo <= hi) out.push_back({lo, hi});
        if (comps_[i].hi < other.comps_[j].hi) {
            ++i;
        } else {
            ++j;
        }
    }
    return IntervalUnion(std::move(out));
}

IntervalUnion IntervalUnion::unite(const IntervalUnion& other) const {
    std::vector<Interval> out(comps_);
    out.insert(out.end(), other.comps_.begin(), other.comps_.end());
    return IntervalUnion(std::move(out));
}

IntervalUnion IntervalUnion::subtract(const IntervalUnion& other) const {
    // A \ B as a union of closed intervals (closure of the difference).
    std::vector<Interval> out;
    for (const auto& a : comps_) {
        Rat cur = a.lo;
        for (const auto& b : other.comps_) {
            if (b.hi < cur) continue;
            if (b.lo > a.hi) break;
            if (b.lo > cur) out.push_back({cur, min(b.lo, a.hi)});
            cur = max(cur, b.hi);
            if (cur >= a.hi) break;
        }
        if (cur < a.hi) out.push_back({cur, a.hi});
    }
    return IntervalUnion(std::move(out));
}

IntervalUnion IntervalUnion::complement_in(const Rat& lo, const Rat& hi) const {
    return IntervalUnion({{lo, hi}}).subtract(*this);
}

std::vector<Interval> IntervalUnion::gaps() const {
    std::vector<Interval> out;
    for (size_t i = 0; i + 1 < comps_.size(); ++i) out.push_back({comps_[i].hi, comps_[i + 1].lo});
    return out;
}

bool operator==(const IntervalUnion& a, const IntervalUnion& b) {
    if (a.comps_.size() != b.comps_.size()) return false;
    for (size_t i = 0; i < a.comps_.size(); ++i) {
        if (!(a.comps_[i].lo == b.comps_[i].lo) || !(a.comps_[i].hi == b.comps_[i].hi)) return false;
    }
    return true;
}

IntervalUnion svc_set(int depth) {
    if (depth < 1) throw std::invalid_argument("svc_set: depth must be >= 1");
    std::vector<Interval> comps = {{Rat(0), Rat(1)}};
    for (int n = 1; n <= depth; ++n) {
        Rat remove = Rat::pow2(-2 * n);  // 4^{-n}
        std::vector<Interval> next;
        next.reserve(comps.size() * 2);
        for (const auto& iv : comps) {
            Rat mid = (iv.lo + iv.hi) / Rat(2);
            Rat half = remove / Rat(2);
            next.push_back({iv.lo, mid - half});
            next.push_back({mid + half, iv.hi});
        }
        comps = std::move(next);
    }
    return IntervalUnion(std::move(comps));
}

}  // namespace pwmod
