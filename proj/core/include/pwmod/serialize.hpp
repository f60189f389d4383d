#pragma once

#include <string>

#include <json.hpp>

#include "pwmod/piecewise.hpp"
#include "pwmod/set_fn.hpp"

namespace pwmod {

using Json = nlohmann::ordered_json;

/// Canonical text form of a scalar: exact "num/den" for rationals,
/// 17-significant-digit decimal for doubles. Both modes are deterministic.
std::string scalar_str(const Rat& v);
std::string scalar_str(double v);
Rat scalar_parse_rat(const std::string& s);
double scalar_parse_double(const std::string& s);

Json to_json(const IntervalUnion& S);
IntervalUnion interval_union_from_json(const Json& j);

template <class R>
Json to_json(const Poly<R>& p) {
    Json arr = Json::array();
    for (const auto& c : p.coeffs()) arr.push_back(scalar_str(c));
    return arr;
}

template <class R>
Json to_json(const PiecewiseFn<R>& f) {
    Json j;
    Json bp = Json::array();
    for (const auto& b : f.breakpoints()) bp.push_back(b.str());
    Json ps = Json::array();
    for (const auto& p : f.pieces()) ps.push_back(to_json(p));
    j["breakpoints"] = std::move(bp);
    j["pieces"] = std::move(ps);
    j["continuity"] = static_cast<int>(f.continuity());
    return j;
}

template <class R>
Json to_json(const SetFn<R>& a) {
    Json j;
    j["domain"] = to_json(a.domain);
    Json ps = Json::array();
    for (const auto& p : a.pieces) ps.push_back(to_json(p));
    j["pieces"] = std::move(ps);
    return j;
}

/// Maximum piece degree accepted from serialized input.
inline constexpr int kMaxSerializedDegree = 6;

Poly<Rat> poly_rat_from_json(const Json& j);
PiecewiseFn<Rat> piecewise_rat_from_json(const Json& j);
SetFn<Rat> setfn_rat_from_json(const Json& j);

/// CSV "t,value" rows with 17-significant-digit decimals.
template <class R>
std::string to_csv(const PiecewiseFn<R>& f, int points) {
    auto rows = sample_uniform(f, points);
    std::string out = "t,value\n";
    for (const auto& [t, v] : rows) {
        out += scalar_str(t);
        out += ',';
        out += scalar_str(v);
        out += '\n';
    }
    return out;
}

}  // namespace pwmod
