#include <cstdio>

#include "pwmod/serialize.hpp"

namespace pwmod {

std::string scalar_str(const Rat& v) { return v.str(); }

std::string scalar_str(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

Rat scalar_parse_rat(const std::string& s) { return Rat::parse(s); }

double scalar_parse_double(const std::string& s) { return std::stod(s); }

Json to_json(const IntervalUnion& S) {
    Json arr = Json::array();
    for (const auto& iv : S.components()) arr.push_back(Json::array({iv.lo.str(), iv.hi.str()}));
    Json j;
    j["components"] = std::move(arr);
    return j;
}

IntervalUnion interval_union_from_json(const Json& j) {
    std::vector<Interval> comps;
    for (const auto& item : j.at("components")) {
        comps.push_back({Rat::parse(item.at(0).get<std::string>()),
                         Rat::parse(item.at(1).get<std::string>())});
    }
    return IntervalUnion(std::move(comps));
}

Poly<Rat> poly_rat_from_json(const Json& j) {
    std::vector<Rat> coeffs;
    for (const auto& c : j) coeffs.push_back(Rat::parse(c.get<std::string>()));
    Poly<Rat> p(std::move(coeffs));
    if (p.degree() > kMaxSerializedDegree)
        throw std::invalid_argument("poly_rat_from_json: degree above supported maximum");
    return p;
}

PiecewiseFn<Rat> piecewise_rat_from_json(const Json& j) {
    std::vector<Rat> breaks;
    for (const auto& b : j.at("breakpoints")) breaks.push_back(Rat::parse(b.get<std::string>()));
    std::vector<Poly<Rat>> pieces;
    for (const auto& p : j.at("pieces")) pieces.push_back(poly_rat_from_json(p));
    return PiecewiseFn<Rat>(std::move(breaks), std::move(pieces));
}

SetFn<Rat> setfn_rat_from_json(const Json& j) {
    IntervalUnion dom = interval_union_from_json(j.at("domain"));
    std::vector<Poly<Rat>> pieces;
    for (const auto& p : j.at("pieces")) pieces.push_back(poly_rat_from_json(p));
    return SetFn<Rat>(std::move(dom), std::move(pieces));
}

}  // namespace pwmod
