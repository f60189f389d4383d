#include "pwmod/sturm.hpp"

#include <cmath>

namespace pwmod {

namespace {

// Polynomial remainder of a mod b over Q.
Poly<Rat> poly_rem(Poly<Rat> a, const Poly<Rat>& b) {
    std::vector<Rat> r(a.coeffs());
    const auto& d = b.coeffs();
    while (r.size() >= d.size() && !d.empty()) {
        Rat q = r.back() / d.back();
        size_t shift = r.size() - d.size();
        for (size_t i = 0; i < d.size(); ++i) r[shift + i] -= q * d[i];
        while (!r.empty() && r.back() == Rat(0)) r.pop_back();
        if (r.size() < d.size()) break;
    }
    return Poly<Rat>(std::move(r));
}

std::vector<Poly<Rat>> sturm_chain(const Poly<Rat>& p) {
    std::vector<Poly<Rat>> chain;
    chain.push_back(p);
    Poly<Rat> d = p.derivative();
    if (!d.is_zero()) chain.push_back(d);
    while (chain.size() >= 2 && !chain.back().is_zero()) {
        Poly<Rat> r = poly_rem(chain[chain.size() - 2], chain.back());
        if (r.is_zero()) break;
        chain.push_back(-r);
    }
    return chain;
}

int sign_variations(const std::vector<Poly<Rat>>& chain, const Rat& x) {
    int variations = 0, prev = 0;
    for (const auto& q : chain) {
        int s = q.eval(x).sign();
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++variations;
        prev = s;
    }
    return variations;
}

}  // namespace

int count_roots(const Poly<Rat>& p, const Rat& a, const Rat& b) {
    if (p.is_zero()) throw std::domain_error("count_roots: zero polynomial");
    if (!(a < b)) return 0;
    auto chain = sturm_chain(p);
    return sign_variations(chain, a) - sign_variations(chain, b);
}

bool poly_positive_on(const Poly<Rat>& p, const Rat& a, const Rat& b) {
    if (p.is_zero()) return false;
    if (!(p.eval(a) > Rat(0))) return false;
    if (a == b) return true;
    if (!(p.eval(b) > Rat(0))) return false;
    return count_roots(p, a, b) == 0;
}

bool poly_abs_below(const Poly<Rat>& p, const Rat& bound, const Rat& a, const Rat& b) {
    if (!(bound > Rat(0))) return false;
    Poly<Rat> c = Poly<Rat>::constant(bound);
    return poly_positive_on(c - p, a, b) && poly_positive_on(c + p, a, b);
}

// --- double-precision root isolation -------------------------------------

namespace {

double bisect_root(const Poly<double>& p, double lo, double hi) {
    double flo = p.eval_d(lo);
    if (flo == 0) return lo;
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        double fm = p.eval_d(mid);
        if (fm == 0) return mid;
        if ((flo < 0) != (fm < 0)) {
            hi = mid;
        } else {
            lo = mid;
            flo = fm;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace

std::vector<double> poly_roots_in(const Poly<double>& p, double a, double b) {
    std::vector<double> roots;
    if (p.degree() <= 0 || !(a < b)) return roots;
    if (p.degree() == 1) {
        double r = -p.coeff(0) / p.coeff(1);
        if (r >= a && r <= b) roots.push_back(r);
        return roots;
    }
    std::vector<double> knots = poly_roots_in(p.derivative(), a, b);
    knots.insert(knots.begin(), a);
    knots.push_back(b);
    for (size_t i = 0; i + 1 < knots.size(); ++i) {
        double lo = knots[i], hi = knots[i + 1];
        if (!(lo < hi)) continue;
        double flo = p.eval_d(lo), fhi = p.eval_d(hi);
        if (flo == 0 && (roots.empty() || roots.back() != lo)) roots.push_back(lo);
        if ((flo < 0) != (fhi < 0)) {
            double r = bisect_root(p, lo, hi);
            if (roots.empty() || std::abs(roots.back() - r) > 1e-15) roots.push_back(r);
        } else if (fhi == 0 && i + 2 == knots.size()) {
            roots.push_back(hi);
        }
    }
    return roots;
}

double poly_sup_abs(const Poly<double>& p, double a, double b) {
    double best = std::max(std::abs(p.eval_d(a)), std::abs(p.eval_d(b)));
    for (double r : poly_roots_in(p.derivative(), a, b)) best = std::max(best, std::abs(p.eval_d(r)));
    return best;
}

}  // namespace pwmod
