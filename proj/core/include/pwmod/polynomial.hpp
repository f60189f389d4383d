#pragma once

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "pwmod/rational.hpp"

namespace pwmod {

template <class S, class R>
S scalar_cast(const R& v);
template <> inline Rat scalar_cast<Rat, Rat>(const Rat& v) { return v; }
template <> inline double scalar_cast<double, Rat>(const Rat& v) { return v.to_double(); }
template <> inline double scalar_cast<double, double>(const double& v) { return v; }
template <> inline Rat scalar_cast<Rat, double>(const double& v) { return Rat::from_double(v); }

/// Dense univariate polynomial, coefficients ascending by degree.
/// The zero polynomial is the empty coefficient vector.
template <class R>
class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<R> coeffs) : c_(std::move(coeffs)) { trim(); }
    static Poly constant(const R& v) { return Poly(std::vector<R>{v}); }
    static Poly x() { return Poly(std::vector<R>{R(0), R(1)}); }

    const std::vector<R>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero

    R coeff(size_t k) const { return k < c_.size() ? c_[k] : R(0); }

    R eval(const R& t) const {
        R acc(0);
        for (size_t i = c_.size(); i-- > 0;) acc = acc * t + c_[i];
        return acc;
    }

    double eval_d(double t) const {
        double acc = 0;
        for (size_t i = c_.size(); i-- > 0;) acc = acc * t + scalar_traits<R>::to_double(c_[i]);
        return acc;
    }

    Poly derivative() const {
        if (c_.size() <= 1) return Poly();
        std::vector<R> d(c_.size() - 1);
        for (size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * R(static_cast<long>(i));
        return Poly(std::move(d));
    }

    /// Antiderivative with zero constant term.
    Poly antiderivative() const {
        if (c_.empty()) return Poly();
        std::vector<R> a(c_.size() + 1, R(0));
        for (size_t i = 0; i < c_.size(); ++i) a[i + 1] = c_[i] / R(static_cast<long>(i + 1));
        return Poly(std::move(a));
    }

    R integral(const R& lo, const R& hi) const {
        Poly a = antiderivative();
        return a.eval(hi) - a.eval(lo);
    }

    /// p(c0 + c1*x), computed exactly.
    Poly compose_affine(const R& c0, const R& c1) const {
        Poly lin(std::vector<R>{c0, c1});
        Poly acc;
        for (size_t i = c_.size(); i-- > 0;) {
            acc = acc * lin;
            acc += Poly::constant(c_[i]);
        }
        return acc;
    }

    Poly& operator+=(const Poly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), R(0));
        for (size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
        trim();
        return *this;
    }
    Poly& operator-=(const Poly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), R(0));
        for (size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
        trim();
        return *this;
    }
    friend Poly operator+(Poly a, const Poly& b) { a += b; return a; }
    friend Poly operator-(Poly a, const Poly& b) { a -= b; return a; }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.c_.empty() || b.c_.empty()) return Poly();
        std::vector<R> p(a.c_.size() + b.c_.size() - 1, R(0));
        for (size_t i = 0; i < a.c_.size(); ++i)
            for (size_t j = 0; j < b.c_.size(); ++j) p[i + j] += a.c_[i] * b.c_[j];
        return Poly(std::move(p));
    }
    Poly operator-() const {
        std::vector<R> p(c_);
        for (auto& v : p) v = -v;
        return Poly(std::move(p));
    }
    Poly scaled(const R& s) const {
        std::vector<R> p(c_);
        for (auto& v : p) v = v * s;
        return Poly(std::move(p));
    }

    friend bool operator==(const Poly& a, const Poly& b) {
        if (a.c_.size() != b.c_.size()) return false;
        for (size_t i = 0; i < a.c_.size(); ++i)
            if (!(a.c_[i] == b.c_[i])) return false;
        return true;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == R(0)) c_.pop_back();
    }
    std::vector<R> c_;
};

template <class S, class R>
Poly<S> poly_convert(const Poly<R>& p) {
    std::vector<S> out;
    out.reserve(p.coeffs().size());
    for (const auto& v : p.coeffs()) out.push_back(scalar_cast<S, R>(v));
    return Poly<S>(std::move(out));
}

/// All real roots of p in [a, b], found by derivative-chain bisection.
std::vector<double> poly_roots_in(const Poly<double>& p, double a, double b);

/// sup of |p| over [a, b] in double precision (endpoints + critical points).
double poly_sup_abs(const Poly<double>& p, double a, double b);

}  // namespace pwmod
