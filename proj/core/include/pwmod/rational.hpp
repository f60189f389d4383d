#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>

namespace pwmod {

/// Exact rational scalar backed by GMP. Always kept in canonical form
/// (coprime numerator/denominator, positive denominator).
class Rat {
public:
    Rat() : v_(0) {}
    Rat(int n) : v_(n) {}
    Rat(long n) : v_(n) {}
    Rat(long long n) : v_(static_cast<long>(n)) {}
    Rat(long num, long den) : v_(num, den) {
        if (den == 0) throw std::invalid_argument("Rat: zero denominator");
        v_.canonicalize();
    }
    explicit Rat(const mpq_class& q) : v_(q) { v_.canonicalize(); }

    /// Parses "3/4", "-7", "0.25", "1e-3"-free decimal strings. Exact.
    static Rat parse(const std::string& s);

    /// Nearest rational with denominator 2^48; used to pin float inputs.
    static Rat from_double(double x);

    static Rat pow2(int e);  // 2^e, e may be negative

    const mpq_class& raw() const { return v_; }
    double to_double() const { return v_.get_d(); }
    int sign() const { return sgn(v_); }
    bool is_zero() const { return sgn(v_) == 0; }
    Rat abs() const { return Rat(mpq_class(::abs(v_))); }

    /// "num/den" in base 10, or just "num" for integers.
    std::string str() const;

    friend Rat operator+(const Rat& a, const Rat& b) { return Rat(mpq_class(a.v_ + b.v_)); }
    friend Rat operator-(const Rat& a, const Rat& b) { return Rat(mpq_class(a.v_ - b.v_)); }
    friend Rat operator*(const Rat& a, const Rat& b) { return Rat(mpq_class(a.v_ * b.v_)); }
    friend Rat operator/(const Rat& a, const Rat& b) {
        if (sgn(b.v_) == 0) throw std::domain_error("Rat: division by zero");
        return Rat(mpq_class(a.v_ / b.v_));
    }
    Rat operator-() const { return Rat(mpq_class(-v_)); }

    Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
    Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
    Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }
    Rat& operator/=(const Rat& o) { *this = *this / o; return *this; }

    friend bool operator==(const Rat& a, const Rat& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rat& a, const Rat& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rat& a, const Rat& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rat& a, const Rat& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rat& a, const Rat& b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rat& a, const Rat& b) { return a.v_ >= b.v_; }

    friend std::ostream& operator<<(std::ostream& os, const Rat& r);

private:
    mpq_class v_;
};

inline Rat min(const Rat& a, const Rat& b) { return a <= b ? a : b; }
inline Rat max(const Rat& a, const Rat& b) { return a >= b ? a : b; }

/// Scalar-mode switch. Rat gives exact arithmetic; double trades exactness
/// for speed with a fixed 1e-10 absolute comparison tolerance.
template <class R>
struct scalar_traits;

template <>
struct scalar_traits<Rat> {
    static constexpr bool exact = true;
    static Rat from_rat(const Rat& q) { return q; }
    static double to_double(const Rat& q) { return q.to_double(); }
    static bool eq(const Rat& a, const Rat& b) { return a == b; }
    static bool is_zero(const Rat& a) { return a.is_zero(); }
    static Rat abs(const Rat& a) { return a.abs(); }
};

template <>
struct scalar_traits<double> {
    static constexpr bool exact = false;
    static constexpr double tol = 1e-10;
    static double from_rat(const Rat& q) { return q.to_double(); }
    static double to_double(double x) { return x; }
    static bool eq(double a, double b) { return (a > b ? a - b : b - a) <= tol; }
    static bool is_zero(double a) { return (a < 0 ? -a : a) <= tol; }
    static double abs(double a) { return a < 0 ? -a : a; }
};

}  // namespace pwmod
