#include "pwmod/rational.hpp"

#include <cmath>
#include <ostream>

namespace pwmod {

Rat Rat::parse(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("Rat::parse: empty string");
    auto dot = s.find('.');
    if (dot == std::string::npos) {
        mpq_class q;
        if (q.set_str(s, 10) != 0) throw std::invalid_argument("Rat::parse: bad rational '" + s + "'");
        q.canonicalize();
        return Rat(q);
    }
    // decimal form: sign, integer part, fractional part
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    size_t frac_len = s.size() - dot - 1;
    if (frac_len == 0) throw std::invalid_argument("Rat::parse: trailing dot in '" + s + "'");
    mpz_class num;
    if (num.set_str(digits, 10) != 0) throw std::invalid_argument("Rat::parse: bad decimal '" + s + "'");
    mpz_class den = 1;
    for (size_t i = 0; i < frac_len; ++i) den *= 10;
    mpq_class q(num, den);
    q.canonicalize();
    return Rat(q);
}

Rat Rat::from_double(double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("Rat::from_double: non-finite");
    const double scale = 281474976710656.0;  // 2^48
    mpz_class num;
    mpz_set_d(num.get_mpz_t(), std::round(x * scale));
    mpq_class q(num, mpz_class(1) << 48);
    q.canonicalize();
    return Rat(q);
}

Rat Rat::pow2(int e) {
    mpq_class q;
    if (e >= 0) {
        q = mpq_class(mpz_class(1) << e, 1);
    } else {
        q = mpq_class(1, mpz_class(1) << (-e));
    }
    return Rat(q);
}

std::string Rat::str() const {
    return v_.get_str();
}

std::ostream& operator<<(std::ostream& os, const Rat& r) {
    return os << r.v_;
}

}  // namespace pwmod
