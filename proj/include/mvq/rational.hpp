#ifndef MVQ_RATIONAL_HPP
#define MVQ_RATIONAL_HPP

#include <gmpxx.h>

#include <cstdint>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

namespace mvq {

using Integer = mpz_class;
using Rational = mpq_class;

// mpq_class does not reduce on construction; every Rational built from a
// numerator/denominator pair must go through here.
inline Rational rational(const Integer& num, const Integer& den) {
    if (den == 0) throw std::invalid_argument("rational: zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline Rational rational(long num, long den = 1) {
    return rational(Integer(num), Integer(den));
}

inline double to_double(const Rational& q) { return q.get_d(); }
inline double to_double(const Integer& z) { return z.get_d(); }

inline Integer factorial(unsigned long n) {
    Integer r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

// (2k+1)!! for n = 2k+1; accepts n = -1 and n = 0 (both give 1).
inline Integer double_factorial(long n) {
    if (n <= 0) return 1;
    Integer r;
    mpz_2fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
    return r;
}

inline Integer binomial(unsigned long n, unsigned long k) {
    if (k > n) return 0;
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

inline Integer int_pow(const Integer& base, unsigned long e) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline Integer pow2(unsigned long e) { return int_pow(2, e); }

inline std::string to_fraction_string(const Rational& q) {
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline Rational parse_fraction(const std::string& s) {
    auto slash = s.find('/');
    Integer num(slash == std::string::npos ? s : s.substr(0, slash));
    Integer den(slash == std::string::npos ? std::string("1") : s.substr(slash + 1));
    return rational(num, den);
}

}  // namespace mvq

#endif
