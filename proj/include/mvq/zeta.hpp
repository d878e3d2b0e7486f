#ifndef MVQ_ZETA_HPP
#define MVQ_ZETA_HPP

#include <mutex>
#include <vector>

#include "mvq/pi_graded.hpp"
#include "mvq/rational.hpp"

namespace mvq {

// n-th Bernoulli number with the convention B_1 = -1/2, computed by the
// defining recurrence sum_{k=0}^{n} C(n+1,k) B_k = 0.
inline Rational bernoulli(int n) {
    if (n < 0) throw std::invalid_argument("bernoulli: n must be non-negative");
    static std::vector<Rational> cache{rational(1)};
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    while (static_cast<int>(cache.size()) <= n) {
        int m = static_cast<int>(cache.size());
        Rational acc(0);
        for (int k = 0; k < m; ++k) acc += Rational(binomial(m + 1, k)) * cache[k];
        cache.push_back(rational(Integer(-acc.get_num()), acc.get_den() * (m + 1)));
    }
    return cache[n];
}

// Rational coefficient r with zeta(2j) = r * pi^{2j}:
//   zeta(2j) = (-1)^{j+1} B_{2j} (2 pi)^{2j} / (2 (2j)!).
inline Rational zeta_even_coeff(int k) {
    if (k < 2 || k % 2 != 0)
        throw std::invalid_argument("zeta_even: argument must be even and >= 2");
    int j = k / 2;
    Rational c = bernoulli(2 * j) * rational(pow2(2 * j), 2 * factorial(2 * j));
    if (j % 2 == 0) c = -c;
    return c;
}

inline PiGraded zeta_even(int k) { return PiGraded::monomial(k, zeta_even_coeff(k)); }

// Partial zeta zeta_m(s) = 1 + 2^{-s} + ... + m^{-s} for finite m >= 1.
inline Rational partial_zeta(long m, int s) {
    if (m < 1) throw std::invalid_argument("partial_zeta: m must be >= 1");
    if (s < 1) throw std::invalid_argument("partial_zeta: s must be >= 1");
    Rational acc(0);
    for (long v = 1; v <= m; ++v) acc += rational(1, int_pow(v, s));
    return acc;
}

}  // namespace mvq

#endif
