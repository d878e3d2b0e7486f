#ifndef MVQ_NUMERICS_HPP
#define MVQ_NUMERICS_HPP

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace mvq {

inline constexpr double kEulerGamma = 0.5772156649015328606065120900824024;
inline constexpr double kPi = 3.141592653589793238462643383279503;

// Hurwitz zeta(s, a) for s > 1, a > 0, by direct summation plus an
// Euler-Maclaurin tail; accurate to ~1e-15 for the arguments used here.
inline double hurwitz_zeta_double(double s, double a) {
    if (s <= 1.0 || a <= 0.0) throw std::invalid_argument("hurwitz_zeta: needs s > 1, a > 0");
    const int N = 24;
    double sum = 0.0;
    for (int k = 0; k < N; ++k) sum += std::pow(a + k, -s);
    const double x = a + N;
    sum += std::pow(x, 1.0 - s) / (s - 1.0);
    sum += 0.5 * std::pow(x, -s);
    // Bernoulli numbers B_2, B_4, ..., B_12
    static const double b2k[] = {1.0 / 6,  -1.0 / 30, 1.0 / 42,
                                 -1.0 / 30, 5.0 / 66,  -691.0 / 2730};
    double rising = s;        // (s)_{2j-1} built incrementally
    double power = std::pow(x, -s - 1.0);
    double fact = 2.0;        // (2j)!
    for (int j = 1; j <= 6; ++j) {
        sum += b2k[j - 1] / fact * rising * power;
        rising *= (s + 2 * j - 1) * (s + 2 * j);
        power /= x * x;
        fact *= (2 * j + 1) * (2 * j + 2);
    }
    return sum;
}

inline double zeta_double(double s) { return hurwitz_zeta_double(s, 1.0); }

// Polygamma psi^{(m)}(x) = (-1)^{m+1} m! zeta(m+1, x) for m >= 1; psi^{(0)}
// via the log-derivative recurrence and asymptotic series.
inline double polygamma(int m, double x) {
    if (m < 0 || x <= 0.0) throw std::invalid_argument("polygamma: needs m >= 0, x > 0");
    if (m >= 1) {
        double mfact = 1.0;
        for (int i = 2; i <= m; ++i) mfact *= i;
        double v = mfact * hurwitz_zeta_double(m + 1, x);
        return (m % 2 == 0) ? -v : v;
    }
    // digamma: shift x up, then asymptotic expansion
    double acc = 0.0;
    while (x < 12.0) {
        acc -= 1.0 / x;
        x += 1.0;
    }
    double inv = 1.0 / x, inv2 = inv * inv;
    double series = std::log(x) - 0.5 * inv -
                    inv2 * (1.0 / 12 - inv2 * (1.0 / 120 - inv2 * (1.0 / 252 - inv2 / 240)));
    return acc + series;
}

inline double gamma_function(double x) { return std::tgamma(x); }
inline double log_gamma(double x) { return std::lgamma(x); }

// Streaming log-sum-exp accumulator for sums of positive terms given by their
// logarithms; log(0) terms are represented by -infinity.
class LogSum {
  public:
    void add_log(double log_term) {
        if (std::isinf(log_term) && log_term < 0) return;
        if (empty_) {
            max_ = log_term;
            sum_ = 1.0;
            empty_ = false;
            return;
        }
        if (log_term > max_) {
            sum_ = sum_ * std::exp(max_ - log_term) + 1.0;
            max_ = log_term;
        } else {
            sum_ += std::exp(log_term - max_);
        }
    }
    bool empty() const { return empty_; }
    double log_value() const {
        if (empty_) return -std::numeric_limits<double>::infinity();
        return max_ + std::log(sum_);
    }

  private:
    bool empty_ = true;
    double max_ = 0.0;
    double sum_ = 0.0;
};

}  // namespace mvq

#endif
