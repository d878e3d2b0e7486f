#ifndef MVQ_ASYMPTOTICS_HPP
#define MVQ_ASYMPTOTICS_HPP

#include <cmath>

#include "mvq/distribution.hpp"
#include "mvq/numerics.hpp"
#include "mvq/stirling.hpp"
#include "mvq/volumes.hpp"  // Bands

namespace mvq {

// Shared float constants: Euler-Mascheroni, zeta values, polygamma at the two
// points the cumulant formulas use. The psi values are derived from the exact
// zeta identities, which the tests pin against the generic evaluator.
struct NumericConstants {
    double gamma = kEulerGamma;
    std::vector<double> zeta;  // zeta[j] for j >= 2, zeta[0]=zeta[1] unused

    static const NumericConstants& get() {
        static NumericConstants c = [] {
            NumericConstants n;
            n.zeta.assign(42, 0.0);
            for (int j = 2; j < 42; ++j) n.zeta[j] = zeta_double(j);
            return n;
        }();
        return c;
    }

    // psi^{(m)}(1) = -gamma for m = 0, else (-1)^{m+1} zeta(m+1) m!.
    double psi_at_1(int m) const {
        if (m == 0) return -gamma;
        double f = 1.0;
        for (int i = 2; i <= m; ++i) f *= i;
        double v = zeta[m + 1] * f;
        return (m % 2 == 0) ? -v : v;
    }

    // psi^{(m)}(1/2) = -gamma - 2 log 2 for m = 0, else
    // (-1)^{m+1} zeta(m+1) m! (2^{m+1} - 1).
    double psi_at_half(int m) const {
        if (m == 0) return -gamma - 2 * std::log(2.0);
        double f = 1.0;
        for (int i = 2; i <= m; ++i) f *= i;
        double v = zeta[m + 1] * f * (std::pow(2.0, m + 1) - 1.0);
        return (m % 2 == 0) ? -v : v;
    }
};

// lambda_n = alpha log((2m/(m+1)) n)
inline double poisson_parameter(long n, Bands m, double alpha) {
    double c = m.is_finite() ? 2.0 * m.value / (m.value + 1.0) : 2.0;
    return alpha * std::log(c * n);
}

// Taylor coefficients phi_j of 1/Gamma(t) = sum phi_j t^j / j!.
inline std::vector<double> phi_taylor(int j_max) {
    if (j_max < 1 || j_max > 40) throw std::invalid_argument("phi_taylor: j_max in 1..40");
    const auto& nc = NumericConstants::get();
    // 1/Gamma(t) = t exp(A(t)), A(t) = gamma t + sum_{j>=2} (-1)^{j+1} zeta(j) t^j / j
    std::vector<double> a(j_max + 1, 0.0);
    a[1] = nc.gamma;
    for (int j = 2; j <= j_max; ++j) a[j] = ((j % 2) ? 1.0 : -1.0) * nc.zeta[j] / j;
    std::vector<double> b(j_max + 1, 0.0);  // exp(A)
    b[0] = 1.0;
    for (int m = 1; m <= j_max; ++m) {
        double acc = 0.0;
        for (int j = 1; j <= m; ++j) acc += j * a[j] * b[m - j];
        b[m] = acc / m;
    }
    std::vector<double> phi(j_max + 1, 0.0);  // phi[j], j = 1..j_max
    double fact = 1.0;
    for (int j = 1; j <= j_max; ++j) {
        fact *= j;
        phi[j] = fact * b[j - 1];
    }
    return phi;
}

// u_{lambda,alpha}(k), k = 1..k_max: Taylor coefficients of
// e^{lambda(t-1)} t Gamma(1+alpha) / Gamma(1+t alpha). In the explicit sum
// form u(k) = Gamma(1+alpha) e^{-lambda} / k! sum_i C(k,i) phi_i alpha^{i-1}
// lambda^{k-i}; at alpha = 1/2 this is the sqrt(pi) e^{-lambda} ... form.
inline std::vector<double> u_coefficients(double lambda, double alpha, int k_max) {
    if (lambda <= 0 || alpha <= 0) throw std::invalid_argument("u_coefficients: lambda, alpha > 0");
    int j_max = std::min(40, std::max(k_max, 1));
    auto phi = phi_taylor(j_max);
    std::vector<double> u(k_max + 1, 0.0);
    const double front = gamma_function(1.0 + alpha) * std::exp(-lambda);
    for (int k = 1; k <= k_max; ++k) {
        double sum = 0.0;
        for (int i = 1; i <= std::min(k, j_max); ++i) {
            double log_binom = log_gamma(k + 1.0) - log_gamma(i + 1.0) - log_gamma(k - i + 1.0);
            double term = std::exp(log_binom + (k - i) * std::log(lambda)) * phi[i] *
                          std::pow(alpha, i - 1);
            sum += term;
        }
        u[k] = front * sum * std::exp(-log_gamma(k + 1.0));
    }
    return u;
}

// Local-limit approximation to q(k+1):
//   e^{-lambda} lambda^k / k! * Gamma(1+alpha)/Gamma(1+alpha k/lambda).
inline double llt_estimate(long n, Bands m, double alpha, int k) {
    if (k < 0) throw std::invalid_argument("llt_estimate: k >= 0");
    double lambda = poisson_parameter(n, m, alpha);
    double log_poisson = -lambda + k * std::log(lambda) - log_gamma(k + 1.0);
    return std::exp(log_poisson) * gamma_function(1.0 + alpha) /
           gamma_function(1.0 + alpha * k / lambda);
}

enum class TailSide { kUpper, kLower };

// Tail estimate at the integer-rounded threshold x lambda:
//   e^{-lambda(x log x - x + 1)} / sqrt(2 pi x lambda) * x/|x-1|
//     * Gamma(1+alpha)/Gamma(1+alpha x).
inline double tail_estimate(long n, Bands m, double alpha, double x, TailSide side) {
    if (x == 1.0) throw std::invalid_argument("tail_estimate: singular at x = 1");
    if (side == TailSide::kUpper && x <= 1.0)
        throw std::invalid_argument("tail_estimate: upper tail needs x > 1");
    if (side == TailSide::kLower && (x <= 0.0 || x >= 1.0))
        throw std::invalid_argument("tail_estimate: lower tail needs 0 < x < 1");
    double lambda = poisson_parameter(n, m, alpha);
    double expo = -lambda * (x * std::log(x) - x + 1.0);
    return std::exp(expo) / std::sqrt(2.0 * kPi * x * lambda) * (x / std::abs(x - 1.0)) *
           gamma_function(1.0 + alpha) / gamma_function(1.0 + alpha * x);
}

// shift(x) = log G(x)/(x-1) with G(x) = sqrt(pi)/(2 Gamma(1+x/2)); continuous
// extension gamma/2 + log 2 - 1 at x = 1.
inline double shift_sigma(double x) {
    if (x <= 0) throw std::invalid_argument("shift_sigma: x > 0");
    if (std::abs(x - 1.0) < 1e-9) return kEulerGamma / 2 + std::log(2.0) - 1.0;
    double log_g = 0.5 * std::log(kPi) - std::log(2.0) - log_gamma(1.0 + x / 2.0);
    return log_g / (x - 1.0);
}

// Poisson moment P_n(lambda) = sum_k S(n,k) lambda^k.
inline double poisson_moment(int n, double lambda) {
    if (n < 0 || lambda <= 0) throw std::invalid_argument("poisson_moment: n >= 0, lambda > 0");
    double acc = 0.0;
    for (int k = n; k >= 0; --k) acc = acc * lambda + to_double(Rational(stirling_second(n, k)));
    return acc;
}

inline Rational poisson_moment(int n, const Rational& lambda) {
    Rational acc(0);
    for (int k = n; k >= 0; --k) acc = acc * lambda + Rational(stirling_second(n, k));
    return acc;
}

struct TailBound {
    double lhs;  // sum_{k >= ceil(x lambda)} k^n lambda^k / k!
    double rhs;  // P_n(x lambda) exp(-lambda (x log x - x))
    long threshold;
};

inline TailBound poisson_tail_bound(double lambda, double x, int n) {
    if (lambda <= 0 || x <= 0 || n < 0)
        throw std::invalid_argument("poisson_tail_bound: bad arguments");
    long k0 = static_cast<long>(std::ceil(x * lambda));
    double lhs = 0.0;
    for (long k = k0;; ++k) {
        double log_term = -log_gamma(k + 1.0) + k * std::log(lambda);
        if (n > 0 && k > 0) log_term += n * std::log(static_cast<double>(k));
        double term = std::exp(log_term);
        lhs += term;
        if (k > k0 + 8 && k > static_cast<long>(lambda) + 8 && term < lhs * 1e-18) break;
    }
    double rhs = poisson_moment(n, x * lambda) * std::exp(-lambda * (x * std::log(x) - x));
    return {lhs, rhs, k0};
}

// Cumulants kappa_1..kappa_imax from moments (kappa_n = m_n -
// sum_j C(n-1,j-1) kappa_j m_{n-j}).
inline std::vector<double> exact_cumulants(const Distribution& d, int i_max) {
    if (i_max < 1 || i_max > 8)
        throw std::invalid_argument("exact_cumulants: i_max in 1..8 (conditioning guard)");
    std::vector<double> moments(i_max + 1, 0.0);
    moments[0] = 1.0;
    for (int k = 1; k <= d.k_max(); ++k) {
        double p = d.mass(k);
        double kp = 1.0;
        for (int i = 1; i <= i_max; ++i) {
            kp *= k;
            moments[i] += kp * p;
        }
    }
    std::vector<double> kappa(i_max + 1, 0.0);
    for (int ni = 1; ni <= i_max; ++ni) {
        double acc = moments[ni];
        for (int j = 1; j < ni; ++j)
            acc -= to_double(Rational(binomial(ni - 1, j - 1))) * kappa[j] * moments[ni - j];
        kappa[ni] = acc;
    }
    return std::vector<double>(kappa.begin() + 1, kappa.end());
}

// kappa_i ~ lambda_n - sum_{k=1}^{i} S(i,k) psi^{(k-1)}(alpha) alpha^k.
inline std::vector<double> asymptotic_cumulants(long n, Bands m, double alpha, int i_max) {
    if (n < 2) throw std::invalid_argument("asymptotic_cumulants: n >= 2");
    double lambda = poisson_parameter(n, m, alpha);
    std::vector<double> out;
    for (int i = 1; i <= i_max; ++i) {
        double corr = 0.0;
        for (int k = 1; k <= i; ++k)
            corr += to_double(Rational(stirling_second(i, k))) * polygamma(k - 1, alpha) *
                    std::pow(alpha, k);
        out.push_back(lambda - corr);
    }
    return out;
}

// Mod-Poisson deviation max_t |F(t) / (e^{lambda(t-1)} G(t)) - 1| with
// G(t) = Gamma(1+alpha)/Gamma(1+alpha t) and F the generating series of the
// shifted variable K-1 (the limiting function of K itself carries an extra
// factor t).
inline double mod_poisson_deviation(const Distribution& d, double lambda, double alpha,
                                    const std::vector<double>& t_grid) {
    double worst = 0.0;
    for (double t : t_grid) {
        double denom_gamma = gamma_function(1.0 + alpha * t);
        if (denom_gamma == 0.0 || !std::isfinite(denom_gamma))
            throw std::invalid_argument("mod_poisson_deviation: G undefined on grid");
        double g = gamma_function(1.0 + alpha) / denom_gamma;
        double f = 0.0;
        for (int k = 1; k <= d.k_max(); ++k) f += d.mass(k) * std::pow(t, k - 1);
        double ratio = f / (std::exp(lambda * (t - 1.0)) * g);
        worst = std::max(worst, std::abs(ratio - 1.0));
    }
    return worst;
}

// Large-genus asymptotic (4/pi)(8/3)^{4g-4} for Vol Q_g, and the refined
// candidate with the conjectural 1/g correction.
inline double volume_asymptotic(int g) {
    if (g < 2) throw std::invalid_argument("volume_asymptotic: g >= 2");
    return 4.0 / kPi * std::pow(8.0 / 3.0, 4 * g - 4);
}
inline double volume_asymptotic_refined(int g) {
    return volume_asymptotic(g) * (1.0 - kPi * kPi / (144.0 * g));
}

// Kolmogorov distance between the (lambda, sqrt(lambda))-standardized CDF of
// d and the standard normal CDF.
inline double clt_compare(const Distribution& d, double lambda) {
    if (lambda <= 0) throw std::invalid_argument("clt_compare: lambda > 0");
    auto Phi = [](double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); };
    double cdf = 0.0;
    double worst = 0.0;
    for (int k = 1; k <= d.k_max(); ++k) {
        double z = (k - lambda) / std::sqrt(lambda);
        double target = Phi(z);
        worst = std::max(worst, std::abs(cdf - target));  // just below the jump
        cdf += d.mass(k);
        worst = std::max(worst, std::abs(cdf - target));  // at the jump
    }
    return worst;
}

}  // namespace mvq

#endif
