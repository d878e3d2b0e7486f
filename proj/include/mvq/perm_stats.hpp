#ifndef MVQ_PERM_STATS_HPP
#define MVQ_PERM_STATS_HPP

#include <algorithm>
#include <cstdint>
#include <random>

#include "mvq/distribution.hpp"
#include "mvq/numerics.hpp"
#include "mvq/pi_graded.hpp"
#include "mvq/volumes.hpp"  // Bands
#include "mvq/zeta.hpp"

namespace mvq {

// Weight sequence theta = {theta_k} defining a measure on S_n: either
// theta_k = alpha zeta_m(2k) (the (m, alpha) kind), or a custom list.
class WeightSequence {
  public:
    static WeightSequence zeta_kind(Bands m, const Rational& alpha) {
        if (alpha <= 0) throw std::invalid_argument("WeightSequence: alpha must be > 0");
        WeightSequence w;
        w.kind_ = m.is_finite() ? kFinite : kInfinite;
        w.bands_ = m;
        w.alpha_ = alpha;
        return w;
    }

    static WeightSequence custom(std::vector<PiGraded> thetas) {
        WeightSequence w;
        w.kind_ = kCustom;
        w.custom_ = std::move(thetas);
        if (w.custom_.empty() || w.theta(1).is_zero())
            throw std::invalid_argument("WeightSequence: theta_1 must be positive");
        return w;
    }

    PiGraded theta(int k) const {
        if (k < 1) throw std::invalid_argument("WeightSequence: k must be >= 1");
        switch (kind_) {
            case kInfinite:
                return PiGraded::monomial(2 * k, alpha_ * zeta_even_coeff(2 * k));
            case kFinite:
                return PiGraded(alpha_ * partial_zeta(bands_.value, 2 * k));
            default:
                return k <= static_cast<int>(custom_.size()) ? custom_[k - 1] : PiGraded();
        }
    }

    // Float weights never touch the exact Bernoulli/zeta machinery: at large
    // k the exact coefficients are astronomically sized rationals.
    double theta_double(int k) const {
        if (k < 1) throw std::invalid_argument("WeightSequence: k must be >= 1");
        switch (kind_) {
            case kInfinite:
                return to_double(alpha_) * zeta_double(2.0 * k);
            case kFinite: {
                double s = 0.0;
                for (long v = 1; v <= bands_.value; ++v)
                    s += std::pow(static_cast<double>(v), -2.0 * k);
                return to_double(alpha_) * s;
            }
            default:
                return k <= static_cast<int>(custom_.size()) ? custom_[k - 1].to_double() : 0.0;
        }
    }

    // For the (m, alpha) kinds, theta_k is a single graded monomial; the DP
    // can then run over plain rationals. grade_per_step is 2 for m = infinity
    // (theta_k sits in grade 2k) and 0 for finite m.
    bool is_zeta_kind() const { return kind_ != kCustom; }
    int grade_per_step() const { return kind_ == kInfinite ? 2 : 0; }
    Rational reduced_theta(int k) const {
        if (kind_ == kInfinite) return alpha_ * zeta_even_coeff(2 * k);
        if (kind_ == kFinite) return alpha_ * partial_zeta(bands_.value, 2 * k);
        throw std::logic_error("WeightSequence: custom kind has no reduced form");
    }

    bool all_positive(int up_to) const {
        for (int k = 1; k <= up_to; ++k)
            if (theta(k).is_zero()) return false;
        return true;
    }

  private:
    enum Kind { kInfinite, kFinite, kCustom };
    Kind kind_ = kInfinite;
    Bands bands_ = Bands::infinite();
    Rational alpha_ = 1;
    std::vector<PiGraded> custom_;
};

namespace detail {

// Exponential-formula DP: H(n, k) = [t^k z^n] exp(t sum_k theta_k z^k / k),
// computed through i E_i = sum_j theta_j t E_{i-j}. Ring is Rational or
// PiGraded or double.
template <class Ring>
std::vector<std::vector<Ring>> harmonic_dp(int n, int k_max,
                                           const std::function<Ring(int)>& theta,
                                           const std::function<Ring(const Ring&, int)>& divide) {
    std::vector<std::vector<Ring>> rows(n + 1);
    rows[0] = {Ring(1)};
    std::vector<Ring> thetas(n + 1, Ring(0));
    for (int j = 1; j <= n; ++j) thetas[j] = theta(j);
    for (int i = 1; i <= n; ++i) {
        int width = std::min(i, k_max);
        std::vector<Ring> row(width + 1, Ring(0));
        for (int j = 1; j <= i; ++j) {
            const auto& prev = rows[i - j];
            int upper = std::min<int>(static_cast<int>(prev.size()) - 1, width - 1);
            for (int c = 0; c <= upper; ++c) {
                Ring t = thetas[j];
                t *= prev[c];
                row[c + 1] += t;
            }
        }
        for (auto& v : row) v = divide(v, i);
        rows[i] = std::move(row);
    }
    return rows;
}

}  // namespace detail

// Exact harmonic sums H_{n,theta}(k), k = 0..min(n,k_max), as PiGraded values.
inline std::vector<PiGraded> harmonic_sums(int n, const WeightSequence& weights,
                                           int k_max = -1) {
    if (n < 1) throw std::invalid_argument("harmonic_sums: n must be >= 1");
    if (k_max < 0) k_max = n;
    if (weights.is_zeta_kind()) {
        std::function<Rational(int)> theta = [&](int j) { return weights.reduced_theta(j); };
        std::function<Rational(const Rational&, int)> divide = [](const Rational& v, int i) {
            return v / i;
        };
        auto rows = detail::harmonic_dp<Rational>(n, k_max, theta, divide);
        const int grade = weights.grade_per_step() * n;
        std::vector<PiGraded> out(rows[n].size());
        for (std::size_t c = 0; c < rows[n].size(); ++c)
            out[c] = PiGraded::monomial(grade, rows[n][c]);
        return out;
    }
    std::function<PiGraded(int)> theta = [&](int j) { return weights.theta(j); };
    std::function<PiGraded(const PiGraded&, int)> divide = [](const PiGraded& v, int i) {
        return v / Rational(i);
    };
    auto rows = detail::harmonic_dp<PiGraded>(n, k_max, theta, divide);
    return rows[n];
}

// H_{n,m,alpha}(k) for a single k; k > n gives 0, k <= 0 is an error.
inline PiGraded harmonic_sum(int n, const WeightSequence& weights, int k) {
    if (k <= 0) throw std::invalid_argument("harmonic_sum: k must be >= 1");
    if (k > n) return PiGraded();
    return harmonic_sums(n, weights)[k];
}

// Float DP row E_n[0..k_max] for large n.
inline std::vector<double> harmonic_sums_double(int n, const WeightSequence& weights,
                                                int k_max) {
    if (n < 1) throw std::invalid_argument("harmonic_sums: n must be >= 1");
    std::vector<double> thetas(n + 1, 0.0);
    for (int j = 1; j <= n; ++j) thetas[j] = weights.theta_double(j);
    std::vector<std::vector<double>> rows(n + 1);
    rows[0] = {1.0};
    for (int i = 1; i <= n; ++i) {
        int width = std::min(i, k_max);
        std::vector<double> row(width + 1, 0.0);
        for (int j = 1; j <= i; ++j) {
            const auto& prev = rows[i - j];
            int upper = std::min<int>(static_cast<int>(prev.size()) - 1, width - 1);
            const double t = thetas[j];
            for (int c = 0; c <= upper; ++c) row[c + 1] += t * prev[c];
        }
        const double inv = 1.0 / i;
        for (double& v : row) v *= inv;
        rows[i] = std::move(row);
    }
    return rows[n];
}

// Law of the cycle count and the total weight W_{theta,n}.
struct QResult {
    Distribution distribution;
    PiGraded total_weight;
};

inline QResult q_distribution(int n, const WeightSequence& weights) {
    auto sums = harmonic_sums(n, weights);
    PiGraded total;
    for (int k = 1; k < static_cast<int>(sums.size()); ++k) total += sums[k];
    if (total.is_zero()) throw std::invalid_argument("q_distribution: all weights vanish");
    std::vector<Rational> masses;
    bool exact_ok = true;
    for (int k = 1; k < static_cast<int>(sums.size()); ++k) {
        if (sums[k].is_zero()) {
            masses.push_back(0);
            continue;
        }
        auto r = sums[k].exact_ratio(total);
        if (!r) {
            exact_ok = false;
            break;
        }
        masses.push_back(*r);
    }
    if (exact_ok) {
        masses.resize(n, 0);
        return {Distribution::exact(std::move(masses)), total};
    }
    std::vector<double> fm(n, 0.0);
    double td = total.to_double();
    for (int k = 1; k < static_cast<int>(sums.size()); ++k) fm[k - 1] = sums[k].to_double() / td;
    return {Distribution::approximate(std::move(fm)), total};
}

// Float-backed law of the cycle count for large n. k_max <= 0 selects the
// default truncation min(n, ceil(22 log n)).
inline Distribution q_distribution_double(int n, const WeightSequence& weights, int k_max = 0) {
    if (k_max <= 0)
        k_max = std::min<int>(n, static_cast<int>(std::ceil(22.0 * std::log(std::max(2, n)))));
    auto row = harmonic_sums_double(n, weights, k_max);
    double total = 0.0;
    for (std::size_t k = 1; k < row.size(); ++k) total += row[k];
    if (total <= 0.0) throw std::invalid_argument("q_distribution_double: all weights vanish");
    std::vector<double> masses(row.size() - 1, 0.0);
    for (std::size_t k = 1; k < row.size(); ++k) masses[k - 1] = row[k] / total;
    return Distribution::approximate(std::move(masses), 1e-9);
}

// Brute-force oracle: iterate all n! permutations, accumulate weights by
// cycle count. n is hard-capped at 8.
inline QResult brute_force_q(int n, const WeightSequence& weights) {
    if (n < 1 || n > 8) throw std::invalid_argument("brute_force_q: n must be in 1..8");
    std::vector<PiGraded> theta(n + 1);
    for (int k = 1; k <= n; ++k) theta[k] = weights.theta(k);
    std::vector<PiGraded> bucket(n + 1);
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    do {
        std::vector<char> seen(n, 0);
        PiGraded w(Rational(1));
        int cycles = 0;
        for (int i = 0; i < n; ++i) {
            if (seen[i]) continue;
            int len = 0;
            for (int j = i; !seen[j]; j = perm[j]) {
                seen[j] = 1;
                ++len;
            }
            ++cycles;
            w *= theta[len];
            if (w.is_zero()) break;
        }
        if (!w.is_zero()) bucket[cycles] += w;
    } while (std::next_permutation(perm.begin(), perm.end()));

    PiGraded total;
    for (int k = 1; k <= n; ++k) total += bucket[k];
    if (total.is_zero()) throw std::invalid_argument("brute_force_q: all weights vanish");
    std::vector<Rational> masses;
    bool exact_ok = true;
    for (int k = 1; k <= n; ++k) {
        if (bucket[k].is_zero()) {
            masses.push_back(0);
            continue;
        }
        auto r = bucket[k].exact_ratio(total);
        if (!r) {
            exact_ok = false;
            break;
        }
        masses.push_back(*r);
    }
    // normalization: bucket[k] equals n! H(k), so the ratios match q exactly
    if (exact_ok) return {Distribution::exact(std::move(masses)), total / Rational(factorial(n))};
    std::vector<double> fm(n, 0.0);
    double td = total.to_double();
    for (int k = 1; k <= n; ++k) fm[k - 1] = bucket[k].to_double() / td;
    return {Distribution::approximate(std::move(fm)), total / Rational(factorial(n))};
}

// Cycle type (1^{mu_1} 2^{mu_2} ... n^{mu_n}).
struct CycleType {
    std::vector<int> multiplicities;  // index l-1 holds mu_l

    int n() const {
        int s = 0;
        for (std::size_t l = 0; l < multiplicities.size(); ++l)
            s += static_cast<int>(l + 1) * multiplicities[l];
        return s;
    }
    int cycle_count() const {
        int s = 0;
        for (int m : multiplicities) s += m;
        return s;
    }
};

// W_{theta,0..n} by the recurrence n W_n = sum_l theta_l W_{n-l}.
inline std::vector<double> weight_totals_double(int n, const WeightSequence& weights) {
    std::vector<double> theta(n + 1, 0.0);
    for (int l = 1; l <= n; ++l) theta[l] = weights.theta_double(l);
    std::vector<double> w(n + 1, 0.0);
    w[0] = 1.0;
    for (int i = 1; i <= n; ++i) {
        double acc = 0.0;
        for (int l = 1; l <= i; ++l) acc += theta[l] * w[i - l];
        w[i] = acc / i;
    }
    return w;
}

// Exact sampler via the first-cycle law: the cycle containing a fixed element
// of the remaining n' elements has length l with probability
// theta_l W_{n'-l} / (n' W_{n'}).
inline CycleType sample_cycle_type(int n, const WeightSequence& weights, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("sample_cycle_type: n must be >= 1");
    std::vector<double> w = weight_totals_double(n, weights);
    std::vector<double> theta(n + 1, 0.0);
    for (int l = 1; l <= n; ++l) theta[l] = weights.theta_double(l);
    std::mt19937_64 rng(seed);
    auto uniform = [&rng]() { return (rng() >> 11) * 0x1.0p-53; };
    CycleType type;
    type.multiplicities.assign(n, 0);
    int remaining = n;
    while (remaining > 0) {
        double u = uniform() * remaining * w[remaining];
        double acc = 0.0;
        int len = remaining;  // fallback against rounding
        for (int l = 1; l <= remaining; ++l) {
            acc += theta[l] * w[remaining - l];
            if (u < acc) {
                len = l;
                break;
            }
        }
        ++type.multiplicities[len - 1];
        remaining -= len;
    }
    return type;
}

// Empirical distribution of the cycle count over `samples` draws.
inline Distribution sample_cycle_count_distribution(int n, const WeightSequence& weights,
                                                    std::uint64_t seed, long samples) {
    std::vector<double> w = weight_totals_double(n, weights);
    std::vector<double> theta(n + 1, 0.0);
    for (int l = 1; l <= n; ++l) theta[l] = weights.theta_double(l);
    std::mt19937_64 rng(seed);
    auto uniform = [&rng]() { return (rng() >> 11) * 0x1.0p-53; };
    std::vector<long> counts(n + 1, 0);
    for (long s = 0; s < samples; ++s) {
        int remaining = n;
        int cycles = 0;
        while (remaining > 0) {
            double u = uniform() * remaining * w[remaining];
            double acc = 0.0;
            int len = remaining;
            for (int l = 1; l <= remaining; ++l) {
                acc += theta[l] * w[remaining - l];
                if (u < acc) {
                    len = l;
                    break;
                }
            }
            ++cycles;
            remaining -= len;
        }
        ++counts[cycles];
    }
    std::vector<double> masses(n, 0.0);
    for (int k = 1; k <= n; ++k) masses[k - 1] = static_cast<double>(counts[k]) / samples;
    return Distribution::approximate(std::move(masses), 1e-9);
}

// Partial sum of g_m(z) = sum_k zeta_m(2k) z^k / k, |z| < 1.
inline double g_m_series(Bands m, double z, int terms) {
    if (std::abs(z) >= 1.0) throw std::invalid_argument("g_m_series: needs |z| < 1");
    double acc = 0.0;
    for (int k = 1; k <= terms; ++k) {
        double zk;
        if (m.is_finite()) {
            zk = 0.0;
            for (long v = 1; v <= m.value; ++v) zk += std::pow(static_cast<double>(v), -2.0 * k);
        } else {
            zk = zeta_double(2.0 * k);
        }
        acc += zk * std::pow(z, k) / k;
    }
    return acc;
}

// Closed form -sum_{v<=m} log(1 - z/v^2); for m = infinity this telescopes to
// -log(sin(pi sqrt z)/(pi sqrt z)).
inline double g_m_closed(Bands m, double z) {
    if (std::abs(z) >= 1.0) throw std::invalid_argument("g_m_closed: needs |z| < 1");
    if (z == 0.0) return 0.0;
    if (m.is_finite()) {
        double acc = 0.0;
        for (long v = 1; v <= m.value; ++v) acc -= std::log1p(-z / (static_cast<double>(v) * v));
        return acc;
    }
    if (z > 0) {
        double r = kPi * std::sqrt(z);
        return -std::log(std::sin(r) / r);
    }
    double r = kPi * std::sqrt(-z);
    return -std::log(std::sinh(r) / r);
}

}  // namespace mvq

#endif
