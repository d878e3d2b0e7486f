#ifndef MVQ_DISTRIBUTION_HPP
#define MVQ_DISTRIBUTION_HPP

#include <cmath>
#include <vector>

#include "mvq/rational.hpp"

namespace mvq {

// Finite probability vector over k = 1..k_max, exact (rational masses summing
// to 1) or float-backed (summing to 1 within 1e-12).
class Distribution {
  public:
    static Distribution exact(std::vector<Rational> masses) {
        Distribution d;
        d.exact_ = std::move(masses);
        d.is_exact_ = true;
        Rational s(0);
        for (const auto& m : d.exact_) {
            if (m < 0) throw std::invalid_argument("Distribution: negative mass");
            s += m;
        }
        if (s != 1) throw std::invalid_argument("Distribution: exact masses must sum to 1");
        return d;
    }

    static Distribution approximate(std::vector<double> masses, double tol = 1e-12) {
        Distribution d;
        d.floats_ = std::move(masses);
        d.is_exact_ = false;
        double s = 0;
        for (double m : d.floats_) {
            if (m < -tol) throw std::invalid_argument("Distribution: negative mass");
            s += m;
        }
        if (std::abs(s - 1.0) > tol)
            throw std::invalid_argument("Distribution: float masses must sum to 1");
        return d;
    }

    bool is_exact() const { return is_exact_; }
    int k_max() const {
        return static_cast<int>(is_exact_ ? exact_.size() : floats_.size());
    }

    // 1-based mass accessors; out-of-support k gives 0.
    double mass(int k) const {
        if (k < 1 || k > k_max()) return 0.0;
        return is_exact_ ? to_double(exact_[k - 1]) : floats_[k - 1];
    }
    Rational exact_mass(int k) const {
        if (!is_exact_) throw std::logic_error("Distribution: not exact");
        if (k < 1 || k > k_max()) return 0;
        return exact_[k - 1];
    }

    double mean() const {
        double m = 0;
        for (int k = 1; k <= k_max(); ++k) m += k * mass(k);
        return m;
    }

    bool operator==(const Distribution& o) const {
        return is_exact_ == o.is_exact_ && exact_ == o.exact_ && floats_ == o.floats_;
    }

  private:
    bool is_exact_ = true;
    std::vector<Rational> exact_;
    std::vector<double> floats_;
};

// Total variation distance; supports are aligned at k = 1.
inline double total_variation(const Distribution& a, const Distribution& b) {
    int kmax = std::max(a.k_max(), b.k_max());
    double s = 0;
    for (int k = 1; k <= kmax; ++k) s += std::abs(a.mass(k) - b.mass(k));
    return s / 2;
}

}  // namespace mvq

#endif
