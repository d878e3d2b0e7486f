#ifndef MVQ_PI_GRADED_HPP
#define MVQ_PI_GRADED_HPP

#include <map>
#include <optional>
#include <stdexcept>

#include "mvq/rational.hpp"

namespace mvq {

// Element of Q[pi^2], stored as a sparse map from the even grade 2j to the
// rational coefficient of pi^{2j}. Zero coefficients are never stored, so
// equality is structural.
class PiGraded {
  public:
    PiGraded() = default;
    PiGraded(const Rational& r) { set(0, r); }           // NOLINT(google-explicit-constructor)
    PiGraded(long n) { set(0, rational(n)); }            // NOLINT(google-explicit-constructor)

    static PiGraded monomial(int grade, const Rational& coeff) {
        PiGraded v;
        v.set(grade, coeff);
        return v;
    }

    static PiGraded from_map(std::map<int, Rational> coeffs) {
        for (auto it = coeffs.begin(); it != coeffs.end();) {
            check_grade(it->first);
            it = (it->second == 0) ? coeffs.erase(it) : std::next(it);
        }
        PiGraded v;
        v.coeffs_ = std::move(coeffs);
        return v;
    }

    bool is_zero() const { return coeffs_.empty(); }

    Rational coeff(int grade) const {
        auto it = coeffs_.find(grade);
        return it == coeffs_.end() ? Rational(0) : it->second;
    }

    const std::map<int, Rational>& coefficients() const { return coeffs_; }

    // Grade of the unique nonzero coefficient, if there is exactly one.
    std::optional<int> single_grade() const {
        if (coeffs_.size() != 1) return std::nullopt;
        return coeffs_.begin()->first;
    }

    PiGraded& operator+=(const PiGraded& o) {
        for (const auto& [g, c] : o.coeffs_) add(g, c);
        return *this;
    }
    PiGraded& operator-=(const PiGraded& o) {
        for (const auto& [g, c] : o.coeffs_) add(g, Rational(-c));
        return *this;
    }
    PiGraded& operator*=(const PiGraded& o) { return *this = *this * o; }
    PiGraded& operator*=(const Rational& r) {
        if (r == 0) {
            coeffs_.clear();
            return *this;
        }
        for (auto& [g, c] : coeffs_) c *= r;
        return *this;
    }

    friend PiGraded operator+(PiGraded a, const PiGraded& b) { return a += b; }
    friend PiGraded operator-(PiGraded a, const PiGraded& b) { return a -= b; }
    friend PiGraded operator*(const PiGraded& a, const PiGraded& b) {
        PiGraded r;
        for (const auto& [ga, ca] : a.coeffs_)
            for (const auto& [gb, cb] : b.coeffs_) r.add(ga + gb, ca * cb);
        return r;
    }
    friend PiGraded operator*(PiGraded a, const Rational& r) { return a *= r; }
    friend PiGraded operator*(const Rational& r, PiGraded a) { return a *= r; }

    PiGraded operator/(const Rational& r) const {
        if (r == 0) throw std::invalid_argument("PiGraded: division by zero");
        PiGraded out = *this;
        for (auto& [g, c] : out.coeffs_) c /= r;
        return out;
    }

    bool operator==(const PiGraded& o) const { return coeffs_ == o.coeffs_; }
    bool operator!=(const PiGraded& o) const { return !(*this == o); }

    // Exact ratio *this / o, defined when o = q * (*this) for a rational q.
    // Both values must be nonzero and share the same grade support.
    std::optional<Rational> exact_ratio(const PiGraded& o) const {
        if (o.is_zero()) return std::nullopt;
        if (is_zero()) return Rational(0);
        if (coeffs_.size() != o.coeffs_.size()) return std::nullopt;
        std::optional<Rational> ratio;
        auto it = coeffs_.begin();
        auto jt = o.coeffs_.begin();
        for (; it != coeffs_.end(); ++it, ++jt) {
            if (it->first != jt->first) return std::nullopt;
            Rational r = it->second / jt->second;
            if (ratio && *ratio != r) return std::nullopt;
            ratio = r;
        }
        return ratio;
    }

    double to_double() const {
        static const double kPi2 = 9.869604401089358;  // pi^2
        double acc = 0.0;
        for (const auto& [g, c] : coeffs_) {
            double p = 1.0;
            for (int j = 0; j < g / 2; ++j) p *= kPi2;
            acc += mvq::to_double(c) * p;
        }
        return acc;
    }

  private:
    void set(int grade, const Rational& c) {
        check_grade(grade);
        if (c != 0) coeffs_[grade] = c;
    }
    void add(int grade, const Rational& c) {
        check_grade(grade);
        auto it = coeffs_.find(grade);
        if (it == coeffs_.end()) {
            if (c != 0) coeffs_.emplace(grade, c);
            return;
        }
        it->second += c;
        if (it->second == 0) coeffs_.erase(it);
    }
    static void check_grade(int grade) {
        if (grade < 0 || grade % 2 != 0)
            throw std::invalid_argument("PiGraded: grade must be even and non-negative");
    }

    std::map<int, Rational> coeffs_;
};

}  // namespace mvq

#endif
