#ifndef MVQ_EDGE_POLYNOMIAL_HPP
#define MVQ_EDGE_POLYNOMIAL_HPP

#include <map>
#include <vector>

#include "mvq/rational.hpp"

namespace mvq {

// Sparse polynomial with rational coefficients in one variable per edge.
// Exponent vectors all have length num_vars; zero coefficients are dropped.
class EdgePolynomial {
  public:
    explicit EdgePolynomial(int num_vars = 0) : num_vars_(num_vars) {}

    static EdgePolynomial constant(int num_vars, const Rational& c) {
        EdgePolynomial p(num_vars);
        p.add_term(std::vector<int>(num_vars, 0), c);
        return p;
    }

    int num_vars() const { return num_vars_; }
    const std::map<std::vector<int>, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    void add_term(const std::vector<int>& exps, const Rational& coeff) {
        if (static_cast<int>(exps.size()) != num_vars_)
            throw std::invalid_argument("EdgePolynomial: exponent arity mismatch");
        if (coeff == 0) return;
        auto [it, inserted] = terms_.emplace(exps, coeff);
        if (!inserted) {
            it->second += coeff;
            if (it->second == 0) terms_.erase(it);
        }
    }

    EdgePolynomial& operator*=(const Rational& r) {
        if (r == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& [e, c] : terms_) c *= r;
        return *this;
    }

    friend EdgePolynomial operator*(const EdgePolynomial& a, const EdgePolynomial& b) {
        if (a.num_vars_ != b.num_vars_)
            throw std::invalid_argument("EdgePolynomial: arity mismatch");
        EdgePolynomial out(a.num_vars_);
        std::vector<int> exps(a.num_vars_);
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) {
                for (int i = 0; i < a.num_vars_; ++i) exps[i] = ea[i] + eb[i];
                out.add_term(exps, ca * cb);
            }
        return out;
    }

    friend EdgePolynomial operator+(const EdgePolynomial& a, const EdgePolynomial& b) {
        if (a.num_vars_ != b.num_vars_)
            throw std::invalid_argument("EdgePolynomial: arity mismatch");
        EdgePolynomial out = a;
        for (const auto& [e, c] : b.terms_) out.add_term(e, c);
        return out;
    }

    // Multiply every monomial by the product of all variables.
    void shift_all_exponents() {
        std::map<std::vector<int>, Rational> shifted;
        for (auto& [e, c] : terms_) {
            std::vector<int> ne = e;
            for (int& x : ne) ++x;
            shifted.emplace(std::move(ne), c);
        }
        terms_ = std::move(shifted);
    }

    bool is_homogeneous(int degree) const {
        for (const auto& [e, c] : terms_) {
            int d = 0;
            for (int x : e) d += x;
            if (d != degree) return false;
        }
        return true;
    }

    bool operator==(const EdgePolynomial& o) const {
        return num_vars_ == o.num_vars_ && terms_ == o.terms_;
    }

  private:
    int num_vars_;
    std::map<std::vector<int>, Rational> terms_;
};

}  // namespace mvq

#endif
