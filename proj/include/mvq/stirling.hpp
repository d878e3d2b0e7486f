#ifndef MVQ_STIRLING_HPP
#define MVQ_STIRLING_HPP

#include <mutex>
#include <vector>

#include "mvq/rational.hpp"

namespace mvq {

namespace detail {

// Triangular memo table grown row by row from a recurrence
// row[n][k] = f(n, k, previous row).
class StirlingTable {
  public:
    enum Kind { kSecond, kFirstUnsigned };

    explicit StirlingTable(Kind kind) : kind_(kind) { rows_.push_back({Integer(1)}); }

    Integer get(int n, int k) {
        std::lock_guard<std::mutex> lock(mu_);
        while (static_cast<int>(rows_.size()) <= n) {
            int m = static_cast<int>(rows_.size());
            const auto& prev = rows_.back();
            std::vector<Integer> row(m + 1);
            for (int j = 1; j <= m; ++j) {
                Integer carry = (j < m) ? prev[j] : Integer(0);
                Integer keep = (j - 1 < static_cast<int>(prev.size())) ? prev[j - 1] : Integer(0);
                if (kind_ == kSecond)
                    row[j] = Integer(j) * carry + keep;
                else
                    row[j] = Integer(m - 1) * carry + keep;
            }
            rows_.push_back(std::move(row));
        }
        return rows_[n][k];
    }

  private:
    Kind kind_;
    std::vector<std::vector<Integer>> rows_;
    std::mutex mu_;
};

}  // namespace detail

// Stirling number of the second kind S(n,k); S(0,0) = 1, S(n,0) = 0 for n >= 1,
// k > n gives 0.
inline Integer stirling_second(int n, int k) {
    if (n < 0 || k < 0) throw std::invalid_argument("stirling: negative argument");
    if (k > n) return 0;
    if (n == 0) return k == 0 ? 1 : 0;
    if (k == 0) return 0;
    static detail::StirlingTable table(detail::StirlingTable::kSecond);
    return table.get(n, k);
}

// Unsigned Stirling number of the first kind c(n,k): permutations of n elements
// with k cycles. Recurrence c(n+1,k) = n c(n,k) + c(n,k-1).
inline Integer stirling_first_unsigned(int n, int k) {
    if (n < 0 || k < 0) throw std::invalid_argument("stirling: negative argument");
    if (k > n) return 0;
    if (n == 0) return k == 0 ? 1 : 0;
    if (k == 0) return 0;
    static detail::StirlingTable table(detail::StirlingTable::kFirstUnsigned);
    return table.get(n, k);
}

}  // namespace mvq

#endif
