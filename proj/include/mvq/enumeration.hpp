#ifndef MVQ_ENUMERATION_HPP
#define MVQ_ENUMERATION_HPP

#include <functional>
#include <vector>

#include "mvq/rational.hpp"

namespace mvq {

// Nonnegative compositions of `total` into exactly `parts` parts, visited in
// lexicographic ascending order: (0,...,0,total) first, (total,0,...,0) last.
template <class Fn>
void for_each_composition(int total, int parts, Fn&& fn) {
    if (total < 0 || parts < 1) throw std::invalid_argument("compositions: bad arguments");
    std::vector<int> c(parts, 0);
    c[parts - 1] = total;
    for (;;) {
        fn(c);
        int last_pos = -1;
        for (int j = parts - 1; j >= 0; --j)
            if (c[j] > 0) {
                last_pos = j;
                break;
            }
        if (last_pos <= 0) break;
        int i = last_pos - 1;
        int rem = 0;
        for (int j = i + 1; j < parts; ++j) {
            rem += c[j];
            c[j] = 0;
        }
        ++c[i];
        c[parts - 1] = rem - 1;
    }
}

inline std::vector<std::vector<int>> compositions(int total, int parts) {
    std::vector<std::vector<int>> out;
    for_each_composition(total, parts, [&](const std::vector<int>& c) { out.push_back(c); });
    return out;
}

inline Integer count_compositions(int total, int parts) {
    return binomial(total + parts - 1, parts - 1);
}

namespace detail {
template <class Fn>
void partitions_rec(int total, int max_part, int slots_left, std::vector<int>& acc, Fn& fn) {
    if (total == 0) {
        fn(acc);
        return;
    }
    if (slots_left == 0) return;
    int hi = std::min(total, max_part);
    // smallest admissible part so the rest still fits into slots_left parts
    int lo = (total + slots_left - 1) / slots_left;
    for (int p = hi; p >= lo; --p) {
        acc.push_back(p);
        partitions_rec(total - p, p, slots_left - 1, acc, fn);
        acc.pop_back();
    }
}
}  // namespace detail

// Partitions of `total` into at most `max_parts` positive weakly-decreasing
// parts, visited in lexicographic descending order: (total) first.
template <class Fn>
void for_each_partition(int total, int max_parts, Fn&& fn) {
    if (total < 0 || max_parts < 1) throw std::invalid_argument("partitions: bad arguments");
    std::vector<int> acc;
    if (total == 0) {
        fn(acc);  // the empty partition
        return;
    }
    detail::partitions_rec(total, total, max_parts, acc, fn);
}

inline std::vector<std::vector<int>> partitions(int total, int max_parts) {
    std::vector<std::vector<int>> out;
    for_each_partition(total, max_parts, [&](const std::vector<int>& p) { out.push_back(p); });
    return out;
}

}  // namespace mvq

#endif
