#ifndef MVQ_CORRELATORS_HPP
#define MVQ_CORRELATORS_HPP

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <string>
#include <vector>

#include "mvq/rational.hpp"

namespace mvq {

inline bool stable_pair(int g, int n) { return g >= 0 && n >= 0 && 2 * g - 2 + n > 0; }

// Key for <tau_{d_1}...tau_{d_n}>_g. Correlators are symmetric in the d_i, so
// indices are kept sorted descending.
struct CorrelatorKey {
    int genus = 0;
    std::vector<int> indices;

    CorrelatorKey() = default;
    CorrelatorKey(int g, std::vector<int> d) : genus(g), indices(std::move(d)) {
        std::sort(indices.begin(), indices.end(), std::greater<int>());
    }

    int n() const { return static_cast<int>(indices.size()); }
    int dimension() const { return 3 * genus - 3 + n(); }
    long index_sum() const {
        long s = 0;
        for (int d : indices) s += d;
        return s;
    }
    bool stable() const { return stable_pair(genus, n()); }
    bool in_dimension() const { return index_sum() == dimension(); }

    bool operator<(const CorrelatorKey& o) const {
        if (genus != o.genus) return genus < o.genus;
        return indices < o.indices;
    }
    bool operator==(const CorrelatorKey& o) const {
        return genus == o.genus && indices == o.indices;
    }
};

// Genus-zero closed form <tau_{d_1}...tau_{d_n}>_0 = (n-3)! / (d_1! ... d_n!).
inline Rational genus0_correlator(const std::vector<int>& d) {
    int n = static_cast<int>(d.size());
    if (n < 3) throw std::invalid_argument("genus0_correlator: needs n >= 3");
    long sum = 0;
    for (int v : d) {
        if (v < 0) throw std::invalid_argument("genus0_correlator: negative index");
        sum += v;
    }
    if (sum != n - 3) return 0;
    Integer den(1);
    for (int v : d) den *= factorial(v);
    return rational(factorial(n - 3), den);
}

class CorrelatorCache {
  public:
    static CorrelatorCache& instance() {
        static CorrelatorCache cache;
        return cache;
    }

    bool lookup(const CorrelatorKey& key, Rational* out) const {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = values_.find(key);
        if (it == values_.end()) return false;
        *out = it->second;
        return true;
    }

    void store(const CorrelatorKey& key, const Rational& value) {
        std::lock_guard<std::mutex> lock(mu_);
        values_.emplace(key, value);
    }

    std::size_t size() const {
        std::lock_guard<std::mutex> lock(mu_);
        return values_.size();
    }

    void clear() {
        std::lock_guard<std::mutex> lock(mu_);
        values_.clear();
    }

    std::map<CorrelatorKey, Rational> snapshot() const {
        std::lock_guard<std::mutex> lock(mu_);
        return values_;
    }

    // One record per line: g d1,...,dn numerator denominator.
    void save(const std::string& path) const {
        auto snap = snapshot();
        std::ofstream out(path);
        if (!out) throw std::runtime_error("correlator cache: cannot write " + path);
        for (const auto& [key, value] : snap) {
            out << key.genus << ' ';
            for (std::size_t i = 0; i < key.indices.size(); ++i) {
                if (i) out << ',';
                out << key.indices[i];
            }
            out << ' ' << value.get_num().get_str() << ' ' << value.get_den().get_str() << '\n';
        }
    }

    // Returns the number of records loaded. Loaded entries are spot-checked
    // afterwards by verify_cache_spot_checks below (called by the loader in
    // correlator.hpp to avoid a dependency cycle).
    std::size_t load_records(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw std::runtime_error("correlator cache: cannot read " + path);
        std::size_t count = 0;
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            std::istringstream ss(line);
            int g;
            std::string dlist, num, den;
            if (!(ss >> g >> dlist >> num >> den))
                throw std::runtime_error("correlator cache: malformed line: " + line);
            std::vector<int> d;
            std::istringstream ds(dlist);
            std::string tok;
            while (std::getline(ds, tok, ',')) d.push_back(std::stoi(tok));
            CorrelatorKey key(g, d);
            if (!key.stable() || !key.in_dimension())
                throw std::runtime_error("correlator cache: invalid key in line: " + line);
            store(key, rational(Integer(num), Integer(den)));
            ++count;
        }
        return count;
    }

  private:
    mutable std::mutex mu_;
    std::map<CorrelatorKey, Rational> values_;
};

namespace detail {

inline Rational correlator_impl(const CorrelatorKey& key);

inline Rational correlator_checked(int g, std::vector<int> d) {
    if (!stable_pair(g, static_cast<int>(d.size()))) return 0;
    CorrelatorKey key(g, std::move(d));
    if (!key.in_dimension()) return 0;
    return correlator_impl(key);
}

// Dijkgraaf-Verlinde-Verlinde recursion eliminating the largest index.
// Writing the key as <tau_{k+1} tau_{d_2}...tau_{d_n}>_g:
//
//   (2k+3)!! <tau_{k+1} R>_g =
//       sum_j [(2k+2d_j+1)!!/(2d_j-1)!!] <tau_{k+d_j} R\{d_j}>_g
//     + 1/2 sum_{a+b=k-1} (2a+1)!!(2b+1)!! [ <tau_a tau_b R>_{g-1}
//         + sum_{g'+g''=g} sum_{I ^ J = R} <tau_a I>_{g'} <tau_b J>_{g''} ]
//
// Anchors: genus 0 closed form and <tau_1>_1 = 1/24.
inline Rational correlator_impl(const CorrelatorKey& key) {
    const int g = key.genus;
    const int n = key.n();
    if (g == 0) return genus0_correlator(key.indices);
    if (g == 1 && n == 1) return rational(1, 24);  // <tau_1>_1

    auto& cache = CorrelatorCache::instance();
    Rational cached;
    if (cache.lookup(key, &cached)) return cached;

    const int k = key.indices[0] - 1;  // largest index is k+1 >= 1
    std::vector<int> rest(key.indices.begin() + 1, key.indices.end());
    const int m = static_cast<int>(rest.size());

    Rational acc(0);

    for (int j = 0; j < m; ++j) {
        Rational coeff = rational(double_factorial(2 * k + 2 * rest[j] + 1),
                                  double_factorial(2 * rest[j] - 1));
        std::vector<int> nd;
        nd.reserve(m);
        for (int i = 0; i < m; ++i) nd.push_back(i == j ? k + rest[j] : rest[i]);
        acc += coeff * correlator_checked(g, std::move(nd));
    }

    for (int a = 0; a <= k - 1; ++a) {
        const int b = k - 1 - a;
        Rational cab = rational(double_factorial(2 * a + 1) * double_factorial(2 * b + 1), 2);

        std::vector<int> nd;
        nd.reserve(m + 2);
        nd.push_back(a);
        nd.push_back(b);
        nd.insert(nd.end(), rest.begin(), rest.end());
        acc += cab * correlator_checked(g - 1, std::move(nd));

        for (int g1 = 0; g1 <= g; ++g1) {
            const int g2 = g - g1;
            for (unsigned mask = 0; mask < (1u << m); ++mask) {
                std::vector<int> left{a}, right{b};
                for (int i = 0; i < m; ++i)
                    ((mask >> i) & 1u ? left : right).push_back(rest[i]);
                if (!stable_pair(g1, static_cast<int>(left.size())) ||
                    !stable_pair(g2, static_cast<int>(right.size())))
                    continue;
                Rational lv = correlator_checked(g1, std::move(left));
                if (lv == 0) continue;
                acc += cab * lv * correlator_checked(g2, std::move(right));
            }
        }
    }

    Rational result = acc / Rational(double_factorial(2 * k + 3));
    cache.store(key, result);
    return result;
}

}  // namespace detail

// Exact Witten-Kontsevich correlator. Returns 0 on dimension mismatch; throws
// for unstable (g,n).
inline Rational correlator(const CorrelatorKey& key) {
    if (!key.stable()) throw std::invalid_argument("correlator: unstable (g,n)");
    for (int d : key.indices)
        if (d < 0) throw std::invalid_argument("correlator: negative index");
    if (!key.in_dimension()) return 0;
    return detail::correlator_impl(key);
}

inline Rational correlator(int g, const std::vector<int>& d) {
    return correlator(CorrelatorKey(g, d));
}

// Relative deviation epsilon(d) defined through
//   <tau_d> = (6g-5+2n)!! / prod (2d_i+1)!! * 1/(g! 24^g) * (1 + epsilon(d)).
inline Rational correlator_epsilon(const CorrelatorKey& key) {
    if (!key.stable()) throw std::invalid_argument("epsilon: unstable (g,n)");
    if (!key.in_dimension()) throw std::invalid_argument("epsilon: index sum != 3g-3+n");
    const int g = key.genus;
    const int n = key.n();
    Integer num = factorial(g) * int_pow(24, g);
    for (int d : key.indices) num *= double_factorial(2 * d + 1);
    return correlator(key) * rational(num, double_factorial(6 * g - 5 + 2 * n)) - 1;
}

// String-equation check: <tau_0 d> == sum_j <.. d_j - 1 ..>.
inline bool string_equation_holds(int g, const std::vector<int>& d) {
    std::vector<int> with0 = d;
    with0.push_back(0);
    Rational lhs = correlator(g, with0);
    Rational rhs(0);
    for (std::size_t j = 0; j < d.size(); ++j) {
        if (d[j] == 0) continue;
        std::vector<int> red = d;
        --red[j];
        rhs += correlator(g, red);
    }
    return lhs == rhs;
}

// Dilaton-equation check: <tau_1 d> == (2g-2+n) <d>.
inline bool dilaton_equation_holds(int g, const std::vector<int>& d) {
    std::vector<int> with1 = d;
    with1.push_back(1);
    Rational lhs = correlator(g, with1);
    Rational rhs = Rational(2 * g - 2 + static_cast<long>(d.size())) * correlator(g, d);
    return lhs == rhs;
}

// Loads a cache file and re-verifies a sample of records through the string
// and dilaton equations. Throws on any inconsistency.
inline std::size_t load_correlator_cache(const std::string& path, std::size_t max_checks = 32) {
    auto& cache = CorrelatorCache::instance();
    std::size_t loaded = cache.load_records(path);
    std::size_t checked = 0;
    for (const auto& [key, value] : cache.snapshot()) {
        if (checked >= max_checks) break;
        bool has0 = !key.indices.empty() && key.indices.back() == 0;
        bool has1 = std::find(key.indices.begin(), key.indices.end(), 1) != key.indices.end();
        std::vector<int> reduced = key.indices;
        if (has0) {
            reduced.pop_back();  // sorted descending, 0 is last
            if (!reduced.empty() && !string_equation_holds(key.genus, reduced))
                throw std::runtime_error("correlator cache: string equation failed on load");
            ++checked;
        } else if (has1) {
            reduced.erase(std::find(reduced.begin(), reduced.end(), 1));
            if (!reduced.empty() && stable_pair(key.genus, static_cast<int>(reduced.size())) &&
                !dilaton_equation_holds(key.genus, reduced))
                throw std::runtime_error("correlator cache: dilaton equation failed on load");
            ++checked;
        }
    }
    return loaded;
}

}  // namespace mvq

#endif
