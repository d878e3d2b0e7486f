// mvq: exact Masur-Veech volumes, multicurve component statistics and
// weighted-permutation approximations, as batch CSV/JSON tables.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "mvq/mvq.hpp"

using json = nlohmann::ordered_json;
using namespace mvq;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;
constexpr int kExitInvariant = 4;

std::string decimal(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string decimal(const Rational& q) { return decimal(to_double(q)); }

void write_file(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << content;
}

Bands parse_bands(long m) { return m <= 0 ? Bands::infinite() : Bands::finite(m); }

WeightSequence make_weights(long m, const std::string& alpha, const std::string& theta_list) {
    if (!theta_list.empty()) {
        std::vector<PiGraded> thetas;
        std::istringstream ss(theta_list);
        std::string tok;
        while (std::getline(ss, tok, ',')) thetas.push_back(PiGraded(parse_fraction(tok)));
        return WeightSequence::custom(std::move(thetas));
    }
    return WeightSequence::zeta_kind(parse_bands(m), parse_fraction(alpha));
}

// ---------------------------------------------------------------- volumes --

json volume_breakdown_json(const VolumeBreakdown& b) {
    json out;
    out["g"] = b.g;
    out["n"] = b.n;
    const int grade = 6 * b.g - 6 + 2 * b.n;
    out["total_pi_power"] = grade;
    out["total_coeff"] = to_fraction_string(b.total.coeff(grade));
    json graphs = json::array();
    for (const auto& [graph, vol] : b.by_graph) {
        json entry;
        entry["graph"] = graph_to_line(graph);
        entry["vol_coeff"] = to_fraction_string(vol.coeff(grade));
        graphs.push_back(std::move(entry));
    }
    out["by_graph"] = std::move(graphs);
    json ups_v = json::object(), ups_ve = json::object(), ups_vst = json::object();
    for (const auto& [v, val] : b.upsilon_v)
        ups_v[std::to_string(v)] = to_fraction_string(val.coeff(grade));
    for (const auto& [key, val] : b.upsilon_ve)
        ups_ve[std::to_string(key.first) + "," + std::to_string(key.second)] =
            to_fraction_string(val.coeff(grade));
    for (const auto& [key, val] : b.upsilon_vst)
        ups_vst[std::to_string(std::get<0>(key)) + "," + std::to_string(std::get<1>(key)) + "," +
                std::to_string(std::get<2>(key))] = to_fraction_string(val.coeff(grade));
    out["upsilon"] = json::object();
    out["upsilon"]["V"] = std::move(ups_v);
    out["upsilon"]["V_E"] = std::move(ups_ve);
    out["upsilon"]["V_S_T"] = std::move(ups_vst);
    Distribution pg = component_distribution(b);
    json masses = json::array();
    for (int k = 1; k <= pg.k_max(); ++k) masses.push_back(to_fraction_string(pg.exact_mass(k)));
    out["p_g"] = std::move(masses);
    return out;
}

int cmd_volumes(int g, int n, std::size_t budget, const std::string& output) {
    auto breakdown = masur_veech_volume(g, n, budget);
    write_file(output, volume_breakdown_json(breakdown).dump(2) + "\n");
    return kExitOk;
}

int cmd_graphs(int g, int n, std::size_t budget, const std::string& output) {
    auto graphs = enumerate_stable_graphs(g, n, budget);
    std::ostringstream os;
    for (const auto& graph : graphs) os << graph_to_line(graph) << '\n';
    write_file(output, os.str());
    return kExitOk;
}

// ----------------------------------------------------------- distribution --

int cmd_distribution(int g, bool approx_only, int k_max, std::size_t budget,
                     const std::string& output) {
    if (g < 2) throw std::invalid_argument("distribution: needs g >= 2");
    const int n = 3 * g - 3;
    const auto weights = WeightSequence::zeta_kind(Bands::infinite(), rational(1, 2));
    double lambda = poisson_parameter(n, Bands::infinite(), 0.5);
    if (k_max <= 0) k_max = std::min(n, 24);

    std::vector<Rational> p_exact;
    if (!approx_only) {
        Distribution pg = component_distribution(g, budget);
        for (int k = 1; k <= pg.k_max(); ++k) p_exact.push_back(pg.exact_mass(k));
    }
    Distribution q = (n <= 300) ? q_distribution(n, weights).distribution
                                : q_distribution_double(n, weights);
    auto u = u_coefficients(lambda, 0.5, k_max + 1);

    std::ostringstream os;
    os << "k,p_g,p_g_fraction,q_perm,u_poisson_gamma,llt\n";
    for (int k = 1; k <= k_max; ++k) {
        os << k << ',';
        if (!approx_only && k <= static_cast<int>(p_exact.size()))
            os << decimal(p_exact[k - 1]) << ',' << to_fraction_string(p_exact[k - 1]);
        else
            os << ',';
        os << ',' << decimal(q.mass(k)) << ',' << decimal(u[k]) << ','
           << decimal(llt_estimate(n, Bands::infinite(), 0.5, k - 1)) << '\n';
    }
    write_file(output, os.str());
    return kExitOk;
}

// -------------------------------------------------------------------- perm --

int cmd_perm(int n, long m, const std::string& alpha, const std::string& theta_list,
             const std::string& mode, const std::string& output) {
    if (n < 1) throw std::invalid_argument("perm: needs n >= 1");
    auto weights = make_weights(m, alpha, theta_list);
    bool exact = (mode == "exact") || (mode.empty() && n <= 300);

    std::ostringstream os;
    os << "quantity,k,value,fraction\n";
    Distribution q = exact ? q_distribution(n, weights).distribution
                           : q_distribution_double(n, weights);
    for (int k = 1; k <= q.k_max(); ++k) {
        os << "q," << k << ',' << decimal(q.mass(k)) << ',';
        if (q.is_exact()) os << to_fraction_string(q.exact_mass(k));
        os << '\n';
    }
    auto kappa = exact_cumulants(q, 4);
    for (int i = 1; i <= 4; ++i)
        os << "kappa_exact_" << i << ",," << decimal(kappa[i - 1]) << ",\n";
    if (theta_list.empty() && n >= 2) {
        double a = to_double(parse_fraction(alpha));
        auto ka = asymptotic_cumulants(n, parse_bands(m), a, 4);
        for (int i = 1; i <= 4; ++i)
            os << "kappa_asymptotic_" << i << ",," << decimal(ka[i - 1]) << ",\n";
        double lambda = poisson_parameter(n, parse_bands(m), a);
        double dev = mod_poisson_deviation(q, lambda, a, {0.2, 0.6, 1.0, 1.4, 1.8});
        os << "mod_poisson_deviation,," << decimal(dev) << ",\n";
    }
    write_file(output, os.str());
    return kExitOk;
}

// ------------------------------------------------------------------ sample --

int cmd_sample(int n, long m, const std::string& alpha, long samples, std::uint64_t seed,
               const std::string& output) {
    if (n < 1 || samples < 1) throw std::invalid_argument("sample: needs n >= 1, samples >= 1");
    auto weights = WeightSequence::zeta_kind(parse_bands(m), parse_fraction(alpha));
    auto totals = weight_totals_double(n, weights);
    for (double w : totals)
        if (!std::isfinite(w)) throw BudgetExceeded("sample: weight totals overflow doubles");

    Distribution exact = (n <= 300) ? q_distribution(n, weights).distribution
                                    : q_distribution_double(n, weights);
    Distribution empirical = sample_cycle_count_distribution(n, weights, seed, samples);

    std::ostringstream os;
    os << "k,q_exact,q_empirical,abs_diff\n";
    int kmax = std::max(exact.k_max(), empirical.k_max());
    for (int k = 1; k <= kmax; ++k) {
        double qe = exact.mass(k), qs = empirical.mass(k);
        os << k << ',' << decimal(qe) << ',' << decimal(qs) << ',' << decimal(std::abs(qe - qs))
           << '\n';
    }
    write_file(output, os.str());
    std::cout << "tv_distance," << decimal(total_variation(exact, empirical)) << '\n';
    return kExitOk;
}

// ------------------------------------------------------------------ approx --

int cmd_approx(double lambda, const std::string& alpha_str, long n, long m, int k_max,
               const std::string& output) {
    double alpha = to_double(parse_fraction(alpha_str));
    if (lambda <= 0 && n >= 2) lambda = poisson_parameter(n, parse_bands(m), alpha);
    if (lambda <= 0) throw std::invalid_argument("approx: provide --lambda or --n");
    std::ostringstream os;
    os << "kind,arg,value\n";
    auto u = u_coefficients(lambda, alpha, k_max);
    for (int k = 1; k <= k_max; ++k) os << "u," << k << ',' << decimal(u[k]) << '\n';
    if (n >= 2) {
        for (int k = 1; k <= k_max; ++k)
            os << "llt," << k << ',' << decimal(llt_estimate(n, parse_bands(m), alpha, k - 1))
               << '\n';
        for (double x : {0.25, 0.5, 0.75}) {
            double rounded = std::max(1.0, std::floor(x * lambda)) / lambda;
            os << "tail_lower," << decimal(rounded) << ','
               << decimal(tail_estimate(n, parse_bands(m), alpha, rounded, TailSide::kLower))
               << '\n';
        }
        for (double x : {1.5, 2.0, 3.0}) {
            double rounded = std::ceil(x * lambda) / lambda;
            os << "tail_upper," << decimal(rounded) << ','
               << decimal(tail_estimate(n, parse_bands(m), alpha, rounded, TailSide::kUpper))
               << '\n';
        }
    }
    for (double x : {0.5, 1.0, 1.5, 2.0})
        os << "shift," << decimal(x) << ',' << decimal(shift_sigma(x)) << '\n';
    write_file(output, os.str());
    return kExitOk;
}

// ------------------------------------------------------------------- check --

void require(bool ok, const std::string& what) {
    if (!ok) throw std::logic_error("invariant violated: " + what);
}

int check_invariants() {
    // exact core
    require(bernoulli(12) == rational(-691, 2730), "bernoulli(12)");
    require(zeta_even(6) == PiGraded::monomial(6, rational(1, 945)), "zeta(6)");
    for (int j = 1; j <= 30; ++j) require(zeta_even_coeff(2 * j) > 0, "zeta coefficient positivity");
    for (int n = 1; n < 40; ++n)
        for (int k = 1; k <= n; ++k)
            require(stirling_second(n + 1, k) ==
                        Integer(k) * stirling_second(n, k) + stirling_second(n, k - 1),
                    "Stirling recurrence");
    require(Integer(static_cast<long>(compositions(5, 3).size())) == count_compositions(5, 3),
            "composition count");

    // correlators
    require(correlator(1, {1}) == rational(1, 24), "<tau_1>_1");
    require(correlator(2, {4}) == rational(1, 1152), "<tau_4>_2");
    for (int g = 0; g <= 2; ++g)
        for (int n = 1; n <= 3; ++n) {
            if (!stable_pair(g, n)) continue;
            int dim = 3 * g - 3 + n;
            for_each_partition(dim, n, [&](const std::vector<int>& parts) {
                std::vector<int> d(parts);
                d.resize(n, 0);
                require(string_equation_holds(g, d), "string equation");
                require(dilaton_equation_holds(g, d), "dilaton equation");
            });
        }

    // stable graphs and volumes
    auto b2 = masur_veech_volume(2, 0);
    require(b2.by_graph.size() == 6, "genus-2 census");
    Distribution p2 = component_distribution(b2);
    require(p2.exact_mass(1) == rational(7, 27) && p2.exact_mass(2) == rational(5, 9) &&
                p2.exact_mass(3) == rational(5, 27),
            "p_2 distribution");
    require(separating_probability(b2) == rational(67, 315), "separating probability");
    for (int g = 2; g <= 3; ++g)
        for (int k = 1; k <= g; ++k)
            require(single_vertex_contribution(g, k) == single_vertex_contribution_direct(g, k),
                    "single-vertex fast/slow identity");

    // permutation statistics
    auto uniform = WeightSequence::zeta_kind(Bands::finite(1), 1);
    auto half = WeightSequence::zeta_kind(Bands::infinite(), rational(1, 2));
    for (int n = 1; n <= 5; ++n) {
        require(q_distribution(n, uniform).distribution == brute_force_q(n, uniform).distribution,
                "q oracle (uniform)");
        require(q_distribution(n, half).distribution == brute_force_q(n, half).distribution,
                "q oracle (zeta/2)");
    }

    // asymptotics
    const auto& nc = NumericConstants::get();
    for (int mm = 1; mm <= 5; ++mm) {
        require(std::abs(polygamma(mm, 1.0) - nc.psi_at_1(mm)) <= 1e-12 * std::abs(nc.psi_at_1(mm)),
                "polygamma identity at 1");
        require(std::abs(polygamma(mm, 0.5) - nc.psi_at_half(mm)) <=
                    1e-12 * std::abs(nc.psi_at_half(mm)),
                "polygamma identity at 1/2");
    }
    require(poisson_moment(4, Rational(2)) == 94, "Poisson moment table");
    for (double lambda : {1.0, 5.0, 20.0})
        for (double x : {1.0, 2.0, 3.0, 4.0})
            for (int n : {0, 1, 2}) {
                auto tb = poisson_tail_bound(lambda, x, n);
                require(tb.lhs <= tb.rhs * (1 + 1e-12), "Poisson tail bound");
            }
    std::cout << "all invariant suites passed\n";
    return kExitOk;
}

int check_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("check: cannot read " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    std::string content = buffer.str();

    if (!content.empty() && content[0] == '{') {
        json doc = json::parse(content);
        int g = doc.at("g"), n = doc.at("n");
        int grade = doc.at("total_pi_power");
        require(grade == 6 * g - 6 + 2 * n, "volume json: grade");
        Rational total = parse_fraction(doc.at("total_coeff"));
        Rational sum(0);
        for (const auto& entry : doc.at("by_graph")) {
            StableGraph graph = graph_from_line(entry.at("graph"));
            require(graph.total_genus() == g && graph.num_legs() == n, "volume json: graph type");
            sum += parse_fraction(entry.at("vol_coeff"));
        }
        require(sum == total, "volume json: by_graph sums to total");
        Rational ups(0);
        for (const auto& [key, val] : doc.at("upsilon").at("V").items())
            ups += parse_fraction(val.get<std::string>());
        require(ups == total, "volume json: upsilon V sums to total");
        Rational pg(0);
        for (const auto& val : doc.at("p_g")) pg += parse_fraction(val.get<std::string>());
        require(pg == 1, "volume json: p_g normalization");
        std::cout << "volume json OK: " << path << "\n";
        return kExitOk;
    }

    // CSV: header plus rows; probability columns must lie in [0,1] and sum
    // to at most 1
    std::istringstream ss(content);
    std::string header;
    if (!std::getline(ss, header)) throw std::invalid_argument("check: empty file");
    std::vector<std::string> cols;
    {
        std::istringstream hs(header);
        std::string c;
        while (std::getline(hs, c, ',')) cols.push_back(c);
    }
    std::vector<double> sums(cols.size(), 0.0);
    std::vector<bool> is_prob(cols.size(), false);
    for (std::size_t i = 0; i < cols.size(); ++i)
        is_prob[i] = cols[i] == "p_g" || cols[i] == "q_perm" || cols[i] == "q_exact" ||
                     cols[i] == "q_empirical";
    std::string line;
    long rows = 0;
    while (std::getline(ss, line)) {
        if (line.empty()) continue;
        ++rows;
        std::istringstream ls(line);
        std::string cell;
        std::size_t idx = 0;
        while (std::getline(ls, cell, ',') && idx < cols.size()) {
            if (is_prob[idx] && !cell.empty()) {
                double v = std::stod(cell);
                require(v >= -1e-12 && v <= 1 + 1e-12, "csv: probability in [0,1]");
                sums[idx] += v;
            }
            ++idx;
        }
    }
    require(rows > 0, "csv: has data rows");
    for (std::size_t i = 0; i < cols.size(); ++i)
        if (is_prob[i] && sums[i] > 0)
            require(sums[i] <= 1 + 1e-9, "csv: probability column sums to at most 1");
    std::cout << "csv OK: " << path << " (" << rows << " rows)\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact Masur-Veech volumes and multicurve statistics"};
    app.require_subcommand(1);

    int g = 2, n_legs = 0, perm_n = 1, k_max = 0;
    long m = 0, samples = 10000;
    std::size_t budget = 1000000;
    double lambda = 0;
    std::uint64_t seed = 0;
    bool approx_only = false;
    std::string output, alpha = "1/2", theta_list, mode;

    auto* volumes = app.add_subcommand("volumes", "Masur-Veech volume breakdown (JSON)");
    volumes->add_option("--g", g, "genus")->required();
    volumes->add_option("--n", n_legs, "number of marked points");
    volumes->add_option("--budget", budget, "maximum number of stable graphs");
    volumes->add_option("--output,-o", output, "output path (default stdout)");

    auto* graphs = app.add_subcommand("graphs", "list stable graphs, one per line");
    graphs->add_option("--g", g, "genus")->required();
    graphs->add_option("--n", n_legs, "number of marked points");
    graphs->add_option("--budget", budget, "maximum number of stable graphs");
    graphs->add_option("--output,-o", output, "output path (default stdout)");

    auto* distribution = app.add_subcommand("distribution", "p_g with approximation columns (CSV)");
    distribution->add_option("--g", g, "genus")->required();
    distribution->add_flag("--approx-only", approx_only, "skip the exact p_g columns");
    distribution->add_option("--k-max", k_max, "number of rows");
    distribution->add_option("--budget", budget, "maximum number of stable graphs");
    distribution->add_option("--output,-o", output, "output path (default stdout)");

    auto* perm = app.add_subcommand("perm", "cycle-count law of the weighted measure (CSV)");
    perm->add_option("--n", perm_n, "number of permuted elements")->required();
    perm->add_option("--m", m, "band bound; 0 or negative = infinity");
    perm->add_option("--alpha", alpha, "weight scale (rational, e.g. 1/2)");
    perm->add_option("--theta", theta_list, "custom comma-separated rational weights");
    perm->add_option("--mode", mode, "exact|float (default: exact for n <= 300)");
    perm->add_option("--output,-o", output, "output path (default stdout)");

    auto* sample = app.add_subcommand("sample", "sampler vs exact law (CSV)");
    sample->add_option("--n", perm_n, "number of permuted elements")->required();
    sample->add_option("--m", m, "band bound; 0 or negative = infinity");
    sample->add_option("--alpha", alpha, "weight scale (rational)");
    sample->add_option("--samples", samples, "number of draws");
    sample->add_option("--seed", seed, "RNG seed")->required();
    sample->add_option("--output,-o", output, "output path (default stdout)");

    auto* approx = app.add_subcommand("approx", "u / LLT / tail approximation tables (CSV)");
    approx->add_option("--lambda", lambda, "Poisson parameter (or derive from --n)");
    approx->add_option("--n", perm_n, "derive lambda = alpha log((2m/(m+1)) n)");
    approx->add_option("--m", m, "band bound; 0 or negative = infinity");
    approx->add_option("--alpha", alpha, "weight scale (rational)");
    approx->add_option("--k-max", k_max, "number of u/llt rows");
    approx->add_option("--output,-o", output, "output path (default stdout)");

    auto* check = app.add_subcommand("check", "run invariant suites, or validate an output file");
    std::string check_path;
    check->add_option("--file", check_path, "emitted CSV/JSON file to re-verify");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    const char* cache_path = std::getenv("MVQ_CORRELATOR_CACHE");
    try {
        if (cache_path && *cache_path && std::filesystem::exists(cache_path))
            load_correlator_cache(cache_path);

        int rc = kExitUsage;
        if (volumes->parsed())
            rc = cmd_volumes(g, n_legs, budget, output);
        else if (graphs->parsed())
            rc = cmd_graphs(g, n_legs, budget, output);
        else if (distribution->parsed())
            rc = cmd_distribution(g, approx_only, k_max, budget, output);
        else if (perm->parsed())
            rc = cmd_perm(perm_n, m, alpha, theta_list, mode, output);
        else if (sample->parsed())
            rc = cmd_sample(perm_n, m, alpha, samples, seed, output);
        else if (approx->parsed())
            rc = cmd_approx(lambda, alpha, perm_n, m, k_max > 0 ? k_max : 12, output);
        else if (check->parsed())
            rc = check_path.empty() ? check_invariants() : check_file(check_path);

        if (cache_path && *cache_path && rc == kExitOk && CorrelatorCache::instance().size() > 0)
            CorrelatorCache::instance().save(cache_path);
        return rc;
    } catch (const BudgetExceeded& e) {
        std::cerr << "resource budget exceeded: " << e.what() << "\n";
        return kExitBudget;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid parameters: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::logic_error& e) {
        std::cerr << "internal invariant violation: " << e.what() << "\n";
        return kExitInvariant;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}
