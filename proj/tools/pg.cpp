// periodgram command-line front end: exact Mellin integrals, Gram
// determinant tables, Fekete maximization, diameter bounds, and Minkowski
// small-form extraction.

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>

#include "periodgram/json_io.hpp"
#include "periodgram/quadrature.hpp"

using namespace periodgram;

namespace {

struct RunConfig {
    int precision = 50;
    int workers = 1;
    uint64_t seed = 1;
    long exact_limit = 40;
    bool json = false;
    bool csv = false;
    std::string cache;
    std::string output;
};

void emit(const RunConfig& cfg, const std::string& text) {
    if (cfg.output.empty()) {
        std::cout << text << "\n";
    } else {
        std::ofstream out(cfg.output, std::ios::trunc);
        if (!out) throw Error("cannot write output file " + cfg.output);
        out << text << "\n";
    }
}

Exp5 parse_exponents(const std::string& arg) {
    Exp5 s{};
    std::istringstream is(arg);
    std::string tok;
    int i = 0;
    while (std::getline(is, tok, ',')) {
        if (i >= 5) throw BadInput("expected five comma-separated exponents");
        try {
            s[static_cast<size_t>(i++)] = std::stol(tok);
        } catch (const std::exception&) {
            throw BadInput("exponent '" + tok + "' is not an integer");
        }
    }
    if (i != 5) throw BadInput("expected five comma-separated exponents");
    for (long v : s)
        if (v < 0) throw BadInput("exponents must be non-negative");
    return s;
}

Family parse_family(const std::string& name) {
    try {
        return family_from_name(name);
    } catch (const Error& e) {
        throw BadInput(e.what());
    }
}

int cmd_integral(const RunConfig& cfg, const std::string& s_arg, bool with_oracle) {
    Exp5 s = parse_exponents(s_arg);
    LinearForm f = mellin_integral(s);
    Json j;
    j["s"] = s;
    j["const_part"] = to_string(f.const_part);
    j["xi_part"] = to_string(f.xi_part);
    j["numeric"] = to_json(f.numeric(cfg.precision));
    if (with_oracle) {
        long total = 0;
        for (long v : s) total += v;
        if (total <= 12) j["oracle"] = quad_oracle(s, 1e-10);
    }
    emit(cfg, j.dump(2));
    return 0;
}

int cmd_table(const RunConfig& cfg, const std::string& family_arg, long n_max) {
    Family family = parse_family(family_arg);
    long n0 = family == Family::two_param || family == Family::two_copies ? 2 : 1;
    bool as_json = cfg.json && !cfg.csv;
    Json rows = Json::array();
    std::ostringstream csv;
    csv << table_csv_header() << "\n";
    for (long n = n0; n <= n_max; ++n) {
        try {
            GramReport r = report(family, n, cfg.precision, cfg.exact_limit, cfg.workers);
            if (as_json)
                rows.push_back(to_json(r));
            else
                csv << table_csv_row(r) << "\n";
        } catch (const Error& e) {
            if (as_json)
                rows.push_back(Json{{"n", n}, {"error", e.what()}});
            else
                csv << n << ",error," << e.what() << "\n";
        }
    }
    emit(cfg, as_json ? rows.dump(2) : csv.str().substr(0, csv.str().size() - 1));
    return 0;
}

int cmd_gram(const RunConfig& cfg, const std::string& family_arg, long n, bool force_exact) {
    Family family = parse_family(family_arg);
    long limit = cfg.exact_limit;
    if (force_exact) {
        GramMatrix g = build_gram(family, n);
        if (g.rank() > limit)
            throw Error("gram --exact: rank " + std::to_string(g.rank()) +
                        " exceeds --exact-limit " + std::to_string(limit));
    }
    GramReport r = report(family, n, cfg.precision, limit, cfg.workers);
    emit(cfg, to_json(r).dump(2));
    return 0;
}

int cmd_fekete(const RunConfig& cfg, const std::string& family_arg, long n,
               const std::string& region_arg, long rank_1d, int restarts, int sweeps) {
    ModuleBasis basis;
    Region region = Region::interval(0, 1);
    if (region_arg == "image") {
        Family family = parse_family(family_arg);
        if (family != Family::two_param)
            throw BadInput("fekete --region image expects --family two_param");
        basis = two_param_basis(n);
        region = Region::two_param_image();
    } else if (region_arg == "interval") {
        basis = rectangular_basis({rank_1d});
        region = Region::interval(0, 1);
    } else if (region_arg == "triangle") {
        basis = homogeneous_basis(n, 2);
        region = Region::triangle({0, 0}, {1, 0}, {0, 1});
    } else {
        throw BadInput("fekete: unknown region '" + region_arg + "'");
    }
    FeketeResult r = fekete_maximize(basis, region, restarts, sweeps, cfg.seed, cfg.workers);
    Json j = to_json(r);
    j["region"] = region_arg;
    j["rank"] = basis.rank();
    j["e_n"] = basis.exponent_value.get_str();
    j["seed"] = cfg.seed;
    emit(cfg, j.dump(2));
    return 0;
}

int cmd_bounds(const RunConfig& cfg, const std::string& which, double eps, long r, long w) {
    Json j;
    if (which == "tau_eps" || which == "tau-eps") {
        TauEpsBounds b = tau_eps_bounds(eps, cfg.precision);
        j["eps"] = eps;
        j["naive"] = to_json(b.naive);
        j["rect_cube_root"] = to_json(b.rect_cube_root);
        j["triangle_bound"] = to_json(b.triangle_bound);
        j["lower_bound"] = to_json(b.lower_bound);
        j["best_upper"] = to_json(b.best_upper);
        j["lower_below_uppers"] = b.lower_below_uppers;
        j["upper_crossover_eps"] = tau_eps_crossover();
    } else if (which == "zeta2-region") {
        Zeta2RegionBound b = zeta2_region_bound(cfg.precision);
        j["lower"] = to_json(b.lower);
        j["upper"] = to_json(b.upper);
        j["five_param_bound"] = to_json(b.five_param_bound);
        j["lower_above_0.017"] = b.lower_above_0017;
        j["upper_below_0.023"] = b.upper_below_0023;
        j["five_param_below_0.003488"] = b.five_param_below_0003488;
    } else if (which == "eta") {
        EtaCritical e = eta_critical(cfg.precision);
        j["eta"] = to_json(e.eta);
        j["theta_classical"] = to_json(e.theta_classical);
        j["theta_one"] = to_json(e.theta_one);
        j["grid_max"] = e.grid_max;
        j["grid_deviation"] = e.grid_deviation;
    } else if (which == "intuitive") {
        BoundValue b = intuitive_threshold(r, w, cfg.precision);
        j["r"] = r;
        j["w"] = w;
        j["factor"] = to_json(b);
    } else if (which == "denominator") {
        Json models;
        models["rectangular"] = to_string(
            denominator_asymptotics(DenominatorModel::rectangular, r, w).limit_log);
        models["g_basis_two_param"] =
            to_string(denominator_asymptotics(DenominatorModel::g_basis_two_param).limit_log);
        models["five_param"] =
            to_string(denominator_asymptotics(DenominatorModel::five_param).limit_log);
        j["limit_log"] = models;
    } else {
        throw BadInput("bounds: unknown --which '" + which + "'");
    }
    emit(cfg, j.dump(2));
    return 0;
}

int cmd_minkowski(const RunConfig& cfg, const std::string& family_arg, long n) {
    Family family = parse_family(family_arg);
    GramMatrix g = build_gram(family, n);
    IntegerizedGram ig = integerize(g, cfg.precision, cfg.exact_limit, cfg.workers);
    SmallForm f = extract_small_form(ig, cfg.precision);
    Json j = to_json(f);
    j["family"] = family_arg;
    j["n"] = n;
    j["delta"] = to_string(ig.delta);
    emit(cfg, j.dump(2));
    return 0;
}

int cmd_amalgam_check(const RunConfig& cfg, long m, long n, int trials) {
    std::mt19937_64 rng(cfg.seed);
    std::uniform_int_distribution<long> d(-9, 9);
    bool all = true;
    for (int t = 0; t < trials; ++t) {
        Matrix<Rational> a(static_cast<size_t>(m * n),
                           std::vector<Rational>(static_cast<size_t>(m)));
        Matrix<Rational> b(static_cast<size_t>(m * n),
                           std::vector<Rational>(static_cast<size_t>(n)));
        for (auto& row : a)
            for (auto& v : row) v = make_rational(d(rng), 1 + std::abs(d(rng)));
        for (auto& row : b)
            for (auto& v : row) v = make_rational(d(rng), 1 + std::abs(d(rng)));
        Matrix<Rational> ab = amalgam(a, b);
        all = all && (amalgam_det_formula(a, b) == detail::det_in_place(ab));
    }
    Json j;
    j["m"] = m;
    j["n"] = n;
    j["trials"] = trials;
    j["h_constant"] = h_constant(m, n).get_str();
    j["all_match"] = all;
    emit(cfg, j.dump(2));
    return all ? 0 : 3;
}

int cmd_oracle_check(const RunConfig& cfg, long max_sum, double tol) {
    std::set<Exp5> orbits;
    std::function<void(Exp5&, int, long)> enumerate = [&](Exp5& s, int pos, long left) {
        if (pos == 5) {
            orbits.insert(dihedral_orbit(s));
            return;
        }
        for (long v = 0; v <= left; ++v) {
            s[static_cast<size_t>(pos)] = v;
            enumerate(s, pos + 1, left - v);
        }
    };
    Exp5 s{};
    enumerate(s, 0, max_sum);
    double worst = 0;
    std::vector<Exp5> list(orbits.begin(), orbits.end());
    std::vector<double> errs(list.size(), 0.0);
    parallel_for(static_cast<long>(list.size()), cfg.workers, [&](long i) {
        const Exp5& v = list[static_cast<size_t>(i)];
        double exact = mellin_integral(v).numeric(30).to_double();
        errs[static_cast<size_t>(i)] = std::abs(exact - quad_oracle(v, tol));
    });
    for (double e : errs) worst = std::max(worst, e);
    Json j;
    j["max_sum"] = max_sum;
    j["orbit_cases"] = list.size();
    j["tol"] = tol;
    j["max_abs_error"] = worst;
    j["pass"] = worst <= 1e-8;
    emit(cfg, j.dump(2));
    return worst <= 1e-8 ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"periodgram: exact linear forms in zeta(2), Gram determinants, and "
                 "transfinite-diameter bounds"};
    app.require_subcommand(1);
    app.fallthrough();

    RunConfig cfg;
    if (const char* env = std::getenv("PERIODGRAM_CACHE")) cfg.cache = env;
    app.add_option("--precision", cfg.precision, "working precision in decimal digits")
        ->check(CLI::Range(10, 100000));
    app.add_option("--workers", cfg.workers, "worker threads")->check(CLI::Range(1, 256));
    app.add_option("--seed", cfg.seed, "seed for randomized procedures");
    app.add_option("--exact-limit", cfg.exact_limit, "max rank for exact determinants");
    app.add_flag("--json", cfg.json, "emit JSON");
    app.add_flag("--csv", cfg.csv, "emit CSV (tables only)");
    app.add_option("--cache", cfg.cache, "contiguity memo cache file (env PERIODGRAM_CACHE)");
    app.add_option("--output", cfg.output, "write output to a file instead of stdout");

    std::string s_arg, family = "two_param", region = "image", which = "zeta2-region";
    bool with_oracle = false, force_exact = false;
    long n = 2, n_max = 4, rank_1d = 8, m_amalgam = 2, n_amalgam = 2, max_sum = 6, r_param = 2,
         w_param = 2;
    int trials = 20, restarts = 4, sweeps = 40;
    double eps = 0.09, tol = 1e-10;

    CLI::App* integral = app.add_subcommand("integral", "exact Mellin integral I(s1..s5)");
    integral->add_option("--s", s_arg, "five comma-separated exponents")->required();
    integral->add_flag("--oracle", with_oracle, "also run the quadrature oracle");

    CLI::App* table = app.add_subcommand("table", "reproduce a determinant table");
    table->add_option("--family", family, "two_param | two_copies | five_param")->required();
    table->add_option("--n-max", n_max, "largest level")->required();

    CLI::App* gram = app.add_subcommand("gram", "single Gram report");
    gram->add_option("--family", family)->required();
    gram->add_option("--n", n)->required();
    gram->add_flag("--exact", force_exact, "require the exact determinant");

    CLI::App* fekete = app.add_subcommand("fekete", "maximize |det V| over a region");
    fekete->add_option("--family", family);
    fekete->add_option("--n", n);
    fekete->add_option("--region", region, "image | interval | triangle");
    fekete->add_option("--rank", rank_1d, "basis rank for --region interval");
    fekete->add_option("--restarts", restarts);
    fekete->add_option("--sweeps", sweeps);

    CLI::App* bounds = app.add_subcommand("bounds", "closed-form diameter bounds");
    bounds->add_option("--which", which,
                       "tau_eps | zeta2-region | eta | intuitive | denominator")
        ->required();
    bounds->add_option("--eps", eps);
    bounds->add_option("--r", r_param);
    bounds->add_option("--w", w_param);

    CLI::App* minkowski = app.add_subcommand("minkowski", "extract a small linear form");
    minkowski->add_option("--family", family)->required();
    minkowski->add_option("--n", n)->required();

    CLI::App* amalgam_check = app.add_subcommand("amalgam-check", "formula vs brute force");
    amalgam_check->add_option("--m", m_amalgam);
    amalgam_check->add_option("--n", n_amalgam);
    amalgam_check->add_option("--trials", trials);

    CLI::App* oracle = app.add_subcommand("oracle-check", "exact values vs quadrature");
    oracle->add_option("--max-sum", max_sum);
    oracle->add_option("--tol", tol);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? 0 : 2;
    }

    try {
        if (!cfg.cache.empty()) load_mellin_cache(cfg.cache);
        int rc = 0;
        if (integral->parsed()) rc = cmd_integral(cfg, s_arg, with_oracle);
        if (table->parsed()) rc = cmd_table(cfg, family, n_max);
        if (gram->parsed()) rc = cmd_gram(cfg, family, n, force_exact);
        if (fekete->parsed()) rc = cmd_fekete(cfg, family, n, region, rank_1d, restarts, sweeps);
        if (bounds->parsed()) rc = cmd_bounds(cfg, which, eps, r_param, w_param);
        if (minkowski->parsed()) rc = cmd_minkowski(cfg, family, n);
        if (amalgam_check->parsed()) rc = cmd_amalgam_check(cfg, m_amalgam, n_amalgam, trials);
        if (oracle->parsed()) rc = cmd_oracle_check(cfg, max_sum, tol);
        if (!cfg.cache.empty()) save_mellin_cache(cfg.cache);
        return rc;
    } catch (const BadInput& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
