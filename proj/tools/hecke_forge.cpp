#include "CLI11.hpp"

#include "hforge/distributions.hpp"
#include "hforge/fixtures.hpp"
#include "hforge/gauss.hpp"
#include "hforge/hecke.hpp"
#include "hforge/serialize.hpp"
#include "hforge/suites.hpp"
#include "hforge/weights.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace hforge;
namespace fs = std::filesystem;

namespace {

constexpr int exit_ok = 0, exit_failure = 1, exit_usage = 2;

// Usage and I/O problems detected after parsing.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<long> parse_list(const std::string& s, const std::string& what) {
    std::vector<long> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            size_t used = 0;
            out.push_back(std::stol(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw UsageError(what + ": expected a comma separated integer list, got '" + s + "'");
        }
    }
    if (out.empty()) throw UsageError(what + ": empty list");
    return out;
}

std::vector<Cyclo> parse_rat_list(const std::string& s, const std::string& what) {
    std::vector<Cyclo> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            out.push_back(Cyclo(Rat::parse(item)));
        } catch (const std::exception&) {
            throw UsageError(what + ": cannot parse '" + item + "' as a rational");
        }
    }
    return out;
}

void print(const Json& j) { std::cout << j.dump(2) << "\n"; }

Json character_json(const MultChar& chi) {
    return Json{{"p", chi.p()},
                {"modulus", chi.modulus()},
                {"order", chi.order()},
                {"conductor_exponent", chi.conductor_exponent()},
                {"chi_p", to_json(chi.chi_p())}};
}

MultChar pick_character(long p, long order) {
    if (!is_prime(p)) throw UsageError("--p must be prime");
    if (order < 1) throw UsageError("--order must be positive");
    try {
        return character_of_order(p, order, 1L << 12);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

// run --------------------------------------------------------------------------------------------

struct RunOptions {
    std::string config;
    std::optional<uint64_t> seed;
    std::vector<std::string> suites;
    std::string json_out;
    std::optional<int> jobs;
    bool print_config = false;
    bool list = false;
};

SuiteConfig load_config(const RunOptions& o) {
    SuiteConfig cfg;
    if (const char* env = std::getenv("HECKE_FORGE_SEED"); env && *env) {
        try {
            apply_config_value(cfg, "seed", env);
        } catch (const std::invalid_argument& e) {
            throw UsageError(std::string("HECKE_FORGE_SEED: ") + e.what());
        }
    }
    if (!o.config.empty()) {
        std::ifstream in(o.config);
        if (!in) throw UsageError("cannot read config file '" + o.config + "'");
        std::stringstream buf;
        buf << in.rdbuf();
        try {
            apply_config_text(cfg, buf.str(), o.config);
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
        // fixture paths are relative to the config file
        if (!cfg.distribution_fixture.empty() && fs::path(cfg.distribution_fixture).is_relative())
            cfg.distribution_fixture = (fs::path(o.config).parent_path() / cfg.distribution_fixture).string();
    }
    if (o.seed) cfg.seed = *o.seed;
    if (o.jobs) cfg.jobs = *o.jobs;
    if (!o.json_out.empty()) cfg.json_out = o.json_out;
    if (!o.suites.empty()) {
        for (auto& [name, on] : cfg.enabled) on = false;
        for (const auto& s : o.suites) {
            if (!cfg.enabled.count(s)) throw UsageError("--suite: unknown suite '" + s + "'");
            cfg.enabled[s] = true;
        }
    }
    try {
        cfg.validate();
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    if (!cfg.distribution_fixture.empty() && !fs::exists(cfg.distribution_fixture))
        throw UsageError("distribution fixture '" + cfg.distribution_fixture + "' does not exist");
    return cfg;
}

int run_suite(const RunOptions& o) {
    SuiteConfig cfg = load_config(o);
    if (o.print_config) {
        std::cout << default_config_text();
        return exit_ok;
    }
    std::vector<CaseSpec> cases = build_cases(cfg);
    if (o.list) {
        for (const auto& c : cases) std::cout << c.suite << "/" << c.id << "\n";
        return exit_ok;
    }
    std::ofstream file;
    if (!cfg.json_out.empty()) {
        file.open(cfg.json_out);
        if (!file) throw UsageError("cannot write report to '" + cfg.json_out + "'");
    }
    long counts[3] = {0, 0, 0};
    run_cases(cases, cfg.seed, cfg.jobs, [&](const CaseRecord& r) {
        std::string line = r.to_json().dump();
        std::cout << line << "\n" << std::flush;
        if (file) file << line << "\n" << std::flush;
        ++counts[static_cast<int>(r.status)];
    });
    if (file) {
        file.close();
        if (!file) throw UsageError("error while writing '" + cfg.json_out + "'");
    }
    std::cerr << cases.size() << " cases: " << counts[0] << " pass, " << counts[1] << " fail, " << counts[2]
              << " skip (seed " << cfg.seed << ")\n";
    return counts[1] ? exit_failure : exit_ok;
}

// compute ----------------------------------------------------------------------------------------

int compute_gauss(long p, long order) {
    MultChar chi = pick_character(p, order);
    Cyclo g = gauss_sum(chi), gc = classical_gauss_sum(chi);
    long s = chi.conductor_exponent();
    Cyclo norm(int_pow(p, s));
    bool abs_ok = gc * gc.conj() == norm;
    Json out{{"character", character_json(chi)},
             {"G", to_json(g)},
             {"classical", to_json(gc)},
             {"G_squared", to_json(g.pow(2))},
             {"abs_square", to_json(gc * gc.conj())},
             {"verified", {{"abs_square_equals_norm", abs_ok}}}};
    bool ok = abs_ok;
    if (chi.order() == 2) {
        // quadratic: G^2 = chi(-1) p^s
        bool q_ok = g.pow(2) == chi(-1) * norm;
        out["verified"]["quadratic_square"] = q_ok;
        ok = ok && q_ok;
    }
    out["status"] = ok ? "pass" : "fail";
    print(out);
    return ok ? exit_ok : exit_failure;
}

int compute_expand(int n, long p, int r, const std::string& op, const std::string& level, int samples, uint64_t seed) {
    if (n < 1 || n > 5) throw UsageError("--n must lie in [1, 5]");
    if (!is_prime(p)) throw UsageError("--p must be prime");
    if (r < 1) throw UsageError("--r must be at least 1");
    auto tag = parse_operator(op);
    if (!tag) throw UsageError("--op: unknown operator '" + op + "' (T<nu>, U<i>, V<nu>, Vp, Vp')");
    CosetSpace s = level == "spherical" ? CosetSpace::spherical(n, p) : CosetSpace::iwahori(n, p, r);
    if (level != "spherical" && level != "iwahori") throw UsageError("--level must be iwahori or spherical");
    if (level == "spherical" && tag->op != HeckeOp::T) throw UsageError("spherical level supports T<nu> only");
    CosetSum sum = level == "spherical" ? spherical_T(n, p, tag->index) : expand_operator(s, *tag);
    CoverageReport cov = check_coverage(sum, double_coset_rep(s, *tag), samples, seed);
    Json out{{"n", n},
             {"p", p},
             {"r", r},
             {"level", level},
             {"op", tag->str()},
             {"cosets", sum.size()},
             {"terms", to_json(sum)},
             {"coverage",
              {{"samples", cov.samples},
               {"disjoint", cov.disjoint},
               {"inside_monoid", cov.inside_monoid},
               {"uncovered", cov.uncovered},
               {"multiply_hit", cov.multiply_hit}}},
             {"status", cov.ok() ? "pass" : "fail"}};
    print(out);
    return cov.ok() ? exit_ok : exit_failure;
}

int compute_satake(int n, long p, std::optional<int> only_nu) {
    if (n < 1 || n > 4) throw UsageError("--n must lie in [1, 4]");
    if (!is_prime(p)) throw UsageError("--p must be prime");
    std::vector<LaurentPoly> ys;
    for (int i = 1; i <= n; ++i) ys.push_back(LaurentPoly::var("Y" + std::to_string(i)));
    Json rows = Json::array();
    bool ok = true;
    for (int nu = 0; nu <= n; ++nu) {
        if (only_nu && *only_nu != nu) continue;
        LaurentPoly via = satake_via_cosets(n, p, nu);
        LaurentPoly closed = LaurentPoly(Rat(p).pow(nu * (n - 1) - nu * (nu - 1) / 2)) * elementary_symmetric(ys, nu);
        ok = ok && via == closed;
        rows.push_back(Json{{"nu", nu},
                            {"satake", satake(n, nu).str()},
                            {"via_cosets", via.str()},
                            {"closed_form", closed.str()},
                            {"matches", via == closed}});
    }
    if (rows.empty()) throw UsageError("--nu must lie in [0, n]");
    print(Json{{"n", n}, {"p", p}, {"rows", rows}, {"status", ok ? "pass" : "fail"}});
    return ok ? exit_ok : exit_failure;
}

Weight dominant_weight(const std::string& s, const std::string& what) {
    std::vector<long> w = parse_list(s, what);
    Weight out(w);
    if (!out.dominant()) throw UsageError(what + ": weight must be non-increasing");
    return out;
}

int compute_branch(const std::string& mu_s) {
    Weight mu = dominant_weight(mu_s, "--mu");
    auto b = branch(mu.at(0));
    print(Json{{"mu", mu.at(0)}, {"count", b.size()}, {"formula", branch_count(mu.at(0))}, {"branches", b}});
    return exit_ok;
}

int compute_critical(const std::string& mu_s, const std::string& nu_s) {
    Weight mu = dominant_weight(mu_s, "--mu"), nu = dominant_weight(nu_s, "--nu");
    if (nu.n() + 1 != mu.n()) throw UsageError("--nu must have one entry fewer than --mu");
    CriticalData d;
    try {
        d = critical_data(mu, nu);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    Json crit = Json::array();
    for (const auto& s : d.critical_set) crit.push_back(to_json(s));
    long lo, hi;
    if (!d.emb.empty()) {
        lo = d.emb.front() - 2;
        hi = d.emb.back() + 2;
    } else {
        lo = (d.w + d.v) / 2 - 2;
        hi = (d.w + d.v) / 2 + 2;
    }
    Json table = Json::array();
    for (long x = lo; x <= hi; ++x) {
        bool in = std::binary_search(d.emb.begin(), d.emb.end(), x);
        table.push_back(Json{{"nu", x}, {"s", to_json(Rat(1, 2) + Rat(x))}, {"in_emb", in}, {"critical", in && d.parity_ok}});
    }
    Json out{{"mu", mu.at(0)},
             {"nu", nu.at(0)},
             {"w", d.w},
             {"v", d.v},
             {"parity_ok", d.parity_ok},
             {"gl1_flag", d.gl1_flag},
             {"center", to_json(d.center)},
             {"emb", d.emb},
             {"critical_set", crit},
             {"min_gap", d.min_gap},
             {"nu_min", to_json(d.nu_min)},
             {"s_min", to_json(d.s_min)},
             {"s_max", to_json(d.s_max)},
             {"interval_matches", d.interval_matches},
             {"table", table}};
    if (d.nu_min_from_emb) out["nu_min_from_emb"] = *d.nu_min_from_emb;
    print(out);
    return exit_ok;
}

int compute_kappa_hat(int n, long p, long order, long nu, long nu_min, const std::string& lam_s,
                      const std::string& lamp_s) {
    if (n < 2) throw UsageError("--n must be at least 2");
    MultChar chi = pick_character(p, order);
    if (chi.conductor_exponent() < 1) throw UsageError("the character needs a nontrivial conductor");
    std::vector<Cyclo> lam = parse_rat_list(lam_s, "--lambda"), lamp = parse_rat_list(lamp_s, "--lambda-prime");
    if (lam.size() != static_cast<size_t>(n - 1) || lamp.size() != static_cast<size_t>(n - 1))
        throw UsageError("--lambda and --lambda-prime need n-1 entries each");
    SlopeData sd = slope_data(lam, lamp, nu_min, Rat(p), p);
    Json out{{"character", character_json(chi)},
             {"n", n},
             {"nu", nu},
             {"nu_min", nu_min},
             {"kappa", to_json(sd.kappa)},
             {"kappa_prime", to_json(sd.kappa_prime)}};
    if (!sd.finite_slope()) {
        out["slope"] = nullptr;
        out["error"] = "infinite slope";
        print(out);
        return exit_failure;
    }
    out["slope"] = to_json(*sd.slope);
    out["ordinary"] = sd.ordinary();
    KappaHat k = kappa_hat({chi, nu, sd, nu_min}, n);
    out["kappa_hat"] = to_json(k.value);
    out["norm_exponent"] = k.norm_exponent;
    out["kappa_exponent"] = k.kappa_exponent;
    print(out);
    return exit_ok;
}

struct IntegrateOptions {
    std::string input, emit;
    long p = 3, depth = 3, dim = 1, class_number = 1, order = 2;
    std::string kappa = "1";
    uint64_t seed = 1;
};

int compute_integrate(const IntegrateOptions& o) {
    std::optional<Distribution> mu;
    if (!o.input.empty()) {
        std::ifstream in(o.input);
        if (!in) throw UsageError("cannot read distribution '" + o.input + "'");
        Json j;
        try {
            in >> j;
            mu = distribution_from_json(j);
        } catch (const std::exception& e) {
            throw UsageError(o.input + ": " + e.what());
        }
    } else {
        if (!is_prime(o.p)) throw UsageError("--p must be prime");
        if (o.depth < 1 || o.depth > 5) throw UsageError("--depth must lie in [1, 5]");
        if (o.dim < 1) throw UsageError("--dim must be positive");
        if (o.class_number < 1) throw UsageError("--class-number must be positive");
        Cyclo kappa;
        try {
            kappa = Cyclo(Rat::parse(o.kappa));
        } catch (const std::exception&) {
            throw UsageError("--kappa: cannot parse '" + o.kappa + "'");
        }
        if (kappa.is_zero()) throw UsageError("--kappa must be nonzero");
        std::mt19937_64 rng(o.seed);
        RayTower tower = RayTower::with_class_group(o.p, o.class_number);
        mu = build_mu(tower, random_symbol(rng, tower, o.depth, static_cast<size_t>(o.dim), kappa), 1);
    }
    if (!o.emit.empty()) {
        std::ofstream out(o.emit);
        if (!out) throw UsageError("cannot write distribution to '" + o.emit + "'");
        out << distribution_to_json(*mu).dump(2) << "\n";
    }
    MultChar chi = pick_character(mu->tower().p(), o.order);
    RelationReport rel = check_distribution_relation(*mu);
    Json out{{"character", character_json(chi)}, {"relation_ok", rel.ok}};
    try {
        CharacterIntegral r = integrate_character(*mu, chi);
        out["level"] = r.level;
        out["value"] = to_json(r.value);
        if (r.level_stable) out["level_stable"] = *r.level_stable;
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    print(out);
    return rel.ok ? exit_ok : exit_failure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact Hecke-operator, Gauss-sum and p-adic distribution computations with verification suites"};
    app.require_subcommand(0, 1);

    RunOptions run;
    auto add_run_options = [&](CLI::App* a) {
        a->add_option("--config", run.config, "flat key = value configuration file");
        a->add_option("--seed", run.seed, "seed for randomized checks (fallback: HECKE_FORGE_SEED)");
        a->add_option("--suite", run.suites, "restrict to a suite; repeatable")
            ->check(CLI::IsMember(suite_names()))
            ->take_all();
        a->add_option("--json-out", run.json_out, "also write the JSON Lines report here");
        a->add_option("--jobs", run.jobs, "worker threads")->check(CLI::PositiveNumber);
        a->add_flag("--print-config", run.print_config, "print the default configuration and exit");
        a->add_flag("--list", run.list, "list the selected cases and exit");
    };
    add_run_options(&app);
    CLI::App* run_cmd = app.add_subcommand("run", "run the verification suites (default)");
    run_cmd->fallthrough();

    CLI::App* compute = app.add_subcommand("compute", "print one computation as JSON");
    compute->require_subcommand(1);

    long p = 0, order = 2;
    int n = 2, r = 1;
    std::string op, level = "iwahori";
    int samples = 200;
    uint64_t seed = 1;
    CLI::App* gauss = compute->add_subcommand("gauss-sum", "G(chi) for the first primitive character of an order");
    gauss->add_option("--p", p, "prime")->required();
    gauss->add_option("--order", order, "order of the character")->required();

    CLI::App* expand = compute->add_subcommand("hecke-expand", "coset decomposition of a Hecke operator");
    expand->add_option("--n", n)->required();
    expand->add_option("--p", p)->required();
    expand->add_option("--op", op, "T<nu>, U<i>, V<nu>, Vp or Vp'")->required();
    expand->add_option("--r", r, "Iwahori level");
    expand->add_option("--level", level, "iwahori or spherical");
    expand->add_option("--samples", samples, "coverage samples")->check(CLI::PositiveNumber);
    expand->add_option("--seed", seed);

    std::optional<int> satake_nu;
    CLI::App* sat = compute->add_subcommand("satake", "constant term of eps(T_nu) against the Satake display");
    sat->add_option("--n", n)->required();
    sat->add_option("--p", p)->required();
    sat->add_option("--nu", satake_nu);

    std::string mu_s, nu_s;
    CLI::App* br = compute->add_subcommand("branch", "interlacing weights of GL_{n-1} in a GL_n weight");
    br->add_option("--mu", mu_s, "comma separated highest weight")->required();

    CLI::App* crit = compute->add_subcommand("critical", "critical values for a GL_n x GL_{n-1} weight pair");
    crit->add_option("--mu", mu_s)->required();
    crit->add_option("--nu", nu_s)->required();

    long nu = 0, nu_min = 0;
    std::string lam_s, lamp_s;
    CLI::App* kh = compute->add_subcommand("kappa-hat", "the interpolation constant from Hecke roots");
    kh->add_option("--n", n)->required();
    kh->add_option("--p", p)->required();
    kh->add_option("--order", order, "order of the character")->required();
    kh->add_option("--nu", nu)->required();
    kh->add_option("--nu-min", nu_min)->required();
    kh->add_option("--lambda", lam_s, "n-1 rational roots")->required();
    kh->add_option("--lambda-prime", lamp_s, "n-1 rational roots")->required();

    IntegrateOptions io;
    CLI::App* integ = compute->add_subcommand("integrate", "integrate a character against a distribution");
    integ->add_option("--input", io.input, "serialized distribution; otherwise a synthetic eigen distribution");
    integ->add_option("--emit", io.emit, "write the distribution used");
    integ->add_option("--p", io.p);
    integ->add_option("--depth", io.depth);
    integ->add_option("--dim", io.dim);
    integ->add_option("--class-number", io.class_number);
    integ->add_option("--kappa", io.kappa, "U_p eigenvalue (rational)");
    integ->add_option("--seed", io.seed);
    integ->add_option("--order", io.order, "order of the character");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? exit_ok : exit_usage;
    }

    try {
        if (*compute) {
            if (*gauss) return compute_gauss(p, order);
            if (*expand) return compute_expand(n, p, r, op, level, samples, seed);
            if (*sat) return compute_satake(n, p, satake_nu);
            if (*br) return compute_branch(mu_s);
            if (*crit) return compute_critical(mu_s, nu_s);
            if (*kh) return compute_kappa_hat(n, p, order, nu, nu_min, lam_s, lamp_s);
            if (*integ) return compute_integrate(io);
        }
        return run_suite(run);
    } catch (const UsageError& e) {
        std::cerr << "hecke_forge: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "hecke_forge: " << e.what() << "\n";
        return exit_failure;
    }
}
