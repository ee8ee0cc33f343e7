#include "hforge/suites.hpp"

#include "hforge/fixtures.hpp"
#include "hforge/gauss.hpp"
#include "hforge/gln.hpp"
#include "hforge/hecke.hpp"
#include "hforge/hecke_module.hpp"
#include "hforge/padic.hpp"
#include "hforge/weights.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <memory>
#include <mutex>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace hforge {

std::string status_name(CaseStatus s) {
    switch (s) {
        case CaseStatus::pass: return "pass";
        case CaseStatus::fail: return "fail";
        case CaseStatus::skip: return "skip";
    }
    return "fail";
}

Json CaseRecord::to_json() const {
    return Json{{"suite", suite}, {"case", id}, {"status", status_name(status)}, {"witness", witness}, {"time_ms", time_ms}};
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"matrices", "hecke",         "projections",        "gauss",
                                                "weights",  "distributions", "functional-equation"};
    return names;
}

SuiteConfig::SuiteConfig() {
    for (const auto& s : suite_names()) enabled[s] = true;
}

void SuiteConfig::validate() const {
    auto bad = [](const std::string& key, const std::string& why) {
        throw std::invalid_argument("config: " + key + ": " + why);
    };
    if (jobs < 1) bad("jobs", "must be at least 1");
    if (n_min < 2) bad("n_min", "must be at least 2");
    if (n_max < n_min) bad("n_max", "must be at least n_min");
    if (n_max > 6) bad("n_max", "at most 6 is supported");
    if (r_min < 1) bad("r_min", "must be at least 1");
    if (r_max < r_min) bad("r_max", "must be at least r_min");
    auto primes_ok = [&](const std::vector<long>& ps, const std::string& key) {
        if (ps.empty()) bad(key, "empty prime list");
        for (long p : ps)
            if (!is_prime(p)) bad(key, std::to_string(p) + " is not prime");
    };
    primes_ok(primes, "primes");
    primes_ok(distribution_primes, "distributions.primes");
    primes_ok(dual_primes, "functional_equation.primes");
    if (symbolic_n_max < 3 || symbolic_n_max > 6) bad("matrices.symbolic_n_max", "must lie in [3, 6]");
    if (numeric_samples < 0) bad("matrices.numeric_samples", "must be nonnegative");
    if (max_vp_cosets < 1) bad("hecke.max_vp_cosets", "must be positive");
    if (coverage_samples < 1) bad("hecke.coverage_samples", "must be positive");
    if (satake_n_max < 2 || satake_n_max > 5) bad("hecke.satake_n_max", "must lie in [2, 5]");
    if (projection_trials < 1) bad("projections.trials", "must be positive");
    if (recisums_n_max < 1) bad("projections.recisums_n_max", "must be positive");
    if (gauss_max_modulus < 2 || gauss_max_modulus > 1000) bad("gauss.max_modulus", "must lie in [2, 1000]");
    if (weight_pairs < 1) bad("weights.pairs", "must be positive");
    if (weight_n_max < 2 || weight_n_max > 8) bad("weights.n_max", "must lie in [2, 8]");
    if (distribution_depth < 2 || distribution_depth > 6) bad("distributions.depth", "must lie in [2, 6]");
}

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

long parse_long(const std::string& key, const std::string& v) {
    try {
        size_t used = 0;
        long x = std::stol(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw std::invalid_argument("config: " + key + ": expected an integer, got '" + v + "'");
    }
}

uint64_t parse_u64(const std::string& key, const std::string& v) {
    try {
        size_t used = 0;
        if (!v.empty() && v[0] == '-') throw std::invalid_argument(v);
        unsigned long long x = std::stoull(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw std::invalid_argument("config: " + key + ": expected a nonnegative integer, got '" + v + "'");
    }
}

bool parse_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw std::invalid_argument("config: " + key + ": expected true or false, got '" + v + "'");
}

std::vector<std::string> split_list(const std::string& v) {
    std::vector<std::string> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ','))
        if (auto t = trim(item); !t.empty()) out.push_back(t);
    return out;
}

std::vector<long> parse_long_list(const std::string& key, const std::string& v) {
    std::vector<long> out;
    for (const auto& x : split_list(v)) out.push_back(parse_long(key, x));
    return out;
}

int to_int(const std::string& key, long x) {
    if (x < -1000000 || x > 1000000) throw std::invalid_argument("config: " + key + ": out of range");
    return static_cast<int>(x);
}

}  // namespace

void apply_config_value(SuiteConfig& cfg, const std::string& key, const std::string& value) {
    const std::string& v = value;
    if (key == "seed") cfg.seed = parse_u64(key, v);
    else if (key == "jobs") cfg.jobs = to_int(key, parse_long(key, v));
    else if (key == "json_out") cfg.json_out = v;
    else if (key == "suites") {
        auto names = split_list(v);
        for (auto& [name, on] : cfg.enabled) on = false;
        for (const auto& s : names) {
            if (s == "all") {
                for (auto& [name, on] : cfg.enabled) on = true;
                continue;
            }
            if (!cfg.enabled.count(s)) throw std::invalid_argument("config: suites: unknown suite '" + s + "'");
            cfg.enabled[s] = true;
        }
    } else if (key.rfind("suite.", 0) == 0) {
        std::string s = key.substr(6);
        if (!cfg.enabled.count(s)) throw std::invalid_argument("config: unknown suite '" + s + "'");
        cfg.enabled[s] = parse_bool(key, v);
    } else if (key == "n_min") cfg.n_min = to_int(key, parse_long(key, v));
    else if (key == "n_max") cfg.n_max = to_int(key, parse_long(key, v));
    else if (key == "primes") cfg.primes = parse_long_list(key, v);
    else if (key == "r_min") cfg.r_min = to_int(key, parse_long(key, v));
    else if (key == "r_max") cfg.r_max = to_int(key, parse_long(key, v));
    else if (key == "matrices.symbolic_n_max") cfg.symbolic_n_max = to_int(key, parse_long(key, v));
    else if (key == "matrices.numeric_samples") cfg.numeric_samples = to_int(key, parse_long(key, v));
    else if (key == "hecke.max_vp_cosets") cfg.max_vp_cosets = parse_long(key, v);
    else if (key == "hecke.coverage_samples") cfg.coverage_samples = to_int(key, parse_long(key, v));
    else if (key == "hecke.satake_n_max") cfg.satake_n_max = to_int(key, parse_long(key, v));
    else if (key == "projections.trials") cfg.projection_trials = to_int(key, parse_long(key, v));
    else if (key == "projections.recisums_n_max") cfg.recisums_n_max = to_int(key, parse_long(key, v));
    else if (key == "gauss.max_modulus") cfg.gauss_max_modulus = parse_long(key, v);
    else if (key == "weights.pairs") cfg.weight_pairs = to_int(key, parse_long(key, v));
    else if (key == "weights.n_max") cfg.weight_n_max = to_int(key, parse_long(key, v));
    else if (key == "distributions.primes") cfg.distribution_primes = parse_long_list(key, v);
    else if (key == "distributions.depth") cfg.distribution_depth = parse_long(key, v);
    else if (key == "distributions.fixture") cfg.distribution_fixture = v;
    else if (key == "functional_equation.primes") cfg.dual_primes = parse_long_list(key, v);
    else throw std::invalid_argument("config: unknown key '" + key + "'");
}

void apply_config_text(SuiteConfig& cfg, const std::string& text, const std::string& origin) {
    std::stringstream ss(text);
    std::string line;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument(origin + ":" + std::to_string(lineno) + ": expected 'key = value'");
        std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
        if (key.empty()) throw std::invalid_argument(origin + ":" + std::to_string(lineno) + ": empty key");
        try {
            apply_config_value(cfg, key, value);
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument(origin + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
}

std::string default_config_text() {
    SuiteConfig c;
    auto list = [](const std::vector<long>& xs) {
        std::string s;
        for (size_t i = 0; i < xs.size(); ++i) s += (i ? ", " : "") + std::to_string(xs[i]);
        return s;
    };
    std::ostringstream o;
    o << "# hecke_forge run configuration: one 'key = value' per line, '#' starts a comment\n"
      << "seed = " << c.seed << "\n"
      << "jobs = " << c.jobs << "\n"
      << "suites = all\n"
      << "n_min = " << c.n_min << "\n"
      << "n_max = " << c.n_max << "\n"
      << "primes = " << list(c.primes) << "\n"
      << "r_min = " << c.r_min << "\n"
      << "r_max = " << c.r_max << "\n"
      << "matrices.symbolic_n_max = " << c.symbolic_n_max << "\n"
      << "matrices.numeric_samples = " << c.numeric_samples << "\n"
      << "hecke.max_vp_cosets = " << c.max_vp_cosets << "\n"
      << "hecke.coverage_samples = " << c.coverage_samples << "\n"
      << "hecke.satake_n_max = " << c.satake_n_max << "\n"
      << "projections.trials = " << c.projection_trials << "\n"
      << "projections.recisums_n_max = " << c.recisums_n_max << "\n"
      << "gauss.max_modulus = " << c.gauss_max_modulus << "\n"
      << "weights.pairs = " << c.weight_pairs << "\n"
      << "weights.n_max = " << c.weight_n_max << "\n"
      << "distributions.primes = " << list(c.distribution_primes) << "\n"
      << "distributions.depth = " << c.distribution_depth << "\n"
      << "# distributions.fixture = path/to/distribution.json\n"
      << "functional_equation.primes = " << list(c.dual_primes) << "\n";
    return o.str();
}

uint64_t case_seed(uint64_t run_seed, const std::string& suite, const std::string& id) {
    // FNV-1a over "suite/id", mixed with the run seed by splitmix64
    uint64_t h = 1469598103934665603ULL;
    for (char c : suite + "/" + id) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ULL;
    }
    uint64_t z = run_seed ^ h;
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

namespace {

// Counts checks and keeps the witness of the first failure.
class Tally {
public:
    template <class W>
    void check(bool ok, W&& witness) {
        ++checks_;
        if (!ok && failures_++ == 0) first_ = witness();
    }
    bool ok() const { return failures_ == 0; }
    CaseResult result(Json extra = Json::object()) const {
        extra["checks"] = checks_;
        extra["failures"] = failures_;
        if (failures_) extra["first_failure"] = first_;
        return {ok() ? CaseStatus::pass : CaseStatus::fail, extra};
    }

private:
    long checks_ = 0, failures_ = 0;
    Json first_;
};

CaseResult verdict(bool ok, Json witness) { return {ok ? CaseStatus::pass : CaseStatus::fail, std::move(witness)}; }

long ipow(long p, long e) { return int_pow(p, e); }

std::string grid_id(int n, long p, int r) {
    return "n" + std::to_string(n) + ".p" + std::to_string(p) + ".r" + std::to_string(r);
}

using Cases = std::vector<CaseSpec>;

// matrices ---------------------------------------------------------------------------------------

RatMatrix random_rat_invertible(std::mt19937_64& rng, size_t n) {
    std::uniform_int_distribution<int> e(-4, 4), d(1, 3);
    for (;;) {
        RatMatrix g(n, n);
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) g(i, j) = Rat(e(rng), d(rng));
        if (!det(g).is_zero()) return g;
    }
}

Cyclo random_cyclo(std::mt19937_64& rng, long m) {
    std::uniform_int_distribution<int> num(-9, 9), den(1, 5);
    std::vector<Rat> c(static_cast<size_t>(euler_phi(m)));
    for (auto& x : c) x = Rat(num(rng), den(rng));
    return Cyclo(m, c);
}

void matrices_cases(const SuiteConfig& cfg, Cases& out) {
    const std::string S = "matrices";
    out.push_back({S, "arith.field_axioms", [](uint64_t seed) {
                       std::mt19937_64 rng(seed);
                       const long conductors[] = {1, 3, 4, 5, 8, 9, 12};
                       Tally t;
                       for (int k = 0; k < 60; ++k) {
                           Cyclo a = random_cyclo(rng, conductors[rng() % 7]), b = random_cyclo(rng, conductors[rng() % 7]),
                                 c = random_cyclo(rng, conductors[rng() % 7]);
                           auto w = [&] { return Json{{"a", to_json(a)}, {"b", to_json(b)}, {"c", to_json(c)}}; };
                           t.check((a * b) * c == a * (b * c), w);
                           t.check((a + b) + c == a + (b + c), w);
                           t.check(a * (b + c) == a * b + a * c, w);
                           t.check(a * b == b * a, w);
                           if (!a.is_zero()) t.check(a * a.inv() == Cyclo(1), w);
                       }
                       return t.result();
                   }});
    out.push_back({S, "arith.valuation_multiplicative", [](uint64_t seed) {
                       std::mt19937_64 rng(seed);
                       std::uniform_int_distribution<long> d(-5000, 5000);
                       const long ps[] = {2, 3, 5, 7};
                       Tally t;
                       for (int k = 0; k < 1000; ++k) {
                           long p = ps[rng() % 4];
                           Rat x = Rat(d(rng)) / Rat(std::max<long>(1, std::labs(d(rng))));
                           Rat y = Rat(d(rng)) / Rat(std::max<long>(1, std::labs(d(rng))));
                           t.check(valuation(x * y, p) == valuation(x, p) + valuation(y, p),
                                   [&] { return Json{{"p", p}, {"x", to_json(x)}, {"y", to_json(y)}}; });
                       }
                       return t.result();
                   }});
    out.push_back({S, "arith.laurent_inverse", [](uint64_t seed) {
                       std::mt19937_64 rng(seed);
                       LaurentPoly f = LaurentPoly::var("f"), x = LaurentPoly::var("x");
                       auto unimodular = [&](size_t n) {
                           LaurentMatrix m = LaurentMatrix::identity(n);
                           for (int k = 0; k < 4; ++k) {
                               size_t i = rng() % n, j = rng() % n;
                               if (i == j) continue;
                               LaurentMatrix e = LaurentMatrix::identity(n);
                               e(i, j) = (rng() % 2 ? f : x).pow(static_cast<long>(rng() % 3) - 1) *
                                         LaurentPoly(static_cast<long>(rng() % 3) + 1);
                               m = m * e;
                           }
                           LaurentMatrix d = LaurentMatrix::identity(n);
                           d(rng() % n, rng() % n) = f.pow(static_cast<long>(rng() % 5) - 2);
                           return m * d;
                       };
                       Tally t;
                       for (int k = 0; k < 10; ++k) {
                           size_t n = 2 + rng() % 3;
                           LaurentMatrix a = unimodular(n), b = unimodular(n);
                           t.check(inverse(a * b) == inverse(b) * inverse(a),
                                   [&] { return Json{{"a", to_json(a)}, {"b", to_json(b)}}; });
                       }
                       return t.result();
                   }});
    for (int n = std::max(2, cfg.n_min); n <= 6; ++n) {
        out.push_back({S, "hf_entries.n" + std::to_string(n), [n](uint64_t) {
                           return verdict(check_hf_entries(static_cast<size_t>(n)), Json{{"n", n}});
                       }});
        out.push_back({S, "inverseft.n" + std::to_string(n), [n](uint64_t) {
                           return verdict(check_inverseft(static_cast<size_t>(n)), Json{{"n", n}});
                       }});
    }
    out.push_back({S, "iota_involution", [](uint64_t seed) {
                       std::mt19937_64 rng(seed);
                       Tally t;
                       for (size_t n = 2; n <= 5; ++n)
                           for (int k = 0; k < 5; ++k) {
                               RatMatrix g = random_rat_invertible(rng, n);
                               t.check(iota(iota(g)) == g, [&] { return Json{{"g", to_json(g)}}; });
                           }
                       return t.result();
                   }});
    for (int n = 3; n <= cfg.symbolic_n_max; ++n)
        out.push_back({S, "inverseh.symbolic.n" + std::to_string(n), [n](uint64_t) {
                           InversehReport r = verify_inverseh(GlnContext::symbolic(n), LaurentPoly::var("x"));
                           Json w{{"n", n},
                                  {"identity", r.identity},
                                  {"det_one", r.det_one},
                                  {"n_in_iwahori", r.n_in_iwahori},
                                  {"conj_in_iwahori", r.conj_in_iwahori}};
                           if (!r.identity) w["difference"] = to_json(r.difference);
                           return verdict(r.ok(), w);
                       }});
    int n_lo = std::max(3, cfg.n_min), n_hi = std::max(n_lo, std::min(cfg.n_max + 1, 5));
    std::vector<long> primes = cfg.primes;
    int r_lo = cfg.r_min, r_hi = cfg.r_max;
    for (int k = 0; k < cfg.numeric_samples; ++k)
        out.push_back({S, "inverseh.numeric." + std::to_string(k), [=](uint64_t seed) {
                           std::mt19937_64 rng(seed);
                           int n = n_lo + static_cast<int>(rng() % static_cast<uint64_t>(n_hi - n_lo + 1));
                           long p = primes[rng() % primes.size()];
                           int r = r_lo + static_cast<int>(rng() % static_cast<uint64_t>(r_hi - r_lo + 1));
                           int nu = r + static_cast<int>(rng() % 2);
                           std::uniform_int_distribution<long> d(1, 40);
                           long a = d(rng), b = d(rng);
                           while (a % p == 0) ++a;
                           while (b % p == 0) ++b;
                           Rat x = Rat(rng() % 2 ? a : -a, b);
                           InversehReport rep = verify_inverseh(GlnContext::numeric(n, p, r, nu), LaurentPoly(x));
                           return verdict(rep.ok(), Json{{"n", n},
                                                         {"p", p},
                                                         {"r", r},
                                                         {"nu", nu},
                                                         {"x", to_json(x)},
                                                         {"identity", rep.identity},
                                                         {"det_one", rep.det_one},
                                                         {"n_in_iwahori", rep.n_in_iwahori},
                                                         {"conj_in_iwahori", rep.conj_in_iwahori}});
                       }});
    for (int n = cfg.n_min; n <= std::min(cfg.n_max, 4); ++n)
        for (long p : cfg.primes)
            out.push_back({S, "epimorphism.n" + std::to_string(n) + ".p" + std::to_string(p), [n, p](uint64_t) {
                               EpimorphismReport r = verify_epimorphism(GlnContext::numeric(n, p, 1, 1));
                               Json w{{"n", n},
                                      {"p", p},
                                      {"group_order", r.group_order},
                                      {"classes_hit", r.witness.size()},
                                      {"pairs", r.pairs},
                                      {"det_congruent", r.congruent_to_last_column},
                                      {"class_well_defined", r.class_well_defined},
                                      {"homomorphism", r.homomorphism}};
                               if (r.counterexample)
                                   w["counterexample"] = {{"u", r.counterexample->first}, {"w", r.counterexample->second}};
                               if (!r.message.empty()) w["message"] = r.message;
                               return verdict(r.ok && r.congruent_to_last_column, w);
                           }});
}

// hecke ------------------------------------------------------------------------------------------

long vp_cosets(int n, long p) { return ipow(p, (n + 1) * n * (n - 1) / 6); }

long max_t_exponent(const LaurentPoly& l, int tid) {
    long deg = 0;
    for (const auto& [mono, c] : l.terms())
        for (const auto& [id, e] : mono)
            if (id == tid) deg = std::max(deg, e);
    return deg;
}

void hecke_cases(const SuiteConfig& cfg, Cases& out) {
    const std::string S = "hecke";
    long budget = cfg.max_vp_cosets;
    int samples = cfg.coverage_samples;
    for (int n = cfg.n_min; n <= cfg.n_max; ++n)
        for (long p : cfg.primes)
            for (int r = cfg.r_min; r <= cfg.r_max; ++r) {
                std::string g = grid_id(n, p, r);
                if (vp_cosets(n, p) > budget) {
                    out.push_back({S, "grid." + g, [=](uint64_t) {
                                       return CaseResult{CaseStatus::skip,
                                                         Json{{"reason", "V_p coset count above hecke.max_vp_cosets"},
                                                              {"cosets", vp_cosets(n, p)},
                                                              {"budget", budget}}};
                                   }});
                    continue;
                }
                out.push_back({S, "gritsenko." + g, [=](uint64_t) {
                                   GritsenkoReport rep = verify_gritsenko(CosetSpace::iwahori(n, p, r));
                                   Json w{{"n", n}, {"p", p}, {"r", r}, {"coefficient_ok", rep.coefficient_ok}};
                                   if (rep.first_mismatch) {
                                       w["first_mismatch"] = *rep.first_mismatch;
                                       w["difference"] = to_json(rep.difference);
                                   }
                                   return verdict(rep.ok, w);
                               }});
                out.push_back({S, "counts." + g, [=](uint64_t) {
                                   auto s = CosetSpace::iwahori(n, p, r);
                                   Tally t;
                                   Json counts = Json::object();
                                   for (int nu = 0; nu <= n; ++nu) {
                                       long got = static_cast<long>(expand_V(s, nu).size()), want = ipow(p, nu * (n - nu));
                                       counts["V" + std::to_string(nu)] = got;
                                       t.check(got == want, [&] {
                                           return Json{{"op", "V" + std::to_string(nu)}, {"count", got}, {"expected", want}};
                                       });
                                   }
                                   long got = static_cast<long>(expand_Vp(s).size()), want = vp_cosets(n, p);
                                   counts["Vp"] = got;
                                   t.check(got == want,
                                           [&] { return Json{{"op", "Vp"}, {"count", got}, {"expected", want}}; });
                                   return t.result(Json{{"counts", counts}});
                               }});
                out.push_back({S, "coverage." + g, [=](uint64_t seed) {
                                   auto s = CosetSpace::iwahori(n, p, r);
                                   std::vector<HeckeOperatorTag> tags{{HeckeOp::Vp, 0}, {HeckeOp::Vp_prime, 0}};
                                   for (int i = 1; i <= n; ++i) tags.push_back({HeckeOp::U, i});
                                   for (int nu = 0; nu <= n; ++nu) tags.push_back({HeckeOp::V, nu});
                                   for (int nu = 0; nu <= n; ++nu) tags.push_back({HeckeOp::T, nu});
                                   Tally t;
                                   Json ops = Json::object();
                                   uint64_t k = 0;
                                   for (const auto& tag : tags) {
                                       CoverageReport rep = check_coverage(expand_operator(s, tag), double_coset_rep(s, tag),
                                                                           samples, seed + k++);
                                       ops[tag.str()] = {{"disjoint", rep.disjoint},
                                                         {"inside_monoid", rep.inside_monoid},
                                                         {"uncovered", rep.uncovered},
                                                         {"multiply_hit", rep.multiply_hit}};
                                       t.check(rep.ok(), [&] {
                                           Json w{{"op", tag.str()}};
                                           if (rep.witness) w["sample"] = to_json(*rep.witness);
                                           return w;
                                       });
                                   }
                                   return t.result(Json{{"samples", samples}, {"operators", ops}});
                               }});
                out.push_back({S, "commute_V." + g, [=](uint64_t) {
                                   CommutativityReport rep = verify_commutativity(CosetSpace::iwahori(n, p, r), HeckeOp::V);
                                   Json w{{"n", n}, {"p", p}, {"r", r}};
                                   if (rep.counterexample) w["pair"] = {rep.counterexample->first, rep.counterexample->second};
                                   return verdict(rep.ok, w);
                               }});
            }
    for (int n = cfg.n_min; n <= std::min(cfg.n_max, 3); ++n)
        for (long p : cfg.primes) {
            if (p > 3) continue;
            std::string g = "n" + std::to_string(n) + ".p" + std::to_string(p);
            // the three counts share one enumeration but are reported separately
            auto counts = std::make_shared<std::once_flag>();
            auto report = std::make_shared<IndexReport>();
            auto get = [=] {
                std::call_once(*counts, [&] { *report = count_indices(GlnContext::numeric(n, p, 1, 1)); });
                return *report;
            };
            out.push_back({S, "index.unipotent." + g, [=](uint64_t) {
                               IndexReport r = get();
                               return verdict(r.unipotent_ok(), Json{{"count", to_json(r.unipotent_index)},
                                                                     {"formula", to_json(r.unipotent_formula)}});
                           }});
            out.push_back({S, "index.gamma_relative." + g, [=](uint64_t) {
                               IndexReport r = get();
                               return verdict(r.relative_ok(), Json{{"count", to_json(r.gamma_relative)},
                                                                    {"formula", to_json(r.gamma_relative_formula)}});
                           }});
            out.push_back({S, "index.gamma." + g, [=](uint64_t) {
                               IndexReport r = get();
                               Json w{{"count", to_json(r.gamma_index)}, {"formula", to_json(r.gamma_formula)}};
                               if (r.gamma_index_enumerated) w["count_enumerated"] = to_json(*r.gamma_index_enumerated);
                               return verdict(r.gamma_ok(), w);
                           }});
        }
    for (int n = cfg.n_min; n <= cfg.satake_n_max; ++n)
        for (long p : cfg.primes) {
            if (n == 4 && p > 3) continue;
            out.push_back({S, "satake.n" + std::to_string(n) + ".p" + std::to_string(p), [=](uint64_t) {
                               Tally t;
                               std::vector<LaurentPoly> ys;
                               for (int i = 1; i <= n; ++i) ys.push_back(LaurentPoly::var("Y" + std::to_string(i)));
                               for (int nu = 0; nu <= n; ++nu) {
                                   LaurentPoly got = satake_via_cosets(n, p, nu);
                                   LaurentPoly want =
                                       LaurentPoly(Rat(p).pow(nu * (n - 1) - nu * (nu - 1) / 2)) * elementary_symmetric(ys, nu);
                                   t.check(got == want, [&] {
                                       return Json{{"nu", nu}, {"got", got.str()}, {"expected", want.str()}};
                                   });
                               }
                               return t.result();
                           }});
        }
    for (long p : cfg.primes)
        out.push_back({S, "spherical_T1_squared.p" + std::to_string(p), [p](uint64_t) {
                           CosetSum t1 = spherical_T(2, p, 1);
                           CosetSum sq = convolve(t1, t1);
                           SphericalDecomposition d = decompose_spherical(sq);
                           Json parts = Json::array();
                           for (const auto& [ed, c] : d.parts) parts.push_back(Json{{"divisors", ed}, {"coefficient", to_json(c)}});
                           bool shape = d.consistent && d.parts.size() == 2 && d.parts[0].first == std::vector<long>{0, 2} &&
                                        d.parts[0].second == Rat(1) && d.parts[1].first == std::vector<long>{1, 1} &&
                                        d.parts[1].second == Rat(p + 1);
                           bool mult = constant_term_map(restrict_spherical(sq)) ==
                                       constant_term_map(expand_T(CosetSpace::iwahori(2, p), 1)).pow(2);
                           return verdict(shape && mult, Json{{"parts", parts}, {"satake_multiplicative", mult}});
                       }});
    for (int n = std::max(2, cfg.n_min); n <= cfg.satake_n_max; ++n)
        out.push_back({S, "shintani_degree.n" + std::to_string(n), [n](uint64_t seed) {
                           std::mt19937_64 rng(seed);
                           std::vector<Cyclo> alpha = random_distinct_roots(rng, n), beta = random_distinct_roots(rng, n - 1);
                           LaurentPoly l = shintani_lfactor(alpha, beta);
                           LaurentPoly ld = shintani_lfactor_det(alpha, beta);
                           long deg = max_t_exponent(l, intern_var("T"));
                           return verdict(l == ld && deg == n * (n - 1) && l.constant_term() == Cyclo(1),
                                          Json{{"degree", deg}, {"expected", n * (n - 1)}, {"routes_agree", l == ld}});
                       }});
}

// projections ------------------------------------------------------------------------------------

void projections_cases(const SuiteConfig& cfg, Cases& out) {
    const std::string S = "projections";
    int trials = cfg.projection_trials;
    std::vector<long> primes = cfg.primes;
    for (int n = cfg.n_min; n <= cfg.n_max; ++n) {
        std::string tag = "n" + std::to_string(n);
        out.push_back({S, "projection." + tag, [=](uint64_t seed) {
                           std::mt19937_64 rng(seed);
                           Tally t;
                           for (int k = 0; k < trials; ++k) {
                               Rat q(primes[static_cast<size_t>(k) % primes.size()]);
                               std::vector<Cyclo> roots = random_distinct_roots(rng, n);
                               HeckeModule mod = permutation_module(rng, n, q, roots, static_cast<size_t>(n + 2), k % 2 == 0);
                               HeckeRoots hr{std::vector<Cyclo>(roots.begin(), roots.end() - 1), q};
                               auto w = [&] { return Json{{"trial", k}, {"roots", to_json(roots)}, {"q", to_json(q)}}; };
                               CycloMatrix proj;
                               try {
                                   proj = projection_operator(mod, hr);
                               } catch (const ProjectionError&) {
                                   continue;  // coincident products of roots: outside the operator's domain
                               }
                               t.check(proj * proj == proj, w);
                               for (int nu = 0; nu <= n; ++nu) t.check(proj * mod.V(nu) == mod.V(nu) * proj, w);
                               CycloVector v = random_rational_vector(rng, mod.dim());
                               CycloVector pv = project(v, hr, mod);
                               t.check(in_eigenspace(mod, hr, pv), w);
                               t.check(project(pv, hr, mod) == pv, w);
                           }
                           return t.result(Json{{"modules", trials}});
                       }});
        out.push_back({S, "dual_roots." + tag, [=](uint64_t seed) {
                           std::mt19937_64 rng(seed);
                           Tally t;
                           for (int k = 0; k < trials; ++k) {
                               Rat q(primes[static_cast<size_t>(k) % primes.size()]);
                               std::vector<Cyclo> roots = random_distinct_roots(rng, n);
                               HeckeModule mod = permutation_module(rng, n, q, roots, static_cast<size_t>(n + 1), true);
                               HeckeModule dual = contragredient(mod);
                               CycloVector v = random_rational_vector(rng, mod.dim());
                               auto w = [&] { return Json{{"trial", k}, {"roots", to_json(roots)}, {"q", to_json(q)}}; };
                               std::vector<Cyclo> droots;
                               for (const auto& r : roots) {
                                   Cyclo d = dual_root(r, n, q);
                                   droots.push_back(d);
                                   t.check(is_zero_vector(apply_H(dual, v, d)), w);
                                   t.check(dual_root(d, n, q) == r, w);
                               }
                               t.check(HeckeRoots{droots, q}.eta(n) == HeckeRoots{roots, q}.eta(n).inv(), w);
                           }
                           return t.result(Json{{"modules", trials}});
                       }});
        out.push_back({S, "dual_projection." + tag, [=](uint64_t seed) {
                           std::mt19937_64 rng(seed);
                           Tally t;
                           Json constants = Json::array();
                           int done = 0, attempts = 0;
                           while (done < 5 && attempts < 50) {
                               ++attempts;
                               Rat q(primes[static_cast<size_t>(attempts) % primes.size()]);
                               std::vector<Cyclo> lam = random_distinct_roots(rng, n), lamp = random_distinct_roots(rng, n - 1);
                               HeckeModule a = permutation_module(rng, n, q, lam, static_cast<size_t>(n), done % 2 == 1);
                               HeckeModule b = permutation_module(rng, n - 1, q, lamp, static_cast<size_t>(n - 1), done % 2 == 1);
                               CycloVector m = random_rational_vector(rng, a.dim() * b.dim());
                               std::vector<Cyclo> lam_head(lam.begin(), lam.end() - 1);
                               DualProjectionReport r;
                               try {
                                   r = verify_dual_projection(a, b, m, lam_head, lamp);
                               } catch (const ProjectionError&) {
                                   continue;
                               }
                               if (r.degenerate) continue;
                               ++done;
                               t.check(r.ok && r.eigen_ok && r.dual_eigen_ok && r.constant && !r.constant->is_zero(), [&] {
                                   return Json{{"lambda", to_json(lam)}, {"lambda_prime", to_json(lamp)}, {"message", r.message}};
                               });
                               if (r.constant) constants.push_back(to_json(*r.constant));
                           }
                           t.check(done == 5, [&] { return Json{{"message", "too few nondegenerate samples"}}; });
                           return t.result(Json{{"constants", constants}});
                       }});
    }
    int rmax = cfg.recisums_n_max;
    out.push_back({S, "recisums", [rmax](uint64_t) { return verdict(verify_recisums(rmax), Json{{"n_max", rmax}}); }});
}

// gauss ------------------------------------------------------------------------------------------

std::vector<std::pair<long, long>> prime_powers_upto(long bound) {
    std::vector<std::pair<long, long>> out;
    for (long p = 2; p <= bound; ++p) {
        if (!is_prime(p)) continue;
        long m = p;
        for (long s = 1; m <= bound; ++s, m *= p) out.push_back({p, s});
    }
    return out;
}

void gauss_cases(const SuiteConfig& cfg, Cases& out) {
    const std::string S = "gauss";
    out.push_back({S, "quadratic.p5", [](uint64_t) {
                       Cyclo g = gauss_sum(character_of_order(5, 2));
                       return verdict(g.pow(2) == Cyclo(5), Json{{"G", to_json(g)}, {"G_squared", to_json(g.pow(2))}});
                   }});
    out.push_back({S, "quadratic.p3", [](uint64_t) {
                       Cyclo g = gauss_sum(character_of_order(3, 2));
                       return verdict(g.pow(2) == Cyclo(-3), Json{{"G", to_json(g)}, {"G_squared", to_json(g.pow(2))}});
                   }});
    for (auto [p, s] : prime_powers_upto(cfg.gauss_max_modulus)) {
        std::string tag = "p" + std::to_string(p) + ".s" + std::to_string(s);
        out.push_back({S, "characters." + tag, [p, s](uint64_t) {
                           auto chars = all_characters(p, s);
                           Tally t;
                           t.check(static_cast<long>(chars.size()) == euler_phi(int_pow(p, s)),
                                   [&] { return Json{{"count", chars.size()}}; });
                           for (size_t i = 0; i < chars.size(); ++i)
                               for (size_t j = i + 1; j < chars.size(); ++j)
                                   t.check(!(chars[i] == chars[j]), [&] { return Json{{"duplicate", {i, j}}}; });
                           return t.result();
                       }});
        out.push_back({S, "abs_square." + tag, [p, s](uint64_t) {
                           Tally t;
                           long primitive = 0;
                           for (const auto& chi : all_characters(p, s)) {
                               if (!chi.primitive()) continue;
                               ++primitive;
                               Cyclo g = classical_gauss_sum(chi);
                               t.check(g * g.conj() == Cyclo(int_pow(p, s)), [&] { return Json{{"G", to_json(g)}}; });
                           }
                           return t.result(Json{{"primitive", primitive}});
                       }});
        out.push_back({S, "twisted." + tag, [p, s](uint64_t) {
                           // c runs over p^{-s} Z / Z, which fixes psi(c g) for every unit g
                           Tally t;
                           long m = int_pow(p, s);
                           for (const auto& chi : all_characters(p, s)) {
                               if (chi.conductor_exponent() == 0) continue;
                               Cyclo g = classical_gauss_sum(chi);
                               for (long a = 0; a < m; ++a) {
                                   Rat c = Rat(a, m);
                                   Cyclo direct = twisted_sum_direct(chi, c, s), closed = twisted_sum_closed(chi, c, s, g);
                                   t.check(direct == closed, [&] {
                                       return Json{{"c", to_json(c)}, {"direct", to_json(direct)}, {"closed", to_json(closed)}};
                                   });
                               }
                           }
                           return t.result();
                       }});
    }
}

// weights ----------------------------------------------------------------------------------------

std::vector<long> emb_brute(const std::vector<long>& mu, const std::vector<long>& nu) {
    // nu_check + x interlaces mu, scanned over a window wider than any solution
    std::vector<long> check(nu.rbegin(), nu.rend());
    for (auto& c : check) c = -c;
    long span = 0;
    for (long x : mu) span = std::max(span, std::labs(x));
    for (long x : nu) span = std::max(span, std::labs(x));
    std::vector<long> out;
    for (long x = -3 * span - 2; x <= 3 * span + 2; ++x) {
        bool ok = true;
        for (size_t i = 0; i < check.size(); ++i) ok = ok && mu[i] >= check[i] + x && check[i] + x >= mu[i + 1];
        if (ok) out.push_back(x);
    }
    return out;
}

void weights_cases(const SuiteConfig& cfg, Cases& out) {
    const std::string S = "weights";
    int pairs = cfg.weight_pairs, n_max = cfg.weight_n_max;
    out.push_back({S, "random_pairs", [pairs, n_max](uint64_t seed) {
                       std::mt19937_64 rng(seed);
                       Tally t;
                       long with_emb = 0;
                       for (int k = 0; k < pairs; ++k) {
                           int n = 2 + static_cast<int>(rng() % static_cast<uint64_t>(n_max - 1));
                           std::vector<long> mu = random_pure_weight(rng, n), nu = random_pure_weight(rng, n - 1);
                           CriticalData d = critical_data(Weight(mu), Weight(nu));
                           auto w = [&] { return Json{{"mu", mu}, {"nu", nu}}; };
                           t.check(d.emb == emb_brute(mu, nu), w);
                           for (long x : d.emb) t.check(std::binary_search(d.emb.begin(), d.emb.end(), d.w + d.v - x), w);
                           if (!d.parity_ok) {
                               t.check(d.critical_set.empty(), w);
                               continue;
                           }
                           if (!d.emb.empty()) ++with_emb;
                           t.check(d.critical_set.size() == d.emb.size(), w);
                           if (d.critical_set.size() != d.emb.size()) continue;
                           for (size_t i = 0; i < d.emb.size(); ++i) {
                               t.check(d.critical_set[i] == Rat(1, 2) + Rat(d.emb[i]), w);
                               t.check(d.critical_set[i] + d.critical_set[d.emb.size() - 1 - i] == Rat(2) * d.center, w);
                           }
                       }
                       return t.result(Json{{"pairs", pairs}, {"pairs_with_critical_values", with_emb}});
                   }});
    out.push_back({S, "gl2_count", [](uint64_t) {
                       Tally t;
                       for (long a = -6; a <= 6; ++a)
                           for (long b = -6; b <= a; ++b)
                               for (long c = -4; c <= 4; ++c) {
                                   long got = static_cast<long>(emb_set(Weight(std::vector<long>{c}), Weight(std::vector<long>{a, b})).size());
                                   t.check(got == a - b + 1, [&] { return Json{{"mu", {a, b}}, {"nu", {c}}, {"count", got}}; });
                               }
                       return t.result();
                   }});
    out.push_back({S, "branch_count", [n_max](uint64_t seed) {
                       std::mt19937_64 rng(seed);
                       std::uniform_int_distribution<long> step(0, 3), start(-4, 4);
                       Tally t;
                       for (int k = 0; k < 200; ++k) {
                           int n = 1 + static_cast<int>(rng() % static_cast<uint64_t>(n_max));
                           std::vector<long> mu{start(rng)};
                           while (mu.size() < static_cast<size_t>(n)) mu.push_back(mu.back() - step(rng));
                           long got = static_cast<long>(branch(mu).size()), want = branch_count(mu);
                           t.check(got == want, [&] { return Json{{"mu", mu}, {"enumerated", got}, {"formula", want}}; });
                       }
                       return t.result();
                   }});
}

// distributions ----------------------------------------------------------------------------------

void distributions_cases(const SuiteConfig& cfg, Cases& out) {
    const std::string S = "distributions";
    long depth = cfg.distribution_depth;
    for (long p : cfg.distribution_primes) {
        std::string tag = "p" + std::to_string(p);
        for (long big_m = 2; big_m <= depth; ++big_m)
            out.push_back({S, "relation." + tag + ".M" + std::to_string(big_m), [p, big_m](uint64_t seed) {
                               std::mt19937_64 rng(seed);
                               Tally t;
                               for (long h : {1L, 2L}) {
                                   RayTower tower = RayTower::with_class_group(p, h);
                                   Cyclo kappa = random_p_unit(rng, p);
                                   Distribution mu = build_mu(tower, random_symbol(rng, tower, big_m, 2, kappa), 1);
                                   RelationReport r = check_distribution_relation(mu);
                                   t.check(r.ok, [&] {
                                       return Json{{"class_number", h},
                                                   {"level", r.witness->level},
                                                   {"x", to_json(r.witness->x, tower)},
                                                   {"coordinate", r.witness->coordinate}};
                                   });
                               }
                               return t.result();
                           }});
        out.push_back({S, "level_stable." + tag, [p](uint64_t seed) {
                           std::mt19937_64 rng(seed);
                           RayTower tower = RayTower::rational(p);
                           Distribution mu = build_mu(tower, random_symbol(rng, tower, 3, 2, random_p_unit(rng, p)), 1);
                           Tally t;
                           long count = 0;
                           for (long s = 1; s <= 2; ++s)
                               for (const auto& chi : all_characters(p, s)) {
                                   ++count;
                                   CharacterIntegral r = integrate_character(mu, chi);
                                   for (long m = r.level; m <= 3; ++m)
                                       t.check(integrate_at_level(mu, chi, m) == r.value,
                                               [&] { return Json{{"modulus", chi.modulus()}, {"level", m}}; });
                               }
                           return t.result(Json{{"characters", count}});
                       }});
        out.push_back({S, "fourier_inversion." + tag, [p](uint64_t seed) {
                           std::mt19937_64 rng(seed);
                           Tally t;
                           for (long h : {1L, 2L}) {
                               RayTower tower = RayTower::with_class_group(p, h);
                               Distribution mu = build_mu(tower, random_symbol(rng, tower, 3, 1, random_p_unit(rng, p)), 1);
                               for (const auto& x0 : tower.classes(2))
                                   t.check(fourier_inversion_holds(mu, 2, x0),
                                           [&] { return Json{{"class_number", h}, {"x0", to_json(x0, tower)}}; });
                           }
                           return t.result();
                       }});
        out.push_back({S, "boundedness.unit_kappa." + tag, [p](uint64_t seed) {
                           std::mt19937_64 rng(seed);
                           RayTower tower = RayTower::rational(p);
                           Tally t;
                           for (Cyclo kappa : {Cyclo(1), Cyclo(-1), Cyclo(p + 1), Cyclo::zeta(3)}) {
                               Distribution mu = build_mu(tower, random_symbol(rng, tower, 3, 2, kappa, true), 1);
                               BoundednessReport r = check_boundedness(mu);
                               t.check(r.ok, [&] { return Json{{"kappa", to_json(kappa)}, {"valuation", r.valuation}}; });
                           }
                           return t.result();
                       }});
        out.push_back({S, "boundedness.slope_one_detected." + tag, [p](uint64_t) {
                           RayTower tower = RayTower::rational(p);
                           EigenSymbol sym{Cyclo(p), 3,
                                           std::vector<CycloVector>(static_cast<size_t>(tower.size(3)), CycloVector{Cyclo(1)})};
                           BoundednessReport r = check_boundedness(build_mu(tower, sym, 1));
                           Json w{{"detected", !r.ok}, {"valuation", r.valuation}};
                           if (r.witness) w["level"] = r.witness->level;
                           return verdict(!r.ok && r.valuation < 0, w);
                       }});
    }
    out.push_back({S, "kappa_hat.exponents", [](uint64_t) {
                       SlopeData sd;
                       sd.kappa = Cyclo(3);
                       sd.kappa_prime = Cyclo(1);
                       sd.slope = Rat(0);
                       MultChar chi = character_of_order(3, 2);
                       Tally t;
                       for (int n = 2; n <= 6; ++n)
                           for (long d = -2; d <= 3; ++d) {
                               long binom3 = 0, binom2 = 0;
                               for (int a = 0; a < n; ++a)
                                   for (int b = a + 1; b < n; ++b) {
                                       ++binom2;
                                       for (int c = b + 1; c < n; ++c) ++binom3;
                                   }
                               KappaHat k = kappa_hat({chi, d, sd, 0}, n);
                               long e = binom3 + d * binom2;
                               t.check(k.norm_exponent == e && k.value == Cyclo(Rat(3).pow(e) * Rat(3).pow(-1)), [&] {
                                   return Json{{"n", n}, {"nu", d}, {"exponent", k.norm_exponent}, {"expected", e}};
                               });
                           }
                       return t.result();
                   }});
    for (int n : {2, 3})
        for (long p : cfg.primes) {
            if (p > 3) continue;
            out.push_back({S, "pushdown_index.n" + std::to_string(n) + ".p" + std::to_string(p), [n, p](uint64_t) {
                               Rat r = pushdown_index_ratio(n, p);
                               return verdict(r == Rat(1), Json{{"ratio", to_json(r)}});
                           }});
        }
    if (!cfg.distribution_fixture.empty()) {
        std::string path = cfg.distribution_fixture;
        out.push_back({S, "fixture", [path](uint64_t) {
                           Json j;
                           {
                               std::ifstream in(path);
                               if (!in) throw std::runtime_error("cannot open distribution fixture '" + path + "'");
                               try {
                                   in >> j;
                               } catch (const nlohmann::json::exception& e) {
                                   throw std::runtime_error("fixture '" + path + "': " + e.what());
                               }
                           }
                           Distribution mu = distribution_from_json(j);
                           RelationReport r = check_distribution_relation(mu);
                           Json w{{"path", path}};
                           if (r.witness)
                               w["witness"] = {{"level", r.witness->level},
                                               {"x", to_json(r.witness->x, mu.tower())},
                                               {"coordinate", r.witness->coordinate}};
                           return verdict(r.ok, w);
                       }});
    }
}

// functional equation ----------------------------------------------------------------------------

struct DualPair {
    RayTower tower;
    InverseKappaData data;
    EigenSymbol sym;
    Distribution mu, mu_dual;
    std::vector<long> emb;
};

DualPair make_dual_pair(std::mt19937_64& rng, long p, int n) {
    std::vector<CycloVector> spec_n(1), spec_m(1);
    for (int i = 0; i < n; ++i) spec_n[0].push_back(random_p_unit(rng, p));
    for (int i = 0; i < n - 1; ++i) spec_m[0].push_back(random_p_unit(rng, p));
    HeckeModule mod_n = HeckeModule::diagonal(n, Rat(p), spec_n);
    HeckeModule mod_m = HeckeModule::diagonal(n - 1, Rat(p), spec_m);
    InverseKappaData d = inverse_kappa_data(mod_n, mod_m, {Cyclo(1)});
    RayTower t = RayTower::rational(p);
    Weight mu_w(n == 2 ? std::vector<long>{3, 0} : std::vector<long>{3, 1, -1});
    Weight nu_w(n == 2 ? std::vector<long>{1} : std::vector<long>{1, -1});
    std::vector<long> emb = emb_set(nu_w, mu_w);
    EigenSymbol sym = random_symbol(rng, t, 3, emb.size(), d.kappa);
    Distribution mu = build_mu(t, sym, 1);
    Distribution mu_dual = build_mu(t, dual_symbol(t, sym, d, emb_reversal()), 1);
    return {t, d, sym, mu, mu_dual, emb};
}

void functional_cases(const SuiteConfig& cfg, Cases& out) {
    const std::string S = "functional-equation";
    for (long p : cfg.dual_primes)
        for (int n : {2, 3}) {
            std::string tag = "p" + std::to_string(p) + ".n" + std::to_string(n);
            out.push_back({S, "synthetic." + tag, [p, n](uint64_t seed) {
                               std::mt19937_64 rng(seed);
                               DualPair dp = make_dual_pair(rng, p, n);
                               ValueVee vee = emb_reversal();
                               FunctionalEquationReport rep = check_functional_equation(dp.mu, dp.mu_dual, vee, n, dp.data);
                               Tally t;
                               t.check(rep.ok && rep.cosets_ok && rep.eigen_relation_ok == std::optional<bool>(true), [&] {
                                   Json w{{"cosets_ok", rep.cosets_ok}};
                                   if (rep.witness) w["level"] = rep.witness->level;
                                   return w;
                               });
                               t.check(check_distribution_relation(dp.mu_dual).ok, [] { return Json{{"dual_relation", false}}; });
                               // tau_nu(mu(x)) = tau_{-nu}(mu_dual(x^vee))
                               size_t d = dp.emb.size();
                               for (long m = 1; m <= 3; ++m)
                                   for (const auto& a : dp.tower.classes(m))
                                       for (size_t i = 0; i < d; ++i)
                                           t.check(dp.mu.value(m, a)[i] == dp.mu_dual.value(m, dp.tower.vee(a, m, n))[d - 1 - i],
                                                   [&] { return Json{{"level", m}, {"x", a.x}, {"nu", dp.emb[i]}}; });
                               return t.result(Json{{"emb", dp.emb}});
                           }});
            out.push_back({S, "inverse_kappa." + tag, [p, n](uint64_t seed) {
                               std::mt19937_64 rng(seed);
                               Tally t;
                               for (int trial = 0; trial < 5; ++trial) {
                                   std::vector<CycloVector> spec_n(2), spec_m(2);
                                   for (auto& s : spec_n)
                                       for (int i = 0; i < n; ++i) s.push_back(random_p_unit(rng, p));
                                   for (auto& s : spec_m)
                                       for (int i = 0; i < n - 1; ++i) s.push_back(random_p_unit(rng, p));
                                   HeckeModule mod_n = HeckeModule::diagonal(n, Rat(p), spec_n);
                                   HeckeModule mod_m = HeckeModule::diagonal(n - 1, Rat(p), spec_m);
                                   CycloVector e(4, Cyclo(0));
                                   e[static_cast<size_t>(trial % 4)] = Cyclo(1);
                                   InverseKappaData d = inverse_kappa_data(mod_n, mod_m, e);
                                   for (long r = 1; r <= 4; ++r)
                                       t.check(inverse_kappa_holds(d, r), [&] {
                                           return Json{{"trial", trial}, {"r", r}, {"kappa", to_json(d.kappa)},
                                                       {"kappa_dual", to_json(d.kappa_dual)}};
                                       });
                               }
                               return t.result();
                           }});
            out.push_back({S, "corruption_detected." + tag, [p, n](uint64_t seed) {
                               std::mt19937_64 rng(seed);
                               DualPair dp = make_dual_pair(rng, p, n);
                               ValueVee vee = emb_reversal();
                               InverseKappaData bad = dp.data;
                               bad.kappa_dual *= Cyclo(p);
                               Distribution mu_bad = build_mu(dp.tower, dual_symbol(dp.tower, dp.sym, bad, vee), 1);
                               auto rb = check_functional_equation(dp.mu, mu_bad, vee, n, bad);
                               Distribution corrupted = dp.mu_dual;
                               CycloVector v = corrupted.value(3, {2, 0});
                               v[0] += Cyclo(1);
                               corrupted.set(3, {2, 0}, v);
                               auto rc = check_functional_equation(dp.mu, corrupted, vee, n, dp.data);
                               bool located = rc.witness && rc.witness->level == 3 &&
                                              dp.tower.vee(rc.witness->x, 3, n) == TowerClass{2, 0};
                               bool ok = !rb.ok && rb.eigen_relation_ok == std::optional<bool>(false) && !rb.cosets_ok &&
                                         !rc.ok && located;
                               return verdict(ok, Json{{"kappa_perturbation_detected", !rb.ok},
                                                       {"coset_corruption_detected", !rc.ok},
                                                       {"coset_located", located}});
                           }});
        }
}

}  // namespace

std::vector<CaseSpec> build_cases(const SuiteConfig& cfg) {
    cfg.validate();
    using Builder = void (*)(const SuiteConfig&, Cases&);
    const std::map<std::string, Builder> builders{{"matrices", matrices_cases},
                                                  {"hecke", hecke_cases},
                                                  {"projections", projections_cases},
                                                  {"gauss", gauss_cases},
                                                  {"weights", weights_cases},
                                                  {"distributions", distributions_cases},
                                                  {"functional-equation", functional_cases}};
    Cases out;
    for (const auto& name : suite_names()) {
        if (!cfg.enabled.at(name)) {
            out.push_back({name, "suite", [](uint64_t) {
                               return CaseResult{CaseStatus::skip, Json{{"reason", "disabled by configuration"}}};
                           }});
            continue;
        }
        builders.at(name)(cfg, out);
    }
    return out;
}

std::vector<CaseRecord> run_cases(const std::vector<CaseSpec>& cases, uint64_t seed, int jobs,
                                  const std::function<void(const CaseRecord&)>& sink) {
    std::vector<std::optional<CaseRecord>> results(cases.size());
    std::atomic<size_t> next{0};
    std::mutex mu;
    size_t emitted = 0;
    auto worker = [&] {
        for (;;) {
            size_t i = next.fetch_add(1);
            if (i >= cases.size()) return;
            const CaseSpec& c = cases[i];
            CaseRecord rec{c.suite, c.id, CaseStatus::fail, Json::object(), 0};
            auto t0 = std::chrono::steady_clock::now();
            try {
                CaseResult r = c.run(case_seed(seed, c.suite, c.id));
                rec.status = r.status;
                rec.witness = std::move(r.witness);
            } catch (const std::exception& e) {
                rec.status = CaseStatus::fail;
                rec.witness = Json{{"error", e.what()}};
            }
            rec.time_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
            std::lock_guard lock(mu);
            results[i] = std::move(rec);
            while (emitted < results.size() && results[emitted]) {
                if (sink) sink(*results[emitted]);
                ++emitted;
            }
        }
    };
    int n = std::max(1, std::min<int>(jobs, static_cast<int>(cases.size())));
    std::vector<std::thread> pool;
    for (int k = 1; k < n; ++k) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    std::vector<CaseRecord> out;
    out.reserve(results.size());
    for (auto& r : results) out.push_back(std::move(*r));
    return out;
}

}  // namespace hforge
