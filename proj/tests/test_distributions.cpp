#include "doctest.h"

#include "hforge/distributions.hpp"
#include "hforge/weights.hpp"

#include <random>

using namespace hforge;

namespace {

CycloVector random_vector(std::mt19937_64& rng, size_t d, long p, bool integral = false) {
    std::uniform_int_distribution<long> num(-9, 9), den(1, 4);
    CycloVector v(d);
    for (auto& x : v) {
        long q = integral ? 1 : den(rng);
        if (q % p == 0) q = 1;
        x = Cyclo(Rat(num(rng), q));
    }
    return v;
}

EigenSymbol random_symbol(std::mt19937_64& rng, const RayTower& t, long big_m, size_t d, Cyclo kappa,
                          bool integral = false) {
    EigenSymbol sym;
    sym.kappa = std::move(kappa);
    sym.base_level = big_m;
    for (long i = 0; i < t.size(big_m); ++i) sym.base_data.push_back(random_vector(rng, d, t.p(), integral));
    return sym;
}

Cyclo random_unit(std::mt19937_64& rng, long p) {
    std::uniform_int_distribution<long> num(1, 12), root(0, 5);
    long a = num(rng), b = num(rng);
    while (a % p == 0) ++a;
    while (b % p == 0) ++b;
    return Cyclo(Rat(a, b)) * Cyclo::zeta(6, root(rng)).simplified();
}

}  // namespace

TEST_SUITE("distributions") {

TEST_CASE("ray class towers") {
    for (long p : {2L, 3L, 5L})
        for (long h : {1L, 3L}) {
            RayTower t = RayTower::with_class_group(p, h);
            for (long m = 1; m <= 3; ++m) {
                CHECK(t.size(m) == euler_phi(int_pow(p, m)) * h);
                auto cls = t.classes(m);
                CHECK(static_cast<long>(cls.size()) == t.size(m));
                for (size_t i = 0; i < cls.size(); ++i) CHECK(t.index(m, cls[i]) == i);
                CHECK(t.transition_ok(m));
            }
        }
    RayTower t = RayTower::rational(3);
    CHECK(t.lifts({2, 0}, 1) == std::vector<TowerClass>{{2, 0}, {5, 0}, {8, 0}});
    CHECK_THROWS_AS(t.index(2, {3, 0}), std::invalid_argument);
    CHECK_THROWS_AS(RayTower::rational(4), std::invalid_argument);
}

TEST_CASE("class involution") {
    RayTower t5 = RayTower::rational(5);
    CHECK(t5.vee({2, 0}, 1, 2) == TowerClass{2, 0});
    CHECK(t5.vee({2, 0}, 1, 3) == TowerClass{3, 0});
    RayTower t3 = RayTower::with_class_group(3, 4);
    for (int n : {2, 3, 4})
        for (const auto& a : t3.classes(3)) {
            CHECK(t3.vee(t3.vee(a, 3, n), 3, n) == a);
            TowerClass prod = t3.mul(a, t3.vee(a, 3, n), 3);
            CHECK(prod.c == 0);
            CHECK(prod.x == (n % 2 ? 1 : 26));
        }
}

TEST_CASE("build_mu with constant base data") {
    RayTower t = RayTower::rational(3);
    EigenSymbol sym{Cyclo(3), 3, std::vector<CycloVector>(18, CycloVector{Cyclo(7), Cyclo(Rat(1, 2))})};
    Distribution mu = build_mu(t, sym, 1);
    // B_m = kappa^{-(M-m)} p^{M-m} b = b, so mu(x + p^m) = 3^{-m} b
    for (long m = 1; m <= 3; ++m)
        for (const auto& a : t.classes(m))
            CHECK(mu.value(m, a) == CycloVector{Cyclo(Rat(7) * Rat(3).pow(-m)), Cyclo(Rat(1, 2) * Rat(3).pow(-m))});
    CHECK(check_distribution_relation(mu).ok);
    sym.kappa = Cyclo(0);
    CHECK_THROWS_AS(build_mu(t, sym, 1), std::domain_error);
}

TEST_CASE("distribution relation holds by construction") {
    std::mt19937_64 rng(9);
    for (long p : {2L, 3L, 5L})
        for (long big_m = 2; big_m <= 4; ++big_m)
            for (long h : {1L, 2L}) {
                RayTower t = RayTower::with_class_group(p, h);
                Distribution mu = build_mu(t, random_symbol(rng, t, big_m, 2, random_unit(rng, p)), 1);
                CHECK(check_distribution_relation(mu).ok);
            }
    RayTower t = RayTower::rational(3);
    CHECK(check_distribution_relation(build_mu(t, random_symbol(rng, t, 3, 1, Cyclo(2)), 1)).ok);
}

TEST_CASE("corrupted values are located") {
    std::mt19937_64 rng(2);
    RayTower t = RayTower::rational(3);
    Distribution mu = build_mu(t, random_symbol(rng, t, 3, 2, Cyclo(2)), 1);
    Distribution bad = mu;
    CycloVector v = bad.value(1, {2, 0});
    v[1] += Cyclo(1);
    bad.set(1, {2, 0}, v);
    auto rep = check_distribution_relation(bad);
    REQUIRE_FALSE(rep.ok);
    CHECK(rep.witness->level == 1);
    CHECK(rep.witness->x == TowerClass{2, 0});
    CHECK(rep.witness->coordinate == 1);
    bad = mu;
    v = bad.value(3, {22, 0});
    v[0] -= Cyclo(Rat(1, 5));
    bad.set(3, {22, 0}, v);
    rep = check_distribution_relation(bad);
    REQUIRE_FALSE(rep.ok);
    CHECK(rep.witness->level == 2);
    CHECK(rep.witness->x == TowerClass{4, 0});
    CHECK(rep.witness->coordinate == 0);
}

TEST_CASE("Dirac family") {
    for (long p : {2L, 3L, 5L}) {
        RayTower t = RayTower::rational(p);
        Distribution mu = dirac(t, 1, 1, 4, {Cyclo(1), Cyclo(-2)});
        CHECK(check_distribution_relation(mu).ok);
        for (const auto& chi : all_characters(p, 2)) {
            auto integral = integrate_character(mu, chi);
            CHECK(integral.value == CycloVector{Cyclo(1), Cyclo(-2)});
        }
    }
    RayTower t = RayTower::rational(5);
    Distribution mu = dirac(t, 7, 1, 3, {Cyclo(1)});
    for (const auto& chi : all_characters(5, 2)) CHECK(integrate_character(mu, chi).value == CycloVector{chi(7)});
}

TEST_CASE("boundedness") {
    std::mt19937_64 rng(4);
    for (long p : {2L, 3L, 5L}) {
        RayTower t = RayTower::rational(p);
        for (Cyclo kappa : {Cyclo(1), Cyclo(-1), Cyclo(p + 1), Cyclo::zeta(3)}) {
            Distribution mu = build_mu(t, random_symbol(rng, t, 3, 2, kappa, true), 1);
            CHECK(check_boundedness(mu).ok);
        }
        // slope one: kappa = p against base data prime to p
        EigenSymbol sym{Cyclo(p), 3, std::vector<CycloVector>(static_cast<size_t>(t.size(3)), CycloVector{Cyclo(1)})};
        auto rep = check_boundedness(build_mu(t, sym, 1));
        CHECK_FALSE(rep.ok);
        CHECK(rep.valuation < 0);
        CHECK(check_boundedness(Distribution(t, 2, 1, 3)).ok);
    }
    RayTower t = RayTower::rational(3);
    EigenSymbol sym{Cyclo(3), 2, std::vector<CycloVector>(6, CycloVector{Cyclo(9)})};
    // values 9 * 3^{-m}: valuation 1 at m = 1, 0 at m = 2
    CHECK(check_boundedness(build_mu(t, sym, 1)).ok);
    auto rep = check_boundedness(build_mu(t, sym, 1), 1);
    CHECK_FALSE(rep.ok);
    CHECK(rep.witness->level == 2);
    CHECK(rep.valuation == 0);
}

TEST_CASE("character integration") {
    std::mt19937_64 rng(17);
    RayTower t = RayTower::rational(5);
    Distribution mu = build_mu(t, random_symbol(rng, t, 3, 2, Cyclo(3)), 1);
    MultChar chi = character_of_order(5, 2);
    auto integral = integrate_character(mu, chi);
    CHECK(integral.level == 1);
    CHECK(integral.level_stable == std::optional<bool>(true));
    // re-summed over level-2 cosets
    CycloVector brute(2, Cyclo(0));
    for (long x = 1; x < 25; ++x) {
        if (x % 5 == 0) continue;
        for (size_t k = 0; k < 2; ++k) brute[k] += chi(x) * mu.value(2, {x, 0})[k];
    }
    CHECK(integral.value == brute);
    // trivial character: total mass
    CycloVector mass(2, Cyclo(0));
    for (const auto& a : t.classes(1))
        for (size_t k = 0; k < 2; ++k) mass[k] += mu.value(1, a)[k];
    CHECK(integrate_character(mu, MultChar::trivial(5, 1)).value == mass);
    auto deep = all_characters(5, 3);
    std::vector<MultChar> sample = all_characters(5, 2);
    sample.insert(sample.end(), deep.begin() + 1, deep.begin() + 4);
    for (const auto& c : sample) {
        auto r = integrate_character(mu, c);
        if (r.level < 3) CHECK(r.level_stable == std::optional<bool>(true));
        for (long m = r.level; m <= 3; ++m) CHECK(integrate_at_level(mu, c, m) == r.value);
    }
    Distribution shallow = build_mu(t, random_symbol(rng, t, 2, 1, Cyclo(3)), 1);
    CHECK(deep[1].conductor_exponent() == 3);
    CHECK_THROWS_AS(integrate_character(shallow, deep[1]), std::invalid_argument);
    CHECK_THROWS_AS(integrate_character(mu, character_of_order(3, 2)), std::invalid_argument);
}

TEST_CASE("Fourier inversion") {
    std::mt19937_64 rng(23);
    for (long p : {2L, 3L, 5L})
        for (long h : {1L, 2L}) {
            RayTower t = RayTower::with_class_group(p, h);
            Distribution mu = build_mu(t, random_symbol(rng, t, 3, 1, random_unit(rng, p)), 1);
            for (const auto& x0 : t.classes(2)) CHECK(fourier_inversion_holds(mu, 2, x0));
        }
    RayTower t = RayTower::rational(3);
    Distribution mu = build_mu(t, random_symbol(rng, t, 2, 1, Cyclo(2)), 1);
    Distribution bad = mu;
    bad.set(2, {4, 0}, {mu.value(2, {4, 0})[0] + Cyclo(1)});
    CHECK_FALSE(fourier_inversion_holds(bad, 2, {4, 0}));
}

TEST_CASE("kappa hat") {
    MultChar chi2 = character_of_order(2, 2);  // conductor 4
    SlopeData sd;
    sd.kappa = Cyclo(1);
    sd.kappa_prime = Cyclo(2);
    sd.slope = Rat(1);
    // n = 3, p = 2, s = 1 needs a conductor-2 character, which does not exist; use the exponents at s = 2
    KappaHat k = kappa_hat({chi2, 1, sd, 0}, 3);
    CHECK(k.norm_exponent == 4);
    CHECK(k.kappa_exponent == -2);
    CHECK(k.value == Cyclo(Rat(4).pow(4) * Rat(2).pow(-2)));
    MultChar chi3 = character_of_order(3, 2);
    k = kappa_hat({chi3, 3, sd, 1}, 3);
    CHECK(k.value == Cyclo(Rat(3).pow(1 + 2 * 3) * Rat(2).pow(-1)));
    // n = 2: first exponent vanishes
    k = kappa_hat({chi3, 4, sd, 1}, 2);
    CHECK(k.norm_exponent == 3);
    CHECK(k.value == Cyclo(Rat(27, 2)));
    // unit eigenvalue at nu = nu_min
    sd.kappa_prime = Cyclo(1);
    for (int n = 2; n <= 5; ++n) {
        k = kappa_hat({chi3, 2, sd, 2}, n);
        CHECK(k.value == Cyclo(Rat(3).pow(n * (n - 1) * (n - 2) / 6)));
    }
    // exponent audit through binomial coefficients
    for (int n = 2; n <= 6; ++n)
        for (long d = -2; d <= 3; ++d) {
            long binom3 = 0, binom2 = 0;
            for (int a = 0; a < n; ++a)
                for (int b = a + 1; b < n; ++b) {
                    ++binom2;
                    for (int c = b + 1; c < n; ++c) ++binom3;
                }
            CHECK(kappa_hat({chi3, d, sd, 0}, n).norm_exponent == binom3 + d * binom2);
        }
    sd.slope.reset();
    CHECK_THROWS_AS(kappa_hat({chi3, 0, sd, 0}, 2), std::domain_error);
}

TEST_CASE("kappa hat for a conductor p character") {
    // n = 3, p = 2 would need s = 1; over p = 3 the same substitution with kappa kappa' = 3:
    // 3^{1 + 3} 3^{-1} = 27
    SlopeData sd;
    sd.kappa = Cyclo(3);
    sd.kappa_prime = Cyclo(1);
    sd.slope = Rat(0);
    CHECK(kappa_hat({character_of_order(3, 2), 1, sd, 0}, 3).value == Cyclo(27));
}

TEST_CASE("inverse kappa relation on diagonal modules") {
    std::mt19937_64 rng(31);
    for (long p : {3L, 5L})
        for (int n : {2, 3})
            for (int trial = 0; trial < 5; ++trial) {
                std::vector<CycloVector> spec_n(2), spec_m(2);
                for (auto& s : spec_n)
                    for (int i = 0; i < n; ++i) s.push_back(random_unit(rng, p));
                for (auto& s : spec_m)
                    for (int i = 0; i < n - 1; ++i) s.push_back(random_unit(rng, p));
                HeckeModule mod_n = HeckeModule::diagonal(n, Rat(p), spec_n);
                HeckeModule mod_m = HeckeModule::diagonal(n - 1, Rat(p), spec_m);
                CycloVector e(4, Cyclo(0));
                e[static_cast<size_t>(trial % 4)] = Cyclo(1);
                InverseKappaData d = inverse_kappa_data(mod_n, mod_m, e);
                for (long r = 1; r <= 4; ++r) CHECK(inverse_kappa_holds(d, r));
                d.kappa_dual *= Cyclo(2);
                CHECK_FALSE(inverse_kappa_holds(d, 1));
            }
    HeckeModule mod_n = HeckeModule::diagonal(2, Rat(3), {{Cyclo(1), Cyclo(2)}, {Cyclo(4), Cyclo(5)}});
    HeckeModule mod_m = HeckeModule::diagonal(1, Rat(3), {{Cyclo(7)}, {Cyclo(8)}});
    CHECK_THROWS_AS(inverse_kappa_data(mod_n, mod_m, {Cyclo(1), Cyclo(1), Cyclo(0), Cyclo(0)}), std::domain_error);
}

TEST_CASE("functional equation on synthetic dual pairs") {
    std::mt19937_64 rng(41);
    for (long p : {3L, 5L})
        for (int n : {2, 3}) {
            std::vector<CycloVector> spec_n(1), spec_m(1);
            for (int i = 0; i < n; ++i) spec_n[0].push_back(random_unit(rng, p));
            for (int i = 0; i < n - 1; ++i) spec_m[0].push_back(random_unit(rng, p));
            HeckeModule mod_n = HeckeModule::diagonal(n, Rat(p), spec_n);
            HeckeModule mod_m = HeckeModule::diagonal(n - 1, Rat(p), spec_m);
            InverseKappaData d = inverse_kappa_data(mod_n, mod_m, {Cyclo(1)});
            RayTower t = RayTower::rational(p);
            // coordinates indexed by Emb of a GL_n x GL_{n-1} weight pair
            Weight mu_w(n == 2 ? std::vector<long>{3, 0} : std::vector<long>{3, 1, -1});
            Weight nu_w(n == 2 ? std::vector<long>{1} : std::vector<long>{1, -1});
            size_t dim = emb_set(nu_w, mu_w).size();
            REQUIRE(dim >= 1);
            EigenSymbol sym = random_symbol(rng, t, 3, dim, d.kappa);
            ValueVee vee = emb_reversal();
            Distribution mu = build_mu(t, sym, 1);
            Distribution mu_dual = build_mu(t, dual_symbol(t, sym, d, vee), 1);
            auto rep = check_functional_equation(mu, mu_dual, vee, n, d);
            CHECK(rep.ok);
            CHECK(rep.cosets_ok);
            CHECK(rep.eigen_relation_ok == std::optional<bool>(true));
            CHECK(check_distribution_relation(mu_dual).ok);
            // component form: tau_nu(mu(x)) = tau_{-nu}(mu_dual(x^vee)) over Emb and -Emb
            std::vector<long> emb = emb_set(nu_w, mu_w);
            std::vector<long> emb_dual = emb_set(nu_w.contragredient(), mu_w.contragredient());
            REQUIRE(emb_dual.size() == emb.size());
            for (size_t i = 0; i < emb.size(); ++i) CHECK(emb_dual[emb.size() - 1 - i] == -emb[i]);
            for (const auto& a : t.classes(2))
                for (size_t i = 0; i < emb.size(); ++i)
                    CHECK(mu.value(2, a)[i] == mu_dual.value(2, t.vee(a, 2, n))[emb.size() - 1 - i]);
            // perturbed kappa_dual
            InverseKappaData bad = d;
            bad.kappa_dual *= Cyclo(p);
            Distribution mu_bad = build_mu(t, dual_symbol(t, sym, bad, vee), 1);
            auto rb = check_functional_equation(mu, mu_bad, vee, n, bad);
            CHECK_FALSE(rb.ok);
            CHECK(rb.eigen_relation_ok == std::optional<bool>(false));
            CHECK_FALSE(rb.cosets_ok);
            // corrupted coset
            Distribution corrupted = mu_dual;
            CycloVector v = corrupted.value(3, {2, 0});
            v[0] += Cyclo(1);
            corrupted.set(3, {2, 0}, v);
            auto rc = check_functional_equation(mu, corrupted, vee, n, d);
            CHECK_FALSE(rc.ok);
            REQUIRE(rc.witness.has_value());
            CHECK(rc.witness->level == 3);
            CHECK(t.vee(rc.witness->x, 3, n) == TowerClass{2, 0});
        }
}

TEST_CASE("the dual base data need the central factor") {
    std::mt19937_64 rng(43);
    RayTower t = RayTower::rational(3);
    HeckeModule mod_n = HeckeModule::diagonal(2, Rat(3), {{Cyclo(2), Cyclo(4)}});
    HeckeModule mod_m = HeckeModule::diagonal(1, Rat(3), {{Cyclo(5)}});
    InverseKappaData d = inverse_kappa_data(mod_n, mod_m, {Cyclo(1)});
    EigenSymbol sym = random_symbol(rng, t, 2, 2, d.kappa);
    EigenSymbol literal = sym;
    literal.kappa = d.kappa_dual;
    for (const auto& a : t.classes(2))
        literal.base_data[t.index(2, a)] = emb_reversal()(sym.base_data[t.index(2, t.vee(a, 2, 2))]);
    auto rep = check_functional_equation(build_mu(t, sym, 1), build_mu(t, literal, 1), emb_reversal(), 2, d);
    CHECK(rep.eigen_relation_ok == std::optional<bool>(true));
    CHECK_FALSE(rep.cosets_ok);
}

TEST_CASE("self-dual datum") {
    std::mt19937_64 rng(47);
    RayTower t = RayTower::rational(5);
    int n = 3;
    EigenSymbol sym;
    sym.kappa = Cyclo(Rat(2, 3));
    sym.base_level = 2;
    sym.base_data.resize(static_cast<size_t>(t.size(2)));
    for (const auto& a : t.classes(2)) {
        TowerClass b = t.vee(a, 2, n);
        if (b < a) continue;
        CycloVector v = random_vector(rng, 3, 5);
        if (a == b) v[2] = v[0];
        sym.base_data[t.index(2, a)] = v;
        sym.base_data[t.index(2, b)] = CycloVector(v.rbegin(), v.rend());
    }
    Distribution mu = build_mu(t, sym, 1);
    InverseKappaData d{n, sym.kappa, sym.kappa, Cyclo(1), Cyclo(1)};
    CHECK(check_functional_equation(mu, mu, emb_reversal(), n, d).ok);
    CHECK(involution_vee(mu, n, emb_reversal()) == mu);
}

TEST_CASE("involution on distributions") {
    std::mt19937_64 rng(53);
    for (int n : {2, 3}) {
        RayTower t = RayTower::with_class_group(3, 2);
        Distribution mu = build_mu(t, random_symbol(rng, t, 3, 3, Cyclo(5)), 1);
        Distribution once = involution_vee(mu, n, emb_reversal());
        CHECK(involution_vee(once, n, emb_reversal()) == mu);
        CHECK(check_distribution_relation(once).ok);
    }
}

TEST_CASE("push-down index constants balance") {
    for (int n : {2, 3})
        for (long p : {2L, 3L}) CHECK(pushdown_index_ratio(n, p) == Rat(1));
}

}
