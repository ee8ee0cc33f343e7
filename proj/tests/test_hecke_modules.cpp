#include "doctest.h"

#include "hforge/hecke_module.hpp"

#include <algorithm>
#include <random>

using namespace hforge;

namespace {

CycloVector vec(std::initializer_list<long> xs) {
    CycloVector v;
    for (long x : xs) v.push_back(Cyclo(x));
    return v;
}

CycloVector scaled(const Cyclo& c, CycloVector v) {
    for (auto& x : v) x *= c;
    return v;
}

CycloMatrix random_invertible(std::mt19937_64& rng, size_t d) {
    std::uniform_int_distribution<int> e(-3, 3);
    for (;;) {
        CycloMatrix p(d, d);
        for (size_t i = 0; i < d; ++i)
            for (size_t j = 0; j < d; ++j) p(i, j) = Cyclo(Rat(e(rng)));
        if (!det(p).is_zero()) return p;
    }
}

CycloVector random_vector(std::mt19937_64& rng, size_t d) {
    std::uniform_int_distribution<int> e(-5, 5);
    CycloVector v;
    for (size_t i = 0; i < d; ++i) v.push_back(Cyclo(Rat(e(rng)) / Rat(1 + std::abs(e(rng)))));
    return v;
}

// Module whose joint U-spectra are random permutations of the given roots.
HeckeModule permutation_module(std::mt19937_64& rng, int n, const Rat& q, const std::vector<Cyclo>& roots, size_t dim,
                               bool conjugate) {
    std::vector<CycloVector> spectra;
    std::vector<size_t> idx(roots.size());
    for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    spectra.push_back(roots);  // the lambda-ordered line is always present
    while (spectra.size() < dim) {
        std::shuffle(idx.begin(), idx.end(), rng);
        CycloVector s;
        for (size_t i : idx) s.push_back(roots[i]);
        spectra.push_back(s);
    }
    HeckeModule mod = HeckeModule::diagonal(n, q, spectra);
    return conjugate ? mod.conjugated(random_invertible(rng, dim)) : mod;
}

}  // namespace

TEST_SUITE("hecke-modules") {

TEST_CASE("module construction") {
    HeckeModule mod = HeckeModule::diagonal(2, Rat(2), {vec({1, 2}), vec({2, 1})});
    CHECK(mod.dim() == 2);
    CHECK(mod.V(0) == CycloMatrix::identity(2));
    CHECK(mod.V(1) == mod.U(1));
    CHECK(mod.V(2) == Cyclo(Rat(1, 2)) * (mod.U(1) * mod.U(2)));
    CHECK(mod.Vp() == mod.V(1));
    CHECK(mod.Vp_prime() == mod.V(2) * mod.V(1));
    CHECK(mod.T(2) == mod.V(2));
    CHECK(mod.scalar_action(mod.V(2)) == std::optional<Cyclo>(Cyclo(1)));
    CHECK_FALSE(mod.scalar_action(mod.U(1)));
    CycloMatrix a{{Cyclo(1), Cyclo(1)}, {Cyclo(0), Cyclo(1)}}, b{{Cyclo(1), Cyclo(0)}, {Cyclo(1), Cyclo(1)}};
    CHECK_THROWS_AS(HeckeModule(2, Rat(2), {a, b}), std::invalid_argument);
    CHECK_THROWS_AS(HeckeModule(3, Rat(2), {a, a}), std::invalid_argument);
}

TEST_CASE("Hecke polynomial") {
    HeckeModule mod = HeckeModule::diagonal(2, Rat(2), {vec({1, 2})});
    CycloVector m = vec({1});
    CHECK(apply_H(mod, m, Cyclo(3)) == vec({2}));
    CHECK(is_zero_vector(apply_H(mod, m, Cyclo(1))));
    CHECK(is_zero_vector(apply_H(mod, m, Cyclo(2))));
    std::mt19937_64 rng(5);
    for (int n : {2, 3}) {
        std::vector<Cyclo> roots{Cyclo(3), Cyclo(Rat(-1, 2)), Cyclo(5)};
        roots.resize(static_cast<size_t>(n));
        HeckeModule h = permutation_module(rng, n, Rat(3), roots, 4, true);
        for (int t = 0; t < 5; ++t) {
            CycloVector v = random_vector(rng, h.dim());
            Cyclo mu(Rat(t - 2, 3));
            CHECK(apply_H(h, v, mu) == apply_H_expanded(h, v, mu));
            Cyclo expect(1);
            for (const auto& r : roots) expect *= mu - r;
            CHECK(apply_H(h, v, mu) == scaled(expect, v));
            for (const auto& r : roots) CHECK(is_zero_vector(apply_H(h, v, r)));
        }
    }
}

TEST_CASE("unnormalized projection") {
    Rat q(2);
    Cyclo l1(3), l2(5);
    HeckeModule mod = HeckeModule::diagonal(2, q, {{l1, l2}, {l2, l1}});
    HeckeRoots roots{{l1}, q};
    CycloVector out = project0(vec({1, 1}), roots, mod);
    CHECK(out[1].is_zero());
    CHECK_FALSE(out[0].is_zero());
    // on the eigenline the operator is a scalar built from eta of the full spectrum
    HeckeRoots full{{l1, l2}, q};
    // factor j = 2: lambda_1 q^{-1} eta_1 - eta_2
    Cyclo scalar = l1 * Cyclo(Rat(1, 2)) * full.eta(1) - full.eta(2);
    CHECK(out[0] == scalar);
    CHECK(in_eigenspace(mod, roots, out));
    CHECK(is_zero_vector(project0(vec({0, 0}), roots, mod)));
    HeckeModule bad = HeckeModule::diagonal(2, q, {{l1, l2}, {Cyclo(7), Cyclo(11)}});
    try {
        project0(vec({1, 1}), roots, bad);
        FAIL("expected a precondition error");
    } catch (const ProjectionError& e) {
        CHECK(e.root_index() == 1);
    }
}

TEST_CASE("normalized projection on a diagonal GL_3 module") {
    Rat q(3);
    Cyclo a(2), b(7), c(Rat(1, 5));
    std::vector<CycloVector> spectra{{a, b, c}, {b, a, c}, {c, b, a}, {a, c, b}, {b, c, a}, {c, a, b}};
    HeckeModule mod = HeckeModule::diagonal(3, q, spectra);
    CycloMatrix proj = projection_operator(mod, {{a, b, c}, q});
    CycloMatrix want(6, 6);
    want(0, 0) = Cyclo(1);
    CHECK(proj == want);
    // two roots and V_3 scalar determine the third
    CHECK(projection_operator(mod, {{a, b}, q}) == want);
    // with a single root eta_2, eta_3 are not determined
    CHECK_THROWS_AS(projection_operator(mod, {{a}, q}), std::invalid_argument);
    try {
        projection_operator(mod, {{a, a, c}, q});
        FAIL("expected a vanishing denominator");
    } catch (const ProjectionError& e) {
        CHECK(e.root_index() == 1);
        CHECK(e.factor_index() == 2);
    }
}

TEST_CASE("projection properties on random modules") {
    std::mt19937_64 rng(2024);
    for (int n : {2, 3}) {
        for (int trial = 0; trial < 12; ++trial) {
            Rat q(trial % 2 ? 2 : 5);
            std::vector<Cyclo> roots;
            while (roots.size() < static_cast<size_t>(n)) {
                Cyclo r(Rat(static_cast<long>(rng() % 19) - 9, static_cast<long>(rng() % 4) + 1));
                if (!r.is_zero() && std::find(roots.begin(), roots.end(), r) == roots.end()) roots.push_back(r);
            }
            HeckeModule mod = permutation_module(rng, n, q, roots, 4, true);
            HeckeRoots hr{std::vector<Cyclo>(roots.begin(), roots.end() - 1), q};
            CycloMatrix proj = projection_operator(mod, hr);
            CHECK(proj * proj == proj);
            for (int nu = 0; nu <= n; ++nu) CHECK(proj * mod.V(nu) == mod.V(nu) * proj);
            CycloVector v = random_vector(rng, mod.dim());
            CycloVector pv = project(v, hr, mod);
            CHECK(in_eigenspace(mod, hr, pv));
            CHECK(project(pv, hr, mod) == pv);
            CHECK(in_eigenspace(mod, hr, project0(v, hr, mod)));
        }
    }
}

TEST_CASE("cyclotomic roots") {
    Cyclo z = Cyclo::zeta(3);
    Rat q(7);
    std::vector<Cyclo> roots{z, Cyclo(2) * z * z, Cyclo(3)};
    HeckeModule mod = HeckeModule::diagonal(3, q, {roots, {roots[1], roots[0], roots[2]}, {roots[2], roots[1], roots[0]}});
    CycloMatrix proj = projection_operator(mod, {roots, q});
    CHECK(proj * proj == proj);
    CHECK(proj(0, 0) == Cyclo(1));
    CHECK(proj(1, 1).is_zero());
}

TEST_CASE("contragredient") {
    std::mt19937_64 rng(11);
    Rat q(2);
    HeckeModule one = HeckeModule::diagonal(2, q, {vec({3, 5})});
    HeckeModule dual_one = contragredient(one);
    CHECK(dual_one.U(1) == CycloMatrix::diag({Cyclo(Rat(2, 5))}));
    CHECK(dual_one.U(2) == CycloMatrix::diag({Cyclo(Rat(2, 3))}));
    CHECK(dual_root(Cyclo(3), 2, q) == Cyclo(Rat(2, 3)));
    CHECK(is_zero_vector(apply_H(dual_one, vec({1}), Cyclo(Rat(2, 3)))));
    for (int n : {2, 3}) {
        std::vector<Cyclo> roots{Cyclo(3), Cyclo(Rat(2, 7)), Cyclo(-4)};
        roots.resize(static_cast<size_t>(n));
        HeckeModule mod = permutation_module(rng, n, Rat(3), roots, 4, true);
        HeckeModule dual = contragredient(mod);
        CycloVector v = random_vector(rng, mod.dim());
        for (const auto& r : roots) {
            CHECK(is_zero_vector(apply_H(dual, v, dual_root(r, n, Rat(3)))));
            CHECK(dual_root(dual_root(r, n, Rat(3)), n, Rat(3)) == r);
        }
        CHECK(dual.V(n) * mod.V(n) == CycloMatrix::identity(mod.dim()));
        HeckeModule back = contragredient(dual);
        for (int i = 1; i <= n; ++i) CHECK(back.U(i) == mod.U(i));
    }
    HeckeModule singular = HeckeModule::diagonal(2, q, {vec({0, 5})});
    CHECK_THROWS_AS(contragredient(singular), std::domain_error);
}

TEST_CASE("slope data") {
    SlopeData a = slope_data({Cyclo(1)}, {Cyclo(1)}, 0, Rat(2), 2);
    CHECK(a.kappa == Cyclo(1));
    CHECK(a.kappa_prime == Cyclo(1));
    CHECK(a.ordinary());
    SlopeData b = slope_data({Cyclo(2), Cyclo(1)}, {Cyclo(1), Cyclo(1)}, 0, Rat(2), 2);
    CHECK(b.kappa == Cyclo(2));
    CHECK(b.kappa_prime == Cyclo(Rat(1, 2)));
    CHECK(b.slope == std::optional<Rat>(Rat(0)));
    SlopeData c = slope_data({Cyclo(4), Cyclo(1)}, {Cyclo(2), Cyclo(1)}, 1, Rat(2), 2);
    // kappa = 2^{-1} 4^2 = 8, kappa' = 2^{-1} 2^2 = 2, slope = 4 - 3
    CHECK(c.slope == std::optional<Rat>(Rat(1)));
    CHECK(c.finite_slope());
    CHECK_FALSE(c.ordinary());
    SlopeData d = slope_data({Cyclo(0), Cyclo(1)}, {Cyclo(1), Cyclo(1)}, 0, Rat(2), 2);
    CHECK_FALSE(d.finite_slope());
    // valuation through the norm: 1 - zeta_3 has v_3 = 1/2
    CHECK(normalized_valuation(Cyclo(1) - Cyclo::zeta(3), 3) == std::optional<Rat>(Rat(1, 2)));
}

TEST_CASE("dual projection") {
    Rat q(2);
    // n = 2: GL_2 roots (3, 5), GL_1 root 7
    {
        HeckeModule a = HeckeModule::diagonal(2, q, {vec({3, 5}), vec({5, 3})});
        HeckeModule b = HeckeModule::diagonal(1, q, {vec({7})});
        DualProjectionReport r = verify_dual_projection(a, b, vec({1, 1}), {Cyclo(3)}, {Cyclo(7)});
        CHECK(r.ok);
        CHECK(r.eigen_ok);
        CHECK(r.dual_eigen_ok);
        REQUIRE(r.constant);
        CHECK_FALSE(r.constant->is_zero());
        CHECK(r.kappa == Cyclo(21));
        CHECK(r.kappa_dual == Cyclo(Rat(2, 5)) * Cyclo(Rat(1, 7)));
        // m~ = (3/2 * 3 - 15/2) e_0 = -3 e_0; dual factor (2/5)(1/2)(2/5) - 2/15 = -4/75
        CHECK(*r.constant == Cyclo(Rat(4, 225)));
        DualProjectionReport z = verify_dual_projection(a, b, vec({0, 1}), {Cyclo(3)}, {Cyclo(7)});
        CHECK(z.degenerate);
        CHECK_FALSE(z.ok);
    }
    // n = 3 with conjugated modules
    {
        std::mt19937_64 rng(99);
        std::vector<Cyclo> lam{Cyclo(3), Cyclo(-1), Cyclo(Rat(5, 2))}, lamp{Cyclo(7), Cyclo(Rat(1, 3))};
        HeckeModule a = permutation_module(rng, 3, Rat(3), lam, 3, true);
        HeckeModule b = permutation_module(rng, 2, Rat(3), lamp, 2, true);
        CycloVector m = random_vector(rng, a.dim() * b.dim());
        DualProjectionReport r = verify_dual_projection(a, b, m, {lam[0], lam[1]}, lamp);
        CHECK(r.ok);
        CHECK(r.eigen_ok);
        CHECK(r.dual_eigen_ok);
    }
}

TEST_CASE("recisums identity") {
    CHECK(verify_recisums(20));
    CHECK(verify_recisums(2));
    // n = 5, nu = 2: 1 + 10 - 8 = 3
    CHECK((2 - 1) * 2 / 2 + 5 * 4 / 2 - 2 * 4 == (5 - 2 - 1) * (5 - 2) / 2);
}

TEST_CASE("tensor helpers") {
    CycloMatrix a{{Cyclo(1), Cyclo(2)}, {Cyclo(3), Cyclo(4)}}, b{{Cyclo(0), Cyclo(5)}, {Cyclo(6), Cyclo(7)}};
    CycloMatrix k = kron(a, b);
    CHECK(k(0, 1) == Cyclo(5));
    CHECK(k(3, 2) == Cyclo(24));
    CHECK(k(2, 3) == Cyclo(20));
    CHECK(proportionality(vec({1, 0, 2}), vec({3, 0, 6})) == std::optional<Cyclo>(Cyclo(3)));
    CHECK_FALSE(proportionality(vec({1, 0, 2}), vec({3, 1, 6})));
}

}
