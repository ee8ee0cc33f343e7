#include "hforge/fixtures.hpp"

#include <algorithm>
#include <cstdlib>

namespace hforge {

CycloMatrix random_invertible(std::mt19937_64& rng, size_t d) {
    std::uniform_int_distribution<int> e(-3, 3);
    for (;;) {
        CycloMatrix p(d, d);
        for (size_t i = 0; i < d; ++i)
            for (size_t j = 0; j < d; ++j) p(i, j) = Cyclo(Rat(e(rng)));
        if (!det(p).is_zero()) return p;
    }
}

CycloVector random_rational_vector(std::mt19937_64& rng, size_t d, long p, bool integral) {
    std::uniform_int_distribution<long> num(-9, 9), den(1, 4);
    CycloVector v(d);
    for (auto& x : v) {
        long q = integral ? 1 : den(rng);
        if (p > 1 && q % p == 0) q = 1;
        x = Cyclo(Rat(num(rng), q));
    }
    return v;
}

Cyclo random_p_unit(std::mt19937_64& rng, long p) {
    std::uniform_int_distribution<long> num(1, 12), root(0, 5);
    long a = num(rng), b = num(rng);
    while (a % p == 0) ++a;
    while (b % p == 0) ++b;
    return Cyclo(Rat(a, b)) * Cyclo::zeta(6, root(rng)).simplified();
}

std::vector<Cyclo> random_distinct_roots(std::mt19937_64& rng, int n) {
    std::uniform_int_distribution<long> num(-9, 9), den(1, 4);
    std::vector<Cyclo> roots;
    while (roots.size() < static_cast<size_t>(n)) {
        Cyclo r(Rat(num(rng), den(rng)));
        if (!r.is_zero() && std::find(roots.begin(), roots.end(), r) == roots.end()) roots.push_back(r);
    }
    return roots;
}

HeckeModule permutation_module(std::mt19937_64& rng, int n, const Rat& q, const std::vector<Cyclo>& roots, size_t dim,
                               bool conjugate) {
    std::vector<CycloVector> spectra;
    std::vector<size_t> idx(roots.size());
    for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    spectra.push_back(roots);
    while (spectra.size() < dim) {
        std::shuffle(idx.begin(), idx.end(), rng);
        CycloVector s;
        for (size_t i : idx) s.push_back(roots[i]);
        spectra.push_back(s);
    }
    HeckeModule mod = HeckeModule::diagonal(n, q, spectra);
    return conjugate ? mod.conjugated(random_invertible(rng, dim)) : mod;
}

EigenSymbol random_symbol(std::mt19937_64& rng, const RayTower& tower, long big_m, size_t dim, Cyclo kappa,
                          bool integral) {
    EigenSymbol sym;
    sym.kappa = std::move(kappa);
    sym.base_level = big_m;
    for (long i = 0; i < tower.size(big_m); ++i)
        sym.base_data.push_back(random_rational_vector(rng, dim, tower.p(), integral));
    return sym;
}

}  // namespace hforge
