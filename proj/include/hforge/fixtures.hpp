#pragma once

#include "hforge/distributions.hpp"
#include "hforge/hecke_module.hpp"

#include <random>
#include <vector>

namespace hforge {

// Random data shared by the verification suites. All draws come from the caller's engine.

CycloMatrix random_invertible(std::mt19937_64& rng, size_t d);
// Rational entries with denominators prime to p (p = 0: any small denominator).
CycloVector random_rational_vector(std::mt19937_64& rng, size_t d, long p = 0, bool integral = false);
// a/b * zeta_6^k with a, b prime to p.
Cyclo random_p_unit(std::mt19937_64& rng, long p);
// n distinct nonzero rationals.
std::vector<Cyclo> random_distinct_roots(std::mt19937_64& rng, int n);

// Module whose joint U-spectra are permutations of the roots; the root-ordered line is always present.
HeckeModule permutation_module(std::mt19937_64& rng, int n, const Rat& q, const std::vector<Cyclo>& roots, size_t dim,
                               bool conjugate);

// Eigen symbol with random base data at level big_m.
EigenSymbol random_symbol(std::mt19937_64& rng, const RayTower& tower, long big_m, size_t dim, Cyclo kappa,
                          bool integral = false);

}  // namespace hforge
