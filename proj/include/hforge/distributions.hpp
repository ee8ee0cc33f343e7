#pragma once

#include "hforge/cyclo.hpp"
#include "hforge/gauss.hpp"
#include "hforge/hecke_module.hpp"

#include <compare>
#include <functional>
#include <optional>
#include <vector>

namespace hforge {

// Class of C(p^m): a unit x mod p^m and, in the abstract model, a class-group part c mod h.
struct TowerClass {
    long x = 1;
    long c = 0;
    friend auto operator<=>(const TowerClass&, const TowerClass&) = default;
};

// C(p^m) = (Z/p^m)^x x Z/h, levels m >= 1. h = 1 is the model over Q; h > 1 stands in for a ray class
// group with a nontrivial class-group part. Transitions reduce x mod p^m; their kernels have order p.
class RayTower {
public:
    static RayTower rational(long p) { return RayTower(p, 1); }
    static RayTower with_class_group(long p, long h) { return RayTower(p, h); }

    long p() const { return p_; }
    long class_number() const { return h_; }
    long modulus(long m) const;
    long size(long m) const;
    // c-major, x increasing
    std::vector<TowerClass> classes(long m) const;
    size_t index(long m, const TowerClass& a) const;
    bool contains(long m, const TowerClass& a) const;

    TowerClass reduce(const TowerClass& a, long m) const;
    // x + a p^m for a mod p, classes of level m + 1 above a class of level m >= 1
    std::vector<TowerClass> lifts(const TowerClass& a, long m) const;
    TowerClass mul(const TowerClass& a, const TowerClass& b, long m) const;
    TowerClass inverse(const TowerClass& a, long m) const;
    // (-1)^{n-1} x^{-1}, the sign only on the p-part
    TowerClass vee(const TowerClass& a, long m, int n) const;

    // Surjective with kernel of order p, checked by counting fibres.
    bool transition_ok(long m) const;

    friend bool operator==(const RayTower&, const RayTower&) = default;

private:
    RayTower(long p, long h);
    long p_, h_;
};

// Values in E^d on the cosets of every level m0 <= m <= M.
class Distribution {
public:
    Distribution(RayTower tower, size_t dim, long m0, long max_level);

    const RayTower& tower() const { return tower_; }
    size_t dim() const { return dim_; }
    long min_level() const { return m0_; }
    long max_level() const { return m1_; }

    const CycloVector& value(long m, const TowerClass& a) const;
    void set(long m, const TowerClass& a, CycloVector v);
    const std::vector<CycloVector>& level(long m) const;

    friend bool operator==(const Distribution&, const Distribution&) = default;

private:
    RayTower tower_;
    size_t dim_;
    long m0_, m1_;
    std::vector<std::vector<CycloVector>> values_;
};

// U_p-eigenvalue kappa and the base values B(x, p^M); shallower levels by the push-down
// B(x, f) = kappa^{-1} sum_{a mod p} B(x + a f, f p).
struct EigenSymbol {
    Cyclo kappa;
    long base_level = 1;
    std::vector<CycloVector> base_data;  // aligned with RayTower::classes(base_level)

    std::vector<CycloVector> at_level(const RayTower& tower, long m) const;
};

// mu(x + p^m) = kappa^{-m} B(x, p^m) for m0 <= m <= base_level. Throws std::domain_error if kappa = 0.
Distribution build_mu(const RayTower& tower, const EigenSymbol& sym, long m0);

struct CosetWitness {
    long level = 0;
    TowerClass x;
    size_t coordinate = 0;
};

struct RelationReport {
    bool ok = true;
    std::optional<CosetWitness> witness;
};

// mu(x + f) = sum_{a mod p} mu(x + a f + f p) between consecutive levels.
RelationReport check_distribution_relation(const Distribution& mu);

struct BoundednessReport {
    bool ok = true;
    std::optional<CosetWitness> witness;
    long valuation = 0;  // at the witness
};

// Every coordinate has p-adic valuation >= floor on the power basis of its cyclotomic field.
BoundednessReport check_boundedness(const Distribution& mu, long floor = 0);

struct CharacterIntegral {
    CycloVector value;
    long level = 0;
    std::optional<bool> level_stable;  // recomputed one level deeper when stored
};

// sum_{x in C(p^m)} chi(x) class_value^c mu(x + p^m) at the shallowest admissible level.
// Throws std::invalid_argument if the conductor of chi exceeds the depth.
CharacterIntegral integrate_character(const Distribution& mu, const MultChar& chi, const Cyclo& class_value = Cyclo(1));
// Same sum at a fixed level.
CycloVector integrate_at_level(const Distribution& mu, const MultChar& chi, long m, const Cyclo& class_value = Cyclo(1));

// sum over all characters of C(p^m) of chi(x0)^{-1} int chi dmu == |C(p^m)| mu(x0 + p^m)
bool fourier_inversion_holds(const Distribution& mu, long m, const TowerClass& x0);

// mu(x + p^m) = value if x = x0 mod p^m (class-group part 0), else 0
Distribution dirac(const RayTower& tower, long x0, long m0, long max_level, const CycloVector& value);

using ValueVee = std::function<CycloVector(const CycloVector&)>;
// Coordinates indexed by increasing Emb; nu -> -nu reverses them.
ValueVee emb_reversal();

// (mu^vee)(x) = value_vee(mu(x^vee))
Distribution involution_vee(const Distribution& mu, int n, const ValueVee& value_vee);

// U_p eigenvalues of a class and of its contragredient, and the eigenvalues of T_n (x) 1 and
// 1 (x) T_{n-1} for one step.
struct InverseKappaData {
    int n = 2;
    Cyclo kappa, kappa_dual;
    Cyclo eta_n, eta_prime;
};

// kappa(f) = zeta^{1-n} zeta'^{-n} kappa_dual(f) with kappa(f) = kappa^{-r}, zeta = eta^r.
bool inverse_kappa_holds(const InverseKappaData& d, long r);
// Reads the data off an eigenvector m of mod_n (x) mod_m; throws std::domain_error if m is not one.
InverseKappaData inverse_kappa_data(const HeckeModule& mod_n, const HeckeModule& mod_m, const CycloVector& m);

// B_dual(x) = eta_n^{(1-n)M} eta'^{-nM} value_vee(B(x^vee)) at the base level M, eigenvalue kappa_dual.
EigenSymbol dual_symbol(const RayTower& tower, const EigenSymbol& sym, const InverseKappaData& d,
                        const ValueVee& value_vee);

struct FunctionalEquationReport {
    bool ok = true;  // coset equality and, when data are given, the eigenvalue relation
    bool cosets_ok = true;
    std::optional<CosetWitness> witness;
    std::optional<bool> eigen_relation_ok;
    std::optional<long> eigen_witness_level;
};

// value_vee(mu(x)) == mu_dual(x^vee) at every stored coset; optionally the kappa relation at each level.
FunctionalEquationReport check_functional_equation(const Distribution& mu, const Distribution& mu_dual,
                                                   const ValueVee& value_vee, int n,
                                                   const std::optional<InverseKappaData>& eigen = std::nullopt);

struct InterpolationInput {
    MultChar chi;
    long nu = 0;
    SlopeData slope;
    long nu_min = 0;
};

struct KappaHat {
    Cyclo value;
    long norm_exponent = 0;   // of N(f_chi)
    long kappa_exponent = 0;  // of kappa kappa'
};

// N(f_chi)^{n(n-1)(n-2)/6 + (nu - nu_min) n(n-1)/2} (kappa kappa')^{-s}. Throws std::domain_error on infinite slope.
KappaHat kappa_hat(const InterpolationInput& in, int n);

// (U_n : t U_n t^{-1}) (U_{n-1} : t U_{n-1} t^{-1}) / (K(f) : K(fp)) from brute-force counts.
Rat pushdown_index_ratio(int n, long p);

}  // namespace hforge
