#pragma once

#include "hforge/gln.hpp"
#include "hforge/laurent.hpp"
#include "hforge/matrix.hpp"
#include "hforge/rat.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace hforge {

// Right cosets gK are compared modulo K_I^(r) (Iwahori level) or K = GL_n(Z_p) (spherical level).
enum class CosetLevel { iwahori, spherical };

struct CosetSpace {
    int n = 2;
    long p = 2;
    int r = 1;
    CosetLevel level = CosetLevel::iwahori;

    static CosetSpace iwahori(int n, long p, int r = 1) { return {n, p, r, CosetLevel::iwahori}; }
    static CosetSpace spherical(int n, long p) { return {n, p, 1, CosetLevel::spherical}; }
    bool contains(const RatMatrix& k) const;  // k in the compact subgroup
    bool operator==(const CosetSpace&) const = default;
};

// gK == hK; throws std::domain_error on a singular representative.
bool coset_equal(const CosetSpace& s, const RatMatrix& g, const RatMatrix& h);

// Formal Z-combination (Q coefficients allowed) of right cosets, folded by coset equality.
class CosetSum {
public:
    struct Term {
        RatMatrix rep;
        RatMatrix rep_inv;
        Rat coeff;
    };

    explicit CosetSum(CosetSpace space) : space_(space) {}
    static CosetSum unit(CosetSpace space);

    const CosetSpace& space() const { return space_; }
    const std::vector<Term>& terms() const { return terms_; }
    size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }

    void add(const RatMatrix& g, const Rat& c);
    // Index of the coset containing g, if present.
    std::optional<size_t> find(const RatMatrix& g) const;
    Rat coefficient(const RatMatrix& g) const;
    Rat total_multiplicity() const;

    CosetSum scaled(const Rat& c) const;
    CosetSum& operator+=(const CosetSum& o);
    friend CosetSum operator+(CosetSum a, const CosetSum& b) { return a += b; }
    friend CosetSum operator-(const CosetSum& a, const CosetSum& b) { return a + b.scaled(Rat(-1)); }
    friend bool operator==(const CosetSum& a, const CosetSum& b) { return (a - b).is_zero(); }

    std::string str() const;

private:
    CosetSpace space_;
    std::vector<Term> terms_;
};

CosetSum convolve(const CosetSum& a, const CosetSum& b);

// Hecke operators of Iwahori level.
enum class HeckeOp { T, U, V, Vp, Vp_prime };

struct HeckeOperatorTag {
    HeckeOp op;
    int index = 0;  // nu for T and V, i for U
    std::string str() const;
};

std::optional<HeckeOperatorTag> parse_operator(const std::string& s);

// Upper triangular representatives of K diag(1_{n-nu}, p 1_nu) K / K.
CosetSum spherical_T(int n, long p, int nu);
// Reinterprets triangular spherical representatives gK as gK_I; throws on a non-triangular rep.
CosetSum restrict_spherical(const CosetSum& spherical, int r = 1);

CosetSum expand_T(const CosetSpace& s, int nu);
CosetSum expand_U(const CosetSpace& s, int i);
CosetSum expand_V(const CosetSpace& s, int nu);
CosetSum expand_Vp(const CosetSpace& s);
CosetSum expand_Vp_prime(const CosetSpace& s);
CosetSum expand_operator(const CosetSpace& s, const HeckeOperatorTag& tag);
// The element generating the double coset of the operator.
RatMatrix double_coset_rep(const CosetSpace& s, const HeckeOperatorTag& tag);

// Iwasawa reduction: g = b k^{-1} with b upper triangular and k in GL_n(Z_(p)).
struct IwasawaFactor {
    RatMatrix b;
    RatMatrix k;  // g k = b
};
IwasawaFactor iwasawa_reduce(const RatMatrix& g, long p);
// g in B K_I^(r)
bool in_monoid(const RatMatrix& g, long p, int r);

// Random element of K_I^(r): integral unipotent times diagonal unit times lower congruent factor.
RatMatrix random_iwahori(std::mt19937_64& rng, int n, long p, int r);
RatMatrix random_gl_zp(std::mt19937_64& rng, int n, long p);

struct CoverageReport {
    bool disjoint = false;
    long samples = 0;
    long inside_monoid = 0;
    long outside_monoid = 0;
    long uncovered = 0;     // samples in the monoid matching no listed coset
    long multiply_hit = 0;  // samples matching more than one coset
    std::optional<RatMatrix> witness;
    bool ok() const { return disjoint && uncovered == 0 && multiply_hit == 0; }
};

// Samples k in K_I and checks k g against the listed cosets of K_I g K_I.
CoverageReport check_coverage(const CosetSum& decomposition, const RatMatrix& g, int samples, uint64_t seed);

struct GritsenkoReport {
    bool ok = false;
    std::vector<bool> coefficient_ok;  // per nu = 0..n
    std::optional<int> first_mismatch;
    CosetSum difference{CosetSpace{}};
    std::string str() const;
};

// Coefficients of X^{n-nu}: ordered elementary sums of the U_i against q^{nu(nu-1)/2} eps(T_nu).
GritsenkoReport verify_gritsenko(const CosetSpace& s);

struct CommutativityReport {
    bool ok = true;
    std::optional<std::pair<std::string, std::string>> counterexample;
    CosetSum left{CosetSpace{}};
    CosetSum right{CosetSpace{}};
};

CommutativityReport verify_commutativity(const CosetSpace& s, HeckeOp family);

// q^{nu(nu+1)/2} sigma_nu(X_1..X_n), in the Laurent variables q, X1..Xn.
LaurentPoly satake(int n, int nu);
LaurentPoly elementary_symmetric(const std::vector<LaurentPoly>& xs, int k);
// Sum of coeff * X^{v_p(diag rep)} over triangular cosets; a ring map on sums of triangular cosets.
LaurentPoly constant_term_map(const CosetSum& s);
// constant_term_map(eps(T_nu)) after X_i -> q^{i-1} Y_i equals q^{nu(n-1) - nu(nu-1)/2} sigma_nu(Y).
LaurentPoly satake_via_cosets(int n, long p, int nu);

// Spherical double coset by elementary divisors (ascending exponents).
std::vector<long> elementary_divisors(const RatMatrix& g, long p);

struct SphericalDecomposition {
    std::vector<std::pair<std::vector<long>, Rat>> parts;  // elementary divisors -> coefficient
    bool consistent = true;  // each double coset carries a constant multiplicity
};
SphericalDecomposition decompose_spherical(const CosetSum& s);

// prod_{i,j} (1 - alpha_i beta_j T), in the Laurent variable "T".
LaurentPoly shintani_lfactor(const std::vector<Cyclo>& alpha, const std::vector<Cyclo>& beta);
// det(1 - T C(alpha) (x) C(beta)) with companion matrices.
LaurentPoly shintani_lfactor_det(const std::vector<Cyclo>& alpha, const std::vector<Cyclo>& beta);

struct IndexReport {
    Rat unipotent_index;        // brute-force count
    Rat unipotent_formula;
    Rat gamma_index;            // (I_{n-1}: K(f)) by exact volume computation
    std::optional<Rat> gamma_index_enumerated;  // brute force over GL_{n-1}(Z/p^N) when small
    Rat gamma_formula;
    Rat gamma_relative;         // (K(f): K(fp))
    Rat gamma_relative_formula; // N(p)^{exponent}
    bool unipotent_ok() const { return unipotent_index == unipotent_formula; }
    bool gamma_ok() const { return gamma_index == gamma_formula; }
    bool relative_ok() const { return gamma_relative == gamma_relative_formula; }
};

IndexReport count_indices(const GlnContext& ctx, bool enumerate = true);

}  // namespace hforge
