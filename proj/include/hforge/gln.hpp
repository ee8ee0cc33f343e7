#pragma once

#include "hforge/laurent.hpp"
#include "hforge/matrix.hpp"
#include "hforge/rat.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace hforge {

// Rank, prime, Iwahori level and the parameter f. When nu is set, f = p^nu and the uniformizer is p;
// otherwise f is the Laurent variable "f".
struct GlnContext {
    int n = 2;
    long p = 2;
    int r = 1;
    std::optional<int> nu;

    static GlnContext symbolic(int n, long p = 2, int r = 1) { return {n, p, r, std::nullopt}; }
    static GlnContext numeric(int n, long p, int r, int nu) { return {n, p, r, nu}; }

    bool is_numeric() const { return nu.has_value(); }
    void validate() const;  // throws std::invalid_argument
    LaurentPoly f() const;
    Rat f_value() const;   // numeric only
    long f_times_p() const;  // modulus fp, numeric only
};

enum class MatrixTag {
    t_f,
    h_one,
    h_f,
    w_n,
    j,
    j_delta,
    delta,
    d_x,
    u_minus,
    w_minus,
    d_uw,
    d_prime_uw,
    h_uw,
    k_uw,
    k_prime_uw,
    n_mat,
    n_prime_mat,
    d_fe,
    w_tilde,
};

std::string tag_name(MatrixTag t);
std::optional<MatrixTag> parse_tag(const std::string& s);

struct NamedMatrix {
    MatrixTag tag;
    LaurentMatrix value;
};

// Basic builders. All sizes are the size of the returned matrix.
LaurentMatrix longest_weyl(size_t n);
LaurentMatrix t_diag(size_t n, const LaurentPoly& a);  // diag(a^{n-1}, ..., a, 1)
LaurentMatrix h_one(size_t n);
LaurentMatrix h_of(size_t n, const LaurentPoly& f);
LaurentMatrix embed_j(const LaurentMatrix& g);
LaurentMatrix embed_j_delta(const LaurentMatrix& g, const LaurentPoly& varpi, long delta);
LaurentMatrix delta_matrix(size_t n, const LaurentPoly& varpi, long delta);
LaurentMatrix d_of(size_t n, const LaurentPoly& x);  // diag(x, 1, ..., 1)
LaurentMatrix w_tilde(size_t n);                      // j(w_{n-1}) w_n
// g -> w_n g^{-t} w_n
LaurentMatrix iota(const LaurentMatrix& g);
RatMatrix iota(const RatMatrix& g);

// Tags without extra parameters: t_f, h_one, h_f, w_n, w_tilde, n_mat, delta (delta = 1).
NamedMatrix build_standard(const GlnContext& ctx, MatrixTag tag);

// Matrices of the contragredient relation; x is the auxiliary unit.
LaurentMatrix n_mat(size_t n, const LaurentPoly& f);
LaurentMatrix n_prime_mat(size_t n, const LaurentPoly& f, const LaurentPoly& x);  // size n-1
LaurentMatrix d_fe(size_t n, const LaurentPoly& x);                               // size n-1, n >= 3

// The (u, w) family. u has n-1 superdiagonal entries u_{12}..u_{n-1,n}, w has n-2.
struct DistributionFamily {
    LaurentMatrix u_full;  // unipotent with superdiagonal u
    LaurentMatrix w_full;  // unipotent of size n-1 with superdiagonal w
    LaurentMatrix h_uw;
    LaurentMatrix u_minus;  // size n-1
    LaurentMatrix w_minus;  // size n-1
    LaurentMatrix d;        // size n-1
    LaurentMatrix d_prime;  // size n-1
};

DistributionFamily build_distribution_family(const GlnContext& ctx, const std::vector<LaurentPoly>& u,
                                             const std::vector<LaurentPoly>& w);

// Last column of j(u^-) h(u,w) j(w^-) without its final entry, truncated modulo f^2. Its product is
// congruent to the determinant class of the lemma.
std::vector<LaurentPoly> last_column_mod_f2(const GlnContext& ctx, const DistributionFamily& fam);

// Numeric p-integrality checks.
bool p_integral(const RatMatrix& g, long p);
bool iwahori_member(const RatMatrix& g, long p, int r);

// Solutions y of A y + c in Z_(p)^N, as offset + Z_p-span(basis). Empty if no solution.
struct AffineLattice {
    std::vector<Rat> offset;
    std::vector<std::vector<Rat>> basis;
};
std::optional<AffineLattice> solve_padic_affine(const RatMatrix& a, const std::vector<Rat>& c, long p);

// k, k' with t_(p)^{-1} j(w) h^(f) u^{-1} t_(p) = j(k') h^(fp) k^{-1}.
struct LemmaMatrices {
    RatMatrix lhs;
    RatMatrix k;
    RatMatrix k_prime;
};

// The construction of the proof displays, with the correction matrix computed exactly.
struct DisplayConstruction {
    RatMatrix correction;  // the auxiliary n
    RatMatrix k;
    RatMatrix k_prime;
    bool identity_holds = false;
    bool correction_congruent = false;  // correction == 1 mod fp
    bool k_in_iwahori = false;
    bool k_prime_in_iwahori = false;
};

RatMatrix lemma_lhs(const GlnContext& ctx, const std::vector<long>& u, const std::vector<long>& w);
DisplayConstruction display_construction(const GlnContext& ctx, const std::vector<long>& u,
                                         const std::vector<long>& w);
// Searches the lattice of admissible k' for one with p-unit determinant.
std::optional<LemmaMatrices> solve_lemma_matrices(const GlnContext& ctx, const std::vector<long>& u,
                                                  const std::vector<long>& w);
// Every admissible k' with p-unit determinant among the lattice representatives mod p.
std::vector<LemmaMatrices> all_lemma_matrices(const GlnContext& ctx, const std::vector<long>& u,
                                              const std::vector<long>& w);

struct EpimorphismReport {
    bool ok = false;
    long group_order = 0;          // |(1+f)/(1+fp)|
    std::map<long, std::pair<std::vector<long>, std::vector<long>>> witness;  // class mod fp -> (u, w)
    long pairs = 0;
    long display_failures = 0;     // pairs where the literal proof construction leaves I_n
    bool congruent_to_d = true;    // det k' == det d(u,w) mod fp everywhere
    bool congruent_to_last_column = true;  // det k' == product of last_column_mod_f2 mod fp
    bool class_well_defined = true;
    bool homomorphism = true;
    std::optional<std::pair<std::vector<long>, std::vector<long>>> counterexample;
    std::string message;
};

EpimorphismReport verify_epimorphism(const GlnContext& ctx, bool check_all_solutions = true);

struct InversehReport {
    bool identity = false;
    LaurentMatrix difference;
    bool det_one = false;
    bool n_in_iwahori = false;
    bool conj_in_iwahori = false;  // w_{n-1} d n' w_{n-1}
    bool ok() const { return identity && det_one && n_in_iwahori && conj_in_iwahori; }
};

// x is either the variable "x" (symbolic) or a p-unit rational (numeric ctx).
InversehReport verify_inverseh(const GlnContext& ctx, const LaurentPoly& x);

// Iwahori membership for Laurent matrices in f and unit variables, valid whenever v_p(f) >= r:
// polynomial in f with p-integral coefficients, f divides the entries below the diagonal, and the
// determinant is a single f-free term with p-unit coefficient.
bool symbolic_iwahori_member(const LaurentMatrix& g, const std::string& fvar, long p);

bool check_hf_entries(size_t n);
bool check_inverseft(size_t n);

}  // namespace hforge
