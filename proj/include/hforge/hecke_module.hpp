#pragma once

#include "hforge/cyclo.hpp"
#include "hforge/matrix.hpp"
#include "hforge/rat.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hforge {

using CycloVector = std::vector<Cyclo>;

CycloVector act(const CycloMatrix& m, const CycloVector& v);
CycloMatrix kron(const CycloMatrix& a, const CycloMatrix& b);
bool is_zero_vector(const CycloVector& v);
// c with c * a == b, if b is a multiple of a nonzero a.
std::optional<Cyclo> proportionality(const CycloVector& a, const CycloVector& b);

// Finite dimensional module over E = Q(zeta_m) with commuting actions of U_1..U_n.
class HeckeModule {
public:
    // Throws std::invalid_argument if shapes disagree or two U_i fail to commute.
    HeckeModule(int n, Rat q, std::vector<CycloMatrix> u);

    // Basis vector k has U_i-eigenvalue spectra[k][i-1].
    static HeckeModule diagonal(int n, Rat q, const std::vector<CycloVector>& spectra);
    // P^{-1} U_i P
    HeckeModule conjugated(const CycloMatrix& p) const;

    int n() const { return n_; }
    size_t dim() const { return dim_; }
    const Rat& q() const { return q_; }

    const CycloMatrix& U(int i) const { return u_.at(static_cast<size_t>(i - 1)); }
    // q^{-nu(nu-1)/2} U_1 ... U_nu
    const CycloMatrix& V(int nu) const { return v_.at(static_cast<size_t>(nu)); }
    CycloMatrix Vp() const;        // V_1 ... V_{n-1}
    CycloMatrix Vp_prime() const;  // V_n Vp
    CycloMatrix T(int nu) const;   // q^{-nu(nu-1)/2} e_nu(U)
    std::optional<Cyclo> scalar_action(const CycloMatrix& op) const;

private:
    int n_;
    size_t dim_;
    Rat q_;
    std::vector<CycloMatrix> u_;
    std::vector<CycloMatrix> v_;
};

// H(lambda) m through the linear factors prod_i (lambda - U_i).
CycloVector apply_H(const HeckeModule& mod, const CycloVector& m, const Cyclo& lambda);
// H(lambda) m through sum_nu (-1)^nu q^{nu(nu-1)/2} T_nu lambda^{n-nu}.
CycloVector apply_H_expanded(const HeckeModule& mod, const CycloVector& m, const Cyclo& lambda);

struct HeckeRoots {
    std::vector<Cyclo> lambda;
    Rat q;
    // q^{-nu(nu-1)/2} lambda_1 ... lambda_nu, 0 <= nu <= lambda.size()
    Cyclo eta(int nu) const;
};

// Root lambda^vee = q^{n-1} / lambda.
Cyclo dual_root(const Cyclo& lambda, int n, const Rat& q);

class ProjectionError : public std::domain_error {
public:
    ProjectionError(const std::string& what, int i, int j = 0) : std::domain_error(what), i_(i), j_(j) {}
    int root_index() const { return i_; }  // 1-based
    int factor_index() const { return j_; }

private:
    int i_, j_;
};

// prod_{i <= m} prod_{j != i} (lambda_i q^{1-j} V_{j-1} - V_j)
CycloMatrix projection0_operator(const HeckeModule& mod, const HeckeRoots& roots);
// Checks H(lambda_i) m = 0 for every root (ProjectionError naming the root otherwise).
CycloVector project0(const CycloVector& m, const HeckeRoots& roots, const HeckeModule& mod);
// Normalized projection. Needs eta_j for j <= n: either n roots, or n-1 roots with V_n acting by a
// scalar, which determines lambda_n. Vanishing denominators raise ProjectionError with (i, j).
CycloMatrix projection_operator(const HeckeModule& mod, const HeckeRoots& roots);
CycloVector project(const CycloVector& m, const HeckeRoots& roots, const HeckeModule& mod);
// Simultaneous eigenvector test V_nu m = eta_nu m for 1 <= nu <= m.
bool in_eigenspace(const HeckeModule& mod, const HeckeRoots& roots, const CycloVector& m);

// Twisted module: same space, V^vee_nu = V_n^{-1} V_{n-nu}, U^vee_nu = q^{nu-1} V_{n-nu} V_{n-nu+1}^{-1}.
// Throws std::domain_error if V_n is not invertible.
HeckeModule contragredient(const HeckeModule& mod);

struct SlopeData {
    std::vector<Cyclo> lambda;
    std::vector<Cyclo> lambda_prime;
    Cyclo kappa;
    Cyclo kappa_prime;
    long nu_min = 0;
    std::optional<Rat> slope;  // empty: infinite slope
    bool finite_slope() const { return slope.has_value(); }
    bool ordinary() const { return slope && slope->is_zero(); }
};

// kappa = q^{-n(n-1)(n-2)/6} prod_{nu<n} lambda_nu^{n-nu}, n = lambda.size() + 1.
Cyclo kappa_of(const std::vector<Cyclo>& lambda, int n, const Rat& q);
// v_p normalized by v_p(p) = 1 through the norm to Q, so rational inputs give integers.
std::optional<Rat> normalized_valuation(const Cyclo& x, long p);
SlopeData slope_data(const std::vector<Cyclo>& lambda, const std::vector<Cyclo>& lambda_prime, long nu_min, const Rat& q,
                     long p);

struct DualProjectionReport {
    bool ok = false;
    bool degenerate = false;  // the modified vector vanished
    std::optional<Cyclo> constant;
    Cyclo kappa, kappa_dual;
    bool eigen_ok = false;       // U_p on the modified vector
    bool dual_eigen_ok = false;  // U_p on its contragredient
    CycloVector modified, dual_modified;
    std::string message;
};

// mod_n over GL_n and mod_m over GL_{n-1}; m lives in the tensor product; lambda and lambda_prime carry
// n-1 roots each. Checks C (m~)^vee = Pi0_{lambda^vee} (x) Pi0_{(lambda'^vee)'} (m^vee).
DualProjectionReport verify_dual_projection(const HeckeModule& mod_n, const HeckeModule& mod_m, const CycloVector& m,
                                            const std::vector<Cyclo>& lambda, const std::vector<Cyclo>& lambda_prime);

// (nu-1)nu/2 + n(n-1)/2 - nu(n-1) == (n-nu-1)(n-nu)/2 for 0 <= nu <= n <= n_max.
bool verify_recisums(int n_max);

}  // namespace hforge
