#include "hforge/hecke_module.hpp"

#include "hforge/padic.hpp"

#include <sstream>

namespace hforge {

namespace {

Cyclo qpow(const Rat& q, long e) { return Cyclo(q.pow(e)); }

CycloMatrix scaled(const Cyclo& c, const CycloMatrix& m) { return c * m; }

CycloMatrix mat_pow(const CycloMatrix& m, long e) {
    CycloMatrix out = CycloMatrix::identity(m.rows());
    for (long k = 0; k < e; ++k) out = out * m;
    return out;
}

Cyclo product(const std::vector<Cyclo>& xs) {
    Cyclo out(1);
    for (const auto& x : xs) out *= x;
    return out;
}

// lambda_n with q^{-n(n-1)/2} lambda_1 ... lambda_n = eta_n
Cyclo complete_last_root(const std::vector<Cyclo>& lambda, const Cyclo& eta_n, int n, const Rat& q) {
    return eta_n * qpow(q, n * (n - 1) / 2) / product(lambda);
}

}  // namespace

CycloVector act(const CycloMatrix& m, const CycloVector& v) {
    if (m.cols() != v.size()) throw std::invalid_argument("apply: shape mismatch");
    CycloVector out(m.rows(), Cyclo(0));
    for (size_t i = 0; i < m.rows(); ++i)
        for (size_t j = 0; j < m.cols(); ++j)
            if (!m(i, j).is_zero() && !v[j].is_zero()) out[i] += m(i, j) * v[j];
    return out;
}

CycloMatrix kron(const CycloMatrix& a, const CycloMatrix& b) {
    CycloMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t j = 0; j < a.cols(); ++j) {
            if (a(i, j).is_zero()) continue;
            for (size_t k = 0; k < b.rows(); ++k)
                for (size_t l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
        }
    return out;
}

bool is_zero_vector(const CycloVector& v) {
    for (const auto& x : v)
        if (!x.is_zero()) return false;
    return true;
}

std::optional<Cyclo> proportionality(const CycloVector& a, const CycloVector& b) {
    if (a.size() != b.size()) return std::nullopt;
    std::optional<Cyclo> c;
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero()) {
            if (!b[i].is_zero()) return std::nullopt;
            continue;
        }
        Cyclo r = b[i] / a[i];
        if (c && !(*c == r)) return std::nullopt;
        c = r;
    }
    return c;
}

HeckeModule::HeckeModule(int n, Rat q, std::vector<CycloMatrix> u) : n_(n), q_(std::move(q)), u_(std::move(u)) {
    if (n < 1) throw std::invalid_argument("HeckeModule: n must be positive");
    if (u_.size() != static_cast<size_t>(n)) throw std::invalid_argument("HeckeModule: need one matrix per U_i");
    dim_ = u_.front().rows();
    for (const auto& m : u_)
        if (m.rows() != dim_ || m.cols() != dim_) throw std::invalid_argument("HeckeModule: U_i must be square of equal size");
    for (size_t i = 0; i < u_.size(); ++i)
        for (size_t j = i + 1; j < u_.size(); ++j)
            if (!(u_[i] * u_[j] == u_[j] * u_[i]))
                throw std::invalid_argument("HeckeModule: U_" + std::to_string(i + 1) + " and U_" + std::to_string(j + 1) +
                                            " do not commute");
    CycloMatrix acc = CycloMatrix::identity(dim_);
    v_.push_back(acc);
    for (int nu = 1; nu <= n; ++nu) {
        acc = acc * u_[static_cast<size_t>(nu - 1)];
        v_.push_back(scaled(qpow(q_, -nu * (nu - 1) / 2), acc));
    }
}

HeckeModule HeckeModule::diagonal(int n, Rat q, const std::vector<CycloVector>& spectra) {
    std::vector<CycloMatrix> u;
    for (int i = 0; i < n; ++i) {
        CycloVector d;
        for (const auto& s : spectra) {
            if (s.size() != static_cast<size_t>(n)) throw std::invalid_argument("HeckeModule::diagonal: spectrum length");
            d.push_back(s[static_cast<size_t>(i)]);
        }
        u.push_back(CycloMatrix::diag(d));
    }
    return HeckeModule(n, std::move(q), std::move(u));
}

HeckeModule HeckeModule::conjugated(const CycloMatrix& p) const {
    CycloMatrix pi = inverse(p);
    std::vector<CycloMatrix> u;
    for (const auto& m : u_) u.push_back(pi * m * p);
    return HeckeModule(n_, q_, std::move(u));
}

CycloMatrix HeckeModule::Vp() const {
    CycloMatrix out = CycloMatrix::identity(dim_);
    for (int nu = 1; nu < n_; ++nu) out = out * V(nu);
    return out;
}

CycloMatrix HeckeModule::Vp_prime() const { return V(n_) * Vp(); }

CycloMatrix HeckeModule::T(int nu) const {
    if (nu < 0 || nu > n_) throw std::invalid_argument("T_nu: nu out of range");
    // e_k of the ordered products, built up over the U_i
    std::vector<CycloMatrix> e(static_cast<size_t>(nu) + 1, CycloMatrix(dim_, dim_));
    e[0] = CycloMatrix::identity(dim_);
    for (const auto& u : u_)
        for (int k = nu; k >= 1; --k) e[k] = e[k] + e[k - 1] * u;
    return scaled(qpow(q_, -nu * (nu - 1) / 2), e[nu]);
}

std::optional<Cyclo> HeckeModule::scalar_action(const CycloMatrix& op) const {
    Cyclo c = dim_ ? op(0, 0) : Cyclo(0);
    if (op == scaled(c, CycloMatrix::identity(dim_))) return c;
    return std::nullopt;
}

CycloVector apply_H(const HeckeModule& mod, const CycloVector& m, const Cyclo& lambda) {
    CycloVector out = m;
    for (int i = 1; i <= mod.n(); ++i) {
        CycloVector u = act(mod.U(i), out);
        for (size_t k = 0; k < out.size(); ++k) out[k] = lambda * out[k] - u[k];
    }
    return out;
}

CycloVector apply_H_expanded(const HeckeModule& mod, const CycloVector& m, const Cyclo& lambda) {
    int n = mod.n();
    CycloVector out(m.size(), Cyclo(0));
    for (int nu = 0; nu <= n; ++nu) {
        Cyclo c = qpow(mod.q(), nu * (nu - 1) / 2) * lambda.pow(n - nu);
        if (nu % 2) c = -c;
        CycloVector t = act(mod.T(nu), m);
        for (size_t k = 0; k < out.size(); ++k) out[k] += c * t[k];
    }
    return out;
}

Cyclo HeckeRoots::eta(int nu) const {
    if (nu < 0 || static_cast<size_t>(nu) > lambda.size()) throw std::out_of_range("eta: index beyond the given roots");
    Cyclo out = qpow(q, -nu * (nu - 1) / 2);
    for (int i = 0; i < nu; ++i) out *= lambda[static_cast<size_t>(i)];
    return out;
}

Cyclo dual_root(const Cyclo& lambda, int n, const Rat& q) {
    if (lambda.is_zero()) throw std::domain_error("dual_root: zero root");
    return qpow(q, n - 1) / lambda;
}

CycloMatrix projection0_operator(const HeckeModule& mod, const HeckeRoots& roots) {
    int n = mod.n(), m = static_cast<int>(roots.lambda.size());
    if (m > n) throw std::invalid_argument("projection: more roots than n");
    CycloMatrix out = CycloMatrix::identity(mod.dim());
    for (int i = 1; i <= m; ++i)
        for (int j = 1; j <= n; ++j) {
            if (j == i) continue;
            Cyclo c = roots.lambda[static_cast<size_t>(i - 1)] * qpow(mod.q(), 1 - j);
            out = out * (c * mod.V(j - 1) - mod.V(j));
        }
    return out;
}

CycloVector project0(const CycloVector& m, const HeckeRoots& roots, const HeckeModule& mod) {
    for (size_t i = 0; i < roots.lambda.size(); ++i)
        if (!is_zero_vector(apply_H(mod, m, roots.lambda[i])))
            throw ProjectionError("project0: H(lambda_" + std::to_string(i + 1) + ") does not annihilate the vector",
                                  static_cast<int>(i + 1));
    return act(projection0_operator(mod, roots), m);
}

CycloMatrix projection_operator(const HeckeModule& mod, const HeckeRoots& roots) {
    int n = mod.n(), m = static_cast<int>(roots.lambda.size());
    HeckeRoots full = roots;
    if (m == n - 1) {
        auto c = mod.scalar_action(mod.V(n));
        if (!c) throw std::invalid_argument("projection: n-1 roots given but V_n does not act by a scalar");
        full.lambda.push_back(complete_last_root(roots.lambda, *c, n, mod.q()));
    } else if (m != n) {
        throw std::invalid_argument("projection: need n roots, or n-1 roots with V_n scalar");
    }
    for (size_t i = 0; i < full.lambda.size(); ++i)
        if (full.lambda[i].is_zero()) throw ProjectionError("projection: zero root", static_cast<int>(i + 1));
    Cyclo denom(1);
    for (int i = 1; i <= m; ++i)
        for (int j = 1; j <= n; ++j) {
            if (j == i) continue;
            Cyclo d = full.lambda[static_cast<size_t>(i - 1)] * qpow(mod.q(), 1 - j) * full.eta(j - 1) - full.eta(j);
            if (d.is_zero())
                throw ProjectionError("projection: vanishing denominator at (i, j) = (" + std::to_string(i) + ", " +
                                          std::to_string(j) + ")",
                                      i, j);
            denom *= d;
        }
    return denom.inv() * projection0_operator(mod, roots);
}

CycloVector project(const CycloVector& m, const HeckeRoots& roots, const HeckeModule& mod) {
    for (size_t i = 0; i < roots.lambda.size(); ++i)
        if (!is_zero_vector(apply_H(mod, m, roots.lambda[i])))
            throw ProjectionError("project: H(lambda_" + std::to_string(i + 1) + ") does not annihilate the vector",
                                  static_cast<int>(i + 1));
    return act(projection_operator(mod, roots), m);
}

bool in_eigenspace(const HeckeModule& mod, const HeckeRoots& roots, const CycloVector& m) {
    for (int nu = 1; nu <= static_cast<int>(roots.lambda.size()); ++nu) {
        CycloVector v = act(mod.V(nu), m);
        Cyclo e = roots.eta(nu);
        for (size_t k = 0; k < m.size(); ++k)
            if (!(v[k] == e * m[k])) return false;
    }
    return true;
}

HeckeModule contragredient(const HeckeModule& mod) {
    int n = mod.n();
    if (det(mod.V(n)).is_zero()) throw std::domain_error("contragredient: T_n = V_n is not invertible");
    std::vector<CycloMatrix> inv_v(static_cast<size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) inv_v[k] = inverse(mod.V(k));
    std::vector<CycloMatrix> u;
    for (int nu = 1; nu <= n; ++nu) u.push_back(qpow(mod.q(), nu - 1) * (mod.V(n - nu) * inv_v[n - nu + 1]));
    HeckeModule dual(n, mod.q(), std::move(u));
    // twisted relations: V_nu m^vee = V_n (V_{n-nu} m)^vee and V_p m^vee = V_n^{n-1} (V_p m)^vee,
    // with the outer V_n acting on the twisted module
    for (int nu = 0; nu <= n; ++nu)
        if (!(dual.V(nu) == dual.V(n) * mod.V(n - nu)) || !(dual.V(nu) == inv_v[n] * mod.V(n - nu)))
            throw std::logic_error("contragredient: twisted V relation fails at nu = " + std::to_string(nu));
    if (!(dual.Vp() == mat_pow(dual.V(n), n - 1) * mod.Vp()))
        throw std::logic_error("contragredient: twisted V_p relation fails");
    return dual;
}

Cyclo kappa_of(const std::vector<Cyclo>& lambda, int n, const Rat& q) {
    Cyclo out = qpow(q, -n * (n - 1) * (n - 2) / 6);
    for (int nu = 1; nu <= n - 1 && nu <= static_cast<int>(lambda.size()); ++nu)
        out *= lambda[static_cast<size_t>(nu - 1)].pow(n - nu);
    return out;
}

std::optional<Rat> normalized_valuation(const Cyclo& x, long p) {
    if (x.is_zero()) return std::nullopt;
    if (x.is_rational()) return Rat(valuation(x.to_rat(), p).value());
    return Rat(valuation(x.norm(), p).value()) / Rat(euler_phi(x.conductor()));
}

SlopeData slope_data(const std::vector<Cyclo>& lambda, const std::vector<Cyclo>& lambda_prime, long nu_min, const Rat& q,
                     long p) {
    if (lambda.empty()) throw std::invalid_argument("slope_data: need at least one root");
    int n = static_cast<int>(lambda.size()) + 1;
    SlopeData s;
    s.lambda = lambda;
    s.lambda_prime = lambda_prime;
    s.nu_min = nu_min;
    s.kappa = kappa_of(lambda, n, q);
    s.kappa_prime = kappa_of(lambda_prime, n, q);
    if (auto v = normalized_valuation(s.kappa * s.kappa_prime, p)) s.slope = *v - Rat(nu_min * n * (n - 1) / 2);
    return s;
}

DualProjectionReport verify_dual_projection(const HeckeModule& mod_n, const HeckeModule& mod_m, const CycloVector& m,
                                            const std::vector<Cyclo>& lambda, const std::vector<Cyclo>& lambda_prime) {
    int n = mod_n.n();
    if (mod_m.n() != n - 1) throw std::invalid_argument("verify_dual_projection: second module must be over GL_{n-1}");
    if (lambda.size() != static_cast<size_t>(n - 1) || lambda_prime.size() != static_cast<size_t>(n - 1))
        throw std::invalid_argument("verify_dual_projection: need n-1 roots on each side");
    const Rat& q = mod_n.q();
    DualProjectionReport rep;

    std::vector<Cyclo> lambda2(lambda_prime.begin(), lambda_prime.end() - 1);
    CycloMatrix proj = kron(projection0_operator(mod_n, {lambda, q}), projection0_operator(mod_m, {lambda2, q}));
    rep.modified = act(proj, m);
    if (is_zero_vector(rep.modified)) {
        rep.degenerate = true;
        rep.message = "modified vector is zero";
        return rep;
    }
    rep.kappa = kappa_of(lambda, n, q) * kappa_of(lambda_prime, n, q);
    CycloVector up = act(kron(mod_n.Vp(), mod_m.Vp_prime()), rep.modified);
    rep.eigen_ok = proportionality(rep.modified, up) == std::optional<Cyclo>(rep.kappa);

    auto tn = mod_n.scalar_action(mod_n.V(n));
    if (!tn || tn->is_zero()) {
        rep.message = "T_n does not act by a nonzero scalar";
        return rep;
    }
    Cyclo lambda_n = complete_last_root(lambda, *tn, n, q);
    std::vector<Cyclo> full = lambda;
    full.push_back(lambda_n);
    std::vector<Cyclo> dual, dual_prime;
    for (int i = n; i >= 2; --i) dual.push_back(dual_root(full[static_cast<size_t>(i - 1)], n, q));
    for (int i = n - 1; i >= 1; --i) dual_prime.push_back(dual_root(lambda_prime[static_cast<size_t>(i - 1)], n - 1, q));
    std::vector<Cyclo> dual_prime2(dual_prime.begin(), dual_prime.end() - 1);

    HeckeModule dn = contragredient(mod_n), dm = contragredient(mod_m);
    CycloMatrix dproj = kron(projection0_operator(dn, {dual, q}), projection0_operator(dm, {dual_prime2, q}));
    rep.dual_modified = act(dproj, m);
    rep.constant = proportionality(rep.modified, rep.dual_modified);

    rep.kappa_dual = kappa_of(dual, n, q) * kappa_of(dual_prime, n, q);
    CycloVector dup = act(kron(dn.Vp(), dm.Vp_prime()), rep.modified);
    rep.dual_eigen_ok = proportionality(rep.modified, dup) == std::optional<Cyclo>(rep.kappa_dual);

    rep.ok = rep.constant && !rep.constant->is_zero() && rep.eigen_ok && rep.dual_eigen_ok;
    std::ostringstream os;
    if (!rep.constant)
        os << "vectors not proportional";
    else if (rep.constant->is_zero())
        os << "constant vanishes";
    else
        os << "C = " << *rep.constant;
    if (!rep.eigen_ok) os << "; U_p eigenvalue mismatch";
    if (!rep.dual_eigen_ok) os << "; dual U_p eigenvalue mismatch";
    rep.message = os.str();
    return rep;
}

bool verify_recisums(int n_max) {
    for (long n = 0; n <= n_max; ++n)
        for (long nu = 0; nu <= n; ++nu) {
            // both sides doubled to stay in integers
            long lhs = (nu - 1) * nu + n * (n - 1) - 2 * nu * (n - 1);
            long rhs = (n - nu - 1) * (n - nu);
            if (lhs != rhs) return false;
        }
    return true;
}

}  // namespace hforge
