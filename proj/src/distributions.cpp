#include "hforge/distributions.hpp"

#include "hforge/gln.hpp"
#include "hforge/hecke.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <tuple>

namespace hforge {

namespace {

long mod_pos(long a, long m) {
    long r = a % m;
    return r < 0 ? r + m : r;
}

long inverse_mod(long a, long m) {
    long g = m, x = 0, x1 = 1, b = mod_pos(a, m);
    while (b) {
        long q = g / b;
        std::tie(g, b) = std::make_pair(b, g - q * b);
        std::tie(x, x1) = std::make_pair(x1, x - q * x1);
    }
    if (g != 1) throw std::invalid_argument("RayTower: class is not invertible");
    return mod_pos(x, m);
}

CycloVector scaled(const Cyclo& c, const CycloVector& v) {
    CycloVector out(v.size());
    for (size_t i = 0; i < v.size(); ++i) out[i] = c * v[i];
    return out;
}

void add_into(CycloVector& acc, const CycloVector& v) {
    if (acc.empty()) acc.assign(v.size(), Cyclo(0));
    for (size_t i = 0; i < v.size(); ++i) acc[i] += v[i];
}

Cyclo scalar_on(const CycloMatrix& op, const CycloVector& m, const char* what) {
    auto c = proportionality(m, act(op, m));
    if (!c) throw std::domain_error(std::string("inverse_kappa_data: vector is not an eigenvector of ") + what);
    return *c;
}

}  // namespace

RayTower::RayTower(long p, long h) : p_(p), h_(h) {
    if (!is_prime(p)) throw std::invalid_argument("RayTower: p must be prime");
    if (h < 1) throw std::invalid_argument("RayTower: class number must be positive");
}

long RayTower::modulus(long m) const {
    if (m < 0) throw std::invalid_argument("RayTower: negative level");
    return int_pow(p_, m);
}

long RayTower::size(long m) const { return euler_phi(modulus(m)) * h_; }

std::vector<TowerClass> RayTower::classes(long m) const {
    long mod = modulus(m);
    std::vector<TowerClass> out;
    out.reserve(static_cast<size_t>(size(m)));
    for (long c = 0; c < h_; ++c)
        for (long x = 0; x < mod; ++x)
            if (mod == 1 || x % p_) out.push_back({mod == 1 ? 0 : x, c});
    return out;
}

bool RayTower::contains(long m, const TowerClass& a) const {
    long mod = modulus(m);
    return a.c >= 0 && a.c < h_ && a.x >= 0 && a.x < mod && (mod == 1 || a.x % p_);
}

size_t RayTower::index(long m, const TowerClass& a) const {
    if (!contains(m, a)) throw std::invalid_argument("RayTower: not a class of this level");
    long mod = modulus(m);
    long phi = euler_phi(mod);
    // units below x: x minus the multiples of p in [0, x)
    long pos = mod == 1 ? 0 : a.x - (a.x + p_ - 1) / p_;
    return static_cast<size_t>(a.c * phi + pos);
}

TowerClass RayTower::reduce(const TowerClass& a, long m) const {
    long mod = modulus(m);
    return {mod == 1 ? 0 : mod_pos(a.x, mod), mod_pos(a.c, h_)};
}

std::vector<TowerClass> RayTower::lifts(const TowerClass& a, long m) const {
    if (m < 1) throw std::invalid_argument("RayTower: lifts need level >= 1");
    long pm = modulus(m);
    std::vector<TowerClass> out;
    for (long t = 0; t < p_; ++t) out.push_back({a.x + t * pm, a.c});
    return out;
}

TowerClass RayTower::mul(const TowerClass& a, const TowerClass& b, long m) const {
    long mod = modulus(m);
    return reduce({static_cast<long>(static_cast<__int128>(a.x) * b.x % std::max(mod, 1L)), a.c + b.c}, m);
}

TowerClass RayTower::inverse(const TowerClass& a, long m) const {
    long mod = modulus(m);
    if (mod == 1) return reduce({0, -a.c}, m);
    return reduce({inverse_mod(a.x, mod), -a.c}, m);
}

TowerClass RayTower::vee(const TowerClass& a, long m, int n) const {
    TowerClass inv = inverse(a, m);
    if ((n - 1) % 2) inv.x = -inv.x;
    return reduce(inv, m);
}

bool RayTower::transition_ok(long m) const {
    if (m < 1) return false;
    std::map<TowerClass, long> fibre;
    for (const auto& a : classes(m + 1)) ++fibre[reduce(a, m)];
    if (static_cast<long>(fibre.size()) != size(m)) return false;
    for (const auto& [cls, count] : fibre)
        if (count != p_) return false;
    return true;
}

Distribution::Distribution(RayTower tower, size_t dim, long m0, long max_level)
    : tower_(std::move(tower)), dim_(dim), m0_(m0), m1_(max_level) {
    if (m0 < 1 || max_level < m0) throw std::invalid_argument("Distribution: need 1 <= m0 <= M");
    for (long m = m0; m <= max_level; ++m)
        values_.emplace_back(static_cast<size_t>(tower_.size(m)), CycloVector(dim, Cyclo(0)));
}

const std::vector<CycloVector>& Distribution::level(long m) const {
    if (m < m0_ || m > m1_) throw std::out_of_range("Distribution: level not stored");
    return values_[static_cast<size_t>(m - m0_)];
}

const CycloVector& Distribution::value(long m, const TowerClass& a) const {
    return level(m)[tower_.index(m, tower_.reduce(a, m))];
}

void Distribution::set(long m, const TowerClass& a, CycloVector v) {
    if (v.size() != dim_) throw std::invalid_argument("Distribution: value of wrong dimension");
    if (m < m0_ || m > m1_) throw std::out_of_range("Distribution: level not stored");
    values_[static_cast<size_t>(m - m0_)][tower_.index(m, tower_.reduce(a, m))] = std::move(v);
}

std::vector<CycloVector> EigenSymbol::at_level(const RayTower& tower, long m) const {
    if (m > base_level || m < 1) throw std::invalid_argument("EigenSymbol: level outside [1, M]");
    if (static_cast<long>(base_data.size()) != tower.size(base_level))
        throw std::invalid_argument("EigenSymbol: base data do not cover C(p^M)");
    std::vector<CycloVector> cur = base_data;
    Cyclo kinv = kappa.inv();
    for (long lvl = base_level - 1; lvl >= m; --lvl) {
        std::vector<CycloVector> next(static_cast<size_t>(tower.size(lvl)));
        for (const auto& a : tower.classes(lvl)) {
            CycloVector acc;
            for (const auto& b : tower.lifts(a, lvl)) add_into(acc, cur[tower.index(lvl + 1, b)]);
            next[tower.index(lvl, a)] = scaled(kinv, acc);
        }
        cur = std::move(next);
    }
    return cur;
}

Distribution build_mu(const RayTower& tower, const EigenSymbol& sym, long m0) {
    if (sym.kappa.is_zero()) throw std::domain_error("build_mu: kappa = 0, the symbol is not of finite slope");
    if (sym.base_data.empty()) throw std::invalid_argument("build_mu: empty base data");
    Distribution mu(tower, sym.base_data.front().size(), m0, sym.base_level);
    for (long m = m0; m <= sym.base_level; ++m) {
        auto b = sym.at_level(tower, m);
        Cyclo factor = sym.kappa.pow(-m);
        auto cls = tower.classes(m);
        for (size_t i = 0; i < cls.size(); ++i) mu.set(m, cls[i], scaled(factor, b[i]));
    }
    return mu;
}

RelationReport check_distribution_relation(const Distribution& mu) {
    RelationReport rep;
    if (mu.max_level() == mu.min_level()) throw std::invalid_argument("check_distribution_relation: one level stored");
    const RayTower& t = mu.tower();
    for (long m = mu.min_level(); m < mu.max_level(); ++m)
        for (const auto& a : t.classes(m)) {
            CycloVector acc(mu.dim(), Cyclo(0));
            for (const auto& b : t.lifts(a, m)) add_into(acc, mu.value(m + 1, b));
            const CycloVector& lhs = mu.value(m, a);
            for (size_t k = 0; k < mu.dim(); ++k)
                if (lhs[k] != acc[k]) {
                    rep.ok = false;
                    rep.witness = CosetWitness{m, a, k};
                    return rep;
                }
        }
    return rep;
}

BoundednessReport check_boundedness(const Distribution& mu, long floor) {
    BoundednessReport rep;
    const RayTower& t = mu.tower();
    for (long m = mu.min_level(); m <= mu.max_level(); ++m)
        for (const auto& a : t.classes(m)) {
            const CycloVector& v = mu.value(m, a);
            for (size_t k = 0; k < v.size(); ++k) {
                if (v[k].is_zero()) continue;
                long val = v[k].coeff_valuation(t.p());
                if (val < floor) {
                    rep.ok = false;
                    rep.witness = CosetWitness{m, a, k};
                    rep.valuation = val;
                    return rep;
                }
            }
        }
    return rep;
}

CycloVector integrate_at_level(const Distribution& mu, const MultChar& chi, long m, const Cyclo& class_value) {
    const RayTower& t = mu.tower();
    if (chi.p() != t.p()) throw std::invalid_argument("integrate_character: character of another prime");
    if (chi.conductor_exponent() > m) throw std::invalid_argument("integrate_character: conductor deeper than the level");
    CycloVector acc(mu.dim(), Cyclo(0));
    for (const auto& a : t.classes(m)) {
        Cyclo w = (t.modulus(m) == 1 ? Cyclo(1) : chi(a.x)) * class_value.pow(a.c);
        add_into(acc, scaled(w, mu.value(m, a)));
    }
    return acc;
}

CharacterIntegral integrate_character(const Distribution& mu, const MultChar& chi, const Cyclo& class_value) {
    long s = chi.conductor_exponent();
    if (s > mu.max_level())
        throw std::invalid_argument("integrate_character: conductor of chi exceeds the depth of the distribution");
    CharacterIntegral out;
    out.level = std::max(s, mu.min_level());
    out.value = integrate_at_level(mu, chi, out.level, class_value);
    if (out.level < mu.max_level())
        out.level_stable = integrate_at_level(mu, chi, out.level + 1, class_value) == out.value;
    return out;
}

bool fourier_inversion_holds(const Distribution& mu, long m, const TowerClass& x0) {
    const RayTower& t = mu.tower();
    long h = t.class_number();
    CycloVector acc(mu.dim(), Cyclo(0));
    for (const auto& chi : all_characters(t.p(), m))
        for (long k = 0; k < h; ++k) {
            Cyclo cv = Cyclo::zeta(h, k).simplified();
            auto integral = integrate_character(mu, chi, cv);
            Cyclo w = (t.modulus(m) == 1 ? Cyclo(1) : chi(x0.x)) * cv.pow(x0.c);
            add_into(acc, scaled(w.inv(), integral.value));
        }
    return acc == scaled(Cyclo(t.size(m)), mu.value(m, x0));
}

Distribution dirac(const RayTower& tower, long x0, long m0, long max_level, const CycloVector& value) {
    Distribution mu(tower, value.size(), m0, max_level);
    for (long m = m0; m <= max_level; ++m) mu.set(m, tower.reduce({x0, 0}, m), value);
    return mu;
}

ValueVee emb_reversal() {
    return [](const CycloVector& v) { return CycloVector(v.rbegin(), v.rend()); };
}

Distribution involution_vee(const Distribution& mu, int n, const ValueVee& value_vee) {
    const RayTower& t = mu.tower();
    Distribution out(t, mu.dim(), mu.min_level(), mu.max_level());
    for (long m = mu.min_level(); m <= mu.max_level(); ++m)
        for (const auto& a : t.classes(m)) out.set(m, a, value_vee(mu.value(m, t.vee(a, m, n))));
    return out;
}

bool inverse_kappa_holds(const InverseKappaData& d, long r) {
    Cyclo zeta = d.eta_n.pow(r), zeta_prime = d.eta_prime.pow(r);
    return d.kappa.pow(-r) == zeta.pow(1 - d.n) * zeta_prime.pow(-d.n) * d.kappa_dual.pow(-r);
}

InverseKappaData inverse_kappa_data(const HeckeModule& mod_n, const HeckeModule& mod_m, const CycloVector& m) {
    if (mod_m.n() + 1 != mod_n.n()) throw std::invalid_argument("inverse_kappa_data: need modules over GL_n and GL_{n-1}");
    int n = mod_n.n();
    CycloMatrix id_n = CycloMatrix::identity(mod_n.dim()), id_m = CycloMatrix::identity(mod_m.dim());
    HeckeModule dual_n = contragredient(mod_n), dual_m = contragredient(mod_m);
    InverseKappaData d;
    d.n = n;
    d.kappa = scalar_on(kron(mod_n.Vp(), mod_m.Vp_prime()), m, "U_p");
    d.kappa_dual = scalar_on(kron(dual_n.Vp(), dual_m.Vp_prime()), m, "the contragredient U_p");
    d.eta_n = scalar_on(kron(mod_n.T(n), id_m), m, "T_n");
    d.eta_prime = scalar_on(kron(id_n, mod_m.T(n - 1)), m, "T_{n-1}");
    return d;
}

EigenSymbol dual_symbol(const RayTower& tower, const EigenSymbol& sym, const InverseKappaData& d,
                        const ValueVee& value_vee) {
    long big_m = sym.base_level;
    Cyclo factor = d.eta_n.pow((1 - d.n) * big_m) * d.eta_prime.pow(-d.n * big_m);
    EigenSymbol out;
    out.kappa = d.kappa_dual;
    out.base_level = big_m;
    out.base_data.resize(sym.base_data.size());
    for (const auto& a : tower.classes(big_m))
        out.base_data[tower.index(big_m, a)] =
            scaled(factor, value_vee(sym.base_data[tower.index(big_m, tower.vee(a, big_m, d.n))]));
    return out;
}

FunctionalEquationReport check_functional_equation(const Distribution& mu, const Distribution& mu_dual,
                                                   const ValueVee& value_vee, int n,
                                                   const std::optional<InverseKappaData>& eigen) {
    if (!(mu.tower() == mu_dual.tower()) || mu.min_level() != mu_dual.min_level() ||
        mu.max_level() != mu_dual.max_level())
        throw std::invalid_argument("check_functional_equation: distributions on different towers or depths");
    FunctionalEquationReport rep;
    const RayTower& t = mu.tower();
    for (long m = mu.min_level(); m <= mu.max_level() && rep.cosets_ok; ++m)
        for (const auto& a : t.classes(m)) {
            CycloVector lhs = value_vee(mu.value(m, a));
            const CycloVector& rhs = mu_dual.value(m, t.vee(a, m, n));
            if (lhs != rhs) {
                rep.cosets_ok = false;
                size_t k = 0;
                while (k < lhs.size() && k < rhs.size() && lhs[k] == rhs[k]) ++k;
                rep.witness = CosetWitness{m, a, k};
                break;
            }
        }
    if (eigen) {
        rep.eigen_relation_ok = true;
        for (long m = mu.min_level(); m <= mu.max_level(); ++m)
            if (!inverse_kappa_holds(*eigen, m)) {
                rep.eigen_relation_ok = false;
                rep.eigen_witness_level = m;
                break;
            }
    }
    rep.ok = rep.cosets_ok && rep.eigen_relation_ok.value_or(true);
    return rep;
}

KappaHat kappa_hat(const InterpolationInput& in, int n) {
    if (!in.slope.finite_slope()) throw std::domain_error("kappa_hat: datum is not of finite slope");
    long s = in.chi.conductor_exponent();
    if (s < 1) throw std::invalid_argument("kappa_hat: character needs a nontrivial conductor");
    KappaHat out;
    out.norm_exponent = n * (n - 1) * (n - 2) / 6 + (in.nu - in.nu_min) * n * (n - 1) / 2;
    out.kappa_exponent = -s;
    Rat norm = Rat(in.chi.p()).pow(s);
    out.value = Cyclo(norm.pow(out.norm_exponent)) * (in.slope.kappa * in.slope.kappa_prime).pow(out.kappa_exponent);
    return out;
}

Rat pushdown_index_ratio(int n, long p) {
    IndexReport big = count_indices(GlnContext::numeric(n, p, 1, 1), false);
    Rat small(1);
    if (n - 1 >= 2) small = count_indices(GlnContext::numeric(n - 1, p, 1, 1), false).unipotent_index;
    return big.unipotent_index * small / big.gamma_relative;
}

}  // namespace hforge
