#include "hforge/hecke.hpp"

#include "hforge/padic.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace hforge {

namespace {

bool is_upper_triangular(const RatMatrix& g) {
    for (size_t i = 0; i < g.rows(); ++i)
        for (size_t j = 0; j < i; ++j)
            if (!g(i, j).is_zero()) return false;
    return true;
}

bool is_unit(const Rat& x, long p) { return !x.is_zero() && valuation(x, p).value() == 0; }

bool in_gl_zp(const RatMatrix& g, long p) { return p_integral(g, p) && is_unit(det(g), p); }

// Exact inverse; upper triangular matrices use back substitution.
RatMatrix invert(const RatMatrix& g) {
    if (!is_upper_triangular(g)) return inverse(g);
    size_t n = g.rows();
    RatMatrix out(n, n);
    for (size_t i = 0; i < n; ++i)
        if (g(i, i).is_zero()) throw std::domain_error("coset representative is singular");
    for (size_t j = 0; j < n; ++j) {
        out(j, j) = g(j, j).inv();
        for (size_t ii = j; ii-- > 0;) {
            Rat acc(0);
            for (size_t k = ii + 1; k <= j; ++k) acc += g(ii, k) * out(k, j);
            out(ii, j) = -acc / g(ii, ii);
        }
    }
    return out;
}

RatMatrix pow_p_diag(int n, long p, const std::vector<int>& e) {
    RatMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = Rat(p).pow(e[i]);
    return m;
}

bool next_tuple(std::vector<long>& v, const std::vector<long>& bound) {
    for (size_t i = 0; i < v.size(); ++i) {
        if (++v[i] < bound[i]) return true;
        v[i] = 0;
    }
    return false;
}

LaurentPoly q_var() { return LaurentPoly::var("q"); }
LaurentPoly x_var(const std::string& stem, int i) { return LaurentPoly::var(stem + std::to_string(i)); }

}  // namespace

bool CosetSpace::contains(const RatMatrix& k) const {
    if (level == CosetLevel::iwahori) return iwahori_member(k, p, r);
    return in_gl_zp(k, p);
}

bool coset_equal(const CosetSpace& s, const RatMatrix& g, const RatMatrix& h) {
    return s.contains(invert(g) * h);
}

CosetSum CosetSum::unit(CosetSpace space) {
    CosetSum s(space);
    s.add(RatMatrix::identity(static_cast<size_t>(space.n)), Rat(1));
    return s;
}

std::optional<size_t> CosetSum::find(const RatMatrix& g) const {
    for (size_t i = 0; i < terms_.size(); ++i)
        if (space_.contains(terms_[i].rep_inv * g)) return i;
    return std::nullopt;
}

void CosetSum::add(const RatMatrix& g, const Rat& c) {
    if (c.is_zero()) return;
    if (auto i = find(g)) {
        terms_[*i].coeff += c;
        if (terms_[*i].coeff.is_zero()) terms_.erase(terms_.begin() + static_cast<long>(*i));
        return;
    }
    terms_.push_back({g, invert(g), c});
}

Rat CosetSum::coefficient(const RatMatrix& g) const {
    auto i = find(g);
    return i ? terms_[*i].coeff : Rat(0);
}

Rat CosetSum::total_multiplicity() const {
    Rat t(0);
    for (const auto& term : terms_) t += term.coeff;
    return t;
}

CosetSum CosetSum::scaled(const Rat& c) const {
    CosetSum out(space_);
    if (c.is_zero()) return out;
    out.terms_ = terms_;
    for (auto& t : out.terms_) t.coeff *= c;
    return out;
}

CosetSum& CosetSum::operator+=(const CosetSum& o) {
    if (!(space_ == o.space_)) throw std::invalid_argument("CosetSum: mismatched coset spaces");
    for (const auto& t : o.terms_) add(t.rep, t.coeff);
    return *this;
}

std::string CosetSum::str() const {
    std::ostringstream os;
    for (size_t i = 0; i < terms_.size(); ++i)
        os << (i ? " + " : "") << terms_[i].coeff << "*" << to_string(terms_[i].rep);
    return terms_.empty() ? "0" : os.str();
}

CosetSum convolve(const CosetSum& a, const CosetSum& b) {
    if (!(a.space() == b.space())) throw std::invalid_argument("convolve: mismatched coset spaces");
    CosetSum out(a.space());
    for (const auto& x : a.terms())
        for (const auto& y : b.terms()) out.add(x.rep * y.rep, x.coeff * y.coeff);
    return out;
}

std::string HeckeOperatorTag::str() const {
    switch (op) {
        case HeckeOp::T: return "T" + std::to_string(index);
        case HeckeOp::U: return "U" + std::to_string(index);
        case HeckeOp::V: return "V" + std::to_string(index);
        case HeckeOp::Vp: return "Vp";
        case HeckeOp::Vp_prime: return "Vp'";
    }
    return "?";
}

std::optional<HeckeOperatorTag> parse_operator(const std::string& s) {
    if (s == "Vp") return HeckeOperatorTag{HeckeOp::Vp, 0};
    if (s == "Vp'" || s == "Vp_prime") return HeckeOperatorTag{HeckeOp::Vp_prime, 0};
    if (s.size() < 2) return std::nullopt;
    std::string digits = s.substr(1);
    if (!std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; })) return std::nullopt;
    int idx = std::stoi(digits);
    switch (s[0]) {
        case 'T': return HeckeOperatorTag{HeckeOp::T, idx};
        case 'U': return HeckeOperatorTag{HeckeOp::U, idx};
        case 'V': return HeckeOperatorTag{HeckeOp::V, idx};
        default: return std::nullopt;
    }
}

CosetSum spherical_T(int n, long p, int nu) {
    if (nu < 0 || nu > n) throw std::invalid_argument("T_nu: nu out of range");
    CosetSum out(CosetSpace::spherical(n, p));
    // diagonal exponents e_i in {0,1} with nu ones; entry (i,j), i<j, runs mod p when e_i = 1, e_j = 0
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        if (__builtin_popcount(mask) != nu) continue;
        std::vector<int> e(n);
        for (int i = 0; i < n; ++i) e[i] = (mask >> i) & 1;
        std::vector<std::pair<int, int>> slots;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (e[i] == 1 && e[j] == 0) slots.emplace_back(i, j);
        std::vector<long> vals(slots.size(), 0), bound(slots.size(), p);
        do {
            RatMatrix g = pow_p_diag(n, p, e);
            for (size_t k = 0; k < slots.size(); ++k) g(slots[k].first, slots[k].second) = Rat(vals[k]);
            out.add(g, Rat(1));
        } while (next_tuple(vals, bound));
    }
    return out;
}

CosetSum restrict_spherical(const CosetSum& spherical, int r) {
    const CosetSpace& s = spherical.space();
    CosetSum out(CosetSpace::iwahori(s.n, s.p, r));
    for (const auto& t : spherical.terms()) {
        if (!is_upper_triangular(t.rep)) throw std::invalid_argument("restrict_spherical: non-triangular representative");
        out.add(t.rep, t.coeff);
    }
    return out;
}

CosetSum expand_T(const CosetSpace& s, int nu) {
    CosetSum sph = spherical_T(s.n, s.p, nu);
    if (s.level == CosetLevel::spherical) return sph;
    return restrict_spherical(sph, s.r);
}

CosetSum expand_U(const CosetSpace& s, int i) {
    if (i < 1 || i > s.n) throw std::invalid_argument("U_i: i out of range");
    int n = s.n;
    std::vector<int> e(n, 0);
    e[i - 1] = 1;
    RatMatrix pi = pow_p_diag(n, s.p, e);
    // candidates u pi with u upper unipotent, entries mod p^2; keep distinct cosets
    std::vector<std::pair<int, int>> slots;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) slots.emplace_back(a, b);
    std::vector<long> vals(slots.size(), 0), bound(slots.size(), s.p * s.p);
    CosetSum out(s);
    do {
        RatMatrix u = RatMatrix::identity(n);
        for (size_t k = 0; k < slots.size(); ++k) u(slots[k].first, slots[k].second) = Rat(vals[k]);
        RatMatrix g = u * pi;
        if (!out.find(g)) out.add(g, Rat(1));
    } while (next_tuple(vals, bound));
    return out;
}

CosetSum expand_V(const CosetSpace& s, int nu) {
    int n = s.n;
    if (nu < 0 || nu > n) throw std::invalid_argument("V_nu: nu out of range");
    CosetSum out(s);
    size_t cnt = static_cast<size_t>(nu * (n - nu));
    std::vector<long> vals(cnt, 0), bound(cnt, s.p);
    do {
        RatMatrix g = RatMatrix::identity(n);
        for (int i = 0; i < nu; ++i) g(i, i) = Rat(s.p);
        for (size_t k = 0; k < cnt; ++k) g(k / (n - nu), nu + k % (n - nu)) = Rat(vals[k]);
        out.add(g, Rat(1));
    } while (next_tuple(vals, bound));
    return out;
}

namespace {

CosetSum expand_unipotent_orbit(const CosetSpace& s, const RatMatrix& t) {
    int n = s.n;
    // u_ij runs mod p^{j-i}
    std::vector<std::pair<int, int>> slots;
    std::vector<long> bound;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) {
            slots.emplace_back(a, b);
            bound.push_back(Rat(s.p).pow(b - a).to_long());
        }
    std::vector<long> vals(slots.size(), 0);
    CosetSum out(s);
    do {
        RatMatrix u = RatMatrix::identity(n);
        for (size_t k = 0; k < slots.size(); ++k) u(slots[k].first, slots[k].second) = Rat(vals[k]);
        out.add(u * t, Rat(1));
    } while (next_tuple(vals, bound));
    return out;
}

}  // namespace

CosetSum expand_Vp(const CosetSpace& s) {
    return expand_unipotent_orbit(s, double_coset_rep(s, {HeckeOp::Vp, 0}));
}

CosetSum expand_Vp_prime(const CosetSpace& s) {
    return expand_unipotent_orbit(s, double_coset_rep(s, {HeckeOp::Vp_prime, 0}));
}

CosetSum expand_operator(const CosetSpace& s, const HeckeOperatorTag& tag) {
    switch (tag.op) {
        case HeckeOp::T: return expand_T(s, tag.index);
        case HeckeOp::U: return expand_U(s, tag.index);
        case HeckeOp::V: return expand_V(s, tag.index);
        case HeckeOp::Vp: return expand_Vp(s);
        case HeckeOp::Vp_prime: return expand_Vp_prime(s);
    }
    throw std::invalid_argument("expand_operator: unknown tag");
}

RatMatrix double_coset_rep(const CosetSpace& s, const HeckeOperatorTag& tag) {
    int n = s.n;
    std::vector<int> e(n, 0);
    switch (tag.op) {
        case HeckeOp::T:
            for (int i = n - tag.index; i < n; ++i) e[i] = 1;
            break;
        case HeckeOp::U: e.at(tag.index - 1) = 1; break;
        case HeckeOp::V:
            for (int i = 0; i < tag.index; ++i) e[i] = 1;
            break;
        case HeckeOp::Vp:
            for (int i = 0; i < n; ++i) e[i] = n - 1 - i;
            break;
        case HeckeOp::Vp_prime:
            for (int i = 0; i < n; ++i) e[i] = n - i;
            break;
    }
    return pow_p_diag(n, s.p, e);
}

IwasawaFactor iwasawa_reduce(const RatMatrix& g, long p) {
    size_t n = g.rows();
    RatMatrix b = g, k = RatMatrix::identity(n);
    auto swap_cols = [&](size_t a, size_t c) {
        for (size_t i = 0; i < n; ++i) {
            std::swap(b(i, a), b(i, c));
            std::swap(k(i, a), k(i, c));
        }
    };
    for (size_t i = n; i-- > 0;) {
        std::optional<size_t> best;
        long bv = 0;
        for (size_t j = 0; j <= i; ++j) {
            if (b(i, j).is_zero()) continue;
            long v = valuation(b(i, j), p).value();
            if (!best || v < bv) {
                best = j;
                bv = v;
            }
        }
        if (!best) throw std::domain_error("iwasawa_reduce: singular matrix");
        if (*best != i) swap_cols(*best, i);
        for (size_t j = 0; j < i; ++j) {
            if (b(i, j).is_zero()) continue;
            Rat c = b(i, j) / b(i, i);
            for (size_t rr = 0; rr < n; ++rr) {
                b(rr, j) -= c * b(rr, i);
                k(rr, j) -= c * k(rr, i);
            }
        }
    }
    return {b, k};
}

bool in_monoid(const RatMatrix& g, long p, int r) {
    return iwahori_member(iwasawa_reduce(g, p).k, p, r);
}

RatMatrix random_iwahori(std::mt19937_64& rng, int n, long p, int r) {
    long span = p * p * p;
    std::uniform_int_distribution<long> any(0, span - 1);
    RatMatrix u = RatMatrix::identity(n), d = RatMatrix::identity(n), l = RatMatrix::identity(n);
    Rat pr = Rat(p).pow(r);
    for (int i = 0; i < n; ++i) {
        long x;
        do x = any(rng);
        while (x % p == 0);
        d(i, i) = Rat(x);
        for (int j = i + 1; j < n; ++j) {
            u(i, j) = Rat(any(rng));
            l(j, i) = pr * Rat(any(rng));
        }
    }
    return u * d * l;
}

RatMatrix random_gl_zp(std::mt19937_64& rng, int n, long p) {
    long span = p * p * p;
    std::uniform_int_distribution<long> any(0, span - 1);
    for (;;) {
        RatMatrix g(n, n);
        for (auto i = 0; i < n; ++i)
            for (auto j = 0; j < n; ++j) g(i, j) = Rat(any(rng));
        if (is_unit(det(g), p)) return g;
    }
}

CoverageReport check_coverage(const CosetSum& decomposition, const RatMatrix& g, int samples, uint64_t seed) {
    const CosetSpace& s = decomposition.space();
    CoverageReport rep;
    rep.disjoint = true;
    const auto& terms = decomposition.terms();
    for (size_t a = 0; a < terms.size(); ++a)
        for (size_t b = a + 1; b < terms.size(); ++b)
            if (coset_equal(s, terms[a].rep, terms[b].rep)) rep.disjoint = false;
    std::mt19937_64 rng(seed);
    for (int i = 0; i < samples; ++i) {
        RatMatrix k = s.level == CosetLevel::iwahori ? random_iwahori(rng, s.n, s.p, s.r) : random_gl_zp(rng, s.n, s.p);
        RatMatrix x = k * g;
        ++rep.samples;
        if (s.level == CosetLevel::iwahori && !in_monoid(x, s.p, s.r)) {
            ++rep.outside_monoid;
            continue;
        }
        ++rep.inside_monoid;
        int hits = 0;
        for (const auto& t : terms)
            if (s.contains(t.rep_inv * x)) ++hits;
        if (hits == 0) {
            ++rep.uncovered;
            if (!rep.witness) rep.witness = x;
        } else if (hits > 1) {
            ++rep.multiply_hit;
            if (!rep.witness) rep.witness = x;
        }
    }
    return rep;
}

std::string GritsenkoReport::str() const {
    std::ostringstream os;
    os << (ok ? "holds" : "fails");
    if (first_mismatch) os << " at coefficient " << *first_mismatch << ": difference " << difference.str();
    return os.str();
}

GritsenkoReport verify_gritsenko(const CosetSpace& s) {
    int n = s.n;
    std::vector<CosetSum> us;
    for (int i = 1; i <= n; ++i) us.push_back(expand_U(s, i));
    GritsenkoReport rep;
    rep.ok = true;
    for (int nu = 0; nu <= n; ++nu) {
        CosetSum lhs(s);
        for (unsigned mask = 0; mask < (1u << n); ++mask) {
            if (__builtin_popcount(mask) != nu) continue;
            CosetSum acc = CosetSum::unit(s);
            for (int i = 0; i < n; ++i)
                if (mask & (1u << i)) acc = convolve(acc, us[i]);
            lhs += acc;
        }
        CosetSum rhs = expand_T(s, nu).scaled(Rat(s.p).pow(nu * (nu - 1) / 2));
        CosetSum diff = lhs - rhs;
        rep.coefficient_ok.push_back(diff.is_zero());
        if (!diff.is_zero() && !rep.first_mismatch) {
            rep.ok = false;
            rep.first_mismatch = nu;
            rep.difference = diff;
        }
    }
    return rep;
}

CommutativityReport verify_commutativity(const CosetSpace& s, HeckeOp family) {
    int lo = family == HeckeOp::U ? 1 : 0;
    std::vector<CosetSum> ops;
    std::vector<std::string> names;
    for (int i = lo; i <= s.n; ++i) {
        HeckeOperatorTag tag{family, i};
        ops.push_back(expand_operator(s, tag));
        names.push_back(tag.str());
    }
    CommutativityReport rep;
    for (size_t a = 0; a < ops.size(); ++a)
        for (size_t b = a + 1; b < ops.size(); ++b) {
            CosetSum ab = convolve(ops[a], ops[b]), ba = convolve(ops[b], ops[a]);
            if (!(ab == ba)) {
                rep.ok = false;
                if (!rep.counterexample) {
                    rep.counterexample = {names[a], names[b]};
                    rep.left = ab;
                    rep.right = ba;
                }
            }
        }
    return rep;
}

LaurentPoly elementary_symmetric(const std::vector<LaurentPoly>& xs, int k) {
    std::vector<LaurentPoly> e(static_cast<size_t>(k) + 1, LaurentPoly(0));
    e[0] = LaurentPoly(1);
    for (const auto& x : xs)
        for (int j = k; j >= 1; --j) e[j] += e[j - 1] * x;
    return e[k];
}

LaurentPoly satake(int n, int nu) {
    if (nu < 0 || nu > n) throw std::invalid_argument("satake: nu out of range");
    std::vector<LaurentPoly> xs;
    for (int i = 1; i <= n; ++i) xs.push_back(x_var("X", i));
    return q_var().pow(nu * (nu + 1) / 2) * elementary_symmetric(xs, nu);
}

LaurentPoly constant_term_map(const CosetSum& s) {
    LaurentPoly out;
    for (const auto& t : s.terms()) {
        if (!is_upper_triangular(t.rep)) throw std::invalid_argument("constant_term_map: non-triangular representative");
        LaurentPoly m(t.coeff);
        for (int i = 0; i < s.space().n; ++i)
            m *= x_var("X", i + 1).pow(valuation(t.rep(i, i), s.space().p).value());
        out += m;
    }
    return out;
}

LaurentPoly satake_via_cosets(int n, long p, int nu) {
    LaurentPoly c = constant_term_map(expand_T(CosetSpace::iwahori(n, p), nu));
    std::map<std::string, LaurentPoly> sub;
    for (int i = 1; i <= n; ++i) sub["X" + std::to_string(i)] = LaurentPoly(Rat(p).pow(i - 1)) * x_var("Y", i);
    return c.subs(sub);
}

std::vector<long> elementary_divisors(const RatMatrix& g_in, long p) {
    RatMatrix g = g_in;
    size_t n = g.rows();
    std::vector<long> out;
    for (size_t t = 0; t < n; ++t) {
        std::optional<std::pair<size_t, size_t>> best;
        long bv = 0;
        for (size_t i = t; i < n; ++i)
            for (size_t j = t; j < n; ++j) {
                if (g(i, j).is_zero()) continue;
                long v = valuation(g(i, j), p).value();
                if (!best || v < bv) {
                    best = {i, j};
                    bv = v;
                }
            }
        if (!best) throw std::domain_error("elementary_divisors: singular matrix");
        auto [bi, bj] = *best;
        for (size_t j = 0; j < n; ++j) std::swap(g(bi, j), g(t, j));
        for (size_t i = 0; i < n; ++i) std::swap(g(i, bj), g(i, t));
        for (size_t i = t + 1; i < n; ++i) {
            if (g(i, t).is_zero()) continue;
            Rat c = g(i, t) / g(t, t);
            for (size_t j = t; j < n; ++j) g(i, j) -= c * g(t, j);
        }
        for (size_t j = t + 1; j < n; ++j) g(t, j) = Rat(0);
        out.push_back(bv);
    }
    std::sort(out.begin(), out.end());
    return out;
}

SphericalDecomposition decompose_spherical(const CosetSum& s) {
    SphericalDecomposition out;
    std::map<std::vector<long>, std::vector<Rat>> by_class;
    for (const auto& t : s.terms()) by_class[elementary_divisors(t.rep, s.space().p)].push_back(t.coeff);
    for (const auto& [ed, coeffs] : by_class) {
        for (const auto& c : coeffs)
            if (!(c == coeffs.front())) out.consistent = false;
        out.parts.emplace_back(ed, coeffs.front());
    }
    return out;
}

namespace {

void require_nonzero(const std::vector<Cyclo>& v) {
    for (const auto& x : v)
        if (x.is_zero()) throw std::invalid_argument("shintani_lfactor: Satake parameters must be nonzero");
}

CycloMatrix companion(const std::vector<Cyclo>& roots) {
    size_t n = roots.size();
    // prod (x - a_i) = x^n + c_{n-1} x^{n-1} + ... + c_0
    std::vector<Cyclo> e(n + 1, Cyclo(0));
    e[0] = Cyclo(1);
    for (const auto& a : roots)
        for (size_t j = n; j >= 1; --j) e[j] += e[j - 1] * a;
    CycloMatrix c(n, n);
    for (size_t i = 1; i < n; ++i) c(i, i - 1) = Cyclo(1);
    for (size_t i = 0; i < n; ++i) {
        // coefficient of x^i is (-1)^{n-i} e_{n-i}
        Cyclo coeff = ((n - i) % 2 ? -e[n - i] : e[n - i]);
        c(i, n - 1) = -coeff;
    }
    return c;
}

}  // namespace

LaurentPoly shintani_lfactor(const std::vector<Cyclo>& alpha, const std::vector<Cyclo>& beta) {
    require_nonzero(alpha);
    require_nonzero(beta);
    LaurentPoly t = LaurentPoly::var("T"), out(1);
    for (const auto& a : alpha)
        for (const auto& b : beta) out *= LaurentPoly(1) - LaurentPoly(a * b) * t;
    return out;
}

LaurentPoly shintani_lfactor_det(const std::vector<Cyclo>& alpha, const std::vector<Cyclo>& beta) {
    require_nonzero(alpha);
    require_nonzero(beta);
    CycloMatrix ca = companion(alpha), cb = companion(beta);
    size_t n = ca.rows(), m = cb.rows();
    LaurentPoly t = LaurentPoly::var("T");
    LaurentMatrix k = LaurentMatrix::identity(n * m);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            for (size_t a = 0; a < m; ++a)
                for (size_t b = 0; b < m; ++b) {
                    Cyclo v = ca(i, j) * cb(a, b);
                    if (!v.is_zero()) k(i * m + a, j * m + b) -= LaurentPoly(v) * t;
                }
    return det(k);
}

namespace {

struct AffineConditions {
    // entry (row) -> coefficients on the (n-1)^2 unknowns, constant, required valuation
    std::vector<std::vector<Rat>> coeffs;
    std::vector<Rat> constants;
    std::vector<long> levels;
};

// g in I_{n-1}^(r) and h^{-1} j(g) h in I_n^(r), as affine conditions on the entries of g.
AffineConditions gamma_conditions(int n, int r, const Rat& f) {
    size_t m = static_cast<size_t>(n - 1), vars = m * m;
    RatMatrix h = to_rat(h_of(static_cast<size_t>(n), LaurentPoly(f)));
    RatMatrix hi = inverse(h);
    auto image = [&](const std::vector<Rat>& y) {
        RatMatrix j = RatMatrix::identity(static_cast<size_t>(n));
        for (size_t i = 0; i < m; ++i)
            for (size_t jj = 0; jj < m; ++jj) j(i, jj) = y[i * m + jj];
        return hi * j * h;
    };
    RatMatrix base = image(std::vector<Rat>(vars, Rat(0)));
    std::vector<RatMatrix> cols;
    for (size_t v = 0; v < vars; ++v) {
        std::vector<Rat> e(vars, Rat(0));
        e[v] = Rat(1);
        cols.push_back(image(e) - base);
    }
    AffineConditions c;
    for (size_t a = 0; a < static_cast<size_t>(n); ++a)
        for (size_t b = 0; b < static_cast<size_t>(n); ++b) {
            std::vector<Rat> row(vars);
            for (size_t v = 0; v < vars; ++v) row[v] = cols[v](a, b);
            c.coeffs.push_back(row);
            c.constants.push_back(base(a, b));
            c.levels.push_back(a > b ? r : 0);
        }
    for (size_t v = 0; v < vars; ++v) {
        std::vector<Rat> row(vars, Rat(0));
        row[v] = Rat(1);
        c.coeffs.push_back(row);
        c.constants.push_back(Rat(0));
        c.levels.push_back(v / m > v % m ? r : 0);
    }
    return c;
}

// Haar volume of K(f) inside M_{n-1}(Z_p), normalized to total mass 1.
Rat gamma_volume(int n, long p, int r, const Rat& f) {
    AffineConditions c = gamma_conditions(n, r, f);
    size_t rows = c.coeffs.size(), vars = c.coeffs.front().size(), m = static_cast<size_t>(n - 1);
    RatMatrix a(rows, vars);
    std::vector<Rat> k(rows);
    for (size_t i = 0; i < rows; ++i) {
        Rat sc = Rat(p).pow(-c.levels[i]);
        for (size_t v = 0; v < vars; ++v) a(i, v) = c.coeffs[i][v] * sc;
        k[i] = c.constants[i] * sc;
    }
    auto lat = solve_padic_affine(a, k, p);
    if (!lat) return Rat(0);
    RatMatrix basis(vars, vars);
    for (size_t t = 0; t < vars; ++t)
        for (size_t i = 0; i < vars; ++i) basis(i, t) = lat->basis[t][i];
    Rat vol = Rat(p).pow(-valuation(det(basis), p).value());
    // fraction of the coset with unit determinant depends on lattice coordinates mod p only
    std::vector<long> coord(vars, 0), bound(vars, p);
    long units = 0, total = 0;
    do {
        RatMatrix g(m, m);
        for (size_t i = 0; i < vars; ++i) {
            Rat y = lat->offset[i];
            for (size_t t = 0; t < vars; ++t)
                if (coord[t]) y += Rat(coord[t]) * lat->basis[t][i];
            g(i / m, i % m) = y;
        }
        ++total;
        if (is_unit(det(g), p)) ++units;
    } while (next_tuple(coord, bound));
    return vol * Rat(units) / Rat(total);
}

Rat iwahori_volume(int m, long p, int r) {
    Rat lower = Rat(p).pow(-r * m * (m - 1) / 2);
    return lower * (Rat(p - 1) / Rat(p)).pow(m);
}

std::optional<Rat> gamma_index_by_enumeration(int n, long p, int r, const Rat& f) {
    AffineConditions c = gamma_conditions(n, r, f);
    size_t vars = c.coeffs.front().size(), m = static_cast<size_t>(n - 1);
    // modulus large enough that every condition only depends on g mod p^N
    long big = 0;
    std::vector<long> shift(c.coeffs.size(), 0);
    for (size_t i = 0; i < c.coeffs.size(); ++i) {
        long s = 0;
        for (const auto& x : c.coeffs[i])
            if (!x.is_zero()) s = std::max(s, -valuation(x, p).value());
        if (!c.constants[i].is_zero()) s = std::max(s, -valuation(c.constants[i], p).value());
        shift[i] = s;
        big = std::max(big, s + c.levels[i]);
    }
    long N = std::max<long>(big, r);
    double work = 1;
    for (size_t v = 0; v < vars; ++v) work *= std::pow(double(p), double(N));
    if (work > 3e7) return std::nullopt;
    long mod = Rat(p).pow(N).to_long();
    // integer forms: p^shift * (sum c x + k) mod p^{shift + level}
    struct Form {
        std::vector<long> c;
        long k;
        long mod;
    };
    std::vector<Form> forms;
    for (size_t i = 0; i < c.coeffs.size(); ++i) {
        long mdl = Rat(p).pow(shift[i] + c.levels[i]).to_long();
        Rat sc = Rat(p).pow(shift[i]);
        Form fm{{}, residue_mod(c.constants[i] * sc, mdl), mdl};
        for (const auto& x : c.coeffs[i]) fm.c.push_back(residue_mod(x * sc, mdl));
        forms.push_back(std::move(fm));
    }
    std::vector<long> g(vars, 0), bound(vars, mod);
    long in_i = 0, in_k = 0;
    auto det_unit = [&](const std::vector<long>& x) {
        RatMatrix mm(m, m);
        for (size_t i = 0; i < vars; ++i) mm(i / m, i % m) = Rat(x[i]);
        return is_unit(det(mm), p);
    };
    do {
        bool lower_ok = true;
        for (size_t v = 0; v < vars && lower_ok; ++v)
            if (v / m > v % m && g[v] % Rat(p).pow(r).to_long() != 0) lower_ok = false;
        if (!lower_ok) continue;
        bool diag_ok = true;
        for (size_t i = 0; i < m; ++i)
            if (g[i * m + i] % p == 0) diag_ok = false;
        if (!diag_ok) continue;  // with lower entries in p Z_p, det is a unit iff the diagonal is
        ++in_i;
        bool ok = true;
        for (const auto& fm : forms) {
            __int128 acc = fm.k;
            for (size_t v = 0; v < vars; ++v) acc += static_cast<__int128>(fm.c[v]) * g[v];
            if (acc % fm.mod != 0) {
                ok = false;
                break;
            }
        }
        if (ok && det_unit(g)) ++in_k;
    } while (next_tuple(g, bound));
    if (in_k == 0) return std::nullopt;
    return Rat(in_i) / Rat(in_k);
}

}  // namespace

IndexReport count_indices(const GlnContext& ctx, bool enumerate) {
    ctx.validate();
    if (!ctx.is_numeric()) throw std::invalid_argument("count_indices: numeric context required");
    int n = ctx.n;
    long p = ctx.p;
    int nu = *ctx.nu;
    IndexReport rep;
    Rat f = ctx.f_value();

    // unipotent: enumerate U_n mod p^N, N = (n-1) nu, and the subgroup t U t^{-1}
    {
        long N = static_cast<long>(n - 1) * nu;
        long mod = Rat(p).pow(N).to_long();
        std::vector<std::pair<int, int>> slots;
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b) slots.emplace_back(a, b);
        std::vector<long> vals(slots.size(), 0), bound(slots.size(), mod);
        long all = 0, sub = 0;
        do {
            ++all;
            bool in = true;
            for (size_t k = 0; k < slots.size() && in; ++k) {
                long need = Rat(p).pow(static_cast<long>(nu) * (slots[k].second - slots[k].first)).to_long();
                if (vals[k] % need != 0) in = false;
            }
            if (in) ++sub;
        } while (next_tuple(vals, bound));
        rep.unipotent_index = Rat(all) / Rat(sub);
        rep.unipotent_formula = f.pow((n + 1) * n * (n - 1) / 6);
    }

    long exponent = ((n + 1) * n * (n - 1) + n * (n - 1) * (n - 2)) / 6;
    Rat vi = iwahori_volume(n - 1, p, ctx.r);
    Rat vk = gamma_volume(n, p, ctx.r, f);
    Rat vk_next = gamma_volume(n, p, ctx.r, f * Rat(p));
    rep.gamma_index = vi / vk;
    rep.gamma_formula = f.pow(exponent);
    rep.gamma_relative = vk / vk_next;
    rep.gamma_relative_formula = Rat(p).pow(exponent);
    if (enumerate) rep.gamma_index_enumerated = gamma_index_by_enumeration(n, p, ctx.r, f);
    return rep;
}

}  // namespace hforge
