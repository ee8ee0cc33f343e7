#include "hforge/cyclo.hpp"

#include "hforge/padic.hpp"

#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace hforge {

long euler_phi(long m) {
    if (m < 1) throw std::invalid_argument("euler_phi: m < 1");
    long r = m, t = m;
    for (long d = 2; d * d <= t; ++d) {
        if (t % d == 0) {
            while (t % d == 0) t /= d;
            r -= r / d;
        }
    }
    if (t > 1) r -= r / t;
    return r;
}

long lcm_long(long a, long b) { return a / std::gcd(a, b) * b; }

namespace {

std::vector<long> poly_divexact(std::vector<long> num, const std::vector<long>& den) {
    // den monic
    std::vector<long> q(num.size() - den.size() + 1, 0);
    for (size_t i = q.size(); i-- > 0;) {
        long c = num[i + den.size() - 1];
        q[i] = c;
        for (size_t j = 0; j < den.size(); ++j) num[i + j] -= c * den[j];
    }
    return q;
}

}  // namespace

const std::vector<long>& cyclotomic_poly(long m) {
    static std::recursive_mutex mu;
    static std::map<long, std::vector<long>> cache;
    std::lock_guard lock(mu);
    if (auto it = cache.find(m); it != cache.end()) return it->second;
    std::vector<long> p(static_cast<size_t>(m + 1), 0);
    p[0] = -1;
    p[static_cast<size_t>(m)] = 1;
    for (long d = 1; d < m; ++d)
        if (m % d == 0) p = poly_divexact(p, cyclotomic_poly(d));
    return cache.emplace(m, std::move(p)).first->second;
}

namespace {

std::vector<Rat> reduce_mod_phi(std::vector<Rat> a, long m) {
    const auto& phi = cyclotomic_poly(m);
    size_t deg = phi.size() - 1;
    for (size_t i = a.size(); i-- > deg;) {
        if (a[i].is_zero()) continue;
        Rat c = a[i];
        for (size_t j = 0; j <= deg; ++j)
            if (phi[j] != 0) a[i - deg + j] -= c * Rat(phi[j]);
    }
    a.resize(deg);
    return a;
}

// Solves A x = b over Q by Gauss-Jordan; A square and invertible.
std::vector<Rat> solve(std::vector<std::vector<Rat>> A, std::vector<Rat> b) {
    size_t n = b.size();
    for (size_t c = 0; c < n; ++c) {
        size_t piv = c;
        while (piv < n && A[piv][c].is_zero()) ++piv;
        if (piv == n) throw std::domain_error("Cyclo: singular multiplication matrix");
        std::swap(A[piv], A[c]);
        std::swap(b[piv], b[c]);
        Rat inv = A[c][c].inv();
        for (size_t j = c; j < n; ++j) A[c][j] *= inv;
        b[c] *= inv;
        for (size_t r = 0; r < n; ++r) {
            if (r == c || A[r][c].is_zero()) continue;
            Rat f = A[r][c];
            for (size_t j = c; j < n; ++j) A[r][j] -= f * A[c][j];
            b[r] -= f * b[c];
        }
    }
    return b;
}

}  // namespace

Cyclo Cyclo::zero(long m) { return Cyclo(m, std::vector<Rat>{}); }

Cyclo::Cyclo(long conductor, std::vector<Rat> coeffs) : m_(conductor) {
    if (conductor < 1) throw std::invalid_argument("Cyclo: conductor < 1");
    size_t phi = static_cast<size_t>(euler_phi(conductor));
    if (coeffs.size() < phi) coeffs.resize(phi);
    c_ = reduce_mod_phi(std::move(coeffs), conductor);
}

Cyclo Cyclo::zeta(long m, long k) {
    long e = ((k % m) + m) % m;
    std::vector<Rat> v(static_cast<size_t>(e + 1));
    v[static_cast<size_t>(e)] = 1;
    return Cyclo(m, std::move(v));
}

bool Cyclo::is_zero() const {
    for (const auto& x : c_)
        if (!x.is_zero()) return false;
    return true;
}

bool Cyclo::is_rational() const {
    for (size_t i = 1; i < c_.size(); ++i)
        if (!c_[i].is_zero()) return false;
    return true;
}

Rat Cyclo::to_rat() const {
    if (!is_rational()) throw std::domain_error("Cyclo: " + str() + " is not rational");
    return c_.empty() ? Rat(0) : c_[0];
}

Cyclo Cyclo::lift(long L) const {
    if (L % m_ != 0) throw std::invalid_argument("Cyclo::lift: conductor does not divide target");
    if (L == m_) return *this;
    long step = L / m_;
    std::vector<Rat> v(static_cast<size_t>(step * static_cast<long>(c_.size())));
    for (size_t i = 0; i < c_.size(); ++i) v[i * static_cast<size_t>(step)] = c_[i];
    return Cyclo(L, std::move(v));
}

Cyclo Cyclo::simplified() const {
    for (long d = 1; d < m_; ++d) {
        if (m_ % d != 0) continue;
        long step = m_ / d;
        std::vector<Rat> small(static_cast<size_t>(d));
        bool ok = true;
        // Coefficients at positions divisible by step give a candidate; verify by lifting back.
        for (size_t i = 0; i < c_.size(); ++i) {
            if (c_[i].is_zero()) continue;
            if (static_cast<long>(i) % step != 0) { ok = false; break; }
            small[static_cast<size_t>(static_cast<long>(i) / step)] = c_[i];
        }
        if (!ok) continue;
        Cyclo cand(d, small);
        if (cand.lift(m_) == *this) return cand;
    }
    return *this;
}

Cyclo Cyclo::galois(long k) const {
    if (std::gcd(k, m_) != 1) throw std::invalid_argument("Cyclo::galois: exponent not a unit");
    std::vector<Rat> v(static_cast<size_t>(m_));
    for (size_t i = 0; i < c_.size(); ++i) {
        long e = ((static_cast<long>(i) * k) % m_ + m_) % m_;
        v[static_cast<size_t>(e)] += c_[i];
    }
    return Cyclo(m_, std::move(v));
}

Cyclo Cyclo::conj() const { return galois(-1); }

Cyclo& Cyclo::operator+=(const Cyclo& o) {
    if (o.m_ != m_) {
        long L = lcm_long(m_, o.m_);
        *this = lift(L);
        return *this += o.lift(L);
    }
    for (size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
}

Cyclo& Cyclo::operator-=(const Cyclo& o) { return *this += -o; }

Cyclo operator-(const Cyclo& a) {
    Cyclo r = a;
    for (auto& x : r.c_) x = -x;
    return r;
}

Cyclo& Cyclo::operator*=(const Cyclo& o) {
    if (o.m_ != m_) {
        long L = lcm_long(m_, o.m_);
        *this = lift(L);
        return *this *= o.lift(L);
    }
    if (m_ == 1) {
        c_[0] *= o.c_[0];
        return *this;
    }
    std::vector<Rat> prod(c_.size() * 2);
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].is_zero()) continue;
        for (size_t j = 0; j < o.c_.size(); ++j)
            if (!o.c_[j].is_zero()) prod[i + j] += c_[i] * o.c_[j];
    }
    c_ = reduce_mod_phi(std::move(prod), m_);
    return *this;
}

bool operator==(const Cyclo& a, const Cyclo& b) {
    if (a.m_ == b.m_) return a.c_ == b.c_;
    long L = lcm_long(a.m_, b.m_);
    return a.lift(L).c_ == b.lift(L).c_;
}

namespace {

std::vector<std::vector<Rat>> mult_matrix(const Cyclo& a) {
    size_t n = a.coeffs().size();
    std::vector<std::vector<Rat>> M(n, std::vector<Rat>(n));
    for (size_t j = 0; j < n; ++j) {
        auto col = (a * Cyclo::zeta(a.conductor(), static_cast<long>(j))).coeffs();
        for (size_t i = 0; i < n; ++i) M[i][j] = col[i];
    }
    return M;
}

}  // namespace

Cyclo Cyclo::inv() const {
    if (is_zero()) throw std::domain_error("Cyclo: inverse of zero");
    if (is_rational()) return Cyclo(m_, {c_[0].inv()});
    std::vector<Rat> e(c_.size());
    e[0] = 1;
    return Cyclo(m_, solve(mult_matrix(*this), e));
}

Cyclo Cyclo::pow(long e) const {
    if (e < 0) return inv().pow(-e);
    Cyclo r = Cyclo(Rat(1)).lift(m_), b = *this;
    while (e > 0) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

Rat Cyclo::norm() const {
    auto M = mult_matrix(*this);
    size_t n = M.size();
    Rat det = 1;
    for (size_t c = 0; c < n; ++c) {
        size_t piv = c;
        while (piv < n && M[piv][c].is_zero()) ++piv;
        if (piv == n) return 0;
        if (piv != c) {
            std::swap(M[piv], M[c]);
            det = -det;
        }
        det *= M[c][c];
        Rat inv = M[c][c].inv();
        for (size_t r = c + 1; r < n; ++r) {
            if (M[r][c].is_zero()) continue;
            Rat f = M[r][c] * inv;
            for (size_t j = c; j < n; ++j) M[r][j] -= f * M[c][j];
        }
    }
    return det;
}

long Cyclo::coeff_valuation(long p, long cap) const {
    long v = cap;
    for (const auto& x : c_) v = std::min(v, valuation_capped(x, p, cap));
    return v;
}

std::string Cyclo::str() const {
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        if (i == 0) {
            os << c_[i];
        } else {
            os << "(" << c_[i] << ")*z" << m_ << "^" << i;
        }
    }
    if (first) os << "0";
    return os.str();
}

}  // namespace hforge
