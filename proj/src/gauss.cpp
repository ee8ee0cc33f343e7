#include "hforge/gauss.hpp"

#include "hforge/padic.hpp"

#include <numeric>
#include <stdexcept>

namespace hforge {

namespace {

long mod_pos(long a, long m) {
    long r = a % m;
    return r < 0 ? r + m : r;
}

long mul_mod(long a, long b, long m) { return static_cast<long>((static_cast<__int128>(a) * b) % m); }

long pow_mod(long b, long e, long m) {
    long r = 1 % m;
    b = mod_pos(b, m);
    for (; e > 0; e >>= 1) {
        if (e & 1) r = mul_mod(r, b, m);
        b = mul_mod(b, b, m);
    }
    return r;
}

bool is_unit(long a, long p) { return mod_pos(a, p) != 0; }

void require_prime(long p, long s) {
    if (!is_prime(p)) throw std::invalid_argument("characters: p must be prime");
    if (s < 0) throw std::invalid_argument("characters: negative exponent");
}

}  // namespace

long int_pow(long base, long e) {
    long r = 1;
    for (long i = 0; i < e; ++i) r *= base;
    return r;
}

long primitive_root(long p, long s) {
    if (p == 2) throw std::invalid_argument("primitive_root: p must be odd");
    long m = int_pow(p, s), phi = euler_phi(m);
    std::vector<long> primes;
    for (long d = 2, x = phi; x > 1; ++d)
        if (x % d == 0) {
            primes.push_back(d);
            while (x % d == 0) x /= d;
        }
    for (long g = 2; g < m; ++g) {
        if (!is_unit(g, p)) continue;
        bool ok = true;
        for (long q : primes)
            if (pow_mod(g, phi / q, m) == 1) ok = false;
        if (ok) return g;
    }
    return 1;  // m <= 2
}

MultChar::MultChar(long p, long s, std::vector<Cyclo> values, Cyclo chi_p)
    : p_(p), s_(s), mod_(int_pow(p, s)), values_(std::move(values)), chi_p_(std::move(chi_p)) {}

MultChar MultChar::from_values(long p, long s, std::vector<Cyclo> values, Cyclo chi_p) {
    require_prime(p, s);
    long m = int_pow(p, s);
    if (static_cast<long>(values.size()) != m) throw std::invalid_argument("MultChar: need p^s values");
    if (chi_p.is_zero()) throw std::invalid_argument("MultChar: chi(p) must be nonzero");
    if (m == 1) return trivial(p, s, std::move(chi_p));
    for (long a = 0; a < m; ++a)
        if (!is_unit(a, p)) values[static_cast<size_t>(a)] = Cyclo(0);
    if (values[static_cast<size_t>(1 % m)] != Cyclo(1)) throw std::invalid_argument("MultChar: chi(1) != 1");
    for (long a = 1; a < m; ++a)
        for (long b = a; b < m; ++b)
            if (is_unit(a, p) && is_unit(b, p) &&
                values[static_cast<size_t>(a)] * values[static_cast<size_t>(b)] != values[static_cast<size_t>(a * b % m)])
                throw std::invalid_argument("MultChar: values are not multiplicative");
    return MultChar(p, s, std::move(values), std::move(chi_p));
}

MultChar MultChar::trivial(long p, long s, Cyclo chi_p) {
    require_prime(p, s);
    long m = int_pow(p, s);
    std::vector<Cyclo> v(static_cast<size_t>(m), Cyclo(0));
    for (long a = 0; a < m; ++a)
        if (is_unit(a, p) || m == 1) v[static_cast<size_t>(a)] = Cyclo(1);
    return MultChar(p, s, std::move(v), std::move(chi_p));
}

const Cyclo& MultChar::operator()(long a) const {
    if (!is_unit(a, p_)) throw std::invalid_argument("MultChar: argument is not a unit");
    return values_[static_cast<size_t>(mod_pos(a, mod_))];
}

Cyclo MultChar::at(const Rat& x) const {
    if (x.is_zero()) throw std::invalid_argument("MultChar: chi(0)");
    long k = valuation(x, p_).value();
    Rat u = x / Rat(p_).pow(k);
    return chi_p_.pow(k) * (*this)(residue_mod(u, mod_));
}

long MultChar::conductor_exponent() const {
    for (long t = 0; t <= s_; ++t) {
        long pt = int_pow(p_, t);
        bool trivial_on_kernel = true;
        for (long a = 1; a < mod_ && trivial_on_kernel; a += pt)
            if (is_unit(a, p_) && values_[static_cast<size_t>(a)] != Cyclo(1)) trivial_on_kernel = false;
        if (trivial_on_kernel) return t;
    }
    return s_;
}

long MultChar::order() const {
    long phi = euler_phi(mod_);
    for (long d = 1; d <= phi; ++d) {
        if (phi % d) continue;
        bool ok = true;
        for (long a = 1; a < mod_ && ok; ++a)
            if (is_unit(a, p_) && values_[static_cast<size_t>(a)].pow(d) != Cyclo(1)) ok = false;
        if (ok) return d;
    }
    return phi;
}

MultChar MultChar::inverse() const {
    std::vector<Cyclo> v = values_;
    // values are roots of unity
    for (auto& x : v) x = x.conj();
    return MultChar(p_, s_, std::move(v), chi_p_.inv());
}

MultChar MultChar::operator*(const MultChar& o) const {
    if (p_ != o.p_ || s_ != o.s_) throw std::invalid_argument("MultChar: product of characters with different moduli");
    std::vector<Cyclo> v(values_.size());
    for (size_t i = 0; i < v.size(); ++i) v[i] = values_[i] * o.values_[i];
    return MultChar(p_, s_, std::move(v), chi_p_ * o.chi_p_);
}

bool operator==(const MultChar& a, const MultChar& b) {
    return a.p_ == b.p_ && a.s_ == b.s_ && a.chi_p_ == b.chi_p_ && a.values_ == b.values_;
}

std::vector<MultChar> all_characters(long p, long s, const Cyclo& chi_p) {
    require_prime(p, s);
    long m = int_pow(p, s);
    long phi = euler_phi(m);
    std::vector<MultChar> out;
    if (m <= 2) {
        out.push_back(MultChar::trivial(p, s, chi_p));
        return out;
    }
    if (p != 2) {
        long g = primitive_root(p, s);
        std::vector<long> dlog(static_cast<size_t>(m), -1);
        for (long j = 0, x = 1; j < phi; ++j, x = x * g % m) dlog[static_cast<size_t>(x)] = j;
        for (long k = 0; k < phi; ++k) {
            std::vector<Cyclo> v(static_cast<size_t>(m), Cyclo(0));
            for (long a = 1; a < m; ++a)
                if (dlog[static_cast<size_t>(a)] >= 0)
                    v[static_cast<size_t>(a)] = Cyclo::zeta(phi, dlog[static_cast<size_t>(a)] * k % phi).simplified();
            out.push_back(MultChar(p, s, std::move(v), chi_p));
        }
        return out;
    }
    // a = (-1)^e 5^j with j mod 2^{s-2}
    long h = m / 4;
    std::vector<long> e_of(static_cast<size_t>(m), -1), j_of(static_cast<size_t>(m), -1);
    for (long e = 0; e < 2; ++e)
        for (long j = 0, x = 1; j < h; ++j, x = x * 5 % m) {
            long a = e ? m - x : x;
            e_of[static_cast<size_t>(a)] = e;
            j_of[static_cast<size_t>(a)] = j;
        }
    for (long eps = 0; eps < 2; ++eps)
        for (long k = 0; k < h; ++k) {
            std::vector<Cyclo> v(static_cast<size_t>(m), Cyclo(0));
            for (long a = 1; a < m; a += 2) {
                Cyclo sign = (eps && e_of[static_cast<size_t>(a)]) ? Cyclo(-1) : Cyclo(1);
                v[static_cast<size_t>(a)] = sign * Cyclo::zeta(h, j_of[static_cast<size_t>(a)] * k % h).simplified();
            }
            out.push_back(MultChar(p, s, std::move(v), chi_p));
        }
    return out;
}

MultChar character_of_order(long p, long order, long max_modulus) {
    if (order < 2) throw std::invalid_argument("character_of_order: order must be at least 2");
    for (long s = 1; int_pow(p, s) <= max_modulus; ++s)
        for (const auto& chi : all_characters(p, s))
            if (chi.primitive() && chi.order() == order) return chi;
    throw std::invalid_argument("character_of_order: no primitive character of that order in range");
}

AddChar::AddChar(long p) : p_(p) {
    if (!is_prime(p)) throw std::invalid_argument("AddChar: p must be prime");
}

Cyclo AddChar::operator()(const Rat& x) const {
    mpz_class den = x.den();
    long t = 0;
    while (den % p_ == 0) {
        den /= p_;
        ++t;
    }
    if (den != 1) throw std::invalid_argument("AddChar: argument not in Z[1/p]");
    if (t == 0) return Cyclo(1);
    long m = int_pow(p_, t);
    mpz_class r = x.num() % m;
    if (r < 0) r += m;
    return Cyclo::zeta(m, r.get_si());
}

Cyclo gauss_sum(const MultChar& chi) {
    long s = chi.conductor_exponent();
    if (s < 1) throw std::invalid_argument("gauss_sum: character has trivial conductor");
    long f = int_pow(chi.p(), s);
    AddChar psi(chi.p());
    Cyclo g(0);
    for (long a = 1; a < f; ++a) {
        if (!is_unit(a, chi.p())) continue;
        Rat x(a, f);
        g += chi.at(x) * psi(x);
    }
    return g;
}

Cyclo classical_gauss_sum(const MultChar& chi) {
    long s = chi.conductor_exponent();
    return chi.at(Rat(int_pow(chi.p(), s))) * gauss_sum(chi);
}

Cyclo twisted_sum_direct(const MultChar& chi, const Rat& c, long l) {
    if (l < chi.conductor_exponent()) throw std::invalid_argument("twisted_sum: level below the conductor");
    if (!c.is_zero() && valuation(c, chi.p()).value() < -l)
        throw std::invalid_argument("twisted_sum: psi(c g) not defined modulo p^l");
    long m = int_pow(chi.p(), l);
    // Each term chi(g) psi(cg) is chi(g) shifted by a root of unity: accumulate in the power basis of
    // zeta_L and reduce once.
    long big = m;
    for (long g = 1; g < m; ++g)
        if (is_unit(g, chi.p())) big = std::lcm(big, chi(g).conductor());
    std::vector<Rat> acc(static_cast<size_t>(big));
    for (long g = 1; g < m; ++g) {
        if (!is_unit(g, chi.p())) continue;
        const Cyclo& v = chi(g);
        // psi(x) = zeta_{p^t}^{num x} for x with denominator p^t
        Rat x = c * Rat(g);
        mpz_class den = x.den(), r = x.num() % den;
        if (r < 0) r += den;
        long shift = r.get_si() * (big / den.get_si());
        long step = big / v.conductor();
        for (size_t k = 0; k < v.coeffs().size(); ++k)
            if (!v.coeffs()[k].is_zero()) acc[static_cast<size_t>((static_cast<long>(k) * step + shift) % big)] += v.coeffs()[k];
    }
    return Cyclo(big, std::move(acc)).simplified();
}

Cyclo twisted_sum_closed(const MultChar& chi, const Rat& c, long l) {
    if (chi.conductor_exponent() < 1) throw std::invalid_argument("twisted_sum: character has trivial conductor");
    return twisted_sum_closed(chi, c, l, classical_gauss_sum(chi));
}

Cyclo twisted_sum_closed(const MultChar& chi, const Rat& c, long l, const Cyclo& classical_g) {
    long s = chi.conductor_exponent();
    if (s < 1) throw std::invalid_argument("twisted_sum: character has trivial conductor");
    if (l < s) throw std::invalid_argument("twisted_sum: level below the conductor");
    if (c.is_zero() || valuation(c, chi.p()).value() != -s) return Cyclo(0);
    Rat a = c * Rat(int_pow(chi.p(), s));
    return Cyclo(Rat(int_pow(chi.p(), l - s))) * chi(residue_mod(a, chi.modulus())).conj() * classical_g;
}

Cyclo twisted_sum(const MultChar& chi, const Rat& c, long l) {
    Cyclo closed = twisted_sum_closed(chi, c, l);
    Cyclo direct = twisted_sum_direct(chi, c, l);
    if (closed != direct) throw std::logic_error("twisted_sum: closed form disagrees with direct summation");
    return direct;
}

BirchExponents birch_exponents(long n) {
    BirchExponents e;
    e.local_f = -(n + 1) * n * (n - 1) / 6;
    e.local_fchi = -n * (n + 1) / 2;
    e.local_gauss = n * (n + 1) / 2;
    e.global_f = -n * (n - 1) * (n - 2) / 6;
    e.global_fchi = -n * (n - 1) / 2;
    e.global_gauss = n * (n - 1) / 2;
    return e;
}

Rat delta_factor(long n, const Rat& q) {
    Rat d(1);
    for (long nu = 1; nu <= n; ++nu) d *= Rat(1) - q.pow(-nu);
    return d.inv();
}

BirchConstants birch_constants(long n, long q, long r, long s, const MultChar& chi) {
    if (n < 1) throw std::invalid_argument("birch_constants: n must be positive");
    if (!(r >= s && s >= 1)) throw std::invalid_argument("birch_constants: need r >= s >= 1");
    if (chi.p() != q) throw std::invalid_argument("birch_constants: q must be the residue characteristic of chi");
    if (chi.conductor_exponent() != s) throw std::invalid_argument("birch_constants: s is not the conductor exponent");
    BirchConstants out;
    out.exponents = birch_exponents(n);
    const auto& e = out.exponents;
    Rat nf = Rat(q).pow(r), nfchi = Rat(q).pow(s);
    Cyclo g = classical_gauss_sum(chi);
    out.delta = delta_factor(n, Rat(q));
    out.c_local = Cyclo(out.delta * nf.pow(e.local_f) * nfchi.pow(e.local_fchi)) * g.pow(e.local_gauss);
    out.c_global = Cyclo(nfchi.pow(e.global_fchi) * nf.pow(e.global_f)) * g.pow(e.global_gauss);
    return out;
}

}  // namespace hforge
