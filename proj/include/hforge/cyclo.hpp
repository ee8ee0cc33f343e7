#pragma once

#include "hforge/rat.hpp"

#include <ostream>
#include <string>
#include <vector>

namespace hforge {

long euler_phi(long m);
// Coefficients (low degree first) of the m-th cyclotomic polynomial.
const std::vector<long>& cyclotomic_poly(long m);

// Element of Q(zeta_m) in the power basis 1, zeta, ..., zeta^{phi(m)-1}.
class Cyclo {
public:
    Cyclo() : Cyclo(Rat(0)) {}
    Cyclo(const Rat& r) : m_(1), c_{r} {}
    Cyclo(long v) : Cyclo(Rat(v)) {}
    Cyclo(int v) : Cyclo(Rat(v)) {}
    Cyclo(long conductor, std::vector<Rat> coeffs);  // reduces modulo Phi_m

    static Cyclo zero(long m);
    static Cyclo zeta(long m, long k = 1);

    long conductor() const { return m_; }
    const std::vector<Rat>& coeffs() const { return c_; }

    bool is_zero() const;
    bool is_rational() const;
    Rat to_rat() const;  // throws unless rational

    Cyclo lift(long multiple_conductor) const;
    // Best effort: re-expresses the element over a smaller conductor when the power-basis
    // support makes that evident. The result always equals *this.
    Cyclo simplified() const;

    Cyclo conj() const;
    Cyclo galois(long k) const;  // zeta -> zeta^k, gcd(k, m) = 1
    Cyclo inv() const;
    Cyclo pow(long e) const;
    Rat norm() const;  // field norm down to Q
    // min over power-basis coefficients of v_p; the power basis is an integral basis
    long coeff_valuation(long p, long cap = 1L << 30) const;

    Cyclo& operator+=(const Cyclo& o);
    Cyclo& operator-=(const Cyclo& o);
    Cyclo& operator*=(const Cyclo& o);
    Cyclo& operator/=(const Cyclo& o) { return *this *= o.inv(); }

    friend Cyclo operator+(Cyclo a, const Cyclo& b) { return a += b; }
    friend Cyclo operator-(Cyclo a, const Cyclo& b) { return a -= b; }
    friend Cyclo operator*(Cyclo a, const Cyclo& b) { return a *= b; }
    friend Cyclo operator/(Cyclo a, const Cyclo& b) { return a /= b; }
    friend Cyclo operator-(const Cyclo& a);
    friend bool operator==(const Cyclo& a, const Cyclo& b);

    std::string str() const;
    friend std::ostream& operator<<(std::ostream& os, const Cyclo& c) { return os << c.str(); }

private:
    long m_;
    std::vector<Rat> c_;
};

long lcm_long(long a, long b);

}  // namespace hforge
