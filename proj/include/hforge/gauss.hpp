#pragma once

#include "hforge/cyclo.hpp"
#include "hforge/rat.hpp"

#include <vector>

namespace hforge {

long int_pow(long base, long e);
// Smallest generator of (Z/p^s)^x, p odd.
long primitive_root(long p, long s);

// Quasi-character of Q_p^x: a character of (Z/p^s)^x together with the value chi(p).
class MultChar {
public:
    // values[a] for 0 <= a < p^s; entries at non-units are ignored. Throws if not multiplicative.
    static MultChar from_values(long p, long s, std::vector<Cyclo> values, Cyclo chi_p = Cyclo(1));
    static MultChar trivial(long p, long s, Cyclo chi_p = Cyclo(1));

    long p() const { return p_; }
    long exponent() const { return s_; }
    long modulus() const { return mod_; }
    const Cyclo& chi_p() const { return chi_p_; }

    // chi(a) for an integer a prime to p
    const Cyclo& operator()(long a) const;
    // chi(p^k u) = chi(p)^k chi(u)
    Cyclo at(const Rat& x) const;

    long conductor_exponent() const;
    bool primitive() const { return conductor_exponent() == s_; }
    long order() const;  // order of the finite part
    MultChar inverse() const;
    MultChar operator*(const MultChar& o) const;
    friend bool operator==(const MultChar& a, const MultChar& b);

private:
    friend std::vector<MultChar> all_characters(long p, long s, const Cyclo& chi_p);
    MultChar(long p, long s, std::vector<Cyclo> values, Cyclo chi_p);
    long p_, s_, mod_;
    std::vector<Cyclo> values_;
    Cyclo chi_p_;
};

// The full dual group of (Z/p^s)^x, phi(p^s) characters; the cyclic generator for odd p and the
// {-1, 5} presentation for p = 2.
std::vector<MultChar> all_characters(long p, long s, const Cyclo& chi_p = Cyclo(1));
// First primitive character of the given order in enumeration order, over the smallest admissible s.
// Throws std::invalid_argument if none exists with p^s <= max_modulus.
MultChar character_of_order(long p, long order, long max_modulus = 1L << 16);

// psi(a / p^t) = zeta_{p^t}^a; trivial on Z_p.
class AddChar {
public:
    explicit AddChar(long p);
    long p() const { return p_; }
    // Throws std::invalid_argument unless x lies in Z[1/p].
    Cyclo operator()(const Rat& x) const;

private:
    long p_;
};

// G(chi) = sum_{a mod f} chi(a/f) psi(a/f) with f = p^s, s the conductor exponent (s >= 1).
Cyclo gauss_sum(const MultChar& chi);
// chi(f_chi) G(chi) = sum_{a in (Z/p^s)^x} chi(a) zeta_{p^s}^a
Cyclo classical_gauss_sum(const MultChar& chi);

// sum_{g in (Z/p^l)^x} chi(g) psi(c g); needs l >= conductor exponent and v_p(c) >= -l.
Cyclo twisted_sum_direct(const MultChar& chi, const Rat& c, long l);
// 0 unless v_p(c) = -s; for c = a p^{-s}: p^{l-s} chi^{-1}(a) chi(f_chi) G(chi).
Cyclo twisted_sum_closed(const MultChar& chi, const Rat& c, long l);
// Same, with chi(f_chi) G(chi) supplied by the caller.
Cyclo twisted_sum_closed(const MultChar& chi, const Rat& c, long l, const Cyclo& classical_g);
// Both routes; throws std::logic_error if they disagree.
Cyclo twisted_sum(const MultChar& chi, const Rat& c, long l);

struct BirchExponents {
    long local_f = 0, local_fchi = 0, local_gauss = 0;
    long global_f = 0, global_fchi = 0, global_gauss = 0;
};

struct BirchConstants {
    Cyclo c_local;
    Cyclo c_global;
    Rat delta;  // prod_{nu=1}^n (1 - q^{-nu})^{-1}
    BirchExponents exponents;
};

BirchExponents birch_exponents(long n);
Rat delta_factor(long n, const Rat& q);
// r >= s >= 1 with s the conductor exponent of chi and q = p.
BirchConstants birch_constants(long n, long q, long r, long s, const MultChar& chi);

}  // namespace hforge
