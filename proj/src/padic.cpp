#include "hforge/padic.hpp"

#include <stdexcept>

namespace hforge {

long PadicVal::value() const {
    if (!v_) throw std::domain_error("PadicVal: infinite valuation has no integer value");
    return *v_;
}

PadicVal operator+(const PadicVal& a, const PadicVal& b) {
    if (a.p_ != b.p_) throw std::invalid_argument("PadicVal: mixed primes");
    if (!a.v_ || !b.v_) return PadicVal::infinity(a.p_);
    return {a.p_, *a.v_ + *b.v_};
}

bool PadicVal::operator<(const PadicVal& o) const {
    if (!v_) return false;
    if (!o.v_) return true;
    return *v_ < *o.v_;
}

long valuation_of_nonzero(const mpz_class& z, long p) {
    if (z == 0) throw std::domain_error("valuation_of_nonzero: zero argument");
    mpz_class t = z, pp = p;
    long v = 0;
    while (mpz_divisible_p(t.get_mpz_t(), pp.get_mpz_t())) {
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), pp.get_mpz_t());
        ++v;
    }
    return v;
}

static long raw_valuation(const Rat& x, long p) {
    return valuation_of_nonzero(x.num(), p) - valuation_of_nonzero(x.den(), p);
}

PadicVal valuation(const Rat& x, long p) {
    if (!is_prime(p)) throw std::invalid_argument("valuation: " + std::to_string(p) + " is not prime");
    if (x.is_zero()) return PadicVal::infinity(p);
    return {p, raw_valuation(x, p)};
}

long valuation_capped(const Rat& x, long p, long cap) {
    if (x.is_zero()) return cap;
    long v = raw_valuation(x, p);
    return v < cap ? v : cap;
}

}  // namespace hforge
