#include "hforge/rat.hpp"

#include <stdexcept>

namespace hforge {

Rat::Rat(long long v) {
    mpz_class z;
    z = std::to_string(v);
    q_ = z;
}

Rat::Rat(const mpz_class& num, const mpz_class& den) : q_(num, den) {
    if (den == 0) throw std::domain_error("Rat: zero denominator");
    q_.canonicalize();
}

Rat Rat::parse(std::string_view s) {
    std::string t(s);
    auto slash = t.find('/');
    mpz_class n, d = 1;
    try {
        if (slash == std::string::npos) {
            n = t;
        } else {
            n = t.substr(0, slash);
            d = t.substr(slash + 1);
        }
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("Rat: cannot parse '" + t + "'");
    }
    return Rat(n, d);
}

long Rat::to_long() const {
    if (!is_integer() || !q_.get_num().fits_slong_p())
        throw std::range_error("Rat: " + str() + " is not a machine integer");
    return q_.get_num().get_si();
}

Rat Rat::inv() const {
    if (is_zero()) throw std::domain_error("Rat: inverse of zero");
    return Rat(mpq_class(1 / q_));
}

Rat& Rat::operator/=(const Rat& o) {
    if (o.is_zero()) throw std::domain_error("Rat: division by zero");
    q_ /= o.q_;
    return *this;
}

Rat Rat::pow(long e) const {
    if (e < 0) return inv().pow(-e);
    mpz_class n, d;
    mpz_pow_ui(n.get_mpz_t(), q_.get_num_mpz_t(), static_cast<unsigned long>(e));
    mpz_pow_ui(d.get_mpz_t(), q_.get_den_mpz_t(), static_cast<unsigned long>(e));
    return Rat(n, d);
}

long residue_mod(const Rat& x, long modulus) {
    mpz_class m = modulus;
    mpz_class d = x.den(), dinv;
    if (mpz_invert(dinv.get_mpz_t(), d.get_mpz_t(), m.get_mpz_t()) == 0 && modulus != 1)
        throw std::domain_error("residue_mod: denominator of " + x.str() + " not invertible mod " +
                                std::to_string(modulus));
    mpz_class r = (x.num() * dinv) % m;
    if (r < 0) r += m;
    return r.get_si();
}

bool is_prime(long p) {
    if (p < 2) return false;
    for (long d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

}  // namespace hforge

size_t std::hash<hforge::Rat>::operator()(const hforge::Rat& r) const noexcept {
    // low limbs are enough for bucketing
    auto h1 = static_cast<size_t>(mpz_get_si(r.raw().get_num_mpz_t()));
    auto h2 = static_cast<size_t>(mpz_get_ui(r.raw().get_den_mpz_t()));
    return h1 * 1000003u ^ h2;
}
