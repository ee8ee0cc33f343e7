#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>

namespace hforge {

// Arbitrary precision rational, always in lowest terms with positive denominator.
class Rat {
public:
    Rat() = default;
    Rat(long v) : q_(v) {}
    Rat(int v) : q_(v) {}
    Rat(long long v);
    Rat(const mpz_class& v) : q_(v) {}
    Rat(const mpz_class& num, const mpz_class& den);
    explicit Rat(const mpq_class& v) : q_(v) { q_.canonicalize(); }

    // Accepts "a", "-a", "a/b".
    static Rat parse(std::string_view s);

    mpz_class num() const { return q_.get_num(); }
    mpz_class den() const { return q_.get_den(); }
    const mpq_class& raw() const { return q_; }

    bool is_zero() const { return sgn(q_) == 0; }
    bool is_integer() const { return q_.get_den() == 1; }
    int sign() const { return sgn(q_); }
    long to_long() const;  // throws unless an integer fitting in long

    Rat inv() const;
    Rat abs() const { return Rat(mpq_class(::abs(q_))); }
    Rat pow(long e) const;

    std::string str() const { return q_.get_str(); }

    Rat& operator+=(const Rat& o) { q_ += o.q_; return *this; }
    Rat& operator-=(const Rat& o) { q_ -= o.q_; return *this; }
    Rat& operator*=(const Rat& o) { q_ *= o.q_; return *this; }
    Rat& operator/=(const Rat& o);

    friend Rat operator+(Rat a, const Rat& b) { return a += b; }
    friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
    friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
    friend Rat operator/(Rat a, const Rat& b) { return a /= b; }
    friend Rat operator-(const Rat& a) { return Rat(mpq_class(-a.q_)); }

    friend bool operator==(const Rat& a, const Rat& b) { return a.q_ == b.q_; }
    friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
        int c = cmp(a.q_, b.q_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }
    friend std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

private:
    mpq_class q_;
};

// Nonnegative residue of a p-integral rational modulo an integer modulus.
long residue_mod(const Rat& x, long modulus);

bool is_prime(long p);

}  // namespace hforge

template <>
struct std::hash<hforge::Rat> {
    size_t operator()(const hforge::Rat& r) const noexcept;
};
