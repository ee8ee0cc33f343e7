#pragma once

#include "hforge/rat.hpp"

#include <optional>
#include <string>

namespace hforge {

// p-adic valuation; an empty value means +infinity (the valuation of zero).
class PadicVal {
public:
    PadicVal(long p, std::optional<long> v) : p_(p), v_(v) {}

    static PadicVal infinity(long p) { return {p, std::nullopt}; }

    long prime() const { return p_; }
    bool is_infinite() const { return !v_.has_value(); }
    long value() const;  // throws on +infinity

    friend PadicVal operator+(const PadicVal& a, const PadicVal& b);
    friend bool operator==(const PadicVal& a, const PadicVal& b) = default;
    // +infinity compares greater than every finite value
    bool operator<(const PadicVal& o) const;
    bool ge(long bound) const { return is_infinite() || *v_ >= bound; }

    std::string str() const { return v_ ? std::to_string(*v_) : "inf"; }

private:
    long p_;
    std::optional<long> v_;
};

// Throws std::invalid_argument if p is not prime.
PadicVal valuation(const Rat& x, long p);
long valuation_of_nonzero(const mpz_class& z, long p);
// min(v_p(x), cap) without the PadicVal wrapper; zero yields cap.
long valuation_capped(const Rat& x, long p, long cap);

}  // namespace hforge
