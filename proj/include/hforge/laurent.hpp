#pragma once

#include "hforge/cyclo.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace hforge {

// Globally interned variable id. Names are stable for the process lifetime.
int intern_var(const std::string& name);
const std::string& var_name(int id);

// Sparse exponent vector: (variable id, nonzero exponent), sorted by id.
using Monomial = std::vector<std::pair<int, long>>;

Monomial mono_mul(const Monomial& a, const Monomial& b);
Monomial mono_inv(const Monomial& a);

class LaurentPoly {
public:
    LaurentPoly() = default;
    LaurentPoly(long c) : LaurentPoly(Cyclo(Rat(c))) {}
    LaurentPoly(int c) : LaurentPoly(Cyclo(Rat(c))) {}
    LaurentPoly(const Rat& c) : LaurentPoly(Cyclo(c)) {}
    LaurentPoly(const Cyclo& c);

    static LaurentPoly var(const std::string& name, long exponent = 1);
    static LaurentPoly monomial(const Cyclo& coeff, Monomial m);

    const std::map<Monomial, Cyclo>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    Cyclo constant_term() const;
    // A single nonzero term: exactly the units of E[x^{+-1}] for a field E.
    bool is_unit() const { return terms_.size() == 1; }
    LaurentPoly unit_inverse() const;  // throws unless is_unit()

    LaurentPoly pow(long e) const;
    // Substitutes numeric values; every occurring variable must be bound.
    Cyclo eval(const std::map<std::string, Cyclo>& values) const;
    // Substitutes polynomials for some variables.
    LaurentPoly subs(const std::map<std::string, LaurentPoly>& values) const;

    LaurentPoly& operator+=(const LaurentPoly& o);
    LaurentPoly& operator-=(const LaurentPoly& o);
    LaurentPoly& operator*=(const LaurentPoly& o);

    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
    friend LaurentPoly operator-(const LaurentPoly& a);
    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b);

    // Division is only offered by units.
    friend LaurentPoly operator/(const LaurentPoly& a, const LaurentPoly& b) {
        return a * b.unit_inverse();
    }

    std::string str() const;

private:
    void add_term(const Monomial& m, const Cyclo& c);
    std::map<Monomial, Cyclo> terms_;
};

}  // namespace hforge
