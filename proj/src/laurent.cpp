#include "hforge/laurent.hpp"

#include <mutex>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace hforge {

namespace {

struct VarRegistry {
    std::mutex mu;
    std::unordered_map<std::string, int> ids;
    std::vector<std::string> names;
};

VarRegistry& registry() {
    static VarRegistry r;
    return r;
}

}  // namespace

int intern_var(const std::string& name) {
    auto& r = registry();
    std::lock_guard lock(r.mu);
    auto [it, inserted] = r.ids.emplace(name, static_cast<int>(r.names.size()));
    if (inserted) r.names.push_back(name);
    return it->second;
}

const std::string& var_name(int id) {
    auto& r = registry();
    std::lock_guard lock(r.mu);
    return r.names.at(static_cast<size_t>(id));
}

Monomial mono_mul(const Monomial& a, const Monomial& b) {
    Monomial out;
    out.reserve(a.size() + b.size());
    size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
            out.push_back(a[i++]);
        } else if (i == a.size() || b[j].first < a[i].first) {
            out.push_back(b[j++]);
        } else {
            long e = a[i].second + b[j].second;
            if (e != 0) out.emplace_back(a[i].first, e);
            ++i;
            ++j;
        }
    }
    return out;
}

Monomial mono_inv(const Monomial& a) {
    Monomial out = a;
    for (auto& [v, e] : out) e = -e;
    return out;
}

LaurentPoly::LaurentPoly(const Cyclo& c) {
    if (!c.is_zero()) terms_.emplace(Monomial{}, c);
}

LaurentPoly LaurentPoly::var(const std::string& name, long exponent) {
    return monomial(Cyclo(Rat(1)), exponent == 0 ? Monomial{} : Monomial{{intern_var(name), exponent}});
}

LaurentPoly LaurentPoly::monomial(const Cyclo& coeff, Monomial m) {
    LaurentPoly p;
    if (!coeff.is_zero()) p.terms_.emplace(std::move(m), coeff);
    return p;
}

bool LaurentPoly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

Cyclo LaurentPoly::constant_term() const {
    auto it = terms_.find(Monomial{});
    return it == terms_.end() ? Cyclo(Rat(0)) : it->second;
}

LaurentPoly LaurentPoly::unit_inverse() const {
    if (!is_unit()) throw std::domain_error("LaurentPoly: " + str() + " is not a unit");
    const auto& [m, c] = *terms_.begin();
    return monomial(c.inv(), mono_inv(m));
}

void LaurentPoly::add_term(const Monomial& m, const Cyclo& c) {
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    } else if (c.is_zero()) {
        terms_.erase(it);
    }
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly out;
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_) out.add_term(mono_mul(ma, mb), ca * cb);
    return out;
}

LaurentPoly& LaurentPoly::operator*=(const LaurentPoly& o) { return *this = *this * o; }

LaurentPoly operator-(const LaurentPoly& a) {
    LaurentPoly out = a;
    for (auto& [m, c] : out.terms_) c = -c;
    return out;
}

bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    auto it = b.terms_.begin();
    for (const auto& [m, c] : a.terms_) {
        if (it->first != m || !(it->second == c)) return false;
        ++it;
    }
    return true;
}

LaurentPoly LaurentPoly::pow(long e) const {
    if (e < 0) return unit_inverse().pow(-e);
    LaurentPoly r(1), b = *this;
    while (e > 0) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

Cyclo LaurentPoly::eval(const std::map<std::string, Cyclo>& values) const {
    Cyclo total(Rat(0));
    for (const auto& [m, c] : terms_) {
        Cyclo t = c;
        for (const auto& [v, e] : m) {
            auto it = values.find(var_name(v));
            if (it == values.end()) throw std::invalid_argument("LaurentPoly::eval: unbound " + var_name(v));
            t *= it->second.pow(e);
        }
        total += t;
    }
    return total;
}

LaurentPoly LaurentPoly::subs(const std::map<std::string, LaurentPoly>& values) const {
    LaurentPoly total;
    for (const auto& [m, c] : terms_) {
        LaurentPoly t(c);
        Monomial rest;
        for (const auto& [v, e] : m) {
            auto it = values.find(var_name(v));
            if (it == values.end())
                rest.emplace_back(v, e);
            else
                t *= it->second.pow(e);
        }
        total += t * monomial(Cyclo(Rat(1)), rest);
    }
    return total;
}

std::string LaurentPoly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c.str() << ")";
        for (const auto& [v, e] : m) {
            os << "*" << var_name(v);
            if (e != 1) os << "^" << e;
        }
    }
    return os.str();
}

}  // namespace hforge
