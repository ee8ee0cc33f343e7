#include "hforge/matrix.hpp"

#include <sstream>

namespace hforge {

LaurentMatrix inverse(const LaurentMatrix& m) {
    if (!m.square()) throw std::invalid_argument("inverse: non-square matrix");
    size_t n = m.rows();
    LaurentPoly d = det_laplace(m);
    if (!d.is_unit()) throw NonUnitDeterminant(d);
    LaurentPoly dinv = d.unit_inverse();
    LaurentMatrix out(n, n);
    if (n == 1) {
        out(0, 0) = dinv;
        return out;
    }
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) {
            // cofactor C_ji for the adjugate entry (i, j)
            LaurentMatrix minor(n - 1, n - 1);
            for (size_t r = 0, rr = 0; r < n; ++r) {
                if (r == j) continue;
                for (size_t c = 0, cc = 0; c < n; ++c) {
                    if (c == i) continue;
                    minor(rr, cc++) = m(r, c);
                }
                ++rr;
            }
            LaurentPoly cof = det_laplace(minor);
            if ((i + j) % 2) cof = -cof;
            out(i, j) = cof * dinv;
        }
    }
    return out;
}

RatMatrix to_rat(const LaurentMatrix& m) {
    return m.map([](const LaurentPoly& x) {
        if (!x.is_constant()) throw std::domain_error("to_rat: non-constant entry " + x.str());
        return x.constant_term().to_rat();
    });
}

RatMatrix to_rat(const CycloMatrix& m) {
    return m.map([](const Cyclo& x) { return x.to_rat(); });
}

CycloMatrix to_cyclo(const RatMatrix& m) {
    return m.map([](const Rat& x) { return Cyclo(x); });
}

LaurentMatrix to_laurent(const RatMatrix& m) {
    return m.map([](const Rat& x) { return LaurentPoly(x); });
}

CycloMatrix eval(const LaurentMatrix& m, const std::map<std::string, Cyclo>& values) {
    return m.map([&](const LaurentPoly& x) { return x.eval(values); });
}

std::string to_string(const RatMatrix& m) {
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < m.rows(); ++i) {
        os << (i ? ", [" : "[");
        for (size_t j = 0; j < m.cols(); ++j) os << (j ? ", " : "") << m(i, j);
        os << "]";
    }
    os << "]";
    return os.str();
}

std::string to_string(const LaurentMatrix& m) {
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < m.rows(); ++i) {
        os << (i ? ", [" : "[");
        for (size_t j = 0; j < m.cols(); ++j) os << (j ? ", " : "") << m(i, j).str();
        os << "]";
    }
    os << "]";
    return os.str();
}

}  // namespace hforge
