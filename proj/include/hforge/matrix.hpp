#pragma once

#include "hforge/cyclo.hpp"
#include "hforge/laurent.hpp"
#include "hforge/rat.hpp"

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace hforge {

template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(size_t rows, size_t cols) : r_(rows), c_(cols), a_(rows * cols, T(0)) {}
    Matrix(size_t rows, size_t cols, std::vector<T> data) : r_(rows), c_(cols), a_(std::move(data)) {
        if (a_.size() != r_ * c_) throw std::invalid_argument("Matrix: data size mismatch");
    }
    Matrix(std::initializer_list<std::initializer_list<T>> rows) {
        r_ = rows.size();
        c_ = r_ ? rows.begin()->size() : 0;
        for (const auto& row : rows) {
            if (row.size() != c_) throw std::invalid_argument("Matrix: ragged initializer");
            a_.insert(a_.end(), row.begin(), row.end());
        }
    }

    static Matrix identity(size_t n) {
        Matrix m(n, n);
        for (size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }
    static Matrix diag(const std::vector<T>& d) {
        Matrix m(d.size(), d.size());
        for (size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
        return m;
    }

    size_t rows() const { return r_; }
    size_t cols() const { return c_; }
    bool square() const { return r_ == c_; }

    T& operator()(size_t i, size_t j) { return a_[i * c_ + j]; }
    const T& operator()(size_t i, size_t j) const { return a_[i * c_ + j]; }

    Matrix transpose() const {
        Matrix t(c_, r_);
        for (size_t i = 0; i < r_; ++i)
            for (size_t j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    Matrix block(size_t i0, size_t j0, size_t nr, size_t nc) const {
        Matrix b(nr, nc);
        for (size_t i = 0; i < nr; ++i)
            for (size_t j = 0; j < nc; ++j) b(i, j) = (*this)(i0 + i, j0 + j);
        return b;
    }
    void set_block(size_t i0, size_t j0, const Matrix& b) {
        for (size_t i = 0; i < b.rows(); ++i)
            for (size_t j = 0; j < b.cols(); ++j) (*this)(i0 + i, j0 + j) = b(i, j);
    }

    template <class F>
    auto map(F&& f) const -> Matrix<decltype(f(std::declval<const T&>()))> {
        using U = decltype(f(std::declval<const T&>()));
        std::vector<U> out;
        out.reserve(a_.size());
        for (const auto& x : a_) out.push_back(f(x));
        return Matrix<U>(r_, c_, std::move(out));
    }

    Matrix& operator+=(const Matrix& o) {
        check_same(o);
        for (size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
        return *this;
    }
    Matrix& operator-=(const Matrix& o) {
        check_same(o);
        for (size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
        return *this;
    }
    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.c_ != b.r_) throw std::invalid_argument("Matrix: shape mismatch in product");
        Matrix out(a.r_, b.c_);
        for (size_t i = 0; i < a.r_; ++i)
            for (size_t k = 0; k < a.c_; ++k) {
                const T& x = a(i, k);
                if (is_zero_value(x)) continue;
                for (size_t j = 0; j < b.c_; ++j)
                    if (!is_zero_value(b(k, j))) out(i, j) += x * b(k, j);
            }
        return out;
    }
    friend Matrix operator*(const T& s, Matrix m) {
        for (auto& x : m.a_) x = s * x;
        return m;
    }
    friend bool operator==(const Matrix& a, const Matrix& b) {
        if (a.r_ != b.r_ || a.c_ != b.c_) return false;
        for (size_t k = 0; k < a.a_.size(); ++k)
            if (!(a.a_[k] == b.a_[k])) return false;
        return true;
    }

    const std::vector<T>& data() const { return a_; }

    static bool is_zero_value(const T& x) { return x.is_zero(); }

private:
    void check_same(const Matrix& o) const {
        if (r_ != o.r_ || c_ != o.c_) throw std::invalid_argument("Matrix: shape mismatch");
    }
    size_t r_ = 0, c_ = 0;
    std::vector<T> a_;
};

using RatMatrix = Matrix<Rat>;
using CycloMatrix = Matrix<Cyclo>;
using LaurentMatrix = Matrix<LaurentPoly>;

// Determinant by Laplace expansion along rows with memoisation over column subsets.
// Division free, so it works over any commutative ring (used for Laurent matrices).
template <class T>
T det_laplace(const Matrix<T>& m) {
    if (!m.square()) throw std::invalid_argument("det: non-square matrix");
    size_t n = m.rows();
    if (n == 0) return T(1);
    if (n > 24) throw std::invalid_argument("det_laplace: dimension too large");
    std::unordered_map<unsigned, T> memo;
    // minor formed by the last popcount(cols) rows and the given column set
    std::function<T(unsigned)> rec = [&](unsigned cols) -> T {
        unsigned k = static_cast<unsigned>(__builtin_popcount(cols));
        if (k == 0) return T(1);
        auto it = memo.find(cols);
        if (it != memo.end()) return it->second;
        size_t row = n - k;
        T acc(0);
        int sign = 1;
        for (size_t j = 0; j < n; ++j) {
            if (!(cols & (1u << j))) continue;
            if (!Matrix<T>::is_zero_value(m(row, j))) {
                T term = m(row, j) * rec(cols & ~(1u << j));
                if (sign > 0)
                    acc += term;
                else
                    acc -= term;
            }
            sign = -sign;
        }
        memo.emplace(cols, acc);
        return acc;
    };
    return rec((n == 32 ? 0u : (1u << n)) - 1u);
}

// Gaussian elimination over a field (Rat, Cyclo).
template <class T>
T det_field(Matrix<T> m) {
    if (!m.square()) throw std::invalid_argument("det: non-square matrix");
    size_t n = m.rows();
    T det(1);
    for (size_t c = 0; c < n; ++c) {
        size_t piv = c;
        while (piv < n && m(piv, c).is_zero()) ++piv;
        if (piv == n) return T(0);
        if (piv != c) {
            for (size_t j = 0; j < n; ++j) std::swap(m(piv, j), m(c, j));
            det = T(0) - det;
        }
        det *= m(c, c);
        T inv = m(c, c).inv();
        for (size_t r = c + 1; r < n; ++r) {
            if (m(r, c).is_zero()) continue;
            T f = m(r, c) * inv;
            for (size_t j = c; j < n; ++j) m(r, j) -= f * m(c, j);
        }
    }
    return det;
}

template <class T>
Matrix<T> inverse_field(const Matrix<T>& m) {
    if (!m.square()) throw std::invalid_argument("inverse: non-square matrix");
    size_t n = m.rows();
    Matrix<T> a = m, b = Matrix<T>::identity(n);
    for (size_t c = 0; c < n; ++c) {
        size_t piv = c;
        while (piv < n && a(piv, c).is_zero()) ++piv;
        if (piv == n) throw std::domain_error("inverse: singular matrix");
        if (piv != c)
            for (size_t j = 0; j < n; ++j) {
                std::swap(a(piv, j), a(c, j));
                std::swap(b(piv, j), b(c, j));
            }
        T inv = a(c, c).inv();
        for (size_t j = 0; j < n; ++j) {
            a(c, j) *= inv;
            b(c, j) *= inv;
        }
        for (size_t r = 0; r < n; ++r) {
            if (r == c || a(r, c).is_zero()) continue;
            T f = a(r, c);
            for (size_t j = 0; j < n; ++j) {
                a(r, j) -= f * a(c, j);
                b(r, j) -= f * b(c, j);
            }
        }
    }
    return b;
}

inline Rat det(const RatMatrix& m) { return det_field(m); }
inline Cyclo det(const CycloMatrix& m) { return det_field(m); }
inline LaurentPoly det(const LaurentMatrix& m) { return det_laplace(m); }

inline RatMatrix inverse(const RatMatrix& m) { return inverse_field(m); }
inline CycloMatrix inverse(const CycloMatrix& m) { return inverse_field(m); }

// Error raised when a Laurent matrix has a non-unit determinant; carries the witness.
class NonUnitDeterminant : public std::domain_error {
public:
    explicit NonUnitDeterminant(LaurentPoly d)
        : std::domain_error("LaurentMatrix inverse: determinant " + d.str() + " is not a unit"),
          det_(std::move(d)) {}
    const LaurentPoly& determinant() const { return det_; }

private:
    LaurentPoly det_;
};

LaurentMatrix inverse(const LaurentMatrix& m);

// Numeric views of symbolic matrices; throw if an entry is not a constant of the right kind.
RatMatrix to_rat(const LaurentMatrix& m);
RatMatrix to_rat(const CycloMatrix& m);
CycloMatrix to_cyclo(const RatMatrix& m);
LaurentMatrix to_laurent(const RatMatrix& m);
CycloMatrix eval(const LaurentMatrix& m, const std::map<std::string, Cyclo>& values);

std::string to_string(const RatMatrix& m);
std::string to_string(const LaurentMatrix& m);

}  // namespace hforge
