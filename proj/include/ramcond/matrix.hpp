#pragma once

#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "ramcond/rational.hpp"

namespace ramcond {

// Dense row-major matrix over an exact ring T (Rational, Integer, CycloNum).
template <typename T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}

    Matrix(std::initializer_list<std::initializer_list<T>> init)
    {
        rows_ = init.size();
        cols_ = rows_ ? init.begin()->size() : 0;
        data_.reserve(rows_ * cols_);
        for (const auto& row : init) {
            if (row.size() != cols_) throw DomainError("Matrix: ragged initializer");
            data_.insert(data_.end(), row.begin(), row.end());
        }
    }

    static Matrix identity(std::size_t n)
    {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    template <typename U, typename F>
    Matrix<U> map(F f) const
    {
        Matrix<U> out(rows_, cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) out(i, j) = f((*this)(i, j));
        return out;
    }

    Matrix transpose() const
    {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    std::vector<T> column(std::size_t j) const
    {
        std::vector<T> c(rows_);
        for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
        return c;
    }

    static Matrix from_columns(std::size_t rows, const std::vector<std::vector<T>>& cols)
    {
        Matrix m(rows, cols.size());
        for (std::size_t j = 0; j < cols.size(); ++j)
            for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
        return m;
    }

    T trace() const
    {
        if (!is_square()) throw DomainError("Matrix::trace: not square");
        T t(0);
        for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
        return t;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b)
    {
        if (a.cols_ != b.rows_) throw DomainError("Matrix: dimension mismatch in product");
        Matrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const T& x = a(i, k);
                if (x == T(0)) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += x * b(k, j);
            }
        return c;
    }

    friend Matrix operator+(const Matrix& a, const Matrix& b)
    {
        a.require_same_shape(b);
        Matrix c = a;
        for (std::size_t k = 0; k < c.data_.size(); ++k) c.data_[k] += b.data_[k];
        return c;
    }

    friend Matrix operator-(const Matrix& a, const Matrix& b)
    {
        a.require_same_shape(b);
        Matrix c = a;
        for (std::size_t k = 0; k < c.data_.size(); ++k) c.data_[k] -= b.data_[k];
        return c;
    }

    friend Matrix operator*(const T& s, const Matrix& a)
    {
        Matrix c = a;
        for (auto& x : c.data_) x = s * x;
        return c;
    }

    friend bool operator==(const Matrix& a, const Matrix& b)
    {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    friend std::ostream& operator<<(std::ostream& os, const Matrix& m)
    {
        os << '[';
        for (std::size_t i = 0; i < m.rows_; ++i) {
            os << (i ? ", [" : "[");
            for (std::size_t j = 0; j < m.cols_; ++j) os << (j ? ", " : "") << m(i, j);
            os << ']';
        }
        return os << ']';
    }

private:
    void require_same_shape(const Matrix& o) const
    {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw DomainError("Matrix: shape mismatch");
    }

    std::size_t rows_ = 0, cols_ = 0;
    std::vector<T> data_;
};

using QMatrix = Matrix<Rational>;
using ZMatrix = Matrix<Integer>;

template <typename T>
Matrix<T> block_diagonal(const Matrix<T>& a, const Matrix<T>& b)
{
    Matrix<T> m(a.rows() + b.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) m(a.rows() + i, a.cols() + j) = b(i, j);
    return m;
}

template <typename T>
Matrix<T> hconcat(const Matrix<T>& a, const Matrix<T>& b)
{
    if (a.rows() != b.rows()) throw DomainError("hconcat: row mismatch");
    Matrix<T> m(a.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
        for (std::size_t j = 0; j < b.cols(); ++j) m(i, a.cols() + j) = b(i, j);
    }
    return m;
}

inline QMatrix to_rational(const ZMatrix& m)
{
    return m.map<Rational>([](const Integer& x) { return Rational(x); });
}

namespace linalg {

struct Echelon {
    QMatrix reduced;                 // reduced row echelon form
    std::vector<std::size_t> pivots; // pivot column per nonzero row
};

inline Echelon rref(QMatrix m)
{
    Echelon e;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t piv = r;
        while (piv < m.rows() && m(piv, c).is_zero()) ++piv;
        if (piv == m.rows()) continue;
        if (piv != r)
            for (std::size_t k = 0; k < m.cols(); ++k) std::swap(m(piv, k), m(r, k));
        const Rational inv = m(r, c).inverse();
        for (std::size_t k = c; k < m.cols(); ++k) m(r, k) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r || m(i, c).is_zero()) continue;
            const Rational f = m(i, c);
            for (std::size_t k = c; k < m.cols(); ++k) m(i, k) -= f * m(r, k);
        }
        e.pivots.push_back(c);
        ++r;
    }
    e.reduced = std::move(m);
    return e;
}

inline std::size_t rank(const QMatrix& m) { return rref(m).pivots.size(); }

inline Rational determinant(QMatrix m)
{
    if (!m.is_square()) throw DomainError("determinant: not square");
    Rational det(1);
    const std::size_t n = m.rows();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && m(piv, c).is_zero()) ++piv;
        if (piv == n) return Rational(0);
        if (piv != c) {
            for (std::size_t k = 0; k < n; ++k) std::swap(m(piv, k), m(c, k));
            det = -det;
        }
        det *= m(c, c);
        const Rational inv = m(c, c).inverse();
        for (std::size_t i = c + 1; i < n; ++i) {
            if (m(i, c).is_zero()) continue;
            const Rational f = m(i, c) * inv;
            for (std::size_t k = c; k < n; ++k) m(i, k) -= f * m(c, k);
        }
    }
    return det;
}

inline QMatrix inverse(const QMatrix& m)
{
    if (!m.is_square()) throw DomainError("inverse: not square");
    const std::size_t n = m.rows();
    auto e = rref(hconcat(m, QMatrix::identity(n)));
    if (e.pivots.size() < n || e.pivots[n - 1] >= n) throw DomainError("inverse: singular matrix");
    QMatrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv(i, j) = e.reduced(i, n + j);
    return inv;
}

// Solves A·X = B for X when the columns of A are independent and B lies in
// their span; throws otherwise.
inline QMatrix solve_left_factor(const QMatrix& a, const QMatrix& b)
{
    auto e = rref(hconcat(a, b));
    const std::size_t k = a.cols();
    std::size_t nonpivot_a = 0;
    for (auto c : e.pivots) {
        if (c >= k) throw DomainError("solve: right-hand side not in the column span");
        ++nonpivot_a;
    }
    if (nonpivot_a != k) throw DomainError("solve: columns are dependent");
    QMatrix x(k, b.cols());
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) x(i, j) = e.reduced(i, k + j);
    return x;
}

// Basis (as columns) of the null space {x : A x = 0}.
inline QMatrix kernel(const QMatrix& a)
{
    auto e = rref(a);
    std::vector<bool> is_pivot(a.cols(), false);
    for (auto c : e.pivots) is_pivot[c] = true;
    std::vector<std::vector<Rational>> basis;
    for (std::size_t free = 0; free < a.cols(); ++free) {
        if (is_pivot[free]) continue;
        std::vector<Rational> v(a.cols());
        v[free] = 1;
        for (std::size_t r = 0; r < e.pivots.size(); ++r) v[e.pivots[r]] = -e.reduced(r, free);
        basis.push_back(std::move(v));
    }
    return QMatrix::from_columns(a.cols(), basis);
}

inline Valuation matrix_p_valuation(const QMatrix& m, long p)
{
    Valuation v = Valuation::infinity();
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) v = min(v, p_valuation(m(i, j), p));
    return v;
}

inline bool is_p_integral(const QMatrix& m, long p) { return matrix_p_valuation(m, p) >= Valuation(0); }

inline bool is_integral(const QMatrix& m)
{
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (!m(i, j).is_integer()) return false;
    return true;
}

// Z_(p)-basis (columns, in echelon form) of the Z_(p)-module spanned by the
// p-integral columns of `gens`. Z_(p) is a discrete valuation ring, so each
// pivot is chosen with minimal p-valuation in its row and the elimination
// multipliers stay p-integral.
inline QMatrix p_local_basis(const QMatrix& gens, long p)
{
    std::vector<std::vector<Rational>> pool;
    for (std::size_t j = 0; j < gens.cols(); ++j) pool.push_back(gens.column(j));
    std::vector<std::vector<Rational>> basis;
    for (std::size_t row = 0; row < gens.rows() && !pool.empty(); ++row) {
        std::size_t best = pool.size();
        Valuation best_v = Valuation::infinity();
        for (std::size_t k = 0; k < pool.size(); ++k) {
            Valuation v = p_valuation(pool[k][row], p);
            if (v < best_v) {
                best_v = v;
                best = k;
            }
        }
        if (best == pool.size()) continue;
        std::vector<Rational> b = pool[best];
        pool.erase(pool.begin() + static_cast<long>(best));
        for (auto& g : pool) {
            if (g[row].is_zero()) continue;
            const Rational f = g[row] / b[row];
            for (std::size_t i = 0; i < g.size(); ++i) g[i] -= f * b[i];
        }
        basis.push_back(std::move(b));
        std::erase_if(pool, [](const std::vector<Rational>& g) {
            for (const auto& x : g)
                if (!x.is_zero()) return false;
            return true;
        });
    }
    return QMatrix::from_columns(gens.rows(), basis);
}

// Column Hermite normal form basis of the Z-lattice spanned by the integer
// columns of `gens` (zero columns dropped).
inline ZMatrix hermite_basis(const ZMatrix& gens)
{
    std::vector<std::vector<Integer>> pool;
    for (std::size_t j = 0; j < gens.cols(); ++j) pool.push_back(gens.column(j));
    std::vector<std::vector<Integer>> basis;
    auto axpy = [](std::vector<Integer>& y, const Integer& a, const std::vector<Integer>& x) {
        for (std::size_t i = 0; i < y.size(); ++i) y[i] += a * x[i];
    };
    for (std::size_t row = 0; row < gens.rows(); ++row) {
        // gcd-combine every generator's entry in this row into one pivot column
        std::vector<Integer> piv;
        bool have = false;
        for (auto& g : pool) {
            if (g[row] == 0) continue;
            if (!have) {
                piv = g;
                have = true;
                for (auto& x : g) x = 0;
                continue;
            }
            Integer s, t, d;
            mpz_gcdext(d.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), piv[row].get_mpz_t(), g[row].get_mpz_t());
            const Integer u = piv[row] / d, v = g[row] / d;
            std::vector<Integer> np(piv.size()), ng(piv.size());
            for (std::size_t i = 0; i < piv.size(); ++i) {
                np[i] = s * piv[i] + t * g[i];
                ng[i] = -v * piv[i] + u * g[i];
            }
            piv = std::move(np);
            g = std::move(ng);
        }
        if (!have) continue;
        if (piv[row] < 0)
            for (auto& x : piv) x = -x;
        // reduce earlier basis vectors modulo the new pivot
        for (auto& b : basis) {
            Integer q;
            mpz_fdiv_q(q.get_mpz_t(), b[row].get_mpz_t(), piv[row].get_mpz_t());
            if (q != 0) axpy(b, -q, piv);
        }
        basis.push_back(std::move(piv));
        std::erase_if(pool, [](const std::vector<Integer>& g) {
            for (const auto& x : g)
                if (x != 0) return false;
            return true;
        });
    }
    return ZMatrix::from_columns(gens.rows(), basis);
}

} // namespace linalg
} // namespace ramcond
