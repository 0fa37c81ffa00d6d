#pragma once

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "cyv/rational.hpp"

namespace cyv {

// Field context over exact rationals, so Matrix<RationalField> and
// Matrix<PrimeField> share one elimination code path.
struct RationalField {
    using Elem = Rational;
    Elem zero() const { return Rational(0); }
    Elem one() const { return Rational(1); }
    Elem from_int(long v) const { return Rational(v); }
    Elem add(const Elem& a, const Elem& b) const { return a + b; }
    Elem sub(const Elem& a, const Elem& b) const { return a - b; }
    Elem mul(const Elem& a, const Elem& b) const { return a * b; }
    Elem neg(const Elem& a) const { return -a; }
    Elem inv(const Elem& a) const {
        if (a == 0) throw std::domain_error("RationalField::inv(0)");
        return 1 / a;
    }
    Elem div(const Elem& a, const Elem& b) const { return a / inv_guard(b); }
    bool is_zero(const Elem& a) const { return a == 0; }
    bool eq(const Elem& a, const Elem& b) const { return a == b; }

  private:
    static const Elem& inv_guard(const Elem& b) {
        if (b == 0) throw std::domain_error("RationalField: division by zero");
        return b;
    }
};

// Dense matrix over a field context F. Row-major; deterministic elimination
// (first nonzero pivot in column order) so ranks and echelon forms are
// reproducible across runs and field implementations.
template <class F>
class Matrix {
  public:
    using Elem = typename F::Elem;

    Matrix(const F& f, std::size_t rows, std::size_t cols)
        : f_(&f), rows_(rows), cols_(cols), a_(rows * cols, f.zero()) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const F& field() const { return *f_; }

    Elem& at(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
    const Elem& at(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

    void append_row(const std::vector<Elem>& row) {
        if (row.size() != cols_) throw std::invalid_argument("Matrix::append_row size");
        a_.insert(a_.end(), row.begin(), row.end());
        ++rows_;
    }

    // In-place reduced row echelon form. Returns pivot column list.
    std::vector<std::size_t> rref() {
        std::vector<std::size_t> pivots;
        std::size_t r = 0;
        for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
            std::size_t pr = r;
            while (pr < rows_ && f_->is_zero(at(pr, c))) ++pr;
            if (pr == rows_) continue;
            if (pr != r)
                for (std::size_t j = 0; j < cols_; ++j) std::swap(at(r, j), at(pr, j));
            Elem s = f_->inv(at(r, c));
            for (std::size_t j = c; j < cols_; ++j) at(r, j) = f_->mul(at(r, j), s);
            for (std::size_t i = 0; i < rows_; ++i) {
                if (i == r || f_->is_zero(at(i, c))) continue;
                Elem m = at(i, c);
                for (std::size_t j = c; j < cols_; ++j)
                    at(i, j) = f_->sub(at(i, j), f_->mul(m, at(r, j)));
            }
            pivots.push_back(c);
            ++r;
        }
        return pivots;
    }

    std::size_t rank() const {
        Matrix copy = *this;
        return copy.rref().size();
    }

    // Basis of {x : M x = 0}, rows of the result.
    Matrix kernel() const {
        Matrix R = *this;
        std::vector<std::size_t> piv = R.rref();
        std::vector<bool> is_piv(cols_, false);
        for (std::size_t c : piv) is_piv[c] = true;
        std::vector<std::size_t> free_cols;
        for (std::size_t c = 0; c < cols_; ++c)
            if (!is_piv[c]) free_cols.push_back(c);
        Matrix K(*f_, free_cols.size(), cols_);
        for (std::size_t i = 0; i < free_cols.size(); ++i) {
            K.at(i, free_cols[i]) = f_->one();
            for (std::size_t r = 0; r < piv.size(); ++r)
                K.at(i, piv[r]) = f_->neg(R.at(r, free_cols[i]));
        }
        return K;
    }

  private:
    const F* f_;
    std::size_t rows_, cols_;
    std::vector<Elem> a_;
};

// Row space in reduced echelon form; rank == number of stored rows.
template <class F>
class Subspace {
  public:
    using Elem = typename F::Elem;

    explicit Subspace(const F& f, std::size_t ambient) : basis_(f, 0, ambient) {}

    static Subspace span(Matrix<F> rows) {
        Subspace s(rows.field(), rows.cols());
        std::vector<std::size_t> piv = rows.rref();
        Matrix<F> b(rows.field(), piv.size(), rows.cols());
        for (std::size_t i = 0; i < piv.size(); ++i)
            for (std::size_t j = 0; j < rows.cols(); ++j) b.at(i, j) = rows.at(i, j);
        s.basis_ = std::move(b);
        return s;
    }

    static Subspace full(const F& f, std::size_t ambient) {
        Matrix<F> id(f, ambient, ambient);
        for (std::size_t i = 0; i < ambient; ++i) id.at(i, i) = f.one();
        return span(std::move(id));
    }

    std::size_t ambient_dim() const { return basis_.cols(); }
    std::size_t dim() const { return basis_.rows(); }
    const Matrix<F>& basis() const { return basis_; }
    const F& field() const { return basis_.field(); }

    bool contains(const std::vector<Elem>& v) const {
        Matrix<F> m(field(), 0, ambient_dim());
        for (std::size_t r = 0; r < basis_.rows(); ++r) {
            std::vector<Elem> row(ambient_dim());
            for (std::size_t j = 0; j < ambient_dim(); ++j) row[j] = basis_.at(r, j);
            m.append_row(row);
        }
        m.append_row(v);
        return m.rank() == dim();
    }

    bool contains(const Subspace& other) const {
        Matrix<F> m = basis_;
        for (std::size_t r = 0; r < other.basis_.rows(); ++r) {
            std::vector<Elem> row(ambient_dim());
            for (std::size_t j = 0; j < ambient_dim(); ++j) row[j] = other.basis_.at(r, j);
            m.append_row(row);
        }
        return m.rank() == dim();
    }

    friend Subspace operator+(const Subspace& a, const Subspace& b) {
        check_compatible(a, b);
        Matrix<F> m = a.basis_;
        for (std::size_t r = 0; r < b.basis_.rows(); ++r) {
            std::vector<Elem> row(a.ambient_dim());
            for (std::size_t j = 0; j < a.ambient_dim(); ++j) row[j] = b.basis_.at(r, j);
            m.append_row(row);
        }
        return span(std::move(m));
    }

    // A cap B via the kernel of the stacked dual conditions: x lies in a row
    // space iff x is orthogonal to that row space's null space.
    friend Subspace intersect(const Subspace& a, const Subspace& b) {
        check_compatible(a, b);
        Matrix<F> da = a.basis_.kernel();
        Matrix<F> db = b.basis_.kernel();
        Matrix<F> stacked(a.field(), 0, a.ambient_dim());
        for (std::size_t r = 0; r < da.rows(); ++r) {
            std::vector<Elem> row(a.ambient_dim());
            for (std::size_t j = 0; j < a.ambient_dim(); ++j) row[j] = da.at(r, j);
            stacked.append_row(row);
        }
        for (std::size_t r = 0; r < db.rows(); ++r) {
            std::vector<Elem> row(a.ambient_dim());
            for (std::size_t j = 0; j < a.ambient_dim(); ++j) row[j] = db.at(r, j);
            stacked.append_row(row);
        }
        if (stacked.rows() == 0) return full(a.field(), a.ambient_dim());
        return span(stacked.kernel());
    }

  private:
    static void check_compatible(const Subspace& a, const Subspace& b) {
        if (a.ambient_dim() != b.ambient_dim())
            throw std::invalid_argument("Subspace: ambient dimension mismatch");
    }
    Matrix<F> basis_;
};

}  // namespace cyv
