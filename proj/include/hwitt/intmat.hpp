#pragma once

// Dense exact integer matrices over Z (GMP-backed) with Smith normal form,
// integer kernels, and linear-system solving.  All decompositions keep the
// transform matrices, so results can be pulled back to the original bases.

#include <cassert>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace hwitt {

using Int = mpz_class;

class IntMat {
public:
    IntMat() : rows_(0), cols_(0) {}
    IntMat(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), a_(rows * cols) {}

    static IntMat identity(std::size_t n) {
        IntMat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }
    static IntMat diagonal(const std::vector<Int>& d) {
        IntMat m(d.size(), d.size());
        for (std::size_t i = 0; i < d.size(); ++i) m.at(i, i) = d[i];
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Int& at(std::size_t i, std::size_t j) {
        assert(i < rows_ && j < cols_);
        return a_[i * cols_ + j];
    }
    const Int& at(std::size_t i, std::size_t j) const {
        assert(i < rows_ && j < cols_);
        return a_[i * cols_ + j];
    }

    bool operator==(const IntMat& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }

    bool is_zero() const {
        for (const auto& x : a_)
            if (x != 0) return false;
        return true;
    }

    IntMat transpose() const {
        IntMat t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
        return t;
    }

    IntMat operator*(const IntMat& o) const {
        assert(cols_ == o.rows_);
        IntMat r(rows_, o.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const Int& x = at(i, k);
                if (x == 0) continue;
                for (std::size_t j = 0; j < o.cols_; ++j) {
                    if (o.at(k, j) != 0) r.at(i, j) += x * o.at(k, j);
                }
            }
        return r;
    }

    IntMat operator+(const IntMat& o) const {
        assert(rows_ == o.rows_ && cols_ == o.cols_);
        IntMat r(rows_, cols_);
        for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] + o.a_[i];
        return r;
    }
    IntMat operator-(const IntMat& o) const {
        assert(rows_ == o.rows_ && cols_ == o.cols_);
        IntMat r(rows_, cols_);
        for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] - o.a_[i];
        return r;
    }
    IntMat operator-() const {
        IntMat r(rows_, cols_);
        for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = -a_[i];
        return r;
    }
    IntMat scaled(const Int& c) const {
        IntMat r(rows_, cols_);
        for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = c * a_[i];
        return r;
    }

    std::vector<Int> apply(const std::vector<Int>& x) const {
        assert(x.size() == cols_);
        std::vector<Int> y(rows_, 0);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                if (at(i, j) != 0 && x[j] != 0) y[i] += at(i, j) * x[j];
        return y;
    }

    std::vector<Int> col(std::size_t j) const {
        std::vector<Int> c(rows_);
        for (std::size_t i = 0; i < rows_; ++i) c[i] = at(i, j);
        return c;
    }
    void set_col(std::size_t j, const std::vector<Int>& c) {
        assert(c.size() == rows_);
        for (std::size_t i = 0; i < rows_; ++i) at(i, j) = c[i];
    }

    // [this | o] side by side.
    IntMat hstack(const IntMat& o) const {
        assert(rows_ == o.rows_);
        IntMat r(rows_, cols_ + o.cols_);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < cols_; ++j) r.at(i, j) = at(i, j);
            for (std::size_t j = 0; j < o.cols_; ++j) r.at(i, cols_ + j) = o.at(i, j);
        }
        return r;
    }

    std::string str() const {
        std::string s = "[";
        for (std::size_t i = 0; i < rows_; ++i) {
            s += (i ? "; " : "");
            for (std::size_t j = 0; j < cols_; ++j)
                s += (j ? "," : "") + at(i, j).get_str();
        }
        return s + "]";
    }

private:
    std::size_t rows_, cols_;
    std::vector<Int> a_;
};

// u * m * v == d with u, v unimodular; d diagonal with divisors[i] | divisors[i+1].
// uinv, vinv are the inverses of u, v (kept so bases can be transported back).
struct SmithForm {
    IntMat d, u, v, uinv, vinv;
    std::vector<Int> divisors;  // nonzero diagonal entries, ascending divisibility
    std::size_t rank = 0;
};

namespace detail {

struct SmithWork {
    IntMat m, u, v, uinv, vinv;

    explicit SmithWork(IntMat mm)
        : m(std::move(mm)),
          u(IntMat::identity(m.rows())),
          v(IntMat::identity(m.cols())),
          uinv(IntMat::identity(m.rows())),
          vinv(IntMat::identity(m.cols())) {}

    // row i -= c * row j on m and u; inverse op on uinv columns.
    void row_sub(std::size_t i, std::size_t j, const Int& c) {
        if (c == 0) return;
        for (std::size_t k = 0; k < m.cols(); ++k) m.at(i, k) -= c * m.at(j, k);
        for (std::size_t k = 0; k < u.cols(); ++k) u.at(i, k) -= c * u.at(j, k);
        for (std::size_t k = 0; k < uinv.rows(); ++k) uinv.at(k, j) += c * uinv.at(k, i);
    }
    void col_sub(std::size_t i, std::size_t j, const Int& c) {
        if (c == 0) return;
        for (std::size_t k = 0; k < m.rows(); ++k) m.at(k, i) -= c * m.at(k, j);
        for (std::size_t k = 0; k < v.rows(); ++k) v.at(k, i) -= c * v.at(k, j);
        for (std::size_t k = 0; k < vinv.cols(); ++k) vinv.at(j, k) += c * vinv.at(i, k);
    }
    void row_swap(std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t k = 0; k < m.cols(); ++k) std::swap(m.at(i, k), m.at(j, k));
        for (std::size_t k = 0; k < u.cols(); ++k) std::swap(u.at(i, k), u.at(j, k));
        for (std::size_t k = 0; k < uinv.rows(); ++k) std::swap(uinv.at(k, i), uinv.at(k, j));
    }
    void col_swap(std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t k = 0; k < m.rows(); ++k) std::swap(m.at(k, i), m.at(k, j));
        for (std::size_t k = 0; k < v.rows(); ++k) std::swap(v.at(k, i), v.at(k, j));
        for (std::size_t k = 0; k < vinv.cols(); ++k) std::swap(vinv.at(i, k), vinv.at(j, k));
    }
    void row_negate(std::size_t i) {
        for (std::size_t k = 0; k < m.cols(); ++k) m.at(i, k) = -m.at(i, k);
        for (std::size_t k = 0; k < u.cols(); ++k) u.at(i, k) = -u.at(i, k);
        for (std::size_t k = 0; k < uinv.rows(); ++k) uinv.at(k, i) = -uinv.at(k, i);
    }
};

}  // namespace detail

// Smith normal form by minimum-magnitude pivoting.  Pivot selection takes the
// smallest nonzero |entry| of the active submatrix, which keeps coefficient
// growth tolerable on the matrix sizes that arise here.
inline SmithForm smith_normal_form(const IntMat& input) {
    detail::SmithWork w(input);
    const std::size_t rows = input.rows(), cols = input.cols();
    const std::size_t nmin = std::min(rows, cols);

    for (std::size_t s = 0; s < nmin; ++s) {
        for (;;) {
            // Locate the minimal-magnitude nonzero entry in m[s.., s..].
            bool found = false;
            std::size_t pi = s, pj = s;
            Int best;
            for (std::size_t i = s; i < rows; ++i)
                for (std::size_t j = s; j < cols; ++j) {
                    const Int& x = w.m.at(i, j);
                    if (x == 0) continue;
                    Int ax = abs(x);
                    if (!found || ax < best) {
                        found = true;
                        best = ax;
                        pi = i;
                        pj = j;
                    }
                }
            if (!found) { s = nmin; break; }  // rest of the matrix is zero

            w.row_swap(s, pi);
            w.col_swap(s, pj);
            if (w.m.at(s, s) < 0) w.row_negate(s);

            // Clear row s and column s by division with remainder.
            bool clean = true;
            const Int& piv = w.m.at(s, s);
            for (std::size_t i = s + 1; i < rows; ++i) {
                if (w.m.at(i, s) == 0) continue;
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), w.m.at(i, s).get_mpz_t(), piv.get_mpz_t());
                w.row_sub(i, s, q);
                if (w.m.at(i, s) != 0) clean = false;
            }
            for (std::size_t j = s + 1; j < cols; ++j) {
                if (w.m.at(s, j) == 0) continue;
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), w.m.at(s, j).get_mpz_t(), piv.get_mpz_t());
                w.col_sub(j, s, q);
                if (w.m.at(s, j) != 0) clean = false;
            }
            if (!clean) continue;  // smaller remainders became new pivot candidates

            // Pivot must divide the remaining submatrix; if not, fold the
            // offending column in and re-run elimination at this position.
            bool divides = true;
            for (std::size_t i = s + 1; i < rows && divides; ++i)
                for (std::size_t j = s + 1; j < cols && divides; ++j)
                    if (w.m.at(i, j) % piv != 0) {
                        w.col_sub(s, j, Int(-1));  // col s += col j
                        divides = false;
                    }
            if (divides) break;
        }
        if (s >= nmin) break;
    }

    SmithForm f;
    f.u = std::move(w.u);
    f.v = std::move(w.v);
    f.uinv = std::move(w.uinv);
    f.vinv = std::move(w.vinv);
    f.d = std::move(w.m);
    for (std::size_t i = 0; i < nmin; ++i) {
        if (f.d.at(i, i) == 0) break;
        f.divisors.push_back(f.d.at(i, i));
        ++f.rank;
    }
    return f;
}

// Basis of {x : m x = 0} as columns, read off the trailing columns of v.
inline IntMat kernel_basis(const SmithForm& f) {
    const std::size_t cols = f.v.rows();
    const std::size_t k = cols - f.rank;
    IntMat basis(cols, k);
    for (std::size_t j = 0; j < k; ++j)
        for (std::size_t i = 0; i < cols; ++i)
            basis.at(i, j) = f.v.at(i, f.rank + j);
    return basis;
}

// One solution of m x = b over Z, or nullopt.
inline std::optional<std::vector<Int>> solve(const SmithForm& f,
                                             const std::vector<Int>& b) {
    const std::size_t rows = f.d.rows(), cols = f.d.cols();
    assert(b.size() == rows);
    std::vector<Int> y = f.u.apply(b);
    std::vector<Int> z(cols, 0);
    for (std::size_t i = 0; i < rows; ++i) {
        if (i < f.rank) {
            if (y[i] % f.divisors[i] != 0) return std::nullopt;
            z[i] = y[i] / f.divisors[i];
        } else if (y[i] != 0) {
            return std::nullopt;
        }
    }
    return f.v.apply(z);
}

inline std::optional<std::vector<Int>> solve(const IntMat& m,
                                             const std::vector<Int>& b) {
    return solve(smith_normal_form(m), b);
}

}  // namespace hwitt
