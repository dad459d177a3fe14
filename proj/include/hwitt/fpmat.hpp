#pragma once

// Dense linear algebra over a prime field F_p (small p).  Serves as the fast
// path for homology of complexes whose groups are elementary abelian of a
// common exponent p; everything here is plain machine-word arithmetic.

#include <cassert>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "intmat.hpp"

namespace hwitt {

inline std::uint32_t fp_inv(std::uint32_t a, std::uint32_t p) {
    // extended Euclid on signed words; p is prime and tiny here
    std::int64_t t = 0, newt = 1, r = p, newr = a % p;
    while (newr != 0) {
        std::int64_t q = r / newr;
        t = std::exchange(newt, t - q * newt);
        r = std::exchange(newr, r - q * newr);
    }
    assert(r == 1);
    return static_cast<std::uint32_t>(t < 0 ? t + p : t);
}

class FpMat {
public:
    FpMat() : rows_(0), cols_(0), p_(2) {}
    FpMat(std::size_t rows, std::size_t cols, std::uint32_t p)
        : rows_(rows), cols_(cols), p_(p), a_(rows * cols, 0) {}

    static FpMat identity(std::size_t n, std::uint32_t p) {
        FpMat m(n, n, p);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }
    static FpMat from_int(const IntMat& m, std::uint32_t p) {
        FpMat r(m.rows(), m.cols(), p);
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j) {
                Int v = m.at(i, j) % p;
                if (v < 0) v += p;
                r.at(i, j) = static_cast<std::uint32_t>(v.get_ui());
            }
        return r;
    }
    IntMat to_int() const {
        IntMat r(rows_, cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r.at(i, j) = at(i, j);
        return r;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::uint32_t p() const { return p_; }

    std::uint32_t& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    std::uint32_t at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    std::vector<std::uint32_t> apply(const std::vector<std::uint32_t>& x) const {
        assert(x.size() == cols_);
        std::vector<std::uint32_t> y(rows_, 0);
        for (std::size_t i = 0; i < rows_; ++i) {
            std::uint64_t acc = 0;
            for (std::size_t j = 0; j < cols_; ++j) acc += std::uint64_t(at(i, j)) * x[j];
            y[i] = static_cast<std::uint32_t>(acc % p_);
        }
        return y;
    }

private:
    std::size_t rows_, cols_;
    std::uint32_t p_;
    std::vector<std::uint32_t> a_;
};

// One elimination pass over a matrix, kept for repeated solves: T*a = R with
// R in reduced row-echelon form.
class FpSolver {
public:
    explicit FpSolver(const FpMat& a)
        : p_(a.p()), r_(a), t_(FpMat::identity(a.rows(), a.p())) {
        const std::size_t rows = a.rows(), cols = a.cols();
        std::size_t lead = 0;
        for (std::size_t col = 0; col < cols && lead < rows; ++col) {
            std::size_t piv = lead;
            while (piv < rows && r_.at(piv, col) == 0) ++piv;
            if (piv == rows) continue;
            swap_rows(piv, lead);
            scale_row(lead, fp_inv(r_.at(lead, col), p_));
            for (std::size_t i = 0; i < rows; ++i)
                if (i != lead && r_.at(i, col) != 0)
                    add_row(i, lead, p_ - r_.at(i, col));
            pivots_.emplace_back(lead, col);
            ++lead;
        }
    }

    std::size_t rank() const { return pivots_.size(); }
    const std::vector<std::pair<std::size_t, std::size_t>>& pivots() const {
        return pivots_;
    }

    // One solution of a x = b, or nullopt.
    std::optional<std::vector<std::uint32_t>> solve(
        const std::vector<std::uint32_t>& b) const {
        std::vector<std::uint32_t> y = t_.apply(b);
        for (std::size_t i = pivots_.size(); i < y.size(); ++i)
            if (y[i] != 0) return std::nullopt;
        std::vector<std::uint32_t> x(r_.cols(), 0);
        for (const auto& [row, col] : pivots_) x[col] = y[row];
        return x;
    }

    // Basis of the kernel as matrix columns.
    FpMat nullspace() const {
        const std::size_t cols = r_.cols();
        std::vector<bool> is_pivot(cols, false);
        for (const auto& [row, col] : pivots_) is_pivot[col] = true;
        std::size_t nfree = cols - pivots_.size();
        FpMat basis(cols, nfree, p_);
        std::size_t k = 0;
        for (std::size_t j = 0; j < cols; ++j) {
            if (is_pivot[j]) continue;
            basis.at(j, k) = 1;
            for (const auto& [row, col] : pivots_)
                if (r_.at(row, j) != 0) basis.at(col, k) = p_ - r_.at(row, j);
            ++k;
        }
        return basis;
    }

    const FpMat& rref() const { return r_; }

private:
    void swap_rows(std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t k = 0; k < r_.cols(); ++k) std::swap(r_.at(i, k), r_.at(j, k));
        for (std::size_t k = 0; k < t_.cols(); ++k) std::swap(t_.at(i, k), t_.at(j, k));
    }
    void scale_row(std::size_t i, std::uint32_t c) {
        for (std::size_t k = 0; k < r_.cols(); ++k)
            r_.at(i, k) = static_cast<std::uint32_t>(std::uint64_t(r_.at(i, k)) * c % p_);
        for (std::size_t k = 0; k < t_.cols(); ++k)
            t_.at(i, k) = static_cast<std::uint32_t>(std::uint64_t(t_.at(i, k)) * c % p_);
    }
    void add_row(std::size_t i, std::size_t j, std::uint32_t c) {
        // row i += c * row j
        for (std::size_t k = 0; k < r_.cols(); ++k)
            r_.at(i, k) = static_cast<std::uint32_t>(
                (r_.at(i, k) + std::uint64_t(r_.at(j, k)) * c) % p_);
        for (std::size_t k = 0; k < t_.cols(); ++k)
            t_.at(i, k) = static_cast<std::uint32_t>(
                (t_.at(i, k) + std::uint64_t(t_.at(j, k)) * c) % p_);
    }

    std::uint32_t p_;
    FpMat r_, t_;
    std::vector<std::pair<std::size_t, std::size_t>> pivots_;
};

// F_p^n modulo the column space of x: normal forms are supported on the
// coordinates that carry no pivot of the column space.
struct FpQuotient {
    std::uint32_t p = 2;
    std::size_t n = 0;
    std::vector<std::size_t> keep;        // non-pivot coordinates, ascending
    std::vector<std::size_t> pivot_rows;  // pivot coordinates, ascending in echelon order
    FpMat basis;                          // reduced colspace basis; column k has 1 at pivot_rows[k]

    std::vector<std::uint32_t> reduce(std::vector<std::uint32_t> v) const {
        assert(v.size() == n);
        for (std::size_t k = 0; k < pivot_rows.size(); ++k) {
            std::uint32_t c = v[pivot_rows[k]];
            if (c == 0) continue;
            for (std::size_t i = 0; i < n; ++i)
                v[i] = static_cast<std::uint32_t>(
                    (v[i] + std::uint64_t(p - c) * basis.at(i, k)) % p);
        }
        std::vector<std::uint32_t> out(keep.size());
        for (std::size_t k = 0; k < keep.size(); ++k) out[k] = v[keep[k]];
        return out;
    }

    std::vector<std::uint32_t> lift(const std::vector<std::uint32_t>& cls) const {
        assert(cls.size() == keep.size());
        std::vector<std::uint32_t> v(n, 0);
        for (std::size_t k = 0; k < keep.size(); ++k) v[keep[k]] = cls[k];
        return v;
    }
};

inline FpQuotient fp_quotient(const FpMat& x) {
    // Echelonize the transpose: rref rows become a reduced basis of col(x).
    FpMat xt(x.cols(), x.rows(), x.p());
    for (std::size_t i = 0; i < x.rows(); ++i)
        for (std::size_t j = 0; j < x.cols(); ++j) xt.at(j, i) = x.at(i, j);
    FpSolver s(xt);

    FpQuotient q;
    q.p = x.p();
    q.n = x.rows();
    q.basis = FpMat(q.n, s.rank(), q.p);
    std::vector<bool> is_pivot(q.n, false);
    for (std::size_t k = 0; k < s.rank(); ++k) {
        auto [row, col] = s.pivots()[k];
        q.pivot_rows.push_back(col);
        is_pivot[col] = true;
        for (std::size_t i = 0; i < q.n; ++i) q.basis.at(i, k) = s.rref().at(row, i);
    }
    for (std::size_t i = 0; i < q.n; ++i)
        if (!is_pivot[i]) q.keep.push_back(i);
    return q;
}

}  // namespace hwitt
