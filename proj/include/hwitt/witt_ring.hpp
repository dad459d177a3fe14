#pragma once
// Classical p-typical Witt vectors W_n(A).
//
// The ghost map sends (a_0, ..., a_{n-1}) to the tuple
//   w_i = sum_{j <= i} p^j a_j^{p^{i-j}},  0 <= i < n,
// and the ring structure on W_n is the unique one making every w_i a ring
// homomorphism naturally in A.  Over Z the addition and multiplication laws
// are given by universal integer polynomials; this header solves for them
// from the ghost equations (every division by p^i is asserted exact) and
// then evaluates them over a finite commutative F_p-algebra.
//
// Operators on truncated vectors:
//   V (verschiebung)   prepends a zero coordinate,
//   R (restriction)    drops the last coordinate,
//   F (frobenius)      has universal polynomials F_i with w_i(F a) = w_{i+1}(a);
//                      over an F_p-algebra these collapse to F_i = a_i^p,
//   T (teichmuller)    x -> (x, 0, ..., 0), multiplicative.

#include <cassert>
#include <cstdint>
#include <map>
#include <vector>

#include <hwitt/fin_algebra.hpp>
#include <hwitt/intmat.hpp>

namespace hwitt {

// Sparse multivariate polynomial over Z.  The variable count is fixed at
// construction; terms_ maps exponent vectors to nonzero coefficients.
class ZPoly {
  public:
    using Expo = std::vector<std::uint32_t>;

    explicit ZPoly(std::uint32_t nvars) : nv_(nvars) {}

    static ZPoly constant(std::uint32_t nvars, Int c) {
        ZPoly q(nvars);
        if (c != 0) q.terms_.emplace(Expo(nvars, 0), std::move(c));
        return q;
    }
    static ZPoly variable(std::uint32_t nvars, std::uint32_t i) {
        assert(i < nvars);
        Expo e(nvars, 0);
        e[i] = 1;
        ZPoly q(nvars);
        q.terms_.emplace(std::move(e), Int(1));
        return q;
    }

    std::uint32_t nvars() const { return nv_; }
    const std::map<Expo, Int>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool operator==(const ZPoly& o) const {
        return nv_ == o.nv_ && terms_ == o.terms_;
    }
    bool operator!=(const ZPoly& o) const { return !(*this == o); }

    ZPoly operator+(const ZPoly& o) const {
        assert(nv_ == o.nv_);
        ZPoly r = *this;
        for (const auto& [e, c] : o.terms_) r.bump(e, c);
        return r;
    }
    ZPoly operator-(const ZPoly& o) const {
        assert(nv_ == o.nv_);
        ZPoly r = *this;
        for (const auto& [e, c] : o.terms_) r.bump(e, -c);
        return r;
    }
    ZPoly operator*(const ZPoly& o) const {
        assert(nv_ == o.nv_);
        ZPoly r(nv_);
        for (const auto& [ea, ca] : terms_) {
            for (const auto& [eb, cb] : o.terms_) {
                Expo e(nv_);
                for (std::uint32_t i = 0; i < nv_; ++i) e[i] = ea[i] + eb[i];
                r.bump(e, ca * cb);
            }
        }
        return r;
    }
    ZPoly scaled(const Int& c) const {
        ZPoly r(nv_);
        if (c == 0) return r;
        for (const auto& [e, k] : terms_) r.terms_.emplace(e, k * c);
        return r;
    }
    ZPoly pow(std::uint32_t k) const {
        ZPoly r = constant(nv_, 1);
        ZPoly base = *this;
        while (k > 0) {
            if (k & 1u) r = r * base;
            k >>= 1;
            if (k > 0) base = base * base;
        }
        return r;
    }
    // Divides every coefficient by d, asserting exactness.
    ZPoly divexact(const Int& d) const {
        assert(d != 0);
        ZPoly r(nv_);
        for (const auto& [e, c] : terms_) {
            Int q, rem;
            mpz_tdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), c.get_mpz_t(),
                        d.get_mpz_t());
            assert(rem == 0 && "inexact coefficient division");
            r.terms_.emplace(e, std::move(q));
        }
        return r;
    }

    Int eval_int(const std::vector<Int>& xs) const {
        assert(xs.size() == nv_);
        Int total = 0;
        for (const auto& [e, c] : terms_) {
            Int t = c;
            for (std::uint32_t i = 0; i < nv_; ++i) {
                if (e[i] == 0) continue;
                Int pw;
                mpz_pow_ui(pw.get_mpz_t(), xs[i].get_mpz_t(), e[i]);
                t *= pw;
            }
            total += t;
        }
        return total;
    }

    // Evaluation over a finite commutative algebra; coefficients reduce
    // mod p and powers of each argument are cached across terms.
    AlgElem eval_alg(const FinAlgebra& A, const std::vector<AlgElem>& xs) const {
        assert(xs.size() == nv_);
        std::vector<std::vector<AlgElem>> pows(nv_);
        for (std::uint32_t i = 0; i < nv_; ++i) pows[i].push_back(A.unit);
        auto power = [&](std::uint32_t i, std::uint32_t k) -> const AlgElem& {
            while (pows[i].size() <= k)
                pows[i].push_back(A.mul(pows[i].back(), xs[i]));
            return pows[i][k];
        };
        AlgElem total = A.zero();
        for (const auto& [e, c] : terms_) {
            std::uint32_t cm = static_cast<std::uint32_t>(
                mpz_fdiv_ui(c.get_mpz_t(), A.p));
            if (cm == 0) continue;
            AlgElem t = A.smul(cm, A.unit);
            for (std::uint32_t i = 0; i < nv_; ++i)
                if (e[i] > 0) t = A.mul(t, power(i, e[i]));
            total = A.add(total, t);
        }
        return total;
    }

  private:
    void bump(const Expo& e, Int c) {
        if (c == 0) return;
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_.emplace(e, std::move(c));
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    std::uint32_t nv_;
    std::map<Expo, Int> terms_;
};

inline Int int_pow(std::uint32_t base, std::uint32_t e) {
    Int r;
    mpz_ui_pow_ui(r.get_mpz_t(), base, e);
    return r;
}

// Ghost component w_i as a polynomial in variables X_off, ..., X_{off+i}.
inline ZPoly ghost_poly(std::uint32_t p, std::uint32_t i, std::uint32_t nvars,
                        std::uint32_t off) {
    assert(off + i < nvars);
    ZPoly w(nvars);
    for (std::uint32_t j = 0; j <= i; ++j) {
        std::uint32_t pe = 1;
        for (std::uint32_t k = 0; k < i - j; ++k) pe *= p;
        w = w + ZPoly::variable(nvars, off + j).pow(pe).scaled(int_pow(p, j));
    }
    return w;
}

// Universal structure polynomials of W_n.  sum/prod live in 2n variables
// (x_0..x_{n-1}, y_0..y_{n-1}); frob has n-1 entries in n variables and
// describes F : W_n -> W_{n-1}.
struct WittUniv {
    std::uint32_t p = 2;
    std::uint32_t n = 1;
    std::vector<ZPoly> sum;
    std::vector<ZPoly> prod;
    std::vector<ZPoly> frob;
};

inline WittUniv univ_polys(std::uint32_t p, std::uint32_t n) {
    assert(n >= 1);
    WittUniv u;
    u.p = p;
    u.n = n;
    for (std::uint32_t i = 0; i < n; ++i) {
        ZPoly gx = ghost_poly(p, i, 2 * n, 0);
        ZPoly gy = ghost_poly(p, i, 2 * n, n);
        ZPoly rhs_sum = gx + gy;
        ZPoly rhs_prod = gx * gy;
        for (std::uint32_t j = 0; j < i; ++j) {
            std::uint32_t pe = 1;
            for (std::uint32_t k = 0; k < i - j; ++k) pe *= p;
            rhs_sum = rhs_sum - u.sum[j].pow(pe).scaled(int_pow(p, j));
            rhs_prod = rhs_prod - u.prod[j].pow(pe).scaled(int_pow(p, j));
        }
        u.sum.push_back(rhs_sum.divexact(int_pow(p, i)));
        u.prod.push_back(rhs_prod.divexact(int_pow(p, i)));
    }
    for (std::uint32_t i = 0; i + 1 < n; ++i) {
        ZPoly rhs = ghost_poly(p, i + 1, n, 0);
        for (std::uint32_t j = 0; j < i; ++j) {
            std::uint32_t pe = 1;
            for (std::uint32_t k = 0; k < i - j; ++k) pe *= p;
            rhs = rhs - u.frob[j].pow(pe).scaled(int_pow(p, j));
        }
        u.frob.push_back(rhs.divexact(int_pow(p, i)));
    }
    return u;
}

// ---------------------------------------------------------------------------
// Witt vectors with integer coordinates (used by the ghost-map oracles).

using WittIntVec = std::vector<Int>;

inline WittIntVec ghost_int(std::uint32_t p, const WittIntVec& a) {
    WittIntVec w(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        Int total = 0;
        for (std::size_t j = 0; j <= i; ++j) {
            Int pw;
            std::uint32_t pe = 1;
            for (std::size_t k = 0; k < i - j; ++k) pe *= p;
            mpz_pow_ui(pw.get_mpz_t(), a[j].get_mpz_t(), pe);
            total += int_pow(p, static_cast<std::uint32_t>(j)) * pw;
        }
        w[i] = total;
    }
    return w;
}

inline std::vector<Int> concat_args(const WittIntVec& a, const WittIntVec& b) {
    std::vector<Int> xs = a;
    xs.insert(xs.end(), b.begin(), b.end());
    return xs;
}

inline WittIntVec witt_add_int(const WittUniv& u, const WittIntVec& a,
                               const WittIntVec& b) {
    assert(a.size() == u.n && b.size() == u.n);
    auto xs = concat_args(a, b);
    WittIntVec c(u.n);
    for (std::uint32_t i = 0; i < u.n; ++i) c[i] = u.sum[i].eval_int(xs);
    return c;
}

inline WittIntVec witt_mul_int(const WittUniv& u, const WittIntVec& a,
                               const WittIntVec& b) {
    assert(a.size() == u.n && b.size() == u.n);
    auto xs = concat_args(a, b);
    WittIntVec c(u.n);
    for (std::uint32_t i = 0; i < u.n; ++i) c[i] = u.prod[i].eval_int(xs);
    return c;
}

inline WittIntVec witt_frob_int(const WittUniv& u, const WittIntVec& a) {
    assert(a.size() == u.n && u.n >= 2);
    WittIntVec c(u.n - 1);
    for (std::uint32_t i = 0; i + 1 < u.n; ++i) c[i] = u.frob[i].eval_int(a);
    return c;
}

// ---------------------------------------------------------------------------
// Witt vectors with coordinates in a finite commutative F_p-algebra.

using WittVec = std::vector<AlgElem>;

inline std::size_t alg_order(const FinAlgebra& A) {
    std::size_t n = 1;
    for (std::size_t i = 0; i < A.dim; ++i) n *= A.p;
    return n;
}

// Index <-> element bijection, little-endian base-p digits.
inline AlgElem alg_elem_at(const FinAlgebra& A, std::size_t idx) {
    AlgElem e(A.dim);
    for (std::size_t i = 0; i < A.dim; ++i) {
        e[i] = static_cast<std::uint32_t>(idx % A.p);
        idx /= A.p;
    }
    return e;
}

inline std::size_t alg_elem_index(const FinAlgebra& A, const AlgElem& e) {
    std::size_t idx = 0;
    for (std::size_t i = A.dim; i-- > 0;) idx = idx * A.p + e[i] % A.p;
    return idx;
}

inline AlgElem alg_pow(const FinAlgebra& A, AlgElem x, std::uint32_t k) {
    AlgElem r = A.unit;
    while (k > 0) {
        if (k & 1u) r = A.mul(r, x);
        k >>= 1;
        if (k > 0) x = A.mul(x, x);
    }
    return r;
}

inline WittVec witt_zero(const FinAlgebra& A, std::uint32_t n) {
    return WittVec(n, A.zero());
}

inline WittVec witt_teich(const FinAlgebra& A, const AlgElem& x,
                          std::uint32_t n) {
    WittVec v(n, A.zero());
    assert(n >= 1);
    v[0] = x;
    return v;
}

inline WittVec witt_one(const FinAlgebra& A, std::uint32_t n) {
    return witt_teich(A, A.unit, n);
}

inline WittVec witt_add(const WittUniv& u, const FinAlgebra& A,
                        const WittVec& a, const WittVec& b) {
    assert(A.p == u.p && a.size() == u.n && b.size() == u.n);
    std::vector<AlgElem> xs = a;
    xs.insert(xs.end(), b.begin(), b.end());
    WittVec c(u.n);
    for (std::uint32_t i = 0; i < u.n; ++i) c[i] = u.sum[i].eval_alg(A, xs);
    return c;
}

inline WittVec witt_mul(const WittUniv& u, const FinAlgebra& A,
                        const WittVec& a, const WittVec& b) {
    assert(A.p == u.p && a.size() == u.n && b.size() == u.n);
    std::vector<AlgElem> xs = a;
    xs.insert(xs.end(), b.begin(), b.end());
    WittVec c(u.n);
    for (std::uint32_t i = 0; i < u.n; ++i) c[i] = u.prod[i].eval_alg(A, xs);
    return c;
}

// p-fold sum computed through the universal addition law.
inline WittVec witt_ptimes(const WittUniv& u, const FinAlgebra& A,
                           const WittVec& a) {
    WittVec r = witt_zero(A, u.n);
    for (std::uint32_t k = 0; k < u.p; ++k) r = witt_add(u, A, r, a);
    return r;
}

inline WittVec witt_V(const FinAlgebra& A, const WittVec& a) {
    WittVec v(a.size() + 1, A.zero());
    for (std::size_t i = 0; i < a.size(); ++i) v[i + 1] = a[i];
    return v;
}

inline WittVec witt_R(const WittVec& a) {
    assert(a.size() >= 2);
    return WittVec(a.begin(), a.end() - 1);
}

// Frobenius over an F_p-algebra: the universal polynomials reduce to
// coordinate-wise p-th power (F_i == x_i^p mod p, pinned by the tests).
inline WittVec witt_F(const FinAlgebra& A, const WittVec& a) {
    assert(a.size() >= 2);
    WittVec c(a.size() - 1);
    for (std::size_t i = 0; i + 1 < a.size(); ++i) c[i] = alg_pow(A, a[i], A.p);
    return c;
}

// Index <-> vector bijection over all |A|^n truncated Witt vectors.
inline WittVec witt_elem_at(const FinAlgebra& A, std::uint32_t n,
                            std::size_t idx) {
    std::size_t m = alg_order(A);
    WittVec v(n);
    for (std::uint32_t i = 0; i < n; ++i) {
        v[i] = alg_elem_at(A, idx % m);
        idx /= m;
    }
    return v;
}

inline std::size_t witt_elem_index(const FinAlgebra& A, const WittVec& v) {
    std::size_t m = alg_order(A);
    std::size_t idx = 0;
    for (std::size_t i = v.size(); i-- > 0;)
        idx = idx * m + alg_elem_index(A, v[i]);
    return idx;
}

inline std::size_t witt_count(const FinAlgebra& A, std::uint32_t n) {
    std::size_t c = 1;
    for (std::uint32_t i = 0; i < n; ++i) c *= alg_order(A);
    return c;
}

}  // namespace hwitt
