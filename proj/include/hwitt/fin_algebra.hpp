// Finite-dimensional associative unital F_p-algebras given by structure
// constants.  Elements are coordinate vectors over F_p in a fixed basis.
// The unit may be any vector (not necessarily a basis element), so split
// algebras like F_p x F_p are supported.
#pragma once

#include <cassert>
#include <cstdint>
#include <string>
#include <vector>

namespace hwitt {

using AlgElem = std::vector<std::uint32_t>;

struct FinAlgebra {
    std::uint32_t p = 2;
    std::size_t dim = 0;
    std::vector<std::string> names;   // basis labels, size dim
    AlgElem unit;                     // coordinates of 1, size dim
    // table[(i*dim + j)*dim + k] = coefficient of e_k in e_i * e_j, mod p.
    std::vector<std::uint32_t> table;

    std::uint32_t tab(std::size_t i, std::size_t j, std::size_t k) const {
        return table[(i * dim + j) * dim + k];
    }

    AlgElem zero() const { return AlgElem(dim, 0); }
    AlgElem basis_elem(std::size_t i) const {
        AlgElem e(dim, 0);
        e[i] = 1;
        return e;
    }

    AlgElem add(const AlgElem& a, const AlgElem& b) const {
        AlgElem c(dim);
        for (std::size_t i = 0; i < dim; ++i) c[i] = (a[i] + b[i]) % p;
        return c;
    }
    AlgElem sub(const AlgElem& a, const AlgElem& b) const {
        AlgElem c(dim);
        for (std::size_t i = 0; i < dim; ++i) c[i] = (a[i] + p - b[i] % p) % p;
        return c;
    }
    AlgElem smul(std::uint32_t c, const AlgElem& a) const {
        AlgElem r(dim);
        for (std::size_t i = 0; i < dim; ++i) r[i] = (a[i] * (c % p)) % p;
        return r;
    }
    AlgElem mul(const AlgElem& a, const AlgElem& b) const {
        AlgElem c(dim, 0);
        for (std::size_t i = 0; i < dim; ++i) {
            if (a[i] == 0) continue;
            for (std::size_t j = 0; j < dim; ++j) {
                if (b[j] == 0) continue;
                std::uint32_t coef = (a[i] * b[j]) % p;
                if (coef == 0) continue;
                for (std::size_t k = 0; k < dim; ++k)
                    c[k] = (c[k] + coef * tab(i, j, k)) % p;
            }
        }
        return c;
    }
    bool is_zero(const AlgElem& a) const {
        for (auto v : a)
            if (v % p != 0) return false;
        return true;
    }

    // Unit law on basis vectors and associativity on all basis triples.
    bool validate() const {
        if (names.size() != dim || unit.size() != dim ||
            table.size() != dim * dim * dim)
            return false;
        for (std::size_t i = 0; i < dim; ++i) {
            AlgElem e = basis_elem(i);
            if (mul(unit, e) != e || mul(e, unit) != e) return false;
        }
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t j = 0; j < dim; ++j)
                for (std::size_t k = 0; k < dim; ++k) {
                    AlgElem lhs = mul(mul(basis_elem(i), basis_elem(j)), basis_elem(k));
                    AlgElem rhs = mul(basis_elem(i), mul(basis_elem(j), basis_elem(k)));
                    if (lhs != rhs) return false;
                }
        return true;
    }

    bool is_commutative() const {
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t j = i + 1; j < dim; ++j)
                if (mul(basis_elem(i), basis_elem(j)) != mul(basis_elem(j), basis_elem(i)))
                    return false;
        return true;
    }

    std::uint64_t size() const {
        std::uint64_t s = 1;
        for (std::size_t i = 0; i < dim; ++i) s *= p;
        return s;
    }

    // Enumeration index <-> element, mixed radix base p, coordinate 0 least
    // significant.
    AlgElem element_at(std::uint64_t idx) const {
        AlgElem a(dim);
        for (std::size_t i = 0; i < dim; ++i) {
            a[i] = static_cast<std::uint32_t>(idx % p);
            idx /= p;
        }
        return a;
    }
};

namespace detail {
inline FinAlgebra alg_shell(std::uint32_t p, std::vector<std::string> names) {
    FinAlgebra a;
    a.p = p;
    a.dim = names.size();
    a.names = std::move(names);
    a.unit.assign(a.dim, 0);
    a.table.assign(a.dim * a.dim * a.dim, 0);
    return a;
}
}  // namespace detail

inline FinAlgebra field_fp(std::uint32_t p) {
    FinAlgebra a = detail::alg_shell(p, {"1"});
    a.unit = {1};
    a.table[0] = 1;
    assert(a.validate());
    return a;
}

// F_{p^2} as F_p[w]/(w^2 - w - 1); x^2 = x + 1 is irreducible over F_2 and F_3.
inline FinAlgebra field_fp2(std::uint32_t p) {
    assert(p == 2 || p == 3);
    FinAlgebra a = detail::alg_shell(p, {"1", "w"});
    a.unit = {1, 0};
    auto set = [&](std::size_t i, std::size_t j, std::size_t k, std::uint32_t v) {
        a.table[(i * 2 + j) * 2 + k] = v;
    };
    set(0, 0, 0, 1);
    set(0, 1, 1, 1);
    set(1, 0, 1, 1);
    set(1, 1, 0, 1);  // w^2 = 1 + w
    set(1, 1, 1, 1);
    assert(a.validate());
    return a;
}

// F_p[x]/x^d, basis 1, x, ..., x^{d-1}.
inline FinAlgebra truncated_poly(std::uint32_t p, std::size_t d) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < d; ++i)
        names.push_back(i == 0 ? "1" : (i == 1 ? "x" : "x^" + std::to_string(i)));
    FinAlgebra a = detail::alg_shell(p, std::move(names));
    a.unit[0] = 1;
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            if (i + j < d) a.table[(i * d + j) * d + (i + j)] = 1;
    assert(a.validate());
    return a;
}

// Upper-triangular 2x2 matrices over F_p: basis e11, e12, e22.
inline FinAlgebra upper_triangular2(std::uint32_t p) {
    FinAlgebra a = detail::alg_shell(p, {"e11", "e12", "e22"});
    a.unit = {1, 0, 1};
    auto set = [&](std::size_t i, std::size_t j, std::size_t k) {
        a.table[(i * 3 + j) * 3 + k] = 1;
    };
    set(0, 0, 0);  // e11 e11 = e11
    set(0, 1, 1);  // e11 e12 = e12
    set(1, 2, 1);  // e12 e22 = e12
    set(2, 2, 2);  // e22 e22 = e22
    assert(a.validate());
    return a;
}

// Full 2x2 matrices over F_p: basis e11, e12, e21, e22.
inline FinAlgebra matrix2(std::uint32_t p) {
    FinAlgebra a = detail::alg_shell(p, {"e11", "e12", "e21", "e22"});
    a.unit = {1, 0, 0, 1};
    auto idx = [](std::size_t r, std::size_t c) { return r * 2 + c; };
    for (std::size_t r = 0; r < 2; ++r)
        for (std::size_t s = 0; s < 2; ++s)
            for (std::size_t u = 0; u < 2; ++u)
                for (std::size_t v = 0; v < 2; ++v)
                    if (s == u)
                        a.table[(idx(r, s) * 4 + idx(u, v)) * 4 + idx(r, v)] = 1;
    assert(a.validate());
    return a;
}

// Group algebra F_p[Z/k], basis g^0, ..., g^{k-1}.
inline FinAlgebra group_algebra_cyclic(std::uint32_t p, std::size_t k) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < k; ++i) names.push_back("g^" + std::to_string(i));
    FinAlgebra a = detail::alg_shell(p, std::move(names));
    a.unit[0] = 1;
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            a.table[(i * k + j) * k + ((i + j) % k)] = 1;
    assert(a.validate());
    return a;
}

// F_p x F_p with idempotent basis; the unit is e1 + e2, not a basis vector.
inline FinAlgebra split_pair(std::uint32_t p) {
    FinAlgebra a = detail::alg_shell(p, {"e1", "e2"});
    a.unit = {1, 1};
    a.table[(0 * 2 + 0) * 2 + 0] = 1;
    a.table[(1 * 2 + 1) * 2 + 1] = 1;
    assert(a.validate());
    return a;
}

}  // namespace hwitt
