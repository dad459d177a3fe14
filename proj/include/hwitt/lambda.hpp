#pragma once

// Combinatorics of the cyclic category and its l-fold relatives.
//
// The object [n] is a wheel with n >= 1 vertices labelled by Z/n.  A morphism
// [n] -> [m] is the class of a nondecreasing lift  f~ : Z -> Z  with
// f~(y + n) = f~(y) + m, taken modulo adding m*fold; so `fold` = 1 is the
// cyclic category itself and larger `fold` identifies the target one turn in
// `fold`.  Normal form: base = f~(0) reduced into [0, m*fold) together with
// the step vector e_y = f~(y+1) - f~(y), y in [0, n), summing to m.
//
// With this convention, on the cyclic tensor power of an algebra (factor a_y
// at vertex y) a morphism multiplies each fiber in consecutive order and
// inserts the unit over empty fibers; the rotation t = (base 1, all steps 1)
// moves the last tensor factor to the front.

#include <algorithm>
#include <cassert>
#include <compare>
#include <cstdint>
#include <numeric>
#include <vector>

namespace hwitt {

inline long floor_div(long a, long b) {
    assert(b > 0);
    long q = a / b, r = a % b;
    return r < 0 ? q - 1 : q;
}
inline long pos_mod(long a, long b) { return a - floor_div(a, b) * b; }

struct LambdaMor {
    std::uint32_t src = 1, dst = 1, fold = 1;
    std::uint64_t base = 0;  // reduced modulo dst*fold
    std::vector<std::uint32_t> steps;

    static LambdaMor make(std::uint32_t src, std::uint32_t dst, std::uint32_t fold,
                          long base, std::vector<std::uint32_t> steps) {
        assert(src >= 1 && dst >= 1 && fold >= 1);
        assert(steps.size() == src);
        assert(std::accumulate(steps.begin(), steps.end(), 0u) == dst);
        LambdaMor f;
        f.src = src;
        f.dst = dst;
        f.fold = fold;
        f.base = static_cast<std::uint64_t>(pos_mod(base, long(dst) * fold));
        f.steps = std::move(steps);
        return f;
    }

    long lift(long y) const {
        long q = floor_div(y, src);
        long r = y - q * src;
        long v = long(base) + q * long(dst);
        for (long i = 0; i < r; ++i) v += steps[i];
        return v;
    }

    // image vertex of source vertex y, in Z/dst
    std::uint32_t vertex_image(long y) const {
        return static_cast<std::uint32_t>(pos_mod(lift(y), dst));
    }

    bool operator==(const LambdaMor& o) const {
        return src == o.src && dst == o.dst && fold == o.fold && base == o.base &&
               steps == o.steps;
    }
    auto operator<=>(const LambdaMor& o) const {
        if (auto c = src <=> o.src; c != 0) return c;
        if (auto c = dst <=> o.dst; c != 0) return c;
        if (auto c = fold <=> o.fold; c != 0) return c;
        if (auto c = base <=> o.base; c != 0) return c;
        return steps <=> o.steps;
    }
};

inline LambdaMor lambda_identity(std::uint32_t n, std::uint32_t fold = 1) {
    return LambdaMor::make(n, n, fold, 0, std::vector<std::uint32_t>(n, 1));
}

// t^c: rotation by c vertices; t = rot_pow(n, 1) has order n*fold.
inline LambdaMor lambda_rot(std::uint32_t n, long c, std::uint32_t fold = 1) {
    return LambdaMor::make(n, n, fold, c, std::vector<std::uint32_t>(n, 1));
}
inline LambdaMor lambda_cyc(std::uint32_t n, std::uint32_t fold = 1) {
    return lambda_rot(n, 1, fold);
}

// face [n+1] -> [n], j in [0, n]: fiber over vertex j is (j, j+1); for j = n
// the fiber wraps to (n, 0).
inline LambdaMor lambda_face(std::uint32_t n, std::uint32_t j, std::uint32_t fold = 1) {
    assert(j <= n);
    std::vector<std::uint32_t> steps(n + 1, 1);
    steps[j] = 0;
    return LambdaMor::make(n + 1, n, fold, 0, std::move(steps));
}

// degeneracy [n] -> [n+1], j in [0, n): empty fiber over vertex j+1, i.e. a
// unit inserted after position j.
inline LambdaMor lambda_degen(std::uint32_t n, std::uint32_t j, std::uint32_t fold = 1) {
    assert(j < n);
    std::vector<std::uint32_t> steps(n, 1);
    steps[j] = 2;
    return LambdaMor::make(n, n + 1, fold, 0, std::move(steps));
}

// g after f
inline LambdaMor lambda_compose(const LambdaMor& g, const LambdaMor& f) {
    assert(g.src == f.dst && g.fold == f.fold);
    std::vector<std::uint32_t> steps(f.src);
    long prev = g.lift(f.lift(0));
    long v0 = prev;
    for (std::uint32_t y = 0; y < f.src; ++y) {
        long next = g.lift(f.lift(long(y) + 1));
        steps[y] = static_cast<std::uint32_t>(next - prev);
        prev = next;
    }
    return LambdaMor::make(f.src, g.dst, f.fold, v0, std::move(steps));
}

// factors.back() ∘ ... ∘ factors.front()
inline LambdaMor lambda_compose_chain(const std::vector<LambdaMor>& factors) {
    assert(!factors.empty());
    LambdaMor acc = factors.front();
    for (std::size_t i = 1; i < factors.size(); ++i)
        acc = lambda_compose(factors[i], acc);
    return acc;
}

// All morphisms [n] -> [m], ordered by (base, steps) lexicographically.
inline std::vector<LambdaMor> lambda_homs(std::uint32_t n, std::uint32_t m,
                                          std::uint32_t fold = 1) {
    std::vector<LambdaMor> out;
    std::vector<std::uint32_t> steps(n, 0);
    auto rec = [&](auto&& self, std::uint32_t pos, std::uint32_t left) -> void {
        if (pos + 1 == n) {
            steps[pos] = left;
            out.push_back(LambdaMor::make(n, m, fold, 0, steps));
            return;
        }
        for (std::uint32_t e = 0; e <= left; ++e) {
            steps[pos] = e;
            self(self, pos + 1, left - e);
        }
    };
    std::vector<LambdaMor> one_base;
    rec(rec, 0, m);
    one_base = std::move(out);
    out.clear();
    for (std::uint64_t b = 0; b < std::uint64_t(m) * fold; ++b)
        for (const auto& f : one_base) {
            LambdaMor g = f;
            g.base = b;
            out.push_back(std::move(g));
        }
    return out;
}

inline std::uint64_t binom_u64(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    std::uint64_t r = 1;
    for (std::uint64_t i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
}
inline std::uint64_t lambda_hom_count(std::uint32_t n, std::uint32_t m,
                                      std::uint32_t fold = 1) {
    return std::uint64_t(m) * fold * binom_u64(n + m - 1, n - 1);
}

// Left adjoint of the lift:  g~(x) = min{ y : f~(y) >= x }.  Gives a morphism
// [m] -> [n] of the same fold.
inline LambdaMor lambda_adjoint_min(const LambdaMor& f) {
    auto gmin = [&](long x) {
        long y = -long(f.src) * (long(f.base) / long(f.dst) + 2) - long(f.src);
        while (f.lift(y) >= x) y -= f.src;
        while (f.lift(y) < x) ++y;
        return y;
    };
    long b = gmin(0);
    std::vector<std::uint32_t> steps(f.dst);
    long prev = b;
    for (std::uint32_t x = 0; x < f.dst; ++x) {
        long next = gmin(long(x) + 1);
        steps[x] = static_cast<std::uint32_t>(next - prev);
        prev = next;
    }
    return LambdaMor::make(f.dst, f.src, f.fold, b, std::move(steps));
}

// Right adjoint:  h~(x) = max{ y : f~(y) <= x } = (min{ y : f~(y) >= x+1 }) - 1.
inline LambdaMor lambda_adjoint_max(const LambdaMor& f) {
    LambdaMor g = lambda_adjoint_min(f);
    // h~(x) = g~(x+1) - 1
    std::vector<std::uint32_t> steps(f.dst);
    for (std::uint32_t x = 0; x < f.dst; ++x) steps[x] = g.steps[(x + 1) % f.dst];
    long b = g.lift(1) - 1;
    return LambdaMor::make(f.dst, f.src, f.fold, b, std::move(steps));
}

// Ordered fiber over target vertex v (fold 1): consecutive source positions,
// possibly wrapping, read modulo src.
inline std::vector<std::uint32_t> lambda_fiber(const LambdaMor& f, std::uint32_t v) {
    assert(f.fold == 1 && v < f.dst);
    long vt = long(f.base) + pos_mod(long(v) - long(f.base), f.dst);
    long a = lambda_adjoint_min(f).lift(vt);
    long b = lambda_adjoint_min(f).lift(vt + 1);
    std::vector<std::uint32_t> fiber;
    for (long y = a; y < b; ++y)
        fiber.push_back(static_cast<std::uint32_t>(pos_mod(y, f.src)));
    return fiber;
}

// f as a chain of generators, application order first:
// f = rot^c ∘ (splits) ∘ (collapses), returned flattened with t repeated.
inline std::vector<LambdaMor> lambda_decompose(const LambdaMor& f) {
    std::vector<LambdaMor> out;
    LambdaMor cur = f;
    for (;;) {
        std::size_t zero = cur.steps.size(), big = cur.steps.size();
        for (std::size_t j = 0; j < cur.steps.size(); ++j) {
            if (cur.steps[j] == 0 && zero == cur.steps.size()) zero = j;
            if (cur.steps[j] >= 2 && big == cur.steps.size()) big = j;
        }
        if (zero < cur.steps.size()) {
            assert(cur.src >= 2);
            out.push_back(lambda_face(cur.src - 1, std::uint32_t(zero), cur.fold));
            std::vector<std::uint32_t> steps = cur.steps;
            steps.erase(steps.begin() + long(zero));
            cur = LambdaMor::make(cur.src - 1, cur.dst, cur.fold, long(cur.base),
                                  std::move(steps));
        } else if (big < cur.steps.size()) {
            out.push_back(lambda_degen(cur.src, std::uint32_t(big), cur.fold));
            std::vector<std::uint32_t> steps = cur.steps;
            std::uint32_t e = steps[big];
            steps[big] = 1;
            steps.insert(steps.begin() + long(big) + 1, e - 1);
            cur = LambdaMor::make(cur.src + 1, cur.dst, cur.fold, long(cur.base),
                                  std::move(steps));
        } else {
            break;
        }
    }
    // cur is now a pure rotation
    assert(cur.src == cur.dst);
    for (std::uint64_t i = 0; i < cur.base; ++i)
        out.push_back(lambda_cyc(cur.src, cur.fold));
    if (out.empty()) out.push_back(lambda_identity(f.src, f.fold));
    assert(lambda_compose_chain(out) == f);
    return out;
}

// The l-fold relative maps into the plain category by unrolling: the step
// pattern repeats `fold` times, the base is kept (now read modulo dst*fold
// as a plain base).
inline LambdaMor lambda_unroll(const LambdaMor& f) {
    std::vector<std::uint32_t> steps;
    steps.reserve(std::size_t(f.src) * f.fold);
    for (std::uint32_t r = 0; r < f.fold; ++r)
        steps.insert(steps.end(), f.steps.begin(), f.steps.end());
    return LambdaMor::make(f.src * f.fold, f.dst * f.fold, 1, long(f.base),
                           std::move(steps));
}

// Projection to the plain category: same data, target read modulo dst.
inline LambdaMor lambda_project(const LambdaMor& f) {
    return LambdaMor::make(f.src, f.dst, 1, long(f.base) % f.dst, f.steps);
}

// Inclusion of the plain category into the l-fold relative: choose the lift
// with the same base in [0, dst).
inline LambdaMor lambda_include(const LambdaMor& f, std::uint32_t fold) {
    assert(f.fold == 1);
    return LambdaMor::make(f.src, f.dst, fold, long(f.base), f.steps);
}

}  // namespace hwitt
