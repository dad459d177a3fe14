#pragma once
// The Witt truncation of the cyclic nerve of a finite-dimensional algebra A
// over F_p.  The value at level [n] is the Tate group of rotation by n on
// the words of length n * p^m over the basis of A, i.e. the level-[n p^m]
// space of the plain nerve with its deck action of Z/p^m.  A cyclic-category
// morphism f acts through the p^m-fold edgewise subdivision: its kernel is
// the plain nerve kernel of the unrolled morphism (step pattern repeated p^m
// times), with entries lifted to 0..p-1 and multiplied exactly across target
// slots; the unrolled lift satisfies u~(y + src) = u~(y) + dst, so the kernel
// commutes with the deck rotations and descends to the Tate groups.  Away
// from the wrap the unrolled fibers agree with applying f in each block; the
// wrap face multiplies across consecutive blocks and the cyclic rotation
// moves one letter, which is where the subdivision differs from blockwise
// functoriality.  At truncation m = 1 every level and structure map agrees
// with the plain cyclic nerve of A.
//
// Between consecutive truncations, levelwise on the chain complexes:
//   V : C_q(p-subdivided W_m) -> C_q(W_{m+1})   relative norm,
//   F : C_q(W_{m+1}) -> C_q(p-subdivided W_m)   invariant inclusion,
//   R, C : C_q(W_{m+1}) <-> C_q(W_m)            by generator transport on
//                                               the step-(q+1) towers.
// The edgewise-subdivision collapse identifies the homology of the
// subdivided complex with that of W_m itself, so V and F induce operators
// between the Hochschild homologies of consecutive truncations; R descends
// directly.  All constructions certify the properties they rely on (chain
// map, descent, isomorphism) and throw on failure.
//
// On HH_0 sits the group-valued Witt construction of the algebra: the
// comparison builds the additive map q(a_0, ..., a_{m-1}) = sum of
// V^i [T(a_i)] from m-tuples, checks it is onto, and certifies that
// q_group(t) |-> q_nerve(t) extends to an isomorphism from the group-valued
// W_m(A) to W_m HH_0(A) intertwining R and V on the two sides.
//
// The filtration certificate checks, levelwise, exactness of
//   0 -> (W_m at [pn])_{Z/p} --Vbar--> W_{m+1} at [n] --R--> W_m at [n] -> 0
//   0 -> W_m at [n] --C--> W_{m+1} at [n] --F--> (W_m at [pn])^{Z/p} -> 0
// together with the graded orders of the V-filtration.

#include <cassert>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include <hwitt/abelian.hpp>
#include <hwitt/cyclic_module.hpp>
#include <hwitt/fin_algebra.hpp>
#include <hwitt/lambda.hpp>
#include <hwitt/nc_witt.hpp>
#include <hwitt/tate_witt.hpp>

namespace hwitt {

struct WittNerve {
    FinAlgebra A;
    std::uint32_t m = 1;
    std::uint32_t maxlevel = 1;
    std::vector<TateModule> tate;  // tate[n-1]: step n, truncation m
    CyclicModule mod{1, 1};
};

// Tate descent of a fold-1 morphism between represented levels: push the
// orbit indicator of each source coordinate through the kernel of the
// p^m-fold unrolled morphism and read the class off at the target orbit
// representatives.  Kernel entries are the mod-p slot products lifted to
// 0..p-1; sums over an orbit stay exact.
inline GroupHom witt_nerve_matrix(const WittNerve& W, const LambdaMor& f) {
    assert(f.fold == 1 && f.src >= 1 && f.src <= W.maxlevel && f.dst >= 1 &&
           f.dst <= W.maxlevel);
    const FinAlgebra& A = W.A;
    const TateModule& S = W.tate[f.src - 1];
    const TateModule& D = W.tate[f.dst - 1];
    const std::uint32_t pm = static_cast<std::uint32_t>(S.len / S.step);
    LambdaMor u = lambda_unroll(lambda_include(f, pm));
    assert(u.src == S.len && u.dst == D.len);

    std::vector<std::vector<std::uint32_t>> fibers(u.dst);
    for (std::uint32_t v = 0; v < u.dst; ++v) fibers[v] = lambda_fiber(u, v);

    std::vector<std::size_t> dcodes(D.reps.size());
    for (std::size_t i = 0; i < D.reps.size(); ++i)
        dcodes[i] = word_code(D.reps[i], D.nletters);

    const long lp = static_cast<long>(A.p);
    IntMat mat(D.group->rank(), S.group->rank());
    std::map<std::size_t, long> acc;
    std::vector<AlgElem> slot(u.dst);
    std::vector<std::pair<std::size_t, long>> terms, next;
    for (std::size_t j = 0; j < S.reps.size(); ++j) {
        acc.clear();
        Word w = S.reps[j];
        const std::size_t start = word_code(w, S.nletters);
        do {
            for (std::uint32_t v = 0; v < u.dst; ++v) {
                if (fibers[v].empty()) {
                    slot[v] = A.unit;
                } else {
                    AlgElem p = A.basis_elem(w[fibers[v][0]]);
                    for (std::size_t r = 1; r < fibers[v].size(); ++r)
                        p = A.mul(p, A.basis_elem(w[fibers[v][r]]));
                    slot[v] = std::move(p);
                }
            }
            terms.assign(1, {0, 1});
            for (std::uint32_t v = 0; v < u.dst; ++v) {
                next.clear();
                for (const auto& [code, c] : terms)
                    for (std::size_t k = 0; k < A.dim; ++k) {
                        if (slot[v][k] == 0) continue;
                        next.emplace_back(code * A.dim + k, c * slot[v][k]);
                    }
                terms.swap(next);
            }
            for (const auto& [code, c] : terms) acc[code] += c % lp;
            w = rot_word(w, S.step);
        } while (word_code(w, S.nletters) != start);
        Elem e(D.reps.size());
        for (std::size_t i = 0; i < D.reps.size(); ++i) {
            auto it = acc.find(dcodes[i]);
            e[i] = Int(it == acc.end() ? 0 : it->second);
        }
        mat.set_col(j, D.group->reduce(e));
    }
    GroupHom h(S.group, D.group, std::move(mat));
    assert(h.well_defined());
    return h;
}

// Keep the nerve alive for as long as the realizer is used.
inline Realizer witt_realizer(const WittNerve& W) {
    return [&W](const LambdaMor& f) { return witt_nerve_matrix(W, f); };
}

inline WittNerve witt_nerve(const FinAlgebra& A, std::uint32_t m,
                            std::uint32_t N) {
    WittNerve W;
    W.A = A;
    W.m = m;
    W.maxlevel = N;
    W.mod = CyclicModule(1, N);
    for (std::uint32_t n = 1; n <= N; ++n) {
        W.tate.push_back(tate_module(A.p, m, A.dim, n));
        W.mod.set_level(n, W.tate[n - 1].group);
    }
    for (std::uint32_t n = 1; n <= N; ++n) {
        W.mod.set_cyc(n, witt_nerve_matrix(W, lambda_cyc(n)));
        if (n >= 2)
            for (std::uint32_t j = 0; j < n; ++j)
                W.mod.set_face(n, j, witt_nerve_matrix(W, lambda_face(n - 1, j)));
        if (n < N)
            for (std::uint32_t j = 0; j < n; ++j)
                W.mod.set_degen(n, j, witt_nerve_matrix(W, lambda_degen(n, j)));
    }
    return W;
}

// V at target level n: the W_m value at [p n] (a level of the subdivided
// module) to the W_{m+1} value at [n].
inline GroupHom witt_chain_V(const WittNerve& low, const WittNerve& high,
                             std::uint32_t n) {
    assert(low.m + 1 == high.m && low.A.p == high.A.p &&
           low.A.dim == high.A.dim);
    assert(low.A.p * n <= low.maxlevel && n <= high.maxlevel);
    return tate_V_hom(low.tate[low.A.p * n - 1], high.tate[n - 1]);
}

// F at source level n: the W_{m+1} value at [n] into the W_m value at [p n].
inline GroupHom witt_chain_F(const WittNerve& high, const WittNerve& low,
                             std::uint32_t n) {
    assert(low.m + 1 == high.m && low.A.p == high.A.p &&
           low.A.dim == high.A.dim);
    assert(high.A.p * n <= low.maxlevel && n <= high.maxlevel);
    return tate_F_hom(high.tate[n - 1], low.tate[high.A.p * n - 1]);
}

// R and C at level n, by transport of the V^j T(b) generators of the
// step-n towers.
inline TateRestriction witt_level_RC(const WittNerve& big,
                                     const WittNerve& small, std::uint32_t n) {
    assert(big.m == small.m + 1 && n <= big.maxlevel && n <= small.maxlevel);
    return tate_restriction(tate_tower_from(big.tate[n - 1]),
                            tate_tower_from(small.tate[n - 1]));
}

// ---------------------------------------------------------------------------
// Operators induced on Hochschild homology.

// V and F between HH_i of consecutive truncations, through the subdivision
// collapse of the lower nerve.  The homologies are passed in so that several
// operators can share the same group objects.
struct WittVF {
    GroupHom V;  // HH_i(W_m)     -> HH_i(W_{m+1})
    GroupHom F;  // HH_i(W_{m+1}) -> HH_i(W_m)
};

inline WittVF witt_homology_VF(const WittNerve& low, const WittNerve& high,
                               std::uint32_t i, const Homology& hlow,
                               const Homology& hhigh) {
    const std::uint32_t p = low.A.p;
    assert(low.m + 1 == high.m);
    Realizer rl = witt_realizer(low);
    CyclicModule sub = subdivide(low.mod, p, i + 2, rl);
    std::vector<GroupHom> collapse = subdivision_chain_map(p, i + 2, rl);
    for (std::uint32_t q = 1; q <= i + 1; ++q)
        if (!hom_equal(compose(low.mod.boundary(q + 1), collapse[q]),
                       compose(collapse[q - 1], sub.boundary(q + 1))))
            throw std::logic_error("witt_homology_VF: collapse is not a chain map");

    Homology hsub = sub.hh(i);
    GroupHom coll_hh = induced_map(hsub, hlow, collapse[i]);
    GroupHom coll_inv = invert_iso(coll_hh);  // throws when not an iso

    std::vector<GroupHom> v, f;
    for (std::uint32_t q = 0; q <= i + 1; ++q) {
        v.push_back(witt_chain_V(low, high, q + 1));
        f.push_back(witt_chain_F(high, low, q + 1));
    }
    for (std::uint32_t q = 1; q <= i + 1; ++q) {
        if (!hom_equal(compose(v[q - 1], sub.boundary(q + 1)),
                       compose(high.mod.boundary(q + 1), v[q])))
            throw std::logic_error("witt_homology_VF: V is not a chain map");
        if (!hom_equal(compose(f[q - 1], high.mod.boundary(q + 1)),
                       compose(sub.boundary(q + 1), f[q])))
            throw std::logic_error("witt_homology_VF: F is not a chain map");
    }
    WittVF out{compose(induced_map(hsub, hhigh, v[i]), coll_inv),
               compose(coll_hh, induced_map(hhigh, hsub, f[i]))};
    return out;
}

// R on HH_i, from the levelwise generator transports.
inline GroupHom witt_homology_R(const WittNerve& big, const WittNerve& small,
                                std::uint32_t i, const Homology& hbig,
                                const Homology& hsmall) {
    std::vector<GroupHom> r;  // levels i+1, i+2
    for (std::uint32_t n = i + 1; n <= i + 2; ++n)
        r.push_back(witt_level_RC(big, small, n).R);
    if (!hom_equal(compose(r[0], big.mod.boundary(i + 2)),
                   compose(small.mod.boundary(i + 2), r[1])))
        throw std::logic_error("witt_homology_R: R is not a chain map");
    return induced_map(hbig, hsmall, r[0]);
}

// Connes operator on homology, HH_i -> HH_{i+1}.
inline GroupHom witt_homology_B(const WittNerve& W, std::uint32_t i,
                                const Homology& hi, const Homology& hip1) {
    return induced_map(hi, hip1, W.mod.connes_b(i));
}

// ---------------------------------------------------------------------------
// The HH_0 tower of one algebra with V and R, and the additive map q.

struct WittHH0Tower {
    FinAlgebra A;
    std::uint32_t mmax = 1;
    std::vector<WittNerve> nerve;  // nerve[k-1]: truncation k
    std::vector<Homology> h0;      // HH_0 of each truncation
    std::vector<WittVF> vf;        // vf[k-1]: between truncations k, k+1
    std::vector<GroupHom> Rh;      // Rh[k-1]: h0[k] -> h0[k-1]

    // [T(a)] in HH_0 of truncation k.
    Elem teich(std::uint32_t k, const AlgElem& a) const {
        assert(k >= 1 && k <= mmax);
        return h0[k - 1].class_of(tate_teich(nerve[k - 1].tate[0], a));
    }
    // q(t_0, .., t_{k-1}) = sum of V^i [T(t_i)] in HH_0 of truncation k.
    Elem q(const std::vector<AlgElem>& t) const {
        const std::uint32_t k = static_cast<std::uint32_t>(t.size());
        assert(k >= 1 && k <= mmax);
        Elem w = teich(1, t[k - 1]);
        for (std::uint32_t lvl = 2; lvl <= k; ++lvl)
            w = h0[lvl - 1].grp->add(vf[lvl - 2].V(w), teich(lvl, t[k - lvl]));
        return w;
    }
};

inline WittHH0Tower witt_hh0_tower(const FinAlgebra& A, std::uint32_t mmax) {
    WittHH0Tower tw;
    tw.A = A;
    tw.mmax = mmax;
    for (std::uint32_t k = 1; k <= mmax; ++k) {
        const std::uint32_t N = (k < mmax) ? 2 * A.p : 2;
        tw.nerve.push_back(witt_nerve(A, k, N));
    }
    for (std::uint32_t k = 1; k <= mmax; ++k)
        tw.h0.push_back(tw.nerve[k - 1].mod.hh(0));
    for (std::uint32_t k = 1; k < mmax; ++k)
        tw.vf.push_back(witt_homology_VF(tw.nerve[k - 1], tw.nerve[k], 0,
                                         tw.h0[k - 1], tw.h0[k]));
    for (std::uint32_t k = 1; k < mmax; ++k)
        tw.Rh.push_back(witt_homology_R(tw.nerve[k], tw.nerve[k - 1], 0,
                                        tw.h0[k], tw.h0[k - 1]));
    return tw;
}

// ---------------------------------------------------------------------------
// Comparison with the group-valued Witt construction.

struct WittCompare {
    HWittGroup HW;
    WittHH0Tower tower;
    std::vector<GroupHom> iota;  // iota[k-1]: W_k(A) -> HH_0 of truncation k
};

inline WittCompare witt_hess_compare(const FinAlgebra& A, std::uint32_t mmax) {
    WittCompare out{hess_witt(A, mmax), witt_hh0_tower(A, mmax), {}};
    const std::size_t asz = alg_order(A);

    for (std::uint32_t k = 1; k <= mmax; ++k) {
        const GroupPtr& WH = out.HW.group_at(k);
        const GroupPtr& HHG = out.tower.h0[k - 1].grp;
        const std::size_t ord = ab_order(*WH);

        // one preimage tuple per element of the group-valued W_k
        std::vector<std::optional<std::vector<AlgElem>>> pre(ord);
        std::vector<AlgElem> t(k, A.zero());
        std::vector<std::size_t> idx(k, 0);
        for (;;) {
            Elem e = out.HW.q_map(t);
            std::size_t ei = ab_elem_index(*WH, e);
            if (!pre[ei]) pre[ei] = t;
            std::size_t pos = 0;
            while (pos < k && ++idx[pos] == asz) idx[pos++] = 0;
            if (pos == k) break;
            for (std::size_t j = 0; j <= pos; ++j) t[j] = alg_elem_at(A, idx[j]);
        }
        for (const auto& x : pre)
            if (!x) throw std::logic_error("witt_hess_compare: q is not onto W_k");

        IntMat m(HHG->rank(), WH->rank());
        for (std::size_t j = 0; j < WH->rank(); ++j) {
            const auto& tj = *pre[ab_elem_index(*WH, WH->gen(j))];
            m.set_col(j, out.tower.q(tj));
        }
        GroupHom io(WH, HHG, std::move(m));
        if (!io.well_defined())
            throw std::logic_error("witt_hess_compare: transport is not additive");
        invert_iso(io);  // throws when not an isomorphism

        // the full graph: iota(q_group(t)) = q_nerve(t) for every tuple
        std::fill(t.begin(), t.end(), A.zero());
        std::fill(idx.begin(), idx.end(), 0);
        for (;;) {
            Elem lhs = io(out.HW.q_map(t));
            Elem rhs = HHG->reduce(out.tower.q(t));
            if (HHG->reduce(lhs) != rhs)
                throw std::logic_error("witt_hess_compare: iota does not match q");
            std::size_t pos = 0;
            while (pos < k && ++idx[pos] == asz) idx[pos++] = 0;
            if (pos == k) break;
            for (std::size_t j = 0; j <= pos; ++j) t[j] = alg_elem_at(A, idx[j]);
        }
        out.iota.push_back(std::move(io));
    }

    for (std::uint32_t k = 2; k <= mmax; ++k) {
        if (!hom_equal(compose(out.iota[k - 2], out.HW.R_map(k)),
                       compose(out.tower.Rh[k - 2], out.iota[k - 1])))
            throw std::logic_error("witt_hess_compare: R squares differ");
        if (!hom_equal(compose(out.iota[k - 1], out.HW.V_map(k)),
                       compose(out.tower.vf[k - 2].V, out.iota[k - 2])))
            throw std::logic_error("witt_hess_compare: V squares differ");
    }
    return out;
}

// ---------------------------------------------------------------------------
// The V-filtration at one level.

// Orders are exact: at level [n] they grow like p^(dim^pn) and overflow any
// machine word long before the guardrails bite.
struct WittFiltration {
    Int order_big;    // |W_{m+1} at [n]|
    Int order_small;  // |W_m at [n]|
    Int order_coinv;  // |(W_m at [pn])_{Z/p}| = |gr^2|
    Int order_inv;    // |(W_m at [pn])^{Z/p}|
};

// Certifies both exact sequences at level [n] between truncations m, m+1;
// throws on any failure.
inline WittFiltration witt_filtration_check(const WittNerve& small,
                                            const WittNerve& big,
                                            std::uint32_t n) {
    const std::uint32_t p = small.A.p;
    // Only the bottom pair: at higher truncations the kernel of R is the
    // image of the iterated V from the plain nerve, not of the one-step V.
    assert(small.m == 1 && big.m == 2);
    assert(n <= big.maxlevel && p * n <= small.maxlevel);
    const TateModule& Msub = small.tate[p * n - 1];
    const TateModule& Mbig = big.tate[n - 1];
    const TateModule& Msm = small.tate[n - 1];

    GroupHom rho = tate_rho_hom(Msub, n);  // the residual Z/p generator
    GroupHom one = GroupHom::identity(Msub.group);
    Quotient coinv = cokernel(one - rho);
    Subgroup inv = kernel(one - rho);

    // Vbar: the relative norm descends to the coinvariants.
    GroupHom V = tate_V_hom(Msub, Mbig);
    GroupHom vbar(coinv.grp, Mbig.group, V.matrix() * coinv.section);
    if (!vbar.well_defined() ||
        !hom_equal(compose(vbar, coinv.proj), V))
        throw std::logic_error("witt_filtration: V does not descend");

    TateRestriction rc = witt_level_RC(big, small, n);

    WittFiltration out;
    out.order_big = Mbig.group->order();
    out.order_small = Msm.group->order();
    out.order_coinv = coinv.grp->order();
    out.order_inv = inv.grp->order();

    // standard sequence: 0 -> coinv --Vbar--> big --R--> small -> 0.
    // Containment plus matching orders gives im Vbar = ker R.
    if (kernel(vbar).grp->order() != 1)
        throw std::logic_error("witt_filtration: Vbar is not injective");
    if (image(rc.R).grp->order() != out.order_small)
        throw std::logic_error("witt_filtration: R is not onto");
    if (!hom_equal(compose(rc.R, vbar), GroupHom::zero(coinv.grp, Msm.group)))
        throw std::logic_error("witt_filtration: R after Vbar is nonzero");
    if (kernel(rc.R).grp->order() != out.order_coinv)
        throw std::logic_error("witt_filtration: im Vbar != ker R");

    // costandard sequence: 0 -> small --C--> big --F--> inv -> 0
    GroupHom F = tate_F_hom(Mbig, Msub);
    if (!hom_equal(compose(rho, F), F))
        throw std::logic_error("witt_filtration: F image is not invariant");
    if (kernel(rc.C).grp->order() != 1)
        throw std::logic_error("witt_filtration: C is not injective");
    if (!hom_equal(compose(F, rc.C), GroupHom::zero(Msm.group, Msub.group)))
        throw std::logic_error("witt_filtration: F after C is nonzero");
    if (kernel(F).grp->order() != out.order_small)
        throw std::logic_error("witt_filtration: im C != ker F");
    if (image(F).grp->order() != out.order_inv)
        throw std::logic_error("witt_filtration: F is not onto the invariants");

    // graded orders of the V-filtration: gr^1 = big/im Vbar, gr^2 = im Vbar
    if (out.order_big != out.order_coinv * out.order_small)
        throw std::logic_error("witt_filtration: graded orders do not multiply");
    return out;
}

}  // namespace hwitt
