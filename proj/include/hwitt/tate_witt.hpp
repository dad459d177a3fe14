#pragma once
// Polynomial Witt vectors of a free F_p-module E, realized as Tate groups of
// cyclic permutation actions on tensor words.
//
// Fix p, a truncation level m, and an alphabet of d letters (a basis of E).
// Rotation by `step` generates an action of Z/p^m on the words of length
// len = step * p^m; on the free Z/p^m-module spanned by those words the Tate
// group ker(1 - rho) / im(norm) splits over rotation orbits: an orbit with
// stabilizer of order s contributes Z/s, so
//
//   W_m(E) = sum over orbits O of Z/|stab O|,
//   |W_m(E)| = prod_{j=0}^{m-1} (p^{m-j})^{#(aperiodic necklaces of length p^j)}
//
// for step = 1.  A class is stored by its coefficients at the orbit
// representatives (lexicographically least rotations) of the orbits with
// stab > 1, each mod its stabilizer order; the canonical invariant vector of
// a class takes those coefficients on such orbits and 0 on free orbits.
//
// Step > 1 is the same construction for the subgroup generated by rotation
// by step inside the full rotation group of length-(step * p^m) words; the
// residual rotations act on the Tate group and make the collection of these
// groups over all word lengths a cyclic object.
//
// Operators (E^{(t)} denotes E^{(x) p^t}, underlying words over d letters
// with step p^t):
//   T (teichmuller)  E^{(t)} -> W_m(E^{(t)}),  coeff at a rep = product of
//                    the lifted input coefficients over its step-blocks;
//   F (frobenius)    W_{m+1}(E^{(t)}) -> W_m(E^{(t+1)}): invariant inclusion,
//                    coefficients reduced into the finer stabilizer;
//   V (verschiebung) W_m(E^{(t+1)}) -> W_{m+1}(E^{(t)}): relative norm
//                    sum_{j<p} rho^{j p^t} of the canonical lift;
//   rho              pushforward along a residual rotation;
//   R (restriction)  W_{m+1}(E) -> W_m(E): the unique homomorphism sending
//                    V^j T(b) at level m+1 to V^j T(b) at level m for every
//                    basis word b of E^{(j)} (j < m) and V^m T(b) to 0,
//                    certified by preimage transport over those generators;
//   C (corestriction) W_m(E) -> W_{m+1}(E), C(y) = p * (R-preimage of y);
//   W_m(phi)         functoriality in a linear map phi via its integer lift,
//                    letterwise or blockwise (between different steps);
//   product          W_m(E) x W_m(F) -> W_m(E (x) F) by letterwise
//                    interleaving of words.

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include <hwitt/abelian.hpp>
#include <hwitt/nc_witt.hpp>

namespace hwitt {

inline Word rot_word(const Word& w, std::size_t k) {
    const std::size_t n = w.size();
    Word r(n);
    for (std::size_t i = 0; i < n; ++i) r[i] = w[(i + k) % n];
    return r;
}

inline std::size_t word_code(const Word& w, std::uint32_t d) {
    std::size_t c = 0;
    for (std::uint32_t l : w) c = c * d + l;
    return c;
}

inline Word word_decode(std::size_t code, std::uint32_t d, std::size_t len) {
    Word w(len);
    for (std::size_t i = len; i-- > 0;) {
        w[i] = static_cast<std::uint32_t>(code % d);
        code /= d;
    }
    return w;
}

struct TateModule {
    std::uint32_t p = 2;
    std::uint32_t m = 0;
    std::uint32_t nletters = 1;
    std::size_t step = 1;
    std::size_t len = 1;

    GroupPtr group;                  // one Z/stab summand per orbit with stab > 1
    std::vector<Word> reps;          // their representatives, stab asc then lex
    std::vector<std::size_t> stabs;  // parallel stabilizer orders

    std::vector<std::uint32_t> orbit_of;    // word code -> orbit id
    std::vector<std::size_t> orbit_stab;    // orbit id -> stabilizer order
    std::vector<std::size_t> orbit_rep;     // orbit id -> rep code
    std::vector<std::uint32_t> coord_of;    // orbit id -> coordinate, or -1
    std::map<std::size_t, std::size_t> stab_census;  // stab -> orbit count
};

inline TateModule tate_module(std::uint32_t p, std::uint32_t m, std::uint32_t d,
                              std::size_t step) {
    TateModule M;
    M.p = p;
    M.m = m;
    M.nletters = d;
    M.step = step;
    std::size_t pm = 1;
    for (std::uint32_t i = 0; i < m; ++i) pm *= p;
    M.len = step * pm;

    double bits = static_cast<double>(M.len) *
                  std::log2(static_cast<double>(d));
    assert(bits <= 26.0 && "word space too large to enumerate");
    std::size_t N = 1;
    for (std::size_t i = 0; i < M.len; ++i) N *= d;

    M.orbit_of.assign(N, static_cast<std::uint32_t>(-1));
    std::vector<std::size_t> walk;
    for (std::size_t code = 0; code < N; ++code) {
        if (M.orbit_of[code] != static_cast<std::uint32_t>(-1)) continue;
        walk.clear();
        Word w = word_decode(code, d, M.len);
        std::size_t cur = code;
        std::size_t repc = code;
        do {
            walk.push_back(cur);
            repc = std::min(repc, cur);
            w = rot_word(w, step);
            cur = word_code(w, d);
        } while (cur != code);
        std::uint32_t id = static_cast<std::uint32_t>(M.orbit_rep.size());
        for (std::size_t c : walk) M.orbit_of[c] = id;
        M.orbit_rep.push_back(repc);
        M.orbit_stab.push_back(pm / walk.size());
        M.stab_census[pm / walk.size()]++;
    }

    std::vector<std::size_t> coord_orbits;
    for (std::size_t id = 0; id < M.orbit_rep.size(); ++id)
        if (M.orbit_stab[id] > 1) coord_orbits.push_back(id);
    std::sort(coord_orbits.begin(), coord_orbits.end(),
              [&](std::size_t a, std::size_t b) {
                  if (M.orbit_stab[a] != M.orbit_stab[b])
                      return M.orbit_stab[a] < M.orbit_stab[b];
                  return M.orbit_rep[a] < M.orbit_rep[b];
              });

    M.coord_of.assign(M.orbit_rep.size(), static_cast<std::uint32_t>(-1));
    std::vector<Int> orders;
    for (std::size_t j = 0; j < coord_orbits.size(); ++j) {
        std::size_t id = coord_orbits[j];
        M.coord_of[id] = static_cast<std::uint32_t>(j);
        M.reps.push_back(word_decode(M.orbit_rep[id], d, M.len));
        M.stabs.push_back(M.orbit_stab[id]);
        orders.push_back(Int(M.orbit_stab[id]));
    }
    M.group = FinAbGroup::elementary(orders);
    assert(M.group->torsion() == orders && "expected identity layout");
    return M;
}

// Class of an invariant vector given by its coefficient function on words.
template <class Fn>
inline Elem tate_class(const TateModule& M, Fn&& coeff) {
    Elem e(M.reps.size());
    for (std::size_t j = 0; j < M.reps.size(); ++j) e[j] = coeff(M.reps[j]);
    return M.group->reduce(std::move(e));
}

// Canonical lifted coefficient of the invariant vector of x at a word.
inline Int tate_lift(const TateModule& M, const Elem& x, std::size_t code) {
    std::uint32_t id = M.orbit_of[code];
    std::uint32_t c = M.coord_of[id];
    if (c == static_cast<std::uint32_t>(-1)) return Int(0);
    return M.group->reduce(x)[c];
}

inline std::size_t tate_order(const TateModule& M) { return ab_order(*M.group); }

// ---------------------------------------------------------------------------
// Teichmuller representative.  The input is an element of the block module
// E^{(x) step-block}: F_p coefficients over the d^step block words.
inline Elem tate_teich(const TateModule& M,
                       const std::vector<std::uint32_t>& e) {
    std::size_t blocks = M.len / M.step;
    return tate_class(M, [&](const Word& r) {
        Int c(1);
        for (std::size_t b = 0; b < blocks; ++b) {
            Word blk(r.begin() + b * M.step, r.begin() + (b + 1) * M.step);
            c *= Int(e[word_code(blk, M.nletters)] % M.p);
        }
        return c;
    });
}

// ---------------------------------------------------------------------------
// Elementwise structure maps.

// F : W_{m+1}(E^{(t)}) -> W_m(E^{(t+1)}).  Same word length, finer step.
inline Elem tate_F(const TateModule& src, const TateModule& dst,
                   const Elem& x) {
    assert(src.len == dst.len && dst.step == src.step * src.p &&
           dst.m + 1 == src.m);
    return tate_class(dst, [&](const Word& r) {
        return tate_lift(src, x, word_code(r, src.nletters));
    });
}

// V : W_m(E^{(t+1)}) -> W_{m+1}(E^{(t)}).  Relative norm of the lift.
inline Elem tate_V(const TateModule& src, const TateModule& dst,
                   const Elem& x) {
    assert(src.len == dst.len && src.step == dst.step * dst.p &&
           src.m + 1 == dst.m);
    return tate_class(dst, [&](const Word& r) {
        Int c(0);
        for (std::uint32_t j = 0; j < dst.p; ++j)
            c += tate_lift(src, x, word_code(rot_word(r, j * dst.step),
                                             src.nletters));
        return c;
    });
}

// Pushforward along rotation by k (descends for any k; coefficients move by
// coeff(w) -> coeff(rot(w, k))).
inline Elem tate_rho(const TateModule& M, const Elem& x, std::size_t k) {
    return tate_class(M, [&](const Word& r) {
        return tate_lift(M, x, word_code(rot_word(r, k), M.nletters));
    });
}

// Group homomorphism from an elementwise map on this module's generators.
template <class Fn>
inline GroupHom tate_hom(const TateModule& src, const GroupPtr& dst, Fn&& f) {
    IntMat mat(dst->rank(), src.group->rank());
    for (std::size_t j = 0; j < src.group->rank(); ++j)
        mat.set_col(j, f(src.group->gen(j)));
    GroupHom h(src.group, dst, std::move(mat));
    assert(h.well_defined());
    return h;
}

inline GroupHom tate_F_hom(const TateModule& src, const TateModule& dst) {
    return tate_hom(src, dst.group,
                    [&](const Elem& x) { return tate_F(src, dst, x); });
}

inline GroupHom tate_V_hom(const TateModule& src, const TateModule& dst) {
    return tate_hom(src, dst.group,
                    [&](const Elem& x) { return tate_V(src, dst, x); });
}

inline GroupHom tate_rho_hom(const TateModule& M, std::size_t k) {
    return tate_hom(M, M.group,
                    [&](const Elem& x) { return tate_rho(M, x, k); });
}

// ---------------------------------------------------------------------------
// The length-preserving tower over E: modules W_k(E^{(t)}) for t + k <= m+1,
// with the V-chains needed to express the standard generators V^j T(b).
// A base step s > 1 runs the same tower over the block module spanned by the
// length-s words (so mod[t] has step s * p^t); the layouts coincide with the
// one-letter tower over the d^s-letter alphabet.

struct TateTower {
    std::uint32_t p = 2, d = 1, m = 1;
    // mod[t] = W_{m-t}(E^{(t)}) for 0 <= t <= m-1, all of word length
    // base_step * p^m.
    std::vector<TateModule> mod;
    // vchain[t] : W_{m-t-1}(E^{(t+1)}) -> W_{m-t}(E^{(t)}), 0 <= t <= m-2.
    std::vector<GroupHom> vchain;
};

// Tower below a given top module, sharing its group object.
inline TateTower tate_tower_from(const TateModule& top) {
    assert(top.m >= 1);
    TateTower tw;
    tw.p = top.p;
    tw.d = top.nletters;
    tw.m = top.m;
    tw.mod.push_back(top);
    std::size_t step = top.step;
    for (std::uint32_t t = 1; t < tw.m; ++t) {
        step *= tw.p;
        tw.mod.push_back(tate_module(tw.p, tw.m - t, tw.d, step));
    }
    for (std::uint32_t t = 0; t + 2 <= tw.m; ++t)
        tw.vchain.push_back(tate_V_hom(tw.mod[t + 1], tw.mod[t]));
    return tw;
}

inline TateTower tate_tower(std::uint32_t p, std::uint32_t d, std::uint32_t m,
                            std::size_t base_step = 1) {
    return tate_tower_from(tate_module(p, m, d, base_step));
}

// V^j T(b) in W_m(E) for a basis word b of E^{(j)} (given by its code),
// 0 <= j <= m-1.
inline Elem tate_vt_generator(const TateTower& tw, std::uint32_t j,
                              std::size_t bcode) {
    assert(j < tw.m);
    const TateModule& Mj = tw.mod[j];
    std::size_t bsize = 1;
    for (std::size_t i = 0; i < Mj.step; ++i) bsize *= tw.d;
    std::vector<std::uint32_t> e(bsize, 0);
    e[bcode] = 1;
    Elem x = tate_teich(Mj, e);
    for (std::uint32_t t = j; t-- > 0;) x = tw.vchain[t](x);
    return x;
}

// R : W_{m+1}(E) -> W_m(E), by transport of the V^j T(b) generators.  Also
// returns the corestriction C(y) = p * R-preimage(y).
struct TateRestriction {
    GroupHom R;  // W_{m+1}(E) -> W_m(E)
    GroupHom C;  // W_m(E) -> W_{m+1}(E)
};

inline TateRestriction tate_restriction(const TateTower& big,
                                        const TateTower& small) {
    assert(big.p == small.p && big.d == small.d && big.m == small.m + 1);
    assert(big.mod[0].step == small.mod[0].step);
    const GroupPtr& W1 = big.mod[0].group;    // W_{m+1}(E)
    const GroupPtr& W0 = small.mod[0].group;  // W_m(E)

    // Generator images g_k in W_{m+1} and their transports t_k in W_m;
    // the top layer V^m T(b) restricts to 0.
    std::vector<Elem> g, t;
    for (std::uint32_t j = 0; j < big.m; ++j) {
        std::size_t bsize = 1;
        for (std::size_t i = 0; i < big.mod[j].step; ++i) bsize *= big.d;
        for (std::size_t b = 0; b < bsize; ++b) {
            g.push_back(tate_vt_generator(big, j, b));
            t.push_back(j < small.m ? tate_vt_generator(small, j, b)
                                    : W0->zero_elem());
        }
    }
    IntMat gm(W1->rank(), g.size()), tm(W0->rank(), t.size());
    for (std::size_t k = 0; k < g.size(); ++k) {
        gm.set_col(k, g[k]);
        tm.set_col(k, t[k]);
    }
    GroupPtr freeK = FinAbGroup::free_group(g.size());
    GroupHom phi(freeK, W1, std::move(gm));
    GroupHom psi(freeK, W0, std::move(tm));
    if (image(phi).grp->order() != W1->order())
        throw std::logic_error("tate_restriction: generators do not span");

    IntMat rm(W0->rank(), W1->rank());
    for (std::size_t i = 0; i < W1->rank(); ++i) {
        auto x = preimage(phi, W1->gen(i));
        assert(x && "surjective phi must admit preimages");
        rm.set_col(i, psi(*x));
    }
    GroupHom R(W1, W0, std::move(rm));
    if (!R.well_defined() || !hom_equal(compose(R, phi), psi))
        throw std::logic_error("tate_restriction: transport is inconsistent");

    IntMat cm(W1->rank(), W0->rank());
    for (std::size_t i = 0; i < W0->rank(); ++i) {
        auto x = preimage(R, W0->gen(i));
        if (!x) throw std::logic_error("tate_restriction: R not surjective");
        cm.set_col(i, W1->smul(Int(big.p), *x));
    }
    GroupHom C(W0, W1, std::move(cm));
    if (!C.well_defined())
        throw std::logic_error("tate_restriction: corestriction ill-defined");
    return {std::move(R), std::move(C)};
}

// ---------------------------------------------------------------------------
// Functoriality: W_m(phi) for a linear map phi : E -> E', given by an integer
// lift of its matrix (entries lifted to 0..p-1 act on letters).

inline GroupHom tate_witt_map(const TateModule& src, const TateModule& dst,
                              const IntMat& lift) {
    assert(src.p == dst.p && src.m == dst.m && src.step == dst.step &&
           src.len == dst.len);
    assert(lift.rows() == dst.nletters && lift.cols() == src.nletters);
    // Support of a canonical invariant vector: words in orbits with stab > 1.
    std::vector<std::pair<Word, std::uint32_t>> support;  // word, coordinate
    for (std::size_t j = 0; j < src.reps.size(); ++j) {
        Word w = src.reps[j];
        const std::size_t start = word_code(w, src.nletters);
        do {
            support.push_back({w, static_cast<std::uint32_t>(j)});
            w = rot_word(w, src.step);
        } while (word_code(w, src.nletters) != start);
    }
    return tate_hom(src, dst.group, [&](const Elem& x) {
        Elem xr = src.group->reduce(x);
        return tate_class(dst, [&](const Word& r) {
            Int c(0);
            for (const auto& [w, j] : support) {
                if (xr[j] == 0) continue;
                Int prod = xr[j];
                for (std::size_t i = 0; i < src.len && prod != 0; ++i)
                    prod *= lift.at(r[i], w[i]);
                c += prod;
            }
            return c;
        });
    });
}

// Functoriality in a linear map between block modules of possibly different
// steps: E is spanned by the length-(src.step) words, E' by the
// length-(dst.step) words, and the lift is a d_dst^dst.step x d_src^src.step
// integer matrix with entries in 0..p-1.  Both modules decompose their words
// into p^m blocks; the coefficient of the image at a word is the sum over
// source support words of the lifted coefficient times the product of the
// lift entries over corresponding blocks.
inline GroupHom tate_witt_block_map(const TateModule& src, const TateModule& dst,
                                    const IntMat& lift) {
    assert(src.p == dst.p && src.m == dst.m);
    const std::size_t blocks = src.len / src.step;
    assert(dst.len / dst.step == blocks);
    {
        std::size_t nsrc = 1, ndst = 1;
        for (std::size_t i = 0; i < src.step; ++i) nsrc *= src.nletters;
        for (std::size_t i = 0; i < dst.step; ++i) ndst *= dst.nletters;
        assert(lift.rows() == ndst && lift.cols() == nsrc);
    }
    auto block_codes = [](const Word& w, std::size_t step, std::uint32_t d,
                          std::size_t blocks) {
        std::vector<std::size_t> bc(blocks);
        for (std::size_t b = 0; b < blocks; ++b) {
            Word blk(w.begin() + b * step, w.begin() + (b + 1) * step);
            bc[b] = word_code(blk, d);
        }
        return bc;
    };
    struct Sup {
        std::uint32_t coord;
        std::vector<std::size_t> bcode;
    };
    std::vector<Sup> support;
    for (std::size_t j = 0; j < src.reps.size(); ++j) {
        Word w = src.reps[j];
        const std::size_t start = word_code(w, src.nletters);
        do {
            support.push_back({static_cast<std::uint32_t>(j),
                               block_codes(w, src.step, src.nletters, blocks)});
            w = rot_word(w, src.step);
        } while (word_code(w, src.nletters) != start);
    }
    return tate_hom(src, dst.group, [&](const Elem& x) {
        Elem xr = src.group->reduce(x);
        return tate_class(dst, [&](const Word& r) {
            std::vector<std::size_t> rb =
                block_codes(r, dst.step, dst.nletters, blocks);
            Int c(0);
            for (const auto& s : support) {
                if (xr[s.coord] == 0) continue;
                Int prod = xr[s.coord];
                for (std::size_t b = 0; b < blocks && prod != 0; ++b)
                    prod *= lift.at(rb[b], s.bcode[b]);
                c += prod;
            }
            return c;
        });
    });
}

// Product W_m(E) x W_m(F) -> W_m(E (x) F) by letterwise interleaving:
// a letter pair (a, b) becomes a * d_F + b.
inline Elem tate_product(const TateModule& ME, const TateModule& MF,
                         const TateModule& MEF, const Elem& x, const Elem& y) {
    assert(ME.len == MF.len && ME.len == MEF.len && ME.step == MF.step &&
           ME.step == MEF.step);
    assert(MEF.nletters == ME.nletters * MF.nletters);
    return tate_class(MEF, [&](const Word& r) {
        Word u(r.size()), v(r.size());
        for (std::size_t i = 0; i < r.size(); ++i) {
            u[i] = r[i] / MF.nletters;
            v[i] = r[i] % MF.nletters;
        }
        Int c = tate_lift(ME, x, word_code(u, ME.nletters));
        c *= tate_lift(MF, y, word_code(v, MF.nletters));
        return c;
    });
}

}  // namespace hwitt
