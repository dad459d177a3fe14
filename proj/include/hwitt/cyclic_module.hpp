// Truncated cyclic modules: finitely many levels [1..N] of finite abelian
// groups together with the simplicial generators, the rotation at each level,
// and the operators derived from them (Hochschild differential b, the degree
// +1 operator B, low-degree cyclic homology via the (b,B)-bicomplex).
//
// A module of fold l >= 2 is shaped by the l-fold cyclic category: the same
// generators, but the rotation at level [n] has order n*l.
//
// Levels are stored at index n-1.  Chain degree q corresponds to level
// [q+1], so C_q = val(q+1) and b_q : C_q -> C_{q-1} is an alternating sum of
// the faces [q+1] -> [q].
#pragma once

#include <functional>
#include <map>
#include <stdexcept>
#include <vector>

#include "hwitt/abelian.hpp"
#include "hwitt/cyclic_group_module.hpp"
#include "hwitt/fin_algebra.hpp"
#include "hwitt/lambda.hpp"

namespace hwitt {

class CyclicModule {
public:
    CyclicModule(std::uint32_t fold, std::uint32_t maxlevel)
        : fold_(fold), maxlevel_(maxlevel), val_(maxlevel),
          face_(maxlevel), degen_(maxlevel), cyc_(maxlevel) {
        assert(fold >= 1 && maxlevel >= 1);
    }

    std::uint32_t fold() const { return fold_; }
    std::uint32_t maxlevel() const { return maxlevel_; }

    const GroupPtr& val(std::uint32_t n) const {
        assert(n >= 1 && n <= maxlevel_);
        return val_[n - 1];
    }
    // d_j : val(n) -> val(n-1), j in [0, n)
    const GroupHom& face(std::uint32_t n, std::uint32_t j) const {
        assert(n >= 2 && n <= maxlevel_ && j < n);
        return face_[n - 1][j];
    }
    // s_j : val(n) -> val(n+1), j in [0, n)
    const GroupHom& degen(std::uint32_t n, std::uint32_t j) const {
        assert(n >= 1 && n < maxlevel_ && j < n);
        return degen_[n - 1][j];
    }
    // t : val(n) -> val(n), order n*fold
    const GroupHom& cyc(std::uint32_t n) const {
        assert(n >= 1 && n <= maxlevel_);
        return cyc_[n - 1];
    }

    void set_level(std::uint32_t n, GroupPtr g) { val_[n - 1] = std::move(g); }
    void set_face(std::uint32_t n, std::uint32_t j, GroupHom h) {
        face_[n - 1].resize(n);
        face_[n - 1][j] = std::move(h);
    }
    void set_degen(std::uint32_t n, std::uint32_t j, GroupHom h) {
        degen_[n - 1].resize(n);
        degen_[n - 1][j] = std::move(h);
    }
    void set_cyc(std::uint32_t n, GroupHom h) { cyc_[n - 1] = std::move(h); }

    // Arbitrary morphism through the stored generators.
    GroupHom realize(const LambdaMor& f) const {
        assert(f.fold == fold_ && f.src <= maxlevel_ && f.dst <= maxlevel_);
        auto gens = lambda_decompose(f);  // never empty
        GroupHom acc = generator_hom(gens.front());
        for (std::size_t i = 1; i < gens.size(); ++i)
            acc = compose(generator_hom(gens[i]), acc);
        return acc;
    }

    // Hochschild differential b : C_{n-1} -> C_{n-2}, i.e. val(n) -> val(n-1).
    GroupHom boundary(std::uint32_t n) const {
        assert(n >= 2 && n <= maxlevel_);
        GroupHom acc = face(n, 0);
        for (std::uint32_t j = 1; j < n; ++j) {
            GroupHom term = face(n, j);
            acc = (j % 2 == 0) ? acc + term : acc - term;
        }
        return acc;
    }

    // Signed rotation on chain degree q: lambda_q = (-1)^q t.
    GroupHom signed_cyc(std::uint32_t q) const {
        const GroupHom& t = cyc(q + 1);
        return (q % 2 == 0) ? t : -t;
    }

    // Connes operator B : C_q -> C_{q+1}, B = (1 - lambda) s_{-1} N with
    // N = sum of the powers of the signed rotation (full orbit, (q+1)*fold
    // terms) and s_{-1} inserting the unit slot in front (last degeneracy
    // followed by the rotation).
    GroupHom connes_b(std::uint32_t q) const {
        const std::uint32_t n = q + 1;
        assert(n + 1 <= maxlevel_);
        GroupHom lam = signed_cyc(q);
        GroupHom pw = GroupHom::identity(val(n));
        GroupHom norm = pw;
        const std::uint64_t ord = std::uint64_t(n) * fold_;
        for (std::uint64_t k = 1; k < ord; ++k) {
            pw = compose(lam, pw);
            norm = norm + pw;
        }
        GroupHom sm1 = compose(cyc(n + 1), degen(n, n - 1));
        GroupHom up = compose(sm1, norm);
        return up - compose(signed_cyc(q + 1), up);
    }

    // HH_i; needs levels through [i+2] so that both differentials exist.
    Homology hh(std::uint32_t i) const {
        assert(i + 2 <= maxlevel_);
        GroupHom d_out = (i == 0) ? GroupHom::zero(val(1), FinAbGroup::zero())
                                  : boundary(i + 1);
        return homology(d_out, boundary(i + 2));
    }

    // Low-degree cyclic homology through the truncated (b,B)-bicomplex.
    // Stable once width > i/2 for modules with enough levels.
    Homology hc_low(std::uint32_t i, std::uint32_t width) const;

    // Total complex piece T_j = sum_q C_{j-2q}, q < width, with differential
    // x_q |-> b(x_q) + B(x_{q+1}).
    struct TotalPiece {
        DirectSum sum;                // components C_{j-2q}
        std::vector<std::uint32_t> deg;  // chain degree of each component
    };
    TotalPiece total_piece(std::uint32_t j, std::uint32_t width) const {
        TotalPiece t;
        std::vector<GroupPtr> parts;
        for (std::uint32_t q = 0; q < width && 2 * q <= j; ++q) {
            parts.push_back(val(j - 2 * q + 1));
            t.deg.push_back(j - 2 * q);
        }
        t.sum = direct_sum(parts);
        return t;
    }
    GroupHom total_diff(const TotalPiece& src, const TotalPiece& dst) const {
        GroupHom acc = GroupHom::zero(src.sum.grp, dst.sum.grp);
        for (std::size_t a = 0; a < src.deg.size(); ++a)
            for (std::size_t c = 0; c < dst.deg.size(); ++c) {
                if (dst.deg[c] + 1 == src.deg[a])
                    acc = acc + compose(dst.sum.inj[c],
                                        compose(boundary(src.deg[a] + 1), src.sum.proj[a]));
                else if (src.deg[a] + 1 == dst.deg[c])
                    acc = acc + compose(dst.sum.inj[c],
                                        compose(connes_b(src.deg[a]), src.sum.proj[a]));
            }
        return acc;
    }

    // Structure-map sanity: simplicial identities, rotation relations, and
    // the order of the rotation, at every represented level.  Quadratic to
    // cubic in the level ranks; intended for moderate sizes.
    void check() const;

private:
    GroupHom generator_hom(const LambdaMor& g) const {
        assert(g.fold == fold_);
        if (g.src == g.dst) {
            if (g.base == 0) return GroupHom::identity(val(g.src));
            assert(g.base == 1);
            return cyc(g.src);
        }
        if (g.src == g.dst + 1) {
            for (std::uint32_t j = 0; j < g.src; ++j)
                if (g.steps[j] == 0) return face(g.src, j);
        }
        if (g.dst == g.src + 1) {
            for (std::uint32_t j = 0; j < g.src; ++j)
                if (g.steps[j] == 2) return degen(g.src, j);
        }
        throw std::logic_error("generator_hom: not a generator");
    }

    std::uint32_t fold_;
    std::uint32_t maxlevel_;
    std::vector<GroupPtr> val_;
    std::vector<std::vector<GroupHom>> face_;
    std::vector<std::vector<GroupHom>> degen_;
    std::vector<GroupHom> cyc_;
};

// Map induced on homology by a chain map that carries cycles to cycles.
inline GroupHom induced_map(const Homology& src, const Homology& dst,
                            const GroupHom& chain) {
    IntMat m(dst.grp->rank(), src.grp->rank());
    for (std::size_t j = 0; j < src.grp->rank(); ++j)
        m.set_col(j, dst.class_of(chain(src.rep_of(src.grp->gen(j)))));
    GroupHom h(src.grp, dst.grp, std::move(m));
    assert(h.well_defined());
    return h;
}

inline Homology CyclicModule::hc_low(std::uint32_t i, std::uint32_t width) const {
    assert(width >= i / 2 + 1 && i + 2 <= maxlevel());
    TotalPiece ti = total_piece(i, width);
    TotalPiece tup = total_piece(i + 1, width);
    GroupHom d_in = total_diff(tup, ti);
    GroupHom d_out =
        (i == 0) ? GroupHom::zero(ti.sum.grp, FinAbGroup::zero())
                 : total_diff(ti, total_piece(i - 1, width));
    return homology(d_out, d_in);
}

inline void CyclicModule::check() const {
    const std::uint32_t N = maxlevel();
    auto expect = [](bool ok, const char* what) {
        if (!ok) throw std::logic_error(std::string("cyclic module check: ") + what);
    };
    for (std::uint32_t n = 1; n <= N; ++n) {
        // t^(n*fold) = id is the only relation on the rotation alone
        GroupHom pw = GroupHom::identity(val(n));
        const std::uint64_t ord = std::uint64_t(n) * fold();
        for (std::uint64_t k = 0; k < ord; ++k) pw = compose(cyc(n), pw);
        expect(hom_equal(pw, GroupHom::identity(val(n))), "rotation order");
    }
    for (std::uint32_t n = 2; n <= N; ++n) {
        // d_i d_j = d_{j-1} d_i, i < j, as maps val(n) -> val(n-2)
        if (n >= 3)
            for (std::uint32_t i = 0; i + 1 < n; ++i)
                for (std::uint32_t j = i + 1; j < n; ++j)
                    expect(hom_equal(compose(face(n - 1, i), face(n, j)),
                                     compose(face(n - 1, j - 1), face(n, i))),
                           "dd relation");
        // rotation relations: d_i t = t d_{i-1} (i >= 1), d_0 t = d_{n-1}
        for (std::uint32_t i = 1; i < n; ++i)
            expect(hom_equal(compose(face(n, i), cyc(n)),
                             compose(cyc(n - 1), face(n, i - 1))),
                   "dt relation");
        expect(hom_equal(compose(face(n, 0), cyc(n)), face(n, n - 1)), "d0t relation");
    }
    for (std::uint32_t n = 1; n + 1 <= N; ++n) {
        // s_i s_j = s_{j+1} s_i, i <= j, as maps val(n) -> val(n+2)
        if (n + 2 <= N)
            for (std::uint32_t i = 0; i < n; ++i)
                for (std::uint32_t j = i; j < n; ++j)
                    expect(hom_equal(compose(degen(n + 1, i), degen(n, j)),
                                     compose(degen(n + 1, j + 1), degen(n, i))),
                           "ss relation");
        // d_i s_j mixed identities, maps val(n) -> val(n)
        for (std::uint32_t j = 0; j < n; ++j)
            for (std::uint32_t i = 0; i < n + 1; ++i) {
                GroupHom lhs = compose(face(n + 1, i), degen(n, j));
                if (i == j || i == j + 1)
                    expect(hom_equal(lhs, GroupHom::identity(val(n))), "ds identity");
                else if (i < j)
                    expect(hom_equal(lhs, compose(degen(n - 1, j - 1), face(n, i))),
                           "ds < relation");
                else
                    expect(hom_equal(lhs, compose(degen(n - 1, j), face(n, i - 1))),
                           "ds > relation");
            }
        // s_i t = t s_{i-1} (i >= 1), s_0 t = t^2 s_{n-1}
        for (std::uint32_t i = 1; i < n; ++i)
            expect(hom_equal(compose(degen(n, i), cyc(n)),
                             compose(cyc(n + 1), degen(n, i - 1))),
                   "st relation");
        expect(hom_equal(compose(degen(n, 0), cyc(n)),
                         compose(cyc(n + 1), compose(cyc(n + 1), degen(n, n - 1)))),
               "s0t relation");
    }
}

// ---------------------------------------------------------------------------
// Nerve of a finite-dimensional algebra.  Value at [n] is the F_p-span of
// words of length n over the algebra basis; a morphism acts by multiplying
// the entries of each fiber in the fiber order, inserting the unit vector
// for empty fibers.

// Basis words are indexed big-endian: word (w_0, ..., w_{n-1}) has index
// sum w_i * dim^{n-1-i}.
inline std::uint64_t word_index(const std::vector<std::uint32_t>& w, std::size_t dim) {
    std::uint64_t idx = 0;
    for (auto c : w) idx = idx * dim + c;
    return idx;
}
inline std::vector<std::uint32_t> word_at(std::uint64_t idx, std::size_t dim,
                                          std::uint32_t len) {
    std::vector<std::uint32_t> w(len);
    for (std::uint32_t i = len; i-- > 0;) {
        w[i] = static_cast<std::uint32_t>(idx % dim);
        idx /= dim;
    }
    return w;
}

// Matrix of the fold-1 morphism f on the nerve of A.
inline GroupHom nerve_matrix(const FinAlgebra& A, const LambdaMor& f,
                             const GroupPtr& src_grp, const GroupPtr& dst_grp) {
    assert(f.fold == 1);
    std::uint64_t nsrc = 1, ndst = 1;
    for (std::uint32_t i = 0; i < f.src; ++i) nsrc *= A.dim;
    for (std::uint32_t i = 0; i < f.dst; ++i) ndst *= A.dim;
    assert(src_grp->rank() == nsrc && dst_grp->rank() == ndst);

    std::vector<std::vector<std::uint32_t>> fibers(f.dst);
    for (std::uint32_t v = 0; v < f.dst; ++v) fibers[v] = lambda_fiber(f, v);

    IntMat m(ndst, nsrc);
    std::vector<std::uint32_t> w(f.src);
    for (std::uint64_t s = 0; s < nsrc; ++s) {
        w = word_at(s, A.dim, f.src);
        // per-target-slot vectors; empty fiber contributes the unit vector
        std::vector<AlgElem> slot(f.dst);
        for (std::uint32_t v = 0; v < f.dst; ++v) {
            if (fibers[v].empty()) {
                slot[v] = A.unit;
            } else {
                AlgElem acc = A.basis_elem(w[fibers[v][0]]);
                for (std::size_t r = 1; r < fibers[v].size(); ++r)
                    acc = A.mul(acc, A.basis_elem(w[fibers[v][r]]));
                slot[v] = std::move(acc);
            }
        }
        // expand the tensor product of the slot vectors
        std::vector<std::pair<std::uint64_t, std::uint32_t>> terms{{0, 1}};
        for (std::uint32_t v = 0; v < f.dst; ++v) {
            std::vector<std::pair<std::uint64_t, std::uint32_t>> next;
            for (const auto& [idx, c] : terms)
                for (std::size_t k = 0; k < A.dim; ++k) {
                    if (slot[v][k] == 0) continue;
                    next.emplace_back(idx * A.dim + k, (c * slot[v][k]) % A.p);
                }
            terms = std::move(next);
        }
        for (const auto& [idx, c] : terms)
            m.at(idx, s) = (m.at(idx, s) + c) % A.p;
    }
    return GroupHom(src_grp, dst_grp, std::move(m));
}

inline CyclicModule algebra_nerve(const FinAlgebra& A, std::uint32_t N) {
    CyclicModule E(1, N);
    std::uint64_t sz = 1;
    for (std::uint32_t n = 1; n <= N; ++n) {
        sz *= A.dim;
        E.set_level(n, FinAbGroup::elementary(Int(A.p), sz));
    }
    for (std::uint32_t n = 1; n <= N; ++n) {
        E.set_cyc(n, nerve_matrix(A, lambda_cyc(n), E.val(n), E.val(n)));
        if (n >= 2)
            for (std::uint32_t j = 0; j < n; ++j)
                E.set_face(n, j,
                           nerve_matrix(A, lambda_face(n - 1, j), E.val(n), E.val(n - 1)));
        if (n < N)
            for (std::uint32_t j = 0; j < n; ++j)
                E.set_degen(n, j,
                            nerve_matrix(A, lambda_degen(n, j), E.val(n), E.val(n + 1)));
    }
    return E;
}

// ---------------------------------------------------------------------------
// Weight-graded nerve of the free (tensor) algebra on a d-dimensional space
// over F_p.  The weight-w piece at level [n] has basis the n-tuples of words
// over {0..d-1} with total length w; faces concatenate, degeneracies insert
// the empty word, the rotation moves the last tuple entry to the front.

struct TensorNerveBasis {
    // tuples[n-1]: ordered list of basis tuples at level [n]
    std::vector<std::vector<std::vector<std::vector<std::uint32_t>>>> tuples;
    std::vector<std::map<std::vector<std::vector<std::uint32_t>>, std::size_t>> index;
};

inline void enumerate_tuples(std::uint32_t d, std::uint32_t n, std::uint32_t w,
                             std::vector<std::vector<std::uint32_t>>& cur,
                             std::vector<std::vector<std::vector<std::uint32_t>>>& out) {
    if (cur.size() == n) {
        if (w == 0) out.push_back(cur);
        return;
    }
    // remaining slots can absorb any split of w
    std::uint32_t slots_left = n - static_cast<std::uint32_t>(cur.size());
    for (std::uint32_t len = 0; len <= w; ++len) {
        if (slots_left == 1 && len != w) continue;
        std::vector<std::uint32_t> word(len, 0);
        auto rec = [&](auto&& self, std::uint32_t pos) -> void {
            if (pos == len) {
                cur.push_back(word);
                enumerate_tuples(d, n, w - len, cur, out);
                cur.pop_back();
                return;
            }
            for (std::uint32_t c = 0; c < d; ++c) {
                word[pos] = c;
                self(self, pos + 1);
            }
        };
        rec(rec, 0);
    }
}

// Weight-w piece of the tensor-algebra nerve.
inline CyclicModule tensor_nerve(std::uint32_t p, std::uint32_t d, std::uint32_t w,
                                 std::uint32_t N) {
    TensorNerveBasis basis;
    basis.tuples.resize(N);
    basis.index.resize(N);
    for (std::uint32_t n = 1; n <= N; ++n) {
        std::vector<std::vector<std::uint32_t>> cur;
        enumerate_tuples(d, n, w, cur, basis.tuples[n - 1]);
        for (std::size_t i = 0; i < basis.tuples[n - 1].size(); ++i)
            basis.index[n - 1][basis.tuples[n - 1][i]] = i;
    }

    CyclicModule E(1, N);
    for (std::uint32_t n = 1; n <= N; ++n)
        E.set_level(n, FinAbGroup::elementary(Int(p), basis.tuples[n - 1].size()));

    // the image tuple under a fold-1 morphism: concatenate each fiber
    auto matrix_of = [&](const LambdaMor& f) {
        const auto& src = basis.tuples[f.src - 1];
        const auto& dst_index = basis.index[f.dst - 1];
        std::vector<std::vector<std::uint32_t>> fibers(f.dst);
        for (std::uint32_t v = 0; v < f.dst; ++v) fibers[v] = lambda_fiber(f, v);
        IntMat m(E.val(f.dst)->rank(), E.val(f.src)->rank());
        for (std::size_t s = 0; s < src.size(); ++s) {
            std::vector<std::vector<std::uint32_t>> img(f.dst);
            for (std::uint32_t v = 0; v < f.dst; ++v)
                for (auto y : fibers[v])
                    img[v].insert(img[v].end(), src[s][y].begin(), src[s][y].end());
            auto it = dst_index.find(img);
            assert(it != dst_index.end());
            m.at(it->second, s) = 1;
        }
        return GroupHom(E.val(f.src), E.val(f.dst), std::move(m));
    };

    for (std::uint32_t n = 1; n <= N; ++n) {
        E.set_cyc(n, matrix_of(lambda_cyc(n)));
        if (n >= 2)
            for (std::uint32_t j = 0; j < n; ++j)
                E.set_face(n, j, matrix_of(lambda_face(n - 1, j)));
        if (n < N)
            for (std::uint32_t j = 0; j < n; ++j)
                E.set_degen(n, j, matrix_of(lambda_degen(n, j)));
    }
    return E;
}

// ---------------------------------------------------------------------------
// Induced module along the embedding of the one-object groupoid Z/(n*l) at
// [n]: value at [m] is (M otimes Z[hom([n],[m])]) modulo the diagonal action
// g.(x otimes f) = (sigma x) otimes (f compose t^{-1}).  The action on the
// hom-set is free, so the value is a direct sum of copies of M indexed by
// orbit representatives (the lexicographically least morphism per orbit).

struct EShriek {
    CyclicModule mod;
    // per level m: orbit representative list and, for every enumerated
    // morphism index, the pair (rep index, twist j) with f = rep ∘ t^{-j}
    std::vector<std::vector<LambdaMor>> reps;
};

inline EShriek e_shriek(std::uint32_t n, const CyclicGroupModule& M, std::uint32_t l,
                        std::uint32_t N) {
    const std::uint64_t q = std::uint64_t(n) * l;
    {
        GroupHom pw = M.sigma;
        for (std::uint64_t k = 1; k < q; ++k) pw = compose(M.sigma, pw);
        assert(hom_equal(pw, GroupHom::identity(M.grp)));
    }
    std::vector<GroupHom> sig_pow{GroupHom::identity(M.grp)};
    for (std::uint64_t k = 1; k < q; ++k)
        sig_pow.push_back(compose(M.sigma, sig_pow.back()));

    EShriek out{CyclicModule(l, N), {}};
    out.reps.resize(N);

    struct LevelData {
        std::map<LambdaMor, std::pair<std::size_t, std::uint64_t>> where;
        DirectSum sum;
    };
    std::vector<LevelData> lv(N);

    for (std::uint32_t m = 1; m <= N; ++m) {
        auto homs = lambda_homs(n, m, l);
        auto& L = lv[m - 1];
        for (const auto& f : homs) {
            if (L.where.count(f)) continue;
            std::size_t r = out.reps[m - 1].size();
            out.reps[m - 1].push_back(f);
            for (std::uint64_t j = 0; j < q; ++j) {
                LambdaMor g = lambda_compose(f, lambda_rot(n, -long(j), l));
                auto ins = L.where.emplace(g, std::make_pair(r, j));
                assert(ins.second);  // the action is free
            }
        }
        std::vector<GroupPtr> parts(out.reps[m - 1].size(), M.grp);
        L.sum = direct_sum(parts);
        out.mod.set_level(m, L.sum.grp);
    }

    // Copies of M sit as contiguous coordinate blocks whenever the
    // concatenated torsion is a divisibility chain (always true for a single
    // torsion value); then the matrix can be assembled block by block.
    const std::size_t mr = M.grp->rank();
    auto blocky = [&](const DirectSum& ds) {
        if (ds.grp->rank() != ds.inj.size() * mr) return false;
        for (std::size_t s = 0; s < ds.inj.size(); ++s)
            for (std::size_t c = 0; c < mr; ++c)
                for (std::size_t r = 0; r < ds.grp->rank(); ++r) {
                    const Int& v = ds.inj[s].matrix().at(r, c);
                    if (v != ((r == s * mr + c) ? 1 : 0)) return false;
                }
        return true;
    };
    auto induced = [&](const LambdaMor& h) {
        const auto& src = lv[h.src - 1];
        const auto& dst = lv[h.dst - 1];
        const std::size_t nsrc = out.reps[h.src - 1].size();
        std::vector<std::pair<std::size_t, std::uint64_t>> route(nsrc);
        for (std::size_t s = 0; s < nsrc; ++s) {
            LambdaMor g = lambda_compose(h, out.reps[h.src - 1][s]);
            auto it = dst.where.find(g);
            assert(it != dst.where.end());
            route[s] = it->second;  // x at rep s |-> sigma^{-j} x at rep r
        }
        if (blocky(src.sum) && blocky(dst.sum)) {
            IntMat m(dst.sum.grp->rank(), src.sum.grp->rank());
            for (std::size_t s = 0; s < nsrc; ++s) {
                auto [r, j] = route[s];
                const IntMat& tw = sig_pow[(q - j) % q].matrix();
                for (std::size_t a = 0; a < mr; ++a)
                    for (std::size_t b = 0; b < mr; ++b)
                        m.at(r * mr + a, s * mr + b) = tw.at(a, b);
            }
            return GroupHom(src.sum.grp, dst.sum.grp, std::move(m));
        }
        GroupHom acc = GroupHom::zero(src.sum.grp, dst.sum.grp);
        for (std::size_t s = 0; s < nsrc; ++s) {
            auto [r, j] = route[s];
            const GroupHom& tw = sig_pow[(q - j) % q];
            acc = acc + compose(dst.sum.inj[r], compose(tw, src.sum.proj[s]));
        }
        return acc;
    };

    for (std::uint32_t m = 1; m <= N; ++m) {
        out.mod.set_cyc(m, induced(lambda_cyc(m, l)));
        if (m >= 2)
            for (std::uint32_t j = 0; j < m; ++j)
                out.mod.set_face(m, j, induced(lambda_face(m - 1, j, l)));
        if (m < N)
            for (std::uint32_t j = 0; j < m; ++j)
                out.mod.set_degen(m, j, induced(lambda_degen(m, j, l)));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Coinvariants along the projection from the l-fold category: level [m]
// modulo the residual Z/l generated by t^m.  Structure maps descend; descent
// is asserted.

inline CyclicModule pi_shriek(const CyclicModule& E) {
    CyclicModule out(1, E.maxlevel());
    std::vector<Quotient> quo(E.maxlevel());
    for (std::uint32_t m = 1; m <= E.maxlevel(); ++m) {
        GroupHom tm = GroupHom::identity(E.val(m));
        for (std::uint32_t k = 0; k < m; ++k) tm = compose(E.cyc(m), tm);
        GroupHom one_minus = GroupHom::identity(E.val(m)) - tm;
        quo[m - 1] = cokernel(one_minus);
        out.set_level(m, quo[m - 1].grp);
    }
    auto descend = [&](const GroupHom& h, std::uint32_t msrc, std::uint32_t mdst) {
        GroupHom d(quo[msrc - 1].grp, quo[mdst - 1].grp,
                   compose(quo[mdst - 1].proj, h).matrix() * quo[msrc - 1].section);
        assert(hom_equal(compose(d, quo[msrc - 1].proj), compose(quo[mdst - 1].proj, h)));
        return d;
    };
    for (std::uint32_t m = 1; m <= E.maxlevel(); ++m) {
        out.set_cyc(m, descend(E.cyc(m), m, m));
        if (m >= 2)
            for (std::uint32_t j = 0; j < m; ++j)
                out.set_face(m, j, descend(E.face(m, j), m, m - 1));
        if (m < E.maxlevel())
            for (std::uint32_t j = 0; j < m; ++j)
                out.set_degen(m, j, descend(E.degen(m, j), m, m + 1));
    }
    return out;
}

// Invariants along the same projection: level [m] is the kernel of 1 - t^m.
inline CyclicModule pi_star(const CyclicModule& E) {
    CyclicModule out(1, E.maxlevel());
    std::vector<Subgroup> sub(E.maxlevel());
    for (std::uint32_t m = 1; m <= E.maxlevel(); ++m) {
        GroupHom tm = GroupHom::identity(E.val(m));
        for (std::uint32_t k = 0; k < m; ++k) tm = compose(E.cyc(m), tm);
        sub[m - 1] = kernel(GroupHom::identity(E.val(m)) - tm);
        out.set_level(m, sub[m - 1].grp);
    }
    auto restrict_to = [&](const GroupHom& h, std::uint32_t msrc, std::uint32_t mdst) {
        // image of an invariant is invariant; express it in the kernel basis
        const Subgroup& s = sub[msrc - 1];
        const Subgroup& d = sub[mdst - 1];
        IntMat m(d.grp->rank(), s.grp->rank());
        for (std::size_t j = 0; j < s.grp->rank(); ++j) {
            Elem y = compose(h, s.incl)(s.grp->gen(j));
            auto x = preimage(d.incl, y);
            if (!x) throw std::logic_error("pi_star: image not invariant");
            m.set_col(j, *x);
        }
        return GroupHom(s.grp, d.grp, std::move(m));
    };
    for (std::uint32_t m = 1; m <= E.maxlevel(); ++m) {
        out.set_cyc(m, restrict_to(E.cyc(m), m, m));
        if (m >= 2)
            for (std::uint32_t j = 0; j < m; ++j)
                out.set_face(m, j, restrict_to(E.face(m, j), m, m - 1));
        if (m < E.maxlevel())
            for (std::uint32_t j = 0; j < m; ++j)
                out.set_degen(m, j, restrict_to(E.degen(m, j), m, m + 1));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Edgewise subdivision.  The l-fold subdivision of a fold-1 module E has
// level [n] equal to E's level [n*l]; its generators are the unrolled l-fold
// generators realized in E.  The subdivision chain map s_l collapses the
// tail: in chain degree q it is the morphism [l(q+1)] -> [q+1] that keeps
// slots 0..q-1 and multiplies everything from slot q onward into the last
// slot.

using Realizer = std::function<GroupHom(const LambdaMor&)>;

inline Realizer module_realizer(const CyclicModule& E) {
    return [&E](const LambdaMor& f) { return E.realize(f); };
}
inline Realizer nerve_realizer(const FinAlgebra& A, const CyclicModule& E) {
    return [&A, &E](const LambdaMor& f) {
        return nerve_matrix(A, f, E.val(f.src), E.val(f.dst));
    };
}

inline CyclicModule subdivide(const CyclicModule& E, std::uint32_t l, std::uint32_t N,
                              const Realizer& realize) {
    assert(E.fold() == 1 && N * l <= E.maxlevel());
    CyclicModule out(l, N);
    for (std::uint32_t n = 1; n <= N; ++n) out.set_level(n, E.val(n * l));
    for (std::uint32_t n = 1; n <= N; ++n) {
        out.set_cyc(n, realize(lambda_unroll(lambda_cyc(n, l))));
        if (n >= 2)
            for (std::uint32_t j = 0; j < n; ++j)
                out.set_face(n, j, realize(lambda_unroll(lambda_face(n - 1, j, l))));
        if (n < N)
            for (std::uint32_t j = 0; j < n; ++j)
                out.set_degen(n, j, realize(lambda_unroll(lambda_degen(n, j, l))));
    }
    return out;
}

// The collapsing morphism [l*m] -> [m] behind the subdivision chain map:
// project onto the last of the l blocks, lift(y) = max(0, y - (l-1)m).
// Commutes with every face and degeneracy across unrolling; the wrap
// conventions force the surviving block to sit at the end.
inline LambdaMor subdivision_collapse(std::uint32_t m, std::uint32_t l) {
    std::vector<std::uint32_t> steps(l * m, 0);
    for (std::uint32_t y = (l - 1) * m; y < l * m; ++y) steps[y] = 1;
    return LambdaMor::make(l * m, m, 1, 0, std::move(steps));
}

// Chain maps s_q : C_q(subdivided) -> C_q(E) for q < N.
inline std::vector<GroupHom> subdivision_chain_map(std::uint32_t l, std::uint32_t N,
                                                   const Realizer& realize) {
    std::vector<GroupHom> s;
    for (std::uint32_t q = 0; q < N; ++q)
        s.push_back(realize(subdivision_collapse(q + 1, l)));
    return s;
}

struct SubdivisionComparison {
    CyclicModule sub;
    std::vector<GroupHom> chain;  // s_q : C_q(sub) -> C_q(E), 0 <= q <= deg+1
    std::vector<GroupHom> on_hh;  // induced isomorphisms HH_i(sub) -> HH_i(E)
};

// Subdivide, collapse, and certify: the collapse maps form a chain map and
// induce isomorphisms on HH through the requested degree (throws otherwise).
inline SubdivisionComparison subdivision_quasiiso(const CyclicModule& E, std::uint32_t l,
                                                  std::uint32_t deg,
                                                  const Realizer& realize) {
    const std::uint32_t N = deg + 2;
    assert(std::uint64_t(N) * l <= E.maxlevel());
    SubdivisionComparison out{subdivide(E, l, N, realize),
                              subdivision_chain_map(l, N, realize),
                              {}};
    for (std::uint32_t q = 1; q < N; ++q) {
        GroupHom via_e = compose(E.boundary(q + 1), out.chain[q]);
        GroupHom via_sub = compose(out.chain[q - 1], out.sub.boundary(q + 1));
        if (!hom_equal(via_e, via_sub))
            throw std::logic_error("subdivision: collapse is not a chain map");
    }
    for (std::uint32_t i = 0; i <= deg; ++i) {
        GroupHom h = induced_map(out.sub.hh(i), E.hh(i), out.chain[i]);
        invert_iso(h);  // throws when not an isomorphism
        out.on_hh.push_back(std::move(h));
    }
    return out;
}

}  // namespace hwitt
