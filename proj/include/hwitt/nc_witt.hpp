#pragma once
// p-typical Witt vectors of an associative, not necessarily commutative,
// finite-dimensional F_p-algebra, realized level by level as finite abelian
// groups:
//
//   W_1(A)  = A/[A,A]   (quotient by the additive span of commutators),
//   Wt_{k+1} = A x W_k(A) as a set, with the carry group law
//       (a, b) + (a', b') = (a+a', b + b' - q_k(c_1(a,a'), ..., c_k(a,a'))),
//   W_{k+1}(A) = Wt_{k+1} / <(xy - yx, 0) : x, y in A>.
//
// Here q_k : A^k ->> W_k is the structural surjection
//   q_k(t_0, ..., t_{k-1}) = class(t_0, q_{k-1}(t_1, ..., t_{k-1})),
// and the carry words c_i are universal integer combinations of cyclic words
// in two letters, solved degree by degree from
//
//   (x+y)^{p^n} = x^{p^n} + y^{p^n} + sum_{i=1}^n p^i * c_i(x,y)^{p^{n-i}}
//
// in the free ring Z<x,y> modulo the Z-span of commutators; every division
// by p^i in the recursion is asserted exact.  Cyclic words are stored by
// their lexicographically least rotation, and the c_i keep those canonical
// representatives when evaluated in an algebra.
//
// V : W_k -> W_{k+1} is x -> class(0, x); R : W_{k+1} -> W_k is induced by
// (a, b) -> (a, R b).  Both are certified group homomorphisms.

#include <cassert>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <unordered_map>
#include <vector>

#include <hwitt/abelian.hpp>
#include <hwitt/fin_algebra.hpp>
#include <hwitt/witt_ring.hpp>

namespace hwitt {

// ---------------------------------------------------------------------------
// Cyclic words.

using Word = std::vector<std::uint32_t>;

inline Word min_rotation(const Word& w) {
    if (w.size() <= 1) return w;
    Word best = w;
    Word cur = w;
    for (std::size_t k = 1; k < w.size(); ++k) {
        std::rotate(cur.begin(), cur.begin() + 1, cur.end());
        if (cur < best) best = cur;
    }
    return best;
}

inline bool is_aperiodic(const Word& w) {
    for (std::size_t d = 1; d < w.size(); ++d) {
        if (w.size() % d != 0) continue;
        bool periodic = true;
        for (std::size_t i = d; i < w.size() && periodic; ++i)
            periodic = (w[i] == w[i - d]);
        if (periodic) return false;
    }
    return true;
}

// Canonical (lex-least, aperiodic) representatives of all aperiodic
// necklaces of the given length, in lexicographic order.
inline std::vector<Word> aperiodic_necklaces(std::uint32_t nletters,
                                             std::size_t len) {
    std::vector<Word> out;
    Word w(len, 0);
    for (;;) {
        if (is_aperiodic(w) && w == min_rotation(w)) out.push_back(w);
        std::size_t i = len;
        while (i > 0 && w[i - 1] + 1 == nletters) w[--i] = 0;
        if (i == 0) break;
        w[i - 1] += 1;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Polynomials in noncommuting variables with integer coefficients.

class NCPoly {
  public:
    NCPoly() = default;

    static NCPoly variable(std::uint32_t letter) {
        NCPoly f;
        f.terms_.emplace(Word{letter}, Int(1));
        return f;
    }

    const std::map<Word, Int>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool operator==(const NCPoly& o) const { return terms_ == o.terms_; }
    bool operator!=(const NCPoly& o) const { return !(*this == o); }

    NCPoly operator+(const NCPoly& o) const {
        NCPoly r = *this;
        for (const auto& [w, c] : o.terms_) r.bump(w, c);
        return r;
    }
    NCPoly operator-(const NCPoly& o) const {
        NCPoly r = *this;
        for (const auto& [w, c] : o.terms_) r.bump(w, -c);
        return r;
    }
    NCPoly operator*(const NCPoly& o) const {
        NCPoly r;
        for (const auto& [wa, ca] : terms_) {
            for (const auto& [wb, cb] : o.terms_) {
                Word w = wa;
                w.insert(w.end(), wb.begin(), wb.end());
                r.bump(w, ca * cb);
            }
        }
        return r;
    }
    NCPoly scaled(const Int& c) const {
        NCPoly r;
        if (c == 0) return r;
        for (const auto& [w, k] : terms_) r.terms_.emplace(w, k * c);
        return r;
    }
    NCPoly pow(std::size_t k) const {
        NCPoly r;
        r.terms_.emplace(Word{}, Int(1));
        NCPoly base = *this;
        while (k > 0) {
            if (k & 1u) r = r * base;
            k >>= 1;
            if (k > 0) base = base * base;
        }
        return r;
    }
    NCPoly divexact(const Int& d) const {
        assert(d != 0);
        NCPoly r;
        for (const auto& [w, c] : terms_) {
            Int q, rem;
            mpz_tdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), c.get_mpz_t(),
                        d.get_mpz_t());
            assert(rem == 0 && "inexact coefficient division");
            r.terms_.emplace(w, std::move(q));
        }
        return r;
    }

    // Image in the quotient by the span of commutators: every word is
    // replaced by the lex-least rotation of its necklace.
    NCPoly cyc_reduce() const {
        NCPoly r;
        for (const auto& [w, c] : terms_) r.bump(min_rotation(w), c);
        return r;
    }

    void bump(const Word& w, Int c) {
        if (c == 0) return;
        auto it = terms_.find(w);
        if (it == terms_.end()) {
            terms_.emplace(w, std::move(c));
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

  private:
    std::map<Word, Int> terms_;
};

// Carry words c_1, ..., c_nmax (returned with c_i at index i-1).  Solved from
// the defining identity in the commutator quotient; c_i is supported on
// canonical representatives of mixed aperiodic necklaces of length p^i.
inline std::vector<NCPoly> carry_words(std::uint32_t p, std::uint32_t nmax) {
    NCPoly x = NCPoly::variable(0);
    NCPoly y = NCPoly::variable(1);
    NCPoly s = x + y;
    std::vector<NCPoly> c;
    for (std::uint32_t n = 1; n <= nmax; ++n) {
        std::size_t pn = 1;
        for (std::uint32_t k = 0; k < n; ++k) pn *= p;
        NCPoly lhs = (s.pow(pn) - x.pow(pn) - y.pow(pn)).cyc_reduce();
        for (std::uint32_t i = 1; i < n; ++i) {
            std::size_t pe = 1;
            for (std::uint32_t k = 0; k < n - i; ++k) pe *= p;
            lhs = lhs - c[i - 1].pow(pe).cyc_reduce().scaled(int_pow(p, i));
        }
        c.push_back(lhs.divexact(int_pow(p, n)).cyc_reduce());
    }
    return c;
}

// Evaluation at a pair of algebra elements (letter 0 -> a, letter 1 -> b).
inline AlgElem nc_eval2(const FinAlgebra& A, const NCPoly& f, const AlgElem& a,
                        const AlgElem& b) {
    AlgElem total = A.zero();
    for (const auto& [w, c] : f.terms()) {
        std::uint32_t cm =
            static_cast<std::uint32_t>(mpz_fdiv_ui(c.get_mpz_t(), A.p));
        if (cm == 0) continue;
        AlgElem t = A.smul(cm, A.unit);
        for (std::uint32_t letter : w) t = A.mul(t, letter == 0 ? a : b);
        total = A.add(total, t);
    }
    return total;
}

// ---------------------------------------------------------------------------
// Commutator quotient A -> A/[A,A] as abelian groups.

inline Elem alg_coords(const AlgElem& a) {
    Elem e(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) e[i] = Int(a[i]);
    return e;
}

inline Quotient commutator_quotient(const FinAlgebra& A) {
    GroupPtr amb = FinAbGroup::elementary(Int(A.p), A.dim);
    IntMat cols(A.dim, A.dim * A.dim);
    for (std::size_t i = 0; i < A.dim; ++i) {
        for (std::size_t j = 0; j < A.dim; ++j) {
            AlgElem comm = A.sub(A.mul(A.basis_elem(i), A.basis_elem(j)),
                                 A.mul(A.basis_elem(j), A.basis_elem(i)));
            cols.set_col(i * A.dim + j, alg_coords(comm));
        }
    }
    return quotient_by(amb, cols);
}

// ---------------------------------------------------------------------------
// Presentation of a finite abelian group given by a black-box operation on
// set indices.  Builds the subgroup chain <g_0>, <g_0, g_1>, ... recording
// for every element one coordinate vector over the generators, and presents
// the group by the relative-order relations m_t e_t = (coords of m_t g_t).

struct BlackboxGroup {
    GroupPtr grp;
    std::vector<Elem> class_of;      // set index -> group element
    std::vector<std::size_t> rep;    // element index (enumeration order) -> set index
};

inline std::size_t ab_order(const FinAbGroup& g) {
    std::size_t n = 1;
    for (const auto& d : g.torsion()) n *= d.get_ui();
    return n;
}

// Index of an element in the all_elements() enumeration (first torsion
// coordinate fastest).
inline std::size_t ab_elem_index(const FinAbGroup& g, const Elem& x) {
    Elem r = g.reduce(x);
    std::size_t idx = 0, mult = 1;
    for (std::size_t i = 0; i < g.torsion().size(); ++i) {
        idx += mult * r[i].get_ui();
        mult *= g.torsion()[i].get_ui();
    }
    return idx;
}

template <class Op>
inline BlackboxGroup blackbox_present(std::size_t size, std::size_t id_index,
                                      const std::vector<std::size_t>& gens,
                                      Op&& op) {
    const std::size_t k = gens.size();
    std::unordered_map<std::size_t, Elem> coords;
    coords.emplace(id_index, Elem(k, 0));
    IntMat rels(k, k);
    for (std::size_t t = 0; t < k; ++t) {
        std::size_t g = gens[t];
        std::size_t cur = g;
        std::size_t m = 1;
        while (coords.find(cur) == coords.end()) {
            cur = op(cur, g);
            ++m;
        }
        const Elem base = coords.at(cur);
        for (std::size_t i = 0; i < k; ++i)
            rels.at(i, t) = (i == t ? Int(m) : Int(0)) - base[i];
        std::vector<std::pair<std::size_t, Elem>> snap(coords.begin(),
                                                       coords.end());
        std::size_t acc = id_index;
        for (std::size_t j = 1; j < m; ++j) {
            acc = op(acc, g);
            for (const auto& [h, c] : snap) {
                Elem nc = c;
                nc[t] += Int(j);
                coords.emplace(op(acc, h), std::move(nc));
            }
        }
    }
    assert(coords.size() == size && "generators do not span the group");
    Quotient q = quotient_by(FinAbGroup::free_group(k), rels);
    BlackboxGroup bb;
    bb.grp = q.grp;
    bb.class_of.assign(size, Elem());
    bb.rep.assign(ab_order(*q.grp), static_cast<std::size_t>(-1));
    for (const auto& [idx, c] : coords) {
        Elem e = q.proj(c);
        std::size_t ei = ab_elem_index(*q.grp, e);
        if (bb.rep[ei] == static_cast<std::size_t>(-1)) bb.rep[ei] = idx;
        bb.class_of[idx] = std::move(e);
    }
    assert(ab_order(*q.grp) == size);
    return bb;
}

// ---------------------------------------------------------------------------
// The Witt tower of an associative algebra.

struct HWittLevel {
    GroupPtr group;                       // W_k
    std::vector<Elem> class_of;           // set index -> element of W_k
    std::vector<std::size_t> rep;         // element index -> set index
    std::vector<std::vector<Elem>> corr;  // carry corrections (k >= 2), |A|^2
    GroupHom V;  // W_{k-1} -> W_k for k >= 2, else zero hom
    GroupHom R;  // W_k -> W_{k-1} for k >= 2, else zero hom
};

// Level-k set: k = 1 is A itself (index = algebra element index); k >= 2 is
// A x W_{k-1} with index a_idx * |W_{k-1}| + w_idx.
struct HWittGroup {
    FinAlgebra algebra;
    std::uint32_t n = 1;
    std::vector<NCPoly> carries;     // c_1, ..., c_{n-1}
    std::vector<HWittLevel> levels;  // levels[k-1] describes W_k

    const GroupPtr& group_at(std::uint32_t k) const {
        assert(k >= 1 && k <= n);
        return levels[k - 1].group;
    }
    const GroupPtr& group() const { return levels.back().group; }
    const GroupHom& V_map(std::uint32_t k) const {  // W_{k-1} -> W_k
        assert(k >= 2 && k <= n);
        return levels[k - 1].V;
    }
    const GroupHom& R_map(std::uint32_t k) const {  // W_k -> W_{k-1}
        assert(k >= 2 && k <= n);
        return levels[k - 1].R;
    }

    std::size_t pair_index(std::uint32_t k, std::size_t a_idx,
                           const Elem& w) const {
        assert(k >= 2);
        const auto& prev = *levels[k - 2].group;
        return a_idx * ab_order(prev) + ab_elem_index(prev, w);
    }

    // Pair addition in A x W_{k-1} (the set underlying W_k), k >= 2.
    std::pair<AlgElem, Elem> pair_add(std::uint32_t k,
                                      const std::pair<AlgElem, Elem>& x,
                                      const std::pair<AlgElem, Elem>& y) const {
        assert(k >= 2);
        const auto& prev = *levels[k - 2].group;
        const auto& corr =
            levels[k - 1].corr[alg_elem_index(algebra, x.first)]
                              [alg_elem_index(algebra, y.first)];
        Elem w = prev.reduce(prev.sub(prev.add(x.second, y.second), corr));
        return {algebra.add(x.first, y.first), std::move(w)};
    }

    // Class of a set-level pair in W_k.
    Elem pair_class(std::uint32_t k, const AlgElem& a, const Elem& w) const {
        assert(k >= 2);
        return levels[k - 1]
            .class_of[pair_index(k, alg_elem_index(algebra, a), w)];
    }

    // Structural surjection q_k : A^k -> W_k.
    Elem q_map(const std::vector<AlgElem>& tuple) const {
        const std::uint32_t k = static_cast<std::uint32_t>(tuple.size());
        assert(k >= 1 && k <= n);
        Elem w = levels[0].class_of[alg_elem_index(algebra, tuple[k - 1])];
        for (std::uint32_t lvl = 2; lvl <= k; ++lvl)
            w = pair_class(lvl, tuple[k - lvl], w);
        return w;
    }
};

inline HWittGroup hess_witt(const FinAlgebra& A, std::uint32_t n) {
    assert(n >= 1);
    HWittGroup W;
    W.algebra = A;
    W.n = n;
    if (n >= 2) W.carries = carry_words(A.p, n - 1);

    const std::size_t asz = alg_order(A);

    // Level 1: A/[A,A].
    {
        Quotient q1 = commutator_quotient(A);
        HWittLevel lv;
        lv.group = q1.grp;
        lv.class_of.resize(asz);
        lv.rep.assign(ab_order(*q1.grp), static_cast<std::size_t>(-1));
        for (std::size_t i = 0; i < asz; ++i) {
            Elem e = q1.proj(alg_coords(alg_elem_at(A, i)));
            std::size_t ei = ab_elem_index(*q1.grp, e);
            if (lv.rep[ei] == static_cast<std::size_t>(-1)) lv.rep[ei] = i;
            lv.class_of[i] = std::move(e);
        }
        lv.V = GroupHom::zero(FinAbGroup::zero(), lv.group);
        lv.R = GroupHom::zero(lv.group, FinAbGroup::zero());
        W.levels.push_back(std::move(lv));
    }

    for (std::uint32_t k = 2; k <= n; ++k) {
        const auto& prevlv = W.levels[k - 2];
        const GroupPtr& prev = prevlv.group;
        const std::size_t psz = ab_order(*prev);
        const std::size_t size = asz * psz;

        HWittLevel lv;

        // Carry corrections q_{k-1}(c_1(a,b), ..., c_{k-1}(a,b)).
        lv.corr.assign(asz, std::vector<Elem>(asz));
        for (std::size_t ia = 0; ia < asz; ++ia) {
            AlgElem a = alg_elem_at(A, ia);
            for (std::size_t ib = 0; ib < asz; ++ib) {
                AlgElem b = alg_elem_at(A, ib);
                std::vector<AlgElem> cvec(k - 1);
                for (std::uint32_t i = 1; i < k; ++i)
                    cvec[i - 1] = nc_eval2(A, W.carries[i - 1], a, b);
                lv.corr[ia][ib] = W.q_map(cvec);
            }
        }

        auto unpack = [&](std::size_t idx) {
            return std::pair<std::size_t, std::size_t>{idx / psz, idx % psz};
        };
        std::vector<Elem> prev_elems = prev->all_elements();
        auto op = [&](std::size_t xi, std::size_t yi) {
            auto [ax, wx] = unpack(xi);
            auto [ay, wy] = unpack(yi);
            Elem w = prev->reduce(prev->sub(
                prev->add(prev_elems[wx], prev_elems[wy]), lv.corr[ax][ay]));
            AlgElem a = A.add(alg_elem_at(A, ax), alg_elem_at(A, ay));
            return alg_elem_index(A, a) * psz + ab_elem_index(*prev, w);
        };

        std::vector<std::size_t> gens;
        for (std::size_t i = 0; i < A.dim; ++i) {
            AlgElem e = A.basis_elem(i);
            gens.push_back(alg_elem_index(A, e) * psz);
        }
        for (std::size_t j = 0; j < prev->rank(); ++j)
            gens.push_back(ab_elem_index(*prev, prev->gen(j)));

        BlackboxGroup bb = blackbox_present(size, 0, gens, op);

        // Kill the classes of (xy - yx, 0) over all pairs x, y in A.
        std::set<Elem> dset;
        for (std::size_t ix = 0; ix < asz; ++ix) {
            AlgElem x = alg_elem_at(A, ix);
            for (std::size_t iy = 0; iy < asz; ++iy) {
                AlgElem y = alg_elem_at(A, iy);
                AlgElem comm = A.sub(A.mul(x, y), A.mul(y, x));
                dset.insert(bb.class_of[alg_elem_index(A, comm) * psz]);
            }
        }
        IntMat dcols(bb.grp->rank(), dset.size());
        std::size_t col = 0;
        for (const auto& e : dset) dcols.set_col(col++, e);
        Quotient qd = quotient_by(bb.grp, dcols);

        lv.group = qd.grp;
        lv.class_of.resize(size);
        lv.rep.assign(ab_order(*qd.grp), static_cast<std::size_t>(-1));
        for (std::size_t i = 0; i < size; ++i) {
            Elem e = qd.proj(bb.class_of[i]);
            std::size_t ei = ab_elem_index(*qd.grp, e);
            if (lv.rep[ei] == static_cast<std::size_t>(-1)) lv.rep[ei] = i;
            lv.class_of[i] = std::move(e);
        }

        // V : W_{k-1} -> W_k, x -> class(0, x).
        {
            std::vector<Elem> images;
            for (std::size_t j = 0; j < prev->rank(); ++j)
                images.push_back(
                    lv.class_of[ab_elem_index(*prev, prev->gen(j))]);
            lv.V = GroupHom::from_gen_images(prev, lv.group, images);
            assert(lv.V.well_defined());
        }

        // R : W_k -> W_{k-1}, induced by (a, w) -> (a, R w).
        {
            std::vector<Elem> images;
            for (std::size_t j = 0; j < lv.group->rank(); ++j) {
                std::size_t pr = lv.rep[ab_elem_index(*lv.group,
                                                      lv.group->gen(j))];
                std::size_t ai = pr / psz, wi = pr % psz;
                if (k == 2) {
                    images.push_back(prevlv.class_of[ai]);
                } else {
                    const auto& prevprev = *W.levels[k - 3].group;
                    Elem rw = prevlv.R(prev_elems[wi]);
                    images.push_back(
                        prevlv.class_of[ai * ab_order(prevprev) +
                                        ab_elem_index(prevprev, rw)]);
                }
            }
            lv.R = GroupHom::from_gen_images(lv.group, prev, images);
            assert(lv.R.well_defined());
        }

        W.levels.push_back(std::move(lv));
    }
    return W;
}

// ---------------------------------------------------------------------------
// Ghost components w_i(t) = sum_{j <= i} p^j t_j^{p^{i-j}} of a coordinate
// tuple, computed in A and projected to A/[A,A].

inline std::vector<Elem> nc_ghost(const FinAlgebra& A, const Quotient& commq,
                                  const std::vector<AlgElem>& tuple) {
    std::vector<Elem> w(tuple.size());
    for (std::size_t i = 0; i < tuple.size(); ++i) {
        AlgElem acc = A.zero();
        for (std::size_t j = 0; j <= i; ++j) {
            std::uint32_t pe = 1;
            for (std::size_t kk = 0; kk < i - j; ++kk) pe *= A.p;
            std::uint32_t coef = static_cast<std::uint32_t>(
                mpz_fdiv_ui(int_pow(A.p, static_cast<std::uint32_t>(j))
                                .get_mpz_t(),
                            A.p));
            acc = A.add(acc, A.smul(coef, alg_pow(A, tuple[j], pe)));
        }
        w[i] = commq.grp->reduce(commq.proj(alg_coords(acc)));
    }
    return w;
}

// ---------------------------------------------------------------------------
// Connecting values out of degree-one Hochschild cycles.  For a 1-chain
// z = sum lambda_ij e_i (x) e_j with b(z) = sum lambda_ij [e_i, e_j] = 0, the
// set-level sum of the pairs ([e_i, e_j], 0) in A x W_{n-1} has first
// component b(z) = 0; its second component is the connecting value.  The
// returned list collects the values over all 1-cycles (coefficients in
// 0..p-1); their set equals the kernel of V : W_{n-1} -> W_n.

inline std::vector<Elem> hess_boundary_values(const HWittGroup& W) {
    assert(W.n >= 2);
    const FinAlgebra& A = W.algebra;
    const auto& prev = *W.levels[W.n - 2].group;
    const std::size_t nn = A.dim * A.dim;
    std::vector<AlgElem> comm(nn);
    for (std::size_t i = 0; i < A.dim; ++i)
        for (std::size_t j = 0; j < A.dim; ++j)
            comm[i * A.dim + j] = A.sub(A.mul(A.basis_elem(i), A.basis_elem(j)),
                                        A.mul(A.basis_elem(j), A.basis_elem(i)));
    std::vector<Elem> values;
    std::vector<std::uint32_t> lam(nn, 0);
    for (;;) {
        AlgElem bz = A.zero();
        for (std::size_t t = 0; t < nn; ++t)
            bz = A.add(bz, A.smul(lam[t], comm[t]));
        if (A.is_zero(bz)) {
            std::pair<AlgElem, Elem> acc{A.zero(), prev.zero_elem()};
            for (std::size_t t = 0; t < nn; ++t)
                for (std::uint32_t rep = 0; rep < lam[t]; ++rep)
                    acc = W.pair_add(W.n, acc, {comm[t], prev.zero_elem()});
            assert(A.is_zero(acc.first));
            values.push_back(acc.second);
        }
        std::size_t i = 0;
        while (i < nn) {
            lam[i] += 1;
            if (lam[i] < A.p) break;
            lam[i] = 0;
            ++i;
        }
        if (i == nn) break;
    }
    return values;
}

}  // namespace hwitt
