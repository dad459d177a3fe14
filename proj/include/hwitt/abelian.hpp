#pragma once

// Finitely generated abelian groups in canonical form (ascending torsion
// divisors, then free rank), homomorphisms in canonical coordinates, and the
// kernel / image / cokernel / homology machinery on top.  Groups remember the
// change of basis from their defining presentation, so elements given in
// presentation coordinates can be moved both ways.

#include <algorithm>
#include <cassert>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "fpmat.hpp"
#include "intmat.hpp"

namespace hwitt {

using Elem = std::vector<Int>;

class FinAbGroup;
using GroupPtr = std::shared_ptr<const FinAbGroup>;

class FinAbGroup {
public:
    // Z^ngens modulo the column span of rels (ngens x k, any k).
    static GroupPtr from_presentation(std::size_t ngens, const IntMat& rels) {
        assert(rels.rows() == ngens || (ngens == 0 && rels.rows() == 0));
        auto g = std::make_shared<FinAbGroup>();
        g->ngens_ = ngens;
        SmithForm f = smith_normal_form(rels);

        std::vector<std::size_t> kept;
        for (std::size_t i = 0; i < f.rank; ++i)
            if (f.divisors[i] > 1) {
                kept.push_back(i);
                g->torsion_.push_back(f.divisors[i]);
            }
        for (std::size_t i = f.rank; i < ngens; ++i) kept.push_back(i);
        g->free_rank_ = ngens - f.rank;

        g->to_can_ = IntMat(kept.size(), ngens);
        g->from_can_ = IntMat(ngens, kept.size());
        for (std::size_t r = 0; r < kept.size(); ++r)
            for (std::size_t j = 0; j < ngens; ++j) {
                g->to_can_.at(r, j) = f.u.at(kept[r], j);
                g->from_can_.at(j, r) = f.uinv.at(j, kept[r]);
            }
        return g;
    }

    static GroupPtr elementary(const std::vector<Int>& orders) {
        // Orders already forming a divisibility chain (d_i > 1, d_i | d_{i+1})
        // are their own canonical form; skip the Smith pass, which matters for
        // the multi-hundred-generator groups produced by algebra nerves.
        bool chain = true;
        for (std::size_t i = 0; i < orders.size() && chain; ++i) {
            if (orders[i] <= 1) chain = false;
            else if (i + 1 < orders.size() && orders[i + 1] % orders[i] != 0) chain = false;
        }
        if (chain) {
            auto g = std::make_shared<FinAbGroup>();
            g->ngens_ = orders.size();
            g->torsion_ = orders;
            g->free_rank_ = 0;
            g->to_can_ = IntMat::identity(orders.size());
            g->from_can_ = IntMat::identity(orders.size());
            return g;
        }
        return from_presentation(orders.size(), IntMat::diagonal(orders));
    }
    static GroupPtr elementary(const Int& order, std::size_t copies) {
        return elementary(std::vector<Int>(copies, order));
    }
    static GroupPtr free_group(std::size_t rank) {
        return from_presentation(rank, IntMat(rank, 0));
    }
    static GroupPtr zero() { return from_presentation(0, IntMat(0, 0)); }

    std::size_t ngens() const { return ngens_; }  // presentation generators
    std::size_t rank() const { return torsion_.size() + free_rank_; }
    std::size_t torsion_count() const { return torsion_.size(); }
    std::size_t free_rank() const { return free_rank_; }
    const std::vector<Int>& torsion() const { return torsion_; }
    const IntMat& to_can() const { return to_can_; }
    const IntMat& from_can() const { return from_can_; }

    bool is_trivial() const { return rank() == 0; }
    bool is_finite() const { return free_rank_ == 0; }
    Int order() const {
        assert(is_finite());
        Int n = 1;
        for (const auto& d : torsion_) n *= d;
        return n;
    }

    // Exponent-p elementary abelian, eligible for the F_p fast path.
    bool is_elementary_p(std::uint32_t p) const {
        if (free_rank_ != 0) return false;
        for (const auto& d : torsion_)
            if (d != p) return false;
        return true;
    }

    Elem reduce(Elem x) const {
        assert(x.size() == rank());
        for (std::size_t i = 0; i < torsion_.size(); ++i)
            mpz_fdiv_r(x[i].get_mpz_t(), x[i].get_mpz_t(), torsion_[i].get_mpz_t());
        return x;
    }
    Elem zero_elem() const { return Elem(rank(), 0); }
    bool is_zero(const Elem& x) const {
        Elem r = reduce(x);
        for (const auto& c : r)
            if (c != 0) return false;
        return true;
    }
    bool equal(const Elem& a, const Elem& b) const { return reduce(a) == reduce(b); }

    Elem add(const Elem& a, const Elem& b) const {
        assert(a.size() == rank() && b.size() == rank());
        Elem c(rank());
        for (std::size_t i = 0; i < rank(); ++i) c[i] = a[i] + b[i];
        return reduce(std::move(c));
    }
    Elem sub(const Elem& a, const Elem& b) const {
        Elem c(rank());
        for (std::size_t i = 0; i < rank(); ++i) c[i] = a[i] - b[i];
        return reduce(std::move(c));
    }
    Elem neg(const Elem& a) const {
        Elem c(rank());
        for (std::size_t i = 0; i < rank(); ++i) c[i] = -a[i];
        return reduce(std::move(c));
    }
    Elem smul(const Int& c, const Elem& a) const {
        Elem r(rank());
        for (std::size_t i = 0; i < rank(); ++i) r[i] = c * a[i];
        return reduce(std::move(r));
    }
    Elem gen(std::size_t i) const {
        Elem e = zero_elem();
        e[i] = 1;
        return e;
    }

    Elem to_canonical(const Elem& pres_coords) const {
        return reduce(to_can_.apply(pres_coords));
    }
    Elem from_canonical(const Elem& can_coords) const {
        return from_can_.apply(can_coords);
    }

    // All elements, torsion coordinates counting up, free rank must be 0.
    std::vector<Elem> all_elements() const {
        assert(is_finite());
        std::vector<Elem> out;
        Elem cur = zero_elem();
        for (;;) {
            out.push_back(cur);
            std::size_t i = 0;
            while (i < torsion_.size()) {
                cur[i] += 1;
                if (cur[i] < torsion_[i]) break;
                cur[i] = 0;
                ++i;
            }
            if (i == torsion_.size()) break;
        }
        if (torsion_.empty()) out.resize(1);
        return out;
    }

    std::string str() const {
        if (is_trivial()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& d : torsion_) {
            os << (first ? "" : " + ") << "Z/" << d.get_str();
            first = false;
        }
        if (free_rank_ > 0) {
            os << (first ? "" : " + ") << "Z";
            if (free_rank_ > 1) os << "^" << free_rank_;
        }
        return os.str();
    }

    // Relation columns in canonical coordinates: d_i * e_i per torsion coord.
    IntMat relation_cols() const {
        IntMat r(rank(), torsion_.size());
        for (std::size_t i = 0; i < torsion_.size(); ++i) r.at(i, i) = torsion_[i];
        return r;
    }

private:
    std::size_t ngens_ = 0;
    std::vector<Int> torsion_;
    std::size_t free_rank_ = 0;
    IntMat to_can_, from_can_;
};

class GroupHom {
public:
    GroupHom() = default;
    // m maps canonical coordinates of src to canonical coordinates of dst.
    GroupHom(GroupPtr src, GroupPtr dst, IntMat m)
        : src_(std::move(src)), dst_(std::move(dst)), m_(std::move(m)) {
        assert(m_.rows() == dst_->rank() && m_.cols() == src_->rank());
    }

    static GroupHom identity(const GroupPtr& g) {
        return GroupHom(g, g, IntMat::identity(g->rank()));
    }
    static GroupHom zero(const GroupPtr& src, const GroupPtr& dst) {
        return GroupHom(src, dst, IntMat(dst->rank(), src->rank()));
    }
    static GroupHom from_gen_images(const GroupPtr& src, const GroupPtr& dst,
                                    const std::vector<Elem>& images) {
        assert(images.size() == src->rank());
        IntMat m(dst->rank(), src->rank());
        for (std::size_t j = 0; j < images.size(); ++j) m.set_col(j, images[j]);
        return GroupHom(src, dst, std::move(m));
    }

    const GroupPtr& src() const { return src_; }
    const GroupPtr& dst() const { return dst_; }
    const IntMat& matrix() const { return m_; }

    Elem operator()(const Elem& x) const { return dst_->reduce(m_.apply(x)); }

    bool well_defined() const {
        for (std::size_t i = 0; i < src_->torsion_count(); ++i) {
            Elem img = m_.col(i);
            if (!dst_->is_zero(dst_->smul(src_->torsion()[i], img))) return false;
        }
        return true;
    }

    bool is_zero_hom() const {
        for (std::size_t j = 0; j < m_.cols(); ++j)
            if (!dst_->is_zero(m_.col(j))) return false;
        return true;
    }

    GroupHom operator+(const GroupHom& o) const {
        return GroupHom(src_, dst_, m_ + o.m_);
    }
    GroupHom operator-(const GroupHom& o) const {
        return GroupHom(src_, dst_, m_ - o.m_);
    }
    GroupHom operator-() const { return GroupHom(src_, dst_, -m_); }
    GroupHom scaled(const Int& c) const { return GroupHom(src_, dst_, m_.scaled(c)); }

    friend GroupHom compose(const GroupHom& f, const GroupHom& g) {
        // f after g
        assert(f.src_.get() == g.dst_.get());
        return GroupHom(g.src_, f.dst_, f.m_ * g.m_);
    }

    friend bool hom_equal(const GroupHom& a, const GroupHom& b) {
        if (a.src_->rank() != b.src_->rank() || a.dst_.get() != b.dst_.get())
            return false;
        for (std::size_t j = 0; j < a.m_.cols(); ++j)
            if (!a.dst_->equal(a.m_.col(j), b.m_.col(j))) return false;
        return true;
    }

private:
    GroupPtr src_, dst_;
    IntMat m_;
};

struct Subgroup {
    GroupPtr grp;
    GroupHom incl;  // grp -> ambient
};

struct Quotient {
    GroupPtr grp;
    GroupHom proj;     // ambient -> grp
    IntMat section;    // grp canonical -> ambient canonical, proj∘section = id
    Elem lift(const Elem& cls) const { return section.apply(cls); }
};

// One x with h(x) = y, or nullopt.  Solves over Z against the relation
// lattice of the target.
inline std::optional<Elem> preimage(const GroupHom& h, const Elem& y) {
    const auto& dst = *h.dst();
    IntMat a = h.matrix().hstack(dst.relation_cols());
    auto z = solve(a, y);
    if (!z) return std::nullopt;
    Elem x(z->begin(), z->begin() + h.src()->rank());
    return h.src()->reduce(std::move(x));
}

// Subgroup of g generated by the columns of gens (in canonical coordinates).
inline Subgroup subgroup_from_generators(const GroupPtr& g, const IntMat& gens) {
    assert(gens.rows() == g->rank());
    const std::size_t k = gens.cols();
    IntMat a = gens.hstack(g->relation_cols());
    IntMat full_ker = kernel_basis(smith_normal_form(a));
    IntMat rels(k, full_ker.cols());
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < full_ker.cols(); ++j)
            rels.at(i, j) = full_ker.at(i, j);
    GroupPtr s = FinAbGroup::from_presentation(k, rels);
    IntMat incl_m = gens * s->from_can();
    return Subgroup{s, GroupHom(s, g, std::move(incl_m))};
}

inline Subgroup kernel(const GroupHom& h) {
    const auto& src = *h.src();
    IntMat a = h.matrix().hstack(h.dst()->relation_cols());
    IntMat full_ker = kernel_basis(smith_normal_form(a));
    IntMat gens(src.rank(), full_ker.cols());
    for (std::size_t i = 0; i < src.rank(); ++i)
        for (std::size_t j = 0; j < full_ker.cols(); ++j)
            gens.at(i, j) = full_ker.at(i, j);
    return subgroup_from_generators(h.src(), gens);
}

inline Subgroup image(const GroupHom& h) {
    return subgroup_from_generators(h.dst(), h.matrix());
}

// g modulo the subgroup generated by the columns of gens.
inline Quotient quotient_by(const GroupPtr& g, const IntMat& gens) {
    assert(gens.rows() == g->rank());
    IntMat rels = gens.hstack(g->relation_cols());
    GroupPtr q = FinAbGroup::from_presentation(g->rank(), rels);
    GroupHom proj(g, q, q->to_can());
    return Quotient{q, std::move(proj), q->from_can()};
}

inline Quotient cokernel(const GroupHom& h) { return quotient_by(h.dst(), h.matrix()); }

// Does the subgroup generated by gens contain x?
inline bool subgroup_contains(const GroupPtr& g, const IntMat& gens, const Elem& x) {
    IntMat a = gens.hstack(g->relation_cols());
    return solve(a, x).has_value();
}

inline bool subgroups_equal(const Subgroup& a, const Subgroup& b) {
    assert(a.incl.dst().get() == b.incl.dst().get());
    if (!a.grp->is_finite() || !b.grp->is_finite())
        throw std::logic_error("subgroups_equal: finite case only");
    if (a.grp->order() != b.grp->order()) return false;
    const GroupPtr& amb = a.incl.dst();
    for (std::size_t j = 0; j < a.grp->rank(); ++j)
        if (!subgroup_contains(amb, b.incl.matrix(), a.incl.matrix().col(j)))
            return false;
    return true;
}

// Finite direct sum with the canonical injections and projections.
// proj[s] ∘ inj[t] = delta_{st} id and sum inj[s] ∘ proj[s] = id.
struct DirectSum {
    GroupPtr grp;
    std::vector<GroupHom> inj;   // parts[s] -> grp
    std::vector<GroupHom> proj;  // grp -> parts[s]
};

inline DirectSum direct_sum(const std::vector<GroupPtr>& parts) {
    std::size_t total = 0;
    std::vector<Int> orders;
    bool all_finite = true;
    for (const auto& g : parts) {
        total += g->rank();
        if (!g->is_finite()) all_finite = false;
        for (const auto& d : g->torsion()) orders.push_back(d);
    }
    bool chain = all_finite;
    for (std::size_t i = 0; i + 1 < orders.size() && chain; ++i)
        if (orders[i + 1] % orders[i] != 0) chain = false;

    GroupPtr d;
    if (chain && all_finite) {
        d = FinAbGroup::elementary(orders);  // concatenation is the canonical form
    } else {
        std::size_t relcols = 0;
        for (const auto& g : parts) relcols += g->torsion_count();
        IntMat rels(total, relcols);
        std::size_t ro = 0, co = 0;
        for (const auto& g : parts) {
            for (std::size_t i = 0; i < g->torsion_count(); ++i)
                rels.at(ro + i, co + i) = g->torsion()[i];
            ro += g->rank();
            co += g->torsion_count();
        }
        d = FinAbGroup::from_presentation(total, rels);
    }

    DirectSum out;
    out.grp = d;
    std::size_t off = 0;
    for (const auto& g : parts) {
        IntMat im(d->rank(), g->rank());
        IntMat pm(g->rank(), d->rank());
        for (std::size_t r = 0; r < d->rank(); ++r)
            for (std::size_t c = 0; c < g->rank(); ++c) {
                im.at(r, c) = d->to_can().at(r, off + c);
                pm.at(c, r) = d->from_can().at(off + c, r);
            }
        out.inj.emplace_back(g, d, std::move(im));
        out.proj.emplace_back(d, g, std::move(pm));
        off += g->rank();
    }
    return out;
}

// Inverse of an isomorphism; asserts both composites are the identity.
inline GroupHom invert_iso(const GroupHom& h) {
    const auto& dst = *h.dst();
    IntMat m(h.src()->rank(), dst.rank());
    for (std::size_t j = 0; j < dst.rank(); ++j) {
        auto x = preimage(h, dst.gen(j));
        if (!x) throw std::logic_error("invert_iso: not surjective");
        m.set_col(j, *x);
    }
    GroupHom inv(h.dst(), h.src(), std::move(m));
    if (!hom_equal(compose(h, inv), GroupHom::identity(h.dst())) ||
        !hom_equal(compose(inv, h), GroupHom::identity(h.src())))
        throw std::logic_error("invert_iso: not an isomorphism");
    return inv;
}

// ---------------------------------------------------------------------------
// Homology of  C_in --d_in--> C_mid --d_out--> C_out  at the middle term,
// with maps between homology classes and cycle representatives.

struct Homology {
    GroupPtr grp;
    Subgroup cycles;        // Z ⊆ C_mid
    Quotient quo;           // Z -> H
    // F_p fast path data (set when all three groups are elementary p)
    bool fp = false;
    std::uint32_t p = 0;
    std::shared_ptr<FpSolver> fp_cycles;  // solver for the cycle-basis matrix
    FpMat fp_cycle_basis;
    FpQuotient fp_quo;

    // Class of a cycle z (canonical coordinates of C_mid).
    Elem class_of(const Elem& z) const {
        if (fp) {
            std::vector<std::uint32_t> zz(z.size());
            for (std::size_t i = 0; i < z.size(); ++i) {
                Int v = z[i] % p;
                if (v < 0) v += p;
                zz[i] = static_cast<std::uint32_t>(v.get_ui());
            }
            auto x = fp_cycles->solve(zz);
            if (!x) throw std::logic_error("class_of: not a cycle");
            auto cls = fp_quo.reduce(*x);
            Elem out(cls.size());
            for (std::size_t i = 0; i < cls.size(); ++i) out[i] = cls[i];
            return out;
        }
        auto x = preimage(cycles.incl, z);
        if (!x) throw std::logic_error("class_of: not a cycle");
        return quo.proj(*x);
    }

    // A cycle representing the class h.
    Elem rep_of(const Elem& h) const {
        if (fp) {
            std::vector<std::uint32_t> hh(h.size());
            for (std::size_t i = 0; i < h.size(); ++i) {
                Int v = h[i] % p;
                if (v < 0) v += p;
                hh[i] = static_cast<std::uint32_t>(v.get_ui());
            }
            auto x = fp_quo.lift(hh);
            auto z = fp_cycle_basis.apply(x);
            Elem out(z.size());
            for (std::size_t i = 0; i < z.size(); ++i) out[i] = z[i];
            return out;
        }
        return cycles.incl(quo.lift(h));
    }
};

// d_out may be a zero map to the zero group when there is no outgoing
// differential; likewise d_in from the zero group.
inline Homology homology(const GroupHom& d_out, const GroupHom& d_in) {
    assert(d_out.src().get() == d_in.dst().get());
    const GroupPtr& mid = d_out.src();

    // F_p fast path: everything elementary abelian of one prime exponent.
    for (std::uint32_t q : {2u, 3u, 5u, 7u}) {
        if (!mid->is_elementary_p(q)) continue;
        bool ok = (d_out.dst()->is_trivial() || d_out.dst()->is_elementary_p(q)) &&
                  (d_in.src()->is_trivial() || d_in.src()->is_elementary_p(q));
        if (!ok) break;
        FpMat dout = FpMat::from_int(d_out.matrix(), q);
        FpMat din = FpMat::from_int(d_in.matrix(), q);
        FpSolver sout(dout);
        FpMat zbasis = sout.nullspace();          // mid.rank x z
        auto zsolver = std::make_shared<FpSolver>(zbasis);
        // boundaries in cycle coordinates: solve zbasis * X = din columnwise
        FpMat x(zbasis.cols(), din.cols(), q);
        for (std::size_t j = 0; j < din.cols(); ++j) {
            std::vector<std::uint32_t> col(din.rows());
            for (std::size_t i = 0; i < din.rows(); ++i) col[i] = din.at(i, j);
            auto sol = zsolver->solve(col);
            if (!sol) throw std::logic_error("homology: d∘d != 0");
            for (std::size_t i = 0; i < x.rows(); ++i) x.at(i, j) = (*sol)[i];
        }
        FpQuotient fq = fp_quotient(x);

        Homology h;
        h.fp = true;
        h.p = q;
        h.fp_cycles = zsolver;
        h.fp_cycle_basis = zbasis;
        h.fp_quo = fq;
        h.grp = FinAbGroup::elementary(Int(q), fq.keep.size());
        // generic-side fields filled thinly so callers can still inspect cycles
        GroupPtr zg = FinAbGroup::elementary(Int(q), zbasis.cols());
        h.cycles = Subgroup{zg, GroupHom(zg, mid, zbasis.to_int())};
        return h;
    }

    Subgroup z = d_out.dst()->is_trivial() ? Subgroup{mid, GroupHom::identity(mid)}
                                           : kernel(d_out);
    IntMat b(z.grp->rank(), d_in.src()->rank());
    for (std::size_t j = 0; j < d_in.src()->rank(); ++j) {
        Elem img = d_in(d_in.src()->gen(j));
        auto x = preimage(z.incl, img);
        if (!x) throw std::logic_error("homology: d∘d != 0");
        b.set_col(j, *x);
    }
    Quotient q = quotient_by(z.grp, b);
    Homology h;
    h.grp = q.grp;
    h.cycles = std::move(z);
    h.quo = std::move(q);
    return h;
}

}  // namespace hwitt
