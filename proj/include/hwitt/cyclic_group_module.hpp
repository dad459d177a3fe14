#pragma once

// A finitely generated abelian group with an action of Z/q, and the usual
// invariant / coinvariant / norm constructions, including Tate cohomology in
// degrees 0 and -1 packaged with class and representative maps.

#include <cassert>

#include "abelian.hpp"

namespace hwitt {

struct CyclicGroupModule {
    GroupPtr grp;
    GroupHom sigma;       // generator of the action
    unsigned long q = 1;  // sigma^q = id

    bool check_action() const {
        GroupHom pow = GroupHom::identity(grp);
        for (unsigned long i = 0; i < q; ++i) pow = compose(sigma, pow);
        return hom_equal(pow, GroupHom::identity(grp));
    }
};

inline GroupHom one_minus_sigma(const CyclicGroupModule& m) {
    return GroupHom::identity(m.grp) - m.sigma;
}

// Sum of sigma^j over j < q.
inline GroupHom norm_hom(const CyclicGroupModule& m) {
    GroupHom acc = GroupHom::identity(m.grp);  // j = 0 term
    GroupHom pow = GroupHom::identity(m.grp);
    for (unsigned long j = 1; j < m.q; ++j) {
        pow = compose(m.sigma, pow);
        acc = acc + pow;
    }
    return acc;
}

inline Quotient coinvariants(const CyclicGroupModule& m) {
    return cokernel(one_minus_sigma(m));
}

inline Subgroup invariants(const CyclicGroupModule& m) {
    return kernel(one_minus_sigma(m));
}

// Norm descends to coinvariants and lands in invariants.
inline GroupHom norm_map(const CyclicGroupModule& m, const Quotient& coinv,
                         const Subgroup& inv) {
    GroupHom n = norm_hom(m);
    IntMat mm(inv.grp->rank(), coinv.grp->rank());
    for (std::size_t j = 0; j < coinv.grp->rank(); ++j) {
        Elem rep = coinv.lift(coinv.grp->gen(j));
        auto x = preimage(inv.incl, n(rep));
        if (!x) throw std::logic_error("norm_map: norm image not invariant");
        mm.set_col(j, *x);
    }
    GroupHom h(coinv.grp, inv.grp, std::move(mm));
    assert(h.well_defined());
    return h;
}

// Tate degree 0:  ker(1 - sigma) / im(norm), with class/rep maps through the
// ambient module.
inline Homology tate_h0(const CyclicGroupModule& m) {
    return homology(one_minus_sigma(m), norm_hom(m));
}

// Tate degree -1:  ker(norm) / im(1 - sigma).
inline Homology tate_hm1(const CyclicGroupModule& m) {
    return homology(norm_hom(m), one_minus_sigma(m));
}

}  // namespace hwitt
