// Weight pieces of the free-algebra nerve: the truncation-one piece against
// the plain tensor nerve, the coinvariant / invariant / norm certificates,
// the fractional-weight V and F isomorphisms, and the de Rham-Witt property
// suite for the one-variable algebra.

#include <catch2/catch_amalgamated.hpp>

#include <hwitt/free_witt.hpp>

using namespace hwitt;

namespace {

std::vector<Int> hh_torsion(CyclicModule& m, std::uint32_t i) {
    return m.hh(i).grp->torsion();
}

}  // namespace

TEST_CASE("weight piece bases enumerate the periodic tuples") {
    // 8 letters on 8 slots at truncation 2, one letter: the periodic tuples
    // are the 2-fold repeats of (4-slot, 4-letter) tuples, C(7,3) = 35 of
    // them, minus rotation overlaps.
    FreeTate M = free_tate(2, 2, 1, 2, 8);
    REQUIRE(M.slots == 8);
    for (std::size_t i = 0; i < M.reps.size(); ++i) {
        std::size_t letters = 0;
        for (const Word& w : M.reps[i]) letters += w.size();
        REQUIRE(letters == 8);
        REQUIRE(M.reps[i].size() == 8);
        // stab-asc order and the stab-4 tail are the 4-periodic tuples
        if (i > 0) REQUIRE(M.stabs[i - 1] <= M.stabs[i]);
    }
    // an odd letter count at an even slot split has no periodic tuples
    REQUIRE(free_tate(2, 1, 1, 1, 3).group->order() == 1);
    // the empty weight is the Witt vectors of the ground field
    REQUIRE(free_tate(2, 2, 1, 1, 0).group->torsion() == std::vector<Int>{Int(4)});
}

TEST_CASE("truncation one matches the plain tensor nerve") {
    struct Case {
        std::uint32_t p, d, w;
    };
    for (Case c : {Case{2, 1, 2}, Case{2, 2, 2}, Case{2, 2, 3}, Case{2, 1, 4},
                   Case{3, 1, 2}, Case{3, 2, 1}}) {
        FreeWittNerve W = free_nerve(c.p, 1, c.d, c.w * c.p, 4);
        CyclicModule T = tensor_nerve(c.p, c.d, c.w, 4);
        for (std::uint32_t n = 1; n <= 4; ++n)
            REQUIRE(W.lv[n - 1].group->order() == T.val(n)->order());
        for (std::uint32_t i = 0; i <= 2; ++i)
            REQUIRE(hh_torsion(W.mod, i) == hh_torsion(T, i));
    }
}

TEST_CASE("free nerve satisfies the cyclic identities") {
    REQUIRE_NOTHROW(free_nerve(2, 1, 2, 4, 3).mod.check());
    REQUIRE_NOTHROW(free_nerve(2, 2, 1, 4, 3).mod.check());
    REQUIRE_NOTHROW(free_nerve(3, 1, 1, 6, 3).mod.check());
}

TEST_CASE("known weight pieces") {
    // one variable, weight 2, truncation 1: HH_0 = HH_1 = F_2 and B = 2 = 0
    FreeWeightCert c = free_weight_cert(2, 1, 1, 2, 2);
    REQUIRE(c.h0.grp->torsion() == std::vector<Int>{Int(2)});
    REQUIRE(c.h1->grp->torsion() == std::vector<Int>{Int(2)});
    REQUIRE(hom_equal(*c.Bh, GroupHom::zero(c.h0.grp, c.h1->grp)));

    // one variable, weight 1, truncation 2: W_2HH_0 = Z/4
    FreeWeightCert c2 = free_weight_cert(2, 2, 1, 1, 2);
    REQUIRE(c2.h0.grp->torsion() == std::vector<Int>{Int(4)});
    REQUIRE(c2.h1->grp->torsion() == std::vector<Int>{Int(4)});

    // two variables, weight 3, truncation 1: HH_0 has the 4 necklaces
    FreeWeightCert c3 = free_weight_cert(2, 1, 2, 3, 1);
    REQUIRE(c3.h0.grp->order() == 16);
    REQUIRE(c3.h1->grp->order() == 16);
}

TEST_CASE("integral weight certificates at truncation one") {
    for (std::uint32_t d = 1; d <= 2; ++d)
        for (std::size_t a = 1; a <= 4; ++a)
            REQUIRE_NOTHROW(free_weight_cert(2, 1, d, a, 2));
}

TEST_CASE("integral weight certificates at truncation two") {
    // one variable up to weight 4; HH_2 is checked where the level-[4]
    // piece stays within the elimination budget
    for (std::size_t a = 1; a <= 4; ++a)
        REQUIRE_NOTHROW(free_weight_cert(2, 2, 1, a, a <= 3 ? 2 : 1));
    REQUIRE_NOTHROW(free_weight_cert(2, 2, 2, 1, 2));
    REQUIRE_NOTHROW(free_weight_cert(2, 2, 2, 2, 1));
}

TEST_CASE("fractional weights: V and F are isomorphisms") {
    // weight n0/2 at truncation 2 against weight n0 at truncation 1
    FreeFracCert f = free_fractional_check(2, 1, 1);
    REQUIRE(f.low0->torsion() == std::vector<Int>{Int(2)});
    REQUIRE(f.high0->torsion() == std::vector<Int>{Int(2)});
    REQUIRE(f.high2_order == 1);
    REQUIRE_NOTHROW(free_fractional_check(2, 1, 3));
    REQUIRE_NOTHROW(free_fractional_check(2, 2, 1));
}

TEST_CASE("restriction transports the standard generators") {
    // R on the weight-1 pieces: truncation 2 (letters 4) to truncation 1
    // (letters 2) at level [1]; R T = T and R V = 0
    FreeTate top2 = free_tate(2, 2, 1, 1, 4);
    FreeTate top1 = free_tate(2, 1, 1, 1, 2);
    FreeTower big = free_tower_from(top2);
    FreeTower small = free_tower_from(top1);
    GroupHom R = free_restriction(big, small);
    Elem t2 = free_vt_generator(big, 0, SlotTuple{Word{0}});
    Elem t1 = free_vt_generator(small, 0, SlotTuple{Word{0}});
    REQUIRE(top1.group->reduce(R(t2)) == top1.group->reduce(t1));
    Elem v2 = free_vt_generator(big, 1, SlotTuple{Word{0}, Word{0}});
    REQUIRE(top1.group->reduce(R(v2)) == top1.group->zero_elem());
}

TEST_CASE("de Rham-Witt property suite, small weights") {
    DrwReport rep = drw_property_suite(2);
    REQUIRE(rep.checks == std::vector<std::string>{
                              "hkr-dimensions", "connes-b-is-d", "w2-orders",
                              "fdv-is-d", "fv-vf-are-p", "projection-formula",
                              "f-multiplicative", "inverse-cartier-square"});
    for (const auto& o : rep.w2_orders) {
        REQUIRE(o[0] == 4);
        REQUIRE(o[1] == 4);
    }
}
