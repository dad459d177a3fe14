// Exact integer linear algebra and finitely generated abelian groups,
// checked against independent oracles: Smith divisors against gcds of k-minors,
// homology orders and class maps against brute-force element enumeration.

#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include <hwitt/abelian.hpp>
#include <hwitt/cyclic_group_module.hpp>

using namespace hwitt;

namespace {

Int det_small(const IntMat& m) {
    const std::size_t n = m.rows();
    REQUIRE(n == m.cols());
    if (n == 0) return 1;
    if (n == 1) return m.at(0, 0);
    Int d = 0;
    for (std::size_t j = 0; j < n; ++j) {
        if (m.at(0, j) == 0) continue;
        IntMat sub(n - 1, n - 1);
        for (std::size_t i = 1; i < n; ++i) {
            std::size_t cc = 0;
            for (std::size_t c = 0; c < n; ++c) {
                if (c == j) continue;
                sub.at(i - 1, cc++) = m.at(i, c);
            }
        }
        Int term = m.at(0, j) * det_small(sub);
        d += (j % 2 == 0) ? term : -term;
    }
    return d;
}

// Divisor oracle: d_k = gcd(k-minors) / gcd((k-1)-minors).
std::vector<Int> divisors_by_minors(const IntMat& a) {
    const std::size_t r = a.rows(), c = a.cols();
    std::vector<Int> minor_gcd;  // minor_gcd[k-1] = gcd of k x k minors
    for (std::size_t k = 1; k <= std::min(r, c); ++k) {
        Int g = 0;
        for (unsigned long rs = 0; rs < (1ul << r); ++rs) {
            if (static_cast<std::size_t>(__builtin_popcountl(rs)) != k) continue;
            for (unsigned long cs = 0; cs < (1ul << c); ++cs) {
                if (static_cast<std::size_t>(__builtin_popcountl(cs)) != k) continue;
                IntMat sub(k, k);
                std::size_t ii = 0;
                for (std::size_t i = 0; i < r; ++i) {
                    if (!(rs >> i & 1)) continue;
                    std::size_t jj = 0;
                    for (std::size_t j = 0; j < c; ++j) {
                        if (!(cs >> j & 1)) continue;
                        sub.at(ii, jj++) = a.at(i, j);
                    }
                    ++ii;
                }
                Int d = det_small(sub);
                g = gcd(g, d);
            }
        }
        if (g == 0) break;
        minor_gcd.push_back(g);
    }
    std::vector<Int> divs;
    Int prev = 1;
    for (const auto& g : minor_gcd) {
        divs.push_back(g / prev);
        prev = g;
    }
    return divs;
}

IntMat random_matrix(std::mt19937& rng, std::size_t r, std::size_t c, int lo, int hi) {
    std::uniform_int_distribution<int> dist(lo, hi);
    IntMat m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m.at(i, j) = dist(rng);
    return m;
}

// |ker d_out| / |im d_in| by walking every element; exactness cross-check.
Int homology_order_brute(const GroupHom& d_out, const GroupHom& d_in) {
    const GroupPtr& mid = d_out.src();
    Int cycles = 0;
    for (const auto& x : mid->all_elements())
        if (d_out.dst()->is_zero(d_out(x))) ++cycles;
    std::set<Elem> boundaries;
    for (const auto& y : d_in.src()->all_elements()) boundaries.insert(d_in(y));
    REQUIRE(cycles % Int(boundaries.size()) == 0);
    return cycles / Int(boundaries.size());
}

// Random well-defined hom between finite groups: each generator goes to an
// element annihilated by that generator's order.
GroupHom random_hom(std::mt19937& rng, const GroupPtr& src, const GroupPtr& dst) {
    auto pool = dst->all_elements();
    std::vector<Elem> images;
    for (std::size_t j = 0; j < src->rank(); ++j) {
        std::vector<Elem> ok;
        for (const auto& x : pool)
            if (dst->is_zero(dst->smul(src->torsion()[j], x))) ok.push_back(x);
        std::uniform_int_distribution<std::size_t> pick(0, ok.size() - 1);
        images.push_back(ok[pick(rng)]);
    }
    GroupHom h = GroupHom::from_gen_images(src, dst, images);
    REQUIRE(h.well_defined());
    return h;
}

GroupPtr random_elementary(std::mt19937& rng, const std::vector<int>& order_pool,
                           std::size_t max_gens) {
    std::uniform_int_distribution<std::size_t> ngen(1, max_gens);
    std::uniform_int_distribution<std::size_t> pick(0, order_pool.size() - 1);
    std::vector<Int> orders;
    for (std::size_t i = ngen(rng); i > 0; --i) orders.push_back(order_pool[pick(rng)]);
    return FinAbGroup::elementary(orders);
}

}  // namespace

TEST_CASE("smith normal form on a fixed example") {
    IntMat a(2, 2);
    a.at(0, 0) = 2; a.at(0, 1) = 4;
    a.at(1, 0) = 6; a.at(1, 1) = 8;
    SmithForm f = smith_normal_form(a);
    REQUIRE(f.rank == 2);
    REQUIRE(f.divisors == std::vector<Int>{2, 4});
    REQUIRE(f.u * a * f.v == f.d);
    REQUIRE(f.u * f.uinv == IntMat::identity(2));
    REQUIRE(f.v * f.vinv == IntMat::identity(2));
}

TEST_CASE("smith normal form against the minor-gcd oracle") {
    std::mt19937 rng(12345);
    for (int trial = 0; trial < 60; ++trial) {
        std::uniform_int_distribution<std::size_t> dim(1, 5);
        std::size_t r = dim(rng), c = dim(rng);
        IntMat a = random_matrix(rng, r, c, -9, 9);
        SmithForm f = smith_normal_form(a);

        REQUIRE(f.u * a * f.v == f.d);
        REQUIRE(f.u * f.uinv == IntMat::identity(r));
        REQUIRE(f.v * f.vinv == IntMat::identity(c));
        for (std::size_t i = 0; i + 1 < f.divisors.size(); ++i)
            REQUIRE(f.divisors[i + 1] % f.divisors[i] == 0);
        // off-diagonal of d is zero
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j)
                if (i != j) REQUIRE(f.d.at(i, j) == 0);

        REQUIRE(f.divisors == divisors_by_minors(a));
    }
}

TEST_CASE("kernel and solve") {
    std::mt19937 rng(777);
    for (int trial = 0; trial < 40; ++trial) {
        std::uniform_int_distribution<std::size_t> dim(1, 5);
        std::size_t r = dim(rng), c = dim(rng);
        IntMat a = random_matrix(rng, r, c, -6, 6);
        SmithForm f = smith_normal_form(a);

        IntMat k = kernel_basis(f);
        REQUIRE(k.cols() == c - f.rank);
        REQUIRE((a * k).is_zero());

        // solvable system: b = a x0
        IntMat x0 = random_matrix(rng, c, 1, -5, 5);
        std::vector<Int> b = a.apply(x0.col(0));
        auto x = solve(f, b);
        REQUIRE(x.has_value());
        REQUIRE(a.apply(*x) == b);
    }

    // an unsolvable system
    IntMat a(1, 1);
    a.at(0, 0) = 2;
    REQUIRE_FALSE(solve(a, {Int(3)}).has_value());
}

TEST_CASE("group presentation canonical form") {
    IntMat rels(2, 2);
    rels.at(0, 0) = 2; rels.at(0, 1) = 4;
    rels.at(1, 0) = 6; rels.at(1, 1) = 8;
    GroupPtr g = FinAbGroup::from_presentation(2, rels);
    REQUIRE(g->torsion() == std::vector<Int>{2, 4});
    REQUIRE(g->free_rank() == 0);
    REQUIRE(g->order() == 8);
    REQUIRE(g->str() == "Z/2 + Z/4");

    // relations become zero in canonical coordinates
    for (std::size_t j = 0; j < rels.cols(); ++j)
        REQUIRE(g->is_zero(g->to_canonical(rels.col(j))));

    // canonical coords survive the roundtrip through presentation coords
    for (const auto& x : g->all_elements())
        REQUIRE(g->to_canonical(g->from_canonical(x)) == x);

    GroupPtr h = FinAbGroup::from_presentation(
        3, IntMat::diagonal({Int(2), Int(1), Int(0)}));
    // one generator killed, one order 2, one free... the zero column is no relation
    REQUIRE(h->torsion() == std::vector<Int>{2});
    REQUIRE(h->free_rank() == 1);
    REQUIRE_FALSE(h->is_finite());

    REQUIRE(FinAbGroup::zero()->is_trivial());
    REQUIRE(FinAbGroup::elementary(Int(1), 3)->is_trivial());
}

TEST_CASE("hom kernel image cokernel on known examples") {
    GroupPtr z8 = FinAbGroup::elementary({Int(8)});

    // multiplication by 2 on Z/8
    GroupHom two(z8, z8, IntMat::diagonal({Int(2)}));
    REQUIRE(two.well_defined());

    Subgroup k = kernel(two);
    REQUIRE(k.grp->torsion() == std::vector<Int>{2});
    REQUIRE(z8->is_zero(two(k.incl(k.grp->gen(0)))));

    Subgroup im = image(two);
    REQUIRE(im.grp->torsion() == std::vector<Int>{4});

    Quotient cok = cokernel(two);
    REQUIRE(cok.grp->torsion() == std::vector<Int>{2});
    // projection kills exactly the image
    REQUIRE(cok.grp->is_zero(cok.proj(two(z8->gen(0)))));
    REQUIRE_FALSE(cok.grp->is_zero(cok.proj(z8->gen(0))));
}

TEST_CASE("preimage and isomorphism inversion") {
    // Z/2 + Z/3 collapses to the single canonical divisor 6
    GroupPtr z2z3 = FinAbGroup::elementary({Int(2), Int(3)});
    REQUIRE(z2z3->torsion() == std::vector<Int>{6});

    // a shear automorphism of Z/2 + Z/4
    GroupPtr g24 = FinAbGroup::elementary({Int(2), Int(4)});
    IntMat m = IntMat::identity(2);
    m.at(0, 1) = 1;
    GroupHom shear(g24, g24, m);
    REQUIRE(shear.well_defined());
    GroupHom inv = invert_iso(shear);
    for (const auto& x : g24->all_elements())
        REQUIRE(g24->equal(inv(shear(x)), x));

    GroupPtr z2 = FinAbGroup::elementary({Int(2)});
    GroupPtr z4 = FinAbGroup::elementary({Int(4)});
    IntMat d(1, 1);
    d.at(0, 0) = 2;
    GroupHom dbl(z2, z4, d);  // x -> 2x
    REQUIRE(dbl.well_defined());
    REQUIRE_FALSE(preimage(dbl, {Int(1)}).has_value());
    auto pre = preimage(dbl, {Int(2)});
    REQUIRE(pre.has_value());
    REQUIRE(z4->equal(dbl(*pre), {Int(2)}));
}

TEST_CASE("homology of fixed complexes") {
    // 0 -> Z --2--> Z -> 0
    GroupPtr z = FinAbGroup::free_group(1);
    GroupPtr triv = FinAbGroup::zero();
    GroupHom two(z, z, IntMat::diagonal({Int(2)}));
    Homology h0 = homology(GroupHom::zero(z, triv), two);
    REQUIRE(h0.grp->torsion() == std::vector<Int>{2});
    Homology h1 = homology(two, GroupHom::zero(triv, z));
    REQUIRE(h1.grp->is_trivial());

    // two-term complex of Z/4[Z/2] under the swap action
    GroupPtr m = FinAbGroup::elementary({Int(4), Int(4)});
    IntMat sw(2, 2);
    sw.at(0, 1) = 1;
    sw.at(1, 0) = 1;
    CyclicGroupModule mod{m, GroupHom(m, m, sw), 2};
    REQUIRE(mod.check_action());
    GroupHom d = one_minus_sigma(mod);
    Homology hh0 = homology(GroupHom::zero(m, triv), d);
    Homology hh1 = homology(d, GroupHom::zero(triv, m));
    REQUIRE(hh0.grp->torsion() == std::vector<Int>{4});
    REQUIRE(hh1.grp->torsion() == std::vector<Int>{4});

    // class map identifies homologous cycles
    Elem z1 = {Int(1), Int(0)};
    Elem z2 = m->add(z1, d(m->gen(0)));  // same class
    REQUIRE(hh0.grp->equal(hh0.class_of(z1), hh0.class_of(z2)));
    // representative roundtrip
    for (const auto& c : hh0.grp->all_elements())
        REQUIRE(hh0.grp->equal(hh0.class_of(hh0.rep_of(c)), c));
}

TEST_CASE("homology against brute enumeration") {
    std::mt19937 rng(4242);
    for (int trial = 0; trial < 24; ++trial) {
        bool fp_case = trial % 2 == 0;
        std::vector<int> pool = fp_case ? std::vector<int>{trial % 4 < 2 ? 2 : 3}
                                        : std::vector<int>{2, 3, 4};
        GroupPtr cin = random_elementary(rng, pool, 3);
        GroupPtr cmid = random_elementary(rng, pool, 3);
        GroupHom din = random_hom(rng, cin, cmid);

        Quotient q = cokernel(din);
        std::uniform_int_distribution<int> kk(0, 2);
        GroupHom dout = compose(
            GroupHom(q.grp, q.grp, IntMat::identity(q.grp->rank()).scaled(kk(rng))),
            q.proj);
        REQUIRE(compose(dout, din).is_zero_hom());

        Homology h = homology(dout, din);
        if (fp_case) REQUIRE(h.fp);
        REQUIRE(h.grp->order() == homology_order_brute(dout, din));

        // boundaries die, representatives return their class
        for (std::size_t j = 0; j < cin->rank(); ++j)
            REQUIRE(h.grp->is_zero(h.class_of(din(cin->gen(j)))));
        for (const auto& c : h.grp->all_elements()) {
            Elem rep = h.rep_of(c);
            REQUIRE(dout.dst()->is_zero(dout(rep)));
            REQUIRE(h.grp->equal(h.class_of(rep), c));
        }
    }
}

TEST_CASE("fp solver and quotient") {
    std::mt19937 rng(99);
    for (std::uint32_t p : {2u, 3u}) {
        for (int trial = 0; trial < 20; ++trial) {
            std::uniform_int_distribution<std::size_t> dim(1, 6);
            std::uniform_int_distribution<std::uint32_t> val(0, p - 1);
            std::size_t r = dim(rng), c = dim(rng);
            FpMat a(r, c, p);
            for (std::size_t i = 0; i < r; ++i)
                for (std::size_t j = 0; j < c; ++j) a.at(i, j) = val(rng);

            FpSolver s(a);
            FpMat n = s.nullspace();
            REQUIRE(n.cols() == c - s.rank());
            for (std::size_t j = 0; j < n.cols(); ++j) {
                std::vector<std::uint32_t> col(c);
                for (std::size_t i = 0; i < c; ++i) col[i] = n.at(i, j);
                for (auto y : a.apply(col)) REQUIRE(y == 0);
            }

            std::vector<std::uint32_t> x0(c);
            for (auto& v : x0) v = val(rng);
            auto sol = s.solve(a.apply(x0));
            REQUIRE(sol.has_value());
            REQUIRE(a.apply(*sol) == a.apply(x0));

            FpQuotient quo = fp_quotient(a);
            REQUIRE(quo.keep.size() == r - fp_quotient(a).pivot_rows.size());
            // columns of a reduce to zero; reduce is invariant under adding columns
            for (std::size_t j = 0; j < c; ++j) {
                std::vector<std::uint32_t> col(r);
                for (std::size_t i = 0; i < r; ++i) col[i] = a.at(i, j);
                for (auto y : quo.reduce(col)) REQUIRE(y == 0);
            }
            std::vector<std::uint32_t> v(r);
            for (auto& t : v) t = val(rng);
            auto base = quo.reduce(v);
            std::vector<std::uint32_t> shifted = v;
            for (std::size_t i = 0; i < r; ++i)
                shifted[i] = (shifted[i] + a.at(i, 0)) % p;
            if (c > 0) REQUIRE(quo.reduce(shifted) == base);
            REQUIRE(quo.reduce(quo.lift(base)) == base);
        }
    }
}

TEST_CASE("cyclic module invariants, norm, tate") {
    // trivial Z/3 action on Z/9: Tate^0 = Z/3
    GroupPtr z9 = FinAbGroup::elementary({Int(9)});
    CyclicGroupModule triv{z9, GroupHom::identity(z9), 3};
    REQUIRE(triv.check_action());
    Homology t0 = tate_h0(triv);
    REQUIRE(t0.grp->torsion() == std::vector<Int>{3});
    Homology tm1 = tate_hm1(triv);
    REQUIRE(tm1.grp->torsion() == std::vector<Int>{3});

    // sign action on Z: coinvariants Z/2, invariants 0
    GroupPtr z = FinAbGroup::free_group(1);
    CyclicGroupModule sign{z, GroupHom(z, z, IntMat::diagonal({Int(-1)})), 2};
    REQUIRE(sign.check_action());
    REQUIRE(coinvariants(sign).grp->torsion() == std::vector<Int>{2});
    REQUIRE(invariants(sign).grp->is_trivial());
    REQUIRE(tate_h0(sign).grp->is_trivial());
    REQUIRE(tate_hm1(sign).grp->torsion() == std::vector<Int>{2});

    // free action on Z[Z/2]: both Tate groups vanish
    GroupPtr z2f = FinAbGroup::free_group(2);
    IntMat sw(2, 2);
    sw.at(0, 1) = 1;
    sw.at(1, 0) = 1;
    CyclicGroupModule reg{z2f, GroupHom(z2f, z2f, sw), 2};
    REQUIRE(tate_h0(reg).grp->is_trivial());
    REQUIRE(tate_hm1(reg).grp->is_trivial());

    // same over F_2 coefficients (exercises the fp path)
    GroupPtr f2sq = FinAbGroup::elementary(Int(2), 2);
    CyclicGroupModule regp{f2sq, GroupHom(f2sq, f2sq, sw), 2};
    Homology ft = tate_h0(regp);
    REQUIRE(ft.fp);
    REQUIRE(ft.grp->is_trivial());
    REQUIRE(tate_hm1(regp).grp->is_trivial());

    // norm map coinv -> inv agrees with the Tate quotient
    GroupPtr g44 = FinAbGroup::elementary({Int(4), Int(4)});
    CyclicGroupModule m44{g44, GroupHom(g44, g44, sw), 2};
    Quotient ci = coinvariants(m44);
    Subgroup iv = invariants(m44);
    GroupHom nm = norm_map(m44, ci, iv);
    Quotient tq = cokernel(nm);
    REQUIRE(tq.grp->order() == tate_h0(m44).grp->order());
}
