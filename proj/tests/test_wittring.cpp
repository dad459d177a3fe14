// Classical p-typical Witt vectors, checked against the ghost map: the
// universal sum/product/Frobenius polynomials are verified as polynomial
// identities over Z, then numerically on random integer vectors, and the
// operator identities (FV = VF = p, Teichmuller multiplicativity, the
// V/R exact sequence) are brute-forced over small coordinate rings.

#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include <hwitt/witt_ring.hpp>

using namespace hwitt;

namespace {

// Rings of order <= 16 used for the exhaustive operator checks.
struct RingCase {
    const char* name;
    FinAlgebra A;
    std::uint32_t nmax;  // largest W_n enumerated exhaustively
};

std::vector<RingCase> small_rings() {
    std::vector<RingCase> v;
    v.push_back({"F2", field_fp(2), 4});
    v.push_back({"F4", field_fp2(2), 3});
    v.push_back({"F2[x]/x^2", truncated_poly(2, 2), 3});
    v.push_back({"F2[x]/x^3", truncated_poly(2, 3), 2});
    v.push_back({"F2[x]/x^4", truncated_poly(2, 4), 2});
    v.push_back({"F2[Z/2]", group_algebra_cyclic(2, 2), 3});
    v.push_back({"F2[Z/4]", group_algebra_cyclic(2, 4), 2});
    v.push_back({"F3", field_fp(3), 3});
    v.push_back({"F9", field_fp2(3), 2});
    v.push_back({"F3[x]/x^2", truncated_poly(3, 2), 2});
    return v;
}

bool witt_eq(const WittVec& a, const WittVec& b) { return a == b; }

WittIntVec random_int_vec(std::mt19937& rng, std::uint32_t n) {
    std::uniform_int_distribution<int> d(-50, 50);
    WittIntVec v(n);
    for (auto& x : v) x = Int(d(rng));
    return v;
}

}  // namespace

TEST_CASE("universal witt polynomials match the hand-computed low cases") {
    auto u2 = univ_polys(2, 2);
    const std::uint32_t nv = 4;  // x0 x1 y0 y1
    auto X = [&](std::uint32_t i) { return ZPoly::variable(nv, i); };

    CHECK(u2.sum[0] == X(0) + X(2));
    CHECK(u2.sum[1] == X(1) + X(3) - X(0) * X(2));
    CHECK(u2.prod[0] == X(0) * X(2));
    CHECK(u2.prod[1] ==
          X(0) * X(0) * X(3) + X(1) * X(2) * X(2) +
              (X(1) * X(3)).scaled(2));

    // F : W_2 -> W_1 is the full ghost component w_1.
    const std::uint32_t mv = 2;
    CHECK(u2.frob[0] == ZPoly::variable(mv, 0).pow(2) +
                            ZPoly::variable(mv, 1).scaled(2));

    auto u3 = univ_polys(3, 2);
    auto Y = [&](std::uint32_t i) { return ZPoly::variable(4, i); };
    CHECK(u3.sum[1] == Y(1) + Y(3) - Y(0) * Y(0) * Y(2) - Y(0) * Y(2) * Y(2));
    CHECK(u3.prod[1] == Y(0).pow(3) * Y(3) + Y(1) * Y(2).pow(3) +
                            (Y(1) * Y(3)).scaled(3));
}

TEST_CASE("ghost components of the universal laws are ring identities over Z") {
    for (std::uint32_t p : {2u, 3u}) {
        for (std::uint32_t n : {1u, 2u, 3u, 4u}) {
            auto u = univ_polys(p, n);
            for (std::uint32_t i = 0; i < n; ++i) {
                ZPoly gx = ghost_poly(p, i, 2 * n, 0);
                ZPoly gy = ghost_poly(p, i, 2 * n, n);
                ZPoly sum_ghost(2 * n);
                ZPoly prod_ghost(2 * n);
                for (std::uint32_t j = 0; j <= i; ++j) {
                    std::uint32_t pe = 1;
                    for (std::uint32_t k = 0; k < i - j; ++k) pe *= p;
                    sum_ghost = sum_ghost + u.sum[j].pow(pe).scaled(int_pow(p, j));
                    prod_ghost =
                        prod_ghost + u.prod[j].pow(pe).scaled(int_pow(p, j));
                }
                REQUIRE(sum_ghost == gx + gy);
                REQUIRE(prod_ghost == gx * gy);
            }
            // w_i(F a) = w_{i+1}(a) as polynomials in n variables.
            for (std::uint32_t i = 0; i + 1 < n; ++i) {
                ZPoly lhs(n);
                for (std::uint32_t j = 0; j <= i; ++j) {
                    std::uint32_t pe = 1;
                    for (std::uint32_t k = 0; k < i - j; ++k) pe *= p;
                    lhs = lhs + u.frob[j].pow(pe).scaled(int_pow(p, j));
                }
                REQUIRE(lhs == ghost_poly(p, i + 1, n, 0));
            }
        }
    }
}

TEST_CASE("frobenius polynomials reduce to coordinate p-th powers mod p") {
    for (std::uint32_t p : {2u, 3u}) {
        auto u = univ_polys(p, 4);
        for (std::uint32_t i = 0; i + 1 < 4; ++i) {
            ZPoly diff = u.frob[i] - ZPoly::variable(4, i).pow(p);
            for (const auto& [e, c] : diff.terms()) {
                (void)e;
                REQUIRE(mpz_fdiv_ui(c.get_mpz_t(), p) == 0);
            }
        }
    }
}

TEST_CASE("ghost map turns witt operations into pointwise arithmetic") {
    std::mt19937 rng(20260816);
    for (std::uint32_t p : {2u, 3u}) {
        auto u = univ_polys(p, 4);
        for (int rep = 0; rep < 25; ++rep) {
            auto a = random_int_vec(rng, 4);
            auto b = random_int_vec(rng, 4);
            auto ga = ghost_int(p, a);
            auto gb = ghost_int(p, b);

            auto gsum = ghost_int(p, witt_add_int(u, a, b));
            auto gprod = ghost_int(p, witt_mul_int(u, a, b));
            for (std::uint32_t i = 0; i < 4; ++i) {
                REQUIRE(gsum[i] == ga[i] + gb[i]);
                REQUIRE(gprod[i] == ga[i] * gb[i]);
            }

            auto gf = ghost_int(p, witt_frob_int(u, a));
            for (std::uint32_t i = 0; i + 1 < 4; ++i) REQUIRE(gf[i] == ga[i + 1]);

            // Teichmuller ghost: (x, x^p, x^{p^2}, ...).
            WittIntVec t(4, Int(0));
            t[0] = a[0];
            auto gt = ghost_int(p, t);
            Int pw = a[0];
            for (std::uint32_t i = 0; i < 4; ++i) {
                REQUIRE(gt[i] == pw);
                Int next;
                mpz_pow_ui(next.get_mpz_t(), pw.get_mpz_t(), p);
                pw = next;
            }
        }
    }
}

TEST_CASE("witt vectors over F_2 recover the known additive structures") {
    auto F2 = field_fp(2);
    auto u2 = univ_polys(2, 2);

    // T(1) + T(1) = V(1) = (0, 1): W_2(F_2) is cyclic of order 4.
    WittVec one = witt_one(F2, 2);
    WittVec two = witt_add(u2, F2, one, one);
    REQUIRE(two == witt_V(F2, witt_teich(F2, F2.unit, 1)));
    WittVec three = witt_add(u2, F2, two, one);
    REQUIRE(three == WittVec{F2.unit, F2.unit});
    REQUIRE(witt_add(u2, F2, three, one) == witt_zero(F2, 2));

    // W_3(F_2) is cyclic of order 8: T(1) has additive order 8.
    auto u3 = univ_polys(2, 3);
    WittVec acc = witt_zero(F2, 3);
    std::uint32_t order = 0;
    for (std::uint32_t k = 1; k <= 8; ++k) {
        acc = witt_add(u3, F2, acc, witt_one(F2, 3));
        if (acc == witt_zero(F2, 3)) {
            order = k;
            break;
        }
    }
    REQUIRE(order == 8);

    // W_2(F_2[x]/x^2): additive order histogram of Z/4 + Z/2 + Z/2.
    auto D = truncated_poly(2, 2);
    std::map<std::uint32_t, std::size_t> histo;
    for (std::size_t idx = 0; idx < witt_count(D, 2); ++idx) {
        WittVec v = witt_elem_at(D, 2, idx);
        WittVec acc2 = v;
        std::uint32_t ord = 1;
        while (acc2 != witt_zero(D, 2)) {
            acc2 = witt_add(u2, D, acc2, v);
            ++ord;
        }
        histo[ord]++;
    }
    REQUIRE(histo[1] == 1);
    REQUIRE(histo[2] == 7);
    REQUIRE(histo[4] == 8);
}

TEST_CASE("witt ring laws hold exhaustively on small truncations") {
    auto F2 = field_fp(2);
    auto u3 = univ_polys(2, 3);
    std::size_t count = witt_count(F2, 3);
    // Associativity and commutativity over all triples of W_3(F_2).
    for (std::size_t ia = 0; ia < count; ++ia) {
        WittVec a = witt_elem_at(F2, 3, ia);
        for (std::size_t ib = 0; ib < count; ++ib) {
            WittVec b = witt_elem_at(F2, 3, ib);
            REQUIRE(witt_add(u3, F2, a, b) == witt_add(u3, F2, b, a));
            REQUIRE(witt_mul(u3, F2, a, b) == witt_mul(u3, F2, b, a));
            for (std::size_t ic = 0; ic < count; ++ic) {
                WittVec c = witt_elem_at(F2, 3, ic);
                REQUIRE(witt_add(u3, F2, witt_add(u3, F2, a, b), c) ==
                        witt_add(u3, F2, a, witt_add(u3, F2, b, c)));
                REQUIRE(witt_mul(u3, F2, witt_mul(u3, F2, a, b), c) ==
                        witt_mul(u3, F2, a, witt_mul(u3, F2, b, c)));
                REQUIRE(witt_mul(u3, F2, a, witt_add(u3, F2, b, c)) ==
                        witt_add(u3, F2, witt_mul(u3, F2, a, b),
                                 witt_mul(u3, F2, a, c)));
            }
        }
    }
    // Unit and zero laws on a bigger ring.
    auto F9 = field_fp2(3);
    auto v2 = univ_polys(3, 2);
    for (std::size_t ia = 0; ia < witt_count(F9, 2); ++ia) {
        WittVec a = witt_elem_at(F9, 2, ia);
        REQUIRE(witt_add(v2, F9, a, witt_zero(F9, 2)) == a);
        REQUIRE(witt_mul(v2, F9, a, witt_one(F9, 2)) == a);
        REQUIRE(witt_mul(v2, F9, a, witt_zero(F9, 2)) == witt_zero(F9, 2));
    }
}

TEST_CASE("FV = VF = p and teichmuller is multiplicative on rings of order at most 16") {
    for (const auto& rc : small_rings()) {
        INFO(rc.name);
        const FinAlgebra& A = rc.A;
        std::map<std::uint32_t, WittUniv> univ;
        for (std::uint32_t n = 1; n <= rc.nmax + 1; ++n)
            univ.emplace(n, univ_polys(A.p, n));

        for (std::uint32_t n = 1; n <= rc.nmax; ++n) {
            const auto& un = univ.at(n);
            const auto& un1 = univ.at(n + 1);
            // FV = p on W_n: exhaustive.
            for (std::size_t idx = 0; idx < witt_count(A, n); ++idx) {
                WittVec a = witt_elem_at(A, n, idx);
                REQUIRE(witt_F(A, witt_V(A, a)) == witt_ptimes(un, A, a));
            }
            // VF = p on W_{n+1}: exhaustive while |A|^{n+1} stays small.
            if (witt_count(A, n + 1) <= 4096) {
                for (std::size_t idx = 0; idx < witt_count(A, n + 1); ++idx) {
                    WittVec b = witt_elem_at(A, n + 1, idx);
                    REQUIRE(witt_V(A, witt_F(A, b)) == witt_ptimes(un1, A, b));
                }
            }
        }

        // Teichmuller multiplicativity over every pair of ring elements.
        std::uint32_t n = rc.nmax;
        const auto& un = univ.at(n);
        for (std::size_t i = 0; i < alg_order(A); ++i) {
            AlgElem x = alg_elem_at(A, i);
            for (std::size_t j = 0; j < alg_order(A); ++j) {
                AlgElem y = alg_elem_at(A, j);
                REQUIRE(witt_mul(un, A, witt_teich(A, x, n),
                                 witt_teich(A, y, n)) ==
                        witt_teich(A, A.mul(x, y), n));
            }
        }
    }
}

TEST_CASE("restriction and verschiebung commute and respect addition") {
    std::mt19937 rng(77);
    for (const auto& rc : {small_rings()[0], small_rings()[2], small_rings()[7]}) {
        const FinAlgebra& A = rc.A;
        std::uint32_t n = 3;
        auto un = univ_polys(A.p, n);
        auto un1 = univ_polys(A.p, n - 1);
        std::uniform_int_distribution<std::size_t> d(0, witt_count(A, n) - 1);
        for (int rep = 0; rep < 200; ++rep) {
            WittVec a = witt_elem_at(A, n, d(rng));
            WittVec b = witt_elem_at(A, n, d(rng));
            // R is a ring homomorphism.
            REQUIRE(witt_R(witt_add(un, A, a, b)) ==
                    witt_add(un1, A, witt_R(a), witt_R(b)));
            REQUIRE(witt_R(witt_mul(un, A, a, b)) ==
                    witt_mul(un1, A, witt_R(a), witt_R(b)));
            // RV = VR and RF = FR one level down.
            REQUIRE(witt_R(witt_V(A, a)) == witt_V(A, witt_R(a)));
            REQUIRE(witt_R(witt_F(A, a)) == witt_F(A, witt_R(a)));
        }
    }
}

TEST_CASE("verschiebung is additive and the V/R sequence is exact") {
    struct SeqCase {
        FinAlgebra A;
        std::uint32_t n, m;
    };
    std::vector<SeqCase> cases = {
        {field_fp(2), 1, 1},  {field_fp(2), 2, 1}, {field_fp(2), 1, 2},
        {field_fp2(2), 1, 1}, {field_fp(3), 1, 1}, {field_fp(3), 2, 1},
        {truncated_poly(2, 2), 1, 1},
    };
    for (const auto& sc : cases) {
        const FinAlgebra& A = sc.A;
        std::uint32_t total = sc.n + sc.m;
        auto un = univ_polys(A.p, sc.n);
        auto ut = univ_polys(A.p, total);

        auto Vm = [&](WittVec v) {
            for (std::uint32_t k = 0; k < sc.m; ++k) v = witt_V(A, v);
            return v;
        };
        auto Rn = [&](WittVec v) {
            for (std::uint32_t k = 0; k < sc.n; ++k) v = witt_R(v);
            return v;
        };

        // V^m additive + injective.
        std::set<std::size_t> vm_image;
        for (std::size_t ia = 0; ia < witt_count(A, sc.n); ++ia) {
            WittVec a = witt_elem_at(A, sc.n, ia);
            vm_image.insert(witt_elem_index(A, Vm(a)));
            for (std::size_t ib = 0; ib < witt_count(A, sc.n); ++ib) {
                WittVec b = witt_elem_at(A, sc.n, ib);
                REQUIRE(Vm(witt_add(un, A, a, b)) ==
                        witt_add(ut, A, Vm(a), Vm(b)));
            }
        }
        REQUIRE(vm_image.size() == witt_count(A, sc.n));

        // ker(R^n) = im(V^m) elementwise, and R^n is onto.
        std::set<std::size_t> rn_image;
        std::size_t kernel = 0;
        for (std::size_t idx = 0; idx < witt_count(A, total); ++idx) {
            WittVec w = witt_elem_at(A, total, idx);
            WittVec r = Rn(w);
            rn_image.insert(witt_elem_index(A, r));
            bool in_kernel = (r == witt_zero(A, sc.m));
            bool in_image = vm_image.count(idx) > 0;
            REQUIRE(in_kernel == in_image);
            if (in_kernel) ++kernel;
        }
        REQUIRE(rn_image.size() == witt_count(A, sc.m));
        REQUIRE(kernel == witt_count(A, sc.n));
    }
}
