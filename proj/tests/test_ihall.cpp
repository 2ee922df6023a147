#include <catch2/catch_amalgamated.hpp>

#include "ihall/ihall.hpp"

using namespace ihall;

TEST_CASE("frozen small products in the iHall algebra of C_2") {
    HallEngine E(2, Quiver::cyclic(2));
    IHallAlgebra H(E);
    IHallElem s0 = H.basis(E.simple(0)), s1 = H.basis(E.simple(1));

    // [S_1]*[S_1] = v^{-1} [S_1 ⊕ S_1] + v^{-1} (q-1) [0]*K_{e_1}; at q=2, v^{-1} = v/2.
    IHallElem p = s1 * s1;
    CHECK(p.str() == "(0 + 1/2*v)*[0]*K[0,1] + (0 + 1/2*v)*[1:1+1:1]");

    // [S_1]*[S_0]: single fiber f = 0, twist v^{+1}.
    IHallElem p10 = s1 * s0;
    CHECK(p10.coeff(E.segments({{0, 1}, {1, 1}}), {0, 0}) == QSqrt(2, 0, Rat(1, 2)));
    CHECK(p10.coeff(E.segments({{1, 2}}), {0, 0}) == QSqrt(2, 0, Rat(1, 2)));
    CHECK(p10.terms.size() == 2);

    // Unit and torus behave as a central group algebra.
    CHECK(H.unit() * p10 == p10);
    CHECK(p10 * H.unit() == p10);
    IHallElem k1 = H.torus({0, 1}), k1inv = H.torus({0, -1});
    CHECK(k1 * k1inv == H.unit());
    CHECK((k1 * p10) == (p10 * k1));
    CHECK((k1 * H.torus({3, -2})) == H.torus({3, -1}));
}

TEST_CASE("iHall product at q = 3: exact scalars") {
    HallEngine E(3, Quiver::cyclic(2));
    IHallAlgebra H(E);
    IHallElem s1 = H.basis(E.simple(1));
    IHallElem p = s1 * s1;
    // v^{-1} = v/3; coefficient of K-term: v^{-1}(q-1) = 2v/3.
    CHECK(p.coeff(E.segments({{1, 1}, {1, 1}}), {0, 0}) == QSqrt(3, 0, Rat(1, 3)));
    CHECK(p.coeff(E.zero_class(), {0, 1}) == QSqrt(3, 0, Rat(2, 3)));
}

TEST_CASE("leading part equals the twisted Ringel-Hall product") {
    for (long q : {2L, 3L}) {
        for (int n : {1, 2, 3}) {
            HallEngine E(q, Quiver::cyclic(n));
            IHallAlgebra H(E);
            std::vector<IsoClass> pool = {E.simple(0), E.segments({{0, 2}}),
                                          E.segments({{0, 1}, {0, 1}})};
            if (n >= 2) {
                pool.push_back(E.simple(1));
                pool.push_back(E.segments({{1, 2}, {0, 1}}));
            }
            for (const auto& A : pool)
                for (const auto& B : pool) {
                    IHallElem full = H.mul(H.basis(A), H.basis(B));
                    IHallElem lead = H.leading_part(full, dim_add(A.dim, B.dim));
                    INFO("q=" << q << " n=" << n << " A=" << A.str() << " B=" << B.str());
                    CHECK(lead == H.twisted_rh_product(A, B));
                }
        }
    }
}

TEST_CASE("Mult1 and Mult2 normalizations agree") {
    for (long q : {2L, 3L}) {
        for (int n : {1, 2}) {
            HallEngine E(q, Quiver::cyclic(n));
            IHallAlgebra H(E);
            std::vector<IsoClass> pool = {E.simple(0), E.segments({{0, 2}}),
                                          E.segments({{0, 1}, {0, 1}})};
            if (n == 2) pool.push_back(E.segments({{1, 2}}));
            for (const auto& A : pool)
                for (const auto& B : pool) {
                    INFO("q=" << q << " n=" << n << " A=" << A.str() << " B=" << B.str());
                    CHECK(H.mul(H.basis(A), H.basis(B)) == H.mul1(H.basis(A), H.basis(B)));
                }
        }
    }
}

TEST_CASE("census routes agree and sum to q^hom") {
    for (long q : {2L, 3L}) {
        HallEngine E(q, Quiver::cyclic(2));
        IHallAlgebra H(E);
        std::vector<IsoClass> pool = {E.simple(0), E.simple(1), E.segments({{0, 2}}),
                                      E.segments({{0, 1}, {1, 1}}), E.segments({{0, 2}, {1, 1}})};
        for (const auto& A : pool)
            for (const auto& B : pool) {
                auto ca = H.census_by_hom_enum(A, B);
                auto cb = H.census_by_subtable(A, B);
                INFO("q=" << q << " A=" << A.str() << " B=" << B.str());
                CHECK(ca == cb);
                Int total = 0;
                for (auto& [k, c] : ca) total += c;
                CHECK(total == ipow(q, (unsigned long)E.hom_dim(A, B)));
            }
    }
}

TEST_CASE("iHall product is associative (with torus factors mixed in)") {
    for (long q : {2L, 3L}) {
        HallEngine E(q, Quiver::cyclic(2));
        IHallAlgebra H(E);
        std::vector<IHallElem> pool = {
            H.basis(E.simple(0)),
            H.basis(E.simple(1)),
            H.basis(E.segments({{0, 2}})),
            H.basis(E.segments({{1, 1}}), {1, 0}),   // [S_1]*K_{e_0}
            H.torus({0, 1}) + H.basis(E.simple(0)).scaled(QSqrt::v_pow(q, -1)),
        };
        for (const auto& A : pool)
            for (const auto& B : pool)
                for (const auto& C : pool) {
                    IHallElem left = (A * B) * C;
                    IHallElem right = A * (B * C);
                    CHECK(left == right);
                }
    }
}

TEST_CASE("iHall on a tree quiver through the registry") {
    HallEngine E(2, parse_quiver("arrows:2:0-1"));
    IHallAlgebra H(E);
    IHallElem s0 = H.basis(E.simple(0)), s1 = H.basis(E.simple(1));
    // Hom(S_0,S_1) = 0 = Hom(S_1,S_0); Ext^1(S_0,S_1) = k, Ext^1(S_1,S_0) = 0.
    IHallElem p01 = s0 * s1;  // twist v^{-<e0,e1>} = v^{+1}; two middle classes
    CHECK(p01.terms.size() == 2);
    IHallElem p10 = s1 * s0;  // split only
    CHECK(p10.terms.size() == 1);
    // Commutator [S_1]*[S_0] - [S_0]*[S_1] is supported off the split class only
    // after the split terms cancel... they do not cancel here (different twists);
    // just pin associativity instead.
    CHECK(((s0 * s0) * s1) == (s0 * (s0 * s1)));
    CHECK(((s1 * s0) * s0) == (s1 * (s0 * s0)));
}

TEST_CASE("census budget raises SearchTooLarge, subtable route rescues") {
    HallEngine E(2, Quiver::cyclic(1));
    // hom(S^3, S^3) = 9 -> q^9 = 512 maps; choke the hom-enum budget.
    IHallAlgebra H(E, /*census_budget=*/100, /*route_b_threshold=*/100);
    IsoClass A = E.segments({{0, 1}, {0, 1}, {0, 1}});
    CHECK_THROWS_AS(H.census_by_hom_enum(A, A), SearchTooLarge);
    // Auto falls over to the subtable route and still totals q^hom.
    const auto& c = H.hom_fiber_census(A, A);
    Int total = 0;
    for (auto& [k, cnt] : c) total += cnt;
    CHECK(total == 512);
}
