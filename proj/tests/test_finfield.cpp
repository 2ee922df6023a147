#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "ihall/finite_field.hpp"
#include "ihall/matrix.hpp"
#include "ihall/subspaces.hpp"

using namespace ihall;

static Mat random_mat(const Fq& F, int r, int c, std::mt19937& rng) {
    Mat m(r, c);
    for (auto& x : m.a) x = (fq_t)(rng() % (unsigned long)F.q());
    return m;
}

TEST_CASE("field axioms, exhaustive per q") {
    for (long q : {2L, 3L, 4L, 5L, 7L, 8L, 9L, 16L, 25L, 27L, 32L}) {
        Fq F(q);
        INFO("q = " << q);
        CHECK(F.q() == q);
        // Characteristic.
        fq_t s = 0;
        for (long i = 0; i < F.p(); ++i) s = F.add(s, 1);
        CHECK(s == 0);
        for (long a = 0; a < q; ++a) {
            fq_t fa = (fq_t)a;
            CHECK(F.add(fa, 0) == fa);
            CHECK(F.mul(fa, 1) == fa);
            CHECK(F.add(fa, F.neg(fa)) == 0);
            if (a) {
                CHECK(F.mul(fa, F.inv(fa)) == 1);
                CHECK(F.pow(fa, q - 1) == 1);
            }
            CHECK(F.pow(fa, (long)q) == fa);  // Frobenius fixed points: x^q = x
            for (long b = 0; b < q; ++b) {
                fq_t fb = (fq_t)b;
                CHECK(F.add(fa, fb) == F.add(fb, fa));
                CHECK(F.mul(fa, fb) == F.mul(fb, fa));
                // Frobenius is additive: (a+b)^p = a^p + b^p.
                CHECK(F.pow(F.add(fa, fb), F.p()) == F.add(F.pow(fa, F.p()), F.pow(fb, F.p())));
                for (long c = 0; c < q; ++c) {
                    fq_t fc = (fq_t)c;
                    CHECK(F.add(F.add(fa, fb), fc) == F.add(fa, F.add(fb, fc)));
                    CHECK(F.mul(F.mul(fa, fb), fc) == F.mul(fa, F.mul(fb, fc)));
                    CHECK(F.mul(fa, F.add(fb, fc)) == F.add(F.mul(fa, fb), F.mul(fa, fc)));
                }
            }
        }
    }
}

TEST_CASE("prime power factorization guard") {
    CHECK_THROWS_AS(Fq(6), std::domain_error);
    CHECK_THROWS_AS(Fq(12), std::domain_error);
    CHECK_THROWS_AS(Fq(33), std::domain_error);
    CHECK(Fq(31).p() == 31);
    CHECK(Fq(27).k() == 3);
}

TEST_CASE("rank, rref, kernel, solve, inverse") {
    std::mt19937 rng(20260822);
    for (long q : {2L, 3L, 4L, 5L, 9L}) {
        Fq F(q);
        INFO("q = " << q);
        // Identity facts.
        Mat I = Mat::identity(4);
        CHECK(mat_rank(F, I) == 4);
        CHECK(kernel_basis(F, I).r == 0);
        // A known rank-2 matrix.
        Mat m(3, 3);
        m.at(0, 0) = 1; m.at(0, 1) = 1;
        m.at(1, 1) = 1; m.at(1, 2) = 1;
        m.at(2, 0) = 1; m.at(2, 1) = F.add(1, 1); m.at(2, 2) = 1;  // row0 + row1
        CHECK(mat_rank(F, m) == 2);
        Mat ker = kernel_basis(F, m);
        CHECK(ker.r == 1);
        for (int t = 0; t < ker.r; ++t) {
            std::vector<fq_t> x(ker.a.begin() + t * ker.c, ker.a.begin() + (t + 1) * ker.c);
            for (fq_t y : mat_vec(F, m, x)) CHECK(y == 0);
        }
        for (int trial = 0; trial < 25; ++trial) {
            Mat a = random_mat(F, 4, 5, rng);
            // rref is idempotent and rank-preserving.
            Rref e = rref(F, a);
            CHECK(mat_rank(F, e.m) == (int)e.pivots.size());
            Rref e2 = rref(F, e.m);
            CHECK(e2.m == e.m);
            // rank-nullity
            CHECK(mat_rank(F, a) + kernel_basis(F, a).r == a.c);
            // Solvability: A x = A y is always consistent, and the solution solves it.
            std::vector<fq_t> y((std::size_t)a.c);
            for (auto& v : y) v = (fq_t)(rng() % (unsigned long)q);
            auto b = mat_vec(F, a, y);
            auto x = solve(F, a, b);
            REQUIRE(x.has_value());
            CHECK(mat_vec(F, a, *x) == b);
            // Inverse round-trips when it exists.
            Mat sq = random_mat(F, 4, 4, rng);
            auto inv = mat_inverse(F, sq);
            if (mat_rank(F, sq) == 4) {
                REQUIRE(inv.has_value());
                CHECK(mat_mul(F, sq, *inv) == Mat::identity(4));
                CHECK(mat_mul(F, *inv, sq) == Mat::identity(4));
            } else {
                CHECK(!inv.has_value());
            }
        }
        // Inconsistent system.
        Mat z(2, 2);
        z.at(0, 0) = 1; z.at(1, 0) = 1;
        CHECK(!solve(F, z, {0, 1}).has_value());
    }
}

TEST_CASE("subspace enumeration matches Gaussian binomials") {
    for (long q : {2L, 3L, 4L}) {
        Fq F(q);
        for (int n = 0; n <= 4; ++n)
            for (int k = 0; k <= n; ++k) {
                std::set<Mat> seen;
                Int cnt = subspaces_rref(F, n, k, [&](const Mat& m) {
                    REQUIRE(m.r == k);
                    REQUIRE(m.c == n);
                    CHECK(mat_rank(F, m) == k);
                    // rref canonical: visiting its own rref reproduces it
                    CHECK(rref(F, m).m == m);
                    seen.insert(m);
                });
                CHECK(cnt == gauss_binom(n, k, Int(q)));
                CHECK(Int((long)seen.size()) == cnt);
            }
    }
}

TEST_CASE("subspace membership") {
    Fq F(3);
    Mat m(2, 3);
    m.at(0, 0) = 1; m.at(0, 2) = 2;
    m.at(1, 1) = 1; m.at(1, 2) = 1;
    Rref e = rref(F, m);
    CHECK(in_row_span(F, e, {1, 0, 2}));
    CHECK(in_row_span(F, e, {1, 1, 0}));   // row0 + row1 = (1,1,3=0)... check: (1,0,2)+(0,1,1)=(1,1,0) over F_3
    CHECK(!in_row_span(F, e, {0, 0, 1}));
    CHECK(in_row_span(F, e, {0, 0, 0}));
}

TEST_CASE("subspace budget guard") {
    Fq F(5);
    CHECK_THROWS_AS(subspaces_rref(F, 6, 3, [](const Mat&) {}, 10.0), SearchTooLarge);
}
