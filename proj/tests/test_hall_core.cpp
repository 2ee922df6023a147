#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <random>

#include "ihall/hall.hpp"

using namespace ihall;

static std::string expand_str(const std::vector<HallTerm>& ts) {
    std::string s;
    for (std::size_t i = 0; i < ts.size(); ++i)
        s += (i ? " + " : "") + rat_str(ts[i].coeff) + "*[" + ts[i].cls.str() + "]";
    return s;
}

TEST_CASE("diamond products: frozen small examples") {
    // C_2 at q = 2: [S_1] ⋄ [S_0] = [S_0 ⊕ S_1] + [(1,2)]  (ext dim 1, hom 0).
    HallEngine E(2, Quiver::cyclic(2));
    IsoClass s0 = E.simple(0), s1 = E.simple(1);
    auto& p = E.diamond(s1, s0);
    REQUIRE(p.size() == 2);
    CHECK(expand_str(p) == "1*[0:1+1:1] + 1*[1:2]");
    // Opposite order builds the other uniserial.
    CHECK(expand_str(E.diamond(s0, s1)) == "1*[0:1+1:1] + 1*[0:2]");

    // Jordan quiver at q = 2: [S] ⋄ [S] = 1/2 [S ⊕ S] + 1/2 [J_2].
    HallEngine J(2, Quiver::cyclic(1));
    IsoClass s = J.simple(0);
    auto& jp = J.diamond(s, s);
    REQUIRE(jp.size() == 2);
    CHECK(expand_str(jp) == "1/2*[0:1+0:1] + 1/2*[0:2]");

    // Corresponding filtration counts are integers:
    // F^{(1,2)}_{S1,S0} = 1, F^{S0+S1}_{S1,S0} = 1, F^{J2}_{S,S} = 1, F^{S+S}_{S,S} = q+1.
    CHECK(E.hall_number(E.segments({{1, 2}}), s1, s0) == 1);
    CHECK(E.hall_number(E.segments({{0, 1}, {1, 1}}), s1, s0) == 1);
    CHECK(J.hall_number(J.segments({{0, 2}}), s, s) == 1);
    CHECK(J.hall_number(J.segments({{0, 1}, {0, 1}}), s, s) == 3);  // q + 1 lines
    CHECK(J.hall_number(J.segments({{0, 2}}), J.segments({{0, 2}}), s) == 0);  // dim mismatch
}

TEST_CASE("diamond at q = 3 keeps exact rationals") {
    HallEngine J(3, Quiver::cyclic(1));
    IsoClass s = J.simple(0);
    auto& jp = J.diamond(s, s);
    CHECK(expand_str(jp) == "1/3*[0:1+0:1] + 2/3*[0:2]");
    CHECK(J.hall_number(J.segments({{0, 1}, {0, 1}}), s, s) == 4);  // q + 1
}

TEST_CASE("Riedtmann route equals submodule-enumeration oracle") {
    std::mt19937 rng(2024);
    int checked = 0;
    for (long q : {2L, 3L}) {
        for (int n : {1, 2, 3}) {
            HallEngine E(q, Quiver::cyclic(n));
            const Quiver& Q = E.quiver();
            // A spread of (M, N) pairs with total dim <= 5.
            std::vector<std::vector<Segment>> pool = {
                {{0, 1}}, {{0, 2}}, {{1, 1}}, {{0, 1}, {0, 1}}, {{0, 3}}, {{1, 2}}, {{0, 1}, {1, 1}},
            };
            for (auto& sm : pool)
                for (auto& sn : pool) {
                    IsoClass M = class_from_segments(Q, sm), N = class_from_segments(Q, sn);
                    if (dim_total(M.dim) + dim_total(N.dim) > 5) continue;
                    for (const auto& t : E.diamond(M, N)) {
                        Int rp = E.hall_number(t.cls, M, N);
                        Int oracle = E.f_count_oracle(t.cls, M, N);
                        INFO("q=" << q << " n=" << n << " L=" << t.cls.str() << " M=" << M.str()
                                  << " N=" << N.str());
                        CHECK(rp == oracle);
                        CHECK(rp > 0);  // L appears in the product, so some filtration exists
                        ++checked;
                    }
                    // Also check one class that does NOT appear: count must be 0.
                    IsoClass sum = class_from_segments(Q, [&] {
                        auto v = sm;
                        v.insert(v.end(), sn.begin(), sn.end());
                        return v;
                    }());
                    bool appears = false;
                    for (const auto& t : E.diamond(M, N)) appears |= (t.cls == sum);
                    if (!appears) CHECK(E.f_count_oracle(sum, M, N) == 0);
                }
        }
    }
    CHECK(checked >= 100);
}

TEST_CASE("diamond is associative") {
    std::mt19937 rng(77);
    int checked = 0;
    for (long q : {2L, 3L}) {
        for (int n : {1, 2}) {
            HallEngine E(q, Quiver::cyclic(n));
            const Quiver& Q = E.quiver();
            std::vector<IsoClass> pool = {
                E.simple(0), E.segments({{0, 2}}), E.segments({{0, 1}, {0, 1}}),
            };
            if (n == 2) {
                pool.push_back(E.simple(1));
                pool.push_back(E.segments({{1, 2}}));
            }
            auto mul = [&](const std::vector<HallTerm>& xs, const IsoClass& c) {
                std::map<IsoClass, Rat> acc;
                for (const auto& x : xs)
                    for (const auto& t : E.diamond(x.cls, c)) acc[t.cls] += x.coeff * t.coeff;
                std::vector<HallTerm> out;
                for (auto& [cls, co] : acc)
                    if (co != 0) out.push_back({cls, co});
                return out;
            };
            auto lmul = [&](const IsoClass& c, const std::vector<HallTerm>& xs) {
                std::map<IsoClass, Rat> acc;
                for (const auto& x : xs)
                    for (const auto& t : E.diamond(c, x.cls)) acc[t.cls] += x.coeff * t.coeff;
                std::vector<HallTerm> out;
                for (auto& [cls, co] : acc)
                    if (co != 0) out.push_back({cls, co});
                return out;
            };
            for (const auto& A : pool)
                for (const auto& B : pool)
                    for (const auto& C : pool) {
                        auto left = mul(E.diamond(A, B), C);
                        auto right = lmul(A, mul({{B, Rat(1)}}, C));
                        INFO("q=" << q << " n=" << n << " A=" << A.str() << " B=" << B.str()
                                  << " C=" << C.str());
                        CHECK(expand_str(left) == expand_str(right));
                        ++checked;
                    }
        }
    }
    CHECK(checked >= 50);
}

TEST_CASE("submodule tables are consistent with hall numbers") {
    for (long q : {2L, 3L}) {
        HallEngine E(q, Quiver::cyclic(2));
        IsoClass A = E.segments({{0, 2}, {1, 1}});
        const auto& tab = E.submodule_table(A);
        // Total number of submodules = sum of all entries; cross-check every
        // entry against the Riedtmann-route count.
        Int total = 0;
        for (const auto& [sub, row] : tab)
            for (const auto& [quot, cnt] : row) {
                total += cnt;
                INFO("q=" << q << " A=" << A.str() << " sub=" << sub.str() << " quot=" << quot.str());
                CHECK(E.hall_number(A, quot, sub) == cnt);
            }
        // Zero and full submodule always present.
        CHECK(tab.count(E.zero_class()) == 1);
        CHECK(tab.count(A) == 1);
        CHECK(total >= 2);
    }
}

TEST_CASE("budget guards") {
    HallEngine E(2, Quiver::cyclic(2), /*product_budget=*/4);
    // ext dim between (0,2)-powers is comfortably above 2 bits.
    IsoClass big = E.segments({{0, 2}, {0, 2}, {1, 2}, {1, 2}});
    CHECK_THROWS_AS(E.diamond(big, big), SearchTooLarge);
    HallEngine E2(2, Quiver::cyclic(1));
    CHECK_THROWS_AS(E2.f_count_oracle(E2.segments({{0, 1}, {0, 1}, {0, 1}}), E2.simple(0),
                                      E2.segments({{0, 1}, {0, 1}}), 2.0),
                    SearchTooLarge);
}

TEST_CASE("general-quiver diamond through the registry") {
    // A_2 chain 0 -> 1: [S_0] ⋄ [S_1] has the projective middle; [S_1] ⋄ [S_0] is split only.
    HallEngine E(2, parse_quiver("arrows:2:0-1"));
    IsoClass s0 = E.simple(0), s1 = E.simple(1);
    auto& p = E.diamond(s0, s1);
    REQUIRE(p.size() == 2);   // split and projective
    auto& ps = E.diamond(s1, s0);
    REQUIRE(ps.size() == 1);  // split only (no arrow 1 -> 0... Ext^1(S1,S0) = 0)
    CHECK(ps[0].coeff == 1);
    // Hall numbers on the tree via enumeration-backed aut orders.
    for (const auto& t : p) {
        Int rp = E.hall_number(t.cls, s0, s1);
        Int oracle = E.f_count_oracle(t.cls, s0, s1);
        CHECK(rp == oracle);
    }
}

TEST_CASE("persistent cache round trip and corruption") {
    std::string dir = (std::filesystem::temp_directory_path() / "ihall_cache_test").string();
    std::filesystem::remove_all(dir);
    {
        HallCache cache(dir);
        HallEngine E(2, Quiver::cyclic(2), 2.5e5, &cache);
        auto p1 = expand_str(E.diamond(E.simple(1), E.simple(0)));
        CHECK(cache.size() == 1);
        CHECK(cache.hits() == 0);
        // Same-process second call hits the memo, not the cache.
        E.diamond(E.simple(1), E.simple(0));
        CHECK(cache.hits() == 0);
    }
    {
        // Fresh engine, same cache dir: served from disk.
        HallCache cache(dir);
        CHECK(cache.size() == 1);
        HallEngine E(2, Quiver::cyclic(2), 2.5e5, &cache);
        auto& p = E.diamond(E.simple(1), E.simple(0));
        CHECK(cache.hits() == 1);
        CHECK(expand_str(p) == "1*[0:1+1:1] + 1*[1:2]");
    }
    {
        // One shard file per (quiver, q), named after both.
        HallCache cache(dir);
        CHECK(cache.shard_path(2, "cn:2") == dir + "/hall_cn-2_q2.txt");
        CHECK(std::filesystem::exists(cache.shard_path(2, "cn:2")));
        auto counts = cache.shard_counts();
        REQUIRE(counts.size() == 1);
        CHECK(counts.at(cache.shard_path(2, "cn:2")) == 1);
        // A put for a different field lands in its own shard.
        cache.put(3, "cn:2", "0:1", "0:1", {{"0:2", Rat(1)}});
        CHECK(std::filesystem::exists(cache.shard_path(3, "cn:2")));
        CHECK(cache.shard_counts().size() == 2);
        CHECK(cache.compact() == 2);
    }
    {
        // Conflicting line appended behind our back -> CorruptCache at load.
        std::ofstream out(dir + "/hall_cn-2_q2.txt", std::ios::app);
        out << "q=2 quiver=cn:2 A=1:1 B=0:1 -> 0:1+1:1:7\n";
        out.close();
        CHECK_THROWS_AS(HallCache(dir), CorruptCache);
    }
    std::filesystem::remove_all(dir);
    {
        // Bad header.
        std::filesystem::create_directories(dir);
        std::ofstream out(dir + "/hall_cn-2_q2.txt");
        out << "# something else\n";
        out.close();
        CHECK_THROWS_AS(HallCache(dir), CorruptCache);
    }
    std::filesystem::remove_all(dir);
}

TEST_CASE("ext_count_with_middle splits the ext group") {
    HallEngine E(3, Quiver::cyclic(2));
    IsoClass s0 = E.simple(0), s1 = E.simple(1);
    // |Ext^1(S0,S1)| = q; split class gets 1, uniserial gets q - 1.
    CHECK(E.ext_count_with_middle(E.segments({{0, 1}, {1, 1}}), s0, s1) == 1);
    CHECK(E.ext_count_with_middle(E.segments({{0, 2}}), s0, s1) == 2);
    CHECK(E.ext_dim(s0, s1) == 1);
    CHECK(E.hom_dim(s0, s1) == 0);
}
