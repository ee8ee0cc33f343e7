#include "doctest.h"

#include "hforge/weights.hpp"

#include <algorithm>

using namespace hforge;

namespace {
Weight W(std::initializer_list<long> l) { return Weight(std::vector<long>(l)); }
}  // namespace

TEST_SUITE("weights-criticality") {

TEST_CASE("purity") {
    for (long k : {2L, 4L, 7L}) {
        PurityResult r = check_purity(W({k - 2, 0}));
        CHECK(r.pure);
        CHECK(r.w == std::optional<long>(k - 2));
    }
    CHECK(check_purity(W({3, 1, -1})).w == std::optional<long>(2));
    CHECK_FALSE(check_purity(W({3, 2, 0})).pure);
    CHECK(check_purity(W({4})).w == std::optional<long>(8));
    CHECK(check_purity(W({4})).degenerate_gl1);
    // two embeddings must share w
    CHECK(check_purity(Weight(std::vector<std::vector<long>>{{3, 1, -1}, {4, 1, -2}})).pure);
    CHECK_FALSE(check_purity(Weight(std::vector<std::vector<long>>{{3, 1, -1}, {4, 2, 0}})).pure);
    CHECK(W({3, 1, -1}).regular());
    CHECK_FALSE(W({3, 3, -1}).regular());
    CHECK(W({3, 3, -1}).dominant());
    CHECK(W({3, 1, -2}).contragredient() == W({2, -1, -3}));
}

TEST_CASE("branching") {
    CHECK(branch({1, 0}) == std::vector<std::vector<long>>{{1}, {0}});
    CHECK(branch({2, 0}) == std::vector<std::vector<long>>{{2}, {1}, {0}});
    CHECK(branch({2, 1, 0}) == std::vector<std::vector<long>>{{2, 1}, {2, 0}, {1, 1}, {1, 0}});
    for (long a = -3; a <= 4; ++a)
        for (long b = -4; b <= a; ++b) CHECK(static_cast<long>(branch({a, b}).size()) == a - b + 1);
    std::mt19937_64 rng(8);
    for (int t = 0; t < 60; ++t) {
        int n = 2 + static_cast<int>(rng() % 4);
        std::vector<long> mu = random_pure_weight(rng, n, 5);
        auto bs = branch(mu);
        CHECK(static_cast<long>(bs.size()) == branch_count(mu));
        CHECK(std::is_sorted(bs.begin(), bs.end(), std::greater<>()));
        CHECK(std::adjacent_find(bs.begin(), bs.end()) == bs.end());
    }
}

TEST_CASE("embedding sets") {
    for (long a = 0; a <= 5; ++a)
        for (long b = -3; b <= a; ++b)
            for (long c = -2; c <= 2; ++c) {
                std::vector<long> want;
                for (long x = b + c; x <= a + c; ++x) want.push_back(x);
                CHECK(emb_set(W({c}), W({a, b})) == want);
            }
    CHECK(emb_set(W({1, -1}), W({1, 0, -1})) == std::vector<long>{0});
    CHECK(emb_set(W({0}), W({1, 0})) == std::vector<long>{0, 1});
    // brute force over candidate shifts
    std::mt19937_64 rng(3);
    for (int t = 0; t < 100; ++t) {
        int n = 2 + static_cast<int>(rng() % 4);
        std::vector<long> mu = random_pure_weight(rng, n), nu = random_pure_weight(rng, n - 1);
        std::vector<long> want;
        std::vector<long> check(nu.rbegin(), nu.rend());
        for (auto& x : check) x = -x;
        for (long s = -80; s <= 80; ++s) {
            bool ok = true;
            for (size_t i = 0; i + 1 < mu.size(); ++i)
                if (!(mu[i] >= check[i] + s && check[i] + s >= mu[i + 1])) ok = false;
            if (ok) want.push_back(s);
        }
        CHECK(emb_set(Weight(nu), Weight(mu)) == want);
    }
}

TEST_CASE("Langlands parameters") {
    CHECK(langlands_parameter(W({2, 0}), 2) == std::vector<std::vector<long>>{{3, -3}});
    CHECK(langlands_parameter(W({3, 1, -1}), 2) == std::vector<std::vector<long>>{{6, 0, -6}});
    CHECK(langlands_parameter(W({0}), 0) == std::vector<std::vector<long>>{{0}});
}

TEST_CASE("critical data for GL_2 x GL_1") {
    for (long k : {2L, 4L, 6L, 12L}) {
        CriticalData d = critical_data(W({k - 2, 0}), W({0}));
        CHECK(d.parity_ok);
        CHECK(d.gl1_flag);
        CHECK(d.l == std::vector<std::vector<long>>{{k - 1, 1 - k}});
        CHECK(d.min_gap == k - 1);
        CHECK(d.nu_min == Rat(2 - k, 2));
        CHECK(d.emb.size() == static_cast<size_t>(k - 1));
        CHECK(d.critical_set.size() == static_cast<size_t>(k - 1));
        CHECK(d.center == Rat(k - 1, 2));
        // the closed interval [s_min, s_max] has 2k - 3 members, not k - 1
        CHECK(d.s_max - d.s_min + Rat(1) == Rat(2 * k - 3));
        CHECK(d.interval_matches == (k == 2));
        CHECK(d.nu_min_from_emb == std::optional<long>(0));
    }
}

TEST_CASE("critical data examples") {
    CriticalData d = critical_data(W({1, 0, -1}), W({1, -1}));
    CHECK(d.emb == std::vector<long>{0});
    CHECK(d.center == Rat(1, 2));
    CHECK(d.critical_set == std::vector<Rat>{Rat(1, 2)});
    CriticalData odd = critical_data(W({1, 0}), W({0}));
    CHECK_FALSE(odd.parity_ok);
    CHECK(odd.critical_set.empty());
    CHECK(odd.emb == std::vector<long>{0, 1});
    CHECK_THROWS_AS(critical_data(W({3, 2, 0}), W({0, 0})), std::invalid_argument);
    CHECK_THROWS_AS(critical_data(W({0, 1}), W({0})), std::invalid_argument);
}

TEST_CASE("random pure pairs") {
    std::mt19937_64 rng(500);
    int with_emb = 0, interval_ok = 0, half_gap_ok = 0;
    for (int t = 0; t < 500; ++t) {
        int n = 2 + static_cast<int>(rng() % 4);
        std::vector<long> mu = random_pure_weight(rng, n), nu = random_pure_weight(rng, n - 1);
        CHECK(check_purity(Weight(mu)).pure);
        CHECK(Weight(mu).regular());
        CriticalData d = critical_data(Weight(mu), Weight(nu));
        // reflection nu -> w + v - nu preserves Emb
        for (long x : d.emb) CHECK(std::binary_search(d.emb.begin(), d.emb.end(), d.w + d.v - x));
        if (!d.parity_ok) {
            CHECK(d.critical_set.empty());
            continue;
        }
        REQUIRE(d.critical_set.size() == d.emb.size());
        for (size_t i = 0; i < d.emb.size(); ++i) {
            CHECK(d.critical_set[i] == Rat(1, 2) + Rat(d.emb[i]));
            CHECK(d.critical_set[i] + d.critical_set[d.emb.size() - 1 - i] == Rat(2) * d.center);
        }
        if (d.emb.empty()) continue;
        ++with_emb;
        if (d.interval_matches) ++interval_ok;
        // Emb starts at (w + v)/2 - min_gap/2 + 1/2
        if (Rat(*d.nu_min_from_emb) == Rat(d.w + d.v, 2) - Rat(d.min_gap, 2) + Rat(1, 2)) ++half_gap_ok;
        CHECK(d.interval_matches == (d.min_gap == 1));
    }
    CHECK(with_emb > 50);
    CHECK(half_gap_ok == with_emb);
    CHECK(interval_ok < with_emb);
}

TEST_CASE("random pure weights are pure and regular") {
    std::mt19937_64 rng(1);
    for (int n = 1; n <= 6; ++n)
        for (int t = 0; t < 30; ++t) {
            Weight w(random_pure_weight(rng, n));
            CHECK(check_purity(w).pure);
            CHECK(w.regular());
        }
}

}
