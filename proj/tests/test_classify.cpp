#include "oracles.hpp"

#include "wfano/brute.hpp"
#include "wfano/classify.hpp"
#include "wfano/qsmooth.hpp"

#include <doctest.h>

#include <numeric>
#include <random>

using namespace wfano;

namespace {

HypersurfaceFamily fam(std::initializer_list<Int> w, Int d)
{
    return {WeightSystem::canonicalize(w), d};
}

bool has_curve(const std::vector<QuotientSingularity> &basket)
{
    return std::any_of(basket.begin(), basket.end(), [](const QuotientSingularity &q) {
        return q.location == LocationKind::non_isolated_curve;
    });
}

std::vector<HypersurfaceFamily> box(std::vector<Int> bounds)
{
    BruteOptions opt;
    opt.bounds = std::move(bounds);
    opt.threads = 1;
    return brute_search(opt).families;
}

} // namespace

TEST_CASE("baskets of small examples")
{
    const auto b = singularities(fam({1, 1, 1, 1, 2}, 5));
    REQUIRE(b.size() == 1);
    CHECK(b[0].r == 2);
    CHECK(b[0].w == std::vector<Int>{1, 1, 1});
    CHECK(b[0].location == LocationKind::vertex);
    CHECK(singularities(fam({1, 1, 1, 1, 1}, 4)).empty());

    // Three points 1/2(1,1,1) on the line x0 = x1 = x2 = 0.
    const auto e = singularities(fam({1, 1, 1, 2, 2}, 6));
    REQUIRE(e.size() == 1);
    CHECK(e[0].location == LocationKind::edge_points);
    CHECK(e[0].count == 3);
    CHECK(e[0].w == std::vector<Int>{1, 1, 1});
}

TEST_CASE("terminal cyclic quotients")
{
    const Int half[] = {1, 1, 1};
    CHECK(is_terminal_type(2, half));
    const Int seven[] = {1, 2, 4};
    CHECK_FALSE(is_terminal_type(7, seven));
    const Int any[] = {5, 9, 2};
    CHECK(is_terminal_type(1, any));
    // In 1/4(2,2,1) the element of order 2 acts on the last coordinate only.
    const Int refl[] = {2, 2, 1};
    const CanonicalType t = canonical_type(4, refl);
    CHECK(t.reduced);
    CHECK(t.r == 2);
    CHECK(t.w == std::vector<Int>{1, 1, 1});
    const Int no_refl[] = {1, 1, 2};
    CHECK_FALSE(canonical_type(4, no_refl).reduced);
    // The trivially acting factor of 1/6(2,4,2) is divided out.
    const Int non_faithful[] = {2, 4, 2};
    CHECK(canonical_type(6, non_faithful).r == 3);
    const QuotientSingularity curve{2, {1, 1}, LocationKind::non_isolated_curve, {3, 4}, 1};
    CHECK_THROWS_AS(is_terminal_type(curve), UnsupportedConfiguration);
}

TEST_CASE("Reid-Tai on 1/r(1, r-1, b)")
{
    for (Int r = 2; r <= 300; ++r)
        for (Int b = 1; b < r; ++b) {
            if (std::gcd(b, r) != 1)
                continue;
            const Int w[] = {1, r - 1, b};
            REQUIRE(is_terminal_type(r, w));
        }
}

TEST_CASE("age test agrees with the oracle when there are no reflections")
{
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 20000; ++trial) {
        const Int r = std::uniform_int_distribution<Int>(2, 60)(rng);
        std::uniform_int_distribution<Int> dist(1, r - 1);
        Int w[] = {dist(rng), dist(rng), dist(rng)};
        if (std::gcd(w[0], r) != 1 || std::gcd(w[1], r) != 1 || std::gcd(w[2], r) != 1)
            continue;
        REQUIRE(is_terminal_type(r, w) == oracle::age_above_one(r, w));
        REQUIRE_FALSE(canonical_type(r, w).reduced);
    }
}

TEST_CASE("reduction agrees with the invariant-coordinate oracle")
{
    std::mt19937_64 rng(13);
    int reduced = 0;
    for (int trial = 0; trial < 20000; ++trial) {
        const Int r = std::uniform_int_distribution<Int>(1, 48)(rng);
        std::uniform_int_distribution<Int> dist(0, r - 1);
        const Int w[] = {dist(rng), dist(rng), dist(rng)};
        INFO("r=", r, " w=", w[0], ",", w[1], ",", w[2]);
        REQUIRE(is_terminal_type(r, w) == oracle::terminal_quotient(r, w));
        reduced += canonical_type(r, w).reduced;
    }
    CHECK(reduced > 1000);
}

TEST_CASE("classification flags")
{
    const auto smooth = classify_family(fam({1, 1, 1, 1, 1}, 4));
    CHECK(smooth.quasi_smooth);
    CHECK(smooth.terminal);
    CHECK(smooth.basket.empty());
    CHECK_FALSE(smooth.tiger_free);
    CHECK_FALSE(smooth.series);
    CHECK(classify_terminal(fam({1, 1, 1, 1, 2}, 5)));

    const auto big = fam({223, 9101, 46837, 112320, 168480}, 336960);
    const TigerKe f = tiger_ke_flags(big);
    CHECK(f.tiger_free);
    CHECK(f.ke);

    CHECK(detect_series_membership(fam({1, 1, 1, 2, 2}, 6)) == SeriesMembership{{1, 1, 1}, 1});
    CHECK_FALSE(detect_series_membership(fam({1, 1, 1, 1, 1}, 4)));
    CHECK_FALSE(detect_series_membership(fam({407, 547, 5311, 12528, 18792}, 37584)));

    const auto not_qs = classify_family(fam({2, 3, 4, 5, 7}, 20));
    CHECK_FALSE(not_qs.quasi_smooth);
    CHECK_FALSE(not_qs.terminal);
}

TEST_CASE("triples behind the series")
{
    const auto t = enumerate_48_triples();
    CHECK(t.size() == 48);
    CHECK(std::find(t.begin(), t.end(), std::array<Int, 3>{1, 1, 1}) != t.end());
    for (const auto &b : t) {
        CHECK(std::gcd(std::gcd(b[0], b[1]), b[2]) == 1);
        CHECK(oracle::qs13(b, 2 * (b[0] + b[1] + b[2])));
    }
}

TEST_CASE("record invariants on a box census")
{
    const auto fams = box({12, 20, 30, 40, 60});
    REQUIRE(fams.size() > 100);
    const auto recs = classify_all(fams, 1);
    CHECK(recs == classify_all(fams, 3));
    for (const ClassifiedRecord &r : recs) {
        CHECK(r.quasi_smooth);
        CHECK((!r.tiger_free || r.ke));
        const auto w = r.family.ws.weights();
        CHECK(r.tiger_free == (r.family.degree <= w[0] * w[1]));
        CHECK(r.ke == (3 * r.family.degree < 4 * w[0] * w[1]));
        if (r.terminal)
            CHECK_FALSE(has_curve(r.basket));
        for (const QuotientSingularity &q : r.basket) {
            CHECK(q.r >= 1);
            for (Int v : q.w)
                CHECK((0 <= v && v < q.r));
        }
    }
}

TEST_CASE("terminality does not depend on the eliminated partner")
{
    int multi = 0;
    for (const HypersurfaceFamily &f : box({15, 25, 40, 60, 90})) {
        std::vector<std::vector<std::size_t>> options;
        for (std::size_t i = 0; i < f.ws.size(); ++i) {
            auto adm = admissible_partners(f, i);
            if (adm.empty())
                adm.push_back(0);
            options.push_back(adm);
        }
        std::vector<std::size_t> choice(f.ws.size(), 0);
        const bool base = classify_terminal(f);
        for (;;) {
            std::vector<std::size_t> partner(f.ws.size());
            for (std::size_t i = 0; i < partner.size(); ++i)
                partner[i] = options[i][choice[i]];
            REQUIRE(classify_terminal(singularities(f, partner)) == base);
            std::size_t i = 0;
            while (i < choice.size() && ++choice[i] == options[i].size())
                choice[i++] = 0;
            if (i == choice.size())
                break;
            ++multi;
        }
    }
    CHECK(multi > 0);
}

TEST_CASE("inadmissible partner is rejected")
{
    const auto f = fam({1, 1, 1, 1, 2}, 5);
    const std::size_t partner[] = {0, 0, 0, 0, 4};
    CHECK_THROWS_AS(singularities(f, partner), std::invalid_argument);
}
