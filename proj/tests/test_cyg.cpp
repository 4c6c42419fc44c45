#include "oracles.hpp"

#include "wfano/classify.hpp"
#include "wfano/cyg.hpp"
#include "wfano/qsmooth.hpp"

#include <doctest.h>

#include <random>
#include <set>

using namespace wfano;

TEST_CASE("plane curves with trivial canonical class")
{
    const CySearchResult r = cy_search(2, 10, 1);
    std::vector<std::vector<Int>> w;
    for (const auto &f : r.families) {
        w.push_back(f.ws.vector());
        CHECK(f.degree == f.ws.sum());
    }
    CHECK(w == std::vector<std::vector<Int>>{{1, 1, 1}, {1, 1, 2}, {1, 2, 3}});
    CHECK(r.max_weight == 10);
    CHECK(oracle::box_census(std::vector<Int>{10, 10, 10}, 0) == w);
}

TEST_CASE("K3 weight systems")
{
    const CySearchResult r = cy_search(3, 50, 1);
    CHECK(r.families.size() == 95);
    for (const auto &f : r.families) {
        CHECK(f.degree == f.ws.sum());
        CHECK(kernel::quasi_smooth(f.ws.weights(), f.degree));
    }
    // Stable once the list is complete.
    CHECK(cy_search(3, 100, 1).families == r.families);

    std::set<std::array<Int, 3>> from_k3;
    for (const auto &f : r.families) {
        const auto w = f.ws.weights();
        if (w[3] == w[0] + w[1] + w[2])
            from_k3.insert({w[0], w[1], w[2]});
    }
    const auto t = enumerate_48_triples();
    CHECK(from_k3 == std::set<std::array<Int, 3>>(t.begin(), t.end()));
}

TEST_CASE("cone construction")
{
    const HypersurfaceFamily sextic{WeightSystem::canonicalize({1, 1, 2}), 6};
    const HypersurfaceFamily c = cone_extend(sextic, 2);
    CHECK(c.ws.vector() == std::vector<Int>{1, 1, 1, 1, 2});
    CHECK(c.degree == 6);
    CHECK(c.kind() == FamilyKind::cy);
    CHECK(kernel::quasi_smooth(c.ws.weights(), c.degree));

    const HypersurfaceFamily quintic{WeightSystem::canonicalize({1, 1, 1, 1}), 5};
    CHECK(cone_extend(quintic, 1).ws.vector() == std::vector<Int>{1, 1, 1, 1, 1});
    const HypersurfaceFamily k3 = HypersurfaceFamily::calabi_yau(WeightSystem::canonicalize({1, 1, 1, 1}));
    CHECK(cone_extend(k3, 0) == k3);
    CHECK_THROWS_AS(cone_extend(sextic, 1), DegreeMismatch);
}

TEST_CASE("cone construction preserves quasi-smoothness")
{
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<Int> dist(1, 12);
    std::uniform_int_distribution<Int> twist(1, 4);
    int tested = 0;
    for (int trial = 0; trial < 3000; ++trial) {
        std::vector<Int> w(4);
        for (Int &a : w)
            a = dist(rng);
        std::sort(w.begin(), w.end());
        const Int k = twist(rng);
        const Int d = std::accumulate(w.begin(), w.end(), Int{0}) + k;
        if (!oracle::well_formed(w) || !oracle::quasi_smooth(w, d))
            continue;
        const HypersurfaceFamily f{WeightSystem::canonicalize(w), d};
        const HypersurfaceFamily c = cone_extend(f, k);
        CHECK(c.degree == c.ws.sum());
        CHECK(kernel::quasi_smooth(c.ws.weights(), c.degree));
        ++tested;
    }
    CHECK(tested > 20);
}
