#include "oracles.hpp"

#include "wfano/brute.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>

using namespace wfano;

namespace {

std::vector<std::vector<Int>> weights_of(const BruteResult &r)
{
    std::vector<std::vector<Int>> out;
    for (const auto &f : r.families)
        out.push_back(f.ws.vector());
    return out;
}

BruteResult run(std::vector<Int> bounds, bool prune = true, int threads = 1,
                FamilyKind kind = FamilyKind::fano)
{
    BruteOptions opt;
    opt.bounds = std::move(bounds);
    opt.prune = prune;
    opt.threads = threads;
    opt.kind = kind;
    return brute_search(opt);
}

std::filesystem::path scratch_dir(const char *name)
{
    auto dir = std::filesystem::temp_directory_path() / name;
    std::filesystem::remove_all(dir);
    return dir;
}

} // namespace

TEST_CASE("single-tuple box")
{
    const BruteResult r = run({1, 1, 1, 1, 1});
    REQUIRE(r.families.size() == 1);
    CHECK(r.families[0].ws.vector() == std::vector<Int>{1, 1, 1, 1, 1});
    CHECK(r.families[0].degree == 4);
}

TEST_CASE("small boxes match the nested-loop oracle")
{
    for (const std::vector<Int> &bounds :
         {std::vector<Int>{3, 3, 3, 3, 3}, std::vector<Int>{6, 8, 10, 12, 16},
          std::vector<Int>{4, 6, 9}, std::vector<Int>{5, 5, 7, 9}}) {
        const auto expect = oracle::box_census(bounds, -1);
        CHECK(weights_of(run(bounds, true)) == expect);
        CHECK(weights_of(run(bounds, false)) == expect);
    }
    const std::vector<Int> cy{12, 12, 12, 12};
    CHECK(weights_of(run(cy, true, 1, FamilyKind::cy)) == oracle::box_census(cy, 0));
}

TEST_CASE("pruning, threads and counters")
{
    const BruteResult pruned = run({10, 10, 10, 10, 10}, true, 1);
    const BruteResult full = run({10, 10, 10, 10, 10}, false, 1);
    const BruteResult parallel = run({10, 10, 10, 10, 10}, true, 3);
    CHECK(pruned.families == full.families);
    CHECK(pruned.families == parallel.families);
    CHECK(pruned.survivors == parallel.survivors);
    CHECK(pruned.families.size() == 94);
    for (const BruteResult *r : {&pruned, &full})
        for (std::size_t s = 1; s < brute_stage_count; ++s)
            CHECK(r->survivors[s] <= r->survivors[s - 1]);
    CHECK(full.survivors[4] == static_cast<long long>(full.families.size()));
    CHECK(full.survivors[0] == 2002); // C(14, 5) sorted 5-tuples from 1..10
    CHECK(pruned.survivors[0] < full.survivors[0]);
    const auto order = prune_order();
    REQUIRE(order.size() == brute_stage_count);
    for (std::size_t i = 0; i < order.size(); ++i)
        CHECK(static_cast<std::size_t>(order[i].stage) == i);
}

TEST_CASE("bad options are rejected")
{
    CHECK_THROWS_AS(run({1}), std::invalid_argument);
    CHECK_THROWS_AS(run({0, 1, 1}), std::invalid_argument);
    CHECK_THROWS_AS(run({2, 2, 2}, true, 1, FamilyKind::general_type), std::invalid_argument);
}

TEST_CASE("checkpoint journal resumes")
{
    const auto dir = scratch_dir("wfano_brute_journal");
    BruteOptions opt;
    opt.bounds = {8, 8, 10, 12, 14};
    opt.threads = 1;
    opt.checkpoint_dir = dir;
    const BruteResult first = brute_search(opt);
    CHECK(first.prefixes_resumed == 0);
    const BruteResult second = brute_search(opt);
    CHECK(second.prefixes_resumed == second.prefixes);
    CHECK(second.families == first.families);
    CHECK(second.survivors == first.survivors);

    // A torn final record is dropped and recomputed.
    {
        std::ofstream out(dir / "brute.journal", std::ios::app);
        out << "{\"prefix\":[8,8],\"surv";
    }
    const BruteResult third = brute_search(opt);
    CHECK(third.families == first.families);

    opt.prune = false;
    CHECK_THROWS_AS(brute_search(opt), std::runtime_error);
    std::filesystem::remove_all(dir);
}
