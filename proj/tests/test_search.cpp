#include "oracles.hpp"

#include "wfano/qsmooth.hpp"
#include "wfano/search.hpp"

#include <doctest.h>

#include <random>

using namespace wfano;

namespace {

SearchCase make_case(std::vector<std::size_t> target, std::vector<std::optional<Int>> m,
                     RhsKind kind = RhsKind::fano)
{
    return {std::move(target), std::move(m), kind};
}

// Exact rational Gauss-Jordan elimination on small systems.
struct Fraction {
    __int128 num = 0;
    __int128 den = 1;

    void normalize()
    {
        __int128 a = num < 0 ? -num : num, b = den;
        while (b != 0) {
            __int128 t = a % b;
            a = b;
            b = t;
        }
        if (a > 1) {
            num /= a;
            den /= a;
        }
        if (den < 0) {
            num = -num;
            den = -den;
        }
    }
    Fraction operator-(const Fraction &o) const
    {
        Fraction f{num * o.den - o.num * den, den * o.den};
        f.normalize();
        return f;
    }
    Fraction operator*(const Fraction &o) const
    {
        Fraction f{num * o.num, den * o.den};
        f.normalize();
        return f;
    }
    Fraction operator/(const Fraction &o) const
    {
        Fraction f{num * o.den, den * o.num};
        f.normalize();
        return f;
    }
};

// Unique solution of the (M + J + U) a = rhs system, if any.
std::optional<std::vector<Fraction>> gauss(const SearchCase &c)
{
    const std::size_t n = c.size();
    const Int rhs = c.rhs_kind == RhsKind::fano ? -1 : 0;
    std::vector<std::vector<Fraction>> a(n, std::vector<Fraction>(n + 1));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k)
            a[i][k].num = -1 + (k == i ? *c.m[i] : 0) + (k == c.target[i] ? 1 : 0);
        a[i][n].num = rhs;
    }
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && a[piv][col].num == 0)
            ++piv;
        if (piv == n)
            return std::nullopt;
        std::swap(a[piv], a[col]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || a[r][col].num == 0)
                continue;
            const Fraction f = a[r][col] / a[col][col];
            for (std::size_t k = col; k <= n; ++k)
                a[r][k] = a[r][k] - f * a[col][k];
        }
    }
    std::vector<Fraction> x(n);
    for (std::size_t i = 0; i < n; ++i)
        x[i] = a[i][n] / a[i][i];
    return x;
}

} // namespace

TEST_CASE("exponent bounds")
{
    const ExponentBounds b = exponent_bounds();
    CHECK(b.m4.lo == 1);
    CHECK(b.m4.hi == 3);
    CHECK(b.m2.lo == 3);
    CHECK(b.m2.hi == 16);
    CHECK(b.m3.lo == 2);
    CHECK(b.m3.hi == 6);
    CHECK(b.m1.hi == 83);
    CHECK(b.case1_cap == 83);
}

TEST_CASE("solve_case on the worked examples")
{
    // x0^91 x1, x1^59 x2, x2^7 x0, x3^2 x3, x4 x4.
    const auto big = make_case({1, 2, 0, 3, 4}, {91, 59, 7, 2, 1});
    const SolveResult r = solve_case(big);
    REQUIRE(std::holds_alternative<RationalSolution>(r));
    CHECK(std::get<RationalSolution>(r).positive_integral() ==
          std::vector<Int>{407, 547, 5311, 12528, 18792});

    const auto smooth = make_case({0, 1, 2, 3, 4}, {3, 3, 3, 3, 3});
    CHECK(std::get<RationalSolution>(solve_case(smooth)).positive_integral() ==
          std::vector<Int>{1, 1, 1, 1, 1});

    // Rows 0 and 1 both encode x0 x1.
    const auto dependent = make_case({1, 0, 2, 3, 4}, {1, 1, 3, 3, 3});
    CHECK(std::holds_alternative<Singular>(solve_case(dependent)));

    CHECK_THROWS_AS(solve_case(make_case({0, 1}, {1, std::nullopt})), std::invalid_argument);
    CHECK_THROWS_AS(solve_case(make_case({0, 5}, {1, 1})), std::invalid_argument);
}

TEST_CASE("solve_case agrees with rational elimination and substitutes back")
{
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<std::size_t> tgt(0, 4);
    std::uniform_int_distribution<Int> exp(1, 20);
    int solved = 0;
    for (int trial = 0; trial < 3000; ++trial) {
        SearchCase c;
        for (std::size_t i = 0; i < 5; ++i) {
            c.target.push_back(tgt(rng));
            c.m.push_back(exp(rng));
        }
        const auto expect = gauss(c);
        const SolveResult got = solve_case(c);
        if (!expect) {
            CHECK_FALSE(std::holds_alternative<RationalSolution>(got));
            continue;
        }
        REQUIRE(std::holds_alternative<RationalSolution>(got));
        const RationalSolution &s = std::get<RationalSolution>(got);
        for (std::size_t k = 0; k < 5; ++k)
            REQUIRE((*expect)[k].num * s.denominator == (*expect)[k].den * s.numerators[k]);
        if (auto w = s.positive_integral()) {
            ++solved;
            const auto a = system_matrix(c);
            for (std::size_t i = 0; i < 5; ++i) {
                Int row = 0;
                for (std::size_t k = 0; k < 5; ++k)
                    row += a[i][k] * (*w)[k];
                REQUIRE(row == -1);
            }
        }
    }
    CHECK(solved > 0);
}

TEST_CASE("one unknown: reduction matches direct solves")
{
    std::mt19937_64 rng(9);
    std::uniform_int_distribution<std::size_t> tgt(0, 4);
    std::uniform_int_distribution<Int> exp(1, 12);
    for (int trial = 0; trial < 500; ++trial) {
        SearchCase c;
        for (std::size_t i = 0; i < 5; ++i) {
            c.target.push_back(tgt(rng));
            c.m.push_back(exp(rng));
        }
        c.m[0] = std::nullopt;
        const OneUnknownReduction red = reduce_one_unknown(c);
        CHECK(red.q[0] == 0);
        for (Int m = 1; m <= 30; ++m) {
            SearchCase full = c;
            full.m[0] = m;
            const auto expect = gauss(full);
            const __int128 det = static_cast<__int128>(red.alpha) * m + red.beta;
            REQUIRE((det == 0) == !expect.has_value());
            if (!expect)
                continue;
            for (std::size_t k = 0; k < 5; ++k)
                REQUIRE((*expect)[k].num * det ==
                        (*expect)[k].den * (red.p[k] + static_cast<__int128>(red.q[k]) * m));
        }
        const OneUnknownResult r = solve_one_unknown(c);
        if (const auto *b = std::get_if<BoundedSolutions>(&r)) {
            for (const auto &[m, w] : b->solutions) {
                SearchCase full = c;
                full.m[0] = m;
                REQUIRE(std::get<RationalSolution>(solve_case(full)).positive_integral() == w);
            }
        }
    }
}

TEST_CASE("series branch of the one-unknown solve")
{
    // a_0 = 2 constant: x0^m x4, x_i^5 x_i for the three weights k, x4^2 x0.
    const auto c = make_case({4, 1, 2, 3, 0}, {std::nullopt, 5, 5, 5, 2});
    const OneUnknownResult r = solve_one_unknown(c);
    REQUIRE(std::holds_alternative<SeriesBranch>(r));
    const LinearFamily &f = std::get<SeriesBranch>(r).family;
    CHECK(f.at(2) == std::vector<Int>{2, 1, 1, 1, 2});
    CHECK(f.at(5) == std::vector<Int>{2, 3, 3, 3, 8});
    CHECK(f.at(8) == std::vector<Int>{2, 5, 5, 5, 14});
    CHECK_FALSE(f.at(3));
    CHECK(series_shape_of(f) == std::array<Int, 3>{1, 1, 1});
    const LinearFamily pieces[] = {f};
    const auto series = assemble_series(pieces);
    REQUIRE(series.size() == 1);
    CHECK(series[0].b == std::array<Int, 3>{1, 1, 1});
    for (Int k = 1; k <= 9; k += 2) {
        const auto w = series[0].weights(k);
        CHECK(std::accumulate(w.begin(), w.end(), Int{0}) - 1 == series[0].degree(k));
    }
}

TEST_CASE("series shape matching")
{
    const Int w[] = {1, 1, 1, 2, 2};
    const auto m = match_series_shape(w, 6);
    REQUIRE(m.size() == 1);
    CHECK(m[0] == SeriesMembership{{1, 1, 1}, 1});
    CHECK_FALSE(series_chart_member(m[0]));
    const Int w3[] = {2, 3, 3, 3, 8};
    const auto m3 = match_series_shape(w3, 18);
    REQUIRE(m3.size() == 1);
    CHECK(m3[0] == SeriesMembership{{1, 1, 1}, 3});
    CHECK(series_chart_member(m3[0]));
    const Int smooth[] = {1, 1, 1, 1, 1};
    CHECK(match_series_shape(smooth, 4).empty());
    const Int big[] = {407, 547, 5311, 12528, 18792};
    CHECK(match_series_shape(big, 37584).empty());

    const SeriesFamily s{{1, 2, 3}};
    CHECK(s.weights(1) == std::vector<Int>{1, 2, 2, 3, 5});
    CHECK(s.degree(3) == 36);
    CHECK(s.well_formed_member(1));
}

TEST_CASE("case 2 and case 3 candidates")
{
    const auto c = case2_case3_candidates();
    REQUIRE_FALSE(c.empty());
    CHECK(std::find(c.begin(), c.end(),
                    HypersurfaceFamily::fano(WeightSystem::canonicalize({1, 1, 1, 1, 1}))) !=
          c.end());
    CHECK(std::is_sorted(c.begin(), c.end()));
    CHECK(std::adjacent_find(c.begin(), c.end()) == c.end());
    for (const auto &f : c) {
        CHECK(f.ws[0] == 1);
        CHECK(f.degree == f.ws.sum() - 1);
        CHECK(oracle::quasi_smooth(f.ws.weights(), f.degree));
    }
}

TEST_CASE("structured search is independent of the thread count")
{
    StructuredSearchOptions opt;
    opt.bounds.m1 = {3, 6};
    opt.bounds.m2 = {3, 5};
    opt.bounds.m3 = {2, 3};
    opt.bounds.m4 = {1, 2};
    opt.series_cap = 200;
    opt.include_case23 = false;
    opt.threads = 1;
    const StructuredCensus serial = run_structured_search(opt);
    opt.threads = 3;
    const StructuredCensus parallel = run_structured_search(opt);
    CHECK(serial.sporadic == parallel.sporadic);
    CHECK(serial.series == parallel.series);
    CHECK(serial.series_members == parallel.series_members);
    CHECK(serial.diagnostics.raw_solutions == parallel.diagnostics.raw_solutions);
    CHECK(serial.diagnostics.configurations == parallel.diagnostics.configurations);
    REQUIRE_FALSE(serial.sporadic.empty());
    CHECK(std::is_sorted(serial.sporadic.begin(), serial.sporadic.end()));
    for (const auto &f : serial.sporadic) {
        CHECK(f.degree == f.ws.sum() - 1);
        CHECK(oracle::well_formed(f.ws.weights()));
        CHECK(oracle::quasi_smooth(f.ws.weights(), f.degree));
    }
}
