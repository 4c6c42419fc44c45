#include "wfano/search.hpp"

#include "linalg.hpp"
#include "parallel.hpp"
#include "wfano/qsmooth.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace wfano {

using detail::I128;
using detail::Matrix;
using detail::max_dim;
using detail::Vector;

namespace {

using Tuple = std::array<Int, 5>;

struct System {
    Matrix a{};
    Vector rhs{};
    std::size_t n = 0;
};

// Row i: m_i a_i + a_target[i] - sum(a) = rhs. An unknown exponent enters
// as 0 here and as the symbolic m on the diagonal.
System build_system(std::span<const std::size_t> target, std::span<const Int> m, Int rhs)
{
    System s;
    s.n = target.size();
    for (std::size_t i = 0; i < s.n; ++i) {
        for (std::size_t k = 0; k < s.n; ++k)
            s.a[i][k] = -1 + (k == i ? m[i] : 0) + (k == target[i] ? 1 : 0);
        s.rhs[i] = rhs;
    }
    return s;
}

System build_system(const SearchCase &c)
{
    std::vector<Int> m(c.size());
    for (std::size_t i = 0; i < c.size(); ++i)
        m[i] = c.m[i].value_or(0);
    return build_system(c.target, m, rhs_value(c.rhs_kind));
}

I128 floor_div(I128 a, I128 b)
{
    I128 q = a / b;
    if (a % b != 0 && ((a < 0) != (b < 0)))
        --q;
    return q;
}

I128 ceil_div(I128 a, I128 b) { return -floor_div(-a, b); }

enum class Branch { finite, series, singular };

struct UnknownSolver {
    const System &s;
    std::size_t u;
    I128 alpha = 0;
    I128 beta = 0;
    std::array<I128, max_dim> p{};
    std::array<I128, max_dim> q{};
    bool have_pq = false;

    void fill_pq()
    {
        if (have_pq)
            return;
        have_pq = true;
        for (std::size_t k = 0; k < s.n; ++k) {
            Matrix c = detail::replace_column(s.a, s.n, k, s.rhs);
            p[k] = detail::det(c, s.n);
            q[k] = k == u ? 0 : detail::det(detail::minor_of(c, s.n, u), s.n - 1);
        }
    }
};

using Weights = std::array<Int, max_dim>;

template <class Emit>
Branch solve_unknown(UnknownSolver &sv, Int m_min, Emit &&emit)
{
    const System &s = sv.s;
    sv.alpha = detail::det(detail::minor_of(s.a, s.n, sv.u), s.n - 1);
    sv.beta = detail::det(s.a, s.n);
    if (sv.alpha == 0)
        return sv.beta == 0 ? Branch::singular : Branch::series;

    const I128 gamma = detail::det(detail::replace_column(s.a, s.n, sv.u, s.rhs), s.n);
    if (gamma == 0)
        return Branch::finite;
    const I128 g = gamma < 0 ? -gamma : gamma;
    I128 lo, hi;
    if (sv.alpha > 0) {
        lo = ceil_div(-g - sv.beta, sv.alpha);
        hi = floor_div(g - sv.beta, sv.alpha);
    } else {
        lo = ceil_div(g - sv.beta, sv.alpha);
        hi = floor_div(-g - sv.beta, sv.alpha);
    }
    lo = std::max<I128>(lo, m_min);
    for (I128 m = lo; m <= hi; ++m) {
        const I128 den = detail::add128(detail::mul128(sv.alpha, m), sv.beta);
        if (den == 0 || gamma % den != 0 || gamma / den <= 0)
            continue;
        sv.fill_pq();
        Weights w{};
        bool ok = true;
        for (std::size_t k = 0; k < s.n && ok; ++k) {
            I128 num = detail::add128(sv.p[k], detail::mul128(sv.q[k], m));
            ok = num % den == 0 && num / den > 0;
            if (ok)
                w[k] = detail::narrow(num / den);
        }
        if (ok)
            emit(detail::narrow(m), w);
    }
    return Branch::finite;
}

// Compact linear family from the main loop; converted to LinearFamily only
// when needed.
struct Piece {
    std::array<std::uint8_t, 5> target;
    std::array<Int, 5> m;
    std::array<Int, 5> p;
    std::array<Int, 5> q;
    Int den;
};

Piece make_piece(const std::array<std::size_t, 5> &t, const std::array<Int, 5> &m,
                 UnknownSolver &sv)
{
    sv.fill_pq();
    Piece pc{};
    const I128 sign = sv.beta < 0 ? -1 : 1;
    for (std::size_t k = 0; k < 5; ++k) {
        pc.target[k] = static_cast<std::uint8_t>(t[k]);
        pc.m[k] = m[k];
        pc.p[k] = detail::narrow(sign * sv.p[k]);
        pc.q[k] = detail::narrow(sign * sv.q[k]);
    }
    pc.den = detail::narrow(sign * sv.beta);
    return pc;
}

std::optional<Tuple> piece_member(const Piece &pc, Int m)
{
    Tuple w;
    for (std::size_t k = 0; k < 5; ++k) {
        I128 num = detail::add128(pc.p[k], detail::mul128(pc.q[k], m));
        if (num % pc.den != 0 || num / pc.den <= 0)
            return std::nullopt;
        w[k] = detail::narrow(num / pc.den);
    }
    return w;
}

LinearFamily to_linear_family(const Piece &pc, std::size_t unknown)
{
    LinearFamily f;
    f.source.rhs_kind = RhsKind::fano;
    for (std::size_t k = 0; k < 5; ++k) {
        f.source.target.push_back(pc.target[k]);
        f.source.m.push_back(k == unknown ? std::nullopt : std::optional<Int>(pc.m[k]));
        f.p.push_back(pc.p[k]);
        f.q.push_back(pc.q[k]);
    }
    f.den = pc.den;
    return f;
}

FilterReason screen(std::span<const Int> w, Int d, bool require_well_formed)
{
    if (require_well_formed && !is_well_formed(w))
        return FilterReason::not_well_formed;
    if (!kernel::vertex_condition(w, d))
        return FilterReason::fails_vertex;
    if (!kernel::codim2_condition(w, d))
        return FilterReason::fails_codim2;
    if (!kernel::subset_condition(w, d))
        return FilterReason::fails_subset;
    return FilterReason::accepted;
}

Int fano_degree(std::span<const Int> w)
{
    Int s = 0;
    for (Int a : w)
        s = checked_add(s, a);
    return s - 1;
}

HypersurfaceFamily fano_family(std::span<const Int> w)
{
    return HypersurfaceFamily::fano(WeightSystem::canonicalize(w));
}

std::array<std::size_t, 5> decode_map(std::size_t idx)
{
    std::array<std::size_t, 5> t{};
    for (std::size_t i = 0; i < 5; ++i) {
        t[i] = idx % 5;
        idx /= 5;
    }
    return t;
}

} // namespace

Int rhs_value(RhsKind kind) { return kind == RhsKind::fano ? -1 : 0; }

ExponentBounds exponent_bounds()
{
    return ExponentBounds{{3, 83}, {3, 16}, {2, 6}, {1, 3}, 83};
}

void SearchCase::validate() const
{
    if (target.empty() || target.size() >= max_dim)
        throw std::invalid_argument("search case size must be between 1 and 8");
    if (m.size() != target.size())
        throw std::invalid_argument("exponent vector and target map differ in length");
    std::size_t unknowns = 0;
    for (std::size_t i = 0; i < size(); ++i) {
        if (target[i] >= size())
            throw std::invalid_argument("target index out of range");
        if (!m[i])
            ++unknowns;
        else if (*m[i] < 0)
            throw std::invalid_argument("negative exponent");
    }
    if (unknowns > 1)
        throw std::invalid_argument("at most one unknown exponent is supported");
}

std::optional<std::size_t> SearchCase::unknown() const
{
    for (std::size_t i = 0; i < m.size(); ++i)
        if (!m[i])
            return i;
    return std::nullopt;
}

std::vector<std::vector<Int>> system_matrix(const SearchCase &c)
{
    c.validate();
    System s = build_system(c);
    std::vector<std::vector<Int>> out(s.n, std::vector<Int>(s.n));
    for (std::size_t i = 0; i < s.n; ++i)
        for (std::size_t k = 0; k < s.n; ++k)
            out[i][k] = detail::narrow(s.a[i][k]);
    return out;
}

std::optional<std::vector<Int>> RationalSolution::positive_integral() const
{
    std::vector<Int> out;
    for (Int v : numerators) {
        if (v % denominator != 0 || v / denominator <= 0)
            return std::nullopt;
        out.push_back(v / denominator);
    }
    return out;
}

SolveResult solve_case(const SearchCase &c)
{
    c.validate();
    if (c.unknown())
        throw std::invalid_argument("solve_case needs every exponent fixed");
    System s = build_system(c);
    const I128 d = detail::det(s.a, s.n);
    if (d == 0) {
        Matrix aug = s.a;
        for (std::size_t i = 0; i < s.n; ++i)
            aug[i][s.n] = s.rhs[i];
        return detail::rank(s.a, s.n, s.n) == detail::rank(aug, s.n, s.n + 1)
                   ? SolveResult(Singular{})
                   : SolveResult(NoSolution{});
    }
    std::vector<I128> num(s.n);
    I128 g = d < 0 ? -d : d;
    for (std::size_t k = 0; k < s.n; ++k) {
        num[k] = detail::det(detail::replace_column(s.a, s.n, k, s.rhs), s.n);
        I128 a = num[k] < 0 ? -num[k] : num[k];
        while (a != 0) {
            I128 t = g % a;
            g = a;
            a = t;
        }
    }
    const I128 sign = d < 0 ? -1 : 1;
    RationalSolution r;
    r.denominator = detail::narrow(sign * d / g);
    for (I128 v : num)
        r.numerators.push_back(detail::narrow(sign * v / g));
    return r;
}

OneUnknownReduction reduce_one_unknown(const SearchCase &c)
{
    c.validate();
    auto u = c.unknown();
    if (!u)
        throw std::invalid_argument("reduce_one_unknown needs one unknown exponent");
    System s = build_system(c);
    UnknownSolver sv{s, *u};
    sv.alpha = detail::det(detail::minor_of(s.a, s.n, *u), s.n - 1);
    sv.beta = detail::det(s.a, s.n);
    sv.fill_pq();
    OneUnknownReduction r{*u, detail::narrow(sv.alpha), detail::narrow(sv.beta), {}, {}};
    for (std::size_t k = 0; k < s.n; ++k) {
        r.p.push_back(detail::narrow(sv.p[k]));
        r.q.push_back(detail::narrow(sv.q[k]));
    }
    return r;
}

std::optional<std::vector<Int>> LinearFamily::at(Int m) const
{
    std::vector<Int> w;
    for (std::size_t k = 0; k < p.size(); ++k) {
        I128 num = detail::add128(p[k], detail::mul128(q[k], m));
        if (num % den != 0 || num / den <= 0)
            return std::nullopt;
        w.push_back(detail::narrow(num / den));
    }
    return w;
}

OneUnknownResult solve_one_unknown(const SearchCase &c, Int m_min)
{
    c.validate();
    auto u = c.unknown();
    if (!u)
        throw std::invalid_argument("solve_one_unknown needs one unknown exponent");
    System s = build_system(c);
    UnknownSolver sv{s, *u};
    BoundedSolutions bounded;
    Branch b = solve_unknown(sv, m_min, [&](Int m, const Weights &w) {
        bounded.solutions.emplace_back(m, std::vector<Int>(w.begin(), w.begin() + s.n));
    });
    if (b == Branch::finite)
        return bounded;
    if (b == Branch::singular)
        return SingularBranch{};
    sv.fill_pq();
    const I128 sign = sv.beta < 0 ? -1 : 1;
    LinearFamily f{c, {}, {}, detail::narrow(sign * sv.beta)};
    for (std::size_t k = 0; k < s.n; ++k) {
        f.p.push_back(detail::narrow(sign * sv.p[k]));
        f.q.push_back(detail::narrow(sign * sv.q[k]));
    }
    return SeriesBranch{std::move(f)};
}

std::vector<Int> SeriesFamily::weights(Int k) const
{
    std::vector<Int> w{2, k * b[0], k * b[1], k * b[2], k * b_sum() - 1};
    std::sort(w.begin(), w.end());
    return w;
}

bool SeriesFamily::well_formed_member(Int k) const
{
    const std::vector<Int> w = weights(k);
    return is_well_formed(w);
}

std::vector<SeriesMembership> match_series_shape(std::span<const Int> w, Int degree)
{
    std::vector<SeriesMembership> out;
    if (w.size() != 5)
        return out;
    for (std::size_t i = 0; i < 5; ++i) {
        if (w[i] != 2)
            continue;
        for (std::size_t l = 0; l < 5; ++l) {
            if (l == i)
                continue;
            std::array<Int, 3> r{};
            std::size_t c = 0;
            for (std::size_t t = 0; t < 5; ++t)
                if (t != i && t != l)
                    r[c++] = w[t];
            const Int g = std::gcd(std::gcd(r[0], r[1]), r[2]);
            for (Int k = 1; k <= g; k += 2) {
                if (g % k != 0)
                    continue;
                std::array<Int, 3> b{r[0] / k, r[1] / k, r[2] / k};
                if (std::gcd(std::gcd(b[0], b[1]), b[2]) != 1)
                    continue;
                const Int sum = b[0] + b[1] + b[2];
                if (k * sum - 1 != w[l] || degree != 2 * k * sum)
                    continue;
                std::sort(b.begin(), b.end());
                out.push_back({b, k});
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const SeriesMembership &x, const SeriesMembership &y) {
        return std::tie(x.k, x.b) < std::tie(y.k, y.b);
    });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool series_chart_member(const SeriesMembership &s) { return s.k * s.b[0] >= 2; }

UnmergeablePiece::UnmergeablePiece(LinearFamily piece)
    : std::runtime_error("linear family does not have the series shape"),
      piece_(std::move(piece))
{
}

std::optional<std::array<Int, 3>> series_shape_of(const LinearFamily &piece)
{
    auto u = piece.source.unknown();
    if (!u || piece.p.size() != 5 || piece.q[*u] != 0 || piece.p[*u] != 2 * piece.den)
        return std::nullopt;
    for (std::size_t l = 0; l < 5; ++l) {
        if (l == *u)
            continue;
        std::array<std::size_t, 3> o{};
        std::size_t c = 0;
        for (std::size_t t = 0; t < 5; ++t)
            if (t != *u && t != l)
                o[c++] = t;
        Int sp = 0, sq = 0;
        bool ok = true;
        for (std::size_t t : o) {
            ok = ok && piece.q[t] > 0;
            sp += piece.p[t];
            sq += piece.q[t];
        }
        if (!ok || piece.p[l] != sp - piece.den || piece.q[l] != sq)
            continue;
        auto parallel = [&](std::size_t x, std::size_t y) {
            return static_cast<I128>(piece.p[x]) * piece.q[y] ==
                   static_cast<I128>(piece.p[y]) * piece.q[x];
        };
        if (!parallel(o[0], o[1]) || !parallel(o[0], o[2]))
            continue;
        const Int g = std::gcd(std::gcd(piece.q[o[0]], piece.q[o[1]]), piece.q[o[2]]);
        std::array<Int, 3> b{piece.q[o[0]] / g, piece.q[o[1]] / g, piece.q[o[2]] / g};
        std::sort(b.begin(), b.end());
        return b;
    }
    return std::nullopt;
}

std::vector<SeriesFamily> assemble_series(std::span<const LinearFamily> pieces)
{
    std::map<std::array<Int, 3>, SeriesFamily> merged;
    for (const LinearFamily &piece : pieces) {
        auto b = series_shape_of(piece);
        if (!b)
            throw UnmergeablePiece(piece);
        auto [it, fresh] = merged.try_emplace(*b, SeriesFamily{*b, 0});
        ++it->second.pieces;
    }
    std::vector<SeriesFamily> out;
    for (auto &[b, s] : merged)
        out.push_back(s);
    return out;
}

std::vector<HypersurfaceFamily> case2_case3_candidates(Int series_cap)
{
    const ExponentBounds bounds = exponent_bounds();
    std::set<std::vector<Int>> found;
    auto consider = [&](std::vector<Int> w) {
        std::sort(w.begin(), w.end());
        if (screen(w, fano_degree(w), true) == FilterReason::accepted)
            found.insert(std::move(w));
    };

    // a0 = 1: rows 1..4 with a0 substituted, unknowns (a1, .., a4), m1 free.
    for (std::size_t idx = 0; idx < 625; ++idx) {
        std::array<std::size_t, 4> t{};
        for (std::size_t i = 0, x = idx; i < 4; ++i, x /= 5)
            t[i] = x % 5;
        for (Int m2 = bounds.m2.lo; m2 <= bounds.m2.hi; ++m2)
            for (Int m3 = bounds.m3.lo; m3 <= bounds.m3.hi; ++m3)
                for (Int m4 = bounds.m4.lo; m4 <= bounds.m4.hi; ++m4) {
                    const std::array<Int, 4> m{0, m2, m3, m4};
                    System s;
                    s.n = 4;
                    for (std::size_t i = 0; i < 4; ++i) {
                        for (std::size_t k = 0; k < 4; ++k)
                            s.a[i][k] = -1 + (k == i ? m[i] : 0) + (t[i] == k + 1 ? 1 : 0);
                        s.rhs[i] = t[i] == 0 ? -1 : 0;
                    }
                    UnknownSolver sv{s, 0};
                    auto emit = [&](Int, const Weights &w) {
                        consider({1, w[0], w[1], w[2], w[3]});
                    };
                    Branch b = solve_unknown(sv, 1, emit);
                    if (b != Branch::series)
                        continue;
                    sv.fill_pq();
                    for (Int mm = 1; mm <= series_cap; ++mm) {
                        Weights w{};
                        bool ok = true;
                        for (std::size_t k = 0; k < 4 && ok; ++k) {
                            I128 num = detail::add128(sv.p[k], detail::mul128(sv.q[k], mm));
                            ok = num % sv.beta == 0 && num / sv.beta > 0;
                            if (ok)
                                w[k] = detail::narrow(num / sv.beta);
                        }
                        if (ok)
                            emit(mm, w);
                    }
                }
    }

    for (Int a = 1; a <= 6; ++a) {
        consider({1, a, 1, 1, 1});
        consider({1, a, 1, 1, 2});
        consider({1, a, 1, 2, 3});
    }

    std::vector<HypersurfaceFamily> out;
    for (const auto &w : found)
        out.push_back(fano_family(w));
    return out;
}

const char *to_string(FilterReason r)
{
    switch (r) {
    case FilterReason::accepted:
        return "accepted";
    case FilterReason::not_well_formed:
        return "not_well_formed";
    case FilterReason::fails_vertex:
        return "fails_vertex";
    case FilterReason::fails_codim2:
        return "fails_codim2";
    case FilterReason::fails_subset:
        return "fails_subset";
    case FilterReason::series_member:
        return "series_member";
    }
    return "unknown";
}

StructuredCensus run_structured_search(const StructuredSearchOptions &opt)
{
    const ExponentBounds &bounds = opt.bounds;
    const int threads = detail::resolve_threads(opt.threads);
    constexpr std::size_t maps = 3125;

    struct Slot {
        std::vector<Tuple> raw;
        std::vector<Piece> pieces;
        long long finite = 0;
        long long series = 0;
        long long singular = 0;
    };
    std::vector<Slot> slots(maps);

    detail::parallel_for(maps, threads, [&](std::size_t idx) {
        const auto t = decode_map(idx);
        Slot &slot = slots[idx];
        for (Int m1 = bounds.m1.lo; m1 <= bounds.m1.hi; ++m1)
            for (Int m2 = bounds.m2.lo; m2 <= bounds.m2.hi; ++m2)
                for (Int m3 = bounds.m3.lo; m3 <= bounds.m3.hi; ++m3)
                    for (Int m4 = bounds.m4.lo; m4 <= bounds.m4.hi; ++m4) {
                        const std::array<Int, 5> m{0, m1, m2, m3, m4};
                        const System s = build_system(t, m, -1);
                        UnknownSolver sv{s, 0};
                        Branch b = solve_unknown(sv, 1, [&](Int, const Weights &w) {
                            Tuple x{w[0], w[1], w[2], w[3], w[4]};
                            std::sort(x.begin(), x.end());
                            slot.raw.push_back(x);
                        });
                        if (b == Branch::finite)
                            ++slot.finite;
                        else if (b == Branch::singular)
                            ++slot.singular;
                        else {
                            ++slot.series;
                            slot.pieces.push_back(make_piece(t, m, sv));
                        }
                    }
    });

    StructuredCensus out;
    StructuredDiagnostics &diag = out.diagnostics;
    std::vector<Tuple> raw;
    std::vector<Piece> pieces;
    for (Slot &slot : slots) {
        diag.finite_branch += slot.finite;
        diag.series_branch += slot.series;
        diag.singular_branch += slot.singular;
        raw.insert(raw.end(), slot.raw.begin(), slot.raw.end());
        pieces.insert(pieces.end(), slot.pieces.begin(), slot.pieces.end());
        slot = Slot{};
    }
    diag.configurations = diag.finite_branch + diag.series_branch + diag.singular_branch;
    diag.raw_solutions = static_cast<long long>(raw.size());
    std::sort(raw.begin(), raw.end());
    raw.erase(std::unique(raw.begin(), raw.end()), raw.end());
    diag.distinct_solutions = static_cast<long long>(raw.size());

    // Finite branch screening.
    std::vector<FilterReason> reasons(raw.size());
    detail::parallel_for(raw.size(), threads, [&](std::size_t i) {
        reasons[i] = screen(raw[i], fano_degree(raw[i]), true);
    });
    std::set<Tuple> candidates;
    for (std::size_t i = 0; i < raw.size(); ++i) {
        if (reasons[i] != FilterReason::not_well_formed)
            ++diag.distinct_well_formed;
        if (reasons[i] == FilterReason::accepted) {
            ++diag.distinct_quasi_smooth;
            candidates.insert(raw[i]);
        }
    }

    // Series branch: members with the constant weight smallest, up to the cap.
    struct PieceResult {
        std::vector<std::pair<Int, Tuple>> quasi_smooth;
        bool persistent = false;
        bool persistent_well_formed = false;
    };
    std::vector<PieceResult> piece_results(pieces.size());
    const Int cap = opt.series_cap;
    detail::parallel_for(pieces.size(), threads, [&](std::size_t i) {
        const Piece &pc = pieces[i];
        PieceResult &res = piece_results[i];
        for (Int m = 1; m <= cap; ++m) {
            auto w = piece_member(pc, m);
            if (!w)
                continue;
            if (std::any_of(w->begin() + 1, w->end(), [&](Int a) { return a < (*w)[0]; }))
                continue;
            Tuple x = *w;
            std::sort(x.begin(), x.end());
            if (screen(x, fano_degree(x), false) != FilterReason::accepted)
                continue;
            res.quasi_smooth.emplace_back(m, x);
            if (2 * m > cap) {
                res.persistent = true;
                res.persistent_well_formed = res.persistent_well_formed || is_well_formed(x);
            }
        }
    });
    std::vector<LinearFamily> persistent;
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        const PieceResult &res = piece_results[i];
        if (res.persistent) {
            LinearFamily f = to_linear_family(pieces[i], 0);
            // Pieces like (1, k, k, k, k) stay quasi-smooth but leave the
            // well-formed world; they are set aside unless of series shape.
            if (res.persistent_well_formed || series_shape_of(f))
                persistent.push_back(std::move(f));
            else
                ++diag.non_well_formed_pieces;
        }
        for (const auto &[m, x] : res.quasi_smooth) {
            if (!res.persistent)
                diag.max_transient_m = std::max(diag.max_transient_m, m);
            if (is_well_formed(x))
                candidates.insert(x);
        }
    }
    diag.persistent_pieces = static_cast<long long>(persistent.size());
    out.series = assemble_series(persistent);

    if (opt.include_case23) {
        for (const HypersurfaceFamily &f : case2_case3_candidates(cap)) {
            Tuple x{};
            std::copy(f.ws.weights().begin(), f.ws.weights().end(), x.begin());
            ++diag.case23_candidates;
            if (candidates.insert(x).second)
                ++diag.case23_new;
        }
    }
    diag.candidates = static_cast<long long>(candidates.size());

    std::set<std::array<Int, 3>> series_keys;
    for (const SeriesFamily &s : out.series)
        series_keys.insert(s.b);
    std::set<Tuple> removed;
    for (const Tuple &x : candidates) {
        bool member = false;
        for (const SeriesMembership &s : match_series_shape(x, fano_degree(x)))
            member = member || (series_chart_member(s) && series_keys.count(s.b) > 0);
        if (member) {
            removed.insert(x);
            out.series_members.push_back(fano_family(x));
        } else {
            out.sporadic.push_back(fano_family(x));
        }
    }
    diag.series_members_removed = static_cast<long long>(removed.size());

    if (opt.keep_filter_log) {
        std::map<Tuple, FilterReason> log;
        for (std::size_t i = 0; i < raw.size(); ++i)
            log.emplace(raw[i], reasons[i]);
        for (const Tuple &x : candidates)
            log[x] = FilterReason::accepted;
        for (const Tuple &x : removed)
            log[x] = FilterReason::series_member;
        for (const auto &[x, r] : log)
            diag.filter_log.push_back({std::vector<Int>(x.begin(), x.end()), r});
    }
    return out;
}

std::vector<HypersurfaceFamily> box_restriction(const StructuredCensus &census,
                                                std::span<const Int> bounds)
{
    auto inside = [&](std::span<const Int> w) {
        if (w.size() != bounds.size())
            return false;
        for (std::size_t i = 0; i < w.size(); ++i)
            if (w[i] > bounds[i])
                return false;
        return true;
    };
    std::set<HypersurfaceFamily> out;
    for (const HypersurfaceFamily &fam : census.sporadic)
        if (inside(fam.ws.weights()))
            out.insert(fam);
    const Int top = bounds.empty() ? 0 : *std::max_element(bounds.begin(), bounds.end());
    for (const SeriesFamily &s : census.series)
        for (Int k = 1; k * s.b_sum() - 1 <= top; k += 2) {
            const std::vector<Int> w = s.weights(k);
            if (!inside(w) || !s.well_formed_member(k) ||
                !kernel::quasi_smooth(w, s.degree(k)))
                continue;
            out.insert({WeightSystem::canonicalize(w), s.degree(k)});
        }
    return {out.begin(), out.end()};
}

} // namespace wfano
