#include "wfano/classify.hpp"

#include "parallel.hpp"
#include "wfano/qsmooth.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace wfano {

namespace {

Int mod(Int v, Int r)
{
    Int m = v % r;
    return m < 0 ? m + r : m;
}

std::vector<Int> residues(std::span<const Int> w, std::span<const std::size_t> idx, Int r)
{
    std::vector<Int> out;
    for (std::size_t k : idx)
        out.push_back(mod(w[k], r));
    return out;
}

std::vector<std::size_t> complement(std::size_t size, std::span<const std::size_t> idx)
{
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < size; ++k)
        if (std::find(idx.begin(), idx.end(), k) == idx.end())
            out.push_back(k);
    return out;
}

// Inverse of a modulo m (a, m coprime, m >= 1).
Int inverse_mod(Int a, Int m)
{
    if (m == 1)
        return 0;
    Int old_r = mod(a, m), r = m, old_s = 1, s = 0;
    while (r != 0) {
        Int q = old_r / r;
        Int t = old_r - q * r;
        old_r = r;
        r = t;
        t = old_s - q * s;
        old_s = s;
        s = t;
    }
    return mod(old_s, m);
}

// Number of (alpha, beta) >= 0 with alpha x + beta y = d.
Int pair_solutions(Int x, Int y, Int d)
{
    const Int h = std::gcd(x, y);
    if (d % h != 0)
        return 0;
    x /= h;
    y /= h;
    d /= h;
    // alpha = d / x (mod y), smallest nonnegative representative.
    const Int alpha0 = static_cast<Int>(static_cast<__int128>(mod(d, y)) * inverse_mod(x, y) % y);
    if (static_cast<__int128>(alpha0) * x > d)
        return 0;
    return (d - alpha0 * x) / (x * y) + 1;
}

} // namespace

const char *to_string(LocationKind kind)
{
    switch (kind) {
    case LocationKind::vertex:
        return "vertex";
    case LocationKind::edge_points:
        return "edge_points";
    case LocationKind::non_isolated_curve:
        return "non_isolated_curve";
    }
    return "unknown";
}

CanonicalType canonical_type(Int r, std::span<const Int> weights)
{
    if (r < 1)
        throw std::invalid_argument("quotient order must be positive");
    CanonicalType t{r, {}, false};
    for (Int v : weights)
        t.w.push_back(mod(v, r));
    for (bool changed = true; changed && t.r > 1;) {
        changed = false;
        Int g = t.r;
        for (Int v : t.w)
            g = std::gcd(g, v);
        if (g > 1) {
            t.r /= g;
            for (Int &v : t.w)
                v /= g;
            t.reduced = changed = true;
            continue;
        }
        // The subgroup of order h acts on coordinate l alone. Passing to
        // x_l^h leaves Z/(r/h) with weight w_l on x_l^h and w_k / h elsewhere.
        for (std::size_t l = 0; l < t.w.size() && !changed; ++l) {
            Int h = t.r;
            for (std::size_t k = 0; k < t.w.size(); ++k)
                if (k != l)
                    h = std::gcd(h, t.w[k]);
            if (h == 1)
                continue;
            const Int r2 = t.r / h;
            for (std::size_t k = 0; k < t.w.size(); ++k)
                t.w[k] = k == l ? mod(t.w[k], r2) : mod(t.w[k] / h, r2);
            t.r = r2;
            t.reduced = changed = true;
        }
    }
    if (t.r == 1)
        std::fill(t.w.begin(), t.w.end(), 0);
    return t;
}

std::vector<std::size_t> admissible_partners(const HypersurfaceFamily &fam, std::size_t i)
{
    const auto w = fam.ws.weights();
    if (i >= w.size())
        throw std::out_of_range("vertex index out of range");
    std::vector<std::size_t> out;
    const Int d = fam.degree;
    if (d % w[i] == 0)
        return out;
    for (std::size_t j = 0; j < w.size(); ++j) {
        const Int rest = d - w[j];
        if (j != i && rest >= w[i] && rest % w[i] == 0)
            out.push_back(j);
    }
    return out;
}

std::vector<QuotientSingularity> singularities(const HypersurfaceFamily &fam,
                                               std::span<const std::size_t> partner)
{
    const auto w = fam.ws.weights();
    const std::size_t size = w.size();
    const Int d = fam.degree;
    if (partner.size() != size)
        throw std::invalid_argument("one partner per vertex is required");
    std::vector<QuotientSingularity> out;

    for (std::size_t i = 0; i < size; ++i) {
        if (w[i] == 1 || d % w[i] == 0)
            continue;
        const auto adm = admissible_partners(fam, i);
        if (adm.empty())
            throw std::invalid_argument("family is not quasi-smooth at a vertex");
        const std::size_t j = partner[i];
        if (std::find(adm.begin(), adm.end(), j) == adm.end())
            throw std::invalid_argument("partner is not admissible at this vertex");
        const std::size_t pair[] = {i, j};
        out.push_back({w[i], residues(w, complement(size, pair), w[i]), LocationKind::vertex, {i}, 1});
    }

    for (std::size_t i = 0; i < size; ++i)
        for (std::size_t j = i + 1; j < size; ++j) {
            const Int h = std::gcd(w[i], w[j]);
            if (h == 1)
                continue;
            const std::size_t pair[] = {i, j};
            const auto normals = complement(size, pair);
            const Int s = pair_solutions(w[i], w[j], d);
            if (s == 0) {
                // X contains the edge; eliminate the smallest normal
                // direction with x_k times an (i, j) monomial of degree d.
                const Int gens[] = {w[i], w[j]};
                auto k = std::find_if(normals.begin(), normals.end(), [&](std::size_t t) {
                    return d - w[t] >= 0 && semigroup_member(gens, d - w[t]);
                });
                if (k == normals.end())
                    throw std::invalid_argument("family is not quasi-smooth along an edge");
                std::vector<std::size_t> transverse;
                for (std::size_t t : normals)
                    if (t != *k)
                        transverse.push_back(t);
                out.push_back({h, residues(w, transverse, h), LocationKind::non_isolated_curve,
                               {i, j}, 1});
            } else if (s > 1) {
                out.push_back({h, residues(w, normals, h), LocationKind::edge_points, {i, j}, s - 1});
            }
        }

    // Strata of dimension >= 2 with a common factor meet X in a curve or more.
    const IndexSubset all = (IndexSubset{1} << size) - 1;
    for (IndexSubset s = 1; s < all; ++s) {
        if (subset_size(s) < 3)
            continue;
        const auto idx = subset_indices(s);
        Int g = 0;
        for (std::size_t k : idx)
            g = std::gcd(g, w[k]);
        if (g == 1)
            continue;
        out.push_back({g, residues(w, complement(size, idx), g), LocationKind::non_isolated_curve,
                       idx, 1});
    }
    return out;
}

std::vector<QuotientSingularity> singularities(const HypersurfaceFamily &fam)
{
    const std::size_t size = fam.ws.size();
    std::vector<std::size_t> partner(size, 0);
    for (std::size_t i = 0; i < size; ++i) {
        auto adm = admissible_partners(fam, i);
        if (!adm.empty())
            partner[i] = adm.front();
    }
    return singularities(fam, partner);
}

bool is_terminal_type(Int r, std::span<const Int> w)
{
    const CanonicalType t = canonical_type(r, w);
    for (Int k = 1; k < t.r; ++k) {
        Int sum = 0;
        for (Int v : t.w)
            sum += mod(k * v, t.r);
        if (sum <= t.r)
            return false;
    }
    return true;
}

bool is_terminal_type(const QuotientSingularity &q)
{
    if (q.location == LocationKind::non_isolated_curve)
        throw UnsupportedConfiguration("terminality of a non-isolated singularity is not a "
                                       "cyclic quotient question");
    return is_terminal_type(q.r, q.w);
}

bool classify_terminal(std::span<const QuotientSingularity> basket)
{
    for (const QuotientSingularity &q : basket)
        if (q.location == LocationKind::non_isolated_curve)
            return false;
    for (const QuotientSingularity &q : basket)
        if (!is_terminal_type(q))
            return false;
    return true;
}

bool classify_terminal(const HypersurfaceFamily &fam)
{
    return classify_terminal(singularities(fam));
}

TigerKe tiger_ke_flags(const HypersurfaceFamily &fam)
{
    const auto w = fam.ws.weights();
    if (w.size() < 2)
        throw std::invalid_argument("need at least two weights");
    const Int n = fam.ws.dim();
    const Int prod = checked_mul(w[0], w[1]);
    return {fam.degree <= prod, checked_mul(n - 1, fam.degree) < checked_mul(n, prod)};
}

std::vector<std::array<Int, 3>> enumerate_48_triples(Int cap)
{
    std::vector<std::array<Int, 3>> out;
    for (Int b1 = 1; b1 <= cap; ++b1)
        for (Int b2 = b1; b2 <= cap; ++b2) {
            const Int g12 = std::gcd(b1, b2);
            for (Int b3 = b2; b3 <= 2 * (b1 + b2); ++b3) {
                if (std::gcd(g12, b3) != 1)
                    continue;
                // Quasi-smoothness only: on a curve the codimension 2 strata
                // are the vertices, already covered by the vertex condition.
                const Int b[] = {b1, b2, b3};
                const Int d = 2 * (b1 + b2 + b3);
                if (kernel::vertex_condition(b, d) && kernel::subset_condition(b, d))
                    out.push_back({b1, b2, b3});
            }
        }
    return out;
}

std::optional<SeriesMembership> detect_series_membership(const HypersurfaceFamily &fam)
{
    static const std::set<std::array<Int, 3>> triples = [] {
        auto t = enumerate_48_triples();
        return std::set<std::array<Int, 3>>(t.begin(), t.end());
    }();
    for (const SeriesMembership &s : match_series_shape(fam.ws.weights(), fam.degree))
        if (triples.count(s.b))
            return s;
    return std::nullopt;
}

ClassifiedRecord classify_family(const HypersurfaceFamily &fam)
{
    ClassifiedRecord rec{fam};
    rec.quasi_smooth = kernel::quasi_smooth(fam.ws.weights(), fam.degree);
    const TigerKe flags = tiger_ke_flags(fam);
    rec.tiger_free = flags.tiger_free;
    rec.ke = flags.ke;
    if (!rec.quasi_smooth)
        return rec;
    rec.basket = singularities(fam);
    rec.terminal = classify_terminal(rec.basket);
    rec.series = detect_series_membership(fam);
    return rec;
}

std::vector<ClassifiedRecord> classify_all(std::span<const HypersurfaceFamily> fams, int threads)
{
    std::vector<std::optional<ClassifiedRecord>> slots(fams.size());
    detail::parallel_for(fams.size(), detail::resolve_threads(threads),
                         [&](std::size_t i) { slots[i] = classify_family(fams[i]); });
    std::vector<ClassifiedRecord> out;
    out.reserve(slots.size());
    for (auto &s : slots)
        out.push_back(std::move(*s));
    return out;
}

} // namespace wfano
