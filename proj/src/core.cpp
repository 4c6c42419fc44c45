#include "wfano/core.hpp"

#include <algorithm>
#include <array>
#include <numeric>

namespace wfano {

NotWellFormed::NotWellFormed(std::size_t index, Int gcd)
    : std::invalid_argument("weights are not well formed: dropping index " +
                            std::to_string(index) + " leaves gcd " +
                            std::to_string(gcd)),
      index_(index), gcd_(gcd)
{
}

Int gcd_of(std::span<const Int> values)
{
    Int g = 0;
    for (Int v : values)
        g = std::gcd(g, v);
    return g;
}

std::optional<WellFormednessViolation>
well_formedness_violation(std::span<const Int> w)
{
    const std::size_t n = w.size();
    if (n < 2)
        return std::nullopt;
    // prefix[i] = gcd(w[0..i)), suffix[i] = gcd(w[i..n))
    std::array<Int, max_weights + 1> prefix{}, suffix{};
    if (n > max_weights)
        throw std::invalid_argument("too many weights");
    for (std::size_t i = 0; i < n; ++i)
        prefix[i + 1] = std::gcd(prefix[i], w[i]);
    for (std::size_t i = n; i-- > 0;)
        suffix[i] = std::gcd(suffix[i + 1], w[i]);
    for (std::size_t i = 0; i < n; ++i) {
        Int g = std::gcd(prefix[i], suffix[i + 1]);
        if (g > 1)
            return WellFormednessViolation{i, g};
    }
    return std::nullopt;
}

WeightSystem WeightSystem::canonicalize(std::span<const Int> raw)
{
    if (raw.empty())
        throw std::invalid_argument("empty weight list");
    if (raw.size() > max_weights)
        throw std::invalid_argument("too many weights");
    std::vector<Int> w(raw.begin(), raw.end());
    for (Int a : w)
        if (a < 1)
            throw std::invalid_argument("weights must be positive");
    std::sort(w.begin(), w.end());
    if (auto bad = well_formedness_violation(w))
        throw NotWellFormed(bad->index, bad->gcd);
    return WeightSystem(std::move(w));
}

std::optional<WeightSystem>
WeightSystem::try_canonicalize(std::span<const Int> raw) noexcept
{
    if (raw.empty() || raw.size() > max_weights)
        return std::nullopt;
    std::vector<Int> w(raw.begin(), raw.end());
    if (std::any_of(w.begin(), w.end(), [](Int a) { return a < 1; }))
        return std::nullopt;
    std::sort(w.begin(), w.end());
    if (!is_well_formed(w))
        return std::nullopt;
    return WeightSystem(std::move(w));
}

Int WeightSystem::sum() const
{
    Int s = 0;
    for (Int a : w_)
        s = checked_add(s, a);
    return s;
}

const char *to_string(FamilyKind kind)
{
    switch (kind) {
    case FamilyKind::fano:
        return "fano";
    case FamilyKind::cy:
        return "cy";
    case FamilyKind::general_type:
        return "general_type";
    case FamilyKind::other:
        break;
    }
    return "other";
}

std::optional<FamilyKind> family_kind_from_string(const std::string &s)
{
    if (s == "fano")
        return FamilyKind::fano;
    if (s == "cy")
        return FamilyKind::cy;
    if (s == "general_type")
        return FamilyKind::general_type;
    if (s == "other")
        return FamilyKind::other;
    return std::nullopt;
}

HypersurfaceFamily HypersurfaceFamily::fano(WeightSystem ws)
{
    Int d = ws.sum() - 1;
    return {std::move(ws), d};
}

HypersurfaceFamily HypersurfaceFamily::calabi_yau(WeightSystem ws)
{
    Int d = ws.sum();
    return {std::move(ws), d};
}

FamilyKind HypersurfaceFamily::kind() const
{
    Int k = canonical_twist();
    if (k == -1)
        return FamilyKind::fano;
    if (k == 0)
        return FamilyKind::cy;
    if (k > 0)
        return FamilyKind::general_type;
    return FamilyKind::other;
}

Int weighted_degree(std::span<const Int> exponents, std::span<const Int> weights)
{
    if (exponents.size() != weights.size())
        throw std::invalid_argument("exponent vector length does not match weights");
    Int d = 0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (exponents[i] < 0)
            throw std::invalid_argument("negative exponent");
        d = checked_add(d, checked_mul(exponents[i], weights[i]));
    }
    return d;
}

Int degree(const Monomial &m, const WeightSystem &ws)
{
    return weighted_degree(m.exponents, ws.weights());
}

namespace {

using Buffer = std::array<Int, max_weights>;

// Inverse of a modulo m, for coprime a, m with m > 1.
Int inverse_mod(Int a, Int m)
{
    Int old_r = a % m, r = m, old_s = 1, s = 0;
    while (r != 0) {
        Int q = old_r / r;
        Int t = old_r - q * r;
        old_r = r;
        r = t;
        t = old_s - q * s;
        old_s = s;
        s = t;
    }
    Int inv = old_s % m;
    return inv < 0 ? inv + m : inv;
}

// Smallest x >= 0 with x*a = target (mod b); a and b coprime.
Int two_generator_offset(Int a, Int b, Int target)
{
    if (b == 1)
        return 0;
    __int128 x = static_cast<__int128>(target % b) * inverse_mod(a, b);
    return static_cast<Int>(x % b);
}

bool member_rec(const Int *gens, std::size_t count, Int t)
{
    if (t == 0)
        return true;
    if (t < 0)
        return false;

    Buffer g;
    std::size_t k = 0;
    for (std::size_t i = 0; i < count; ++i) {
        Int a = gens[i];
        if (a > t)
            continue;
        if (t % a == 0)
            return true;
        g[k++] = a;
    }
    if (k == 0)
        return false;

    Int common = 0;
    for (std::size_t i = 0; i < k; ++i)
        common = std::gcd(common, g[i]);
    if (t % common != 0)
        return false;
    if (common > 1) {
        t /= common;
        for (std::size_t i = 0; i < k; ++i)
            g[i] /= common;
    }
    if (k == 1)
        return false;

    std::sort(g.begin(), g.begin() + k);
    k = static_cast<std::size_t>(std::unique(g.begin(), g.begin() + k) - g.begin());

    // Anything at or beyond the Frobenius bound of a coprime pair is reachable.
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j)
            if (std::gcd(g[i], g[j]) == 1 &&
                static_cast<__int128>(g[i] - 1) * (g[j] - 1) <= t)
                return true;

    if (k == 2) {
        Int x = two_generator_offset(g[0], g[1], t);
        return static_cast<__int128>(x) * g[0] <= t;
    }

    const Int c = g[k - 1];
    for (Int y = t / c; y >= 0; --y)
        if (member_rec(g.data(), k - 1, t - y * c))
            return true;
    return false;
}

bool witness_rec(std::span<const Int> gens, std::size_t count, Int t,
                 std::vector<Int> &coeffs)
{
    if (t == 0)
        return true;
    if (count == 0)
        return false;
    const std::size_t last = count - 1;
    const Int c = gens[last];
    if (count == 1) {
        if (t % c != 0)
            return false;
        coeffs[last] = t / c;
        return true;
    }
    for (Int y = t / c; y >= 0; --y) {
        Int rest = t - y * c;
        if (!member_rec(gens.data(), last, rest))
            continue;
        coeffs[last] = y;
        if (witness_rec(gens, last, rest, coeffs))
            return true;
    }
    coeffs[last] = 0;
    return false;
}

} // namespace

bool semigroup_member(std::span<const Int> generators, Int target)
{
    if (generators.size() > max_weights)
        throw std::invalid_argument("too many generators");
    for (Int g : generators)
        if (g < 1)
            throw std::invalid_argument("generators must be positive");
    return member_rec(generators.data(), generators.size(), target);
}

bool semigroup_member_table(std::span<const Int> generators, Int target)
{
    if (target < 0)
        return false;
    std::vector<char> reach(static_cast<std::size_t>(target) + 1, 0);
    reach[0] = 1;
    for (Int g : generators) {
        if (g < 1)
            throw std::invalid_argument("generators must be positive");
        for (Int v = g; v <= target; ++v)
            if (reach[static_cast<std::size_t>(v - g)])
                reach[static_cast<std::size_t>(v)] = 1;
    }
    return reach[static_cast<std::size_t>(target)] != 0;
}

std::optional<std::vector<Int>>
semigroup_witness(std::span<const Int> generators, Int target)
{
    if (!semigroup_member(generators, target))
        return std::nullopt;
    std::vector<Int> coeffs(generators.size(), 0);
    if (!witness_rec(generators, generators.size(), target, coeffs))
        return std::nullopt;
    return coeffs;
}

} // namespace wfano
