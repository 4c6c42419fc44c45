#pragma once

// Slow, independent reference implementations used only by the tests.

#include "wfano/core.hpp"

#include <algorithm>
#include <numeric>
#include <span>
#include <vector>

namespace oracle {

using wfano::Int;

inline bool representable(std::span<const Int> gens, Int target)
{
    if (target < 0)
        return false;
    std::vector<char> reach(static_cast<std::size_t>(target) + 1, 0);
    reach[0] = 1;
    for (Int v = 1; v <= target; ++v)
        for (Int g : gens)
            if (g <= v && reach[static_cast<std::size_t>(v - g)]) {
                reach[static_cast<std::size_t>(v)] = 1;
                break;
            }
    return reach[static_cast<std::size_t>(target)];
}

// Nested loop over all exponent vectors with b_j <= target / g_j.
inline bool representable_loop(std::span<const Int> gens, Int target)
{
    if (gens.empty())
        return target == 0;
    for (Int b = 0; b * gens[0] <= target; ++b)
        if (representable_loop(gens.subspan(1), target - b * gens[0]))
            return true;
    return false;
}

inline std::vector<Int> pick(std::span<const Int> w, unsigned mask)
{
    std::vector<Int> out;
    for (std::size_t i = 0; i < w.size(); ++i)
        if (mask >> i & 1u)
            out.push_back(w[i]);
    return out;
}

inline int target_count(std::span<const Int> w, Int d, unsigned mask)
{
    const auto gens = pick(w, mask);
    int count = 0;
    for (Int a : w)
        count += representable(gens, d - a);
    return count;
}

// |T(I)| >= |I| for every nonempty I.
inline bool qs13(std::span<const Int> w, Int d)
{
    for (unsigned mask = 1; mask < (1u << w.size()); ++mask)
        if (target_count(w, d, mask) < __builtin_popcount(mask))
            return false;
    return true;
}

// A pure I-monomial of degree d, or |T(I)| >= |I|, for every nonempty I.
inline bool qs13prime(std::span<const Int> w, Int d)
{
    for (unsigned mask = 1; mask < (1u << w.size()); ++mask) {
        if (representable(pick(w, mask), d))
            continue;
        if (target_count(w, d, mask) < __builtin_popcount(mask))
            return false;
    }
    return true;
}

// For every pair whose complement has a common factor, the complement
// weights alone reach d.
inline bool codim2(std::span<const Int> w, Int d)
{
    const unsigned all = (1u << w.size()) - 1;
    for (std::size_t i = 0; i < w.size(); ++i)
        for (std::size_t j = i + 1; j < w.size(); ++j) {
            const auto rest = pick(w, all & ~(1u << i) & ~(1u << j));
            Int g = 0;
            for (Int a : rest)
                g = std::gcd(g, a);
            if (g > 1 && !representable(rest, d))
                return false;
        }
    return true;
}

inline bool quasi_smooth(std::span<const Int> w, Int d)
{
    return qs13(w, d) && codim2(w, d);
}

inline bool well_formed(std::span<const Int> w)
{
    for (std::size_t i = 0; i < w.size(); ++i) {
        Int g = 0;
        for (std::size_t j = 0; j < w.size(); ++j)
            if (j != i)
                g = std::gcd(g, w[j]);
        if (g != 1)
            return false;
    }
    return true;
}

// Age test without any reduction; valid when no element acts as a
// reflection.
inline bool age_above_one(Int r, std::span<const Int> w)
{
    for (Int k = 1; k < r; ++k) {
        Int s = 0;
        for (Int v : w)
            s += (k * v) % r;
        if (s <= r)
            return false;
    }
    return true;
}

// Age test on C^m / G, G the image of Z/r acting by the weights w. The
// elements supported on coordinate l alone form a subgroup of order h_l;
// G acts on the invariants x_l^h_l, and elements acting trivially there
// are skipped.
inline bool terminal_quotient(Int r, std::span<const Int> w)
{
    std::vector<std::vector<Int>> elements;
    for (Int k = 0; k < r; ++k) {
        std::vector<Int> v;
        for (Int x : w)
            v.push_back(((k * x) % r + r) % r);
        if (std::find(elements.begin(), elements.end(), v) == elements.end())
            elements.push_back(v);
    }
    std::vector<Int> h(w.size(), 0);
    for (const auto &v : elements)
        for (std::size_t l = 0; l < w.size(); ++l) {
            bool only_l = true;
            for (std::size_t j = 0; j < w.size(); ++j)
                only_l = only_l && (j == l || v[j] == 0);
            h[l] += only_l;
        }
    for (const auto &v : elements) {
        Int s = 0;
        for (std::size_t l = 0; l < w.size(); ++l)
            s += (h[l] * v[l]) % r;
        if (s != 0 && s <= r)
            return false;
    }
    return true;
}

// Every sorted tuple in the box, d = sum + shift, kept when well formed and
// quasi-smooth by the oracles above.
inline std::vector<std::vector<Int>> box_census(std::span<const Int> bounds, Int shift)
{
    std::vector<std::vector<Int>> out;
    std::vector<Int> w(bounds.size());
    auto rec = [&](auto &&self, std::size_t pos, Int lo) -> void {
        if (pos == bounds.size()) {
            const Int d = std::accumulate(w.begin(), w.end(), Int{0}) + shift;
            if (d > 0 && well_formed(w) && quasi_smooth(w, d))
                out.push_back(w);
            return;
        }
        for (Int a = lo; a <= bounds[pos]; ++a) {
            w[pos] = a;
            self(self, pos + 1, a);
        }
    };
    rec(rec, 0, 1);
    return out;
}

} // namespace oracle
