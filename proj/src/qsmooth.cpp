#include "wfano/qsmooth.hpp"

#include <array>
#include <numeric>

namespace wfano {

std::vector<std::size_t> subset_indices(IndexSubset s)
{
    std::vector<std::size_t> out;
    for (std::size_t i = 0; s != 0; ++i, s >>= 1)
        if (s & 1u)
            out.push_back(i);
    return out;
}

namespace {

using Buffer = std::array<Int, max_weights>;

std::size_t gather(std::span<const Int> w, IndexSubset subset, Buffer &out)
{
    std::size_t k = 0;
    for (std::size_t i = 0; i < w.size(); ++i)
        if (subset & (IndexSubset{1} << i))
            out[k++] = w[i];
    return k;
}

IndexSubset full_mask(std::size_t size) { return (IndexSubset{1} << size) - 1; }

void check_size(std::span<const Int> w)
{
    if (w.size() > 31)
        throw std::invalid_argument("subset kernels support at most 31 weights");
}

// |T(I)|, stopping early once `enough` targets are found.
int count_targets(std::span<const Int> w, Int d, IndexSubset subset, int enough)
{
    Buffer gens;
    std::size_t k = gather(w, subset, gens);
    std::span<const Int> g(gens.data(), k);
    int found = 0;
    for (std::size_t t = 0; t < w.size() && found < enough; ++t) {
        Int rest = d - w[t];
        if (rest >= 0 && semigroup_member(g, rest))
            ++found;
    }
    return found;
}

bool pure_monomial_exists(std::span<const Int> w, Int d, IndexSubset subset)
{
    Buffer gens;
    std::size_t k = gather(w, subset, gens);
    return semigroup_member(std::span<const Int>(gens.data(), k), d);
}

} // namespace

namespace kernel {

bool vertex_condition(std::span<const Int> w, Int d)
{
    for (std::size_t i = 0; i < w.size(); ++i) {
        bool ok = false;
        for (std::size_t j = 0; j < w.size() && !ok; ++j) {
            Int rest = d - w[j];
            ok = rest >= 0 && rest % w[i] == 0;
        }
        if (!ok)
            return false;
    }
    return true;
}

bool codim2_condition(std::span<const Int> w, Int d)
{
    check_size(w);
    const IndexSubset all = full_mask(w.size());
    for (std::size_t i = 0; i < w.size(); ++i)
        for (std::size_t j = i + 1; j < w.size(); ++j) {
            IndexSubset rest = all & ~(IndexSubset{1} << i) & ~(IndexSubset{1} << j);
            Buffer gens;
            std::size_t k = gather(w, rest, gens);
            std::span<const Int> g(gens.data(), k);
            if (gcd_of(g) > 1 && !semigroup_member(g, d))
                return false;
        }
    return true;
}

// Key reading of the general condition: a monomial x_e(i) * prod_{j in I}
// x_j^m_ij of degree d exists iff d - a_e(i) lies in the semigroup spanned by
// {a_j : j in I}, which does not depend on i. So every i in I draws from the
// same admissible target set T(I), and an injection I -> T(I) exists iff
// |T(I)| >= |I|. No matching is needed.
bool subset_condition(std::span<const Int> w, Int d)
{
    check_size(w);
    const IndexSubset all = full_mask(w.size());
    for (IndexSubset s = 1; s <= all; ++s)
        if (count_targets(w, d, s, subset_size(s)) < subset_size(s))
            return false;
    return true;
}

bool subset_condition_prime(std::span<const Int> w, Int d)
{
    check_size(w);
    const IndexSubset all = full_mask(w.size());
    for (IndexSubset s = 1; s <= all; ++s) {
        if (pure_monomial_exists(w, d, s))
            continue;
        if (count_targets(w, d, s, subset_size(s)) < subset_size(s))
            return false;
    }
    return true;
}

bool irreducible(std::span<const Int> w, Int d)
{
    check_size(w);
    const IndexSubset all = full_mask(w.size());
    for (std::size_t i = 0; i < w.size(); ++i)
        if (!pure_monomial_exists(w, d, all & ~(IndexSubset{1} << i)))
            return false;
    return true;
}

} // namespace kernel

std::optional<VertexWitness> check_vertex(const HypersurfaceFamily &fam, std::size_t i)
{
    const auto w = fam.ws.weights();
    if (i >= w.size())
        throw std::out_of_range("vertex index out of range");
    const Int d = fam.degree;
    const Int a = w[i];
    if (d % a == 0 && d / a >= 2)
        return VertexWitness{d / a - 1, i};
    for (std::size_t j = 0; j < w.size(); ++j) {
        if (j == i)
            continue;
        Int rest = d - w[j];
        if (rest >= a && rest % a == 0)
            return VertexWitness{rest / a, j};
    }
    return std::nullopt;
}

bool check_codim2(const HypersurfaceFamily &fam, std::size_t i, std::size_t j)
{
    const auto w = fam.ws.weights();
    if (i >= j || j >= w.size())
        throw std::invalid_argument("check_codim2 needs i < j <= n");
    std::vector<Int> rest;
    for (std::size_t k = 0; k < w.size(); ++k)
        if (k != i && k != j)
            rest.push_back(w[k]);
    if (gcd_of(rest) == 1)
        return true;
    return semigroup_member(rest, fam.degree);
}

std::vector<std::size_t> target_set(const HypersurfaceFamily &fam, IndexSubset subset)
{
    const auto w = fam.ws.weights();
    check_size(w);
    if (subset == 0 || subset > full_mask(w.size()))
        throw std::invalid_argument("target_set needs a nonempty subset of {0..n}");
    Buffer gens;
    std::size_t k = gather(w, subset, gens);
    std::span<const Int> g(gens.data(), k);
    std::vector<std::size_t> out;
    for (std::size_t t = 0; t < w.size(); ++t) {
        Int rest = fam.degree - w[t];
        if (rest >= 0 && semigroup_member(g, rest))
            out.push_back(t);
    }
    return out;
}

QuasiSmoothReport check_qs13(const HypersurfaceFamily &fam)
{
    const auto w = fam.ws.weights();
    check_size(w);
    QuasiSmoothReport report{fam};
    report.verdict = true;
    const IndexSubset all = full_mask(w.size());
    for (IndexSubset s = 1; s <= all; ++s) {
        SubsetReport sub{s, std::nullopt, 0, false};
        std::vector<Int> gens;
        std::vector<std::size_t> idx = subset_indices(s);
        for (std::size_t i : idx)
            gens.push_back(w[i]);
        if (auto coeffs = semigroup_witness(gens, fam.degree)) {
            Monomial m{std::vector<Int>(w.size(), 0)};
            for (std::size_t k = 0; k < idx.size(); ++k)
                m.exponents[idx[k]] = (*coeffs)[k];
            sub.pure_monomial_witness = std::move(m);
        }
        sub.target_set_size = static_cast<int>(target_set(fam, s).size());
        sub.passes = sub.target_set_size >= subset_size(s);
        if (!sub.passes && report.verdict) {
            report.verdict = false;
            report.failing_subset = s;
        }
        report.per_subset.push_back(std::move(sub));
    }
    return report;
}

bool check_qs13prime(const HypersurfaceFamily &fam)
{
    return kernel::subset_condition_prime(fam.ws.weights(), fam.degree);
}

QuasiSmoothReport is_quasi_smooth(const HypersurfaceFamily &fam)
{
    const std::size_t size = fam.ws.size();
    std::vector<std::optional<VertexWitness>> vertices;
    for (std::size_t i = 0; i < size; ++i)
        vertices.push_back(check_vertex(fam, i));

    QuasiSmoothReport report = check_qs13(fam);
    report.vertex_witnesses = std::move(vertices);
    for (std::size_t i = 0; i < size && report.codim2_ok; ++i)
        for (std::size_t j = i + 1; j < size; ++j)
            if (!check_codim2(fam, i, j)) {
                report.codim2_ok = false;
                report.failing_pair = std::make_pair(i, j);
                break;
            }
    report.verdict = report.verdict && report.codim2_ok;
    return report;
}

Monomial vertex_monomial(std::size_t size, std::size_t i, const VertexWitness &w)
{
    Monomial m{std::vector<Int>(size, 0)};
    m.exponents[i] += w.exponent;
    m.exponents[w.partner] += 1;
    return m;
}

} // namespace wfano
