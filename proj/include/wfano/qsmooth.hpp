#pragma once

#include "wfano/core.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace wfano {

/// Index subset of {0..n} as a bitmask; bit i set means i is in the subset.
using IndexSubset = std::uint32_t;

inline int subset_size(IndexSubset s) { return __builtin_popcount(s); }
std::vector<std::size_t> subset_indices(IndexSubset s);

/// x_i^exponent * x_partner has degree d (partner == i allowed, in which
/// case the monomial is x_i^(exponent + 1)).
struct VertexWitness {
    Int exponent;
    std::size_t partner;

    bool operator==(const VertexWitness &) const = default;
};

/// Smallest-partner witness with exponent >= 1, preferring partner == i
/// when a_i divides d.
std::optional<VertexWitness> check_vertex(const HypersurfaceFamily &fam, std::size_t i);

/// If the weights other than a_i, a_j share a factor, some degree d
/// monomial must avoid x_i and x_j. Vacuously true otherwise.
bool check_codim2(const HypersurfaceFamily &fam, std::size_t i, std::size_t j);

/// T(I) = { t : d - a_t is a nonnegative combination of {a_j : j in I} }.
std::vector<std::size_t> target_set(const HypersurfaceFamily &fam, IndexSubset subset);

struct SubsetReport {
    IndexSubset subset;
    std::optional<Monomial> pure_monomial_witness;
    int target_set_size;
    bool passes;
};

struct QuasiSmoothReport {
    HypersurfaceFamily family;
    bool verdict = false;
    std::vector<SubsetReport> per_subset;
    std::optional<IndexSubset> failing_subset;
    // Filled in by is_quasi_smooth only.
    bool codim2_ok = true;
    std::optional<std::pair<std::size_t, std::size_t>> failing_pair;
    std::vector<std::optional<VertexWitness>> vertex_witnesses;
};

QuasiSmoothReport check_qs13(const HypersurfaceFamily &fam);
bool check_qs13prime(const HypersurfaceFamily &fam);
QuasiSmoothReport is_quasi_smooth(const HypersurfaceFamily &fam);

/// The witness monomial x_i^m x_j of a vertex witness, as an exponent vector.
Monomial vertex_monomial(std::size_t size, std::size_t i, const VertexWitness &w);

// Kernels on raw weight spans (any order, no well-formedness assumption).
// These are what the search loops call.
namespace kernel {

/// Every vertex P_i admits x_i^m x_j of degree d with m >= 0.
bool vertex_condition(std::span<const Int> w, Int d);
bool codim2_condition(std::span<const Int> w, Int d);
/// For every nonempty I, |T(I)| >= |I|.
bool subset_condition(std::span<const Int> w, Int d);
/// For every nonempty I, a pure I-monomial of degree d exists or |T(I)| >= |I|.
bool subset_condition_prime(std::span<const Int> w, Int d);
/// Some degree d monomial avoids x_i, for every i.
bool irreducible(std::span<const Int> w, Int d);

inline bool quasi_smooth(std::span<const Int> w, Int d)
{
    return vertex_condition(w, d) && codim2_condition(w, d) && subset_condition(w, d);
}

} // namespace kernel

} // namespace wfano
