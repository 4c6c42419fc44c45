#pragma once

#include "wfano/core.hpp"
#include "wfano/search.hpp"

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace wfano {

enum class LocationKind {
    /// The coordinate point P_i (one index).
    vertex,
    /// count isolated points on the edge x_k = 0 for k outside {i, j}.
    edge_points,
    /// A curve of singularities: an edge contained in X (two indices) or X
    /// meeting a two-dimensional stratum with a common factor (three or
    /// more indices).
    non_isolated_curve,
};

const char *to_string(LocationKind kind);

/// Cyclic quotient type 1/r(w_1, ..., w_m) at a location of the general
/// member. For curves, w are the transverse weights.
struct QuotientSingularity {
    Int r;
    std::vector<Int> w;
    LocationKind location;
    std::vector<std::size_t> indices;
    Int count = 1;

    bool operator==(const QuotientSingularity &) const = default;
};

class UnsupportedConfiguration : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A type with every quasi-reflection and every trivially acting factor
/// divided out. reduced is set when either step changed anything.
struct CanonicalType {
    Int r;
    std::vector<Int> w;
    bool reduced;
};

CanonicalType canonical_type(Int r, std::span<const Int> w);

/// Indices j != i with m a_i + a_j = d for some m >= 1, ascending. Empty
/// when a_i divides d (the general member misses P_i).
std::vector<std::size_t> admissible_partners(const HypersurfaceFamily &fam, std::size_t i);

/// Basket of the general member, eliminating the smallest admissible
/// partner at each vertex.
std::vector<QuotientSingularity> singularities(const HypersurfaceFamily &fam);

/// Same, with partner[i] eliminated at vertex P_i (ignored where P_i is not
/// on the general member). Throws std::invalid_argument for a partner that
/// is not admissible.
std::vector<QuotientSingularity> singularities(const HypersurfaceFamily &fam,
                                               std::span<const std::size_t> partner);

/// Reid-Tai: sum_l (k w_l mod r) > r for every k in [1, r - 1], after
/// canonicalization. Throws UnsupportedConfiguration for curve locations.
bool is_terminal_type(const QuotientSingularity &q);
bool is_terminal_type(Int r, std::span<const Int> w);

/// Isolated singularities, all of terminal type.
bool classify_terminal(const HypersurfaceFamily &fam);
bool classify_terminal(std::span<const QuotientSingularity> basket);

struct TigerKe {
    /// d <= a_0 a_1: no member has a tiger.
    bool tiger_free;
    /// (n - 1) d < n a_0 a_1: every member admits a Kahler-Einstein metric.
    bool ke;
};

TigerKe tiger_ke_flags(const HypersurfaceFamily &fam);

/// Primitive sorted triples b whose degree 2 sum(b) curve in P(b) is
/// quasi-smooth. b3 <= 2 (b1 + b2) by the vertex condition at the largest
/// weight; b2 runs up to cap.
std::vector<std::array<Int, 3>> enumerate_48_triples(Int cap = 200);

/// (b, k) with b an enumerated triple and k odd such that the family is
/// X_{2k sum(b)} in P(2, k b, k sum(b) - 1). Smallest k, then smallest b.
std::optional<SeriesMembership> detect_series_membership(const HypersurfaceFamily &fam);

struct ClassifiedRecord {
    HypersurfaceFamily family;
    bool quasi_smooth = false;
    bool terminal = false;
    bool tiger_free = false;
    bool ke = false;
    std::optional<SeriesMembership> series;
    std::vector<QuotientSingularity> basket;

    bool operator==(const ClassifiedRecord &) const = default;
};

ClassifiedRecord classify_family(const HypersurfaceFamily &fam);

/// classify_family over a list, in order. threads as in the searches.
std::vector<ClassifiedRecord> classify_all(std::span<const HypersurfaceFamily> fams,
                                           int threads = 0);

} // namespace wfano
