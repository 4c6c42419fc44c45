#pragma once

#include "wfano/core.hpp"

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace wfano {

/// Right-hand side of (M + J + U) a = rhs: -1 per row for anticanonical Fano
/// hypersurfaces, 0 for Calabi-Yau.
enum class RhsKind { fano, cy };

Int rhs_value(RhsKind kind);

struct InclusiveRange {
    Int lo;
    Int hi;

    bool contains(Int v) const { return lo <= v && v <= hi; }
    Int count() const { return hi < lo ? 0 : hi - lo + 1; }
};

/// Exponent ranges of the n = 4 Fano search. m1 runs up to the Case 1 cap on
/// min(m0, m1); m0 is the unknown.
struct ExponentBounds {
    InclusiveRange m1;
    InclusiveRange m2;
    InclusiveRange m3;
    InclusiveRange m4;
    Int case1_cap;
};

ExponentBounds exponent_bounds();

/// One configuration of (M + J + U) a = rhs. Row i stands for the monomial
/// x_i^m_i * x_target[i] of degree d = sum(a) + rhs. An empty m entry is the
/// unknown exponent.
struct SearchCase {
    std::vector<std::size_t> target;
    std::vector<std::optional<Int>> m;
    RhsKind rhs_kind = RhsKind::fano;

    std::size_t size() const { return target.size(); }
    /// Throws std::invalid_argument on malformed cases.
    void validate() const;
    std::optional<std::size_t> unknown() const;
};

/// The integer matrix M + J + U, with 0 in place of an unknown exponent.
std::vector<std::vector<Int>> system_matrix(const SearchCase &c);

/// x = numerators / denominator, denominator > 0, in lowest terms.
struct RationalSolution {
    std::vector<Int> numerators;
    Int denominator;

    /// The solution as weights when every entry is a positive integer.
    std::optional<std::vector<Int>> positive_integral() const;
};

struct Singular {};
struct NoSolution {};

using SolveResult = std::variant<RationalSolution, Singular, NoSolution>;

/// Exact solve of a fully specified case by fraction-free elimination in
/// checked 128-bit arithmetic, escalating to arbitrary precision on
/// overflow. Throws ArithmeticOverflow if an entry of the result does not
/// fit in Int.
SolveResult solve_case(const SearchCase &c);

/// With the unknown exponent m on the diagonal at index u:
///   det A(m) = alpha * m + beta,  a_k(m) = (p_k + q_k * m) / det A(m).
/// q_u = 0, so a_u = gamma / (alpha * m + beta) with gamma = p_u.
struct OneUnknownReduction {
    std::size_t unknown;
    Int alpha;
    Int beta;
    std::vector<Int> p;
    std::vector<Int> q;

    Int gamma() const { return p[unknown]; }
};

OneUnknownReduction reduce_one_unknown(const SearchCase &c);

/// a_k(m) = (p_k + q_k * m) / den for the unknown exponent m; the weight at
/// the unknown index is constant. Produced when alpha = 0 and beta != 0.
struct LinearFamily {
    SearchCase source;
    std::vector<Int> p;
    std::vector<Int> q;
    Int den;

    /// Weights at m when all are positive integers.
    std::optional<std::vector<Int>> at(Int m) const;
};

struct BoundedSolutions {
    std::vector<std::pair<Int, std::vector<Int>>> solutions;
};
struct SeriesBranch {
    LinearFamily family;
};
struct SingularBranch {};

using OneUnknownResult = std::variant<BoundedSolutions, SeriesBranch, SingularBranch>;

/// alpha != 0: every m >= m_min giving positive integral weights (a finite
/// set, since |alpha m + beta| <= |gamma|). alpha = 0, beta != 0: the linear
/// family. alpha = beta = 0: SingularBranch.
OneUnknownResult solve_one_unknown(const SearchCase &c, Int m_min = 1);

/// X_{2k sum(b)} in P(2, k b1, k b2, k b3, k sum(b) - 1), k odd.
struct SeriesFamily {
    std::array<Int, 3> b;
    /// Number of linear pieces merged into this series.
    std::size_t pieces = 0;

    Int b_sum() const { return b[0] + b[1] + b[2]; }
    /// Weights of the k-th member, ascending.
    std::vector<Int> weights(Int k) const;
    Int degree(Int k) const { return 2 * k * b_sum(); }
    /// Whether P(2, k b, k sum(b) - 1) is well formed.
    bool well_formed_member(Int k) const;

    auto operator<=>(const SeriesFamily &o) const { return b <=> o.b; }
    bool operator==(const SeriesFamily &o) const { return b == o.b; }
};

struct SeriesMembership {
    std::array<Int, 3> b;
    Int k;

    auto operator<=>(const SeriesMembership &) const = default;
};

/// Every (b, k) with k odd, b sorted and primitive, such that the weights
/// are a permutation of (2, k b, k sum(b) - 1) and the degree is 2 k sum(b).
/// Sorted by k, then b. Pattern only; no quasi-smoothness check.
std::vector<SeriesMembership> match_series_shape(std::span<const Int> weights, Int degree);

/// Whether the series chart reaches this member: in the series branch the
/// constant weight 2 is the smallest weight, so members with a weight 1 (k =
/// 1 and b1 = 1) only arise as sporadic solutions.
bool series_chart_member(const SeriesMembership &s);

class UnmergeablePiece : public std::runtime_error {
public:
    explicit UnmergeablePiece(LinearFamily piece);

    const LinearFamily &piece() const { return piece_; }

private:
    LinearFamily piece_;
};

/// Merges linear pieces into series keyed by the sorted triple b. Throws
/// UnmergeablePiece for a piece that is not of the series shape.
std::vector<SeriesFamily> assemble_series(std::span<const LinearFamily> pieces);

/// The b triple of a piece of series shape, if it is one.
std::optional<std::array<Int, 3>> series_shape_of(const LinearFamily &piece);

/// Families from the a0 = 1 reduction (which contains a0 = a1 = 1) and the
/// explicit (1, a, b, b, b), (1, a, b, b, 2b), (1, a, b, 2b, 3b) shapes with
/// b = 1 and a <= 6. All are well formed and quasi-smooth. Sorted, distinct.
std::vector<HypersurfaceFamily> case2_case3_candidates(Int series_cap = 2000);

enum class FilterReason {
    accepted,
    not_well_formed,
    fails_vertex,
    fails_codim2,
    fails_subset,
    series_member,
};

const char *to_string(FilterReason r);

struct FilterLogEntry {
    std::vector<Int> weights;
    FilterReason reason;
};

struct StructuredSearchOptions {
    ExponentBounds bounds = exponent_bounds();
    /// Linear families are evaluated for m0 <= series_cap.
    Int series_cap = 2000;
    bool include_case23 = true;
    /// 0 = all available threads, 1 = serial reference loop.
    int threads = 0;
    bool keep_filter_log = false;
};

struct StructuredDiagnostics {
    long long configurations = 0;
    long long finite_branch = 0;     // alpha != 0
    long long series_branch = 0;     // alpha = 0, beta != 0
    long long singular_branch = 0;   // alpha = beta = 0
    long long raw_solutions = 0;     // positive integral finite solutions
    long long distinct_solutions = 0;
    long long distinct_well_formed = 0;
    long long distinct_quasi_smooth = 0;
    long long persistent_pieces = 0;
    /// Persistent pieces without series shape whose late members are never
    /// well formed, e.g. (1, k, k, k, k).
    long long non_well_formed_pieces = 0;
    long long case23_candidates = 0;
    long long case23_new = 0;
    long long candidates = 0;        // quasi-smooth, well formed, all branches
    long long series_members_removed = 0;
    /// Largest m0 at which a non-persistent piece produced a quasi-smooth
    /// member; should sit far below series_cap.
    Int max_transient_m = 0;
    std::vector<FilterLogEntry> filter_log;
};

struct StructuredCensus {
    std::vector<HypersurfaceFamily> sporadic;
    std::vector<SeriesFamily> series;
    /// Quasi-smooth well-formed candidates removed as series members.
    std::vector<HypersurfaceFamily> series_members;
    StructuredDiagnostics diagnostics;
};

StructuredCensus run_structured_search(const StructuredSearchOptions &options = {});

/// Every family of the census with a_i <= bounds[i] (weights ascending):
/// sporadic families plus the well-formed quasi-smooth members of each
/// series, sorted. This is what a brute-force search over the box finds.
std::vector<HypersurfaceFamily> box_restriction(const StructuredCensus &census,
                                                std::span<const Int> bounds);

} // namespace wfano
