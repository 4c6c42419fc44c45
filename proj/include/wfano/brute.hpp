#pragma once

#include "wfano/core.hpp"

#include <array>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace wfano {

/// Stages of the brute-force filter cascade, in order.
enum class BruteStage { ascending, well_formed, vertex, codim2, subset };

inline constexpr std::size_t brute_stage_count = 5;

struct PruneStage {
    BruteStage stage;
    const char *name;
    const char *description;
};

/// The cascade a tuple goes through. Counters report how many tuples
/// survive each stage, so they never increase along the list.
std::vector<PruneStage> prune_order();

struct BruteOptions {
    /// Per-coordinate maxima; the ambient dimension is bounds.size() - 1.
    std::vector<Int> bounds;
    /// fano (d = sum - 1) or cy (d = sum).
    FamilyKind kind = FamilyKind::fano;
    /// With pruning, the last weight only runs over the values allowed by
    /// the vertex condition at its own vertex. Without, over the full range.
    bool prune = true;
    /// 0 = all available threads, 1 = serial loop.
    int threads = 0;
    /// Journal of completed (a0, a1) prefixes; an existing journal for the
    /// same run is resumed.
    std::optional<std::filesystem::path> checkpoint_dir;
};

struct BruteResult {
    std::vector<HypersurfaceFamily> families;
    /// Tuples surviving each stage, indexed by BruteStage.
    std::array<long long, brute_stage_count> survivors{};
    std::size_t prefixes = 0;
    std::size_t prefixes_resumed = 0;
};

/// All canonical well-formed tuples a_0 <= ... <= a_n with a_i <= bounds[i]
/// whose degree d hypersurface passes the vertex, codimension 2 and subset
/// conditions. Sorted lexicographically; identical for every thread count
/// and pruning setting.
BruteResult brute_search(const BruteOptions &options);

/// Degree of the family kind for the given weight sum.
Int kind_degree(FamilyKind kind, Int weight_sum);

} // namespace wfano
