#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace wfano {

using Int = std::int64_t;

// Largest number of weights any kernel accepts. Fixed so the hot paths can
// work on stack buffers.
inline constexpr std::size_t max_weights = 32;

class ArithmeticOverflow : public std::overflow_error {
public:
    explicit ArithmeticOverflow(const std::string &what)
        : std::overflow_error(what)
    {
    }
};

class NotWellFormed : public std::invalid_argument {
public:
    NotWellFormed(std::size_t index, Int gcd);

    std::size_t index() const { return index_; }
    Int gcd() const { return gcd_; }

private:
    std::size_t index_;
    Int gcd_;
};

inline Int checked_add(Int a, Int b)
{
    Int r;
    if (__builtin_add_overflow(a, b, &r))
        throw ArithmeticOverflow("integer addition overflow");
    return r;
}

inline Int checked_mul(Int a, Int b)
{
    Int r;
    if (__builtin_mul_overflow(a, b, &r))
        throw ArithmeticOverflow("integer multiplication overflow");
    return r;
}

Int gcd_of(std::span<const Int> values);

/// First index i (in the given order) such that the weights other than
/// w[i] share a common factor, together with that factor.
struct WellFormednessViolation {
    std::size_t index;
    Int gcd;
};
std::optional<WellFormednessViolation>
well_formedness_violation(std::span<const Int> weights);

inline bool is_well_formed(std::span<const Int> weights)
{
    return !well_formedness_violation(weights).has_value();
}

/// Weights of a weighted projective space P(a_0, ..., a_n), kept in
/// ascending order. Every instance is well formed: any n of the n+1 weights
/// are coprime.
class WeightSystem {
public:
    /// Sorts and validates. Throws NotWellFormed (index in ascending order)
    /// rather than dividing out a common factor.
    static WeightSystem canonicalize(std::span<const Int> raw);
    static WeightSystem canonicalize(std::initializer_list<Int> raw)
    {
        return canonicalize(std::span<const Int>(raw.begin(), raw.size()));
    }
    static std::optional<WeightSystem>
    try_canonicalize(std::span<const Int> raw) noexcept;

    std::span<const Int> weights() const { return w_; }
    const std::vector<Int> &vector() const { return w_; }
    std::size_t size() const { return w_.size(); }
    /// Ambient dimension n.
    int dim() const { return static_cast<int>(w_.size()) - 1; }
    Int operator[](std::size_t i) const { return w_[i]; }
    Int sum() const;

    auto operator<=>(const WeightSystem &) const = default;
    bool operator==(const WeightSystem &) const = default;

private:
    explicit WeightSystem(std::vector<Int> w) : w_(std::move(w)) {}
    std::vector<Int> w_;
};

enum class FamilyKind { fano, cy, general_type, other };

const char *to_string(FamilyKind kind);
std::optional<FamilyKind> family_kind_from_string(const std::string &s);

/// A degree d hypersurface in P(ws). The kind is read off from d - sum(a):
/// -1 anticanonical Fano, 0 Calabi-Yau, k > 0 general type.
struct HypersurfaceFamily {
    WeightSystem ws;
    Int degree;

    static HypersurfaceFamily fano(WeightSystem ws);
    static HypersurfaceFamily calabi_yau(WeightSystem ws);

    /// d - sum(a_i), the twist k with omega_X = O_X(k).
    Int canonical_twist() const { return degree - ws.sum(); }
    FamilyKind kind() const;

    auto operator<=>(const HypersurfaceFamily &) const = default;
    bool operator==(const HypersurfaceFamily &) const = default;
};

struct Monomial {
    std::vector<Int> exponents;

    bool operator==(const Monomial &) const = default;
};

/// Weighted degree sum(b_i a_i). Throws ArithmeticOverflow instead of
/// wrapping and std::invalid_argument on a length mismatch.
Int degree(const Monomial &m, const WeightSystem &ws);
Int weighted_degree(std::span<const Int> exponents, std::span<const Int> weights);

/// Is target a nonnegative integer combination of the generators? This is
/// the production kernel: divisibility and Frobenius shortcuts, a closed
/// form for two generators and recursion on the largest generator above
/// that. No allocation; safe to call from any thread.
bool semigroup_member(std::span<const Int> generators, Int target);

/// Reference implementation: reachability table over 0..target.
bool semigroup_member_table(std::span<const Int> generators, Int target);

/// Coefficients b_j (aligned with generators) with sum b_j g_j = target, if
/// any exist. Prefers representations using the later generators.
std::optional<std::vector<Int>>
semigroup_witness(std::span<const Int> generators, Int target);

} // namespace wfano
