#pragma once

#include "wfano/core.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <array>
#include <cstddef>
#include <utility>

namespace wfano::detail {

using I128 = __int128;
using BigInt = boost::multiprecision::cpp_int;

// One spare column for augmented systems of size up to 8.
inline constexpr std::size_t max_dim = 9;

using Vector = std::array<I128, max_dim>;
using Matrix = std::array<Vector, max_dim>;

inline I128 mul128(I128 a, I128 b)
{
    I128 r;
    if (__builtin_mul_overflow(a, b, &r))
        throw ArithmeticOverflow("128-bit multiplication overflow");
    return r;
}

inline I128 sub128(I128 a, I128 b)
{
    I128 r;
    if (__builtin_sub_overflow(a, b, &r))
        throw ArithmeticOverflow("128-bit subtraction overflow");
    return r;
}

inline I128 add128(I128 a, I128 b)
{
    I128 r;
    if (__builtin_add_overflow(a, b, &r))
        throw ArithmeticOverflow("128-bit addition overflow");
    return r;
}

inline Int narrow(I128 v)
{
    if (v > static_cast<I128>(INT64_MAX) || v < static_cast<I128>(INT64_MIN))
        throw ArithmeticOverflow("value does not fit in 64 bits");
    return static_cast<Int>(v);
}

inline Int narrow(const BigInt &v)
{
    if (v > INT64_MAX || v < INT64_MIN)
        throw ArithmeticOverflow("value does not fit in 64 bits");
    return static_cast<Int>(v);
}

inline BigInt to_big(I128 v)
{
    bool neg = v < 0;
    unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
    BigInt r = static_cast<std::uint64_t>(u >> 64);
    r <<= 64;
    r += static_cast<std::uint64_t>(u);
    return neg ? BigInt(-r) : r;
}

inline I128 from_big(const BigInt &v)
{
    static const BigInt lo = to_big(static_cast<I128>(static_cast<unsigned __int128>(1) << 127));
    static const BigInt hi = -(lo + 1);
    if (v < lo || v > hi)
        throw ArithmeticOverflow("value does not fit in 128 bits");
    BigInt mag = v < 0 ? BigInt(-v) : v;
    unsigned __int128 u = static_cast<std::uint64_t>(mag >> 64);
    u = (u << 64) | static_cast<std::uint64_t>(mag & BigInt(UINT64_MAX));
    return v < 0 ? -static_cast<I128>(u) : static_cast<I128>(u);
}

/// Bareiss elimination on the leading n x n block. Every division is exact.
template <class T, class Mul, class Sub>
T bareiss_det(std::array<std::array<T, max_dim>, max_dim> a, std::size_t n, Mul mul, Sub sub)
{
    if (n == 0)
        return T(1);
    T prev = 1;
    bool negate = false;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            std::size_t p = k + 1;
            while (p < n && a[p][k] == 0)
                ++p;
            if (p == n)
                return T(0);
            std::swap(a[k], a[p]);
            negate = !negate;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                a[i][j] = sub(mul(a[i][j], a[k][k]), mul(a[i][k], a[k][j])) / prev;
        prev = a[k][k];
    }
    return negate ? T(-a[n - 1][n - 1]) : a[n - 1][n - 1];
}

BigInt det_big(const Matrix &a, std::size_t n);

/// Checked 128-bit determinant; recomputed exactly when 128 bits overflow.
/// Throws ArithmeticOverflow only if the determinant itself needs more.
I128 det(const Matrix &a, std::size_t n);

/// a with row and column u removed.
Matrix minor_of(const Matrix &a, std::size_t n, std::size_t u);

/// a with column k replaced by v.
Matrix replace_column(const Matrix &a, std::size_t n, std::size_t k, const Vector &v);

/// Rank of the leading rows x cols block, exact.
std::size_t rank(const Matrix &a, std::size_t rows, std::size_t cols);

} // namespace wfano::detail
