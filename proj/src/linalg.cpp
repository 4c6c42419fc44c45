#include "linalg.hpp"

namespace wfano::detail {

BigInt det_big(const Matrix &a, std::size_t n)
{
    std::array<std::array<BigInt, max_dim>, max_dim> b;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            b[i][j] = to_big(a[i][j]);
    return bareiss_det(
        b, n, [](const BigInt &x, const BigInt &y) { return BigInt(x * y); },
        [](const BigInt &x, const BigInt &y) { return BigInt(x - y); });
}

I128 det(const Matrix &a, std::size_t n)
{
    try {
        return bareiss_det(a, n, mul128, sub128);
    } catch (const ArithmeticOverflow &) {
        return from_big(det_big(a, n));
    }
}

Matrix minor_of(const Matrix &a, std::size_t n, std::size_t u)
{
    Matrix r{};
    for (std::size_t i = 0, ri = 0; i < n; ++i) {
        if (i == u)
            continue;
        for (std::size_t j = 0, rj = 0; j < n; ++j) {
            if (j == u)
                continue;
            r[ri][rj++] = a[i][j];
        }
        ++ri;
    }
    return r;
}

Matrix replace_column(const Matrix &a, std::size_t n, std::size_t k, const Vector &v)
{
    Matrix r = a;
    for (std::size_t i = 0; i < n; ++i)
        r[i][k] = v[i];
    return r;
}

std::size_t rank(const Matrix &a, std::size_t rows, std::size_t cols)
{
    std::array<std::array<BigInt, max_dim>, max_dim> b;
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            b[i][j] = to_big(a[i][j]);
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && b[p][c] == 0)
            ++p;
        if (p == rows)
            continue;
        std::swap(b[r], b[p]);
        for (std::size_t i = r + 1; i < rows; ++i) {
            if (b[i][c] == 0)
                continue;
            BigInt f = b[i][c], g = b[r][c];
            for (std::size_t j = c; j < cols; ++j)
                b[i][j] = b[i][j] * g - b[r][j] * f;
        }
        ++r;
    }
    return r;
}

} // namespace wfano::detail
