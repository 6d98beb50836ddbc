#include "dynopt/gdbg/rotation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace dynopt::gdbg {

Matrix Matrix::identity(std::size_t n)
{
    Matrix m(n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = 1.0;
    return m;
}

void row_times(std::span<const double> y, const Matrix& m, std::span<double> out)
{
    const std::size_t n = m.size();
    std::fill(out.begin(), out.end(), 0.0);
    for (std::size_t r = 0; r < n; ++r) {
        const double yr = y[r];
        for (std::size_t c = 0; c < n; ++c)
            out[c] += yr * m(r, c);
    }
}

Matrix random_orthogonal(std::size_t n, Rng& rng)
{
    // Rows are orthonormalised in order; a (numerically) dependent row is
    // redrawn, which has probability zero for Gaussian entries.
    Matrix m(n);
    for (std::size_t r = 0; r < n; ++r) {
        for (;;) {
            for (std::size_t c = 0; c < n; ++c)
                m(r, c) = rng.normal();
            for (int pass = 0; pass < 2; ++pass) {
                for (std::size_t q = 0; q < r; ++q) {
                    double dot = 0.0;
                    for (std::size_t c = 0; c < n; ++c)
                        dot += m(r, c) * m(q, c);
                    for (std::size_t c = 0; c < n; ++c)
                        m(r, c) -= dot * m(q, c);
                }
            }
            double norm = 0.0;
            for (std::size_t c = 0; c < n; ++c)
                norm += m(r, c) * m(r, c);
            norm = std::sqrt(norm);
            if (norm > 1e-8) {
                for (std::size_t c = 0; c < n; ++c)
                    m(r, c) /= norm;
                break;
            }
        }
    }
    return m;
}

void givens_rotate(std::span<double> v, std::size_t a, std::size_t b, double angle)
{
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    const double va = v[a];
    const double vb = v[b];
    v[a] = c * va - s * vb;
    v[b] = s * va + c * vb;
}

std::vector<std::pair<std::size_t, std::size_t>> random_pairing(std::size_t n, Rng& rng)
{
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::shuffle(perm.begin(), perm.end(), rng.engine());
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    pairs.reserve(n / 2);
    for (std::size_t i = 0; i + 1 < n; i += 2)
        pairs.emplace_back(perm[i], perm[i + 1]);
    return pairs;
}

void rotate_pairs(std::span<double> v, std::span<const std::pair<std::size_t, std::size_t>> pairs,
                  double angle)
{
    for (const auto& [a, b] : pairs)
        givens_rotate(v, a, b, angle);
}

} // namespace dynopt::gdbg
