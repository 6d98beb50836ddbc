#ifndef DYNOPT_GDBG_ROTATION_HPP
#define DYNOPT_GDBG_ROTATION_HPP

#include "dynopt/core/rng.hpp"

#include <span>
#include <utility>
#include <vector>

namespace dynopt::gdbg {

/// Dense square matrix, row-major.
class Matrix
{
public:
    Matrix() = default;
    explicit Matrix(std::size_t n) : n_(n), data_(n * n, 0.0) {}

    static Matrix identity(std::size_t n);

    std::size_t size() const { return n_; }
    double& operator()(std::size_t r, std::size_t c) { return data_[r * n_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * n_ + c]; }

private:
    std::size_t n_ = 0;
    std::vector<double> data_;
};

/// out = y * m (row vector times matrix).
void row_times(std::span<const double> y, const Matrix& m, std::span<double> out);

/// Random orthogonal matrix (Gram-Schmidt on a Gaussian matrix).
Matrix random_orthogonal(std::size_t n, Rng& rng);

/// Rotates v in the (a, b) coordinate plane by `angle`:
/// v_a' = cos*v_a - sin*v_b, v_b' = sin*v_a + cos*v_b.
void givens_rotate(std::span<double> v, std::size_t a, std::size_t b, double angle);

/// floor(n/2) disjoint coordinate pairs from a random permutation.
std::vector<std::pair<std::size_t, std::size_t>> random_pairing(std::size_t n, Rng& rng);

/// Applies one Givens rotation per pair, all with the same angle.
void rotate_pairs(std::span<double> v, std::span<const std::pair<std::size_t, std::size_t>> pairs,
                  double angle);

} // namespace dynopt::gdbg

#endif // DYNOPT_GDBG_ROTATION_HPP
