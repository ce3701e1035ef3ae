#pragma once

#include <cstddef>
#include <vector>

#include "ppgkit/errors.hpp"

namespace ppgkit {

/// Dense row-major matrix, just enough for the attention kernel.
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c, double fill = 0.0)
        : rows(r), cols(c), data(r * c, fill) {}

    double& at(std::size_t i, std::size_t j) { return data[i * cols + j]; }
    double at(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
};

/// S[i][j] = cos(q_i, k_j) / tau + B[i][j], where cos is the normalized dot
/// product of the i-th query row and j-th key row. Throws ZeroVector when a
/// row norm is zero, BadConfig on shape/temperature violations.
Matrix scaled_cosine_attention(const Matrix& queries, const Matrix& keys, double tau,
                               const Matrix& bias);

} // namespace ppgkit
