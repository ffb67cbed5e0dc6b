#pragma once

#include <cstddef>
#include <vector>

#include "vpr/error.hpp"

namespace vpr {

// Dense row-major double matrix. Deliberately minimal: the descriptor
// pipeline only needs matvec/matmul with a fixed summation order so that
// results are reproducible bit-for-bit.
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data; // rows * cols, row-major

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c, double fill = 0.0)
        : rows(r), cols(c), data(r * c, fill) {}

    double& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
    double at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1.0;
        return m;
    }
};

inline std::vector<double> matvec(const Matrix& m, const std::vector<double>& v) {
    if (v.size() != m.cols)
        throw InvalidInput("matvec: vector length " + std::to_string(v.size()) +
                           " does not match matrix cols " + std::to_string(m.cols));
    std::vector<double> out(m.rows, 0.0);
    for (std::size_t r = 0; r < m.rows; ++r) {
        double acc = 0.0;
        const double* row = m.data.data() + r * m.cols;
        for (std::size_t c = 0; c < m.cols; ++c) acc += row[c] * v[c];
        out[r] = acc;
    }
    return out;
}

inline Matrix matmul(const Matrix& a, const Matrix& b) {
    if (a.cols != b.rows)
        throw InvalidInput("matmul: inner dimensions " + std::to_string(a.cols) +
                           " and " + std::to_string(b.rows) + " differ");
    Matrix out(a.rows, b.cols);
    for (std::size_t r = 0; r < a.rows; ++r) {
        for (std::size_t c = 0; c < b.cols; ++c) {
            double acc = 0.0;
            for (std::size_t k = 0; k < a.cols; ++k) acc += a.at(r, k) * b.at(k, c);
            out.at(r, c) = acc;
        }
    }
    return out;
}

inline Matrix transpose(const Matrix& m) {
    Matrix out(m.cols, m.rows);
    for (std::size_t r = 0; r < m.rows; ++r)
        for (std::size_t c = 0; c < m.cols; ++c) out.at(c, r) = m.at(r, c);
    return out;
}

} // namespace vpr
