#pragma once

#include <cstddef>
#include <vector>

namespace specmine {

// Dense row-major matrix. Deliberately tiny: the models here need only
// storage, indexing, and shape checks.
struct Matrix {
    size_t rows = 0;
    size_t cols = 0;
    std::vector<double> data;

    Matrix() = default;
    Matrix(size_t r, size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

    double& at(size_t r, size_t c) { return data[r * cols + c]; }
    const double& at(size_t r, size_t c) const { return data[r * cols + c]; }

    bool same_shape(const Matrix& o) const {
        return rows == o.rows && cols == o.cols;
    }
};

}  // namespace specmine
