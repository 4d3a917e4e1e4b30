#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "torext/ring.hpp"

namespace torext::linalg {

// Dense matrix over F_p, row-major.
struct Mat {
    int rows = 0, cols = 0;
    uint32_t p = 101;
    std::vector<uint32_t> a;

    Mat() = default;
    Mat(int r, int c, uint32_t p_) : rows(r), cols(c), p(p_), a((size_t)r * c, 0) {}

    uint32_t& at(int i, int j) { return a[(size_t)i * cols + j]; }
    uint32_t at(int i, int j) const { return a[(size_t)i * cols + j]; }

    friend bool operator==(const Mat& x, const Mat& y) {
        return x.rows == y.rows && x.cols == y.cols && x.a == y.a;
    }

    Mat transpose() const {
        Mat t(cols, rows, p);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) t.at(j, i) = at(i, j);
        return t;
    }
    bool is_zero() const {
        for (auto x : a)
            if (x) return false;
        return true;
    }
    static Mat identity(int n, uint32_t p) {
        Mat m(n, n, p);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }
};

// Row echelon form in place; returns pivot columns in order. The elimination
// arithmetic is identical in the serial and OpenMP paths, so both produce the
// same matrix bit for bit.
std::vector<int> rref_serial(Mat& m);
std::vector<int> rref(Mat& m);  // OpenMP over rows when the budget allows

int rank_of(const Mat& m);
int rank_of_serial(const Mat& m);

Mat mul_serial(const Mat& x, const Mat& y);
Mat mul(const Mat& x, const Mat& y);

// columns form a basis of the right kernel, in rref-canonical form
Mat nullspace(const Mat& m);

// nullspace plus the free-column supports: basis column k has a 1 in row
// free_cols[k] and 0 in every other free row, so coordinates of a kernel
// vector v are v[free_cols[k]].
struct Nullspace {
    Mat basis;
    std::vector<int> free_cols;
};
Nullspace nullspace_with_supports(const Mat& m);

// one solution x of m x = b, if any
std::optional<std::vector<uint32_t>> solve(const Mat& m, const std::vector<uint32_t>& b);

// Column span helper: reduce v against the echelon rows of `ech` (an rref
// matrix with pivot list), returning the residual.
struct EchelonSpace {
    Mat ech;               // rref, rows are basis of the row space
    std::vector<int> piv;  // pivot column per row

    explicit EchelonSpace(int dim, uint32_t p) : ech(0, dim, p) {}
    int dim() const { return ech.rows; }

    // reduce v in place; returns true if v was in the span (residual zero)
    bool reduce(std::vector<uint32_t>& v) const;
    // insert v if independent; returns true if inserted
    bool insert(std::vector<uint32_t> v);
};

std::optional<Mat> inverse(const Mat& m);

}  // namespace torext::linalg
