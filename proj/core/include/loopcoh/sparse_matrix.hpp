#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "loopcoh/ring.hpp"

namespace loopcoh::linalg {

/// Sparse column: (row, value) pairs sorted by row, no stored zeros.
using SparseColumn = std::vector<std::pair<std::size_t, Scalar>>;
using DenseVector = std::vector<Scalar>;

/// Column-major sparse matrix over a fixed ring.
class SparseMatrix {
public:
    SparseMatrix(Ring ring, std::size_t n_rows, std::size_t n_cols);

    const Ring& ring() const { return ring_; }
    std::size_t n_rows() const { return n_rows_; }
    std::size_t n_cols() const { return cols_.size(); }
    std::size_t nnz() const;

    Scalar at(std::size_t row, std::size_t col) const;
    /// Setting zero erases the entry.
    void set(std::size_t row, std::size_t col, Scalar value);
    /// Adds value to the (row, col) entry.
    void add_to(std::size_t row, std::size_t col, Scalar value);
    /// Replaces column `col`; entries are canonicalized (sorted, merged, zeros dropped).
    void set_column(std::size_t col, SparseColumn entries);
    const SparseColumn& column(std::size_t col) const { return cols_.at(col); }

    std::vector<std::string> row_labels;
    std::vector<std::string> col_labels;

    /// Dense row-by-row construction, handy for tests.
    static SparseMatrix from_rows(Ring ring, const std::vector<std::vector<std::int64_t>>& rows);

    friend bool operator==(const SparseMatrix& a, const SparseMatrix& b)
    {
        return a.ring_ == b.ring_ && a.n_rows_ == b.n_rows_ && a.cols_ == b.cols_;
    }

private:
    Ring ring_;
    std::size_t n_rows_;
    std::vector<SparseColumn> cols_;
};

/// Matrix product a*b (sizes must agree).
SparseMatrix multiply(const SparseMatrix& a, const SparseMatrix& b);
/// Reduces every entry into another ring (e.g. Z -> F_p).
SparseMatrix change_ring(const SparseMatrix& m, const Ring& target);
bool is_zero_matrix(const SparseMatrix& m);

}  // namespace loopcoh::linalg
