#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "loopcoh/sparse_matrix.hpp"

namespace loopcoh::linalg {

/// Raised when a matrix exceeds the configured dimension cap.
class ResourceLimitExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised when an operation is called over an unsupported coefficient ring.
class WrongRing : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct Limits {
    std::size_t max_dimension = 20000;
};

struct SmithResult {
    /// Invariant factors d_1 | d_2 | ... | d_r, all positive; includes the 1s.
    std::vector<std::int64_t> diagonal;
    std::size_t rank = 0;

    /// The invariant factors greater than one.
    std::vector<std::int64_t> torsion() const;
};

SmithResult smith_normal_form(const SparseMatrix& m, const Limits& limits = {});

std::size_t rank_over_field(const SparseMatrix& m, const Limits& limits = {});

struct Reduction {
    DenseVector representative;
    bool in_image = false;
};

/// Canonical coset representative of v modulo the column span (column
/// lattice over Z). Pivots are taken at the lowest row index of each
/// echelon column, so the representative vanishes on every pivot row
/// (over Z: lies in [0, pivot) there).
Reduction reduce_modulo_image(const DenseVector& v, const SparseMatrix& m, const Limits& limits = {});

/// Precomputed echelon data for repeated reductions against the same image.
class ImageReducer {
public:
    explicit ImageReducer(const SparseMatrix& m, const Limits& limits = {});
    Reduction reduce(const DenseVector& v) const;
    std::size_t n_rows() const { return n_rows_; }

private:
    Ring ring_;
    std::size_t n_rows_;
    // echelon columns sorted by pivot row; over Z the pivot entry is positive
    std::vector<std::pair<std::size_t, SparseColumn>> basis_;
};

/// Solves sum_i x_i * columns[i] = target over a field. Returns nullopt when
/// the system is inconsistent; free variables are set to zero.
std::optional<DenseVector> solve_linear(const Ring& field, const std::vector<DenseVector>& columns,
                                        const DenseVector& target);

}  // namespace loopcoh::linalg
