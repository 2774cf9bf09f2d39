#include "loopcoh/sparse_matrix.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace loopcoh::linalg {

SparseMatrix::SparseMatrix(Ring ring, std::size_t n_rows, std::size_t n_cols)
    : ring_(ring), n_rows_(n_rows), cols_(n_cols)
{
}

std::size_t SparseMatrix::nnz() const
{
    std::size_t n = 0;
    for (const auto& c : cols_) n += c.size();
    return n;
}

Scalar SparseMatrix::at(std::size_t row, std::size_t col) const
{
    const auto& c = cols_.at(col);
    auto it = std::lower_bound(c.begin(), c.end(), row, [](const auto& e, std::size_t r) { return e.first < r; });
    if (it != c.end() && it->first == row) return it->second;
    return ring_.zero();
}

void SparseMatrix::set(std::size_t row, std::size_t col, Scalar value)
{
    if (row >= n_rows_) throw std::out_of_range("SparseMatrix::set: row out of range");
    auto& c = cols_.at(col);
    auto it = std::lower_bound(c.begin(), c.end(), row, [](const auto& e, std::size_t r) { return e.first < r; });
    bool present = it != c.end() && it->first == row;
    if (ring_.is_zero(value)) {
        if (present) c.erase(it);
    } else if (present) {
        it->second = value;
    } else {
        c.insert(it, {row, value});
    }
}

void SparseMatrix::add_to(std::size_t row, std::size_t col, Scalar value)
{
    set(row, col, ring_.add(at(row, col), value));
}

void SparseMatrix::set_column(std::size_t col, SparseColumn entries)
{
    std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    SparseColumn out;
    out.reserve(entries.size());
    for (auto& [r, v] : entries) {
        if (r >= n_rows_) throw std::out_of_range("SparseMatrix::set_column: row out of range");
        if (!out.empty() && out.back().first == r)
            out.back().second = ring_.add(out.back().second, v);
        else
            out.emplace_back(r, v);
    }
    std::erase_if(out, [&](const auto& e) { return ring_.is_zero(e.second); });
    cols_.at(col) = std::move(out);
}

SparseMatrix SparseMatrix::from_rows(Ring ring, const std::vector<std::vector<std::int64_t>>& rows)
{
    std::size_t n_cols = rows.empty() ? 0 : rows.front().size();
    SparseMatrix m(ring, rows.size(), n_cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != n_cols) throw std::invalid_argument("from_rows: ragged rows");
        for (std::size_t c = 0; c < n_cols; ++c) m.set(r, c, ring.from_int(rows[r][c]));
    }
    return m;
}

SparseMatrix multiply(const SparseMatrix& a, const SparseMatrix& b)
{
    if (a.n_cols() != b.n_rows()) throw std::invalid_argument("multiply: dimension mismatch");
    const Ring& ring = a.ring();
    SparseMatrix out(ring, a.n_rows(), b.n_cols());
    for (std::size_t j = 0; j < b.n_cols(); ++j) {
        std::map<std::size_t, Scalar> acc;
        for (const auto& [k, bv] : b.column(j))
            for (const auto& [i, av] : a.column(k)) {
                auto [it, inserted] = acc.try_emplace(i, ring.zero());
                it->second = ring.add(it->second, ring.mul(av, bv));
            }
        out.set_column(j, SparseColumn(acc.begin(), acc.end()));
    }
    return out;
}

SparseMatrix change_ring(const SparseMatrix& m, const Ring& target)
{
    SparseMatrix out(target, m.n_rows(), m.n_cols());
    for (std::size_t j = 0; j < m.n_cols(); ++j) {
        SparseColumn col;
        for (const auto& [i, v] : m.column(j)) {
            if (v.den != 1) throw std::invalid_argument("change_ring: non-integral entry");
            col.emplace_back(i, target.from_int(v.num));
        }
        out.set_column(j, std::move(col));
    }
    out.row_labels = m.row_labels;
    out.col_labels = m.col_labels;
    return out;
}

bool is_zero_matrix(const SparseMatrix& m)
{
    for (std::size_t j = 0; j < m.n_cols(); ++j)
        if (!m.column(j).empty()) return false;
    return true;
}

}  // namespace loopcoh::linalg
