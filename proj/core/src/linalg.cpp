#include "loopcoh/linalg.hpp"

#include <algorithm>
#include <map>
#include <set>

#include <boost/multiprecision/cpp_int.hpp>

namespace loopcoh::linalg {

namespace {

using BigInt = boost::multiprecision::cpp_int;

void check_limits(const SparseMatrix& m, const Limits& limits)
{
    if (m.n_rows() > limits.max_dimension || m.n_cols() > limits.max_dimension)
        throw ResourceLimitExceeded("matrix " + std::to_string(m.n_rows()) + "x" + std::to_string(m.n_cols()) +
                                    " exceeds dimension cap " + std::to_string(limits.max_dimension));
}

std::int64_t to_int64(const BigInt& v)
{
    if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
        throw ArithmeticOverflow("integer entry exceeds int64");
    return static_cast<std::int64_t>(v);
}

BigInt floor_div(const BigInt& a, const BigInt& b)
{
    // b > 0
    BigInt q = a / b;
    if (a % b != 0 && a < 0) q -= 1;
    return q;
}

// Dense Smith normal form of a BigInt matrix; returns the nonzero invariant factors.
std::vector<BigInt> dense_smith(std::vector<std::vector<BigInt>> a)
{
    std::vector<BigInt> diag;
    const std::size_t rows = a.size();
    const std::size_t cols = rows ? a[0].size() : 0;
    for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
        for (;;) {
            // smallest nonzero |entry| in the trailing block
            std::size_t pr = rows, pc = cols;
            for (std::size_t i = t; i < rows; ++i)
                for (std::size_t j = t; j < cols; ++j)
                    if (a[i][j] != 0 && (pr == rows || abs(a[i][j]) < abs(a[pr][pc]))) {
                        pr = i;
                        pc = j;
                    }
            if (pr == rows) return diag;
            std::swap(a[t], a[pr]);
            for (auto& row : a) std::swap(row[t], row[pc]);

            bool clean = true;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (a[i][t] == 0) continue;
                BigInt q = a[i][t] / a[t][t];
                for (std::size_t j = t; j < cols; ++j) a[i][j] -= q * a[t][j];
                if (a[i][t] != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (a[t][j] == 0) continue;
                BigInt q = a[t][j] / a[t][t];
                for (std::size_t i = t; i < rows; ++i) a[i][j] -= q * a[i][t];
                if (a[t][j] != 0) clean = false;
            }
            if (!clean) continue;

            // divisibility of the trailing block
            bool divides = true;
            for (std::size_t i = t + 1; i < rows && divides; ++i)
                for (std::size_t j = t + 1; j < cols; ++j)
                    if (a[i][j] % a[t][t] != 0) {
                        for (std::size_t k = t; k < cols; ++k) a[t][k] += a[i][k];
                        divides = false;
                        break;
                    }
            if (divides) break;
        }
        diag.push_back(abs(a[t][t]));
    }
    return diag;
}

}  // namespace

std::vector<std::int64_t> SmithResult::torsion() const
{
    std::vector<std::int64_t> out;
    for (auto d : diagonal)
        if (d > 1) out.push_back(d);
    return out;
}

SmithResult smith_normal_form(const SparseMatrix& m, const Limits& limits)
{
    if (m.ring().kind() != RingKind::integers) throw WrongRing("smith_normal_form requires integer coefficients");
    check_limits(m, limits);

    const std::size_t n_rows = m.n_rows();
    std::vector<std::map<std::size_t, BigInt>> rows(n_rows);
    std::vector<std::set<std::size_t>> col_nz(m.n_cols());
    for (std::size_t j = 0; j < m.n_cols(); ++j)
        for (const auto& [i, v] : m.column(j)) {
            rows[i][j] = v.num;
            col_nz[j].insert(i);
        }
    std::vector<bool> row_alive(n_rows, true);

    std::size_t unit_pivots = 0;
    for (;;) {
        // unit pivot of least Markowitz cost
        std::size_t best_r = n_rows, best_c = 0, best_cost = 0;
        for (std::size_t i = 0; i < n_rows; ++i) {
            if (!row_alive[i]) continue;
            for (const auto& [j, v] : rows[i]) {
                if (v != 1 && v != -1) continue;
                std::size_t cost = (rows[i].size() - 1) * (col_nz[j].size() - 1);
                if (best_r == n_rows || cost < best_cost) {
                    best_r = i;
                    best_c = j;
                    best_cost = cost;
                }
            }
        }
        if (best_r == n_rows) break;

        const auto pivot_row = rows[best_r];
        const BigInt pv = pivot_row.at(best_c);
        std::vector<std::size_t> targets(col_nz[best_c].begin(), col_nz[best_c].end());
        for (std::size_t i : targets) {
            if (i == best_r) continue;
            BigInt factor = rows[i].at(best_c) * pv;  // pv = +-1 so pv^-1 = pv
            for (const auto& [j, v] : pivot_row) {
                auto [it, inserted] = rows[i].try_emplace(j, 0);
                it->second -= factor * v;
                if (it->second == 0) {
                    rows[i].erase(it);
                    col_nz[j].erase(i);
                } else if (inserted) {
                    col_nz[j].insert(i);
                }
            }
        }
        for (const auto& [j, v] : pivot_row) col_nz[j].erase(best_r);
        rows[best_r].clear();
        row_alive[best_r] = false;
        ++unit_pivots;
    }

    // dense remainder
    std::vector<std::size_t> rem_rows, rem_cols;
    for (std::size_t i = 0; i < n_rows; ++i)
        if (row_alive[i] && !rows[i].empty()) rem_rows.push_back(i);
    for (std::size_t j = 0; j < col_nz.size(); ++j)
        if (!col_nz[j].empty()) rem_cols.push_back(j);

    SmithResult result;
    result.diagonal.assign(unit_pivots, 1);
    if (!rem_rows.empty()) {
        std::map<std::size_t, std::size_t> col_index;
        for (std::size_t k = 0; k < rem_cols.size(); ++k) col_index[rem_cols[k]] = k;
        std::vector<std::vector<BigInt>> dense(rem_rows.size(), std::vector<BigInt>(rem_cols.size(), 0));
        for (std::size_t k = 0; k < rem_rows.size(); ++k)
            for (const auto& [j, v] : rows[rem_rows[k]]) dense[k][col_index.at(j)] = v;
        for (const auto& d : dense_smith(std::move(dense))) result.diagonal.push_back(to_int64(d));
    }
    result.rank = result.diagonal.size();
    return result;
}

ImageReducer::ImageReducer(const SparseMatrix& m, const Limits& limits) : ring_(m.ring()), n_rows_(m.n_rows())
{
    check_limits(m, limits);
    if (ring_.kind() == RingKind::integers) {
        std::map<std::size_t, std::map<std::size_t, BigInt>> basis;  // pivot -> column
        for (std::size_t j = 0; j < m.n_cols(); ++j) {
            std::map<std::size_t, BigInt> w;
            for (const auto& [i, v] : m.column(j)) w[i] = v.num;
            while (!w.empty()) {
                std::size_t r = w.begin()->first;
                auto bit = basis.find(r);
                if (bit == basis.end()) break;
                auto& b = bit->second;
                BigInt bp = b.at(r);
                BigInt wp = w.begin()->second;
                if (wp % bp == 0) {
                    BigInt q = wp / bp;
                    for (const auto& [k, bv] : b) {
                        auto& x = w[k];
                        x -= q * bv;
                        if (x == 0) w.erase(k);
                    }
                    continue;
                }
                // extended gcd: g = x*bp + y*wp, then (b, w) -> (x b + y w, (bp/g) w - (wp/g) b)
                BigInt old_r = bp, rr = wp, old_s = 1, s = 0, old_t = 0, t = 1;
                while (rr != 0) {
                    BigInt q = old_r / rr;
                    BigInt tmp = old_r - q * rr;
                    old_r = rr;
                    rr = tmp;
                    tmp = old_s - q * s;
                    old_s = s;
                    s = tmp;
                    tmp = old_t - q * t;
                    old_t = t;
                    t = tmp;
                }
                BigInt g = old_r, x = old_s, y = old_t;
                if (g < 0) {
                    g = -g;
                    x = -x;
                    y = -y;
                }
                std::set<std::size_t> keys;
                for (const auto& [k, v] : b) keys.insert(k);
                for (const auto& [k, v] : w) keys.insert(k);
                BigInt bq = bp / g, wq = wp / g;
                std::map<std::size_t, BigInt> nb, nw;
                for (std::size_t k : keys) {
                    auto bi = b.find(k);
                    auto wi = w.find(k);
                    BigInt bv = bi == b.end() ? BigInt(0) : bi->second;
                    BigInt wv = wi == w.end() ? BigInt(0) : wi->second;
                    BigInt nbv = x * bv + y * wv;
                    BigInt nwv = bq * wv - wq * bv;
                    if (nbv != 0) nb[k] = nbv;
                    if (nwv != 0) nw[k] = nwv;
                }
                b = std::move(nb);
                w = std::move(nw);
            }
            if (w.empty()) continue;
            std::size_t piv = w.begin()->first;
            if (w.begin()->second < 0)
                for (auto& [k, v] : w) v = -v;
            basis[piv] = std::move(w);
        }
        for (auto& [piv, col] : basis) {
            SparseColumn c;
            for (const auto& [k, v] : col) c.emplace_back(k, Scalar{to_int64(v), 1});
            basis_.emplace_back(piv, std::move(c));
        }
        return;
    }

    if (!ring_.is_field()) throw WrongRing("unsupported ring");
    std::map<std::size_t, std::map<std::size_t, Scalar>> basis;
    for (std::size_t j = 0; j < m.n_cols(); ++j) {
        std::map<std::size_t, Scalar> w(m.column(j).begin(), m.column(j).end());
        while (!w.empty()) {
            auto bit = basis.find(w.begin()->first);
            if (bit == basis.end()) break;
            Scalar factor = w.begin()->second;  // basis pivots are normalized to 1
            for (const auto& [k, bv] : bit->second) {
                auto [wit, ins] = w.try_emplace(k, ring_.zero());
                wit->second = ring_.sub(wit->second, ring_.mul(factor, bv));
                if (ring_.is_zero(wit->second)) w.erase(wit);
            }
        }
        if (w.empty()) continue;
        std::size_t piv = w.begin()->first;
        Scalar inv = ring_.inv(w.begin()->second);
        for (auto& [k, v] : w) v = ring_.mul(v, inv);
        basis[piv] = std::move(w);
    }
    for (auto& [piv, col] : basis) basis_.emplace_back(piv, SparseColumn(col.begin(), col.end()));
}

Reduction ImageReducer::reduce(const DenseVector& v) const
{
    if (v.size() != n_rows_) throw std::invalid_argument("reduce_modulo_image: dimension mismatch");
    Reduction out;
    out.representative = v;
    auto& rep = out.representative;
    for (const auto& [piv, col] : basis_) {
        if (ring_.is_zero(rep[piv])) continue;
        Scalar factor;
        if (ring_.kind() == RingKind::integers) {
            BigInt q = floor_div(BigInt(rep[piv].num), BigInt(col.front().second.num));
            if (q == 0) continue;
            factor = Scalar{to_int64(q), 1};
        } else {
            factor = rep[piv];
        }
        for (const auto& [k, bv] : col) rep[k] = ring_.sub(rep[k], ring_.mul(factor, bv));
    }
    out.in_image = std::all_of(rep.begin(), rep.end(), [&](const Scalar& s) { return ring_.is_zero(s); });
    return out;
}

Reduction reduce_modulo_image(const DenseVector& v, const SparseMatrix& m, const Limits& limits)
{
    if (v.size() != m.n_rows()) throw std::invalid_argument("reduce_modulo_image: dimension mismatch");
    return ImageReducer(m, limits).reduce(v);
}

std::size_t rank_over_field(const SparseMatrix& m, const Limits& limits)
{
    if (!m.ring().is_field()) throw WrongRing("rank_over_field requires a field, got " + m.ring().name());
    check_limits(m, limits);
    const Ring& ring = m.ring();
    // column insertion against an echelon basis keyed by pivot row
    std::map<std::size_t, std::map<std::size_t, Scalar>> basis;
    for (std::size_t j = 0; j < m.n_cols(); ++j) {
        std::map<std::size_t, Scalar> w(m.column(j).begin(), m.column(j).end());
        while (!w.empty()) {
            auto bit = basis.find(w.begin()->first);
            if (bit == basis.end()) break;
            Scalar factor = w.begin()->second;
            for (const auto& [k, bv] : bit->second) {
                auto [wit, ins] = w.try_emplace(k, ring.zero());
                wit->second = ring.sub(wit->second, ring.mul(factor, bv));
                if (ring.is_zero(wit->second)) w.erase(wit);
            }
        }
        if (w.empty()) continue;
        Scalar inv = ring.inv(w.begin()->second);
        for (auto& [k, v] : w) v = ring.mul(v, inv);
        std::size_t piv = w.begin()->first;
        basis[piv] = std::move(w);
    }
    return basis.size();
}

std::optional<DenseVector> solve_linear(const Ring& field, const std::vector<DenseVector>& columns,
                                        const DenseVector& target)
{
    if (!field.is_field()) throw WrongRing("solve_linear requires a field");
    const std::size_t n = columns.size();
    const std::size_t rows = target.size();
    for (const auto& c : columns)
        if (c.size() != rows) throw std::invalid_argument("solve_linear: dimension mismatch");

    // augmented matrix, row-major
    std::vector<DenseVector> a(rows, DenseVector(n + 1, field.zero()));
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < n; ++j) a[i][j] = columns[j][i];
        a[i][n] = target[i];
    }
    std::vector<std::size_t> pivot_col_of_row;
    std::size_t r = 0;
    for (std::size_t c = 0; c < n && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && field.is_zero(a[p][c])) ++p;
        if (p == rows) continue;
        std::swap(a[p], a[r]);
        Scalar inv = field.inv(a[r][c]);
        for (auto& x : a[r]) x = field.mul(x, inv);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || field.is_zero(a[i][c])) continue;
            Scalar f = a[i][c];
            for (std::size_t k = c; k <= n; ++k) a[i][k] = field.sub(a[i][k], field.mul(f, a[r][k]));
        }
        pivot_col_of_row.push_back(c);
        ++r;
    }
    for (std::size_t i = r; i < rows; ++i)
        if (!field.is_zero(a[i][n])) return std::nullopt;
    DenseVector x(n, field.zero());
    for (std::size_t i = 0; i < r; ++i) x[pivot_col_of_row[i]] = a[i][n];
    return x;
}

}  // namespace loopcoh::linalg
