#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "loopcoh/linalg.hpp"

using namespace loopcoh::linalg;

namespace {

const Ring Z = Ring::integers();
const Ring F2 = Ring::prime_field(2);

DenseVector ints(const Ring& r, std::initializer_list<std::int64_t> v)
{
    DenseVector out;
    for (auto x : v) out.push_back(r.from_int(x));
    return out;
}

// Determinantal-divisor oracle: d_1 * ... * d_k = gcd of all k x k minors.
std::int64_t det(const std::vector<std::vector<std::int64_t>>& a)
{
    const std::size_t n = a.size();
    if (n == 1) return a[0][0];
    std::int64_t total = 0;
    for (std::size_t c = 0; c < n; ++c) {
        std::vector<std::vector<std::int64_t>> minor;
        for (std::size_t r = 1; r < n; ++r) {
            std::vector<std::int64_t> row;
            for (std::size_t k = 0; k < n; ++k)
                if (k != c) row.push_back(a[r][k]);
            minor.push_back(row);
        }
        total += ((c % 2) ? -1 : 1) * a[0][c] * det(minor);
    }
    return total;
}

void subsets(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
             std::vector<std::vector<std::size_t>>& out)
{
    if (cur.size() == k) {
        out.push_back(cur);
        return;
    }
    for (std::size_t i = start; i < n; ++i) {
        cur.push_back(i);
        subsets(n, k, i + 1, cur, out);
        cur.pop_back();
    }
}

std::vector<std::int64_t> invariant_factors_by_minors(const std::vector<std::vector<std::int64_t>>& a)
{
    const std::size_t rows = a.size(), cols = a[0].size();
    std::vector<std::int64_t> out;
    std::int64_t prev = 1;
    for (std::size_t k = 1; k <= std::min(rows, cols); ++k) {
        std::vector<std::vector<std::size_t>> rs, cs;
        std::vector<std::size_t> cur;
        subsets(rows, k, 0, cur, rs);
        subsets(cols, k, 0, cur, cs);
        std::int64_t g = 0;
        for (const auto& r : rs)
            for (const auto& c : cs) {
                std::vector<std::vector<std::int64_t>> m(k, std::vector<std::int64_t>(k));
                for (std::size_t i = 0; i < k; ++i)
                    for (std::size_t j = 0; j < k; ++j) m[i][j] = a[r[i]][c[j]];
                g = std::gcd(g, det(m));
            }
        if (g == 0) break;
        out.push_back(g / prev);
        prev = g;
    }
    return out;
}

}  // namespace

TEST(SmithNormalForm, Identity)
{
    auto r = smith_normal_form(SparseMatrix::from_rows(Z, {{1, 0}, {0, 1}}));
    EXPECT_EQ(r.diagonal, (std::vector<std::int64_t>{1, 1}));
    EXPECT_EQ(r.rank, 2u);
}

TEST(SmithNormalForm, AlreadyDiagonal)
{
    auto r = smith_normal_form(SparseMatrix::from_rows(Z, {{2, 0}, {0, 0}}));
    EXPECT_EQ(r.diagonal, (std::vector<std::int64_t>{2}));
    EXPECT_EQ(r.rank, 1u);
}

TEST(SmithNormalForm, TwoByTwo)
{
    std::vector<std::vector<std::int64_t>> a{{2, 4}, {6, 8}};
    ASSERT_EQ(invariant_factors_by_minors(a), (std::vector<std::int64_t>{2, 4}));
    auto r = smith_normal_form(SparseMatrix::from_rows(Z, a));
    EXPECT_EQ(r.diagonal, (std::vector<std::int64_t>{2, 4}));
    EXPECT_EQ(r.rank, 2u);
    EXPECT_EQ(r.torsion(), (std::vector<std::int64_t>{2, 4}));
}

TEST(SmithNormalForm, RejectsFieldInput)
{
    EXPECT_THROW(smith_normal_form(SparseMatrix::from_rows(F2, {{1}})), WrongRing);
}

TEST(SmithNormalForm, DimensionCap)
{
    SparseMatrix m(Z, 30, 30);
    EXPECT_THROW(smith_normal_form(m, Limits{10}), ResourceLimitExceeded);
}

TEST(SmithNormalForm, RandomMatchesMinorOracleAndDivides)
{
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> entry(-6, 6), dim(1, 4), sparse(0, 2);
    for (int trial = 0; trial < 300; ++trial) {
        std::size_t rows = dim(rng), cols = dim(rng);
        std::vector<std::vector<std::int64_t>> a(rows, std::vector<std::int64_t>(cols));
        for (auto& row : a)
            for (auto& x : row) x = sparse(rng) == 0 ? 0 : entry(rng);
        auto r = smith_normal_form(SparseMatrix::from_rows(Z, a));
        EXPECT_EQ(r.diagonal, invariant_factors_by_minors(a)) << "trial " << trial;
        for (std::size_t i = 1; i < r.diagonal.size(); ++i) EXPECT_EQ(r.diagonal[i] % r.diagonal[i - 1], 0);
        // rank agrees with the rank mod a prime not dividing any invariant factor
        for (std::int64_t p : {2, 3, 5, 7, 11, 13}) {
            bool divides = false;
            for (auto d : r.diagonal) divides |= d % p == 0;
            if (divides) continue;
            auto modp = change_ring(SparseMatrix::from_rows(Z, a), Ring::prime_field(p));
            EXPECT_EQ(rank_over_field(modp), r.rank);
            break;
        }
    }
}

TEST(RankOverField, Basics)
{
    EXPECT_EQ(rank_over_field(SparseMatrix(F2, 3, 3)), 0u);
    auto q = Ring::rationals();
    EXPECT_EQ(rank_over_field(SparseMatrix::from_rows(q, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}})), 3u);
    EXPECT_EQ(rank_over_field(SparseMatrix::from_rows(F2, {{1, 1}, {1, 1}})), 1u);
    EXPECT_THROW(rank_over_field(SparseMatrix::from_rows(Z, {{1}})), WrongRing);
}

TEST(ReduceModuloImage, Examples)
{
    auto m = SparseMatrix::from_rows(F2, {{1}, {1}});
    auto zero = reduce_modulo_image(ints(F2, {0, 0}), m);
    EXPECT_TRUE(zero.in_image);
    auto col = reduce_modulo_image(ints(F2, {1, 1}), m);
    EXPECT_TRUE(col.in_image);
    auto r = reduce_modulo_image(ints(F2, {1, 0}), m);
    EXPECT_FALSE(r.in_image);
    EXPECT_EQ(r.representative, ints(F2, {0, 1}));
    EXPECT_THROW(reduce_modulo_image(ints(F2, {1}), m), std::invalid_argument);
}

TEST(ReduceModuloImage, IntegerLattice)
{
    // column lattice spanned by (2, 0) and (1, 3)
    auto m = SparseMatrix::from_rows(Z, {{2, 1}, {0, 3}});
    EXPECT_TRUE(reduce_modulo_image(ints(Z, {3, 3}), m).in_image);
    auto r = reduce_modulo_image(ints(Z, {1, 0}), m);
    EXPECT_FALSE(r.in_image);
    // the same coset reduces to the same representative
    auto r2 = reduce_modulo_image(ints(Z, {1 + 2 * 5 - 7, 0 - 21}), m);
    EXPECT_EQ(r.representative, r2.representative);
}

TEST(ReduceModuloImage, RandomCanonicalAndIdempotent)
{
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> entry(-4, 4), dim(1, 5);
    for (const Ring& ring : {Z, F2, Ring::prime_field(5), Ring::rationals()}) {
        for (int trial = 0; trial < 100; ++trial) {
            std::size_t rows = dim(rng), cols = dim(rng);
            SparseMatrix m(ring, rows, cols);
            for (std::size_t i = 0; i < rows; ++i)
                for (std::size_t j = 0; j < cols; ++j) m.set(i, j, ring.from_int(entry(rng)));
            ImageReducer red(m);
            DenseVector v(rows);
            for (auto& x : v) x = ring.from_int(entry(rng));
            auto once = red.reduce(v);
            auto twice = red.reduce(once.representative);
            EXPECT_EQ(once.representative, twice.representative);
            // adding an image element does not change the representative
            DenseVector shifted = v;
            std::size_t c = rng() % cols;
            Scalar k = ring.from_int(entry(rng));
            for (const auto& [i, val] : m.column(c)) shifted[i] = ring.add(shifted[i], ring.mul(k, val));
            EXPECT_EQ(red.reduce(shifted).representative, once.representative);
        }
    }
}

TEST(SolveLinear, FindsCoefficients)
{
    auto q = Ring::rationals();
    auto x = solve_linear(q, {ints(q, {1, 0, 1}), ints(q, {0, 2, 0})}, ints(q, {3, 4, 3}));
    ASSERT_TRUE(x.has_value());
    EXPECT_EQ((*x)[0], q.from_int(3));
    EXPECT_EQ((*x)[1], q.from_int(2));
    EXPECT_FALSE(solve_linear(q, {ints(q, {1, 0})}, ints(q, {0, 1})).has_value());
}

TEST(Ring, ArithmeticAndValidation)
{
    EXPECT_THROW(Ring::prime_field(4), std::invalid_argument);
    auto f7 = Ring::prime_field(7);
    EXPECT_EQ(f7.mul(f7.from_int(3), f7.inv(f7.from_int(3))), f7.one());
    auto q = Ring::rationals();
    EXPECT_EQ(q.add(q.from_fraction(1, 2), q.from_fraction(1, 3)), q.from_fraction(5, 6));
    EXPECT_THROW(Z.mul(Z.from_int(std::int64_t{1} << 40), Z.from_int(std::int64_t{1} << 40)), ArithmeticOverflow);
}
