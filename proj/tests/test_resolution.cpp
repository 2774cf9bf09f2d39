#include <gtest/gtest.h>

#include <random>

#include "loopcoh/resolution.hpp"

using namespace loopcoh::resolution;
using loopcoh::linalg::Ring;
using loopcoh::poly::Generator;
using loopcoh::poly::GeneratorSet;

namespace {

const Ring F2 = Ring::prime_field(2);

PolynomialAlgebra algebra(std::vector<Generator> gens) { return PolynomialAlgebra(F2, GeneratorSet(std::move(gens), F2)); }

loopcoh::poly::Steenrod steenrod(const PolynomialAlgebra& A, const std::map<std::string, std::string>& t)
{
    return loopcoh::poly::Steenrod(A, loopcoh::poly::parse_sq1_table(A, t));
}

Element el(std::initializer_list<Word> ws)
{
    Element x;
    for (const auto& w : ws) add_into(x, w);
    return x;
}

Word cat(Word a, const Word& b)
{
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

// Counts of R^0 words (ordered products of generators) by internal degree.
std::vector<long> r0_counts(const PolynomialAlgebra& A, int n_max)
{
    std::vector<long> c(n_max + 1, 0);
    c[0] = 1;
    for (int n = 1; n <= n_max; ++n)
        for (std::size_t i = 0; i < A.generators().size(); ++i)
            if (const int d = A.generators()[i].degree; d <= n) c[n] += c[n - d];
    return c;
}

}  // namespace

TEST(RHBasis, LowDegreeExamples)
{
    HirschResolution R(algebra({{"x", 2}}));
    const GenId x = R.v0(0);
    EXPECT_EQ(R.words_in({0, 4}), (std::vector<Word>{{x, x}}));
    const auto& g1 = R.generators_in({-1, 4});
    ASSERT_EQ(g1.size(), 1u);
    EXPECT_EQ(R.info(g1[0]).args, (std::vector<Word>{{x}, {x}}));
    EXPECT_TRUE(R.generators_in({-1, 2}).empty());
    const GenId xx = R.cup2({0, 0});
    const auto& g2 = R.generators_in({-2, 4});
    EXPECT_NE(std::find(g2.begin(), g2.end(), xx), g2.end());
}

TEST(RHBasis, ExplicitLowResolutionCounts)
{
    // V^{-1} = E11(R0 x R0); V^{-2} = diagonal and mixed cup-2 pairs,
    // E11 with one argument in R^{-1} (no lone operation in front), E12 and E21 on R0.
    for (auto gens : std::vector<std::vector<Generator>>{{{"x", 2}}, {{"x2", 2}, {"x4", 4}}, {{"u2", 2}, {"u3", 3}}}) {
        const PolynomialAlgebra A = algebra(gens);
        HirschResolution R(A);
        const int N = 12;
        auto c0 = r0_counts(A, N);
        std::vector<long> l1(N + 1, 0), w1(N + 1, 0);
        for (int n = 0; n <= N; ++n)
            for (int a = 2; n - a >= 2; ++a) l1[n] += c0[a] * c0[n - a];
        for (int n = 0; n <= N; ++n)
            for (int a = 0; a <= n; ++a)
                for (int b = 0; a + b <= n; ++b) w1[n] += c0[a] * l1[b] * c0[n - a - b];
        for (int n = 2; n <= N; ++n) {
            EXPECT_EQ(static_cast<long>(R.generators_in({-1, n}).size()), l1[n]) << n;
            long v2 = 0;
            for (std::size_t i = 0; i < gens.size(); ++i)
                for (std::size_t j = i; j < gens.size(); ++j)
                    if (gens[i].degree + gens[j].degree == n) ++v2;
            for (int a = 2; n - a >= 2; ++a) {
                v2 += (w1[a] - l1[a]) * c0[n - a];
                v2 += c0[a] * w1[n - a];
                for (int b = 2; n - a - b >= 2; ++b) v2 += 2 * c0[a] * c0[b] * c0[n - a - b];
            }
            EXPECT_EQ(static_cast<long>(R.generators_in({-2, n}).size()), v2) << n;
        }
    }
}

TEST(RHBasis, EnumerationBox)
{
    HirschResolution R(algebra({{"x2", 2}, {"x4", 4}}));
    auto basis = enumerate_rh_basis(R, -2, 8);
    for (const auto& [b, ws] : basis) {
        EXPECT_GE(b.res, -2);
        EXPECT_LE(b.internal, 8);
        for (const auto& w : ws) EXPECT_EQ(R.bidegree(w), b);
    }
    EXPECT_EQ(basis.at({0, 4}).size(), 2u);  // x2 x2, x4
}

TEST(NormalForm, AssociativityInstance)
{
    HirschResolution R(algebra({{"a", 2}, {"b", 2}, {"c", 2}}));
    const Word a{R.v0(0)}, b{R.v0(1)}, c{R.v0(2)};
    const GenId ab = R.egen_raw(1, 1, {a, b});
    const GenId bc = R.egen_raw(1, 1, {b, c});
    Element lhs = R.egen(1, 1, std::vector<Word>{{ab}, c});
    Element expect = el({{R.egen_raw(1, 1, {a, {bc}})},
                         {R.egen_raw(1, 2, {a, b, c})},
                         {R.egen_raw(1, 2, {a, c, b})},
                         {R.egen_raw(2, 1, {a, b, c})},
                         {R.egen_raw(2, 1, {b, a, c})}});
    EXPECT_EQ(lhs, expect) << R.to_string(lhs);
    EXPECT_EQ(R.cup1(a, b), el({{ab}}));
}

TEST(NormalForm, IdempotentOnRandomExpressions)
{
    HirschResolution R(algebra({{"a", 2}, {"b", 3}}));
    std::mt19937 rng(7);
    std::vector<Word> pool{{R.v0(0)}, {R.v0(1)}, {R.v0(0), R.v0(1)}, {R.cup2({0, 1})}};
    int checked = 0;
    while (checked < 100) {
        const int arity = 2 + static_cast<int>(rng() % 2);
        const int p = 1 + static_cast<int>(rng() % (arity - 1));
        std::vector<Word> args;
        int internal = 0;
        for (int i = 0; i < arity; ++i) {
            args.push_back(pool[rng() % pool.size()]);
            internal += R.bidegree(args.back()).internal;
        }
        if (internal > 16) continue;
        Element once = R.egen(p, arity - p, args);
        for (const auto& w : once)
            for (auto g : w) {
                ASSERT_TRUE(R.is_normal(g)) << R.to_string(g);
                if (R.is_egen(g)) {
                    const auto& x = R.info(g);
                    EXPECT_EQ(R.egen(x.p, x.q, x.args), el({{g}})) << R.to_string(g);
                }
            }
        for (const auto& w : once)
            if (R.bidegree(w).internal <= 10 && pool.size() < 40) pool.push_back(w);
        ++checked;
    }
}

TEST(Differential, Examples)
{
    HirschResolution R(algebra({{"a", 2}, {"b", 2}}));
    const GenId a = R.v0(0), b = R.v0(1);
    EXPECT_TRUE(R.d(a).empty());
    const Element ab = R.cup1({a}, {b}), ba = R.cup1({b}, {a}), aa = R.cup1({a}, {a});
    EXPECT_EQ(R.d(ab), el({{a, b}, {b, a}}));
    Element expect = ab;
    add_into(expect, ba);
    EXPECT_EQ(R.d(R.cup2({0, 1})), expect);
    EXPECT_EQ(R.d(R.cup2({0, 0})), aa);
    const GenId t = R.cup2({0, 0});
    Element three = R.cup1({a}, {t});
    add_into(three, R.cup1({t}, {a}));
    EXPECT_EQ(R.d(R.cup2({0, 0, 0})), three);
    EXPECT_EQ(R.d(Word{a, t}), el({cat({a}, *aa.begin())}));
}

TEST(Differential, SquareZeroAndRho)
{
    for (auto gens : std::vector<std::vector<Generator>>{{{"x2", 2}, {"x4", 4}}, {{"u2", 2}, {"u3", 3}}}) {
        HirschResolution R(algebra(gens));
        for (const auto& [b, ws] : enumerate_rh_basis(R, -3, 10))
            for (const auto& w : ws) {
                EXPECT_TRUE(R.d(R.d(w)).empty()) << R.to_string(w);
                if (b.res == -1) EXPECT_TRUE(R.rho(R.d(w)).empty()) << R.to_string(w);
            }
    }
}

TEST(Rho, Examples)
{
    const PolynomialAlgebra A = algebra({{"x", 2}, {"y", 4}});
    HirschResolution R(A);
    const GenId x = R.v0(0), y = R.v0(1);
    EXPECT_EQ(R.rho(Word{x, y}), A.multiply(A.generator(0), A.generator(1)));
    EXPECT_TRUE(R.rho(R.cup1({x}, {y})).empty());
    EXPECT_TRUE(R.rho(el({{x, y}, {y, x}})).empty());
}

TEST(Hexagon, AllTriples)
{
    HirschResolution R(algebra({{"a", 2}, {"b", 2}, {"c", 4}}));
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            for (std::size_t k = 0; k < 3; ++k) EXPECT_TRUE(check_hexagon(R, i, j, k)) << i << j << k;
}

TEST(Quotient, Examples)
{
    HirschResolution R(algebra({{"a", 2}, {"b", 2}}));
    NuQuotient Q(R, std::nullopt);
    const GenId aa = R.cup2({0, 0});
    EXPECT_EQ(Q.quotient(Word{aa}), el({{aa}}));
    EXPECT_TRUE(Q.quotient(Word{R.cup2({0, 1})}).empty());
    EXPECT_TRUE(Q.quotient(Word{R.cup2({0, 0, 0})}).empty());
    // d(a cup_2 b) identifies the two orders of a cup_1 b
    const Word ab = *R.cup1({R.v0(0)}, {R.v0(1)}).begin();
    const Word ba = *R.cup1({R.v0(1)}, {R.v0(0)}).begin();
    EXPECT_EQ(Q.quotient(ab), Q.quotient(ba));
    EXPECT_EQ(Q.quotient(ab).size(), 1u);
}

TEST(Quotient, DifferentialIdealAndPerturbation)
{
    const PolynomialAlgebra A = algebra({{"u2", 2}, {"u3", 3}});
    HirschResolution R(A);
    NuQuotient Q(R, steenrod(A, {{"u2", "u3"}, {"u3", "u2*u3"}}));
    for (const auto& [b, ws] : enumerate_rh_basis(R, -3, 10))
        for (const auto& w : ws) {
            const Element qw = Q.quotient(w);
            EXPECT_EQ(Q.d(Element{w}), Q.d(qw)) << R.to_string(w);
            if (Q.is_reduced(w)) {
                EXPECT_EQ(qw, el({w}));
                EXPECT_TRUE(Q.perturbed_d(Q.perturbed_d(Element{w})).empty()) << R.to_string(w);
            }
        }
}

TEST(Perturbation, Examples)
{
    const PolynomialAlgebra A = algebra({{"u2", 2}, {"u3", 3}});
    HirschResolution R(A);
    const GenId u2 = R.v0(0), u3 = R.v0(1), t = R.cup2({0, 0});
    {
        NuQuotient Q(R, steenrod(A, {}));
        EXPECT_EQ(Q.perturbed_d(el({{t}})), R.cup1({u2}, {u2}));
    }
    NuQuotient Q(R, steenrod(A, {{"u2", "u3"}}));
    Element expect = R.cup1({u2}, {u2});
    add_into(expect, Word{u3});
    EXPECT_EQ(Q.perturbed_d(el({{t}})), expect);
    EXPECT_EQ(Q.lift_sq1(0), el({{u3}}));
    // no cup-2 letter inside the arguments: h^2 vanishes on the operation
    EXPECT_TRUE(Q.h2(R.cup1({u2}, {u3})).empty());
    // through the arguments otherwise
    EXPECT_EQ(Q.h2(Q.quotient(R.cup1({u2}, {t}))), Q.quotient(R.cup1({u2}, {u3})));
}

TEST(FNu, ExamplesAndChainMapInLowResolutionDegrees)
{
    const PolynomialAlgebra A = algebra({{"u2", 2}, {"u3", 3}});
    const auto sq = steenrod(A, {{"u2", "u3"}, {"u3", "u2*u3"}});
    const auto table = loopcoh::hirsch::HirschOpTable::sq_structure(sq);
    HirschResolution R(A);
    NuQuotient Q(R, sq);
    const GenId u2 = R.v0(0), u3 = R.v0(1);
    EXPECT_EQ(f_nu(R, table, el({{u2, u3}})), R.rho(Word{u2, u3}));
    EXPECT_EQ(f_nu(R, table, R.cup1({u2}, {u3})), loopcoh::hirsch::sq11(sq, A.generator(0), A.generator(1)));
    EXPECT_EQ(f_nu(R, table, R.cup1({u3}, {u3})), A.multiply(A.generator(0), A.generator(1)));
    EXPECT_TRUE(f_nu(R, table, el({{R.cup2({0, 0})}})).empty());
    for (const auto& [b, ws] : enumerate_rh_basis(R, -2, 10))
        for (const auto& w : ws)
            if (Q.is_reduced(w)) EXPECT_TRUE(f_nu(R, table, Q.perturbed_d(Element{w})).empty()) << R.to_string(w);
}

TEST(Contraction, Examples)
{
    HirschResolution R(algebra({{"a", 2}, {"b", 2}}));
    Contraction S(R);
    const GenId a = R.v0(0), b = R.v0(1);
    EXPECT_EQ(S.s(Word{a, b}), R.cup1({a}, {b}));
    EXPECT_EQ(S.case_of(Word{a, b}), 1);
    const Word aa = *R.cup1({a}, {a}).begin();
    EXPECT_EQ(S.s(aa), el({{R.cup2({0, 0})}}));
    EXPECT_EQ(S.case_of(aa), 2);
    EXPECT_TRUE(S.s(Word{b, a}).empty());
    EXPECT_EQ(S.case_of(Word{b, a}), 0);
}

TEST(Contraction, BidegreeAndUniqueCase)
{
    HirschResolution R(algebra({{"u2", 2}, {"u3", 3}}));
    Contraction S(R);
    for (const auto& [b, ws] : enumerate_rh_basis(R, -3, 10))
        for (const auto& w : ws) {
            ASSERT_NO_THROW(S.case_of(w)) << R.to_string(w);
            for (const auto& v : S.s(w)) EXPECT_EQ(R.bidegree(v), (Bidegree{b.res - 1, b.internal})) << R.to_string(w);
        }
}

TEST(SIteration, Examples)
{
    HirschResolution R(algebra({{"a", 2}, {"b", 2}}));
    Contraction S(R);
    const GenId a = R.v0(0), b = R.v0(1);
    auto r = verify_siteration(R, S, el({{a, b}, {b, a}}), 8);
    EXPECT_TRUE(r.success);
    EXPECT_EQ(r.n, 1);
    r = verify_siteration(R, S, R.cup1({a}, {a}), 8);
    EXPECT_TRUE(r.success);
    EXPECT_EQ(r.n, 1);
    r = verify_siteration(R, S, Element{}, 8);
    EXPECT_TRUE(r.success);
    EXPECT_EQ(r.n, 1);
    // a cycle not in the image stays: a itself is not in ker rho
    r = verify_siteration(R, S, el({{a}}), 3);
    EXPECT_FALSE(r.success);
    EXPECT_EQ(r.residual, el({{a}}));
}

TEST(SIteration, NegativeDegreesVanish)
{
    HirschResolution R(algebra({{"x", 2}}));
    Contraction S(R);
    for (const auto& [b, ws] : enumerate_rh_basis(R, -2, 12)) {
        if (b.res == 0) continue;
        for (const auto& w : ws) {
            auto r = verify_siteration(R, S, Element{w}, 8);
            EXPECT_TRUE(r.success) << R.to_string(w) << " residual " << R.to_string(r.residual);
        }
    }
}
