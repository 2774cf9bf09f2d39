#include <gtest/gtest.h>

#include <random>

#include "loopcoh/homology.hpp"
#include "loopcoh/koszul.hpp"
#include "support.hpp"

using namespace loopcoh;
using namespace loopcoh::homology;
using linalg::Ring;
using testing_support::make_algebra;

namespace {

const Ring F2 = Ring::prime_field(2);

std::vector<int> degrees_of(const poly::PolynomialAlgebra& A)
{
    std::vector<int> out;
    for (std::size_t i = 0; i < A.generators().size(); ++i) out.push_back(A.generators()[i].degree);
    return out;
}

struct Fixture {
    bar::PolynomialBarAlgebra B;
    BarComplex C;
    Fixture(poly::PolynomialAlgebra A, int n) : B(std::move(A)), C(B, {n, n + 1}) {}
};

Verdict verdict_for(Fixture& r, const HomologyReport& rep, int n)
{
    return exterior_verdict(rep, r.B, koszul::oracle_dimensions(degrees_of(r.B.algebra()), n));
}

}  // namespace

TEST(Ranks, Examples)
{
    {
        Fixture r(make_algebra(Ring::integers(), {{"x2", 2}}), 10);
        auto rep = homology_ranks(r.C);
        EXPECT_EQ(rep.ranks, (std::vector<long>{1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0}));
        EXPECT_TRUE(rep.torsion.empty());
        EXPECT_TRUE(rep.conclusive);
    }
    {
        Fixture r(make_algebra(Ring::integers(), {{"x2", 2}, {"x4", 4}}), 8);
        EXPECT_EQ(homology_ranks(r.C).ranks, (std::vector<long>{1, 1, 0, 1, 1, 0, 0, 0, 0}));
    }
    {
        Fixture r(make_algebra(F2, {{"u2", 2}, {"u3", 3}}), 6);
        EXPECT_EQ(homology_ranks(r.C).ranks, (std::vector<long>{1, 1, 1, 1, 0, 0, 0}));
    }
}

TEST(Ranks, WeightCapMustExceedDegree)
{
    bar::PolynomialBarAlgebra B(make_algebra(Ring::integers(), {{"x2", 2}}));
    BarComplex C(B, {6, 6});
    auto rep = homology_ranks(C);
    EXPECT_FALSE(rep.conclusive);
    EXPECT_FALSE(rep.reason.empty());
}

TEST(Ranks, MatchOracleWithoutTorsion)
{
    for (const auto& [name, A] : testing_support::standard_algebras()) {
        Fixture r(A, 8);
        auto rep = homology_ranks(r.C);
        EXPECT_EQ(rep.ranks, koszul::oracle_dimensions(degrees_of(A), 8)) << name;
        EXPECT_TRUE(rep.torsion.empty()) << name;
    }
}

TEST(ChainSlices, ComposeToZero)
{
    Fixture r(make_algebra(Ring::integers(), {{"x2", 2}, {"x4", 4}}), 7);
    for (int n = 1; n <= 7; ++n)
        for (int m : r.C.internal_degrees(n)) {
            auto s = r.C.slice(n, m);
            EXPECT_EQ(s.basis.size(), s.d_out.n_cols());
            EXPECT_TRUE(linalg::is_zero_matrix(linalg::multiply(s.d_out, s.d_in))) << n << "," << m;
        }
}

TEST(Ring, ShuffleSquaresVanishOverZ)
{
    Fixture r(make_algebra(Ring::integers(), {{"x2", 2}}), 6);
    auto rep = homology_ring(r.C, r.B, ProductKind::shuffle);
    auto y = rep.class_of_subset({0});
    ASSERT_TRUE(y);
    const RingEntry* e = rep.entry(*y, *y);
    ASSERT_NE(e, nullptr);
    EXPECT_TRUE(e->valid);
    EXPECT_TRUE(e->value.empty());
    EXPECT_EQ(verdict_for(r, rep, 6).kind, Verdict::Kind::exterior);
}

TEST(Ring, SqWitness)
{
    auto A = make_algebra(F2, {{"u2", 2}, {"u3", 3}});
    poly::Steenrod sq(A, poly::parse_sq1_table(A, {{"u2", "u3"}}));
    auto table = hirsch::HirschOpTable::sq_structure(sq);
    Fixture r(A, 6);
    auto rep = homology_ring(r.C, r.B, ProductKind::muE, &table);
    auto y2 = rep.class_of_subset({0}), y3 = rep.class_of_subset({1});
    ASSERT_TRUE(y2 && y3);
    const RingEntry* e = rep.entry(*y2, *y2);
    ASSERT_NE(e, nullptr);
    EXPECT_TRUE(e->valid);
    EXPECT_EQ(e->value, (std::vector<std::pair<std::size_t, Scalar>>{{*y3, F2.one()}}));
    auto v = verdict_for(r, rep, 6);
    EXPECT_EQ(v.kind, Verdict::Kind::not_exterior);
    EXPECT_NE(v.witness.find("y[u2] * y[u2]"), std::string::npos) << v.witness;
}

TEST(Ring, ZeroSqReducesToShuffle)
{
    auto A = make_algebra(F2, {{"u2", 2}, {"u3", 3}});
    poly::Steenrod sq(A, poly::parse_sq1_table(A, {}));
    auto table = hirsch::HirschOpTable::sq_structure(sq);
    Fixture r(A, 8);
    auto rep = homology_ring(r.C, r.B, ProductKind::muE, &table);
    for (const auto& e : rep.table) {
        EXPECT_TRUE(e.valid) << e.witness;
        if (e.left == e.right && rep.classes[e.left].degree <= 2) EXPECT_TRUE(e.value.empty());
    }
    EXPECT_EQ(verdict_for(r, rep, 8).kind, Verdict::Kind::exterior);
}

TEST(Verdict, EvenlyGeneratedIsExterior)
{
    for (auto A : {make_algebra(F2, {{"u2", 2}}), make_algebra(Ring::integers(), {{"x2", 2}, {"x4", 4}}),
                   make_algebra(Ring::rationals(), {{"x2", 2}, {"x2'", 2}})}) {
        Fixture r(A, 8);
        auto rep = homology_ring(r.C, r.B, ProductKind::shuffle);
        EXPECT_EQ(rep.flagged(), 0u);
        EXPECT_EQ(verdict_for(r, rep, 8).kind, Verdict::Kind::exterior);
    }
}

TEST(Verdict, InvariantUnderGeneratorOrder)
{
    auto verdict_of = [](std::vector<poly::Generator> g, const std::map<std::string, std::string>& t) {
        auto A = make_algebra(F2, g);
        poly::Steenrod sq(A, poly::parse_sq1_table(A, t));
        auto table = hirsch::HirschOpTable::sq_structure(sq);
        Fixture r(A, 6);
        auto rep = homology_ring(r.C, r.B, ProductKind::muE, &table);
        return verdict_for(r, rep, 6).kind;
    };
    for (const auto& t : std::vector<std::map<std::string, std::string>>{{}, {{"u2", "u3"}}}) {
        EXPECT_EQ(verdict_of({{"u2", 2}, {"u3", 3}}, t), verdict_of({{"u3", 3}, {"u2", 2}}, t));
    }
}

TEST(Ring, ProductsIndependentOfRepresentatives)
{
    std::mt19937 rng(11);
    for (const auto& [name, A] : testing_support::standard_algebras()) {
        Fixture r(A, 7);
        auto rep = homology_ring(r.C, r.B, ProductKind::shuffle);
        const Ring& ring = r.B.ring();
        for (const auto& e : rep.table) {
            const ClassInfo& a = rep.classes[e.left];
            const ClassInfo& b = rep.classes[e.right];
            if (a.degree < 2) continue;
            const auto& prev = r.C.basis(a.degree - 1, a.internal);
            if (prev.empty()) continue;
            const auto& y = prev[rng() % prev.size()];
            BarElement shifted = bar::add(ring, a.representative, bar::bar_differential(r.B, y));
            BarElement diff = bar::add(ring, bar::shuffle_product(r.B, shifted, b.representative),
                                       bar::scale(ring, bar::shuffle_product(r.B, a.representative, b.representative),
                                                  ring.neg(ring.one())));
            if (diff.empty()) continue;
            auto red = linalg::reduce_modulo_image(r.C.to_vector(e.degree, e.internal, diff), r.C.d(e.degree - 1, e.internal));
            EXPECT_TRUE(red.in_image) << name << " " << a.label << " * " << b.label;
        }
    }
}
