#include <gtest/gtest.h>

#include "loopcoh/nu_bar.hpp"

using namespace loopcoh::bar;
using loopcoh::linalg::Ring;
using loopcoh::poly::Generator;
using loopcoh::poly::GeneratorSet;
using loopcoh::poly::PolynomialAlgebra;
namespace res = loopcoh::resolution;

namespace {

const Ring F2 = Ring::prime_field(2);

PolynomialAlgebra algebra(std::vector<Generator> gens) { return PolynomialAlgebra(F2, GeneratorSet(std::move(gens), F2)); }

}  // namespace

TEST(NuBar, DifferentialSquaresToZero)
{
    const auto A = algebra({{"u2", 2}, {"u3", 3}});
    res::HirschResolution R(A);
    res::NuQuotient Q(R, loopcoh::poly::Steenrod(A, loopcoh::poly::parse_sq1_table(A, {{"u2", "u3"}})));
    NuBarAlgebra B(Q, -2);
    for (int n = 1; n <= 5; ++n)
        for (const auto& w : bar_basis(B, n, n)) {
            EXPECT_TRUE(bar_differential(B, bar_differential(B, w)).empty()) << to_string(B, w);
        }
}

TEST(NuBar, CorrectedCocycleExamples)
{
    const auto A = algebra({{"a", 2}, {"b", 2}, {"c", 4}});
    res::HirschResolution R(A);
    res::NuQuotient Q(R, std::nullopt);
    NuBarAlgebra B(Q);
    const auto la = B.letter({R.v0(0)}), lb = B.letter({R.v0(1)});
    EXPECT_EQ(corrected_cocycle_small(B, {0}), single(F2, {la}));
    BarElement two = corrected_cocycle_small(B, {0, 1});
    BarElement expect;
    add_term(F2, expect, {la, lb}, F2.one());
    add_term(F2, expect, {lb, la}, F2.one());
    add_term(F2, expect, {B.letter(*R.cup1({R.v0(0)}, {R.v0(1)}).begin())}, F2.one());
    EXPECT_EQ(two, expect) << to_string(B, two);
    EXPECT_THROW(corrected_cocycle_small(B, {0, 1, 2, 0}), std::invalid_argument);
}

TEST(NuBar, CorrectedCocyclesAreCocyclesAndLiftTheSymmetricOnes)
{
    for (auto gens : std::vector<std::vector<Generator>>{{{"a", 2}, {"b", 2}, {"c", 4}}, {{"u2", 2}, {"u3", 3}, {"u5", 5}}}) {
        const auto A = algebra(gens);
        const loopcoh::poly::Steenrod sq(A, loopcoh::poly::parse_sq1_table(A, {}));
        const auto table = loopcoh::hirsch::HirschOpTable::sq_structure(sq);
        res::HirschResolution R(A);
        res::NuQuotient Q(R, sq);
        NuBarAlgebra B(Q);
        PolynomialBarAlgebra H(A);
        std::vector<std::vector<std::size_t>> subsets{{0}, {1}, {0, 1}, {1, 2}, {0, 2}, {0, 1, 2}, {2, 0, 1}};
        for (const auto& s : subsets) {
            const BarElement a = corrected_cocycle_small(B, s);
            EXPECT_TRUE(bar_differential(B, a).empty()) << to_string(B, a) << " d = " << to_string(B, bar_differential(B, a));
            std::vector<LetterId> hs;
            for (auto g : s) hs.push_back(H.letter(A.generator_monomial(g)));
            const BarElement b = canonical_symmetric_cocycle(H, hs);
            EXPECT_EQ(induced_bar_map(B, H, rho_letter_map(B, H), a, false), b);
            EXPECT_EQ(induced_bar_map(B, H, f_nu_letter_map(B, H, table), a, false), b);
        }
    }
}
