#pragma once

#include <string>
#include <vector>

#include "loopcoh/bar.hpp"
#include "loopcoh/polynomial.hpp"

namespace testing_support {

using loopcoh::linalg::Ring;
using loopcoh::poly::Generator;
using loopcoh::poly::GeneratorSet;
using loopcoh::poly::PolynomialAlgebra;

inline PolynomialAlgebra make_algebra(const Ring& ring, std::vector<Generator> gens)
{
    return PolynomialAlgebra(ring, GeneratorSet(std::move(gens), ring));
}

struct NamedAlgebra {
    std::string name;
    PolynomialAlgebra algebra;
};

// The five coefficient/generator choices used throughout the property suites.
inline std::vector<NamedAlgebra> standard_algebras()
{
    const Ring Z = Ring::integers(), Q = Ring::rationals(), F2 = Ring::prime_field(2);
    return {
        {"Z[x2]", make_algebra(Z, {{"x2", 2}})},
        {"Z[x2,x4]", make_algebra(Z, {{"x2", 2}, {"x4", 4}})},
        {"Q[x2,x2']", make_algebra(Q, {{"x2", 2}, {"x2'", 2}})},
        {"F2[u2]", make_algebra(F2, {{"u2", 2}})},
        {"F2[u2,u3]", make_algebra(F2, {{"u2", 2}, {"u3", 3}})},
    };
}

// All bar words of degree 1..max_degree.
inline std::vector<loopcoh::bar::Word> words_upto(const loopcoh::bar::BarAlgebra& A, int max_degree)
{
    std::vector<loopcoh::bar::Word> out;
    for (int n = 1; n <= max_degree; ++n)
        for (auto& w : loopcoh::bar::bar_basis(A, n, n)) out.push_back(w);
    return out;
}

}  // namespace testing_support
