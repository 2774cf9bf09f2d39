#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "loopcoh/ring.hpp"

namespace loopcoh::poly {

using linalg::Ring;
using linalg::Scalar;

struct Generator {
    std::string name;
    int degree = 0;
};

/// Ordered polynomial generators. Declaration order is the generator order.
class GeneratorSet {
public:
    /// Validates: unique names, degrees >= 2, even degrees unless ring is F_2.
    GeneratorSet(std::vector<Generator> generators, const Ring& ring);

    std::size_t size() const { return gens_.size(); }
    const Generator& operator[](std::size_t i) const { return gens_.at(i); }
    const std::vector<Generator>& generators() const { return gens_; }
    std::optional<std::size_t> index_of(const std::string& name) const;

    friend bool operator==(const GeneratorSet& a, const GeneratorSet& b)
    {
        return a.gens_.size() == b.gens_.size() &&
               std::equal(a.gens_.begin(), a.gens_.end(), b.gens_.begin(),
                          [](const Generator& x, const Generator& y) { return x.name == y.name && x.degree == y.degree; });
    }

private:
    std::vector<Generator> gens_;
};

/// Exponent vector indexed by generator position.
struct Monomial {
    std::vector<int> exponents;

    bool is_one() const;
    int exponent_sum() const;
    friend bool operator==(const Monomial&, const Monomial&) = default;
    friend auto operator<=>(const Monomial&, const Monomial&) = default;
};

/// Linear combination of monomials with nonzero coefficients.
using Polynomial = std::map<Monomial, Scalar>;

/// Images of the generators under Sq_1 (lower-index convention: Sq_1(g) = g cup_1 g,
/// of degree 2|g| - 1). Generators without an entry map to zero.
using Sq1Table = std::map<std::size_t, Polynomial>;

/// The graded polynomial algebra S(U) over an exact ring.
class PolynomialAlgebra {
public:
    PolynomialAlgebra(Ring ring, GeneratorSet gens);

    const Ring& ring() const { return ring_; }
    const GeneratorSet& generators() const { return gens_; }
    std::size_t n_generators() const { return gens_.size(); }

    Monomial one_monomial() const;
    Monomial generator_monomial(std::size_t g) const;
    int degree(const Monomial& m) const;
    /// Degree of a homogeneous polynomial; nullopt for zero; throws if inhomogeneous.
    std::optional<int> degree(const Polynomial& p) const;
    bool is_homogeneous(const Polynomial& p) const;

    Polynomial monomial(const Monomial& m, Scalar c) const;
    Polynomial monomial(const Monomial& m) const { return monomial(m, ring_.one()); }
    Polynomial generator(std::size_t g) const { return monomial(generator_monomial(g)); }
    Polynomial one() const { return monomial(one_monomial()); }

    Monomial multiply(const Monomial& a, const Monomial& b) const;
    Polynomial multiply(const Polynomial& p, const Polynomial& q) const;
    Polynomial add(const Polynomial& p, const Polynomial& q) const;
    Polynomial scale(const Polynomial& p, Scalar c) const;
    /// Accumulates c * m into p.
    void add_term(Polynomial& p, const Monomial& m, Scalar c) const;
    Polynomial power(const Polynomial& p, int e) const;

    /// All monomials of degree n, descending lexicographic in exponent vectors
    /// (x^2, xy, y^2 for generators x, y of degree 2).
    std::vector<Monomial> basis_in_degree(int n) const;

    /// True iff every monomial has exponent sum >= 2 (zero counts as decomposable).
    /// Throws std::invalid_argument on inhomogeneous input.
    bool is_decomposable(const Polynomial& p) const;

    /// Generator indices occurring in m, with multiplicity, ascending.
    std::vector<std::size_t> factors(const Monomial& m) const;

    std::string to_string(const Monomial& m) const;
    std::string to_string(const Polynomial& p) const;

    /// Parses `+`-separated products of generator names with `^` powers
    /// ("u2^2*u3 + u5", "0"). Products may use `*` or whitespace; an integer
    /// factor is allowed.
    Polynomial parse(const std::string& text) const;

private:
    void basis_rec(std::size_t g, int remaining, Monomial& cur, std::vector<Monomial>& out) const;

    Ring ring_;
    GeneratorSet gens_;
};

/// Sq_1 data attached to an algebra over F_2.
class Steenrod {
public:
    /// Validates that the ring is F_2 and that each image is homogeneous of degree 2|g| - 1.
    Steenrod(const PolynomialAlgebra& algebra, Sq1Table table);

    const PolynomialAlgebra& algebra() const { return algebra_; }
    const Sq1Table& table() const { return table_; }
    Polynomial on_generator(std::size_t g) const;

    /// Cartan extension: Sq_1(ab) = Sq_1(a) b^2 + a^2 Sq_1(b), extended linearly.
    Polynomial apply(const Polynomial& p) const;

    /// Generators g with Sq_1 Sq_1 g != 0; reported as warnings, not enforced.
    std::vector<std::string> warnings() const;

    /// True iff Sq_1(g) is decomposable for every generator g.
    bool decomposable_on_generators() const;

private:
    PolynomialAlgebra algebra_;
    Sq1Table table_;
};

/// Builds a table from generator-name -> expression pairs.
Sq1Table parse_sq1_table(const PolynomialAlgebra& algebra, const std::map<std::string, std::string>& entries);

}  // namespace loopcoh::poly
