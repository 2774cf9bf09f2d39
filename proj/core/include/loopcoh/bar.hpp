#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "loopcoh/hirsch_ops.hpp"
#include "loopcoh/polynomial.hpp"

namespace loopcoh::bar {

using linalg::Ring;
using linalg::Scalar;

/// Basis elements of the underlying algebra are referred to by dense ids.
using LetterId = std::uint32_t;
/// Linear combination of basis letters, sorted by id, no zero coefficients.
using LetterCombo = std::vector<std::pair<LetterId, Scalar>>;

LetterCombo canonical(const Ring& ring, LetterCombo c);

/// A connected, 1-reduced graded algebra with a chosen homogeneous basis,
/// seen through the operations the bar construction needs.
class BarAlgebra {
public:
    virtual ~BarAlgebra() = default;

    virtual const Ring& ring() const = 0;
    /// Total degree of a basis letter (always >= 2).
    virtual int degree(LetterId a) const = 0;
    /// An additive grading preserved by the product and the differential;
    /// homology splits into blocks along it.
    virtual int internal_degree(LetterId a) const { return degree(a); }
    /// Basis letters of total degree n >= 2, deterministic order.
    virtual std::vector<LetterId> basis_in_degree(int n) const = 0;
    virtual LetterCombo multiply(LetterId a, LetterId b) const = 0;
    virtual LetterCombo differential(LetterId) const { return {}; }
    virtual bool has_differential() const { return false; }
    virtual std::string letter_name(LetterId a) const = 0;
};

/// The polynomial algebra S(U) with its monomial basis.
class PolynomialBarAlgebra : public BarAlgebra {
public:
    explicit PolynomialBarAlgebra(poly::PolynomialAlgebra algebra);

    const poly::PolynomialAlgebra& algebra() const { return algebra_; }
    const Ring& ring() const override { return algebra_.ring(); }
    int degree(LetterId a) const override;
    std::vector<LetterId> basis_in_degree(int n) const override;
    LetterCombo multiply(LetterId a, LetterId b) const override;
    std::string letter_name(LetterId a) const override;

    /// Interns a monomial of positive degree.
    LetterId letter(const poly::Monomial& m) const;
    const poly::Monomial& monomial(LetterId a) const { return *monomials_.at(a); }
    LetterCombo from_polynomial(const poly::Polynomial& p) const;
    poly::Polynomial to_polynomial(const LetterCombo& c) const;

private:
    poly::PolynomialAlgebra algebra_;
    mutable std::map<poly::Monomial, LetterId> ids_;
    mutable std::vector<const poly::Monomial*> monomials_;
    mutable std::map<int, std::vector<LetterId>> basis_cache_;
};

using Word = std::vector<LetterId>;
/// Element of the bar construction: words with nonzero coefficients.
using BarElement = std::map<Word, Scalar>;

int word_degree(const BarAlgebra& A, const Word& w);
int word_internal_degree(const BarAlgebra& A, const Word& w);
std::string to_string(const BarAlgebra& A, const Word& w);
std::string to_string(const BarAlgebra& A, const BarElement& x);

void add_term(const Ring& ring, BarElement& x, const Word& w, Scalar c);
BarElement add(const Ring& ring, const BarElement& x, const BarElement& y);
BarElement scale(const Ring& ring, const BarElement& x, Scalar c);
BarElement single(const Ring& ring, Word w);

/// All words of bar degree n (sum of |a_i| - 1) with at most w_max letters,
/// ordered by weight, then lexicographically along basis order.
std::vector<Word> bar_basis(const BarAlgebra& A, int n, int w_max);

/// Bar differential. With eps_i = sum_{j<=i} (|a_j| - 1):
///   d[a_1|...|a_p] = sum_i -(-1)^{eps_{i-1}} [..|d a_i|..] + sum_i (-1)^{eps_i} [..|a_i a_{i+1}|..].
BarElement bar_differential(const BarAlgebra& A, const Word& w);
BarElement bar_differential(const BarAlgebra& A, const BarElement& x);

/// Shuffle product with Koszul signs on desuspended degrees.
BarElement shuffle_product(const BarAlgebra& A, const Word& x, const Word& y);
BarElement shuffle_product(const BarAlgebra& A, const BarElement& x, const BarElement& y);

/// The product induced by the operations E_{p,q} on H: sum over splittings of
/// x and y into the same number of consecutive blocks (no block empty on both
/// sides) of [E(block_1)|...|E(block_r)]. A trivial table gives the shuffle
/// product over any ring; otherwise characteristic 2 is required.
BarElement muE_product(const PolynomialBarAlgebra& A, const hirsch::HirschOpTable& t, const Word& x, const Word& y);
BarElement muE_product(const PolynomialBarAlgebra& A, const hirsch::HirschOpTable& t, const BarElement& x,
                       const BarElement& y);

/// Sum over all permutations of the letters; char 2, distinct letters.
BarElement canonical_symmetric_cocycle(const BarAlgebra& A, const std::vector<LetterId>& letters);

/// Error from induced_bar_map when the letter map fails to be multiplicative.
class NotMultiplicative : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using LetterMap = std::function<LetterCombo(LetterId)>;

/// Applies f letterwise, dropping words with a zero letter. Checks
/// f(a b) = f(a) f(b) on each adjacent letter pair encountered.
BarElement induced_bar_map(const BarAlgebra& source, const BarAlgebra& target, const LetterMap& f,
                           const BarElement& x, bool check_multiplicative = true);

}  // namespace loopcoh::bar
