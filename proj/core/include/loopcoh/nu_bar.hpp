#pragma once

#include <map>
#include <vector>

#include "loopcoh/bar.hpp"
#include "loopcoh/resolution.hpp"

namespace loopcoh::bar {

/// R_nu H seen as a bar algebra. Letters are reduced words of the quotient,
/// graded by total degree; the differential is d + h^2 when the quotient
/// carries a Sq_1 table, d otherwise.
class NuBarAlgebra : public BarAlgebra {
public:
    /// Words enumerated by basis_in_degree are limited to res >= res_min.
    explicit NuBarAlgebra(resolution::NuQuotient& Q, int res_min = -3);

    const Ring& ring() const override { return ring_; }
    int degree(LetterId a) const override;
    int internal_degree(LetterId a) const override;
    std::vector<LetterId> basis_in_degree(int n) const override;
    LetterCombo multiply(LetterId a, LetterId b) const override;
    LetterCombo differential(LetterId a) const override;
    bool has_differential() const override { return true; }
    std::string letter_name(LetterId a) const override;

    /// Interns a reduced, nonempty word.
    LetterId letter(const resolution::Word& w) const;
    const resolution::Word& word(LetterId a) const { return words_.at(a); }
    LetterCombo from_element(const resolution::Element& x) const;
    resolution::NuQuotient& quotient() const { return Q_; }

private:
    resolution::NuQuotient& Q_;
    int res_min_;
    Ring ring_;
    mutable std::map<resolution::Word, LetterId> ids_;
    mutable std::vector<resolution::Word> words_;
};

/// The cocycle of B(R_nu H) lifting the symmetric cocycle on n <= 3 distinct
/// V0 generators: symmetrized words plus, for every unshuffle with a block of
/// size > 1, the word of right-nested cup_1 corrections. n > 3 throws.
BarElement corrected_cocycle_small(const NuBarAlgebra& A, const std::vector<std::size_t>& gens);

/// Letter maps R_nu H -> H for induced_bar_map.
LetterMap rho_letter_map(const NuBarAlgebra& src, const PolynomialBarAlgebra& dst);
LetterMap f_nu_letter_map(const NuBarAlgebra& src, const PolynomialBarAlgebra& dst, const hirsch::HirschOpTable& sq);

}  // namespace loopcoh::bar
