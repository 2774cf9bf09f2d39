#include "loopcoh/nu_bar.hpp"

#include <stdexcept>

namespace loopcoh::bar {

using resolution::Element;
using resolution::GenId;

NuBarAlgebra::NuBarAlgebra(resolution::NuQuotient& Q, int res_min)
    : Q_(Q), res_min_(res_min), ring_(Ring::prime_field(2))
{
}

LetterId NuBarAlgebra::letter(const resolution::Word& w) const
{
    if (w.empty()) throw std::invalid_argument("the unit is not a bar letter");
    if (auto it = ids_.find(w); it != ids_.end()) return it->second;
    const auto id = static_cast<LetterId>(words_.size());
    words_.push_back(w);
    ids_.emplace(w, id);
    return id;
}

int NuBarAlgebra::degree(LetterId a) const { return Q_.resolution().total_degree(word(a)); }

int NuBarAlgebra::internal_degree(LetterId a) const { return Q_.resolution().bidegree(word(a)).internal; }

std::vector<LetterId> NuBarAlgebra::basis_in_degree(int n) const
{
    std::vector<LetterId> out;
    // total n = res + internal with internal <= n - 2 res
    for (int r = 0; r >= res_min_; --r)
        for (const auto& w : Q_.basis_in({r, n - r}))
            if (!w.empty()) out.push_back(letter(w));
    return out;
}

LetterCombo NuBarAlgebra::from_element(const Element& x) const
{
    LetterCombo c;
    for (const auto& w : x)
        if (!w.empty()) c.emplace_back(letter(w), ring_.one());
    return canonical(ring_, std::move(c));
}

LetterCombo NuBarAlgebra::multiply(LetterId a, LetterId b) const
{
    resolution::Word w = word(a);
    const auto& v = word(b);
    w.insert(w.end(), v.begin(), v.end());
    return from_element(Q_.quotient(w));
}

LetterCombo NuBarAlgebra::differential(LetterId a) const
{
    const Element x{word(a)};
    return from_element(Q_.has_perturbation() ? Q_.perturbed_d(x) : Q_.d(x));
}

std::string NuBarAlgebra::letter_name(LetterId a) const { return Q_.resolution().to_string(word(a)); }

BarElement corrected_cocycle_small(const NuBarAlgebra& A, const std::vector<std::size_t>& gens)
{
    const std::size_t n = gens.size();
    if (n == 0 || n > 3) throw std::invalid_argument("corrected_cocycle_small supports 1 <= n <= 3");
    auto& R = A.quotient().resolution();
    std::vector<resolution::Word> a;
    for (auto g : gens) a.push_back({R.v0(g)});
    std::vector<LetterId> letters;
    for (const auto& w : a) letters.push_back(A.letter(w));
    BarElement out = canonical_symmetric_cocycle(A, letters);
    const Ring& F2 = A.ring();

    auto add_word = [&](const std::vector<Element>& blocks) {
        // product over the choice of one word per block
        std::vector<std::pair<Word, Scalar>> acc{{Word{}, F2.one()}};
        for (const auto& blk : blocks) {
            const LetterCombo c = A.from_element(A.quotient().quotient(blk));
            std::vector<std::pair<Word, Scalar>> next;
            for (const auto& [w, s] : acc)
                for (const auto& [l, t] : c) {
                    Word v = w;
                    v.push_back(l);
                    next.emplace_back(std::move(v), F2.mul(s, t));
                }
            acc = std::move(next);
        }
        for (const auto& [w, s] : acc) add_term(F2, out, w, s);
    };
    auto cup = [&](std::size_t i, std::size_t j) { return R.cup1(a[i], a[j]); };

    if (n == 2) add_word({cup(0, 1)});
    if (n == 3) {
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = i + 1; j < 3; ++j) {
                const std::size_t k = 3 - i - j;
                add_word({cup(i, j), Element{a[k]}});
                add_word({Element{a[k]}, cup(i, j)});
            }
        Element top;
        for (const auto& w : cup(1, 2)) resolution::add_into(top, R.egen(1, 1, std::vector<resolution::Word>{a[0], w}));
        resolution::add_into(top, R.egen(1, 2, std::vector<resolution::Word>{a[0], a[1], a[2]}));
        resolution::add_into(top, R.egen(1, 2, std::vector<resolution::Word>{a[0], a[2], a[1]}));
        add_word({top});
    }
    return out;
}

LetterMap rho_letter_map(const NuBarAlgebra& src, const PolynomialBarAlgebra& dst)
{
    return [&src, &dst](LetterId a) { return dst.from_polynomial(src.quotient().resolution().rho(src.word(a))); };
}

LetterMap f_nu_letter_map(const NuBarAlgebra& src, const PolynomialBarAlgebra& dst, const hirsch::HirschOpTable& sq)
{
    return [&src, &dst, &sq](LetterId a) {
        return dst.from_polynomial(resolution::f_nu(src.quotient().resolution(), sq, Element{src.word(a)}));
    };
}

}  // namespace loopcoh::bar
