#include "loopcoh/bar.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace loopcoh::bar {

LetterCombo canonical(const Ring& ring, LetterCombo c)
{
    std::sort(c.begin(), c.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    LetterCombo out;
    for (auto& [id, s] : c) {
        if (!out.empty() && out.back().first == id)
            out.back().second = ring.add(out.back().second, s);
        else
            out.emplace_back(id, s);
        if (ring.is_zero(out.back().second)) out.pop_back();
    }
    return out;
}

PolynomialBarAlgebra::PolynomialBarAlgebra(poly::PolynomialAlgebra algebra) : algebra_(std::move(algebra)) {}

int PolynomialBarAlgebra::degree(LetterId a) const { return algebra_.degree(monomial(a)); }

LetterId PolynomialBarAlgebra::letter(const poly::Monomial& m) const
{
    if (m.is_one()) throw std::invalid_argument("bar letters must have positive degree");
    auto [it, inserted] = ids_.emplace(m, static_cast<LetterId>(monomials_.size()));
    if (inserted) monomials_.push_back(&it->first);
    return it->second;
}

std::vector<LetterId> PolynomialBarAlgebra::basis_in_degree(int n) const
{
    if (n < 2) return {};
    auto it = basis_cache_.find(n);
    if (it != basis_cache_.end()) return it->second;
    std::vector<LetterId> out;
    for (const auto& m : algebra_.basis_in_degree(n)) out.push_back(letter(m));
    basis_cache_[n] = out;
    return out;
}

LetterCombo PolynomialBarAlgebra::multiply(LetterId a, LetterId b) const
{
    return {{letter(algebra_.multiply(monomial(a), monomial(b))), ring().one()}};
}

std::string PolynomialBarAlgebra::letter_name(LetterId a) const { return algebra_.to_string(monomial(a)); }

LetterCombo PolynomialBarAlgebra::from_polynomial(const poly::Polynomial& p) const
{
    LetterCombo out;
    for (const auto& [m, c] : p) out.emplace_back(letter(m), c);
    return canonical(ring(), std::move(out));
}

poly::Polynomial PolynomialBarAlgebra::to_polynomial(const LetterCombo& c) const
{
    poly::Polynomial out;
    for (const auto& [id, s] : c) algebra_.add_term(out, monomial(id), s);
    return out;
}

int word_degree(const BarAlgebra& A, const Word& w)
{
    int d = 0;
    for (auto a : w) d += A.degree(a) - 1;
    return d;
}

int word_internal_degree(const BarAlgebra& A, const Word& w)
{
    int d = 0;
    for (auto a : w) d += A.internal_degree(a);
    return d;
}

std::string to_string(const BarAlgebra& A, const Word& w)
{
    std::string s = "[";
    for (std::size_t i = 0; i < w.size(); ++i) s += (i ? "|" : "") + A.letter_name(w[i]);
    return s + "]";
}

std::string to_string(const BarAlgebra& A, const BarElement& x)
{
    if (x.empty()) return "0";
    std::string s;
    for (const auto& [w, c] : x) {
        if (!s.empty()) s += " + ";
        if (!A.ring().is_one(c)) s += A.ring().to_string(c) + "*";
        s += to_string(A, w);
    }
    return s;
}

void add_term(const Ring& ring, BarElement& x, const Word& w, Scalar c)
{
    if (ring.is_zero(c)) return;
    auto [it, inserted] = x.emplace(w, c);
    if (!inserted) {
        it->second = ring.add(it->second, c);
        if (ring.is_zero(it->second)) x.erase(it);
    }
}

BarElement add(const Ring& ring, const BarElement& x, const BarElement& y)
{
    BarElement out = x;
    for (const auto& [w, c] : y) add_term(ring, out, w, c);
    return out;
}

BarElement scale(const Ring& ring, const BarElement& x, Scalar c)
{
    BarElement out;
    if (ring.is_zero(c)) return out;
    for (const auto& [w, s] : x) add_term(ring, out, w, ring.mul(s, c));
    return out;
}

BarElement single(const Ring& ring, Word w)
{
    BarElement out;
    out.emplace(std::move(w), ring.one());
    return out;
}

namespace {

void basis_rec(const BarAlgebra& A, int remaining, int w_left, Word& cur, std::vector<Word>& out,
               std::size_t target_weight)
{
    if (cur.size() == target_weight) {
        if (remaining == 0) out.push_back(cur);
        return;
    }
    if (w_left == 0) return;
    const int slots = static_cast<int>(target_weight - cur.size());
    for (int d = 2; d - 1 <= remaining - (slots - 1); ++d)
        for (auto a : A.basis_in_degree(d)) {
            cur.push_back(a);
            basis_rec(A, remaining - (d - 1), w_left - 1, cur, out, target_weight);
            cur.pop_back();
        }
}

// Letters of one block pair in the E-product: E_{p,q}(x-block; y-block) as a combo.
LetterCombo block_value(const PolynomialBarAlgebra& A, const hirsch::HirschOpTable& t, const Word& xb,
                        const Word& yb)
{
    if (xb.size() + yb.size() == 1) return {{xb.empty() ? yb[0] : xb[0], A.ring().one()}};
    std::vector<poly::Polynomial> args;
    for (auto a : xb) args.push_back(A.algebra().monomial(A.monomial(a)));
    for (auto b : yb) args.push_back(A.algebra().monomial(A.monomial(b)));
    return A.from_polynomial(t.eval(static_cast<int>(xb.size()), static_cast<int>(yb.size()), args));
}

}  // namespace

std::vector<Word> bar_basis(const BarAlgebra& A, int n, int w_max)
{
    std::vector<Word> out;
    if (n <= 0) return out;
    for (int w = 1; w <= std::min(n, w_max); ++w) {
        Word cur;
        basis_rec(A, n, w, cur, out, static_cast<std::size_t>(w));
    }
    return out;
}

BarElement bar_differential(const BarAlgebra& A, const Word& w)
{
    const Ring& R = A.ring();
    BarElement out;
    int eps = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        const int eps_prev = eps;
        eps += A.degree(w[i]) - 1;
        if (A.has_differential()) {
            Scalar sign = R.neg(R.sign(eps_prev));
            for (const auto& [a, c] : A.differential(w[i])) {
                Word v = w;
                v[i] = a;
                add_term(R, out, v, R.mul(sign, c));
            }
        }
        if (i + 1 < w.size()) {
            Scalar sign = R.sign(eps);
            for (const auto& [a, c] : A.multiply(w[i], w[i + 1])) {
                Word v(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(i));
                v.push_back(a);
                v.insert(v.end(), w.begin() + static_cast<std::ptrdiff_t>(i + 2), w.end());
                add_term(R, out, v, R.mul(sign, c));
            }
        }
    }
    return out;
}

BarElement bar_differential(const BarAlgebra& A, const BarElement& x)
{
    const Ring& R = A.ring();
    BarElement out;
    for (const auto& [w, c] : x)
        for (const auto& [v, s] : bar_differential(A, w)) add_term(R, out, v, R.mul(c, s));
    return out;
}

BarElement shuffle_product(const BarAlgebra& A, const Word& x, const Word& y)
{
    const Ring& R = A.ring();
    BarElement out;
    const std::size_t p = x.size(), q = y.size();
    std::vector<int> dx(p), dy(q);
    for (std::size_t i = 0; i < p; ++i) dx[i] = A.degree(x[i]) - 1;
    for (std::size_t j = 0; j < q; ++j) dy[j] = A.degree(y[j]) - 1;
    // suffix sums of desuspended x-degrees: placing y_j before x_i.. x_{p-1}
    std::vector<int> suffix(p + 1, 0);
    for (std::size_t i = p; i-- > 0;) suffix[i] = suffix[i + 1] + dx[i];

    Word cur;
    cur.reserve(p + q);
    std::function<void(std::size_t, std::size_t, int)> rec = [&](std::size_t i, std::size_t j, int sign_exp) {
        if (i == p && j == q) {
            add_term(R, out, cur, R.sign(sign_exp));
            return;
        }
        if (i < p) {
            cur.push_back(x[i]);
            rec(i + 1, j, sign_exp);
            cur.pop_back();
        }
        if (j < q) {
            cur.push_back(y[j]);
            rec(i, j + 1, (sign_exp + dy[j] * suffix[i]) & 1);
            cur.pop_back();
        }
    };
    rec(0, 0, 0);
    return out;
}

BarElement shuffle_product(const BarAlgebra& A, const BarElement& x, const BarElement& y)
{
    const Ring& R = A.ring();
    BarElement out;
    for (const auto& [u, a] : x)
        for (const auto& [v, b] : y) {
            Scalar c = R.mul(a, b);
            for (const auto& [w, s] : shuffle_product(A, u, v)) add_term(R, out, w, R.mul(c, s));
        }
    return out;
}

BarElement muE_product(const PolynomialBarAlgebra& A, const hirsch::HirschOpTable& t, const Word& x, const Word& y)
{
    if (t.is_trivial()) return shuffle_product(A, x, y);
    const Ring& R = A.ring();
    if (!R.is_char2()) throw std::invalid_argument("nontrivial Hirsch products are supported in characteristic 2 only");
    BarElement out;
    const std::size_t p = x.size(), q = y.size();
    // Partial words: each entry is a combo for one output letter.
    std::vector<LetterCombo> blocks;
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t j) {
        if (i == p && j == q) {
            // expand the tensor product of combos
            Word cur;
            std::function<void(std::size_t, Scalar)> expand = [&](std::size_t k, Scalar c) {
                if (k == blocks.size()) {
                    add_term(R, out, cur, c);
                    return;
                }
                for (const auto& [a, s] : blocks[k]) {
                    cur.push_back(a);
                    expand(k + 1, R.mul(c, s));
                    cur.pop_back();
                }
            };
            expand(0, R.one());
            return;
        }
        for (std::size_t a = 0; i + a <= p; ++a)
            for (std::size_t b = 0; j + b <= q; ++b) {
                if (a + b == 0) continue;
                if ((a >= 2 && b == 0) || (a == 0 && b >= 2)) continue;
                Word xb(x.begin() + static_cast<std::ptrdiff_t>(i), x.begin() + static_cast<std::ptrdiff_t>(i + a));
                Word yb(y.begin() + static_cast<std::ptrdiff_t>(j), y.begin() + static_cast<std::ptrdiff_t>(j + b));
                LetterCombo v = block_value(A, t, xb, yb);
                if (v.empty()) continue;
                blocks.push_back(std::move(v));
                rec(i + a, j + b);
                blocks.pop_back();
            }
    };
    rec(0, 0);
    return out;
}

BarElement muE_product(const PolynomialBarAlgebra& A, const hirsch::HirschOpTable& t, const BarElement& x,
                       const BarElement& y)
{
    const Ring& R = A.ring();
    BarElement out;
    for (const auto& [u, a] : x)
        for (const auto& [v, b] : y) {
            Scalar c = R.mul(a, b);
            for (const auto& [w, s] : muE_product(A, t, u, v)) add_term(R, out, w, R.mul(c, s));
        }
    return out;
}

BarElement canonical_symmetric_cocycle(const BarAlgebra& A, const std::vector<LetterId>& letters)
{
    const Ring& R = A.ring();
    if (!R.is_char2()) throw std::invalid_argument("symmetric cocycles are defined in characteristic 2");
    Word w = letters;
    std::sort(w.begin(), w.end());
    if (std::adjacent_find(w.begin(), w.end()) != w.end())
        throw std::invalid_argument("symmetric cocycle letters must be distinct");
    BarElement out;
    do {
        add_term(R, out, w, R.one());
    } while (std::next_permutation(w.begin(), w.end()));
    return out;
}

BarElement induced_bar_map(const BarAlgebra& source, const BarAlgebra& target, const LetterMap& f,
                           const BarElement& x, bool check_multiplicative)
{
    const Ring& R = target.ring();
    std::map<LetterId, LetterCombo> cache;
    auto image = [&](LetterId a) -> const LetterCombo& {
        auto it = cache.find(a);
        if (it == cache.end()) it = cache.emplace(a, canonical(R, f(a))).first;
        return it->second;
    };
    auto product = [&](const LetterCombo& u, const LetterCombo& v) {
        LetterCombo out;
        for (const auto& [a, s] : u)
            for (const auto& [b, t] : v)
                for (const auto& [c, r] : target.multiply(a, b)) out.emplace_back(c, R.mul(R.mul(s, t), r));
        return canonical(R, std::move(out));
    };
    BarElement out;
    for (const auto& [w, c] : x) {
        if (check_multiplicative)
            for (std::size_t i = 0; i + 1 < w.size(); ++i) {
                LetterCombo lhs;
                for (const auto& [m, s] : source.multiply(w[i], w[i + 1]))
                    for (const auto& [a, t] : image(m)) lhs.emplace_back(a, R.mul(s, t));
                lhs = canonical(R, std::move(lhs));
                if (lhs != product(image(w[i]), image(w[i + 1])))
                    throw NotMultiplicative("letter map is not multiplicative on " + source.letter_name(w[i]) + " * " +
                                            source.letter_name(w[i + 1]));
            }
        Word cur;
        std::function<void(std::size_t, Scalar)> expand = [&](std::size_t k, Scalar s) {
            if (k == w.size()) {
                add_term(R, out, cur, s);
                return;
            }
            for (const auto& [a, t] : image(w[k])) {
                cur.push_back(a);
                expand(k + 1, R.mul(s, t));
                cur.pop_back();
            }
        };
        expand(0, c);
    }
    return out;
}

}  // namespace loopcoh::bar
