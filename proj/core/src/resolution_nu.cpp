#include "loopcoh/resolution.hpp"

#include <algorithm>
#include <functional>

namespace loopcoh::resolution {

namespace {

bool is_diagonal_cup2(const GenInfo& x) { return x.kind == GenKind::cup2 && x.cluster.size() == 2 && x.cluster[0] == x.cluster[1]; }

void for_each_choice(const std::vector<Element>& slots, const std::function<void(const std::vector<Word>&)>& fn)
{
    for (const auto& s : slots)
        if (s.empty()) return;
    std::vector<Word> cur;
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == slots.size()) {
            fn(cur);
            return;
        }
        for (const auto& w : slots[i]) {
            cur.push_back(w);
            rec(i + 1);
            cur.pop_back();
        }
    };
    rec(0);
}

bool is_T_prime(const GenInfo& x) { return x.kind == GenKind::cup2 && !is_diagonal_cup2(x); }

std::size_t pivot_of(const std::set<std::size_t>& row) { return *row.rbegin(); }

}  // namespace

NuQuotient::NuQuotient(HirschResolution& R, std::optional<poly::Steenrod> sq) : R_(R), sq_(std::move(sq)) {}

void NuQuotient::reduce(const LetterSpace& sp, std::set<std::size_t>& x) const
{
    auto it = x.end();
    while (it != x.begin()) {
        --it;
        auto row = sp.rows.find(*it);
        if (row == sp.rows.end()) continue;
        const std::size_t at = *it;
        for (auto j : row->second)
            if (!x.erase(j)) x.insert(j);
        it = x.lower_bound(at);
    }
}

const NuQuotient::LetterSpace& NuQuotient::space(Bidegree b)
{
    if (auto it = spaces_.find(b); it != spaces_.end()) return it->second;
    LetterSpace sp;
    const auto& gens = R_.generators_in(b);
    // letters carrying a non-reduced letter in an argument are eliminated first
    std::vector<std::pair<bool, GenId>> keyed;
    for (auto g : gens) {
        bool dirty = false;
        if (R_.is_egen(g))
            for (const auto& w : R_.info(g).args)
                for (auto h : w)
                    if (!R_.is_v0(h) && !letter_reduced(h)) dirty = true;
        keyed.emplace_back(dirty, g);
    }
    std::stable_sort(keyed.begin(), keyed.end(), [](const auto& l, const auto& r) { return l.first < r.first; });
    for (const auto& [dirty, g] : keyed) {
        sp.index.emplace(g, sp.letters.size());
        sp.letters.push_back(g);
    }

    auto add_relation = [&](const Element& rel) {
        std::set<std::size_t> row;
        for (const auto& w : rel) {
            if (w.size() != 1) throw std::logic_error("quotient relation is not letter-level: " + R_.to_string(rel));
            auto it = sp.index.find(w[0]);
            if (it == sp.index.end()) throw std::logic_error("quotient relation leaves the normal-form basis: " + R_.to_string(rel));
            row.insert(it->second);
        }
        reduce(sp, row);
        if (!row.empty()) sp.rows.emplace(pivot_of(row), std::move(row));
    };

    for (auto g : gens)
        if (is_T_prime(R_.info(g))) add_relation(Element{Word{g}});
    for (auto t : R_.generators_in({b.res - 1, b.internal}))
        if (is_T_prime(R_.info(t))) add_relation(R_.d(t));

    // operations with one argument slot inside the ideal
    if (b.res < 0) {
        for (int arity = 2; arity - 1 <= -b.res && 2 * arity <= b.internal; ++arity) {
            const int res_sum = b.res + arity - 1;
            std::vector<Word> cur;
            std::function<void(int, int, int)> rec = [&](int slot, int res_left, int int_left) {
                if (slot == arity) {
                    if (res_left != 0 || int_left != 0) return;
                    for (std::size_t i = 0; i < cur.size(); ++i)
                        for (std::size_t j = 0; j < cur[i].size(); ++j) {
                            const GenId x = cur[i][j];
                            if (R_.is_v0(x)) continue;
                            const Bidegree bx = R_.bidegree(Word{x});
                            if (R_.generators_in(bx).front() != x) continue;
                            const LetterSpace& sx = space(bx);
                            for (const auto& [piv, row] : sx.rows) {
                                std::vector<Element> slots;
                                for (const auto& w : cur) slots.push_back(Element{w});
                                Element sub;
                                for (auto k : row) {
                                    Word w = cur[i];
                                    w[j] = sx.letters[k];
                                    add_into(sub, w);
                                }
                                slots[i] = sub;
                                for (int p = 1; p < arity; ++p) add_relation(R_.egen(p, arity - p, slots));
                            }
                        }
                    return;
                }
                const int slots_left = arity - slot - 1;
                for (int n = 2; n <= int_left - 2 * slots_left; ++n)
                    for (int r = 0; r >= res_left; --r) {
                        if (slots_left == 0 && (n != int_left || r != res_left)) continue;
                        for (const auto& w : R_.words_in({r, n})) {
                            cur.push_back(w);
                            rec(slot + 1, res_left - r, int_left - n);
                            cur.pop_back();
                        }
                    }
            };
            rec(0, res_sum, b.internal);
        }
    }
    return spaces_.emplace(b, std::move(sp)).first->second;
}

bool NuQuotient::letter_reduced(GenId g)
{
    if (R_.is_v0(g)) return true;
    const LetterSpace& sp = space(R_.bidegree(Word{g}));
    auto it = sp.index.find(g);
    return it != sp.index.end() && !sp.rows.count(it->second);
}

Element NuQuotient::quotient_letter(GenId g)
{
    if (R_.is_v0(g)) return Element{Word{g}};
    if (auto it = q_cache_.find(g); it != q_cache_.end()) return it->second;
    const LetterSpace& sp = space(R_.bidegree(Word{g}));
    auto it = sp.index.find(g);
    if (it == sp.index.end()) throw std::invalid_argument("quotient expects normal-form letters: " + R_.to_string(g));
    std::set<std::size_t> x{it->second};
    reduce(sp, x);
    Element out;
    for (auto k : x) out.insert(Word{sp.letters[k]});
    return q_cache_.emplace(g, std::move(out)).first->second;
}

Element NuQuotient::quotient(const Word& w)
{
    Element out;
    out.insert(Word{});
    for (auto g : w) {
        out = product(out, quotient_letter(g));
        if (out.empty()) break;
    }
    return out;
}

Element NuQuotient::quotient(const Element& x)
{
    Element out;
    for (const auto& w : x) add_into(out, quotient(w));
    return out;
}

bool NuQuotient::is_reduced(const Word& w)
{
    for (auto g : w)
        if (!letter_reduced(g)) return false;
    return true;
}

Element NuQuotient::d(const Element& x) { return quotient(R_.d(x)); }

Element NuQuotient::lift_sq1(std::size_t a) const
{
    if (!sq_) throw std::invalid_argument("the perturbation needs a Sq_1 table");
    const auto& alg = R_.algebra();
    Element out;
    for (const auto& [m, c] : sq_->on_generator(a)) {
        Word w;
        for (auto g : alg.factors(m)) w.push_back(static_cast<GenId>(g));
        add_into(out, w);
    }
    return out;
}

Element NuQuotient::h2_letter(GenId g)
{
    if (auto it = h2_cache_.find(g); it != h2_cache_.end()) return it->second;
    const GenInfo x = R_.info(g);
    Element out;
    if (is_diagonal_cup2(x)) {
        // V0 letters are interned first, so generator index == letter id
        out = lift_sq1(x.cluster[0]);
    } else if (x.kind == GenKind::egen) {
        for (std::size_t i = 0; i < x.args.size(); ++i) {
            Element h = h2_word(x.args[i]);
            for (const auto& w : h) {
                auto mod = x.args;
                mod[i] = w;
                add_into(out, R_.egen(x.p, x.q, mod));
            }
        }
        out = quotient(out);
    }
    return h2_cache_.emplace(g, std::move(out)).first->second;
}

Element NuQuotient::h2_word(const Word& w)
{
    Element out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        const Element h = h2_letter(w[i]);
        for (const auto& v : h) {
            Word x(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(i));
            x.insert(x.end(), v.begin(), v.end());
            x.insert(x.end(), w.begin() + static_cast<std::ptrdiff_t>(i + 1), w.end());
            add_into(out, x);
        }
    }
    return out;
}

Element NuQuotient::h2(const Element& x)
{
    Element out;
    for (const auto& w : x) add_into(out, h2_word(w));
    return quotient(out);
}

Element NuQuotient::perturbed_d(const Element& x)
{
    Element out = d(x);
    add_into(out, h2(x));
    return out;
}

std::vector<Word> NuQuotient::basis_in(Bidegree b)
{
    std::vector<Word> out;
    for (const auto& w : R_.words_in(b))
        if (is_reduced(w)) out.push_back(w);
    return out;
}

Polynomial f_nu(HirschResolution& R, const hirsch::HirschOpTable& sq, const Element& x)
{
    const auto& alg = R.algebra();
    std::function<Polynomial(GenId)> letter;
    auto word = [&](const Word& w) {
        Polynomial term = alg.one();
        for (auto g : w) {
            term = alg.multiply(term, letter(g));
            if (term.empty()) break;
        }
        return term;
    };
    // Arguments go through f_nu itself; on V0-words this is rho.
    letter = [&](GenId g) -> Polynomial {
        const GenInfo& info = R.info(g);
        switch (info.kind) {
        case GenKind::v0:
            return alg.generator(info.v0);
        case GenKind::cup2:
            return {};
        case GenKind::egen: {
            std::vector<Polynomial> args;
            for (const auto& w : info.args) {
                Polynomial p = word(w);
                if (p.empty()) return {};
                args.push_back(std::move(p));
            }
            return sq.eval(info.p, info.q, args);
        }
        }
        return {};
    };
    Polynomial out;
    for (const auto& w : x) out = alg.add(out, word(w));
    return out;
}

}  // namespace loopcoh::resolution
