#include "loopcoh/hirsch_ops.hpp"

#include <functional>
#include <sstream>

namespace loopcoh::hirsch {

namespace {

void require_char2(const PolynomialAlgebra& alg)
{
    if (!alg.ring().is_char2()) throw std::invalid_argument("Hirsch relation checks require characteristic 2");
}

using Blocks = std::vector<std::pair<int, int>>;

// Ordered sequences of blocks (k_i, l_i) != (0,0) with sum k, l.
void compositions_rec(int k, int l, Blocks& cur, std::vector<Blocks>& out)
{
    if (k == 0 && l == 0) {
        out.push_back(cur);
        return;
    }
    for (int a = 0; a <= k; ++a)
        for (int b = 0; b <= l; ++b) {
            if (a == 0 && b == 0) continue;
            cur.emplace_back(a, b);
            compositions_rec(k - a, l - b, cur, out);
            cur.pop_back();
        }
}

std::vector<Blocks> compositions(int k, int l)
{
    std::vector<Blocks> out;
    Blocks cur;
    compositions_rec(k, l, cur, out);
    return out;
}

bool all_singletons(const Blocks& b)
{
    for (auto [x, y] : b)
        if (x + y != 1) return false;
    return true;
}

std::vector<Polynomial> slice(const std::vector<Polynomial>& v, std::size_t from, std::size_t to)
{
    return {v.begin() + static_cast<std::ptrdiff_t>(from), v.begin() + static_cast<std::ptrdiff_t>(to)};
}

std::vector<Polynomial> concat(std::vector<Polynomial> a, const std::vector<Polynomial>& b)
{
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

Polynomial E(const HirschOpTable& t, const std::vector<Polynomial>& a, const std::vector<Polynomial>& b)
{
    return t.eval(static_cast<int>(a.size()), static_cast<int>(b.size()), concat(a, b));
}

// Sum over block compositions of (x; y) of outer(E_{blocks}(x..; y..)).
template <class Outer>
void over_compositions(const HirschOpTable& t, const std::vector<Polynomial>& x, const std::vector<Polynomial>& y,
                       Outer&& outer)
{
    for (const Blocks& blocks : compositions(static_cast<int>(x.size()), static_cast<int>(y.size()))) {
        std::vector<Polynomial> inner;
        std::size_t i = 0, j = 0;
        bool zero = false;
        for (auto [a, b] : blocks) {
            Polynomial v = E(t, slice(x, i, i + a), slice(y, j, j + b));
            i += a;
            j += b;
            if (v.empty()) zero = true;
            inner.push_back(std::move(v));
        }
        if (!zero) outer(blocks, inner);
    }
}

std::vector<Monomial> positive_monomials(const PolynomialAlgebra& alg, int bound)
{
    std::vector<Monomial> out;
    for (int d = 1; d <= bound; ++d)
        for (auto& m : alg.basis_in_degree(d)) out.push_back(m);
    return out;
}

void tuples_rec(const PolynomialAlgebra& alg, const std::vector<Monomial>& pool, std::size_t n, int remaining,
                std::vector<Monomial>& cur, const std::function<void(const std::vector<Monomial>&)>& fn)
{
    if (cur.size() == n) {
        fn(cur);
        return;
    }
    for (const auto& m : pool) {
        int d = alg.degree(m);
        if (d > remaining) continue;
        cur.push_back(m);
        tuples_rec(alg, pool, n, remaining - d, cur, fn);
        cur.pop_back();
    }
}

void for_each_tuple(const PolynomialAlgebra& alg, std::size_t n, int bound,
                    const std::function<void(const std::vector<Monomial>&)>& fn)
{
    auto pool = positive_monomials(alg, bound);
    std::vector<Monomial> cur;
    tuples_rec(alg, pool, n, bound, cur, fn);
}

std::vector<Polynomial> as_polys(const PolynomialAlgebra& alg, const std::vector<Monomial>& ms)
{
    std::vector<Polynomial> out;
    for (auto& m : ms) out.push_back(alg.monomial(m));
    return out;
}

std::string tuple_text(const PolynomialAlgebra& alg, const std::vector<Polynomial>& v)
{
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + alg.to_string(v[i]);
    return s;
}

}  // namespace

MissingOperation::MissingOperation(int p_, int q_)
    : std::runtime_error("operation E_{" + std::to_string(p_) + "," + std::to_string(q_) + "} exceeds the arity cap"),
      p(p_), q(q_)
{
}

Polynomial sq11(const Steenrod& sq, const Polynomial& a, const Polynomial& b)
{
    const auto& alg = sq.algebra();
    Polynomial out;
    for (const auto& [ma, ca] : a)
        for (const auto& [mb, cb] : b) {
            for (std::size_t g = 0; g < alg.n_generators(); ++g) {
                int ea = ma.exponents[g], eb = mb.exponents[g];
                if (ea == 0 || eb == 0 || (ea * eb) % 2 == 0) continue;
                Polynomial s = sq.on_generator(g);
                if (s.empty()) continue;
                Monomial rest = alg.multiply(ma, mb);
                rest.exponents[g] -= 2;
                Polynomial term = alg.multiply(s, alg.monomial(rest, alg.ring().mul(ca, cb)));
                out = alg.add(out, term);
            }
        }
    return out;
}

HirschOpTable::HirschOpTable(PolynomialAlgebra algebra, DefaultRule rule, std::optional<Steenrod> sq, int arity_cap)
    : algebra_(std::move(algebra)), rule_(rule), steenrod_(std::move(sq)), arity_cap_(arity_cap)
{
    if (arity_cap_ < 2) throw std::invalid_argument("arity cap must be at least 2");
}

HirschOpTable HirschOpTable::trivial(const PolynomialAlgebra& algebra, int arity_cap)
{
    return HirschOpTable(algebra, DefaultRule::zero, std::nullopt, arity_cap);
}

HirschOpTable HirschOpTable::sq_structure(const Steenrod& sq, int arity_cap)
{
    return HirschOpTable(sq.algebra(), DefaultRule::sq11_derivation, sq, arity_cap);
}

bool HirschOpTable::is_trivial() const
{
    if (rule_ == DefaultRule::sq11_derivation && !steenrod_->table().empty()) return false;
    for (const auto& [k, v] : overrides_)
        if (!v.empty()) return false;
    return true;
}

void HirschOpTable::set_override(int p, int q, std::vector<Monomial> args, Polynomial value)
{
    if (p < 0 || q < 0 || p + q < 2) throw std::invalid_argument("override must have p + q >= 2");
    if (p == 0 || q == 0) {
        if (!value.empty())
            throw std::invalid_argument("E_{p,0} and E_{0,q} vanish for p, q > 1 and cannot be overridden");
        return;
    }
    if (p + q > arity_cap_) throw MissingOperation(p, q);
    if (args.size() != static_cast<std::size_t>(p + q)) throw std::invalid_argument("override arity mismatch");
    int deg = 1 - p - q;
    for (const auto& m : args) deg += algebra_.degree(m);
    auto vd = algebra_.degree(value);
    if (vd && *vd != deg)
        throw std::invalid_argument("override value has degree " + std::to_string(*vd) + ", expected " +
                                    std::to_string(deg));
    if (rule_ == DefaultRule::sq11_derivation) {
        std::vector<Monomial> mirror(args.begin() + p, args.end());
        mirror.insert(mirror.end(), args.begin(), args.begin() + p);
        overrides_[Key{q, p, std::move(mirror)}] = value;
    }
    overrides_[Key{p, q, std::move(args)}] = std::move(value);
}

Polynomial HirschOpTable::eval_basis(int p, int q, const std::vector<Monomial>& args) const
{
    if (p < 0 || q < 0 || p + q == 0) throw std::invalid_argument("E_{0,0} is undefined");
    if (args.size() != static_cast<std::size_t>(p + q)) throw std::invalid_argument("arity mismatch");
    if (p + q == 1) return algebra_.monomial(args[0]);
    if (p == 0 || q == 0) return {};
    if (p + q > arity_cap_) throw MissingOperation(p, q);
    if (auto it = overrides_.find(Key{p, q, args}); it != overrides_.end()) return it->second;
    if (p == 1 && q == 1 && rule_ == DefaultRule::sq11_derivation)
        return sq11(*steenrod_, algebra_.monomial(args[0]), algebra_.monomial(args[1]));
    return {};
}

Polynomial HirschOpTable::eval(int p, int q, const std::vector<Polynomial>& args) const
{
    if (args.size() != static_cast<std::size_t>(p + q)) throw std::invalid_argument("arity mismatch");
    if (p + q == 1) return args[0];
    if (p == 0 || q == 0) return {};
    for (const auto& a : args)
        if (a.empty()) return {};
    if (p + q > arity_cap_) throw MissingOperation(p, q);
    bool any_override = false;
    for (const auto& [k, v] : overrides_)
        if (k.p == p && k.q == q) {
            any_override = true;
            break;
        }
    if (!any_override && !(p == 1 && q == 1 && rule_ == DefaultRule::sq11_derivation)) return {};
    if (p == 1 && q == 1 && rule_ == DefaultRule::sq11_derivation && !any_override)
        return sq11(*steenrod_, args[0], args[1]);

    Polynomial out;
    std::vector<Monomial> cur;
    std::function<void(std::size_t, Scalar)> rec = [&](std::size_t i, Scalar c) {
        if (i == args.size()) {
            out = algebra_.add(out, algebra_.scale(eval_basis(p, q, cur), c));
            return;
        }
        for (const auto& [m, cm] : args[i]) {
            cur.push_back(m);
            rec(i + 1, algebra_.ring().mul(c, cm));
            cur.pop_back();
        }
    };
    rec(0, algebra_.ring().one());
    return out;
}

std::vector<std::string> HirschOpTable::check_symmetry() const
{
    std::vector<std::string> problems;
    if (rule_ != DefaultRule::sq11_derivation) return problems;
    for (const auto& [k, v] : overrides_) {
        std::vector<Monomial> mirror(k.args.begin() + k.p, k.args.end());
        mirror.insert(mirror.end(), k.args.begin(), k.args.begin() + k.p);
        auto it = overrides_.find(Key{k.q, k.p, mirror});
        if (it == overrides_.end() || it->second != v)
            problems.push_back("Sq_{" + std::to_string(k.p) + "," + std::to_string(k.q) + "} override has no matching mirror");
    }
    return problems;
}

std::string Violation::describe(const PolynomialAlgebra& algebra) const
{
    std::ostringstream os;
    os << relation << " at (";
    for (std::size_t i = 0; i < args.size(); ++i) os << (i ? "," : "") << algebra.to_string(args[i]);
    os << "): " << algebra.to_string(lhs) << " != " << algebra.to_string(rhs);
    return os.str();
}

Polynomial merge_terms(const HirschOpTable& t, const std::vector<Polynomial>& u, const std::vector<Polynomial>& v)
{
    const auto& alg = t.algebra();
    Polynomial out;
    for (std::size_t i = 0; i + 1 < u.size(); ++i) {
        std::vector<Polynomial> m = slice(u, 0, i);
        m.push_back(alg.multiply(u[i], u[i + 1]));
        auto rest = slice(u, i + 2, u.size());
        m.insert(m.end(), rest.begin(), rest.end());
        out = alg.add(out, E(t, m, v));
    }
    for (std::size_t j = 0; j + 1 < v.size(); ++j) {
        std::vector<Polynomial> m = slice(v, 0, j);
        m.push_back(alg.multiply(v[j], v[j + 1]));
        auto rest = slice(v, j + 2, v.size());
        m.insert(m.end(), rest.begin(), rest.end());
        out = alg.add(out, E(t, u, m));
    }
    return out;
}

Polynomial quadratic_tail(const HirschOpTable& t, const std::vector<Polynomial>& u, const std::vector<Polynomial>& v)
{
    const auto& alg = t.algebra();
    const std::size_t p = u.size(), q = v.size();
    Polynomial out;
    for (std::size_t i = 0; i <= p; ++i)
        for (std::size_t j = 0; j <= q; ++j) {
            if ((i == 0 && j == 0) || (i == p && j == q)) continue;
            Polynomial left = E(t, slice(u, 0, i), slice(v, 0, j));
            if (left.empty()) continue;
            Polynomial right = E(t, slice(u, i, p), slice(v, j, q));
            out = alg.add(out, alg.multiply(left, right));
        }
    return out;
}

std::vector<Violation> check_derivation_relations(const HirschOpTable& t, int degree_bound,
                                                  const std::vector<std::pair<int, int>>& instances)
{
    const auto& alg = t.algebra();
    require_char2(alg);
    std::vector<Violation> out;
    for (auto [p, q] : instances) {
        if (p < 1 || q < 1 || p + q < 2) throw std::invalid_argument("derivation instances need p, q >= 1");
        if (p + q > t.arity_cap()) throw MissingOperation(p, q);
        for_each_tuple(alg, static_cast<std::size_t>(p + q), degree_bound, [&](const std::vector<Monomial>& ms) {
            auto polys = as_polys(alg, ms);
            auto u = slice(polys, 0, p), v = slice(polys, p, polys.size());
            Polynomial lhs = merge_terms(t, u, v);
            Polynomial rhs = quadratic_tail(t, u, v);
            if (lhs != rhs)
                out.push_back({"derivation(" + std::to_string(p) + "," + std::to_string(q) + ")", ms, lhs, rhs});
        });
    }
    return out;
}

AssociativitySides associativity_sides(const HirschOpTable& t, const std::vector<Polynomial>& a,
                                       const std::vector<Polynomial>& b, const std::vector<Polynomial>& c)
{
    const auto& alg = t.algebra();
    require_char2(alg);
    AssociativitySides s;
    over_compositions(t, a, b, [&](const Blocks& blocks, const std::vector<Polynomial>& inner) {
        Polynomial v = E(t, inner, c);
        s.left = alg.add(s.left, v);
        if (all_singletons(blocks)) s.left_shuffle = alg.add(s.left_shuffle, v);
    });
    over_compositions(t, b, c, [&](const Blocks& blocks, const std::vector<Polynomial>& inner) {
        Polynomial v = E(t, a, inner);
        s.right = alg.add(s.right, v);
        if (all_singletons(blocks)) s.right_shuffle = alg.add(s.right_shuffle, v);
    });
    return s;
}

std::vector<Violation> check_associativity_relation(const HirschOpTable& t, int k, int l, int r,
                                                    const std::vector<Monomial>& args, int degree_bound)
{
    const auto& alg = t.algebra();
    require_char2(alg);
    if (k < 1 || l < 1 || r < 1) throw std::invalid_argument("associativity instances need k, l, r >= 1");
    const std::string name =
        "associativity(" + std::to_string(k) + "," + std::to_string(l) + "," + std::to_string(r) + ")";
    std::vector<Violation> out;
    auto run = [&](const std::vector<Monomial>& ms) {
        auto polys = as_polys(alg, ms);
        auto s = associativity_sides(t, slice(polys, 0, k), slice(polys, k, k + l), slice(polys, k + l, k + l + r));
        if (s.left != s.right) out.push_back({name, ms, s.left, s.right});
    };
    if (!args.empty()) {
        if (args.size() != static_cast<std::size_t>(k + l + r)) throw std::invalid_argument("argument count mismatch");
        run(args);
    } else {
        for_each_tuple(alg, static_cast<std::size_t>(k + l + r), degree_bound, run);
    }
    return out;
}

std::vector<SpecializationInstance> check_sq_specialization_cases(const HirschOpTable& sq, int degree_bound)
{
    const auto& alg = sq.algebra();
    require_char2(alg);
    std::vector<SpecializationInstance> out;
    auto pool = positive_monomials(alg, degree_bound);

    auto emit = [&](std::string name, const std::vector<Polynomial>& a, const std::vector<Polynomial>& b,
                    const std::vector<Polynomial>& c, const std::vector<Polynomial>& u,
                    const std::vector<Polynomial>& v) {
        SpecializationInstance inst;
        inst.case_name = std::move(name);
        inst.description = "(" + tuple_text(alg, a) + ";" + tuple_text(alg, b) + ";" + tuple_text(alg, c) +
                           ") / (" + tuple_text(alg, u) + ";" + tuple_text(alg, v) + ")";
        auto s = associativity_sides(sq, a, b, c);
        inst.assoc_lhs = alg.add(s.left_shuffle, s.right_shuffle);
        inst.assoc_rhs = alg.add(alg.add(s.left, s.left_shuffle), alg.add(s.right, s.right_shuffle));
        inst.deriv_lhs = merge_terms(sq, u, v);
        inst.deriv_rhs = quadratic_tail(sq, u, v);
        out.push_back(std::move(inst));
    };

    for (const auto& m1 : pool)
        for (const auto& m2 : pool) {
            int d1 = alg.degree(m1), d2 = alg.degree(m2);
            Polynomial x = alg.monomial(m1), y = alg.monomial(m2), xy = alg.multiply(x, y);
            // Cases 1 and 1': alternating tuples of length n >= 3.
            for (int n = 3;; ++n) {
                int total = (n + 1) / 2 * d1 + n / 2 * d2 + d1 + d2;
                if (total > degree_bound || n + 1 > sq.arity_cap()) break;
                std::vector<Polynomial> alt;
                for (int i = 0; i < n; ++i) alt.push_back(i % 2 == 0 ? x : y);
                emit("1", slice(alt, 2, alt.size()), {xy}, {xy}, alt, {xy});
                emit("1'", {xy}, {xy}, slice(alt, 2, alt.size()), {xy}, alt);
            }
            // Cases 2 and 2': x plays a, y plays b.
            if (3 * d1 + d2 <= degree_bound) {
                emit("2", {xy}, {x}, {x}, {x, y, x}, {x});
                emit("2'", {x}, {x}, {xy}, {x}, {x, y, x});
            }
        }
    return out;
}

}  // namespace loopcoh::hirsch
