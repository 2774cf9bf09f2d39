#include "loopcoh/resolution.hpp"

#include <algorithm>
#include <functional>

namespace loopcoh::resolution {

void add_into(Element& x, const Word& w)
{
    auto [it, inserted] = x.insert(w);
    if (!inserted) x.erase(it);
}

void add_into(Element& x, const Element& y)
{
    for (const auto& w : y) add_into(x, w);
}

Element product(const Element& x, const Element& y)
{
    Element out;
    for (const auto& u : x)
        for (const auto& v : y) {
            Word w = u;
            w.insert(w.end(), v.begin(), v.end());
            add_into(out, w);
        }
    return out;
}

namespace {

Element single(Word w)
{
    Element e;
    e.insert(std::move(w));
    return e;
}

std::vector<Word> slice(const std::vector<Word>& v, std::size_t from, std::size_t to)
{
    return {v.begin() + static_cast<std::ptrdiff_t>(from), v.begin() + static_cast<std::ptrdiff_t>(to)};
}

using Blocks = std::vector<std::pair<int, int>>;

// Block sequences (k_i, l_i) with sums (k, l), skipping (0,0) and the vanishing
// shapes (>=2, 0), (0, >=2).
void compositions_rec(int k, int l, Blocks& cur, std::vector<Blocks>& out)
{
    if (k == 0 && l == 0) {
        out.push_back(cur);
        return;
    }
    for (int a = 0; a <= k; ++a)
        for (int b = 0; b <= l; ++b) {
            if (a + b == 0 || (a >= 2 && b == 0) || (a == 0 && b >= 2)) continue;
            cur.emplace_back(a, b);
            compositions_rec(k - a, l - b, cur, out);
            cur.pop_back();
        }
}

const std::vector<Blocks>& compositions(int k, int l)
{
    static std::map<std::pair<int, int>, std::vector<Blocks>> cache;
    auto it = cache.find({k, l});
    if (it != cache.end()) return it->second;
    std::vector<Blocks> out;
    Blocks cur;
    compositions_rec(k, l, cur, out);
    return cache.emplace(std::make_pair(k, l), std::move(out)).first->second;
}

// Calls fn on each choice of one word per slot.
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

}  // namespace

HirschResolution::HirschResolution(PolynomialAlgebra algebra, std::size_t step_cap)
    : algebra_(std::move(algebra)), step_cap_(step_cap)
{
    if (!algebra_.ring().is_char2())
        throw std::invalid_argument("the Hirsch resolution is implemented in characteristic 2 only");
    for (std::size_t i = 0; i < algebra_.n_generators(); ++i) v0(i);
}

GenId HirschResolution::intern(GenInfo g)
{
    auto it = ids_.find(g);
    if (it != ids_.end()) return it->second;
    GenId id = static_cast<GenId>(gens_.size());
    gens_.push_back(g);
    ids_.emplace(std::move(g), id);
    return id;
}

GenId HirschResolution::v0(std::size_t i)
{
    GenInfo g;
    g.kind = GenKind::v0;
    g.v0 = i;
    g.internal = algebra_.generators()[i].degree;
    return intern(std::move(g));
}

GenId HirschResolution::cup2(std::vector<std::size_t> cluster)
{
    if (cluster.size() < 2) throw std::invalid_argument("cup-2 clusters need at least two elements");
    std::sort(cluster.begin(), cluster.end());
    GenInfo g;
    g.kind = GenKind::cup2;
    g.res = -2 * static_cast<int>(cluster.size() - 1);
    for (auto i : cluster) g.internal += algebra_.generators()[i].degree;
    g.cluster = std::move(cluster);
    return intern(std::move(g));
}

Word HirschResolution::cluster_word(std::vector<std::size_t> cluster)
{
    if (cluster.size() == 1) return {v0(cluster[0])};
    return {cup2(std::move(cluster))};
}

GenId HirschResolution::egen_raw(int p, int q, std::vector<Word> args)
{
    if (p < 1 || q < 1) throw std::invalid_argument("E_{p,q} generators need p, q >= 1");
    if (args.size() != static_cast<std::size_t>(p + q)) throw std::invalid_argument("E_{p,q} arity mismatch");
    GenInfo g;
    g.kind = GenKind::egen;
    g.p = p;
    g.q = q;
    g.res = -(p + q - 1);
    for (const auto& w : args) {
        if (w.empty()) throw std::invalid_argument("E_{p,q} arguments must have positive degree");
        auto b = bidegree(w);
        g.res += b.res;
        g.internal += b.internal;
    }
    g.args = std::move(args);
    return intern(std::move(g));
}

bool HirschResolution::is_normal(GenId g) const
{
    const auto& x = info(g);
    if (x.kind != GenKind::egen) return true;
    if (x.p == 1 && x.args[0].size() == 1 && info(x.args[0][0]).kind == GenKind::egen) return false;
    for (const auto& w : x.args)
        for (auto h : w)
            if (!is_normal(h)) return false;
    return true;
}

Element HirschResolution::egen(int p, int q, const std::vector<Word>& args)
{
    std::size_t steps = 0;
    return egen_rec(p, q, args, steps);
}

Element HirschResolution::egen(int p, int q, const std::vector<Element>& args)
{
    Element out;
    for_each_choice(args, [&](const std::vector<Word>& ws) { add_into(out, egen(p, q, ws)); });
    return out;
}

Element HirschResolution::egen_rec(int p, int q, const std::vector<Word>& args, std::size_t& steps)
{
    if (p + q == 1) return single(args[0]);
    if (p == 0 || q == 0) return {};
    return normalize_rec(p, q, args, steps);
}

Element HirschResolution::normalize_rec(int p, int q, const std::vector<Word>& args, std::size_t& steps)
{
    if (++steps > step_cap_) throw RewriteLimitExceeded("normal form rewriting exceeded the step cap");
    const bool leading = p == 1 && args[0].size() == 1 && info(args[0][0]).kind == GenKind::egen;
    if (!leading) return single({egen_raw(p, q, args)});

    auto key = std::make_tuple(p, q, args);
    if (auto it = norm_cache_.find(key); it != norm_cache_.end()) return it->second;

    // E_{1,r}(E_{k,l}(a;b); c) = sum E_{k,m}(a; E(b-blocks; c-blocks))
    //                          + sum_{blocks >= 2} E_{m,r}(E(a-blocks; b-blocks); c).
    const GenInfo inner = info(args[0][0]);
    const int k = inner.p, l = inner.q, r = static_cast<int>(args.size()) - 1;
    const std::vector<Word> a = slice(inner.args, 0, k), b = slice(inner.args, k, k + l),
                            c = slice(args, 1, args.size());
    Element out;
    for (const Blocks& blocks : compositions(l, r)) {
        std::vector<Element> slots;
        std::size_t i = 0, j = 0;
        for (auto [x, y] : blocks) {
            auto bb = slice(b, i, i + x), cb = slice(c, j, j + y);
            i += x;
            j += y;
            std::vector<Word> sub = bb;
            sub.insert(sub.end(), cb.begin(), cb.end());
            slots.push_back(egen_rec(x, y, sub, steps));
        }
        const int m = static_cast<int>(blocks.size());
        for_each_choice(slots, [&](const std::vector<Word>& ws) {
            std::vector<Word> full = a;
            full.insert(full.end(), ws.begin(), ws.end());
            add_into(out, egen_rec(k, m, full, steps));
        });
    }
    for (const Blocks& blocks : compositions(k, l)) {
        if (blocks.size() < 2) continue;
        std::vector<Element> slots;
        std::size_t i = 0, j = 0;
        for (auto [x, y] : blocks) {
            auto ab = slice(a, i, i + x), bb = slice(b, j, j + y);
            i += x;
            j += y;
            ab.insert(ab.end(), bb.begin(), bb.end());
            slots.push_back(egen_rec(x, y, ab, steps));
        }
        const int m = static_cast<int>(blocks.size());
        for_each_choice(slots, [&](const std::vector<Word>& ws) {
            std::vector<Word> full = ws;
            full.insert(full.end(), c.begin(), c.end());
            add_into(out, egen_rec(m, r, full, steps));
        });
    }
    norm_cache_.emplace(std::move(key), out);
    return out;
}

Bidegree HirschResolution::bidegree(const Word& w) const
{
    Bidegree b;
    for (auto g : w) {
        b.res += info(g).res;
        b.internal += info(g).internal;
    }
    return b;
}

int HirschResolution::total_degree(const Word& w) const
{
    auto b = bidegree(w);
    return b.res + b.internal;
}

Element HirschResolution::d_egen_formula(int p, int q, const std::vector<Word>& args)
{
    Element out;
    const std::size_t n = args.size();
    // internal differential of each argument
    for (std::size_t i = 0; i < n; ++i) {
        Element da = d(args[i]);
        for (const auto& w : da) {
            auto mod = args;
            mod[i] = w;
            add_into(out, egen(p, q, mod));
        }
    }
    // merges of adjacent arguments within each side
    for (int i = 0; i + 1 < p; ++i) {
        std::vector<Word> mod = slice(args, 0, i);
        Word m = args[i];
        m.insert(m.end(), args[i + 1].begin(), args[i + 1].end());
        mod.push_back(m);
        auto rest = slice(args, i + 2, n);
        mod.insert(mod.end(), rest.begin(), rest.end());
        add_into(out, egen(p - 1, q, mod));
    }
    for (int j = 0; j + 1 < q; ++j) {
        std::vector<Word> mod = slice(args, 0, p + j);
        Word m = args[p + j];
        m.insert(m.end(), args[p + j + 1].begin(), args[p + j + 1].end());
        mod.push_back(m);
        auto rest = slice(args, p + j + 2, n);
        mod.insert(mod.end(), rest.begin(), rest.end());
        add_into(out, egen(p, q - 1, mod));
    }
    // quadratic tail
    for (int i = 0; i <= p; ++i)
        for (int j = 0; j <= q; ++j) {
            if ((i == 0 && j == 0) || (i == p && j == q)) continue;
            std::vector<Word> la = slice(args, 0, i), lb = slice(args, p, p + j);
            la.insert(la.end(), lb.begin(), lb.end());
            Element left = egen(i, j, la);
            if (left.empty()) continue;
            std::vector<Word> ra = slice(args, i, p), rb = slice(args, p + j, n);
            ra.insert(ra.end(), rb.begin(), rb.end());
            Element right = egen(p - i, q - j, ra);
            add_into(out, product(left, right));
        }
    return out;
}

const Element& HirschResolution::d(GenId g)
{
    if (auto it = d_cache_.find(g); it != d_cache_.end()) return it->second;
    const GenInfo x = info(g);
    Element out;
    if (x.kind == GenKind::egen) {
        out = d_egen_formula(x.p, x.q, x.args);
    } else if (x.kind == GenKind::cup2) {
        // ordered splittings into two nonempty sub-multisets, each counted once
        std::vector<std::pair<std::size_t, int>> counts;
        for (auto c : x.cluster) {
            if (!counts.empty() && counts.back().first == c)
                ++counts.back().second;
            else
                counts.emplace_back(c, 1);
        }
        std::vector<int> take(counts.size(), 0);
        std::function<void(std::size_t)> rec = [&](std::size_t i) {
            if (i == counts.size()) {
                std::vector<std::size_t> S, T;
                for (std::size_t k = 0; k < counts.size(); ++k) {
                    for (int t = 0; t < take[k]; ++t) S.push_back(counts[k].first);
                    for (int t = take[k]; t < counts[k].second; ++t) T.push_back(counts[k].first);
                }
                if (S.empty() || T.empty()) return;
                add_into(out, cup1(cluster_word(S), cluster_word(T)));
                return;
            }
            for (int t = 0; t <= counts[i].second; ++t) {
                take[i] = t;
                rec(i + 1);
            }
        };
        rec(0);
    }
    return d_cache_.emplace(g, std::move(out)).first->second;
}

Element HirschResolution::d(const Word& w)
{
    Element out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        const Element& dg = d(w[i]);
        for (const auto& v : dg) {
            Word x(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(i));
            x.insert(x.end(), v.begin(), v.end());
            x.insert(x.end(), w.begin() + static_cast<std::ptrdiff_t>(i + 1), w.end());
            add_into(out, x);
        }
    }
    return out;
}

Element HirschResolution::d(const Element& x)
{
    Element out;
    for (const auto& w : x) add_into(out, d(w));
    return out;
}

Polynomial HirschResolution::rho(const Word& w) const
{
    poly::Monomial m = algebra_.one_monomial();
    for (auto g : w) {
        if (info(g).kind != GenKind::v0) return {};
        m.exponents[info(g).v0] += 1;
    }
    return algebra_.monomial(m);
}

Polynomial HirschResolution::rho(const Element& x) const
{
    Polynomial out;
    for (const auto& w : x) out = algebra_.add(out, rho(w));
    return out;
}

const std::vector<Word>& HirschResolution::words_in(Bidegree b)
{
    if (auto it = word_cache_.find(b); it != word_cache_.end()) return it->second;
    std::vector<Word> out;
    if (b.res <= 0 && b.internal >= 2) {
        Word cur;
        words_rec(b, cur, out);
    }
    return word_cache_.emplace(b, std::move(out)).first->second;
}

void HirschResolution::words_rec(Bidegree remaining, Word& cur, std::vector<Word>& out)
{
    if (remaining.internal == 0) {
        if (remaining.res == 0) out.push_back(cur);
        return;
    }
    for (int n = 2; n <= remaining.internal; ++n)
        for (int r = 0; r >= remaining.res; --r) {
            if (n != remaining.internal && remaining.internal - n < 2) continue;
            if (n == remaining.internal && r != remaining.res) continue;
            const auto gs = generators_in({r, n});
            for (auto g : gs) {
                cur.push_back(g);
                words_rec({remaining.res - r, remaining.internal - n}, cur, out);
                cur.pop_back();
            }
        }
}

const std::vector<GenId>& HirschResolution::generators_in(Bidegree b)
{
    if (auto it = gen_cache_.find(b); it != gen_cache_.end()) return it->second;
    std::vector<GenId> out;
    if (b.res == 0) {
        for (std::size_t i = 0; i < n_v0(); ++i)
            if (algebra_.generators()[i].degree == b.internal) out.push_back(v0(i));
    }
    if (b.res < 0 && b.res % 2 == 0) {
        const std::size_t m = static_cast<std::size_t>(-b.res / 2 + 1);
        std::vector<std::size_t> cur;
        std::function<void(std::size_t, int)> rec = [&](std::size_t start, int deg) {
            if (cur.size() == m) {
                if (deg == b.internal) out.push_back(cup2(cur));
                return;
            }
            for (std::size_t i = start; i < n_v0(); ++i) {
                cur.push_back(i);
                rec(i, deg + algebra_.generators()[i].degree);
                cur.pop_back();
            }
        };
        rec(0, 0);
    }
    if (b.res < 0) {
        for (int arity = 2; arity - 1 <= -b.res && 2 * arity <= b.internal; ++arity) {
            // argument words with sum of resolution degrees b.res + arity - 1
            const int res_sum = b.res + arity - 1;
            std::vector<Word> cur;
            std::function<void(int, int, int)> rec = [&](int slot, int res_left, int int_left) {
                if (slot == arity) {
                    if (res_left == 0 && int_left == 0) {
                        for (int p = 1; p < arity; ++p) {
                            if (p == 1 && cur[0].size() == 1 && info(cur[0][0]).kind == GenKind::egen) continue;
                            out.push_back(egen_raw(p, arity - p, cur));
                        }
                    }
                    return;
                }
                const int slots_left = arity - slot - 1;
                for (int n = 2; n <= int_left - 2 * slots_left; ++n)
                    for (int r = 0; r >= res_left; --r) {
                        if (slots_left == 0 && (n != int_left || r != res_left)) continue;
                        const auto ws = words_in({r, n});
                        for (const auto& w : ws) {
                            cur.push_back(w);
                            rec(slot + 1, res_left - r, int_left - n);
                            cur.pop_back();
                        }
                    }
            };
            rec(0, res_sum, b.internal);
        }
    }
    return gen_cache_.emplace(b, std::move(out)).first->second;
}

std::string HirschResolution::to_string(GenId g) const
{
    const auto& x = info(g);
    switch (x.kind) {
    case GenKind::v0:
        return algebra_.generators()[x.v0].name;
    case GenKind::cup2: {
        std::string s;
        for (std::size_t i = 0; i < x.cluster.size(); ++i)
            s += (i ? "∪₂" : "") + algebra_.generators()[x.cluster[i]].name;
        return "(" + s + ")";
    }
    case GenKind::egen: {
        auto arg = [&](const Word& w) { return w.size() > 1 ? "{" + to_string(w) + "}" : to_string(w); };
        if (x.p == 1 && x.q == 1) return "(" + arg(x.args[0]) + "⌣₁" + arg(x.args[1]) + ")";
        std::string s = "E" + std::to_string(x.p) + std::to_string(x.q) + "(";
        for (std::size_t i = 0; i < x.args.size(); ++i) {
            if (i) s += (static_cast<int>(i) == x.p) ? ";" : ",";
            s += arg(x.args[i]);
        }
        return s + ")";
    }
    }
    return "?";
}

std::string HirschResolution::to_string(const Word& w) const
{
    if (w.empty()) return "1";
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i) s += (i ? "·" : "") + to_string(w[i]);
    return s;
}

std::string HirschResolution::to_string(const Element& x) const
{
    if (x.empty()) return "0";
    std::string s;
    for (const auto& w : x) s += (s.empty() ? "" : " + ") + to_string(w);
    return s;
}

std::map<Bidegree, std::vector<Word>> enumerate_rh_basis(HirschResolution& R, int r_min, int n_max)
{
    std::map<Bidegree, std::vector<Word>> out;
    for (int r = 0; r >= r_min; --r)
        for (int n = 2; n <= n_max; ++n) {
            const auto& ws = R.words_in({r, n});
            if (!ws.empty()) out[{r, n}] = ws;
        }
    return out;
}

bool check_hexagon(HirschResolution& R, std::size_t a, std::size_t b, std::size_t c)
{
    const Word A{R.v0(a)}, B{R.v0(b)}, C{R.v0(c)};
    const GenId ab = R.egen_raw(1, 1, {A, B});
    // left: (a⌣₁b)⌣₁c + E21(a,b;c) + E21(b,a;c), each differentiated before normalizing
    Element left = R.d_egen_formula(1, 1, {Word{ab}, C});
    add_into(left, R.d_egen_formula(2, 1, {A, B, C}));
    add_into(left, R.d_egen_formula(2, 1, {B, A, C}));
    Element right;
    for (const auto& w : R.cup1(B, C)) add_into(right, R.d_egen_formula(1, 1, {A, w}));
    add_into(right, R.d_egen_formula(1, 2, {A, B, C}));
    add_into(right, R.d_egen_formula(1, 2, {A, C, B}));
    return left == right;
}

}  // namespace loopcoh::resolution
