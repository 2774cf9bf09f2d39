#include "loopcoh/resolution.hpp"

#include <algorithm>

namespace loopcoh::resolution {

std::vector<std::size_t> Contraction::v0_content(GenId g)
{
    const GenInfo& x = R_.info(g);
    if (x.kind == GenKind::v0) return {x.v0};
    if (x.kind == GenKind::cup2) return x.cluster;
    std::vector<std::size_t> out;
    for (auto h : classify(g).chain) {
        auto c = v0_content(h);
        out.insert(out.end(), c.begin(), c.end());
    }
    return out;
}

bool Contraction::less(std::size_t v, GenId t)
{
    auto c = v0_content(t);
    return std::all_of(c.begin(), c.end(), [&](std::size_t a) { return v < a; });
}

bool Contraction::less_equal(std::size_t v, GenId t)
{
    auto c = v0_content(t);
    return std::all_of(c.begin(), c.end(), [&](std::size_t a) { return v <= a; });
}

bool Contraction::greater_equal(std::size_t v, GenId t)
{
    auto c = v0_content(t);
    return std::all_of(c.begin(), c.end(), [&](std::size_t a) { return v >= a; });
}

const Classification& Contraction::classify(GenId g)
{
    if (auto it = cache_.find(g); it != cache_.end()) return it->second;
    const GenInfo x = R_.info(g);
    Classification c;
    if (x.kind == GenKind::v0) {
        c.in_W = true;
    } else if (x.kind == GenKind::cup2) {
        c.in_W = c.in_Upsilon = true;
    } else {
        if (x.p == 1 && x.q == 1 && x.args[0].size() == 1 && x.args[1].size() == 1) {
            GenId a = x.args[0][0], b = x.args[1][0];
            if (!R_.is_egen(a)) {
                if (!R_.is_egen(b)) {
                    c.chain = {a, b};
                } else {
                    const Classification& cb = classify(b);
                    if (cb.in_E1) {
                        c.chain = {a};
                        c.chain.insert(c.chain.end(), cb.chain.begin(), cb.chain.end());
                    }
                }
            }
        }
        if (!c.chain.empty()) {
            c.in_E1 = c.in_W = true;
            const auto& ch = c.chain;
            bool all_v0 = std::all_of(ch.begin(), ch.end(), [&](GenId h) { return R_.is_v0(h); });
            bool ascending = true;
            for (std::size_t i = 0; i + 1 < ch.size(); ++i)
                if (!R_.is_v0(ch[i]) || !R_.is_v0(ch[i + 1]) || R_.info(ch[i]).v0 >= R_.info(ch[i + 1]).v0)
                    ascending = false;
            c.in_Eo = all_v0 && ascending;
            // E^op: a_1 < ... < a_kappa in V0 followed by a_kappa >= a_{kappa+1}
            if (R_.is_v0(ch[0])) {
                std::size_t k = 0;
                while (k + 1 < ch.size() && R_.is_v0(ch[k + 1]) && R_.info(ch[k]).v0 < R_.info(ch[k + 1]).v0) ++k;
                if (k + 1 < ch.size() && greater_equal(R_.info(ch[k]).v0, ch[k + 1])) {
                    c.in_Eop = true;
                    c.kappa = static_cast<int>(k + 1);
                }
            }
            // x~ images: ascending V0 prefix a_1 < ... < a_{k-1}, then a cup-2
            // letter C with a_{k-1} < max C
            {
                std::size_t k = 0;
                while (k < ch.size() && R_.is_v0(ch[k]) &&
                       (k == 0 || R_.info(ch[k - 1]).v0 < R_.info(ch[k]).v0))
                    ++k;
                if (k < ch.size() && R_.is_cup2(ch[k])) {
                    const auto& cl = R_.info(ch[k]).cluster;
                    if (k == 0 || R_.info(ch[k - 1]).v0 < cl.back()) c.is_tilde_image = true;
                }
            }
        } else {
            std::vector<std::size_t> path;
            if (scan_iteration(g, path) == Scan::found) {
                c.in_Edot = true;
                c.edot_path = std::move(path);
            }
        }
    }
    if (x.kind == GenKind::cup2) c.is_tilde_image = true;
    return cache_.emplace(g, std::move(c)).first->second;
}

Element Contraction::tilde(GenId g)
{
    const Classification c = classify(g);
    const std::size_t k = static_cast<std::size_t>(c.kappa) - 1;
    std::vector<std::size_t> merged = v0_content(c.chain[k]);
    auto tail = v0_content(c.chain[k + 1]);
    merged.insert(merged.end(), tail.begin(), tail.end());
    std::vector<Word> letters;
    for (std::size_t i = 0; i < k; ++i) letters.push_back({c.chain[i]});
    letters.push_back(R_.cluster_word(merged));
    for (std::size_t i = k + 2; i < c.chain.size(); ++i) letters.push_back({c.chain[i]});
    Word cur = letters.back();
    for (std::size_t i = letters.size() - 1; i-- > 0;) cur = {R_.egen_raw(1, 1, {letters[i], cur})};
    Element out;
    out.insert(cur);
    return out;
}

Contraction::Scan Contraction::scan_iteration(GenId g, std::vector<std::size_t>& path)
{
    const GenInfo x = R_.info(g);
    for (std::size_t i = 0; i < x.args.size(); ++i) {
        const Word& w = x.args[i];
        const bool head_W = classify(w[0]).in_W;
        if (w.size() > 1) {
            if (!(i == 0 || (x.p == 1 && i == 1))) return Scan::invalid;
            path.push_back(i);
            if (head_W) return Scan::found;
            if (!R_.is_egen(w[0])) return Scan::invalid;
            return scan_iteration(w[0], path) == Scan::found ? Scan::found : Scan::invalid;
        }
        if (head_W) continue;
        path.push_back(i);
        Scan sub = scan_iteration(w[0], path);
        if (sub != Scan::no_product) return sub;
        path.pop_back();
    }
    return Scan::no_product;
}

Element Contraction::prime_at(GenId g, const std::vector<std::size_t>& path, std::size_t depth)
{
    const GenInfo x = R_.info(g);
    const std::size_t r = path[depth];
    if (depth + 1 == path.size()) {
        std::vector<Word> args;
        if (r == 0) {
            args.push_back({x.args[0][0]});
            args.push_back(Word(x.args[0].begin() + 1, x.args[0].end()));
            args.insert(args.end(), x.args.begin() + 1, x.args.end());
            return R_.egen(x.p + 1, x.q, args);
        }
        args.push_back(x.args[0]);
        args.push_back({x.args[1][0]});
        args.push_back(Word(x.args[1].begin() + 1, x.args[1].end()));
        args.insert(args.end(), x.args.begin() + 2, x.args.end());
        return R_.egen(1, x.q + 1, args);
    }
    Element inner = prime_at(x.args[r][0], path, depth + 1);
    Element out;
    for (const auto& w : inner) {
        auto args = x.args;
        args[r] = w;
        args[r].insert(args[r].end(), x.args[r].begin() + 1, x.args[r].end());
        add_into(out, R_.egen(x.p, x.q, args));
    }
    return out;
}

Element Contraction::prime(GenId g) { return prime_at(g, classify(g).edot_path, 0); }

namespace {

Element splice(const Word& w, std::size_t from, std::size_t to, const Element& middle)
{
    Element out;
    for (const auto& m : middle) {
        Word x(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(from));
        x.insert(x.end(), m.begin(), m.end());
        x.insert(x.end(), w.begin() + static_cast<std::ptrdiff_t>(to), w.end());
        add_into(out, x);
    }
    return out;
}

}  // namespace

int Contraction::case_of(const Word& w)
{
    const std::size_t n = w.size();
    int found = 0;
    int matches = 0;

    // The first letter that is in E^op or is an x~ image decides case 2.
    std::size_t special = n;
    for (std::size_t k = 0; k < n; ++k) {
        const Classification& c = classify(w[k]);
        if (c.in_Eop || c.is_tilde_image) {
            special = k;
            break;
        }
    }
    bool all_W = true;
    for (auto h : w)
        if (!classify(h).in_W) all_W = false;

    // Case 1: weakly descending V0 prefix followed by an ascent into V0 or E_o.
    if (n >= 2 && all_W && R_.is_v0(w[0])) {
        std::size_t i = 0;
        while (i + 1 < n && R_.is_v0(w[i + 1]) && R_.info(w[i]).v0 >= R_.info(w[i + 1]).v0) ++i;
        if (i + 1 < n) {
            const std::size_t k = i + 1;
            bool ok = (R_.is_v0(w[k]) || classify(w[k]).in_Eo) && less(R_.info(w[i]).v0, w[k]) && special == n;
            if (ok) {
                found = 1;
                ++matches;
            }
        }
    }
    // Case 2: the deciding letter is in E^op, everything in W.
    if (all_W && special < n && classify(w[special]).in_Eop) {
        found = found ? found : 2;
        ++matches;
    }
    // Case 3: first letter outside W lies in E-dot, letters before it in W.
    for (std::size_t k = 0; k < n; ++k) {
        const Classification& c = classify(w[k]);
        if (c.in_W) continue;
        if (c.in_Edot) {
            found = found ? found : 3;
            ++matches;
        }
        break;
    }
    if (matches > 1) throw ClassificationAmbiguity("two contraction cases match " + R_.to_string(w));
    return found;
}

Element Contraction::s(const Word& w)
{
    const std::size_t n = w.size();
    switch (case_of(w)) {
    case 1: {
        std::size_t i = 0;
        while (i + 1 < n && R_.is_v0(w[i + 1]) && R_.info(w[i]).v0 >= R_.info(w[i + 1]).v0) ++i;
        return splice(w, i, i + 2, R_.cup1({w[i]}, {w[i + 1]}));
    }
    case 2: {
        for (std::size_t k = 0; k < n; ++k) {
            const Classification& c = classify(w[k]);
            if (c.in_Eop) return splice(w, k, k + 1, tilde(w[k]));
        }
        break;
    }
    case 3: {
        for (std::size_t k = 0; k < n; ++k)
            if (!classify(w[k]).in_W) return splice(w, k, k + 1, prime(w[k]));
        break;
    }
    default:
        break;
    }
    return {};
}

Element Contraction::s(const Element& x)
{
    Element out;
    for (const auto& w : x) add_into(out, s(w));
    return out;
}

SIterationResult verify_siteration(HirschResolution& R, Contraction& s, const Element& a, int cap)
{
    SIterationResult result;
    Element x = a;
    for (int n = 1; n <= cap; ++n) {
        Element next = s.s(R.d(x));
        add_into(next, R.d(s.s(x)));
        add_into(next, x);
        x = std::move(next);
        if (x.empty()) {
            result.success = true;
            result.n = n;
            return result;
        }
    }
    result.residual = std::move(x);
    result.n = cap;
    return result;
}

}  // namespace loopcoh::resolution
