#include "loopcoh/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace loopcoh::poly {

GeneratorSet::GeneratorSet(std::vector<Generator> generators, const Ring& ring) : gens_(std::move(generators))
{
    std::set<std::string> names;
    for (const auto& g : gens_) {
        if (g.name.empty()) throw std::invalid_argument("generator name must be nonempty");
        if (!names.insert(g.name).second) throw std::invalid_argument("duplicate generator name '" + g.name + "'");
        if (g.degree < 2)
            throw std::invalid_argument("generator '" + g.name + "' has degree " + std::to_string(g.degree) +
                                        "; the algebra must be 1-reduced (degrees >= 2)");
        if (!ring.is_char2() && g.degree % 2 != 0)
            throw std::invalid_argument("generator '" + g.name + "' has odd degree " + std::to_string(g.degree) +
                                        "; over " + ring.name() + " the polynomial algebra must be evenly graded");
    }
}

std::optional<std::size_t> GeneratorSet::index_of(const std::string& name) const
{
    for (std::size_t i = 0; i < gens_.size(); ++i)
        if (gens_[i].name == name) return i;
    return std::nullopt;
}

bool Monomial::is_one() const
{
    return std::all_of(exponents.begin(), exponents.end(), [](int e) { return e == 0; });
}

int Monomial::exponent_sum() const { return std::accumulate(exponents.begin(), exponents.end(), 0); }

PolynomialAlgebra::PolynomialAlgebra(Ring ring, GeneratorSet gens) : ring_(ring), gens_(std::move(gens)) {}

Monomial PolynomialAlgebra::one_monomial() const { return Monomial{std::vector<int>(gens_.size(), 0)}; }

Monomial PolynomialAlgebra::generator_monomial(std::size_t g) const
{
    Monomial m = one_monomial();
    m.exponents.at(g) = 1;
    return m;
}

int PolynomialAlgebra::degree(const Monomial& m) const
{
    int d = 0;
    for (std::size_t i = 0; i < gens_.size(); ++i) d += m.exponents[i] * gens_[i].degree;
    return d;
}

std::optional<int> PolynomialAlgebra::degree(const Polynomial& p) const
{
    std::optional<int> d;
    for (const auto& [m, c] : p) {
        int dm = degree(m);
        if (d && *d != dm) throw std::invalid_argument("polynomial is not homogeneous: " + to_string(p));
        d = dm;
    }
    return d;
}

bool PolynomialAlgebra::is_homogeneous(const Polynomial& p) const
{
    std::optional<int> d;
    for (const auto& [m, c] : p) {
        if (d && *d != degree(m)) return false;
        d = degree(m);
    }
    return true;
}

Polynomial PolynomialAlgebra::monomial(const Monomial& m, Scalar c) const
{
    Polynomial p;
    if (!ring_.is_zero(c)) p.emplace(m, c);
    return p;
}

Monomial PolynomialAlgebra::multiply(const Monomial& a, const Monomial& b) const
{
    Monomial out = a;
    for (std::size_t i = 0; i < out.exponents.size(); ++i) out.exponents[i] += b.exponents[i];
    return out;
}

void PolynomialAlgebra::add_term(Polynomial& p, const Monomial& m, Scalar c) const
{
    if (ring_.is_zero(c)) return;
    auto [it, inserted] = p.try_emplace(m, c);
    if (inserted) return;
    it->second = ring_.add(it->second, c);
    if (ring_.is_zero(it->second)) p.erase(it);
}

Polynomial PolynomialAlgebra::multiply(const Polynomial& p, const Polynomial& q) const
{
    Polynomial out;
    for (const auto& [a, ca] : p)
        for (const auto& [b, cb] : q) add_term(out, multiply(a, b), ring_.mul(ca, cb));
    return out;
}

Polynomial PolynomialAlgebra::add(const Polynomial& p, const Polynomial& q) const
{
    Polynomial out = p;
    for (const auto& [m, c] : q) add_term(out, m, c);
    return out;
}

Polynomial PolynomialAlgebra::scale(const Polynomial& p, Scalar c) const
{
    Polynomial out;
    for (const auto& [m, x] : p) add_term(out, m, ring_.mul(x, c));
    return out;
}

Polynomial PolynomialAlgebra::power(const Polynomial& p, int e) const
{
    Polynomial out = one();
    for (int i = 0; i < e; ++i) out = multiply(out, p);
    return out;
}

void PolynomialAlgebra::basis_rec(std::size_t g, int remaining, Monomial& cur, std::vector<Monomial>& out) const
{
    if (g == gens_.size()) {
        if (remaining == 0) out.push_back(cur);
        return;
    }
    const int d = gens_[g].degree;
    for (int e = remaining / d; e >= 0; --e) {
        cur.exponents[g] = e;
        basis_rec(g + 1, remaining - e * d, cur, out);
    }
    cur.exponents[g] = 0;
}

std::vector<Monomial> PolynomialAlgebra::basis_in_degree(int n) const
{
    std::vector<Monomial> out;
    if (n < 0) return out;
    Monomial cur = one_monomial();
    basis_rec(0, n, cur, out);
    return out;
}

bool PolynomialAlgebra::is_decomposable(const Polynomial& p) const
{
    if (!is_homogeneous(p)) throw std::invalid_argument("is_decomposable: polynomial is not homogeneous");
    return std::all_of(p.begin(), p.end(), [](const auto& t) { return t.first.exponent_sum() >= 2; });
}

std::vector<std::size_t> PolynomialAlgebra::factors(const Monomial& m) const
{
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < m.exponents.size(); ++i)
        for (int e = 0; e < m.exponents[i]; ++e) out.push_back(i);
    return out;
}

std::string PolynomialAlgebra::to_string(const Monomial& m) const
{
    std::string out;
    for (std::size_t i = 0; i < m.exponents.size(); ++i) {
        if (m.exponents[i] == 0) continue;
        if (!out.empty()) out += "*";
        out += gens_[i].name;
        if (m.exponents[i] > 1) out += "^" + std::to_string(m.exponents[i]);
    }
    return out.empty() ? "1" : out;
}

std::string PolynomialAlgebra::to_string(const Polynomial& p) const
{
    if (p.empty()) return "0";
    // print in descending monomial order for readability
    std::string out;
    for (auto it = p.rbegin(); it != p.rend(); ++it) {
        if (!out.empty()) out += " + ";
        if (!ring_.is_one(it->second)) out += ring_.to_string(it->second) + "*";
        out += to_string(it->first);
    }
    return out;
}

Polynomial PolynomialAlgebra::parse(const std::string& text) const
{
    auto fail = [&](const std::string& why) {
        throw std::invalid_argument("cannot parse polynomial '" + text + "': " + why);
    };
    Polynomial result;
    std::stringstream summands(text);
    std::string summand;
    bool any = false;
    while (std::getline(summands, summand, '+')) {
        any = true;
        std::string s;
        for (char ch : summand) s += (ch == '*') ? ' ' : ch;
        std::stringstream factors_in(s);
        std::string tok;
        Monomial m = one_monomial();
        Scalar c = ring_.one();
        bool has_factor = false;
        while (factors_in >> tok) {
            has_factor = true;
            std::string base = tok;
            int exp = 1;
            if (auto caret = tok.find('^'); caret != std::string::npos) {
                base = tok.substr(0, caret);
                std::string e = tok.substr(caret + 1);
                if (e.empty() || !std::all_of(e.begin(), e.end(), ::isdigit)) fail("bad exponent in '" + tok + "'");
                exp = std::stoi(e);
            }
            if (!base.empty() && std::all_of(base.begin(), base.end(), ::isdigit)) {
                Scalar v = ring_.from_int(std::stoll(base));
                for (int i = 0; i < exp; ++i) c = ring_.mul(c, v);
                continue;
            }
            auto idx = gens_.index_of(base);
            if (!idx) fail("unknown generator '" + base + "'");
            m.exponents[*idx] += exp;
        }
        if (!has_factor) fail("empty summand");
        add_term(result, m, c);
    }
    if (!any) fail("empty expression");
    return result;
}

Steenrod::Steenrod(const PolynomialAlgebra& algebra, Sq1Table table) : algebra_(algebra), table_(std::move(table))
{
    if (!algebra_.ring().is_char2()) throw std::invalid_argument("Sq_1 tables require coefficients in F2");
    for (auto it = table_.begin(); it != table_.end();) {
        const auto& [g, image] = *it;
        if (g >= algebra_.n_generators()) throw std::invalid_argument("Sq_1 table: unknown generator index");
        const auto& gen = algebra_.generators()[g];
        if (!algebra_.is_homogeneous(image))
            throw std::invalid_argument("Sq_1(" + gen.name + ") is not homogeneous");
        auto d = algebra_.degree(image);
        if (d && *d != 2 * gen.degree - 1)
            throw std::invalid_argument("Sq_1(" + gen.name + ") must have degree " + std::to_string(2 * gen.degree - 1) +
                                        ", got " + std::to_string(*d));
        if (image.empty())
            it = table_.erase(it);
        else
            ++it;
    }
}

Polynomial Steenrod::on_generator(std::size_t g) const
{
    auto it = table_.find(g);
    return it == table_.end() ? Polynomial{} : it->second;
}

Polynomial Steenrod::apply(const Polynomial& p) const
{
    const auto& A = algebra_;
    Polynomial out;
    for (const auto& [m, c] : p) {
        // sum over generators with odd exponent: Sq_1(g) g^(2e-2) * prod_{j != i} g_j^(2 e_j)
        for (std::size_t i = 0; i < m.exponents.size(); ++i) {
            if (m.exponents[i] % 2 == 0) continue;
            Monomial rest = A.one_monomial();
            for (std::size_t j = 0; j < m.exponents.size(); ++j)
                rest.exponents[j] = (j == i) ? 2 * m.exponents[j] - 2 : 2 * m.exponents[j];
            Polynomial term = A.multiply(on_generator(i), A.monomial(rest, c));
            out = A.add(out, term);
        }
    }
    return out;
}

std::vector<std::string> Steenrod::warnings() const
{
    std::vector<std::string> out;
    for (std::size_t g = 0; g < algebra_.n_generators(); ++g) {
        Polynomial twice = apply(on_generator(g));
        if (!twice.empty())
            out.push_back("Sq_1 Sq_1(" + algebra_.generators()[g].name + ") = " + algebra_.to_string(twice) + " is nonzero");
    }
    return out;
}

bool Steenrod::decomposable_on_generators() const
{
    for (std::size_t g = 0; g < algebra_.n_generators(); ++g)
        if (!algebra_.is_decomposable(on_generator(g))) return false;
    return true;
}

Sq1Table parse_sq1_table(const PolynomialAlgebra& algebra, const std::map<std::string, std::string>& entries)
{
    Sq1Table table;
    for (const auto& [name, expr] : entries) {
        auto idx = algebra.generators().index_of(name);
        if (!idx) throw std::invalid_argument("Sq_1 table names unknown generator '" + name + "'");
        table[*idx] = algebra.parse(expr);
    }
    return table;
}

}  // namespace loopcoh::poly
