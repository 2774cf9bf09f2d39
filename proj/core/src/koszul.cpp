#include "loopcoh/koszul.hpp"

#include <map>

#include "loopcoh/linalg.hpp"

namespace loopcoh::koszul {

namespace {

using Exponents = std::vector<int>;

void monomials_rec(const std::vector<int>& deg, std::size_t i, int left, Exponents& cur, std::vector<Exponents>& out)
{
    if (i == deg.size()) {
        if (left == 0) out.push_back(cur);
        return;
    }
    for (int e = 0; e * deg[i] <= left; ++e) {
        cur[i] = e;
        monomials_rec(deg, i + 1, left - e * deg[i], cur, out);
    }
    cur[i] = 0;
}

std::vector<Exponents> monomials(const std::vector<int>& deg, int m)
{
    std::vector<Exponents> out;
    if (m < 0) return out;
    Exponents cur(deg.size(), 0);
    monomials_rec(deg, 0, m, cur, out);
    return out;
}

std::vector<std::vector<std::size_t>> subsets_of_size(std::size_t n, std::size_t q)
{
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> cur;
    auto rec = [&](auto&& self, std::size_t start) -> void {
        if (cur.size() == q) {
            out.push_back(cur);
            return;
        }
        for (std::size_t i = start; i < n; ++i) {
            cur.push_back(i);
            self(self, i + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

// Basis of the Koszul complex in homological degree q and internal degree m:
// pairs (monomial, subset) with |monomial| + sum deg(subset) = m.
struct Box {
    std::vector<std::pair<Exponents, std::vector<std::size_t>>> basis;
    std::map<std::pair<Exponents, std::vector<std::size_t>>, std::size_t> index;
};

Box make_box(const std::vector<int>& deg, std::size_t q, int m)
{
    Box b;
    for (const auto& s : subsets_of_size(deg.size(), q)) {
        int ds = 0;
        for (auto i : s) ds += deg[i];
        for (const auto& mono : monomials(deg, m - ds)) {
            b.index.emplace(std::make_pair(mono, s), b.basis.size());
            b.basis.emplace_back(mono, s);
        }
    }
    return b;
}

// d: K_q -> K_{q-1}, f e_S -> sum_k (-1)^k x_{s_k} f e_{S - s_k}
linalg::SparseMatrix differential(const linalg::Ring& ring, const Box& src, const Box& dst)
{
    linalg::SparseMatrix d(ring, dst.basis.size(), src.basis.size());
    for (std::size_t c = 0; c < src.basis.size(); ++c) {
        const auto& [mono, s] = src.basis[c];
        for (std::size_t k = 0; k < s.size(); ++k) {
            Exponents m2 = mono;
            ++m2[s[k]];
            std::vector<std::size_t> s2 = s;
            s2.erase(s2.begin() + static_cast<std::ptrdiff_t>(k));
            const std::size_t r = dst.index.at({m2, s2});
            d.add_to(r, c, ring.from_int(k % 2 == 0 ? 1 : -1));
        }
    }
    return d;
}

std::size_t rank_of(const linalg::SparseMatrix& m)
{
    if (m.n_rows() == 0 || m.n_cols() == 0) return 0;
    if (m.ring().is_field()) return linalg::rank_over_field(m);
    return linalg::smith_normal_form(m).rank;
}

}  // namespace

std::vector<ExteriorBasisElement> exterior_basis(const std::vector<int>& degrees, int n_max)
{
    std::vector<ExteriorBasisElement> out;
    for (std::size_t q = 0; q <= degrees.size(); ++q)
        for (const auto& s : subsets_of_size(degrees.size(), q)) {
            int d = 0;
            for (auto i : s) d += degrees[i] - 1;
            if (d <= n_max) out.push_back({s, d});
        }
    return out;
}

std::vector<long> oracle_dimensions(const std::vector<int>& degrees, int n_max)
{
    std::vector<long> dims(static_cast<std::size_t>(n_max + 1), 0);
    for (const auto& e : exterior_basis(degrees, n_max)) ++dims[static_cast<std::size_t>(e.degree)];
    return dims;
}

KoszulCheck oracle_small_resolution_check(const std::vector<int>& degrees, const linalg::Ring& ring, int n_max)
{
    if (degrees.size() > 4 || n_max > 12) throw ResourceGuard("Koszul oracle is limited to |U| <= 4 and n_max <= 12");
    for (int d : degrees)
        if (d < 1) throw std::invalid_argument("generator degrees must be positive");
    KoszulCheck out;
    out.ranks.assign(static_cast<std::size_t>(n_max + 1), 0);
    const std::size_t m_gens = degrees.size();
    const int m_max = n_max + static_cast<int>(m_gens);
    for (int m = 0; m <= m_max; ++m) {
        std::vector<Box> boxes;
        for (std::size_t q = 0; q <= m_gens; ++q) boxes.push_back(make_box(degrees, q, m));
        std::vector<std::size_t> rk(m_gens + 2, 0);  // rk[q] = rank of d: K_q -> K_{q-1}
        for (std::size_t q = 1; q <= m_gens; ++q) rk[q] = rank_of(differential(ring, boxes[q], boxes[q - 1]));
        for (std::size_t q = 0; q <= m_gens; ++q) {
            const long h = static_cast<long>(boxes[q].basis.size()) - static_cast<long>(rk[q]) - static_cast<long>(rk[q + 1]);
            const long expect = (q == 0 && m == 0) ? 1 : 0;
            bool torsion = false;
            if (!ring.is_field() && q + 1 <= m_gens && !boxes[q].basis.empty() && !boxes[q + 1].basis.empty())
                torsion = !linalg::smith_normal_form(differential(ring, boxes[q + 1], boxes[q])).torsion().empty();
            if (h != expect || torsion) {
                out.exact = false;
                out.defects.push_back("q=" + std::to_string(q) + " internal=" + std::to_string(m));
            }
        }
        // Tor_{q,m} = (K (x) k)_{q,m}: the generators with empty monomial part
        for (std::size_t q = 0; q <= m_gens; ++q)
            for (const auto& [mono, s] : boxes[q].basis) {
                bool unit = true;
                for (int e : mono) unit = unit && e == 0;
                const int n = m - static_cast<int>(q);
                if (unit && n <= n_max) ++out.ranks[static_cast<std::size_t>(n)];
            }
    }
    return out;
}

}  // namespace loopcoh::koszul
