#include "loopcoh/homology.hpp"

#include <algorithm>
#include <stdexcept>

namespace loopcoh::homology {

using linalg::Ring;

BarComplex::BarComplex(const bar::BarAlgebra& A, Truncation box) : A_(A), box_(box) {}

const std::map<int, BarComplex::Block>& BarComplex::blocks(int n)
{
    if (n < 0 || n > box_.n_max + 1) throw std::out_of_range("bar degree outside the truncation box");
    if (auto it = blocks_.find(n); it != blocks_.end()) return it->second;
    std::map<int, Block> out;
    if (n == 0) {
        out[0].words.push_back({});
    } else {
        for (auto& w : bar::bar_basis(A_, n, box_.w_max)) out[bar::word_internal_degree(A_, w)].words.push_back(std::move(w));
    }
    for (auto& [m, b] : out)
        for (std::size_t i = 0; i < b.words.size(); ++i) b.index.emplace(b.words[i], i);
    return blocks_.emplace(n, std::move(out)).first->second;
}

BarComplex::Block& BarComplex::block(int n, int m)
{
    blocks(n);
    return blocks_[n][m];
}

std::vector<int> BarComplex::internal_degrees(int n)
{
    std::vector<int> out;
    for (const auto& [m, b] : blocks(n))
        if (!b.words.empty()) out.push_back(m);
    return out;
}

const std::vector<Word>& BarComplex::basis(int n, int m) { return block(n, m).words; }

std::optional<std::size_t> BarComplex::index(int n, int m, const Word& w)
{
    const Block& b = block(n, m);
    auto it = b.index.find(w);
    if (it == b.index.end()) return std::nullopt;
    return it->second;
}

const SparseMatrix& BarComplex::d(int n, int m)
{
    if (auto it = d_.find({n, m}); it != d_.end()) return it->second;
    const Block& src = block(n, m);
    const Block& dst = block(n + 1, m);
    SparseMatrix out(A_.ring(), dst.words.size(), src.words.size());
    if (n > 0) {
        for (std::size_t c = 0; c < src.words.size(); ++c) {
            linalg::SparseColumn col;
            for (const auto& [w, s] : bar::bar_differential(A_, src.words[c])) {
                auto it = dst.index.find(w);
                if (it == dst.index.end()) throw std::logic_error("bar differential leaves the truncation: " + bar::to_string(A_, w));
                col.emplace_back(it->second, s);
            }
            out.set_column(c, std::move(col));
        }
    }
    ++built_;
    return d_.emplace(std::make_pair(n, m), std::move(out)).first->second;
}

void BarComplex::import_matrix(int n, int m, SparseMatrix d)
{
    if (d.n_rows() != block(n + 1, m).words.size() || d.n_cols() != block(n, m).words.size() || !(d.ring() == A_.ring()))
        throw std::invalid_argument("imported matrix does not match the bar basis");
    d_.insert_or_assign({n, m}, std::move(d));
}

ChainSlice BarComplex::slice(int n, int m)
{
    SparseMatrix d_in = n > 0 ? d(n - 1, m) : SparseMatrix(A_.ring(), basis(n, m).size(), 0);
    ChainSlice s{n, m, {}, basis(n, m), basis(n + 1, m), std::move(d_in), d(n, m)};
    if (n > 0) s.basis_prev = basis(n - 1, m);
    return s;
}

DenseVector BarComplex::to_vector(int n, int m, const BarElement& x)
{
    const Block& b = block(n, m);
    DenseVector v(b.words.size(), A_.ring().zero());
    for (const auto& [w, c] : x) {
        auto it = b.index.find(w);
        if (it == b.index.end()) throw std::invalid_argument("word outside block: " + bar::to_string(A_, w));
        v[it->second] = c;
    }
    return v;
}

BarElement BarComplex::to_element(int n, int m, const DenseVector& v)
{
    const Block& b = block(n, m);
    BarElement x;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (!A_.ring().is_zero(v[i])) x.emplace(b.words.at(i), v[i]);
    return x;
}

namespace {

std::size_t rank_of(const SparseMatrix& m)
{
    if (m.n_rows() == 0 || m.n_cols() == 0) return 0;
    return m.ring().is_field() ? linalg::rank_over_field(m) : linalg::smith_normal_form(m).rank;
}

// The field used for coordinates: Q for Z, the ring itself otherwise.
Ring coordinate_field(const Ring& r) { return r.is_field() ? r : Ring::rationals(); }

SparseMatrix columns_matrix(const Ring& ring, std::size_t rows, const std::vector<DenseVector>& cols)
{
    SparseMatrix m(ring, rows, cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c)
        for (std::size_t r = 0; r < rows; ++r)
            if (!ring.is_zero(cols[c][r])) m.set(r, c, cols[c][r]);
    return m;
}

// Kernel basis over a field by dense row reduction.
std::vector<DenseVector> kernel_basis(const SparseMatrix& d)
{
    const Ring& F = d.ring();
    const std::size_t R = d.n_rows(), C = d.n_cols();
    std::vector<DenseVector> rows(R, DenseVector(C, F.zero()));
    for (std::size_t c = 0; c < C; ++c)
        for (const auto& [r, v] : d.column(c)) rows[r][c] = v;
    std::vector<std::size_t> pivot_col;
    std::size_t rank = 0;
    for (std::size_t c = 0; c < C && rank < R; ++c) {
        std::size_t p = rank;
        while (p < R && F.is_zero(rows[p][c])) ++p;
        if (p == R) continue;
        std::swap(rows[p], rows[rank]);
        const Scalar inv = F.inv(rows[rank][c]);
        for (auto& x : rows[rank]) x = F.mul(x, inv);
        for (std::size_t r = 0; r < R; ++r) {
            if (r == rank || F.is_zero(rows[r][c])) continue;
            const Scalar f = rows[r][c];
            for (std::size_t k = 0; k < C; ++k) rows[r][k] = F.sub(rows[r][k], F.mul(f, rows[rank][k]));
        }
        pivot_col.push_back(c);
        ++rank;
    }
    std::vector<bool> is_pivot(C, false);
    for (auto c : pivot_col) is_pivot[c] = true;
    std::vector<DenseVector> out;
    for (std::size_t f = 0; f < C; ++f) {
        if (is_pivot[f]) continue;
        DenseVector v(C, F.zero());
        v[f] = F.one();
        for (std::size_t i = 0; i < pivot_col.size(); ++i) v[pivot_col[i]] = F.neg(rows[i][f]);
        out.push_back(std::move(v));
    }
    return out;
}

std::string subset_label(const bar::PolynomialBarAlgebra& A, const std::vector<std::size_t>& s)
{
    std::string out = "y[";
    for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + A.algebra().generators()[s[i]].name;
    return out + "]";
}

std::string clip(std::string s)
{
    if (s.size() > 240) s = s.substr(0, 240) + "...";
    return s;
}

}  // namespace

RanksReport homology_ranks(BarComplex& C)
{
    RanksReport out;
    out.box = C.box();
    const int n_max = out.box.n_max;
    out.ranks.assign(static_cast<std::size_t>(std::max(n_max, 0) + 1), 0);
    if (out.box.w_max < n_max + 1) {
        out.conclusive = false;
        out.reason = "weight cap " + std::to_string(out.box.w_max) + " does not exceed max degree " + std::to_string(n_max) +
                     "; words of the bar complex are cut off";
    }
    const Ring& ring = C.algebra().ring();
    for (int n = 0; n <= n_max; ++n)
        for (int m : C.internal_degrees(n)) {
            const long dim = static_cast<long>(C.basis(n, m).size());
            const long r_out = static_cast<long>(rank_of(C.d(n, m)));
            long r_in = 0;
            if (n > 0) {
                const SparseMatrix& din = C.d(n - 1, m);
                if (!ring.is_field() && din.n_rows() && din.n_cols()) {
                    auto snf = linalg::smith_normal_form(din);
                    r_in = static_cast<long>(snf.rank);
                    for (auto t : snf.torsion()) out.torsion[n].push_back(t);
                } else {
                    r_in = static_cast<long>(rank_of(din));
                }
            }
            const long h = dim - r_out - r_in;
            if (h) out.block_ranks[n][m] = h;
            out.ranks[static_cast<std::size_t>(n)] += h;
        }
    for (auto& [n, t] : out.torsion) std::sort(t.begin(), t.end());
    return out;
}

std::size_t HomologyReport::flagged() const
{
    return static_cast<std::size_t>(std::count_if(table.begin(), table.end(), [](const RingEntry& e) { return !e.valid; }));
}

std::optional<std::size_t> HomologyReport::class_of_subset(const std::vector<std::size_t>& subset) const
{
    for (std::size_t i = 0; i < classes.size(); ++i)
        if (classes[i].canonical && classes[i].subset == subset) return i;
    return std::nullopt;
}

const RingEntry* HomologyReport::entry(std::size_t left, std::size_t right) const
{
    for (const auto& e : table)
        if (e.left == left && e.right == right) return &e;
    return nullptr;
}

HomologyReport homology_ring(BarComplex& C, const bar::PolynomialBarAlgebra& A, ProductKind kind,
                             const hirsch::HirschOpTable* table)
{
    if (&C.algebra() != static_cast<const bar::BarAlgebra*>(&A)) throw std::invalid_argument("bar complex built on another algebra");
    if (kind == ProductKind::muE && !table) throw std::invalid_argument("mu_E needs an operation table");
    HomologyReport rep;
    rep.ranks = homology_ranks(C);
    rep.product = kind == ProductKind::shuffle ? "shuffle" : (table->is_trivial() ? "muE(trivial)" : "muE(Sq)");
    const Ring& ring = A.ring();
    const Ring field = coordinate_field(ring);
    const int n_max = C.box().n_max;
    const auto& gens = A.algebra().generators();

    std::map<std::pair<int, int>, linalg::ImageReducer> reducers;
    auto reducer = [&](int n, int m) -> const linalg::ImageReducer& {
        auto it = reducers.find({n, m});
        if (it == reducers.end()) {
            SparseMatrix img = n > 0 ? C.d(n - 1, m) : SparseMatrix(ring, C.basis(n, m).size(), 0);
            it = reducers.emplace(std::make_pair(n, m), linalg::ImageReducer(img)).first;
        }
        return it->second;
    };
    // reduced vectors of the classes, per block
    std::map<std::pair<int, int>, std::vector<std::pair<std::size_t, DenseVector>>> reduced;

    auto try_add = [&](int n, int m, ClassInfo info) -> bool {
        if (!bar::bar_differential(A, info.representative).empty()) {
            rep.notes.push_back("representative " + info.label + " is not a cocycle");
            return false;
        }
        DenseVector r = reducer(n, m).reduce(C.to_vector(n, m, info.representative)).representative;
        auto& have = reduced[{n, m}];
        std::vector<DenseVector> cols;
        for (const auto& [i, v] : have) cols.push_back(v);
        cols.push_back(r);
        if (rank_of(columns_matrix(field, r.size(), cols)) != cols.size()) return false;
        have.emplace_back(rep.classes.size(), std::move(r));
        rep.classes.push_back(std::move(info));
        return true;
    };

    for (int n = 1; n <= n_max; ++n)
        for (int m : C.internal_degrees(n)) {
            long expect = 0;
            if (auto it = rep.ranks.block_ranks.find(n); it != rep.ranks.block_ranks.end())
                if (auto jt = it->second.find(m); jt != it->second.end()) expect = jt->second;
            if (expect == 0) continue;
            long found = 0;
            // canonical classes: subsets with the right degrees
            const std::size_t g = gens.size();
            for (std::size_t mask = 1; mask < (std::size_t{1} << g); ++mask) {
                std::vector<std::size_t> s;
                int deg = 0, internal = 0;
                for (std::size_t i = 0; i < g; ++i)
                    if (mask >> i & 1) {
                        s.push_back(i);
                        deg += gens[i].degree - 1;
                        internal += gens[i].degree;
                    }
                if (deg != n || internal != m) continue;
                BarElement x = bar::single(ring, {});
                for (auto i : s) x = bar::shuffle_product(A, x, bar::single(ring, {A.letter(A.algebra().generator_monomial(i))}));
                ClassInfo info{n, m, subset_label(A, s), s, true, std::move(x)};
                if (try_add(n, m, std::move(info))) ++found;
            }
            if (found < expect) {
                if (!ring.is_field()) {
                    rep.classes_complete = false;
                    rep.notes.push_back("classes in degree " + std::to_string(n) + ", internal " + std::to_string(m) +
                                        " are not spanned by symmetric cocycles");
                    continue;
                }
                int k = 0;
                for (const auto& v : kernel_basis(C.d(n, m))) {
                    if (found == expect) break;
                    ClassInfo info{n, m, "c" + std::to_string(n) + "." + std::to_string(m) + "." + std::to_string(k++), {}, false,
                                   C.to_element(n, m, reducer(n, m).reduce(v).representative)};
                    if (try_add(n, m, std::move(info))) ++found;
                }
                if (found < expect) rep.classes_complete = false;
            }
        }

    for (std::size_t i = 0; i < rep.classes.size(); ++i)
        for (std::size_t j = 0; j < rep.classes.size(); ++j) {
            const ClassInfo& a = rep.classes[i];
            const ClassInfo& b = rep.classes[j];
            if (a.degree + b.degree > n_max) continue;
            RingEntry e;
            e.left = i;
            e.right = j;
            e.degree = a.degree + b.degree;
            e.internal = a.internal + b.internal;
            BarElement z;
            try {
                z = kind == ProductKind::shuffle ? bar::shuffle_product(A, a.representative, b.representative)
                                                 : bar::muE_product(A, *table, a.representative, b.representative);
            } catch (const hirsch::MissingOperation& ex) {
                e.valid = false;
                e.witness = ex.what();
                rep.table.push_back(std::move(e));
                continue;
            }
            const BarElement dz = bar::bar_differential(A, z);
            if (!dz.empty()) {
                e.valid = false;
                e.witness = clip("d(" + a.label + " * " + b.label + ") = " + bar::to_string(A, dz));
                rep.table.push_back(std::move(e));
                continue;
            }
            // Sq terms lower the internal degree, so the product may spread over blocks
            std::map<int, BarElement> parts;
            bool inside = true;
            for (const auto& [w, c] : z) {
                if (bar::word_degree(A, w) != e.degree) inside = false;
                parts[bar::word_internal_degree(A, w)].emplace(w, c);
            }
            if (!inside) {
                e.valid = false;
                e.witness = "product is not homogeneous";
                rep.table.push_back(std::move(e));
                continue;
            }
            for (const auto& [m, part] : parts) {
                DenseVector r = reducer(e.degree, m).reduce(C.to_vector(e.degree, m, part)).representative;
                if (std::all_of(r.begin(), r.end(), [&](const Scalar& s) { return ring.is_zero(s); })) continue;
                const auto& have = reduced[{e.degree, m}];
                std::vector<DenseVector> cols;
                for (const auto& [k, v] : have) cols.push_back(v);
                auto sol = cols.empty() ? std::nullopt : linalg::solve_linear(field, cols, r);
                if (!sol) {
                    e.valid = false;
                    e.witness = "product is not in the span of the class representatives";
                    break;
                }
                for (std::size_t k = 0; k < have.size(); ++k) {
                    const Scalar c = (*sol)[k];
                    if (field.is_zero(c)) continue;
                    if (c.den != 1) {
                        e.valid = false;
                        e.witness = "non-integral class coordinates";
                    }
                    e.value.emplace_back(have[k].first, c);
                }
            }
            std::sort(e.value.begin(), e.value.end());
            rep.table.push_back(std::move(e));
        }
    return rep;
}

std::string to_string(Verdict::Kind k)
{
    switch (k) {
    case Verdict::Kind::exterior:
        return "exterior";
    case Verdict::Kind::not_exterior:
        return "not_exterior";
    case Verdict::Kind::inconclusive:
        return "inconclusive";
    }
    return "?";
}

Verdict exterior_verdict(const HomologyReport& report, const bar::PolynomialBarAlgebra& A, const std::vector<long>& oracle)
{
    Verdict v;
    const Ring& ring = A.ring();
    const auto& gens = A.algebra().generators();
    if (!report.ranks.conclusive) {
        v.reason = report.ranks.reason;
        return v;
    }
    for (std::size_t n = 0; n < report.ranks.ranks.size(); ++n) {
        const long want = n < oracle.size() ? oracle[n] : 0;
        if (report.ranks.ranks[n] != want) {
            v.kind = Verdict::Kind::not_exterior;
            v.witness = "rank H^" + std::to_string(n) + " = " + std::to_string(report.ranks.ranks[n]) + ", exterior algebra has " +
                        std::to_string(want);
            return v;
        }
    }
    if (!report.ranks.torsion.empty()) {
        v.kind = Verdict::Kind::not_exterior;
        v.witness = "torsion in degree " + std::to_string(report.ranks.torsion.begin()->first);
        return v;
    }
    if (const auto k = report.flagged()) {
        v.reason = std::to_string(k) + " ring entries failed their checks";
        return v;
    }
    if (!report.classes_complete) {
        v.reason = "class representatives incomplete";
        return v;
    }
    for (const auto& c : report.classes)
        if (!c.canonical) {
            v.reason = "class " + c.label + " has no symmetric representative";
            return v;
        }
    for (const auto& e : report.table) {
        const ClassInfo& a = report.classes[e.left];
        const ClassInfo& b = report.classes[e.right];
        std::vector<std::pair<std::size_t, Scalar>> expect;
        std::vector<std::size_t> uni;
        std::set_union(a.subset.begin(), a.subset.end(), b.subset.begin(), b.subset.end(), std::back_inserter(uni));
        if (uni.size() == a.subset.size() + b.subset.size()) {
            long long e_sign = 0;
            for (auto s : a.subset)
                for (auto t : b.subset)
                    if (t < s) e_sign += static_cast<long long>(gens[s].degree - 1) * (gens[t].degree - 1);
            auto target = report.class_of_subset(uni);
            if (!target) {
                v.reason = "missing class for " + subset_label(A, uni);
                return v;
            }
            expect.emplace_back(*target, ring.is_char2() ? ring.one() : ring.sign(e_sign));
        }
        if (e.value != expect) {
            auto render = [&](const std::vector<std::pair<std::size_t, Scalar>>& val) {
                if (val.empty()) return std::string("0");
                std::string s;
                for (const auto& [k, c] : val) {
                    if (!s.empty()) s += " + ";
                    s += (ring.is_one(c) ? "" : ring.to_string(c) + "*") + report.classes[k].label;
                }
                return s;
            };
            v.kind = Verdict::Kind::not_exterior;
            v.witness = a.label + " * " + b.label + " = " + render(e.value) + ", exterior algebra gives " + render(expect);
            return v;
        }
    }
    v.kind = Verdict::Kind::exterior;
    return v;
}

}  // namespace loopcoh::homology
