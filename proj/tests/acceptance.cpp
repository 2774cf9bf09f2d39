// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

#include <unistd.h>

#include "loopcoh/cli/suites.hpp"
#include "loopcoh/homology.hpp"
#include "loopcoh/koszul.hpp"
#include "support.hpp"

using namespace loopcoh;
using linalg::Ring;
using poly::Monomial;
using poly::Polynomial;
using testing_support::make_algebra;

namespace {

const Ring F2 = Ring::prime_field(2);

struct Outcome {
    bool pass = true;
    std::ostringstream detail;
    void require(bool ok, const std::string& what)
    {
        if (!ok) {
            pass = false;
            detail << " [failed: " << what << "]";
        }
    }
};

std::vector<int> degrees_of(const poly::PolynomialAlgebra& A)
{
    std::vector<int> d;
    for (std::size_t i = 0; i < A.n_generators(); ++i) d.push_back(A.generators()[i].degree);
    return d;
}

poly::Steenrod steenrod(const poly::PolynomialAlgebra& A, const std::map<std::string, std::string>& t)
{
    return poly::Steenrod(A, poly::parse_sq1_table(A, t));
}

bool is_torsion_free(const Ring& R) { return R.kind() != linalg::RingKind::prime_field; }

std::string ranks_string(const std::vector<long>& r)
{
    std::string s;
    for (auto k : r) s += (s.empty() ? "" : ",") + std::to_string(k);
    return s;
}

void criterion_1(Outcome& o)
{
    for (const auto& [name, A] : testing_support::standard_algebras()) {
        const auto t0 = std::chrono::steady_clock::now();
        bar::PolynomialBarAlgebra B(A);
        homology::BarComplex C(B, {10, 11});
        const auto r = homology::homology_ranks(C);
        const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const auto oracle = koszul::oracle_dimensions(degrees_of(A), 10);
        o.require(r.conclusive, name + " inconclusive: " + r.reason);
        o.require(r.ranks == oracle, name + " ranks " + ranks_string(r.ranks) + " vs oracle " + ranks_string(oracle));
        o.require(s <= 60.0, name + " took " + std::to_string(s) + " s");
        o.detail << ' ' << name << "=(" << ranks_string(r.ranks) << ")";
    }
}

void criterion_2(Outcome& o)
{
    for (const auto& [name, A] : testing_support::standard_algebras()) {
        if (!is_torsion_free(A.ring())) continue;
        bar::PolynomialBarAlgebra B(A);
        homology::BarComplex C(B, {10, 11});
        const auto h = homology::homology_ring(C, B, homology::ProductKind::shuffle);
        const auto v = homology::exterior_verdict(h, B, koszul::oracle_dimensions(degrees_of(A), 10));
        o.require(v.kind == homology::Verdict::Kind::exterior, name + " verdict " + to_string(v.kind) + " " + v.witness + v.reason);
        o.require(h.ranks.torsion.empty(), name + " has torsion");
        o.detail << ' ' << name << '=' << to_string(v.kind);
    }
}

void criterion_3(Outcome& o)
{
    const auto A = make_algebra(F2, {{"u2", 2}, {"u3", 3}});
    const auto t = hirsch::HirschOpTable::sq_structure(steenrod(A, {{"u2", "u3"}}));
    bar::PolynomialBarAlgebra B(A);
    homology::BarComplex C(B, {10, 11});
    const auto h = homology::homology_ring(C, B, homology::ProductKind::muE, &t);
    const auto a = h.class_of_subset({0}), b = h.class_of_subset({1});
    o.require(a && b, "canonical classes of u2, u3 present");
    if (a && b) {
        const auto* e = h.entry(*a, *a);
        o.require(e && e->valid, "entry [u2]*[u2] computed and cocycle-checked");
        o.require(e && e->value == std::vector<std::pair<std::size_t, linalg::Scalar>>{{*b, F2.one()}}, "[u2]^2 = [u3]");
    }
    const auto v = homology::exterior_verdict(h, B, koszul::oracle_dimensions(degrees_of(A), 10));
    o.require(v.kind == homology::Verdict::Kind::not_exterior, "verdict " + to_string(v.kind));
    o.detail << " witness: " << v.witness;
}

void criterion_4(Outcome& o)
{
    struct Case {
        std::string name;
        std::vector<poly::Generator> gens;
        std::map<std::string, std::string> sq1;
    };
    const std::vector<Case> cases{{"F2[u2] Sq1=0", {{"u2", 2}}, {}},
                                  {"F2[u2,u3] Sq1=0", {{"u2", 2}, {"u3", 3}}, {}},
                                  {"F2[u2,u3] Sq1u3=u2u3", {{"u2", 2}, {"u3", 3}}, {{"u3", "u2*u3"}}},
                                  {"F2[u2,u5] Sq1u5=u2^2u5", {{"u2", 2}, {"u5", 5}}, {{"u5", "u2^2*u5"}}}};
    for (const auto& c : cases) {
        const auto A = make_algebra(F2, c.gens);
        const auto sq = steenrod(A, c.sq1);
        o.require(sq.decomposable_on_generators(), c.name + " Sq1 decomposable");
        const auto t = hirsch::HirschOpTable::sq_structure(sq);
        bar::PolynomialBarAlgebra B(A);
        homology::BarComplex C(B, {8, 9});
        const auto h = homology::homology_ring(C, B, homology::ProductKind::muE, &t);
        const auto v = homology::exterior_verdict(h, B, koszul::oracle_dimensions(degrees_of(A), 8));
        o.require(h.flagged() == 0, c.name + " has " + std::to_string(h.flagged()) + " flagged entries");
        o.require(v.kind == homology::Verdict::Kind::exterior, c.name + " verdict " + to_string(v.kind) + " " + v.witness + v.reason);
        o.detail << " {" << c.name << ": " << to_string(v.kind) << ", " << h.table.size() << " entries}";
    }
}

void criterion_5(Outcome& o)
{
    const std::vector<std::vector<poly::Generator>> inputs{{{"x2", 2}, {"x4", 4}}, {{"u2", 2}, {"u3", 3}}, {{"a", 2}, {"b", 2}, {"c", 4}}};
    for (const auto& g : inputs) {
        resolution::HirschResolution R(make_algebra(F2, g));
        const auto d2 = cli::rh_differential_suite(R, 3, 12);
        const auto hex = cli::hexagon_suite(R, 1000);
        const std::string name = R.algebra().to_string(Monomial{std::vector<int>(g.size(), 1)});
        o.require(d2.failed == 0, name + " d^2 failures " + std::to_string(d2.failed));
        o.require(hex.failed == 0 && hex.checked == g.size() * g.size() * g.size(), name + " hexagon");
        o.detail << " {" << name << ": d^2 " << d2.checked << " words, hexagon " << hex.checked << " triples}";
    }
}

void criterion_6(Outcome& o)
{
    for (const auto& g : std::vector<std::vector<poly::Generator>>{{{"x2", 2}, {"x4", 4}}, {{"u2", 2}, {"u3", 3}}}) {
        resolution::HirschResolution R(make_algebra(F2, g));
        const auto s = cli::siteration_suite(R, 10, 8);
        o.require(s.failed == 0, std::to_string(s.failed) + " failures, first " + (s.failures.empty() ? "" : s.failures[0]));
        o.detail << " {" << g[0].name << "," << g[1].name << ": " << s.checked << " elements, max n " << s.counts[0].second << "}";
    }
}

// Independent Sq_{1,1}: sum over equal factor pairs of Sq_1(factor) times the remaining factors.
Polynomial oracle_sq11(const poly::Steenrod& sq, const Monomial& a, const Monomial& b)
{
    const auto& A = sq.algebra();
    Polynomial out;
    const auto fa = A.factors(a), fb = A.factors(b);
    for (std::size_t i = 0; i < fa.size(); ++i)
        for (std::size_t j = 0; j < fb.size(); ++j) {
            if (fa[i] != fb[j]) continue;
            Polynomial t = sq.on_generator(fa[i]);
            for (std::size_t x = 0; x < fa.size(); ++x)
                if (x != i) t = A.multiply(t, A.generator(fa[x]));
            for (std::size_t y = 0; y < fb.size(); ++y)
                if (y != j) t = A.multiply(t, A.generator(fb[y]));
            out = A.add(out, t);
        }
    return out;
}

Polynomial oracle_sq11(const poly::Steenrod& sq, const Polynomial& a, const Polynomial& b)
{
    const auto& A = sq.algebra();
    Polynomial out;
    for (const auto& [ma, ca] : a)
        for (const auto& [mb, cb] : b) out = A.add(out, oracle_sq11(sq, ma, mb));
    return out;
}

void criterion_7(Outcome& o)
{
    const int bound = 10;
    const auto A = make_algebra(F2, {{"u2", 2}, {"u3", 3}});
    const auto sq = steenrod(A, {{"u2", "u3"}, {"u3", "u2*u3"}});
    const auto t = hirsch::HirschOpTable::sq_structure(sq);
    const auto deriv = hirsch::check_derivation_relations(t, bound, {{2, 1}, {1, 2}});
    o.require(deriv.empty(), std::to_string(deriv.size()) + " derivation violations");

    std::set<std::vector<Monomial>> expected, got;
    std::vector<Monomial> ms;
    for (int d = 2; d <= bound; ++d)
        for (auto& m : A.basis_in_degree(d)) ms.push_back(m);
    for (const auto& a : ms)
        for (const auto& b : ms)
            for (const auto& c : ms) {
                if (A.degree(a) + A.degree(b) + A.degree(c) > bound) continue;
                const auto pa = A.monomial(a), pb = A.monomial(b), pc = A.monomial(c);
                if (oracle_sq11(sq, oracle_sq11(sq, pa, pb), pc) != oracle_sq11(sq, pa, oracle_sq11(sq, pb, pc)))
                    expected.insert({a, b, c});
            }
    for (const auto& v : hirsch::check_associativity_relation(t, 1, 1, 1, {}, bound)) got.insert(v.args);
    o.require(got == expected, "associativity set " + std::to_string(got.size()) + " vs predicted " + std::to_string(expected.size()));
    o.detail << " derivation (2,1),(1,2): " << deriv.size() << " violations; associativity (1,1,1): " << got.size()
             << " violations = predicted " << expected.size();
}

void criterion_8(Outcome& o)
{
    const auto A = make_algebra(F2, {{"u2", 2}, {"u3", 3}});
    const auto t = hirsch::HirschOpTable::sq_structure(steenrod(A, {{"u2", "u3"}, {"u3", "u2*u3"}}));
    bar::PolynomialBarAlgebra B(A);
    const auto first = cli::mue_chain_map_tally(B, t, 8, 5);
    bar::PolynomialBarAlgebra B2(A);
    const auto second = cli::mue_chain_map_tally(B2, t, 8, 5);
    o.require(first.by_weight == second.by_weight, "tallies differ between runs");
    std::size_t high = 0;
    for (const auto& [w, cf] : first.by_weight) {
        if (w.first + w.second <= 3) {
            o.require(cf.second == 0, "weight (" + std::to_string(w.first) + "," + std::to_string(w.second) + ") has " +
                                          std::to_string(cf.second) + " violations");
            o.require(cf.first > 0, "weight (" + std::to_string(w.first) + "," + std::to_string(w.second) + ") not exercised");
        } else {
            high += cf.second;
        }
        o.detail << " (" << w.first << "," << w.second << "):" << cf.second << "/" << cf.first;
    }
    o.detail << "; higher-weight violations " << high << " (stable)";
}

void criterion_9(Outcome& o)
{
    for (const auto& [name, A] : testing_support::standard_algebras()) {
        bar::PolynomialBarAlgebra B(A);
        const auto d2 = cli::bar_differential_suite(B, 12);
        const auto sh = cli::shuffle_suite(B, 10);
        const auto as = cli::shuffle_associativity_suite(B, 10);
        o.require(d2.failed == 0, name + " d^2");
        o.require(sh.failed == 0, name + " shuffle commutativity/Leibniz");
        o.require(as.failed == 0, name + " shuffle associativity");
        o.detail << " {" << name << ": " << d2.checked << "/" << sh.checked << "/" << as.checked << "}";
    }
}

std::string slurp(const std::filesystem::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

void criterion_10(Outcome& o)
{
    const auto dir = std::filesystem::temp_directory_path() / ("loopcoh-acceptance-" + std::to_string(::getpid()));
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    const std::vector<std::pair<std::string, std::string>> configs{
        {"zx2", R"({"ring":"Z","generators":[{"name":"x2","degree":2},{"name":"x4","degree":4}],"bounds":{"max_degree":8}})"},
        {"u23", R"({"ring":"F2","generators":[{"name":"u2","degree":2},{"name":"u3","degree":3}],"sq1":{"u2":"u3"},"bounds":{"max_degree":8}})"}};
    std::size_t compared = 0;
    for (const auto& [cname, text] : configs) {
        const auto cfg = dir / (cname + ".json");
        std::ofstream(cfg) << text;
        for (const std::string cmd : {"ranks", "ring", "check-exterior", "oracle-compare", "verify"}) {
            const auto cache = dir / ("cache-" + cname);
            std::vector<std::string> outs;
            for (int run = 0; run < 3; ++run) {
                const auto out = dir / (cname + "-" + cmd + "-" + std::to_string(run) + ".json");
                std::string line = std::string(LOOPCOH_CLI_PATH) + " " + cmd + " --config " + cfg.string() + " --json " + out.string();
                if (run > 0) line += " --cache-dir " + cache.string();
                line += " > /dev/null";
                const int status = std::system(line.c_str());
                o.require(status != -1 && WIFEXITED(status) && WEXITSTATUS(status) == 0, cname + " " + cmd + " exit status");
                outs.push_back(slurp(out));
            }
            // run 0: no cache, run 1: cold cache, run 2: warm cache
            o.require(!outs[0].empty() && outs[0] == outs[1] && outs[1] == outs[2], cname + " " + cmd + " reports differ");
            ++compared;
        }
        bool cached = false;
        for (const auto& f : std::filesystem::directory_iterator(dir / ("cache-" + cname))) cached = cached || f.is_regular_file();
        o.require(cached, cname + " cache not populated");
    }
    o.detail << ' ' << compared << " command/config pairs byte-identical across no cache, cold cache, warm cache";
    std::filesystem::remove_all(dir);
}

}  // namespace

int main()
{
    const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
        {"oracle rank equality", criterion_1},
        {"torsion-free inputs are exterior under the shuffle product", criterion_2},
        {"Sq witness [u2]^2 = [u3] gives not_exterior", criterion_3},
        {"decomposable or zero Sq1 gives exterior under mu_Sq", criterion_4},
        {"RH d^2 = 0 and hexagon", criterion_5},
        {"s-iteration terminates in resolution degrees -1, -2", criterion_6},
        {"Hirsch relation violation sets", criterion_7},
        {"mu_E chain map at low weights", criterion_8},
        {"bar and shuffle properties", criterion_9},
        {"CLI reports independent of the cache", criterion_10},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            criteria[i].second(o);
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail << " [exception: " << e.what() << "]";
        }
        const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (!o.pass) ++failures;
        std::printf("criterion %2zu %s: %s (%.2f s)%s\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first.c_str(), s,
                    o.detail.str().c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria failed\n", failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
