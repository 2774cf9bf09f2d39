#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "loopcoh/hirsch_ops.hpp"
#include "loopcoh/polynomial.hpp"

namespace loopcoh::resolution {

using poly::Polynomial;
using poly::PolynomialAlgebra;

using GenId = std::uint32_t;
/// Monomial of the free tensor algebra T(V); the empty word is the unit.
using Word = std::vector<GenId>;
/// Element over F_2: a set of words (addition is symmetric difference).
using Element = std::set<Word>;

void add_into(Element& x, const Word& w);
void add_into(Element& x, const Element& y);
Element product(const Element& x, const Element& y);

enum class GenKind { v0, egen, cup2 };

struct GenInfo {
    GenKind kind = GenKind::v0;
    std::size_t v0 = 0;                // generator index for V0
    int p = 0, q = 0;                  // arity for E_{p,q}
    std::vector<Word> args;            // p + q argument words for E_{p,q}
    std::vector<std::size_t> cluster;  // sorted multiset of generator indices for cup-2 elements
    int res = 0;                       // resolution degree (<= 0)
    int internal = 0;

    int total() const { return res + internal; }
    friend auto operator<=>(const GenInfo&, const GenInfo&) = default;
    friend bool operator==(const GenInfo&, const GenInfo&) = default;
};

struct Bidegree {
    int res = 0;
    int internal = 0;
    friend auto operator<=>(const Bidegree&, const Bidegree&) = default;
};

class RewriteLimitExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Degree-truncated model of the Hirsch resolution RH = T(V) of a polynomial
/// algebra over F_2, generated by V0 ~ U, formal operations E_{p,q}(words) in
/// normal form, and cup-2 clusters of V0 generators.
class HirschResolution {
public:
    explicit HirschResolution(PolynomialAlgebra algebra, std::size_t step_cap = 200000);

    const PolynomialAlgebra& algebra() const { return algebra_; }
    std::size_t n_v0() const { return algebra_.n_generators(); }

    GenId v0(std::size_t i);
    /// The letter a_1 cup_2 ... cup_2 a_n of a multiset with n >= 2.
    GenId cup2(std::vector<std::size_t> cluster);
    /// Single V0 letter for a one-element cluster, the cup-2 letter otherwise.
    Word cluster_word(std::vector<std::size_t> cluster);
    /// Interns E_{p,q}(args) as given; the caller guarantees normal form.
    GenId egen_raw(int p, int q, std::vector<Word> args);
    /// E_{p,q}(args) on normal-form argument words, rewritten to normal form.
    /// Values for p + q == 1 are the argument itself; E_{p,0}, E_{0,q} with p, q > 1 vanish.
    Element egen(int p, int q, const std::vector<Word>& args);
    /// Multilinear extension of egen to element arguments.
    Element egen(int p, int q, const std::vector<Element>& args);
    /// a cup_1 b on words.
    Element cup1(const Word& a, const Word& b) { return egen(1, 1, std::vector<Word>{a, b}); }

    const GenInfo& info(GenId g) const { return gens_.at(g); }
    std::size_t generator_count() const { return gens_.size(); }
    bool is_normal(GenId g) const;

    Bidegree bidegree(const Word& w) const;
    int total_degree(const Word& w) const;

    /// The differential; cached on generators.
    const Element& d(GenId g);
    Element d(const Word& w);
    Element d(const Element& x);
    /// The formula for dE_{p,q} applied to a raw (possibly non-normal) operation.
    Element d_egen_formula(int p, int q, const std::vector<Word>& args);

    /// Projection to H: V0-words map to products, anything else to zero.
    Polynomial rho(const Word& w) const;
    Polynomial rho(const Element& x) const;

    /// Normal-form generators of bidegree (res, internal), deterministic order.
    const std::vector<GenId>& generators_in(Bidegree b);
    /// Basis words of bidegree (res, internal).
    const std::vector<Word>& words_in(Bidegree b);

    std::string to_string(GenId g) const;
    std::string to_string(const Word& w) const;
    std::string to_string(const Element& x) const;

    // The V0 order used by the contraction is the declaration order of U.
    bool is_v0(GenId g) const { return info(g).kind == GenKind::v0; }
    bool is_cup2(GenId g) const { return info(g).kind == GenKind::cup2; }
    bool is_egen(GenId g) const { return info(g).kind == GenKind::egen; }

private:
    GenId intern(GenInfo info);
    Element normalize_rec(int p, int q, const std::vector<Word>& args, std::size_t& steps);
    Element egen_rec(int p, int q, const std::vector<Word>& args, std::size_t& steps);
    void words_rec(Bidegree remaining, Word& cur, std::vector<Word>& out);

    PolynomialAlgebra algebra_;
    std::size_t step_cap_;
    std::vector<GenInfo> gens_;
    std::map<GenInfo, GenId> ids_;
    std::map<GenId, Element> d_cache_;
    std::map<std::tuple<int, int, std::vector<Word>>, Element> norm_cache_;
    std::map<Bidegree, std::vector<GenId>> gen_cache_;
    std::map<Bidegree, std::vector<Word>> word_cache_;
};

/// Enumerates the RH basis inside the box res >= r_min, internal <= n_max.
std::map<Bidegree, std::vector<Word>> enumerate_rh_basis(HirschResolution& R, int r_min, int n_max);

/// Differential of both sides of the (1,1,1) associativity identity, each
/// operation expanded by the E-differential formula before normalization.
bool check_hexagon(HirschResolution& R, std::size_t a, std::size_t b, std::size_t c);

// ---------------------------------------------------------------------------
// The quotient by the ideal spanned by T' + dT' and its perturbed differential.

class NuQuotient {
public:
    /// `sq` supplies Sq_1 for the perturbation; pass nullopt to leave it out.
    NuQuotient(HirschResolution& R, std::optional<poly::Steenrod> sq);

    HirschResolution& resolution() { return R_; }
    bool has_perturbation() const { return sq_.has_value(); }

    /// Reduces modulo the Hirsch ideal generated by T' and dT'. The ideal is
    /// letter-level: T', dT' and operations with an argument in the ideal.
    Element quotient(const Element& x);
    Element quotient(const Word& w);
    bool is_reduced(const Word& w);

    /// Differential of the quotient: quotient(d(x)).
    Element d(const Element& x);
    /// The chosen lift of Sq_1(a): each monomial as the ascending word of its generators.
    Element lift_sq1(std::size_t a) const;
    /// h^2: P_1(a) on a cup_2 a, carried into operation arguments; Leibniz on words.
    Element h2(const Element& x);
    /// d + h^2.
    Element perturbed_d(const Element& x);

    /// Basis words of bidegree b fixed by the quotient map.
    std::vector<Word> basis_in(Bidegree b);

private:
    // Letters of one bidegree modulo the letter-level part of the ideal, in
    // echelon form over F_2; pivots (the largest index of a row) are eliminated.
    struct LetterSpace {
        std::vector<GenId> letters;
        std::map<GenId, std::size_t> index;
        std::map<std::size_t, std::set<std::size_t>> rows;
    };
    const LetterSpace& space(Bidegree b);
    void reduce(const LetterSpace& sp, std::set<std::size_t>& x) const;
    bool letter_reduced(GenId g);
    Element quotient_letter(GenId g);
    Element h2_word(const Word& w);
    Element h2_letter(GenId g);

    HirschResolution& R_;
    std::optional<poly::Steenrod> sq_;
    std::map<Bidegree, LetterSpace> spaces_;
    std::map<GenId, Element> q_cache_;
    std::map<GenId, Element> h2_cache_;
};

/// f_nu: V0 -> rho, E_{p,q}(a;b) -> Sq_{p,q}(f_nu a; f_nu b), a cup_2 a -> 0; multiplicative.
Polynomial f_nu(HirschResolution& R, const hirsch::HirschOpTable& sq, const Element& x);

// ---------------------------------------------------------------------------
// Contraction homotopy.

struct Classification {
    bool in_W = false;
    bool in_E1 = false;
    bool in_Eo = false;
    bool in_Eop = false;
    bool in_Edot = false;
    bool in_Upsilon = false;
    bool is_tilde_image = false;  // of the form x~ for some x in E^op
    std::vector<GenId> chain;
    std::vector<std::size_t> edot_path;  // argument indices down to the replaced operation  // a_1, ..., a_n for chains
    int kappa = 0;             // 1-based position of the descent for E^op
};

class ClassificationAmbiguity : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class Contraction {
public:
    explicit Contraction(HirschResolution& R) : R_(R) {}

    const Classification& classify(GenId g);
    /// s on a monomial; linear extension on elements.
    Element s(const Word& w);
    Element s(const Element& x);
    /// Which case of s applies (1, 2, 3) or 0.
    int case_of(const Word& w);

    /// v < t, v <= t style comparisons of a V0 letter against V0 / cup-2 / chain letters.
    bool less(std::size_t v, GenId t);
    bool less_equal(std::size_t v, GenId t);
    bool greater_equal(std::size_t v, GenId t);

private:
    std::vector<std::size_t> v0_content(GenId g);
    Element tilde(GenId g);
    Element prime(GenId g);
    Element prime_at(GenId g, const std::vector<std::size_t>& path, std::size_t depth);
    enum class Scan { no_product, found, invalid };
    Scan scan_iteration(GenId g, std::vector<std::size_t>& path);

    HirschResolution& R_;
    std::map<GenId, Classification> cache_;
};

struct SIterationResult {
    bool success = false;
    int n = 0;
    Element residual;  // last iterate on failure
};

/// Smallest n <= cap with (sd + ds - Id)^n (a) = 0.
SIterationResult verify_siteration(HirschResolution& R, Contraction& s, const Element& a, int cap);

}  // namespace loopcoh::resolution
