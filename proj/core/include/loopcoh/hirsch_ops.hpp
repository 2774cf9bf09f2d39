#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "loopcoh/polynomial.hpp"

namespace loopcoh::hirsch {

using poly::Monomial;
using poly::Polynomial;
using poly::Scalar;
using poly::PolynomialAlgebra;
using poly::Steenrod;

/// Raised when an operation E_{p,q} beyond the table's arity cap is needed.
class MissingOperation : public std::runtime_error {
public:
    MissingOperation(int p, int q);
    int p, q;
};

enum class DefaultRule { zero, sq11_derivation };

/// Sq_{1,1}: the two-sided derivation extension of (g, h) -> Sq_1(g) if g == h, else 0.
Polynomial sq11(const Steenrod& sq, const Polynomial& a, const Polynomial& b);

/// Operations E_{p,q}: H^{(x)p} (x) H^{(x)q} -> H of degree 1 - p - q on a
/// polynomial algebra. E_{1,0} = E_{0,1} = Id, E_{p>1,0} = E_{0,q>1} = 0; other
/// values come from overrides or the default rule.
class HirschOpTable {
public:
    /// The trivial structure {E_{1,0}, E_{0,1}}; any ring.
    static HirschOpTable trivial(const PolynomialAlgebra& algebra, int arity_cap = 16);
    /// Sq_{p,q} built from Sq_1: Sq_{1,1} by derivation, higher operations zero
    /// unless overridden. Overrides are installed symmetrically.
    static HirschOpTable sq_structure(const Steenrod& sq, int arity_cap = 16);

    const PolynomialAlgebra& algebra() const { return algebra_; }
    DefaultRule default_rule() const { return rule_; }
    int arity_cap() const { return arity_cap_; }
    const std::optional<Steenrod>& steenrod() const { return steenrod_; }
    /// True when every E_{p,q} with p, q >= 1 vanishes identically.
    bool is_trivial() const;

    /// Sets E_{p,q}(args) on basis monomials. Validates arity, the value
    /// degree and the shape (E_{p,0}, E_{0,q} cannot be overridden). For the
    /// Sq structure the mirrored entry Sq_{q,p}(b; a) is installed too.
    void set_override(int p, int q, std::vector<Monomial> args, Polynomial value);
    std::size_t override_count() const { return overrides_.size(); }

    /// E_{p,q} on basis monomials.
    Polynomial eval_basis(int p, int q, const std::vector<Monomial>& args) const;
    /// E_{p,q} on arbitrary polynomials, by multilinearity.
    Polynomial eval(int p, int q, const std::vector<Polynomial>& args) const;

    /// Structural invariants: the mirrored overrides agree.
    std::vector<std::string> check_symmetry() const;

private:
    HirschOpTable(PolynomialAlgebra algebra, DefaultRule rule, std::optional<Steenrod> sq, int arity_cap);

    struct Key {
        int p, q;
        std::vector<Monomial> args;
        friend auto operator<=>(const Key&, const Key&) = default;
        friend bool operator==(const Key&, const Key&) = default;
    };

    PolynomialAlgebra algebra_;
    DefaultRule rule_;
    std::optional<Steenrod> steenrod_;
    int arity_cap_;
    std::map<Key, Polynomial> overrides_;
};

/// One failing instance of a relation check.
struct Violation {
    std::string relation;  // e.g. "derivation(2,1)" or "associativity(1,1,1)"
    std::vector<Monomial> args;
    Polynomial lhs;
    Polynomial rhs;
    std::string describe(const PolynomialAlgebra& algebra) const;
};

/// Instances of the E-differential relation on H (zero differential): for each
/// (p,q) in `instances` and every tuple of basis monomials of positive degree
/// with total degree <= degree_bound, the sum of merge terms and of the
/// quadratic tail E_{i,j} . E_{p-i,q-j}, (i,j) not in {(0,0),(p,q)}, must vanish.
/// Characteristic 2 only.
std::vector<Violation> check_derivation_relations(const HirschOpTable& t, int degree_bound,
                                                  const std::vector<std::pair<int, int>>& instances);

/// Both sides of the associativity relation R_{k,l,r}((a;b);c) = R_{k,l,r}(a;(b;c)).
struct AssociativitySides {
    Polynomial left;   // sum of E_{p,r}(E_{k1,l1}(..), ..., E_{kp,lp}(..); c)
    Polynomial right;  // sum of E_{k,q}(a; E_{l1,r1}(..), ..., E_{lq,rq}(..))
    Polynomial left_shuffle;   // the all-singleton part E_{k+l,r}(sh(a;b); c)
    Polynomial right_shuffle;  // the all-singleton part E_{k,l+r}(a; sh(b;c))
};

AssociativitySides associativity_sides(const HirschOpTable& t, const std::vector<Polynomial>& a,
                                       const std::vector<Polynomial>& b, const std::vector<Polynomial>& c);

/// Evaluates the relation on an explicit tuple (args = a ++ b ++ c) or, when
/// `args` is empty, on every basis tuple of total degree <= degree_bound.
std::vector<Violation> check_associativity_relation(const HirschOpTable& t, int k, int l, int r,
                                                    const std::vector<Monomial>& args, int degree_bound);

/// Right-hand side of the higher-derivation identity for (u; v):
/// sum over (i,j) not in {(0,0),(p,q)} of E_{i,j}(u_1..u_i; v_1..v_j) . E_{p-i,q-j}(rest).
Polynomial quadratic_tail(const HirschOpTable& t, const std::vector<Polynomial>& u, const std::vector<Polynomial>& v);
/// Left-hand side: E_{p-1,q}(merges of u; v) + E_{p,q-1}(u; merges of v).
Polynomial merge_terms(const HirschOpTable& t, const std::vector<Polynomial>& u, const std::vector<Polynomial>& v);

struct SpecializationInstance {
    std::string case_name;  // "1", "1'", "2", "2'"
    std::string description;
    Polynomial assoc_lhs, assoc_rhs;  // both sides of the shuffle-split associativity identity
    Polynomial deriv_lhs, deriv_rhs;  // both sides of the higher-derivation identity
    bool assoc_holds() const { return assoc_lhs == assoc_rhs; }
    bool deriv_holds() const { return deriv_lhs == deriv_rhs; }
    bool lhs_coincide() const { return assoc_lhs == deriv_lhs; }
    bool rhs_coincide() const { return assoc_rhs == deriv_rhs; }
};

/// Instantiates the four specializations 1, 1', 2, 2' on basis monomials (and,
/// for cases 1 / 1', alternating tuples of length >= 3) with total degree <= degree_bound.
std::vector<SpecializationInstance> check_sq_specialization_cases(const HirschOpTable& sq, int degree_bound);

}  // namespace loopcoh::hirsch
