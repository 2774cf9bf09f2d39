#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "loopcoh/bar.hpp"
#include "loopcoh/hirsch_ops.hpp"
#include "loopcoh/resolution.hpp"

namespace loopcoh::cli {

/// Outcome of one family of mechanical checks.
struct SuiteResult {
    std::string name;
    std::size_t checked = 0;
    std::size_t failed = 0;
    bool skipped = false;
    std::string note;
    std::vector<std::string> failures;  // first few witnesses
    std::vector<std::pair<std::string, std::size_t>> counts;  // named tallies, in report order

    bool passed() const { return skipped || failed == 0; }
    void fail(std::string witness);
};

/// d^2 = 0 on every bar word of degree <= degree.
SuiteResult bar_differential_suite(const bar::BarAlgebra& A, int degree);
/// Graded commutativity and the Leibniz rule of the shuffle product on word pairs with total degree <= degree.
SuiteResult shuffle_suite(const bar::BarAlgebra& A, int degree);
/// Associativity of the shuffle product on word triples with total degree <= degree.
SuiteResult shuffle_associativity_suite(const bar::BarAlgebra& A, int degree);

/// d mu_E = mu_E (d x 1 + 1 x d), tallied by the weights (letter counts) of the two words.
struct ChainMapTally {
    std::map<std::pair<std::size_t, std::size_t>, std::pair<std::size_t, std::size_t>> by_weight;  // -> (checked, failed)
    std::vector<std::string> low_weight_failures;
};
ChainMapTally mue_chain_map_tally(const bar::PolynomialBarAlgebra& A, const hirsch::HirschOpTable& t, int degree,
                                  std::size_t max_weight);
/// Fails on weights (1,1), (1,2), (2,1); higher weights are tallied only.
SuiteResult mue_chain_map_suite(const bar::PolynomialBarAlgebra& A, const hirsch::HirschOpTable& t, int degree,
                                std::size_t max_weight = 4);

/// d^2 = 0 on the RH basis (res >= -res_depth, internal <= internal) and rho d = 0 in resolution degree -1.
SuiteResult rh_differential_suite(resolution::HirschResolution& R, int res_depth, int internal);
/// The (1,1,1) identity after differentiation, for generator triples of total degree <= internal.
SuiteResult hexagon_suite(resolution::HirschResolution& R, int internal);
/// Derivation instances (2,1), (1,2) have no violations; (1,1,1) associativity fails exactly on the
/// triples where nesting Sq_{1,1} is not associative.
SuiteResult hirsch_relation_suite(const hirsch::HirschOpTable& t, int degree);
/// f_nu (d + h^2) = 0 on reduced words of R_nu H with res >= -2, internal <= internal.
SuiteResult fnu_chain_map_suite(resolution::HirschResolution& R, resolution::NuQuotient& Q,
                                const hirsch::HirschOpTable& t, int internal);
/// (sd + ds - Id)^n a = 0 for some n <= cap, for every basis element of resolution degree -1, -2.
SuiteResult siteration_suite(resolution::HirschResolution& R, int internal, int cap);

}  // namespace loopcoh::cli
