#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "loopcoh/ring.hpp"

// Additive oracle for Tor of a polynomial ring; shares nothing with the bar
// construction code beyond exact linear algebra.
namespace loopcoh::koszul {

struct ExteriorBasisElement {
    std::vector<std::size_t> subset;  // strictly increasing generator indices
    int degree = 0;                   // sum of (deg - 1)
};

/// Subsets of the suspended generators with degree <= n_max.
std::vector<ExteriorBasisElement> exterior_basis(const std::vector<int>& degrees, int n_max);

/// dim_n of Lambda(s^{-1}U) for n = 0..n_max.
std::vector<long> oracle_dimensions(const std::vector<int>& degrees, int n_max);

class ResourceGuard : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct KoszulCheck {
    std::vector<long> ranks;           // Tor in bar degree n = internal - homological
    bool exact = true;                 // the Koszul complex resolves the ground ring
    std::vector<std::string> defects;  // (q, internal) boxes with unexpected homology
};

/// Builds S(U) (x) Lambda(e_1..e_m) with d(e_i) = x_i in every internal degree
/// that can contribute below n_max and checks that it is a resolution of the
/// ground ring; Tor ranks then equal the ranks of the tensored-down complex.
/// Guarded to |U| <= 4 and n_max <= 12.
KoszulCheck oracle_small_resolution_check(const std::vector<int>& degrees, const linalg::Ring& ring, int n_max);

}  // namespace loopcoh::koszul
