#pragma once

namespace loopcoh {

/// Pins the sign and indexing conventions of the computed data: bar signs from
/// desuspended degree prefixes, shuffle signs by Koszul rule, lower-index Sq_1
/// with the Cartan rule, quadratic tail without the extreme splittings. Bump on
/// any change so cached matrices and reports invalidate.
inline constexpr const char* kConventionVersion = "1";
inline constexpr const char* kLibraryVersion = "0.1.0";

}  // namespace loopcoh
