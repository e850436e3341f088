#pragma once

#include <optional>

#include "schreier/family.hpp"
#include "schreier/ordinal.hpp"

namespace schreier {

// Symbolic iota index of the denoted family: the first stage of the
// Cantor-Bendixson tower at which only the empty set survives. Computed
// structurally; never enumerates derivatives.
Ordinal iota(const Family& f);

// The unique xi with E in F^xi and E not in F^(xi+1). Throws
// std::domain_error when E is not a member. rank(F, {}) == iota(F).
Ordinal rank(const Family& f, const FinSet& e);

// E in F^x, decided by rank comparison (limit stages are never enumerated).
bool in_derivative(const Family& f, const FinSet& e, const Ordinal& x);

// Literal-tower rank for tail-invariant families: E is non-maximal in a
// derivative iff E^(max E + 1) lies in it, iterated up to cap. Returns
// nullopt once cap is exceeded; meaningful only when the true rank is
// finite. Throws std::domain_error for families not flagged tail-invariant
// and for non-members.
std::optional<int> rank_oracle(const Family& f, const FinSet& e, int cap);

}  // namespace schreier
