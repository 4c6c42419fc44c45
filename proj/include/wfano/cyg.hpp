#pragma once

#include "wfano/core.hpp"

#include <stdexcept>
#include <vector>

namespace wfano {

class DegreeMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct CySearchResult {
    std::vector<HypersurfaceFamily> families;
    Int max_weight;
    /// Quasi-smooth tuples dropped because every degree d monomial involves
    /// some fixed variable.
    std::size_t reducible_rejected = 0;
};

/// Quasi-smooth degree sum(a) hypersurfaces in P^n(a) with every weight at
/// most max_weight, sorted. There is no a priori bound on the weights, so
/// the caller chooses one.
CySearchResult cy_search(int n, Int max_weight, int threads = 0, bool prune = true);

/// Appends k weights 1 to a family with d = sum(a) + k, keeping d. The
/// result has trivial canonical class. Throws DegreeMismatch otherwise.
HypersurfaceFamily cone_extend(const HypersurfaceFamily &fam, Int k);

} // namespace wfano
