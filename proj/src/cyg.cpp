#include "wfano/cyg.hpp"

#include "wfano/brute.hpp"
#include "wfano/qsmooth.hpp"

namespace wfano {

CySearchResult cy_search(int n, Int max_weight, int threads, bool prune)
{
    if (n < 2)
        throw std::invalid_argument("cy_search needs n >= 2");
    if (max_weight < 1)
        throw std::invalid_argument("max_weight must be positive");
    BruteOptions opt;
    opt.bounds.assign(static_cast<std::size_t>(n) + 1, max_weight);
    opt.kind = FamilyKind::cy;
    opt.prune = prune;
    opt.threads = threads;
    CySearchResult out{{}, max_weight};
    for (HypersurfaceFamily &fam : brute_search(opt).families) {
        if (kernel::irreducible(fam.ws.weights(), fam.degree))
            out.families.push_back(std::move(fam));
        else
            ++out.reducible_rejected;
    }
    return out;
}

HypersurfaceFamily cone_extend(const HypersurfaceFamily &fam, Int k)
{
    if (k < 0 || fam.canonical_twist() != k)
        throw DegreeMismatch("cone_extend needs d = sum(a) + k");
    if (k == 0)
        return fam;
    std::vector<Int> w = fam.ws.vector();
    w.insert(w.end(), static_cast<std::size_t>(k), 1);
    return {WeightSystem::canonicalize(w), fam.degree};
}

} // namespace wfano
