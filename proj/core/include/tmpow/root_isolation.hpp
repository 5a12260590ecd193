#pragma once

#include <vector>

#include "tmpow/ball.hpp"
#include "tmpow/polynomial.hpp"

namespace tmpow {

// Certified, pairwise disjoint root enclosures of a squarefree polynomial.
//
// Approximations come from an Aberth-Ehrlich iteration run on exact dyadic
// points; certification is separate and rigorous: with Weierstrass
// corrections W_i = p(z_i) / (lc * prod_{j!=i} (z_i - z_j)), every root of p
// lies in the union of the disks D(z_i, deg * |W_i|), and a connected
// component made of exactly one disk contains exactly one root. We only
// accept a configuration once all disks are pairwise disjoint, so each disk
// is certified to hold one root.
struct RootDisks {
    std::vector<CBall> disks;      // rectangular enclosures of the disks
    mpfr_prec_t prec = 0;          // working precision that achieved them
    bool certified = false;        // disks pairwise disjoint (one root each)
};

// Isolate all roots. `target_radius_exp`: keep refining until every disk
// radius is <= 2^target_radius_exp (pass 0 to stop at first isolation).
// Throws budget_error if the precision ceiling is hit.
RootDisks isolate_roots(const ZPoly& p, mpfr_prec_t start_prec,
                        mpfr_prec_t prec_ceiling, long target_radius_exp = 0);

// One more refinement pass from a previous configuration at higher precision
// (Aberth polish from the old centers + fresh certification).
RootDisks refine_roots(const ZPoly& p, const RootDisks& prev, mpfr_prec_t prec,
                       long target_radius_exp);

} // namespace tmpow
