#pragma once

#include "centerfocus/track.hpp"

namespace centerfocus {

/// First-order null-vector deflation: the system is augmented with
/// J(x)*B*lambda = 0 and a linear normalization of lambda so that an
/// isolated multiple zero becomes a regular zero in the extended
/// variables. Applied iteratively up to max_rounds.
struct Deflation {
    std::vector<Poly> eqs;
    std::vector<std::string> vars;     // original variables first
    std::size_t orig_nvars = 0;
    int rounds = 0;
    Point extended_point;              // point with lambda estimates appended
};

/// Numerical corank of the Jacobian of eqs at p; `ambiguous` is set when a
/// diagonal falls inside the exclusion band around the rank threshold.
struct CorankEstimate {
    std::size_t corank = 0;
    bool ambiguous = false;
};
CorankEstimate jacobian_corank(const std::vector<Poly>& eqs, const std::vector<std::string>& vars,
                               const Point& p);

/// Builds the deflated system at p. rounds == 0 means the Jacobian already
/// had full column rank. Returns nullopt when the numerical rank stays
/// ambiguous after precision escalation.
std::optional<Deflation> deflate(const std::vector<Poly>& eqs, const std::vector<std::string>& vars,
                                 const Point& p, Rng& rng, int max_rounds = 2);

/// Newton refinement that falls back to deflation when the point is
/// singular; x and residual refer to the original variables/system.
RefineResult refine_possibly_singular(const std::vector<Poly>& eqs,
                                      const std::vector<std::string>& vars, const Point& x0,
                                      double target_residual, mpfr_prec_t prec, Rng& rng,
                                      int max_rounds = 2);

}  // namespace centerfocus
