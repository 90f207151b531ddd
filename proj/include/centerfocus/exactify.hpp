#pragma once

#include "centerfocus/focus.hpp"
#include "centerfocus/witness.hpp"

namespace centerfocus {

/// LLL reduction of an integer lattice basis (rows), exact rational
/// Gram-Schmidt, Lovasz parameter delta.
void lll_reduce(std::vector<std::vector<mpz_class>>& basis, const Rat& delta = Rat(99, 100));

/// Hermite normal form (row style) of an integer matrix; canonical
/// representative of the row lattice, used to compare generator sets up to
/// integer row operations.
std::vector<std::vector<mpz_class>> hermite_normal_form(std::vector<std::vector<mpz_class>> rows);

struct IntegerRelationOptions {
    double tol_exponent_slack = 14;  // relation tolerance 10^-(digits - slack)
    double gap_factor = 1e6;         // ambiguity band above the tolerance
    double abs_tol = 0.0;            // when set, overrides the derived tolerance
};

/// Integer relation c with |c_i| <= max_height and c.v ~ 0, via LLL on the
/// standard embedding (real and imaginary columns scaled by
/// 10^(digits - 10)). Throws std::invalid_argument when the input precision
/// is too low for the requested height, std::runtime_error when the
/// tolerance gap analysis is inconclusive.
std::optional<std::vector<mpz_class>> integer_relation(const std::vector<MpComplex>& v,
                                                       long max_height,
                                                       const IntegerRelationOptions& opts = {});
std::optional<std::vector<mpz_class>> integer_relation(const std::vector<MpReal>& v,
                                                       long max_height,
                                                       const IntegerRelationOptions& opts = {});

struct CenterCondition {
    std::vector<Poly> generators;  // integer coefficients over a1..a5 chart coordinates
    Chart chart = Chart::A6Zero;
    std::string source_component;
    long witness_count = 0;
    enum class Status { NumericOnly, SymbolicallyVerified } status = Status::NumericOnly;
};

struct ExactifyOptions {
    long max_height = 64;
    mpfr_prec_t precision = 256;
    double validation_tol = 1e-40;
    double realness_tol = 1e-10;
};

/// Recovers integer-coefficient polynomials vanishing on the component:
/// builds monomial-value vectors at one general witness point, finds
/// integer relations (repeatedly, projecting out the ones already found),
/// validates every candidate at all other witness points.
/// Chart::A6Zero uses homogeneous monomials of each degree; Chart::A6One
/// dehomogenizes by a6 and uses all monomials up to the degree bound.
CenterCondition recover_polynomials(const WitnessSet& ws, int degree_bound, Rng& rng,
                                    const ExactifyOptions& opts = {});

/// Realness of zero-dimensional points (refines in place, escalating the
/// ambiguous ones). Nonreal points must occur in conjugate pairs; a pairing
/// failure throws.
std::vector<bool> realness_filter(std::vector<Point>& pts, const std::vector<Poly>& refine_system,
                                  const std::vector<std::string>& vars, Rng& rng,
                                  const ExactifyOptions& opts = {},
                                  bool conjugate_pairing_check = true);

struct ComponentRealness {
    ComponentRecord::RealFlag flag = ComponentRecord::RealFlag::Unknown;
    /// linear constraints every real point must satisfy (from
    /// sum-of-squares generators), when flag comes from generator analysis
    std::vector<Poly> real_locus_constraints;
};

/// Positive-dimensional realness: real witness point => Yes; otherwise
/// analyzes recovered generators; sum-of-squares forms with a positive
/// constant give No, without a constant they constrain the real locus.
ComponentRealness realness_filter_component(const WitnessSet& ws, const CenterCondition& cc,
                                            Rng& rng, const ExactifyOptions& opts = {});

/// Critical points of the distance function from a random rational base
/// point: real-point detection for plane curves V(f) in two affine
/// variables.
bool plane_curve_has_real_points(const Poly& f, Rng& rng, const TrackOptions& topts);

struct VerifyOutcome {
    bool verified = false;
    enum class Method { Exact, Heuristic, Failed } method = Method::Failed;
};

/// Substitutes an exact rational parametrization of the condition's
/// solution set into every focus quantity; identically zero for all of
/// them upgrades the status to SymbolicallyVerified.
VerifyOutcome verify_vanishing(CenterCondition& cc, const FocusQuantitySet& fq);

/// Same check for generator sets given directly over a1..a6 (no chart
/// equation implied).
bool vanishes_on_parametrization(const std::vector<Poly>& generators_a16,
                                 const FocusQuantitySet& fq);

}  // namespace centerfocus
