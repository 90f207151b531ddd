#pragma once

#include "centerfocus/deflate.hpp"
#include "centerfocus/track.hpp"

namespace centerfocus {

/// ambient handling: Projective tracks a plain P^m problem; AffineChart
/// treats one coordinate as the homogenizing variable of an affine chart,
/// so endpoints with that coordinate near zero sit at the chart's infinity
enum class Ambient { Projective, AffineChart };

struct SliceSet {
    std::vector<Poly> forms;  // generic homogeneous linear forms
    std::uint64_t seed = 0;
};

struct WitnessSet {
    std::vector<Poly> system;      // defining equations F_k
    std::vector<Poly> randomized;  // square subsystem cut down to the codimension
    SliceSet slice;                // dim-many generic linear forms
    Poly patch;                    // random affine patch c.x - 1
    std::vector<Point> points;
    int dim = 0;  // projective dimension
    long degree = 0;
    int multiplicity = 1;
    Ambient ambient = Ambient::Projective;
    std::string infinity_var;  // set for AffineChart
    std::vector<std::string> vars;

    /// the square system witness points satisfy: randomized + slice + patch
    std::vector<Poly> sliced_square() const;
    void check_invariants(const TrackOptions& opts) const;
};

struct ComponentRecord {
    WitnessSet ws;
    enum class RealFlag { Yes, No, Unknown } real_flag = RealFlag::Unknown;
    bool contained_in_next = false;
    int level = 0;
    std::string id;
    std::string parent_id;
    std::vector<int> path_counts;  // regeneration paths landing per witness point
    std::vector<int> windings;     // endgame winding evidence per witness point
};

struct NidOptions {
    TrackOptions track;
    std::uint64_t seed = 1;
    double vanish_tol = 1e-40;  // identical-vanishing threshold at high precision
    mpfr_prec_t vanish_prec = 256;
    int monodromy_stable_stop = 15;
    int monodromy_max_loops = 200;
    double trace_tol = 1e-4;
    double infinity_tol = 1e-6;
};

/// Witness-set construction for one hypersurface V(f): slices with a
/// generic line, solves the univariate restriction, and splits the points
/// into irreducible components via monodromy + trace test. Components are
/// ordered by (degree, multiplicity) for determinism.
std::vector<ComponentRecord> decompose_hypersurface(const Poly& f, Ambient ambient,
                                                    const std::string& infinity_var, Rng& rng,
                                                    const NidOptions& opts);

struct RegenerationResult {
    std::vector<Point> points;      // distinct finite candidate points
    std::vector<int> path_counts;   // paths landed per distinct point
    std::vector<int> windings;      // max winding observed per distinct point
    std::vector<Point> infinity_points;
    long paths_tracked = 0;
    long failures = 0;
};

/// Regenerative intersection of a positive-dimensional witness set with
/// the next hypersurface: moves one slice hyperplane to deg(f_next) general
/// positions, then deforms their union into V(f_next).
/// Throws std::domain_error when f_next vanishes identically on the
/// component (the caller must carry the component to the next level).
RegenerationResult regenerate_intersect(const WitnessSet& ws, const Poly& f_next, Rng& rng,
                                        const NidOptions& opts);

/// Monodromy partition of the witness points: random slice loops, orbits
/// merged by union-find, stopping after a run of merge-free loops.
/// Singular witness points travel on their deflated systems.
std::vector<std::vector<std::size_t>> monodromy_partition(const WitnessSet& ws, Rng& rng,
                                                          const NidOptions& opts);

/// Linear trace test for a monodromy-closed group: the group centroid must
/// move collinearly when the slice translates in parallel.
bool trace_test(const WitnessSet& ws, const std::vector<std::size_t>& group, Rng& rng,
                const NidOptions& opts);

/// Witness-point homotopy membership test of p in the component.
bool membership_test(const Point& p, const WitnessSet& ws, Rng& rng, const NidOptions& opts);

/// 256-bit identical-vanishing test of f on the component's witness points.
bool vanishes_on_witness(const Poly& f, const WitnessSet& ws, Rng& rng, const NidOptions& opts);

/// Refine every witness point to the requested precision (deflating
/// singular ones), in place.
void refine_witness_points(WitnessSet& ws, mpfr_prec_t prec, double target_residual, Rng& rng);

// helpers shared with the pipeline
Poly random_patch(const std::vector<std::string>& vars, Rng& rng);
Poly random_linear_form(const std::vector<std::string>& vars, Rng& rng);
std::vector<Poly> randomize_to_codim(const std::vector<Poly>& polys, std::size_t codim, Rng& rng,
                                     const std::vector<std::string>& vars);
/// rescale a point onto the patch c.x = 1
Point rescale_to_patch(const Point& p, const Poly& patch, const std::vector<std::string>& vars);
/// true when the AffineChart point lies at the chart's infinity
bool at_chart_infinity(const Point& p, const std::vector<std::string>& vars,
                       const std::string& infinity_var, double tol);

}  // namespace centerfocus
