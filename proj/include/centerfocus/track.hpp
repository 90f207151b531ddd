#pragma once

#include "centerfocus/compiled.hpp"
#include "centerfocus/linalg.hpp"
#include "centerfocus/rng.hpp"

#include <atomic>
#include <functional>
#include <optional>

namespace centerfocus {

using Point = std::vector<MpComplex>;
using DPoint = std::vector<std::complex<double>>;

DPoint point_to_double(const Point& p);
Point point_from_double(const DPoint& p, mpfr_prec_t prec);
Point point_convert(const Point& p, mpfr_prec_t prec);
double point_norm_inf(const DPoint& p);
/// relative infinity-distance against scale max(1, |a|, |b|)
double point_distance_rel(const DPoint& a, const DPoint& b);
bool points_equal(const DPoint& a, const DPoint& b, double tol);

/// Greedy single-linkage clustering of points under the equality
/// tolerance; returns cluster index per input point, clusters numbered by
/// first appearance.
std::vector<std::size_t> cluster_points(const std::vector<DPoint>& pts, double tol);

enum class PathStatus { Converged, Diverged, TrackingFailure };

struct PathResult {
    Point endpoint;
    PathStatus status = PathStatus::TrackingFailure;
    int winding = 0;
    double residual = 0.0;
    double condition = 0.0;
    long steps = 0;
    mpfr_prec_t precision = 53;

    DPoint endpoint_d() const { return point_to_double(endpoint); }
};

struct TrackOptions {
    double corrector_tol = 1e-10;
    double endpoint_tol = 1e-11;
    double endgame_agree_tol = 1e-5;
    double divergence_threshold = 1e8;
    double endgame_security_norm = 1e4;
    double endgame_radius = 0.1;
    double cauchy_radius_ratio = 0.5;
    int max_winding = 8;
    int samples_per_circle = 16;
    double min_step = 1e-14;
    long max_steps_per_path = 100000;
    double point_equality_tol = 1e-8;
    std::vector<mpfr_prec_t> precision_ladder{53, 128, 256};
    int workers = 2;
    std::uint64_t seed = 1;
    /// for slice-move homotopies whose endpoints are generic intersections:
    /// track deep and hop to t=0 by Newton, falling back to the full
    /// endgame when the guards reject the hop
    bool assume_regular_endpoint = false;
};

/// Homotopy H(x,t): a block of equations that vanish along the whole path
/// plus moving equations (1-t)*target_i + gamma_i * t * start_i. The plain
/// straight-line homotopy has an empty fixed block.
struct Homotopy {
    std::vector<std::string> vars;
    std::vector<Poly> fixed;
    std::vector<Poly> targets;
    std::vector<Poly> starts;
    std::vector<QC> gammas;

    std::size_t neqs() const { return fixed.size() + targets.size(); }
    void validate() const;

    static Homotopy straight_line(std::vector<Poly> target, std::vector<Poly> start,
                                  const std::vector<std::string>& vars, const QC& gamma);
};

/// One concatenated compiled system (fixed rows, then target rows, then
/// start rows) sharing a single power table.
template <class CT>
struct CompiledHomotopy {
    CompiledSystem<CT> all;
    std::size_t n_fixed = 0, n_moving = 0;
    std::vector<CT> gammas;
    std::size_t nv = 0;
    mpfr_prec_t prec = 53;

    static CompiledHomotopy compile(const Homotopy& h, mpfr_prec_t prec);
};

/// Total-degree start data: G_i = x_i^{d_i} - 1 with the d_i-th roots of
/// unity as start points, materializable at any precision.
struct TotalDegreeStart {
    std::vector<Poly> start_system;
    std::vector<long> degrees;
    long path_count = 0;

    Point start_point(long index, mpfr_prec_t prec) const;
};
TotalDegreeStart total_degree_start(const std::vector<Poly>& target,
                                    const std::vector<std::string>& vars);

/// Track one path of h from t=1 to t=0. The start provider materializes
/// the start point at any requested precision.
PathResult track_path(const Homotopy& h,
                      const std::function<Point(mpfr_prec_t)>& start_at, const TrackOptions& opts);
PathResult track_path(const Homotopy& h, const Point& start, const TrackOptions& opts);

/// Track many paths on a worker pool; results indexed like the inputs.
std::vector<PathResult> track_paths(const Homotopy& h, const std::vector<Point>& starts,
                                    const TrackOptions& opts);
std::vector<PathResult> track_paths(const Homotopy& h, long count,
                                    const std::function<Point(long, mpfr_prec_t)>& start_at,
                                    const TrackOptions& opts);

struct SolveResult {
    std::vector<PathResult> paths;
    std::vector<Point> solutions;                    // distinct converged endpoints
    std::vector<std::vector<std::size_t>> clusters;  // path indices per solution
    QC gamma;
};

/// Total-degree homotopy solve of a square system.
SolveResult solve(const std::vector<Poly>& F, const std::vector<std::string>& vars, Rng& rng,
                  const TrackOptions& opts);

struct RefineResult {
    bool ok = false;
    Point x;
    double residual = 1e300;
    double rcond = 0.0;
    int iterations = 0;
};

/// Newton (square) or Gauss-Newton (overdetermined) refinement at fixed
/// precision.
RefineResult newton_refine(const std::vector<Poly>& F, const std::vector<std::string>& vars,
                           const Point& x0, double target_residual, mpfr_prec_t prec,
                           int max_iter = 50);

/// residual ||F(x)||_inf evaluated at the point's precision
double residual_at(const std::vector<Poly>& F, const std::vector<std::string>& vars, const Point& x);

/// Evaluate a polynomial at a high-precision point.
MpComplex eval_poly_at(const Poly& p, const Point& x, mpfr_prec_t prec);

void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& fn);

/// global cumulative tracking statistics (atomic; reset at pipeline stages)
struct TrackCounters {
    std::atomic<long> paths{0};
    std::atomic<long> steps{0};
    std::atomic<long> mpfr_paths{0};
    std::atomic<long> path_failures{0};
    std::atomic<long> escalate_phase1{0};
    std::atomic<long> escalate_endgame{0};
    std::atomic<long> singular_refines{0};
    std::atomic<long> deflate_256{0};
    void reset() {
        paths = steps = mpfr_paths = path_failures = 0;
        escalate_phase1 = escalate_endgame = singular_refines = deflate_256 = 0;
    }
};
TrackCounters& track_counters();

}  // namespace centerfocus
