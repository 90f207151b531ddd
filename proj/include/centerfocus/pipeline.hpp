#pragma once

#include "centerfocus/certify.hpp"
#include "centerfocus/exactify.hpp"
#include "centerfocus/io.hpp"

namespace centerfocus {

struct PipelineConfig {
    bool run_a6_0 = true;
    bool run_a6_1 = true;
    int kmax = 7;
    std::uint64_t seed = 1;
    int workers = 2;
    double tol_endpoint = 1e-11;
    double tol_point_eq = 1e-8;
    double tol_real = 1e-10;
    double tol_vanish = 1e-40;
    std::string outdir;          // checkpoints and artifacts; empty disables
    std::string manifest_path;   // sufficiency certificates; empty disables certification
    int max_level = 0;           // 0 = kmax (levels beyond stop early for quick runs)

    static PipelineConfig from_map(const std::map<std::string, std::string>& kv);
    NidOptions nid_options() const;
};

/// one row of the per-level component table
struct ComponentRow {
    std::string id, parent;
    int level = 0, dim = 0, multiplicity = 1;
    long degree = 0;
    std::string real_flag = "unknown";
    bool contained_in_next = false;
    std::string disposition;  // carried | regenerated | dropped-unreal |
                              // dropped-subsumed | dropped-contained | final
};

struct ChartReport {
    Chart chart = Chart::A6Zero;
    std::vector<ComponentRow> table;
    std::vector<CenterCondition> conditions;   // final, symbolically verified
    std::vector<CaseOutcome> certificates;
    std::map<std::string, long> counters;
    long paths_tracked = 0;
    double seconds = 0.0;
};

struct PipelineReport {
    int kmax = 7;
    std::uint64_t seed = 1;
    std::vector<ChartReport> charts;
    std::vector<std::vector<Poly>> merged_conditions;  // over a1..a6, Theorem-1.1 style
    double seconds = 0.0;
};

/// Full reproduction pipeline: focus quantities, per-chart decomposition
/// with regeneration / monodromy / trace, realness and subsumption filters,
/// exactness recovery, symbolic vanishing verification and the sufficiency
/// certificates.
PipelineReport run_pipeline(const PipelineConfig& config);

/// Runs one chart against precomputed focus quantities.
ChartReport run_chart(Chart chart, const FocusQuantitySet& fq, const PipelineConfig& config);

/// Rehomogenizes the a6=1 conditions, adjoins a6 to the a6=0 ones,
/// deduplicates by containment of the solution sets; the result is the
/// Theorem-1.1-style component list over a1..a6.
std::vector<std::vector<Poly>> merge_charts(const std::vector<CenterCondition>& a6_0,
                                            const std::vector<CenterCondition>& a6_1);

std::string render_report(const PipelineReport& report);

/// focus quantities with an on-disk checkpoint in `outdir`
FocusQuantitySet focus_quantities_cached(int kmax, const std::string& outdir);

}  // namespace centerfocus
