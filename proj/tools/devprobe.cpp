#include "centerfocus/pipeline.hpp"

#include <chrono>
#include <cstdio>

using namespace centerfocus;
using Clock = std::chrono::steady_clock;

static double el(Clock::time_point a) {
    return std::chrono::duration<double>(Clock::now() - a).count();
}

static void dump(const char* tag, Clock::time_point t0) {
    auto& tc = track_counters();
    printf("%s: %.2fs paths=%ld steps=%ld mpfr=%ld fail=%ld esc1=%ld esc2=%ld singref=%ld defl256=%ld\n",
           tag, el(t0), tc.paths.load(), tc.steps.load(), tc.mpfr_paths.load(),
           tc.path_failures.load(), tc.escalate_phase1.load(), tc.escalate_endgame.load(),
           tc.singular_refines.load(), tc.deflate_256.load());
    fflush(stdout);
    tc.reset();
}

int main() {
    FocusQuantitySet fq = focus_quantities_cached(4, "");
    printf("fq done\n");
    fflush(stdout);
    std::vector<std::string> vars{"a1", "a2", "a3", "a4", "a5"};
    Poly g2 = integer_primitive(fq.at(2).normalized.dehomogenize("a6", QC(0)));
    Poly g3 = integer_primitive(fq.at(3).normalized.dehomogenize("a6", QC(0)));
    Poly g4 = integer_primitive(fq.at(4).normalized.dehomogenize("a6", QC(0)));
    NidOptions nid;
    nid.track.workers = 2;
    nid.seed = 2026;
    Rng r1(2026, "bench-l2");
    auto t0 = Clock::now();
    auto comps = decompose_hypersurface(g2, Ambient::Projective, "", r1, nid);
    dump("level2", t0);
    printf("  comps=%zu deg=%ld\n", comps.size(), comps[0].ws.degree);
    fflush(stdout);

    t0 = Clock::now();
    Rng r2(2026, "bench-l3");
    auto regen = regenerate_intersect(comps[0].ws, g3, r2, nid);
    dump("level3-regen", t0);
    printf("  distinct=%zu\n", regen.points.size());
    fflush(stdout);

    WitnessSet w3;
    w3.system = {g2, g3};
    w3.randomized = w3.system;
    w3.slice.forms.assign(comps[0].ws.slice.forms.begin() + 1, comps[0].ws.slice.forms.end());
    w3.patch = comps[0].ws.patch;
    w3.vars = vars;
    w3.ambient = Ambient::Projective;
    w3.dim = 2;
    w3.points = regen.points;
    w3.degree = (long)regen.points.size();
    t0 = Clock::now();
    Rng r3(2026, "bench-mono3");
    auto groups = monodromy_partition(w3, r3, nid);
    dump("level3-monodromy", t0);
    printf("  groups=%zu\n", groups.size());
    fflush(stdout);

    t0 = Clock::now();
    Rng r4(2026, "bench-l4");
    auto regen4 = regenerate_intersect(w3, g4, r4, nid);
    dump("level4-regen", t0);
    printf("  distinct=%zu counts:", regen4.points.size());
    for (auto c : regen4.path_counts) printf(" %d", c);
    printf("\n");
    fflush(stdout);

    WitnessSet w4;
    w4.system = {g2, g3, g4};
    w4.randomized = w4.system;
    w4.slice.forms.assign(w3.slice.forms.begin() + 1, w3.slice.forms.end());
    w4.patch = w3.patch;
    w4.vars = vars;
    w4.ambient = Ambient::Projective;
    w4.dim = 1;
    w4.points = regen4.points;
    w4.degree = (long)regen4.points.size();
    t0 = Clock::now();
    Rng r5(2026, "bench-mono4");
    auto groups4 = monodromy_partition(w4, r5, nid);
    dump("level4-monodromy", t0);
    printf("  groups:");
    for (auto& g : groups4) printf(" %zu", g.size());
    printf("\n");
    fflush(stdout);
    return 0;
}
