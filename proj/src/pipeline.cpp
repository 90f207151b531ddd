#include "centerfocus/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <sstream>

namespace {
bool progress_enabled() {
    static bool on = std::getenv("CF_PROGRESS") != nullptr;
    return on;
}
void progress(const std::string& msg) {
    if (progress_enabled()) std::fprintf(stderr, "[pipeline] %s\n", msg.c_str());
}
}  // namespace

namespace centerfocus {

PipelineConfig PipelineConfig::from_map(const std::map<std::string, std::string>& kv) {
    PipelineConfig c;
    auto get = [&](const char* k) -> std::optional<std::string> {
        auto it = kv.find(k);
        if (it == kv.end()) return std::nullopt;
        return it->second;
    };
    if (auto v = get("chart")) {
        c.run_a6_0 = *v == "a6_0" || *v == "both";
        c.run_a6_1 = *v == "a6_1" || *v == "both";
    }
    if (auto v = get("kmax")) c.kmax = std::stoi(*v);
    if (auto v = get("seed")) c.seed = std::stoull(*v);
    if (auto v = get("workers")) c.workers = std::stoi(*v);
    if (auto v = get("tol_endpoint")) c.tol_endpoint = std::stod(*v);
    if (auto v = get("tol_point_eq")) c.tol_point_eq = std::stod(*v);
    if (auto v = get("tol_real")) c.tol_real = std::stod(*v);
    if (auto v = get("tol_vanish")) c.tol_vanish = std::stod(*v);
    if (auto v = get("outdir")) c.outdir = *v;
    if (auto v = get("manifest")) c.manifest_path = *v;
    if (auto v = get("max_level")) c.max_level = std::stoi(*v);
    return c;
}

NidOptions PipelineConfig::nid_options() const {
    NidOptions o;
    o.track.workers = workers;
    o.track.endpoint_tol = tol_endpoint;
    o.track.point_equality_tol = tol_point_eq;
    o.vanish_tol = tol_vanish;
    o.seed = seed;
    return o;
}

namespace {

struct ActiveComponent {
    ComponentRecord rec;
    CenterCondition cc;
    bool exactified = false;
};

struct PointCandidate {
    Point p;
    int found_level = 0;
    int path_count = 1;
    int winding = 1;
    CenterCondition cc;
    bool exact = false;
    std::string source;
};

std::string flag_text(ComponentRecord::RealFlag f) {
    switch (f) {
        case ComponentRecord::RealFlag::Yes:
            return "yes";
        case ComponentRecord::RealFlag::No:
            return "no";
        default:
            return "unknown";
    }
}

ComponentRecord::RealFlag flag_from_text(const std::string& s) {
    if (s == "yes") return ComponentRecord::RealFlag::Yes;
    if (s == "no") return ComponentRecord::RealFlag::No;
    return ComponentRecord::RealFlag::Unknown;
}

QCMatrix generator_rows(const std::vector<Poly>& gens, std::size_t nv, bool with_constant) {
    QCMatrix rows;
    for (const auto& g : gens) {
        std::vector<QC> row(nv + (with_constant ? 1 : 0), QC(0));
        for (const auto& [m, c] : g.terms()) {
            if (m.deg == 0) {
                if (with_constant) row[nv] = c;
                continue;
            }
            for (std::size_t v = 0; v < nv; ++v)
                if (m.e[v] == 1 && m.deg == 1) row[v] = c;
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

bool rational_linear_component(const CenterCondition& cc, const WitnessSet& ws) {
    if (cc.generators.empty()) return false;
    std::size_t nv = cc.generators[0].nvars();
    for (const auto& g : cc.generators) {
        if (g.degree() > 1) return false;
        for (const auto& [m, c] : g.terms())
            if (!c.is_real()) return false;
    }
    auto rows = generator_rows(cc.generators, nv, false);
    auto piv = qc_rref(rows);
    std::size_t chart_dim = ws.vars.size() - 1;
    std::size_t codim = chart_dim - static_cast<std::size_t>(ws.dim);
    return piv.size() == codim;
}

struct ChartRunner {
    Chart chart;
    const FocusQuantitySet& fq;
    const PipelineConfig& config;
    NidOptions nid;
    Rng rng;
    ChartReport report;
    std::vector<std::string> vars;
    std::string infinity_var;
    Ambient ambient;
    std::map<int, Poly> f;
    int next_id = 0;

    std::vector<ActiveComponent> active;
    std::vector<PointCandidate> points;

    ChartRunner(Chart ch, const FocusQuantitySet& q, const PipelineConfig& cfg)
        : chart(ch), fq(q), config(cfg), nid(cfg.nid_options()),
          rng(cfg.seed, ch == Chart::A6Zero ? "chart-a6_0" : "chart-a6_1") {
        report.chart = ch;
        ambient = ch == Chart::A6Zero ? Ambient::Projective : Ambient::AffineChart;
        if (ch == Chart::A6Zero) {
            vars = {"a1", "a2", "a3", "a4", "a5"};
            infinity_var.clear();
            for (int K = 2; K <= fq.kmax; ++K)
                f[K] = integer_primitive(fq.at(K).normalized.dehomogenize("a6", QC(0)));
        } else {
            vars = kParamVars;
            infinity_var = "a6";
            for (int K = 2; K <= fq.kmax; ++K) f[K] = fq.at(K).normalized;
        }
    }

    std::string chart_tag() const { return chart == Chart::A6Zero ? "a6_0" : "a6_1"; }
    std::string fresh_id(int level) {
        return (chart == Chart::A6Zero ? "Z" : "O") + std::to_string(level) + "_" +
               std::to_string(next_id++);
    }

    ExactifyOptions exopts() const {
        ExactifyOptions e;
        e.validation_tol = config.tol_vanish;
        e.realness_tol = config.tol_real;
        return e;
    }

    void add_row(const ActiveComponent& ac, const std::string& disposition) {
        ComponentRow row;
        row.id = ac.rec.id;
        row.parent = ac.rec.parent_id;
        row.level = ac.rec.level;
        row.dim = ac.rec.ws.dim;
        row.degree = ac.rec.ws.degree;
        row.multiplicity = ac.rec.ws.multiplicity;
        row.real_flag = flag_text(ac.rec.real_flag);
        row.contained_in_next = ac.rec.contained_in_next;
        row.disposition = disposition;
        report.table.push_back(row);
    }

    void exactify_component(ActiveComponent& ac, int degree_bound) {
        if (ac.exactified) return;
        Rng er = rng.fork("exactify-" + ac.rec.id);
        ac.cc = recover_polynomials(ac.rec.ws, degree_bound, er, exopts());
        ac.cc.chart = chart;
        ac.cc.source_component = ac.rec.id;
        ac.exactified = true;
    }

    bool subsumed_in(const std::vector<Poly>& constraints, const ActiveComponent& known) {
        if (known.cc.generators.empty()) return false;
        for (const auto& g : known.cc.generators)
            if (g.degree() > 1) return false;
        std::size_t nv = vars.size();
        auto crows = generator_rows(constraints, nv, true);
        auto krows = generator_rows(known.cc.generators, nv, true);
        return row_span_contains(crows, krows);
    }

    Point affine_coords(const Point& p) const {
        if (ambient != Ambient::AffineChart) return p;
        std::size_t inf = std::find(vars.begin(), vars.end(), infinity_var) - vars.begin();
        Point aff;
        for (std::size_t i = 0; i < p.size(); ++i)
            if (i != inf) aff.push_back(p[i] / p[inf]);
        return aff;
    }

    bool point_on_generators(const Point& p, const std::vector<Poly>& gens, double tol) {
        if (gens.empty()) return false;
        Point q = affine_coords(p);
        for (const auto& g : gens)
            if (eval_poly_at(g, q, q[0].prec()).abs_approx() > tol) return false;
        return true;
    }

    // ---- checkpointing ----

    std::string signature() const {
        std::ostringstream os;
        os << config.kmax << ":" << config.seed << ":" << config.tol_point_eq << ":"
           << config.tol_real << ":" << config.tol_vanish << ":" << chart_tag();
        return os.str();
    }

    std::string state_path(int level) const {
        return config.outdir + "/" + chart_tag() + "_level" + std::to_string(level) + ".state";
    }

    void save_state(int level) {
        if (config.outdir.empty()) return;
        std::ostringstream os;
        os << "# chartstate level " << level << "\n";
        os << "# signature " << signature() << "\n";
        os << "# next_id " << next_id << "\n";
        os << "# components " << active.size() << "\n";
        for (const auto& ac : active) {
            write_component(os, ac.rec);
            os << "# exactified " << (ac.exactified ? 1 : 0) << "\n";
            os << "# generators " << ac.cc.generators.size() << "\n";
            for (const auto& g : ac.cc.generators) os << poly_to_string(g) << "\n";
        }
        os << "# point_candidates " << points.size() << "\n";
        for (const auto& pc : points) {
            os << "# pc " << pc.found_level << " " << pc.path_count << " " << pc.winding << " "
               << (pc.exact ? 1 : 0) << " " << (pc.source.empty() ? "-" : pc.source) << "\n";
            os << point_to_text(pc.p) << "\n";
            os << "# pcgens " << pc.cc.generators.size() << "\n";
            for (const auto& g : pc.cc.generators) os << poly_to_string(g) << "\n";
        }
        os << "# rows " << report.table.size() << "\n";
        for (const auto& r : report.table)
            os << r.level << "|" << r.id << "|" << r.parent << "|" << r.dim << "|" << r.degree
               << "|" << r.multiplicity << "|" << r.real_flag << "|" << r.contained_in_next << "|"
               << r.disposition << "\n";
        os << "# counters " << report.counters.size() << "\n";
        for (const auto& [k, v] : report.counters) os << k << " " << v << "\n";
        write_text_file(state_path(level), os.str());
    }

    bool load_state(int level) {
        if (config.outdir.empty() || !file_exists(state_path(level))) return false;
        std::ifstream in(state_path(level));
        std::string line;
        if (!std::getline(in, line) || line.rfind("# chartstate", 0) != 0) return false;
        if (!std::getline(in, line) || line != "# signature " + signature()) return false;
        active.clear();
        points.clear();
        report.table.clear();
        report.counters.clear();
        long ncomp = 0, npts = 0, nrows = 0, ncnt = 0;
        while (std::getline(in, line)) {
            if (line.rfind("# next_id", 0) == 0) {
                next_id = std::stoi(line.substr(10));
            } else if (line.rfind("# components", 0) == 0) {
                ncomp = std::stol(line.substr(13));
                for (long i = 0; i < ncomp; ++i) {
                    ActiveComponent ac;
                    ac.rec = read_component(in);
                    std::string l2;
                    std::getline(in, l2);  // exactified
                    ac.exactified = l2.back() == '1';
                    std::getline(in, l2);  // generators n
                    long ng = std::stol(l2.substr(13));
                    for (long g = 0; g < ng; ++g) {
                        std::getline(in, l2);
                        ac.cc.generators.push_back(poly_from_string(
                            l2, chart == Chart::A6Zero
                                    ? std::vector<std::string>{"a1", "a2", "a3", "a4", "a5"}
                                    : std::vector<std::string>{"a1", "a2", "a3", "a4", "a5"}));
                    }
                    ac.cc.chart = chart;
                    ac.cc.source_component = ac.rec.id;
                    active.push_back(std::move(ac));
                }
            } else if (line.rfind("# point_candidates", 0) == 0) {
                npts = std::stol(line.substr(19));
                for (long i = 0; i < npts; ++i) {
                    std::string l2;
                    std::getline(in, l2);  // # pc ...
                    std::istringstream hs(l2.substr(5));
                    PointCandidate pc;
                    int ex;
                    hs >> pc.found_level >> pc.path_count >> pc.winding >> ex >> pc.source;
                    if (pc.source == "-") pc.source.clear();
                    pc.exact = ex == 1;
                    std::getline(in, l2);
                    pc.p = point_from_text(l2);
                    std::getline(in, l2);  // # pcgens n
                    long ng = std::stol(l2.substr(9));
                    for (long g = 0; g < ng; ++g) {
                        std::getline(in, l2);
                        pc.cc.generators.push_back(poly_from_string(
                            l2, std::vector<std::string>{"a1", "a2", "a3", "a4", "a5"}));
                    }
                    pc.cc.chart = chart;
                    pc.cc.source_component = pc.source;
                    points.push_back(std::move(pc));
                }
            } else if (line.rfind("# rows", 0) == 0) {
                nrows = std::stol(line.substr(7));
                for (long i = 0; i < nrows; ++i) {
                    std::string l2;
                    std::getline(in, l2);
                    std::vector<std::string> parts;
                    std::string cur;
                    for (char ch : l2) {
                        if (ch == '|') {
                            parts.push_back(cur);
                            cur.clear();
                        } else
                            cur += ch;
                    }
                    parts.push_back(cur);
                    if (parts.size() != 9) return false;
                    ComponentRow r;
                    r.level = std::stoi(parts[0]);
                    r.id = parts[1];
                    r.parent = parts[2];
                    r.dim = std::stoi(parts[3]);
                    r.degree = std::stol(parts[4]);
                    r.multiplicity = std::stoi(parts[5]);
                    r.real_flag = parts[6];
                    r.contained_in_next = parts[7] == "1";
                    r.disposition = parts[8];
                    report.table.push_back(r);
                }
            } else if (line.rfind("# counters", 0) == 0) {
                ncnt = std::stol(line.substr(11));
                for (long i = 0; i < ncnt; ++i) {
                    std::string l2;
                    std::getline(in, l2);
                    std::istringstream cs(l2);
                    std::string k;
                    long v;
                    cs >> k >> v;
                    report.counters[k] = v;
                }
            }
        }
        return true;
    }

    // ---- level machinery ----

    void level2() {
        progress(chart_tag() + " level 2: hypersurface decomposition");
        Rng hr = rng.fork("level2");
        auto comps = decompose_hypersurface(f.at(2), ambient, infinity_var, hr, nid);
        for (auto& c : comps) {
            ActiveComponent ac;
            ac.rec = std::move(c);
            ac.rec.level = 2;
            ac.rec.id = fresh_id(2);
            active.push_back(std::move(ac));
        }
        report.counters["level2_components"] = static_cast<long>(active.size());
        long mass = 0;
        for (const auto& ac : active) mass += ac.rec.ws.degree;
        report.counters["level2_degree"] = mass;
    }

    void run_level(int k) {
        progress(chart_tag() + " level " + std::to_string(k) + ": " +
                 std::to_string(active.size()) + " active components");
        const Poly& fk = f.at(k);
        std::vector<ActiveComponent> next;
        std::vector<ActiveComponent> to_regen;

        // pass 1: carried components stay; they are the membership targets
        for (auto& ac : active) {
            Rng vr = rng.fork("vanish-" + std::to_string(k) + "-" + ac.rec.id);
            progress("  vanishing test for " + ac.rec.id);
            if (vanishes_on_witness(fk, ac.rec.ws, vr, nid)) {
                ac.rec.contained_in_next = true;
                ac.rec.level = k;
                add_row(ac, "carried");
                // exact generators of carried components back the filters
                if (!ac.exactified) exactify_component(ac, ac.rec.ws.degree <= 4 ? 2 : 1);
                next.push_back(ac);
            } else {
                ac.rec.contained_in_next = false;
                to_regen.push_back(ac);
            }
        }

        // pass 2: regenerate the rest
        for (auto& ac : to_regen) {
            if (ac.rec.ws.dim == 0) {
                add_row(ac, "dropped-not-in-next");
                continue;
            }
            add_row(ac, "regenerated");
            progress("  regenerating " + ac.rec.id + " (degree " +
                     std::to_string(ac.rec.ws.degree) + ") against f_" + std::to_string(k));
            Rng rr = rng.fork("regen-" + std::to_string(k) + "-" + ac.rec.id);
            auto regen = regenerate_intersect(ac.rec.ws, fk, rr, nid);
            progress("  regeneration done: " + std::to_string(regen.points.size()) +
                     " distinct points from " + std::to_string(regen.paths_tracked) + " paths");
            std::string lv = "level" + std::to_string(k);
            report.counters[lv + "_paths"] += regen.paths_tracked;
            report.counters[lv + "_infinity"] += static_cast<long>(regen.infinity_points.size());
            report.counters[lv + "_distinct"] += static_cast<long>(regen.points.size());

            std::vector<Poly> sys;
            for (int j = 2; j <= k; ++j) sys.push_back(f.at(j));
            WitnessSet cand;
            cand.system = sys;
            cand.randomized = sys;
            cand.slice.forms.assign(ac.rec.ws.slice.forms.begin() + 1, ac.rec.ws.slice.forms.end());
            cand.slice.seed = ac.rec.ws.slice.seed;
            cand.patch = ac.rec.ws.patch;
            cand.vars = vars;
            cand.ambient = ambient;
            cand.infinity_var = infinity_var;
            cand.dim = ac.rec.ws.dim - 1;
            cand.points = regen.points;
            cand.degree = static_cast<long>(regen.points.size());

            if (cand.dim > 0)
                process_positive_dim(cand, regen, ac, k, next);
            else
                process_points(cand, regen, ac, k, next);
        }
        active = std::move(next);
    }

    void process_positive_dim(WitnessSet& cand, const RegenerationResult& regen,
                              const ActiveComponent& parent, int k,
                              std::vector<ActiveComponent>& next) {
        std::string lv = "level" + std::to_string(k);
        // points on already-kept components are accounted for there
        std::vector<std::size_t> keep_idx;
        for (std::size_t i = 0; i < cand.points.size(); ++i) {
            bool on_known = false;
            for (const auto& known : next)
                if (known.exactified &&
                    point_on_generators(cand.points[i], known.cc.generators, 1e-7))
                    on_known = true;
            if (!on_known) keep_idx.push_back(i);
        }
        report.counters[lv + "_on_known"] +=
            static_cast<long>(cand.points.size() - keep_idx.size());

        WitnessSet pool = cand;
        pool.points.clear();
        std::vector<int> counts, winds;
        for (auto i : keep_idx) {
            pool.points.push_back(cand.points[i]);
            counts.push_back(regen.path_counts[i]);
            winds.push_back(regen.windings[i]);
        }
        pool.degree = static_cast<long>(pool.points.size());

        progress("  monodromy partition of " + std::to_string(pool.points.size()) + " points");
        Rng mr = rng.fork("monodromy-" + std::to_string(k) + "-" + parent.rec.id);
        auto groups = monodromy_partition(pool, mr, nid);
        progress("  " + std::to_string(groups.size()) + " groups");

        // classify every group first, then run the subsumption pass so the
        // order of groups cannot matter
        std::vector<ActiveComponent> fresh;
        std::vector<ComponentRealness> realness;
        for (auto& grp : groups) {
            Rng tr = rng.fork("trace-" + std::to_string(k) + "-" + parent.rec.id + "-" +
                              std::to_string(fresh.size()));
            if (!trace_test(pool, grp, tr, nid)) {
                save_state(k - 1);
                throw std::runtime_error("trace test failed at level " + std::to_string(k) +
                                         "; checkpoint written");
            }
            ActiveComponent ac;
            ac.rec.level = k;
            ac.rec.id = fresh_id(k);
            ac.rec.parent_id = parent.rec.id;
            ac.rec.ws = pool;
            ac.rec.ws.points.clear();
            long mass = 0;
            for (auto i : grp) {
                ac.rec.ws.points.push_back(pool.points[i]);
                ac.rec.path_counts.push_back(counts[i]);
                ac.rec.windings.push_back(winds[i]);
                mass += counts[i];
            }
            ac.rec.ws.degree = static_cast<long>(grp.size());
            ac.rec.ws.multiplicity = static_cast<int>(mass / std::max<long>(1, ac.rec.ws.degree));

            exactify_component(ac, ac.rec.ws.degree <= 4 ? 2 : 1);
            Rng rr = rng.fork("real-" + std::to_string(k) + "-" + ac.rec.id);
            auto real = realness_filter_component(ac.rec.ws, ac.cc, rr, exopts());
            ac.rec.real_flag = real.flag;
            if (ac.rec.real_flag != ComponentRecord::RealFlag::No &&
                rational_linear_component(ac.cc, ac.rec.ws))
                ac.rec.real_flag = ComponentRecord::RealFlag::Yes;
            fresh.push_back(std::move(ac));
            realness.push_back(std::move(real));
        }

        for (std::size_t g = 0; g < fresh.size(); ++g) {
            ActiveComponent& ac = fresh[g];
            if (ac.rec.real_flag == ComponentRecord::RealFlag::No) {
                add_row(ac, "dropped-unreal");
                continue;
            }
            if (realness[g].flag == ComponentRecord::RealFlag::Unknown &&
                !realness[g].real_locus_constraints.empty()) {
                bool sub = false;
                for (const auto& known : next)
                    if (subsumed_in(realness[g].real_locus_constraints, known)) sub = true;
                for (std::size_t h = 0; h < fresh.size() && !sub; ++h)
                    if (h != g && fresh[h].rec.real_flag == ComponentRecord::RealFlag::Yes &&
                        subsumed_in(realness[g].real_locus_constraints, fresh[h]))
                        sub = true;
                if (sub) {
                    add_row(ac, "dropped-subsumed");
                    continue;
                }
            }
            next.push_back(ac);
        }
    }

    void process_points(WitnessSet& cand, const RegenerationResult& regen,
                        const ActiveComponent& parent, int k, std::vector<ActiveComponent>& next) {
        std::string lv = "level" + std::to_string(k);
        progress("  classifying " + std::to_string(cand.points.size()) + " candidate points");
        std::vector<Point> pts = cand.points;
        Rng rr = rng.fork("points-real-" + std::to_string(k));
        auto sys = cand.sliced_square();
        auto real = realness_filter(pts, sys, vars, rr, exopts());
        report.counters[lv + "_real"] =
            static_cast<long>(std::count(real.begin(), real.end(), true));

        std::vector<std::size_t> qualifying;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            if (!real[i]) continue;
            bool member = false;
            for (const auto& known : next) {
                if (known.rec.ws.dim <= 0) continue;
                Rng kr = rng.fork("member-" + std::to_string(k) + "-" + std::to_string(i) + "-" +
                                  known.rec.id);
                if (membership_test(pts[i], known.rec.ws, kr, nid)) {
                    member = true;
                    break;
                }
            }
            if (!member) qualifying.push_back(i);
        }
        report.counters[lv + "_members"] =
            report.counters[lv + "_real"] - static_cast<long>(qualifying.size());
        report.counters[lv + "_qualifying"] = static_cast<long>(qualifying.size());

        const Poly* fnext = (k + 1 <= fq.kmax) ? &f.at(k + 1) : nullptr;
        long pass = 0;
        for (auto i : qualifying) {
            PointCandidate pc;
            pc.p = pts[i];
            pc.found_level = k;
            pc.path_count = regen.path_counts[i];
            pc.winding = regen.windings[i];
            pc.source = parent.rec.id + ":pt" + std::to_string(i);

            WitnessSet single = cand;
            single.points = {pts[i]};
            single.degree = 1;
            Rng er = rng.fork("point-exact-" + std::to_string(k) + "-" + std::to_string(i));
            pc.cc = recover_polynomials(single, 1, er, exopts());
            pc.cc.chart = chart;
            pc.cc.source_component = pc.source;
            pc.exact =
                static_cast<long>(pc.cc.generators.size()) >= static_cast<long>(vars.size()) - 1;

            bool vanishes_next = false;
            if (!fnext) {
                vanishes_next = true;
            } else if (pc.exact) {
                std::vector<Poly> full;
                for (const auto& g : pc.cc.generators) full.push_back(g.extend_vars(kParamVars));
                Poly a6 = Poly::variable("a6", kParamVars);
                full.push_back(chart == Chart::A6Zero ? a6
                                                      : a6 - Poly::constant(QC(1), kParamVars));
                auto par = parametrize_linear(full, kParamVars);
                if (par)
                    vanishes_next =
                        fq.at(k + 1).normalized.substitute(par->bindings).is_zero();
            } else {
                Poly fn = fnext->vars() == vars ? *fnext : fnext->extend_vars(vars);
                double scale = 1.0;
                for (const auto& [m, c] : fn.terms())
                    scale = std::max(scale, std::abs(qc_to_dcomplex(c)));
                Rng pr = rng.fork("point-refine-" + std::to_string(k) + "-" + std::to_string(i));
                auto ref =
                    refine_possibly_singular(cand.sliced_square(), vars, pts[i], 1e-50, 256, pr);
                const Point& q = ref.ok ? ref.x : pts[i];
                vanishes_next = eval_poly_at(fn, q, 256).abs_approx() <= config.tol_vanish * scale;
            }
            if (vanishes_next) {
                pass++;
                points.push_back(std::move(pc));
            }
        }
        report.counters[lv + "_next_vanishing"] += pass;
    }

    void finalize() {
        for (auto& ac : active) {
            exactify_component(ac, 1);
            if (ac.cc.generators.empty()) {
                add_row(ac, "final-unresolved");
                continue;
            }
            auto vo = verify_vanishing(ac.cc, fq);
            if (vo.verified) {
                add_row(ac, "final");
                report.conditions.push_back(ac.cc);
            } else {
                add_row(ac, "final-unverified");
            }
        }
        for (auto& pc : points) {
            if (!pc.exact) continue;
            auto vo = verify_vanishing(pc.cc, fq);
            if (vo.verified) {
                report.conditions.push_back(pc.cc);
                ComponentRow row;
                row.id = pc.source;
                row.level = pc.found_level;
                row.dim = 0;
                row.degree = 1;
                row.multiplicity = pc.path_count;
                row.real_flag = "yes";
                row.disposition = "final";
                report.table.push_back(row);
            }
        }
    }

    void certify() {
        if (config.manifest_path.empty()) return;
        auto cases = load_certificate_manifest(config.manifest_path);
        for (auto& cc : report.conditions) {
            const CertificateCase* match = nullptr;
            for (const auto& cs : cases) {
                if (cs.chart != chart) continue;
                std::vector<Poly> case_gens;
                bool linear = true;
                for (const auto& [param, text] : cs.bindings) {
                    if (param == "a6") continue;
                    std::vector<std::string> gfree =
                        cs.free_symbols.empty() ? std::vector<std::string>{"t0"} : cs.free_symbols;
                    Poly rhs = poly_from_string(text, gfree);
                    Poly gen = Poly::variable(param, vars);
                    Poly rhs_chart{vars};
                    for (const auto& [m, c] : rhs.terms()) {
                        if (m.deg == 0) {
                            rhs_chart += Poly::constant(c, vars);
                            continue;
                        }
                        if (m.deg > 1) {
                            linear = false;
                            break;
                        }
                        for (std::size_t v = 0; v < rhs.vars().size(); ++v)
                            if (m.e[v] == 1)
                                rhs_chart += Poly::variable(rhs.vars()[v], vars).scaled(c);
                    }
                    case_gens.push_back(gen - rhs_chart);
                }
                if (!linear) continue;
                std::size_t nv = vars.size();
                auto arows = generator_rows(
                    [&] {
                        std::vector<Poly> ext;
                        for (const auto& g : cc.generators) ext.push_back(g.extend_vars(vars));
                        return ext;
                    }(),
                    nv, true);
                auto brows = generator_rows(case_gens, nv, true);
                if (row_span_contains(arows, brows) && row_span_contains(brows, arows)) {
                    match = &cs;
                    break;
                }
            }
            if (match) {
                auto outc = run_certificate_case(*match);
                outc.name = match->name + " <- " + cc.source_component;
                report.certificates.push_back(outc);
            } else {
                CaseOutcome miss;
                miss.name = cc.source_component;
                miss.passed = false;
                miss.notes.push_back("no matching certificate case in the manifest");
                report.certificates.push_back(miss);
            }
        }
    }

    ChartReport run() {
        auto t0 = std::chrono::steady_clock::now();
        track_counters().reset();
        const int last_level = config.max_level > 0 ? std::min(config.max_level, fq.kmax) : fq.kmax;

        // resume from the deepest valid checkpoint
        int start_k = 3;
        for (int k = last_level; k >= 2; --k) {
            if (load_state(k)) {
                start_k = k + 1;
                break;
            }
        }
        if (start_k == 3) {
            active.clear();
            points.clear();
            report.table.clear();
            report.counters.clear();
            level2();
            save_state(2);
        }
        for (int k = start_k; k <= last_level; ++k) {
            run_level(k);
            save_state(k);
        }
        finalize();
        certify();
        report.paths_tracked = track_counters().paths.load();
        report.seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        return report;
    }
};

}  // namespace

ChartReport run_chart(Chart chart, const FocusQuantitySet& fq, const PipelineConfig& config) {
    ChartRunner runner(chart, fq, config);
    return runner.run();
}

FocusQuantitySet focus_quantities_cached(int kmax, const std::string& outdir) {
    std::string path =
        outdir.empty() ? "" : outdir + "/focus_quantities_k" + std::to_string(kmax) + ".txt";
    if (!path.empty() && file_exists(path)) {
        std::ifstream in(path);
        auto sf = read_system(in);
        if (static_cast<int>(sf.polys.size()) == kmax - 1) {
            FocusQuantitySet fqs;
            fqs.kmax = kmax;
            fqs.quantities.resize(static_cast<std::size_t>(kmax) + 1);
            Poly zero{std::vector<std::string>(kParamVars)};
            fqs.quantities[1] = {1, zero, zero};
            for (int K = 2; K <= kmax; ++K)
                fqs.quantities[static_cast<std::size_t>(K)] = {
                    K, sf.polys[static_cast<std::size_t>(K - 2)],
                    sf.polys[static_cast<std::size_t>(K - 2)]};
            return fqs;
        }
    }
    ComplexSystem cs = complexify(standard_family());
    FocusQuantitySet fqs = focus_quantities(cs, kmax);
    if (!path.empty()) {
        std::ostringstream os;
        os << "# vars a1 a2 a3 a4 a5 a6\n";
        os << "# count " << kmax - 1 << "\n";
        for (int K = 2; K <= kmax; ++K) {
            const auto& q = fqs.at(K);
            os << "# quantity K " << K << " degree " << q.normalized.degree() << " terms "
               << q.normalized.terms().size() << "\n";
            os << poly_to_string(q.normalized) << "\n";
        }
        write_text_file(path, os.str());
    }
    return fqs;
}

PipelineReport run_pipeline(const PipelineConfig& config) {
    auto t0 = std::chrono::steady_clock::now();
    PipelineReport rep;
    rep.kmax = config.kmax;
    rep.seed = config.seed;
    FocusQuantitySet fq = focus_quantities_cached(config.kmax, config.outdir);

    std::vector<CenterCondition> c0, c1;
    if (config.run_a6_0) {
        rep.charts.push_back(run_chart(Chart::A6Zero, fq, config));
        c0 = rep.charts.back().conditions;
    }
    if (config.run_a6_1) {
        rep.charts.push_back(run_chart(Chart::A6One, fq, config));
        c1 = rep.charts.back().conditions;
    }
    if (config.run_a6_0 && config.run_a6_1) rep.merged_conditions = merge_charts(c0, c1);
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!config.outdir.empty()) {
        write_text_file(config.outdir + "/report.txt", render_report(rep));
    }
    return rep;
}

std::vector<std::vector<Poly>> merge_charts(const std::vector<CenterCondition>& a6_0,
                                            const std::vector<CenterCondition>& a6_1) {
    std::vector<std::vector<Poly>> all;
    for (const auto& cc : a6_1) {
        std::vector<Poly> gens;
        for (const auto& g : cc.generators) {
            Poly gg = g.degree_in(g.nvars() - 1) >= 0 ? g : g;  // no-op, clarity
            Poly h = g.homogenize("a6");
            gens.push_back(h.vars() == kParamVars ? h : h.extend_vars(kParamVars));
        }
        all.push_back(std::move(gens));
    }
    for (const auto& cc : a6_0) {
        std::vector<Poly> gens;
        for (const auto& g : cc.generators) gens.push_back(g.extend_vars(kParamVars));
        gens.push_back(Poly::variable("a6", kParamVars));
        all.push_back(std::move(gens));
    }
    auto rows_of = [](const std::vector<Poly>& gens) { return generator_rows(gens, 6, false); };
    std::vector<bool> drop(all.size(), false);
    for (std::size_t i = 0; i < all.size(); ++i) {
        for (std::size_t j = 0; j < all.size(); ++j) {
            if (i == j || drop[i] || drop[j]) continue;
            bool i_in_j = row_span_contains(rows_of(all[i]), rows_of(all[j]));
            bool j_in_i = row_span_contains(rows_of(all[j]), rows_of(all[i]));
            if (i_in_j && j_in_i)
                drop[std::max(i, j)] = true;
            else if (i_in_j)
                drop[i] = true;
        }
    }
    std::vector<std::vector<Poly>> out;
    for (std::size_t i = 0; i < all.size(); ++i)
        if (!drop[i]) out.push_back(all[i]);
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        auto key = [](const std::vector<Poly>& g) {
            std::string s;
            for (const auto& p : g) s += poly_to_string(p) + ";";
            return std::make_pair(g.size(), s);
        };
        return key(a) < key(b);
    });
    return out;
}

std::string render_report(const PipelineReport& report) {
    std::ostringstream os;
    os << "pipeline report (kmax " << report.kmax << ", seed " << report.seed << ")\n";
    for (const auto& ch : report.charts) {
        os << "\nchart " << (ch.chart == Chart::A6Zero ? "a6 = 0" : "a6 = 1") << "  ["
           << static_cast<long>(ch.seconds) << " s, " << ch.paths_tracked << " paths]\n";
        os << "  level  id         parent     dim  degree  mult  real     disposition\n";
        for (const auto& row : ch.table) {
            char buf[192];
            std::snprintf(buf, sizeof buf, "  %-6d %-10s %-10s %-4d %-7ld %-5d %-8s %s\n",
                          row.level, row.id.c_str(), row.parent.empty() ? "-" : row.parent.c_str(),
                          row.dim, row.degree, row.multiplicity, row.real_flag.c_str(),
                          row.disposition.c_str());
            os << buf;
        }
        for (const auto& [k, v] : ch.counters) os << "  " << k << " = " << v << "\n";
        os << "  conditions:\n";
        for (const auto& cc : ch.conditions) {
            os << "    [" << cc.source_component << "]";
            for (const auto& g : cc.generators) os << "  " << poly_to_string(g);
            os << "  ("
               << (cc.status == CenterCondition::Status::SymbolicallyVerified
                       ? "symbolically-verified"
                       : "numeric-only")
               << ")\n";
        }
        for (const auto& cert : ch.certificates) {
            os << "  certificate " << cert.name << ": " << (cert.passed ? "PASS" : "FAIL") << "\n";
            for (const auto& n : cert.notes) os << "      " << n << "\n";
        }
    }
    if (!report.merged_conditions.empty()) {
        os << "\nmerged center conditions over a1..a6:\n";
        int i = 1;
        for (const auto& gens : report.merged_conditions) {
            os << "  (" << i++ << ")";
            for (const auto& g : gens) os << "  " << poly_to_string(g) << " = 0";
            os << "\n";
        }
    }
    os << "\ntotal time " << static_cast<long>(report.seconds) << " s\n";
    return os.str();
}

}  // namespace centerfocus
