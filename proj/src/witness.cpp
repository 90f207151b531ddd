#include "centerfocus/witness.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>

namespace centerfocus {

namespace {

QC qc_from_mpcomplex_exact(const MpComplex& c) {
    mpq_t q;
    mpq_init(q);
    QC out;
    if (!mpfr_number_p(c.re.raw()) || !mpfr_number_p(c.im.raw()))
        throw std::runtime_error("cannot convert non-finite value to exact");
    mpfr_get_q(q, c.re.raw());
    out.re = Rat(mpq_class(q));
    mpfr_get_q(q, c.im.raw());
    out.im = Rat(mpq_class(q));
    mpq_clear(q);
    out.re.canonicalize();
    out.im.canonicalize();
    return out;
}

MpComplex eval_form_at(const Poly& form, const Point& p, mpfr_prec_t prec) {
    return eval_poly_at(form.vars() == std::vector<std::string>() ? form : form, p, prec);
}

double coeff_norm_inf(const Poly& f) {
    double m = 0;
    for (const auto& [mono, c] : f.terms())
        m = std::max(m, std::abs(qc_to_dcomplex(c)));
    return std::max(1.0, m);
}

// lambda-linear deflation companion of a row
Poly deflation_row(const Poly& e, const std::vector<std::vector<QC>>& B,
                   const std::vector<std::string>& lvars, const std::vector<std::string>& newvars) {
    Poly row{newvars};
    std::size_t prev_nv = B.size();
    for (std::size_t j = 0; j < lvars.size(); ++j) {
        Poly coef{e.vars()};
        for (std::size_t v = 0; v < prev_nv; ++v) {
            if (B[v][j].is_zero()) continue;
            coef += e.differentiate(v).scaled(B[v][j]);
        }
        if (!coef.is_zero()) row += coef.extend_vars(newvars) * Poly::variable(lvars[j], newvars);
    }
    return row;
}

// per-point tracking recipe: fixed rows plus a builder for slice-derived
// rows, structurally deflated when the witness point is singular
struct PointTrack {
    struct Round {
        std::vector<std::vector<QC>> B;
        std::vector<QC> b;
        std::vector<std::string> lvars;
    };
    std::vector<Round> chain;
    std::vector<std::string> vars;
    std::vector<Poly> fixed_rows;
    Point start;

    std::vector<Poly> slice_rows(const std::vector<Poly>& forms) const {
        std::vector<Poly> rows;
        for (const auto& f : forms) rows.push_back(f);
        std::vector<std::string> cur_vars = rows.empty() ? std::vector<std::string>{} : rows[0].vars();
        for (const auto& rd : chain) {
            std::vector<std::string> next_vars = cur_vars;
            next_vars.insert(next_vars.end(), rd.lvars.begin(), rd.lvars.end());
            std::vector<Poly> next;
            for (const auto& r : rows) next.push_back(r.extend_vars(next_vars));
            for (const auto& r : rows) next.push_back(deflation_row(r, rd.B, rd.lvars, next_vars));
            rows = std::move(next);
            cur_vars = std::move(next_vars);
        }
        std::vector<Poly> out;
        for (auto& r : rows) out.push_back(r.extend_vars(vars));
        return out;
    }
};

// assemble the full current system of a track (fixed + slice rows)
std::vector<Poly> full_rows(const PointTrack& pt, const std::vector<Poly>& slice_forms) {
    std::vector<Poly> rows = pt.fixed_rows;
    auto sr = pt.slice_rows(slice_forms);
    rows.insert(rows.end(), sr.begin(), sr.end());
    return rows;
}

PointTrack build_point_track(const WitnessSet& ws, const Point& p, Rng& rng) {
    PointTrack pt;
    pt.vars = ws.vars;
    pt.start = p;
    pt.fixed_rows = ws.randomized;
    pt.fixed_rows.push_back(ws.patch);

    for (int round = 0; round < 3; ++round) {
        auto sys = full_rows(pt, ws.slice.forms);
        auto est = jacobian_corank(sys, pt.vars, pt.start);
        if (est.ambiguous) {
            auto ref = newton_refine(sys, pt.vars, point_convert(pt.start, 128), 1e-25, 128, 50);
            pt.start = ref.x;
            est = jacobian_corank(sys, pt.vars, pt.start);
        }
        if (est.ambiguous) {
            auto ref = newton_refine(sys, pt.vars, point_convert(pt.start, 256), 1e-50, 256, 90);
            pt.start = ref.x;
            est = jacobian_corank(sys, pt.vars, pt.start);
            if (est.ambiguous)
                throw std::runtime_error("witness point rank estimation stays ambiguous");
        }
        if (est.corank == 0) return pt;
        if (round == 2) throw std::runtime_error("witness point not regularized by deflation");

        std::size_t m = pt.vars.size();
        std::size_t r = m - est.corank;
        PointTrack::Round rd;
        rd.B.assign(m, std::vector<QC>(r + 1));
        for (auto& row : rd.B)
            for (auto& c : row) c = rng.next_qc();
        rd.b.assign(r + 1, QC());
        for (auto& c : rd.b) c = rng.next_qc();
        for (std::size_t j = 0; j <= r; ++j)
            rd.lvars.push_back("wl" + std::to_string(round + 1) + "_" + std::to_string(j));

        std::vector<std::string> newvars = pt.vars;
        newvars.insert(newvars.end(), rd.lvars.begin(), rd.lvars.end());

        // companions of the fixed rows, then the normalization row
        std::vector<Poly> nf;
        for (const auto& e : pt.fixed_rows) nf.push_back(e.extend_vars(newvars));
        for (const auto& e : pt.fixed_rows) nf.push_back(deflation_row(e, rd.B, rd.lvars, newvars));
        Poly norm{newvars};
        for (std::size_t j = 0; j <= r; ++j)
            norm += Poly::variable(rd.lvars[j], newvars).scaled(rd.b[j]);
        norm -= Poly::constant(QC(1), newvars);
        nf.push_back(norm);

        // initial lambda estimate: least squares on [J*B; b] lambda = [0;1]
        {
            mpfr_prec_t prec = pt.start[0].prec();
            auto cs = CompiledSystem<MpComplex>::compile(sys, pt.vars, prec);
            std::vector<std::vector<MpComplex>> pw, J;
            auto x = point_convert(pt.start, prec);
            cs.fill_powers(x, pw);
            cs.eval_jacobian(pw, J);
            std::vector<std::vector<MpComplex>> M;
            for (std::size_t i = 0; i < sys.size(); ++i) {
                std::vector<MpComplex> row;
                for (std::size_t j = 0; j <= r; ++j) {
                    MpComplex s(prec);
                    for (std::size_t v = 0; v < m; ++v)
                        s += J[i][v] * MpComplex::from(rd.B[v][j], prec);
                    row.push_back(std::move(s));
                }
                M.push_back(std::move(row));
            }
            std::vector<MpComplex> brow;
            for (std::size_t j = 0; j <= r; ++j) brow.push_back(MpComplex::from(rd.b[j], prec));
            M.push_back(std::move(brow));
            std::vector<MpComplex> rhs(sys.size(), MpComplex(prec));
            rhs.push_back(MpComplex::from(QC(1), prec));
            auto qr = QRFactor<MpComplex>::factor(M);
            auto lam = qr.solve_ls(std::move(rhs));
            for (auto& l : lam) pt.start.push_back(std::move(l));
        }

        pt.fixed_rows = std::move(nf);
        pt.chain.push_back(std::move(rd));
        pt.vars = std::move(newvars);

        // polish the extended point
        auto polished = newton_refine(full_rows(pt, ws.slice.forms), pt.vars, pt.start, 1e-11,
                                      pt.start[0].prec(), 40);
        if (polished.residual < 1e-6) pt.start = polished.x;
    }
    return pt;  // unreachable
}

// track one point through a single slice move; returns nullopt on failure
std::optional<Point> move_point(const PointTrack& pt, const std::vector<Poly>& from_forms,
                                const std::vector<Poly>& to_forms, const QC& gamma,
                                const TrackOptions& topts) {
    Homotopy h;
    h.vars = pt.vars;
    h.fixed = pt.fixed_rows;
    h.targets = pt.slice_rows(to_forms);
    h.starts = pt.slice_rows(from_forms);
    h.gammas.assign(h.targets.size(), gamma);
    TrackOptions o = topts;
    o.assume_regular_endpoint = true;
    auto res = track_path(h, pt.start, o);
    if (res.status != PathStatus::Converged) return std::nullopt;
    return res.endpoint;
}

DPoint x_part(const Point& p, std::size_t base_nv) {
    DPoint out;
    for (std::size_t i = 0; i < base_nv; ++i) out.push_back(p[i].to_dcomplex());
    return out;
}

}  // namespace

std::vector<Poly> WitnessSet::sliced_square() const {
    std::vector<Poly> sys = randomized;
    sys.insert(sys.end(), slice.forms.begin(), slice.forms.end());
    sys.push_back(patch);
    return sys;
}

void WitnessSet::check_invariants(const TrackOptions& opts) const {
    if (static_cast<long>(points.size()) != degree)
        throw std::runtime_error("witness set: |W| != degree");
    auto sys = sliced_square();
    for (const auto& p : points) {
        double r = residual_at(sys, vars, p);
        if (r > 1e-6) throw std::runtime_error("witness point residual too large");
    }
    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t j = i + 1; j < points.size(); ++j)
            if (points_equal(point_to_double(points[i]), point_to_double(points[j]),
                             opts.point_equality_tol))
                throw std::runtime_error("witness points not pairwise distinct");
}

Poly random_patch(const std::vector<std::string>& vars, Rng& rng) {
    Poly p{vars};
    for (const auto& v : vars) p += Poly::variable(v, vars).scaled(rng.next_qc() + QC(Rat(1, 2)));
    return p - Poly::constant(QC(1), vars);
}

Poly random_linear_form(const std::vector<std::string>& vars, Rng& rng) {
    Poly p{vars};
    for (const auto& v : vars) p += Poly::variable(v, vars).scaled(rng.next_qc() + QC(Rat(1, 4)));
    return p;
}

std::vector<Poly> randomize_to_codim(const std::vector<Poly>& polys, std::size_t codim, Rng& rng,
                                     const std::vector<std::string>& vars) {
    if (polys.size() == codim) return polys;
    if (polys.size() < codim)
        throw std::invalid_argument("cannot randomize below the equation count");
    std::vector<Poly> out;
    for (std::size_t i = 0; i < codim; ++i) {
        Poly r{vars};
        for (const auto& f : polys) {
            Poly ff = f.vars() == vars ? f : f.extend_vars(vars);
            r += ff.scaled(rng.next_qc() + QC(Rat(1, 3)));
        }
        out.push_back(r);
    }
    return out;
}

Point rescale_to_patch(const Point& p, const Poly& patch, const std::vector<std::string>& vars) {
    mpfr_prec_t prec = p[0].prec();
    Poly hom = patch + Poly::constant(QC(1), patch.vars());  // c.x
    MpComplex val = eval_poly_at(hom.vars() == vars ? hom : hom.extend_vars(vars), p, prec);
    Point out;
    out.reserve(p.size());
    for (const auto& c : p) out.push_back(c / val);
    return out;
}

bool at_chart_infinity(const Point& p, const std::vector<std::string>& vars,
                       const std::string& infinity_var, double tol) {
    if (infinity_var.empty()) return false;
    std::size_t idx = std::find(vars.begin(), vars.end(), infinity_var) - vars.begin();
    double maxc = 0;
    for (const auto& c : p) maxc = std::max(maxc, c.abs_approx());
    if (maxc == 0) return true;
    return p[idx].abs_approx() / maxc < tol;
}

std::vector<ComponentRecord> decompose_hypersurface(const Poly& f, Ambient ambient,
                                                    const std::string& infinity_var, Rng& rng,
                                                    const NidOptions& opts) {
    if (f.is_constant()) throw std::invalid_argument("decompose_hypersurface: constant polynomial");
    const auto vars = f.vars();
    const std::size_t N = vars.size();
    const int g = f.degree();

    for (int attempt = 0; attempt < 4; ++attempt) {
        Rng slice_rng = rng.fork("hypersurface-slice-" + std::to_string(attempt));
        std::uint64_t slice_seed = slice_rng.next_u64();
        Rng draw(slice_seed, "forms");

        WitnessSet ws;
        ws.system = {f};
        ws.randomized = {f};
        ws.vars = vars;
        ws.ambient = ambient;
        ws.infinity_var = infinity_var;
        ws.dim = static_cast<int>(N) - 2;  // projective dimension of a hypersurface
        ws.patch = random_patch(vars, draw);
        ws.slice.seed = slice_seed;
        for (std::size_t i = 0; i + 2 < N; ++i) ws.slice.forms.push_back(random_linear_form(vars, draw));

        // exact generic line: common zero of slice + patch
        QCMatrix A;
        std::vector<QC> b;
        for (const auto& form : ws.slice.forms) {
            std::vector<QC> row(N, QC(0));
            for (const auto& [m, c] : form.terms())
                for (std::size_t v = 0; v < N; ++v)
                    if (m.e[v] == 1) row[v] = c;
            A.push_back(std::move(row));
            b.push_back(QC(0));
        }
        {
            std::vector<QC> row(N, QC(0));
            Poly hom = ws.patch + Poly::constant(QC(1), vars);
            for (const auto& [m, c] : hom.terms())
                for (std::size_t v = 0; v < N; ++v)
                    if (m.e[v] == 1) row[v] = c;
            A.push_back(std::move(row));
            b.push_back(QC(1));
        }
        auto p0 = qc_solve(A, b);
        auto null = qc_nullspace(A);
        if (!p0 || null.size() != 1) continue;

        // univariate restriction r(s) = f(p0 + s q)
        std::vector<std::string> svar{"s"};
        std::map<std::string, Poly> bind;
        for (std::size_t v = 0; v < N; ++v) {
            Poly expr = Poly::constant((*p0)[v], svar);
            expr += Poly::variable("s", svar).scaled(null[0][v]);
            bind[vars[v]] = expr;
        }
        Poly r = f.substitute(bind);
        if (r.degree() != g) continue;  // nongeneric line, redraw

        Rng solve_rng = rng.fork("hypersurface-solve-" + std::to_string(attempt));
        TrackOptions topts = opts.track;
        topts.seed = solve_rng.next_u64();
        auto sol = solve({r}, svar, solve_rng, topts);
        long conv = 0;
        for (auto& pr : sol.paths)
            if (pr.status == PathStatus::Converged) conv++;
        if (conv != g) continue;  // all roots of the restriction must be found

        // witness points from the distinct roots
        std::vector<Point> pts;
        std::vector<int> counts, winds;
        for (std::size_t c = 0; c < sol.solutions.size(); ++c) {
            mpfr_prec_t prec = 53;
            MpComplex s = sol.solutions[c][0];
            Point w;
            for (std::size_t v = 0; v < N; ++v) {
                MpComplex val = MpComplex::from((*p0)[v], prec);
                val += MpComplex::from(null[0][v], prec) * s;
                w.push_back(std::move(val));
            }
            pts.push_back(std::move(w));
            counts.push_back(static_cast<int>(sol.clusters[c].size()));
            int wd = 1;
            for (auto pi : sol.clusters[c]) wd = std::max(wd, sol.paths[pi].winding);
            winds.push_back(wd);
        }
        ws.points = std::move(pts);
        ws.degree = static_cast<long>(ws.points.size());

        // refine (deflating multiple points) so invariants hold
        Rng refine_rng = rng.fork("hypersurface-refine-" + std::to_string(attempt));
        for (auto& w : ws.points) {
            auto rr = refine_possibly_singular(ws.sliced_square(), vars, w, 1e-11, 53, refine_rng);
            if (rr.ok) w = rr.x;
        }

        long mass = std::accumulate(counts.begin(), counts.end(), 0L);
        if (mass != g) continue;

        // partition into irreducible components
        Rng mono_rng = rng.fork("hypersurface-monodromy-" + std::to_string(attempt));
        auto groups = monodromy_partition(ws, mono_rng, opts);

        std::vector<ComponentRecord> out;
        bool all_certified = true;
        for (auto& grp : groups) {
            Rng trace_rng = rng.fork("hypersurface-trace-" + std::to_string(attempt));
            if (!trace_test(ws, grp, trace_rng, opts)) {
                all_certified = false;
                break;
            }
            ComponentRecord rec;
            rec.ws.system = ws.system;
            rec.ws.randomized = ws.randomized;
            rec.ws.slice = ws.slice;
            rec.ws.patch = ws.patch;
            rec.ws.vars = ws.vars;
            rec.ws.ambient = ws.ambient;
            rec.ws.infinity_var = ws.infinity_var;
            rec.ws.dim = ws.dim;
            int mult = counts[grp[0]];
            for (auto i : grp) {
                rec.ws.points.push_back(ws.points[i]);
                rec.path_counts.push_back(counts[i]);
                rec.windings.push_back(winds[i]);
                mult = std::min(mult, counts[i]);
            }
            rec.ws.degree = static_cast<long>(grp.size());
            rec.ws.multiplicity = mult;
            out.push_back(std::move(rec));
        }
        if (!all_certified) continue;

        long degmass = 0;
        for (auto& rec : out) degmass += rec.ws.degree * rec.ws.multiplicity;
        if (degmass != g) continue;

        std::sort(out.begin(), out.end(), [](const ComponentRecord& a, const ComponentRecord& b) {
            if (a.ws.degree != b.ws.degree) return a.ws.degree < b.ws.degree;
            return a.ws.multiplicity < b.ws.multiplicity;
        });
        return out;
    }
    throw std::runtime_error("decompose_hypersurface: no generic slice succeeded");
}

std::vector<std::vector<std::size_t>> monodromy_partition(const WitnessSet& ws, Rng& rng,
                                                          const NidOptions& opts) {
    const std::size_t n = ws.points.size();
    if (n == 0) return {};
    if (n == 1) return {{0}};
    const std::size_t base_nv = ws.vars.size();
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<std::size_t(std::size_t)> find = [&](std::size_t a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    };

    std::vector<PointTrack> tracks;
    Rng defl_rng = rng.fork("monodromy-deflate");
    for (const auto& p : ws.points) tracks.push_back(build_point_track(ws, p, defl_rng));

    std::vector<DPoint> starts;
    for (const auto& p : ws.points) starts.push_back(x_part(p, base_nv));

    TrackOptions topts = opts.track;
    int stable = 0;
    for (int loop = 0; loop < opts.monodromy_max_loops && stable < opts.monodromy_stable_stop;
         ++loop) {
        Rng lr = rng.fork("monodromy-loop-" + std::to_string(loop));
        topts.seed = lr.next_u64();
        // circle through 0 in one complex parameter: lambda = rho*(w - 1)
        // with w on the rational unit circle
        double rho_d = 0.5 + 1.5 * lr.next_double();
        QC rho(Rat(static_cast<long>(rho_d * 1024), 1024));
        std::vector<QC> waypoints{QC(0)};
        for (int k = 0; k < 3; ++k) waypoints.push_back(rho * (lr.next_unit_circle() - QC(1)));
        waypoints.push_back(QC(0));
        std::vector<Poly> dir;
        for (std::size_t j = 0; j < ws.slice.forms.size(); ++j)
            dir.push_back(random_linear_form(ws.vars, lr));

        auto slice_at = [&](const QC& lam) {
            std::vector<Poly> forms;
            for (std::size_t j = 0; j < ws.slice.forms.size(); ++j)
                forms.push_back(ws.slice.forms[j] + dir[j].scaled(lam));
            return forms;
        };

        bool loop_ok = true;
        std::vector<Point> cur;
        for (const auto& t : tracks) cur.push_back(t.start);
        for (std::size_t seg = 0; seg + 1 < waypoints.size() && loop_ok; ++seg) {
            auto from = slice_at(waypoints[seg]);
            auto to = slice_at(waypoints[seg + 1]);
            for (std::size_t i = 0; i < n && loop_ok; ++i) {
                PointTrack t = tracks[i];
                t.start = cur[i];
                auto moved = move_point(t, from, to, QC(1), topts);
                if (!moved)
                    loop_ok = false;
                else
                    cur[i] = *moved;
            }
        }
        if (!loop_ok) continue;  // discard and redraw

        // match loop endpoints with start points
        std::vector<long> match(n, -1);
        std::vector<bool> used(n, false);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                if (used[j]) continue;
                if (points_equal(x_part(cur[i], base_nv), starts[j], opts.track.point_equality_tol)) {
                    match[i] = static_cast<long>(j);
                    used[j] = true;
                    break;
                }
            }
        }
        bool complete = std::all_of(match.begin(), match.end(), [](long m) { return m >= 0; });
        if (!complete) continue;

        bool merged = false;
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t a = find(i), bb = find(static_cast<std::size_t>(match[i]));
            if (a != bb) {
                parent[a] = bb;
                merged = true;
            }
        }
        stable = merged ? 0 : stable + 1;
    }

    std::map<std::size_t, std::vector<std::size_t>> grouped;
    for (std::size_t i = 0; i < n; ++i) grouped[find(i)].push_back(i);
    std::vector<std::vector<std::size_t>> out;
    for (auto& [root, members] : grouped) out.push_back(members);
    std::sort(out.begin(), out.end());
    return out;
}

bool trace_test(const WitnessSet& ws, const std::vector<std::size_t>& group, Rng& rng,
                const NidOptions& opts) {
    const std::size_t base_nv = ws.vars.size();
    if (ws.slice.forms.empty()) return true;  // zero-dimensional: nothing to certify
    Rng tr = rng.fork("trace");
    TrackOptions topts = opts.track;
    topts.seed = tr.next_u64();
    QC sigma = (tr.next_qc() + QC(Rat(1, 8))) * QC(Rat(1, 8));
    Poly hom = ws.patch + Poly::constant(QC(1), ws.vars);  // c.x

    Rng defl_rng = tr.fork("trace-deflate");
    std::vector<PointTrack> tracks;
    for (auto i : group) tracks.push_back(build_point_track(ws, ws.points[i], defl_rng));

    auto translated = [&](const QC& s) {
        std::vector<Poly> forms = ws.slice.forms;
        forms[0] = forms[0] - hom.scaled(s);
        return forms;
    };

    // centroids at s = 0, sigma, 2 sigma
    auto centroid = [&](const std::vector<Point>& pts) {
        DPoint c(base_nv, {0.0, 0.0});
        for (const auto& p : pts)
            for (std::size_t v = 0; v < base_nv; ++v) c[v] += p[v].to_dcomplex();
        for (auto& x : c) x /= static_cast<double>(pts.size());
        return c;
    };

    std::vector<Point> at0;
    for (const auto& t : tracks) at0.push_back(t.start);
    std::vector<Point> at1, at2;
    for (std::size_t i = 0; i < tracks.size(); ++i) {
        auto m1 = move_point(tracks[i], translated(QC(0)), translated(sigma), QC(1), topts);
        if (!m1) return false;
        at1.push_back(*m1);
        auto m2 =
            move_point(tracks[i], translated(QC(0)), translated(sigma * QC(2)), QC(1), topts);
        if (!m2) return false;
        at2.push_back(*m2);
    }
    DPoint c0 = centroid(at0), c1 = centroid(at1), c2 = centroid(at2);
    double defect = 0, motion = 0;
    for (std::size_t v = 0; v < base_nv; ++v) {
        defect = std::max(defect, std::abs(c0[v] - 2.0 * c1[v] + c2[v]));
        motion = std::max(motion, std::abs(c1[v] - c0[v]) + std::abs(c2[v] - c1[v]));
    }
    if (motion < 1e-12) return defect < 1e-10;
    return defect <= opts.trace_tol * motion;
}

bool membership_test(const Point& p, const WitnessSet& ws, Rng& rng, const NidOptions& opts) {
    const std::size_t base_nv = ws.vars.size();
    Rng mr = rng.fork("membership");
    TrackOptions topts = opts.track;
    topts.seed = mr.next_u64();

    // exact dyadic image of p, rescaled onto the witness patch
    Point pp = rescale_to_patch(p, ws.patch, ws.vars);
    std::vector<QC> pq;
    for (const auto& c : pp) pq.push_back(qc_from_mpcomplex_exact(c));

    Poly hom = ws.patch + Poly::constant(QC(1), ws.vars);
    // generic slice through pq: R_j - R_j(pq) * (c.x)
    std::vector<Poly> to_forms;
    for (std::size_t j = 0; j < ws.slice.forms.size(); ++j) {
        Poly rj = random_linear_form(ws.vars, mr);
        QC val(0);
        for (const auto& [m, c] : rj.terms())
            for (std::size_t v = 0; v < base_nv; ++v)
                if (m.e[v] == 1) val += c * pq[v];
        to_forms.push_back(rj - hom.scaled(val));
    }

    Rng defl_rng = mr.fork("membership-deflate");
    for (std::size_t i = 0; i < ws.points.size(); ++i) {
        auto t = build_point_track(ws, ws.points[i], defl_rng);
        auto moved = move_point(t, ws.slice.forms, to_forms, mr.next_unit_circle(), topts);
        if (!moved) continue;
        if (points_equal(x_part(*moved, base_nv), point_to_double(pp), opts.track.point_equality_tol))
            return true;
    }
    return false;
}

bool vanishes_on_witness(const Poly& f, const WitnessSet& ws, Rng& rng, const NidOptions& opts) {
    Poly ff = f.vars() == ws.vars ? f : f.extend_vars(ws.vars);
    double scale = coeff_norm_inf(ff);
    Rng vr = rng.fork("vanish-refine");
    for (const auto& p : ws.points) {
        auto rr = refine_possibly_singular(ws.sliced_square(), ws.vars, p, 1e-50, opts.vanish_prec, vr);
        const Point& q = rr.ok ? rr.x : p;
        double v = eval_poly_at(ff, q, opts.vanish_prec).abs_approx();
        if (v > opts.vanish_tol * scale) return false;
    }
    return true;
}

void refine_witness_points(WitnessSet& ws, mpfr_prec_t prec, double target_residual, Rng& rng) {
    auto sys = ws.sliced_square();
    for (auto& p : ws.points) {
        auto rr = refine_possibly_singular(sys, ws.vars, p, target_residual, prec, rng);
        if (rr.ok) p = rr.x;
    }
}

RegenerationResult regenerate_intersect(const WitnessSet& ws, const Poly& f_next, Rng& rng,
                                        const NidOptions& opts) {
    if (ws.dim < 1) throw std::invalid_argument("regenerate_intersect needs a positive-dimensional set");
    Rng rr = rng.fork("regen");
    if (vanishes_on_witness(f_next, ws, rr, opts))
        throw std::domain_error("f_next vanishes identically on the component");

    RegenerationResult out;
    const std::size_t base_nv = ws.vars.size();
    Poly fn = f_next.vars() == ws.vars ? f_next : f_next.extend_vars(ws.vars);
    const int g = fn.degree();

    // split the slice: first form moves, the rest stay
    std::vector<Poly> K(ws.slice.forms.begin() + 1, ws.slice.forms.end());
    std::vector<Poly> fixed = ws.randomized;
    fixed.insert(fixed.end(), K.begin(), K.end());
    fixed.push_back(ws.patch);

    TrackOptions topts = opts.track;

    // stage A: move the free hyperplane to g general positions
    std::vector<Point> union_pts;
    std::vector<Poly> stageA_forms;
    for (int l = 0; l < g; ++l) {
        bool ok = false;
        for (int attempt = 0; attempt < 3 && !ok; ++attempt) {
            Rng hr = rr.fork("H-" + std::to_string(l) + "-" + std::to_string(attempt));
            Poly H = random_linear_form(ws.vars, hr);
            Homotopy h;
            h.vars = ws.vars;
            h.fixed = fixed;
            h.targets = {H};
            h.starts = {ws.slice.forms[0]};
            h.gammas = {hr.next_unit_circle()};
            topts.seed = hr.next_u64();
            topts.assume_regular_endpoint = true;
            auto results = track_paths(h, ws.points, topts);
            std::vector<Point> endpoints;
            bool all = true;
            for (auto& res : results) {
                out.paths_tracked++;
                if (res.status != PathStatus::Converged) {
                    all = false;
                    break;
                }
                endpoints.push_back(res.endpoint);
            }
            if (all) {
                union_pts.insert(union_pts.end(), endpoints.begin(), endpoints.end());
                stageA_forms.push_back(H);
                ok = true;
            }
        }
        if (!ok) throw std::runtime_error("regeneration stage A failed");
    }

    // stage B: deform the union of hyperplanes into V(f_next)
    Poly prod = Poly::constant(QC(1), ws.vars);
    for (const auto& H : stageA_forms) prod = prod * H;
    topts.assume_regular_endpoint = false;
    Rng br = rr.fork("stageB");
    Homotopy hb;
    hb.vars = ws.vars;
    hb.fixed = fixed;
    hb.targets = {fn};
    hb.starts = {prod};
    hb.gammas = {br.next_unit_circle()};
    topts.seed = br.next_u64();
    auto results = track_paths(hb, union_pts, topts);

    if (std::getenv("CF_TRACE_ENDGAME")) {
        for (std::size_t i = 0; i < results.size(); ++i) {
            auto& res = results[i];
            std::fprintf(stderr, "[stageB] path %zu (H%zu pt%zu): status=%d winding=%d |x|=%.3g\n",
                         i, i / ws.points.size(), i % ws.points.size(), (int)res.status,
                         res.winding, point_norm_inf(res.endpoint_d()));
        }
    }

    std::vector<DPoint> finite;
    std::vector<std::size_t> finite_idx;
    std::vector<PathResult>* resp = &results;
    for (std::size_t i = 0; i < resp->size(); ++i) {
        auto& res = (*resp)[i];
        out.paths_tracked++;
        if (res.status == PathStatus::Diverged) continue;
        if (res.status != PathStatus::Converged) {
            out.failures++;
            continue;
        }
        if (ws.ambient == Ambient::AffineChart &&
            at_chart_infinity(res.endpoint, ws.vars, ws.infinity_var, opts.infinity_tol)) {
            out.infinity_points.push_back(res.endpoint);
            continue;
        }
        finite.push_back(res.endpoint_d());
        finite_idx.push_back(i);
    }
    auto cl = cluster_points(finite, opts.track.point_equality_tol);
    std::size_t nc = cl.empty() ? 0 : *std::max_element(cl.begin(), cl.end()) + 1;
    out.points.resize(nc);
    out.path_counts.assign(nc, 0);
    out.windings.assign(nc, 1);
    for (std::size_t k = 0; k < finite.size(); ++k) {
        auto& res = (*resp)[finite_idx[k]];
        if (out.path_counts[cl[k]] == 0) out.points[cl[k]] = res.endpoint;
        out.path_counts[cl[k]]++;
        out.windings[cl[k]] = std::max(out.windings[cl[k]], res.winding);
    }
    (void)base_nv;
    return out;
}

}  // namespace centerfocus
