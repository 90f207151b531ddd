#include "centerfocus/track.hpp"
#include "centerfocus/deflate.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <cstdio>
#include <cmath>
#include <map>
#include <thread>

namespace centerfocus {

// --- point utilities ---

DPoint point_to_double(const Point& p) {
    DPoint d;
    d.reserve(p.size());
    for (const auto& c : p) d.push_back(c.to_dcomplex());
    return d;
}

Point point_from_double(const DPoint& p, mpfr_prec_t prec) {
    Point o;
    o.reserve(p.size());
    for (auto c : p) o.push_back(MpComplex::from(c, prec));
    return o;
}

Point point_convert(const Point& p, mpfr_prec_t prec) {
    Point o;
    o.reserve(p.size());
    for (const auto& c : p) {
        MpComplex v(prec);
        v.re = MpReal(prec);
        mpfr_set(v.re.raw(), c.re.raw(), MPFR_RNDN);
        v.im = MpReal(prec);
        mpfr_set(v.im.raw(), c.im.raw(), MPFR_RNDN);
        o.push_back(std::move(v));
    }
    return o;
}

double point_norm_inf(const DPoint& p) {
    double m = 0;
    for (auto c : p) m = std::max(m, std::abs(c));
    return m;
}

double point_distance_rel(const DPoint& a, const DPoint& b) {
    double scale = std::max(1.0, std::max(point_norm_inf(a), point_norm_inf(b)));
    double d = 0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d / scale;
}

bool points_equal(const DPoint& a, const DPoint& b, double tol) {
    return a.size() == b.size() && point_distance_rel(a, b) <= tol;
}

std::vector<std::size_t> cluster_points(const std::vector<DPoint>& pts, double tol) {
    std::vector<std::size_t> cluster(pts.size());
    std::vector<std::size_t> reps;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        std::size_t found = reps.size();
        for (std::size_t r = 0; r < reps.size(); ++r) {
            if (points_equal(pts[i], pts[reps[r]], tol)) {
                found = r;
                break;
            }
        }
        if (found == reps.size()) reps.push_back(i);
        cluster[i] = found;
    }
    return cluster;
}

// --- homotopy ---

void Homotopy::validate() const {
    if (targets.size() != starts.size() || targets.size() != gammas.size())
        throw std::invalid_argument("homotopy moving blocks are inconsistent");
    if (neqs() < vars.size())
        throw std::invalid_argument("homotopy is underdetermined: " + std::to_string(neqs()) +
                                    " eqs, " + std::to_string(vars.size()) + " vars");
}

Homotopy Homotopy::straight_line(std::vector<Poly> target, std::vector<Poly> start,
                                 const std::vector<std::string>& vars, const QC& gamma) {
    Homotopy h;
    h.vars = vars;
    h.targets = std::move(target);
    h.starts = std::move(start);
    h.gammas.assign(h.targets.size(), gamma);
    h.validate();
    return h;
}

template <class CT>
CompiledHomotopy<CT> CompiledHomotopy<CT>::compile(const Homotopy& h, mpfr_prec_t prec) {
    h.validate();
    CompiledHomotopy out;
    out.nv = h.vars.size();
    out.prec = prec;
    out.n_fixed = h.fixed.size();
    out.n_moving = h.targets.size();
    std::vector<Poly> eqs = h.fixed;
    eqs.insert(eqs.end(), h.targets.begin(), h.targets.end());
    eqs.insert(eqs.end(), h.starts.begin(), h.starts.end());
    out.all = CompiledSystem<CT>::compile(eqs, h.vars, prec);
    for (const auto& g : h.gammas) out.gammas.push_back(ScalarOps<CT>::from_qc(g, prec));
    return out;
}

template struct CompiledHomotopy<std::complex<double>>;
template struct CompiledHomotopy<MpComplex>;

// --- total-degree start ---

TotalDegreeStart total_degree_start(const std::vector<Poly>& target,
                                    const std::vector<std::string>& vars) {
    if (target.size() != vars.size())
        throw std::invalid_argument("total-degree start needs a square system");
    TotalDegreeStart out;
    out.path_count = 1;
    for (std::size_t i = 0; i < target.size(); ++i) {
        int d = target[i].degree();
        if (d < 1) throw std::invalid_argument("total-degree start: zero or constant polynomial");
        out.degrees.push_back(d);
        out.path_count *= d;
        // x_i^d - 1
        Poly xi = Poly::variable(vars[i], vars);
        out.start_system.push_back(xi.pow(d) - Poly::constant(QC(1), vars));
    }
    return out;
}

Point TotalDegreeStart::start_point(long index, mpfr_prec_t prec) const {
    Point p;
    long rem = index;
    for (std::size_t i = 0; i < degrees.size(); ++i) {
        long k = rem % degrees[i];
        rem /= degrees[i];
        MpReal c(prec), s(prec);
        MpReal::root_of_unity(k, degrees[i], prec, c, s);
        p.push_back(MpComplex(std::move(c), std::move(s)));
    }
    return p;
}

// --- templated tracking machinery ---

namespace {

template <class CT>
struct Evaluator {
    const CompiledHomotopy<CT>& h;
    std::vector<std::vector<CT>> pw;
    std::vector<CT> vals;
    std::vector<std::vector<CT>> jac;

    explicit Evaluator(const CompiledHomotopy<CT>& hh) : h(hh) {}

    std::size_t neqs() const { return h.n_fixed + h.n_moving; }

    void at(const std::vector<CT>& x) {
        h.all.fill_powers(x, pw);
    }

    // H(x,t) into out; uses the powers filled by at()
    void eval_H(const CT& t, std::vector<CT>& out) {
        h.all.eval(pw, vals);
        out.resize(neqs());
        CT one_minus_t = ScalarOps<CT>::from_dcomplex({1.0, 0.0}, h.prec) - t;
        for (std::size_t i = 0; i < h.n_fixed; ++i) out[i] = vals[i];
        for (std::size_t i = 0; i < h.n_moving; ++i) {
            const CT& tv = vals[h.n_fixed + i];
            const CT& sv = vals[h.n_fixed + h.n_moving + i];
            out[h.n_fixed + i] = one_minus_t * tv + h.gammas[i] * t * sv;
        }
    }

    void eval_Jx(const CT& t, std::vector<std::vector<CT>>& out) {
        h.all.eval_jacobian(pw, jac);
        out.resize(neqs());
        CT one_minus_t = ScalarOps<CT>::from_dcomplex({1.0, 0.0}, h.prec) - t;
        for (std::size_t i = 0; i < h.n_fixed; ++i) out[i] = jac[i];
        for (std::size_t i = 0; i < h.n_moving; ++i) {
            auto& row = out[h.n_fixed + i];
            row.resize(h.nv);
            for (std::size_t v = 0; v < h.nv; ++v)
                row[v] = one_minus_t * jac[h.n_fixed + i][v] +
                         h.gammas[i] * t * jac[h.n_fixed + h.n_moving + i][v];
        }
    }

    // dH/dt = -target_i + gamma_i * start_i on moving rows
    void eval_Ht(std::vector<CT>& out) {
        h.all.eval(pw, vals);
        out.assign(neqs(), ScalarOps<CT>::zero(h.prec));
        for (std::size_t i = 0; i < h.n_moving; ++i)
            out[h.n_fixed + i] = h.gammas[i] * vals[h.n_fixed + h.n_moving + i] - vals[h.n_fixed + i];
    }
};

template <class CT>
double vec_norm_inf(const std::vector<CT>& v) {
    double m = 0;
    for (const auto& c : v) m = std::max(m, ScalarOps<CT>::abs_approx(c));
    return m;
}

// LU for square systems, rank-revealing QR least squares for deflated
// (overdetermined) ones
template <class CT>
struct StepSolve {
    bool ok = false;
    double rcond = 0.0;
    std::vector<CT> dx;

    static StepSolve run(std::vector<std::vector<CT>> J, std::vector<CT> rhs) {
        StepSolve out;
        std::size_t rows = J.size(), cols = rows ? J[0].size() : 0;
        if (rows == cols) {
            auto lu = LUFactor<CT>::factor(std::move(J));
            if (lu.singular) return out;
            out.rcond = lu.rcond_estimate();
            out.dx = lu.solve(std::move(rhs));
            out.ok = true;
            return out;
        }
        auto qr = QRFactor<CT>::factor(std::move(J));
        std::size_t steps = std::min(qr.m, qr.n);
        if (steps == 0) return out;
        double top = ScalarOps<CT>::abs_approx(qr.a[0][0]);
        double bot = ScalarOps<CT>::abs_approx(qr.a[steps - 1][steps - 1]);
        if (top == 0.0 || bot == 0.0) return out;
        out.rcond = bot / top;
        out.dx = qr.solve_ls(std::move(rhs));
        out.ok = true;
        return out;
    }
};

struct CorrectorOutcome {
    bool ok = false;
    double rcond = 0.0;
    double last_step = 1e300;
    double residual = 1e300;
    int iters = 0;
};

// Newton iterations at fixed t; total correction beyond `trust` rejects the
// step (guards against hopping onto a nearby sheet)
template <class CT>
CorrectorOutcome correct(Evaluator<CT>& ev, std::vector<CT>& x, const CT& t, double tol,
                         int max_iter, double trust = 1e300) {
    CorrectorOutcome out;
    std::vector<CT> H;
    std::vector<std::vector<CT>> J;
    double moved = 0.0;
    for (int it = 0; it < max_iter; ++it) {
        ev.at(x);
        ev.eval_H(t, H);
        ev.eval_Jx(t, J);
        for (auto& c : H) c = -c;
        auto st = StepSolve<CT>::run(J, std::move(H));
        if (!st.ok) return out;
        out.rcond = st.rcond;
        auto& dx = st.dx;
        moved += vec_norm_inf(dx);
        if (moved > trust) return out;  // wandering outside the trust region
        for (std::size_t v = 0; v < x.size(); ++v) x[v] += dx[v];
        out.iters = it + 1;
        out.last_step = vec_norm_inf(dx) / std::max(1.0, vec_norm_inf(x));
        if (out.last_step <= tol) {
            ev.at(x);
            ev.eval_H(t, H);
            out.residual = vec_norm_inf(H);
            out.ok = true;
            return out;
        }
    }
    return out;
}

template <class CT>
double precision_rcond_floor(mpfr_prec_t prec) {
    double digits = 0.30103 * static_cast<double>(prec);
    return std::pow(10.0, -(digits - 4.0));
}

double eff_corrector_tol(mpfr_prec_t prec, const TrackOptions& opts) {
    if (prec <= 53) return opts.corrector_tol;
    if (prec <= 128) return 1e-25;
    return 1e-55;
}

enum class SegStatus { Ok, Fail, Diverged };

template <class CT>
struct SegOutcome {
    SegStatus status = SegStatus::Fail;
    double s_reached = 0.0;
    long steps = 0;
};

// track x along t(s) = (1-s)*t_a + s*t_b, s in [0,1]
template <class CT>
SegOutcome<CT> track_segment(Evaluator<CT>& ev, std::vector<CT>& x, const CT& t_a, const CT& t_b,
                             const TrackOptions& opts, long& step_budget,
                             const std::function<void(double, const std::vector<CT>&)>& checkpoint = {}) {
    SegOutcome<CT> out;
    const mpfr_prec_t prec = ev.h.prec;
    const CT dt = t_b - t_a;
    const double rcond_floor = precision_rcond_floor<CT>(prec);
    double s = 0.0, ds = 0.1;
    int streak = 0;
    std::vector<CT> Ht, k1, k2, k3, k4, xt;
    std::vector<std::vector<CT>> J;

    auto derivative = [&](const std::vector<CT>& xx, double ss,
                          std::vector<CT>& k) -> bool {
        CT t = t_a + ScalarOps<CT>::from_dcomplex({ss, 0.0}, prec) * dt;
        ev.at(xx);
        ev.eval_Jx(t, J);
        ev.eval_Ht(Ht);
        std::vector<CT> rhs;
        rhs.reserve(Ht.size());
        for (const auto& c : Ht) rhs.push_back(-(c * dt));
        auto st = StepSolve<CT>::run(J, std::move(rhs));
        if (!st.ok) return false;
        k = std::move(st.dx);
        return true;
    };

    while (s < 1.0) {
        if (1.0 - s < 1e-14) break;  // segment complete to working accuracy
        if (step_budget-- <= 0) {
            out.s_reached = s;
            return out;
        }
        ds = std::min(ds, 1.0 - s);
        bool pred_ok = true;
        // RK4 predictor on the Davidenko equation
        xt = x;
        pred_ok = derivative(xt, s, k1);
        if (pred_ok) {
            for (std::size_t v = 0; v < x.size(); ++v)
                xt[v] = x[v] + ScalarOps<CT>::from_dcomplex({ds / 2, 0.0}, prec) * k1[v];
            pred_ok = derivative(xt, s + ds / 2, k2);
        }
        if (pred_ok) {
            for (std::size_t v = 0; v < x.size(); ++v)
                xt[v] = x[v] + ScalarOps<CT>::from_dcomplex({ds / 2, 0.0}, prec) * k2[v];
            pred_ok = derivative(xt, s + ds / 2, k3);
        }
        if (pred_ok) {
            for (std::size_t v = 0; v < x.size(); ++v)
                xt[v] = x[v] + ScalarOps<CT>::from_dcomplex({ds, 0.0}, prec) * k3[v];
            pred_ok = derivative(xt, s + ds, k4);
        }
        CorrectorOutcome cor;
        if (pred_ok) {
            CT h6 = ScalarOps<CT>::from_dcomplex({ds / 6, 0.0}, prec);
            CT two = ScalarOps<CT>::from_dcomplex({2.0, 0.0}, prec);
            for (std::size_t v = 0; v < x.size(); ++v)
                xt[v] = x[v] + h6 * (k1[v] + two * k2[v] + two * k3[v] + k4[v]);
            CT t_next = t_a + ScalarOps<CT>::from_dcomplex({s + ds, 0.0}, prec) * dt;
            double pred_move = 0.0;
            for (std::size_t v = 0; v < x.size(); ++v)
                pred_move = std::max(pred_move, ScalarOps<CT>::abs_approx(CT(xt[v] - x[v])));
            double trust = std::max(2.0 * pred_move, 1e-3 * std::max(1.0, vec_norm_inf(x)));
            cor = correct(ev, xt, t_next, eff_corrector_tol(prec, opts), 3, trust);
        }
        if (pred_ok && cor.ok && cor.rcond >= rcond_floor) {
            x = xt;
            s += ds;
            out.steps++;
            track_counters().steps++;
            if (++streak >= 3) {
                ds *= 2;
                streak = 0;
            }
            if (vec_norm_inf(x) > opts.divergence_threshold) {
                out.status = SegStatus::Diverged;
                out.s_reached = s;
                return out;
            }
            if (checkpoint) checkpoint(s, x);
        } else {
            streak = 0;
            ds /= 2;
            if (ds < opts.min_step * std::max(1.0 - s, 1e-30)) {
                out.s_reached = s;
                return out;  // Fail
            }
        }
    }
    out.status = SegStatus::Ok;
    out.s_reached = 1.0;
    return out;
}

// --- endgame ---

template <class CT>
struct EndgameOutcome {
    bool ok = false;
    bool diverged = false;
    std::vector<CT> endpoint;
    int winding = 0;
    double residual = 1e300;
    double rcond = 0.0;
    // resume data for precision escalation
    std::vector<CT> resume_x;
    double resume_radius = 0.0;
    long steps = 0;
};

// one Cauchy stage: track around the circle |t| = r starting at angle 0,
// collecting samples, until loop closure; returns winding or 0 on failure
template <class CT>
int cauchy_circle(Evaluator<CT>& ev, std::vector<CT> x, double r, const TrackOptions& opts,
                  long& budget, std::vector<std::vector<CT>>& samples, long& steps) {
    samples.clear();
    const mpfr_prec_t prec = ev.h.prec;
    const std::vector<CT> x_start = x;
    const int S = prec > 53 ? std::max(8, opts.samples_per_circle / 2) : opts.samples_per_circle;
    for (int circuit = 1; circuit <= opts.max_winding; ++circuit) {
        for (int j = 0; j < S; ++j) {
            samples.push_back(x);
            double th0 = 2.0 * M_PI * j / S;
            double th1 = 2.0 * M_PI * (j + 1) / S;
            CT ta = ScalarOps<CT>::from_dcomplex({r * std::cos(th0), r * std::sin(th0)}, prec);
            CT tb = ScalarOps<CT>::from_dcomplex({r * std::cos(th1), r * std::sin(th1)}, prec);
            auto seg = track_segment(ev, x, ta, tb, opts, budget);
            steps += seg.steps;
            if (seg.status != SegStatus::Ok) return 0;
        }
        // closure?
        double d = 0, scale = std::max(1.0, vec_norm_inf(x));
        for (std::size_t v = 0; v < x.size(); ++v)
            d = std::max(d, ScalarOps<CT>::abs_approx(CT(x[v] - x_start[v])));
        double closure_tol = std::max(1e4 * eff_corrector_tol(prec, opts), 1e-6);
        static const bool trace = std::getenv("CF_TRACE_ENDGAME") != nullptr;
        if (trace)
            std::fprintf(stderr, "[circle]   m=%d d=%.3g |x|=%.3g\n", circuit, d / scale,
                         vec_norm_inf(x));
        if (d / scale < closure_tol) return circuit;
    }
    return 0;
}

template <class CT>
std::vector<CT> sample_mean(const std::vector<std::vector<CT>>& samples, mpfr_prec_t prec) {
    std::size_t n = samples[0].size();
    std::vector<CT> mean(n, ScalarOps<CT>::zero(prec));
    for (const auto& s : samples)
        for (std::size_t v = 0; v < n; ++v) mean[v] += s[v];
    CT inv = ScalarOps<CT>::from_dcomplex({1.0 / static_cast<double>(samples.size()), 0.0}, prec);
    for (auto& c : mean) c = inv * c;
    return mean;
}

template <class CT>
double endgame_min_radius(mpfr_prec_t prec) {
    if (prec <= 53) return 1e-6;
    if (prec <= 128) return 1e-14;
    return 1e-30;
}

template <class CT>
double endgame_agree_tol_for(mpfr_prec_t prec, const TrackOptions& opts) {
    if (prec <= 53) return opts.endgame_agree_tol;
    if (prec <= 128) return 1e-25;
    return 1e-55;
}

template <class CT>
EndgameOutcome<CT> run_endgame(Evaluator<CT>& ev, std::vector<CT> x, double r0,
                               const TrackOptions& opts, long& budget) {
    EndgameOutcome<CT> out;
    const mpfr_prec_t prec = ev.h.prec;
    const CT zero_t = ScalarOps<CT>::zero(prec);
    out.resume_x = x;
    out.resume_radius = r0;

    auto finish = [&](std::vector<CT> endpoint, int winding) {
        std::vector<CT> H;
        ev.at(endpoint);
        ev.eval_H(zero_t, H);
        out.residual = vec_norm_inf(H);
        out.endpoint = std::move(endpoint);
        out.winding = winding;
        out.ok = true;
    };

    // fast route: keep tracking inward, then a plain Newton hop to t = 0
    double r = r0;
    std::vector<CT> x_in = x;
    bool inward_ok = true;
    std::map<double, std::vector<CT>, std::greater<double>> checkpoints;
    checkpoints[r] = x_in;
    double prev_norm = vec_norm_inf(x_in);
    int growth_streak = 0;
    while (r > 1e-5) {
        double r_next = std::max(1e-5, r * opts.cauchy_radius_ratio);
        CT ta = ScalarOps<CT>::from_dcomplex({r, 0.0}, prec);
        CT tb = ScalarOps<CT>::from_dcomplex({r_next, 0.0}, prec);
        auto seg = track_segment(ev, x_in, ta, tb, opts, budget);
        out.steps += seg.steps;
        double nrm = vec_norm_inf(x_in);
        if (seg.status == SegStatus::Diverged || nrm > opts.endgame_security_norm) {
            out.diverged = true;
            return out;
        }
        growth_streak = (nrm > 1.3 * prev_norm) ? growth_streak + 1 : 0;
        prev_norm = nrm;
        if (growth_streak >= 3 && nrm > 100) {
            out.diverged = true;
            return out;
        }
        if (seg.status != SegStatus::Ok) {
            inward_ok = false;
            break;
        }
        r = r_next;
        checkpoints[r] = x_in;
    }
    if (inward_ok) {
        std::vector<CT> cand = x_in;
        auto cor = correct(ev, cand, zero_t, opts.endpoint_tol, 12);
        double disp = 0, scale = std::max(1.0, vec_norm_inf(x_in));
        for (std::size_t v = 0; v < cand.size(); ++v)
            disp = std::max(disp, ScalarOps<CT>::abs_approx(CT(cand[v] - x_in[v])));
        if (cor.ok && cor.rcond >= 1e-7 && disp / scale <= 1e-3 &&
            vec_norm_inf(cand) <= opts.endgame_security_norm) {
            out.rcond = cor.rcond;
            finish(std::move(cand), 1);
            return out;
        }
    }

    // Cauchy stages start at the largest checkpoint radius, where distinct
    // sheets are farthest apart
    double rc = r0;
    std::vector<CT> xc = x;
    if (!checkpoints.empty()) {
        rc = checkpoints.begin()->first;
        xc = checkpoints.begin()->second;
    }
    out.resume_x = xc;
    out.resume_radius = rc;

    std::vector<CT> est_prev;
    int wind_prev = 0;
    double agree = endgame_agree_tol_for<CT>(prec, opts);
    const double rmin = endgame_min_radius<CT>(prec);
    int circle_failures = 0;
    static const bool trace = std::getenv("CF_TRACE_ENDGAME") != nullptr;
    while (rc >= rmin) {
        std::vector<std::vector<CT>> samples;
        int c = cauchy_circle(ev, xc, rc, opts, budget, samples, out.steps);
        if (trace)
            std::fprintf(stderr, "[endgame] prec=%ld r=%.3g winding=%d budget=%ld\n", (long)prec,
                         rc, c, budget);
        if (c == 0) {
            if (++circle_failures >= 2) break;  // escalate
        } else {
            circle_failures = 0;
            auto est = sample_mean(samples, prec);
            if (!est_prev.empty() && c == wind_prev) {
                double d = 0, scale = std::max(1.0, vec_norm_inf(est));
                for (std::size_t v = 0; v < est.size(); ++v)
                    d = std::max(d, ScalarOps<CT>::abs_approx(CT(est[v] - est_prev[v])));
                if (trace)
                    std::fprintf(stderr, "[endgame]   agree d=%.3g (tol %.3g)\n", d / scale,
                                 agree);
                if (d / scale <= agree) {
                    if (c == 1) {
                        auto cor = correct(ev, est, zero_t, opts.endpoint_tol, 12);
                        out.rcond = cor.ok ? cor.rcond : 0.0;
                    }
                    finish(std::move(est), c);
                    return out;
                }
            }
            est_prev = std::move(est);
            wind_prev = c;
        }
        // move inward for the next stage
        double r_next = rc * opts.cauchy_radius_ratio;
        if (r_next < rmin) break;
        CT ta = ScalarOps<CT>::from_dcomplex({rc, 0.0}, prec);
        CT tb = ScalarOps<CT>::from_dcomplex({r_next, 0.0}, prec);
        auto seg = track_segment(ev, xc, ta, tb, opts, budget);
        out.steps += seg.steps;
        if (seg.status == SegStatus::Diverged ||
            vec_norm_inf(xc) > opts.endgame_security_norm) {
            out.diverged = true;
            return out;
        }
        if (seg.status != SegStatus::Ok) break;  // escalate from current checkpoint
        rc = r_next;
        out.resume_x = xc;
        out.resume_radius = rc;
    }
    return out;  // not ok: caller escalates precision
}

// --- per-precision stage of the path driver ---

struct StageState {
    Point x;
    double t = 1.0;
};

template <class CT>
struct StageOutcome {
    enum class Kind { Done, Escalate, Diverged, Fail } kind = Kind::Fail;
    PathResult result;
    StageState resume;
};

template <class CT>
std::vector<CT> to_ct(const Point& p, mpfr_prec_t prec) {
    std::vector<CT> v;
    v.reserve(p.size());
    for (const auto& c : p) {
        if constexpr (std::is_same_v<CT, std::complex<double>>) {
            v.push_back(c.to_dcomplex());
        } else {
            MpComplex m(prec);
            mpfr_set(m.re.raw(), c.re.raw(), MPFR_RNDN);
            mpfr_set(m.im.raw(), c.im.raw(), MPFR_RNDN);
            v.push_back(std::move(m));
        }
    }
    return v;
}

template <class CT>
Point from_ct(const std::vector<CT>& v, mpfr_prec_t prec) {
    Point p;
    p.reserve(v.size());
    for (const auto& c : v) {
        if constexpr (std::is_same_v<CT, std::complex<double>>)
            p.push_back(MpComplex::from(c, prec));
        else
            p.push_back(c);
    }
    return p;
}

template <class CT>
StageOutcome<CT> run_stage(const Homotopy& h, const StageState& in, mpfr_prec_t prec,
                           const TrackOptions& opts) {
    StageOutcome<CT> out;
    auto ch = CompiledHomotopy<CT>::compile(h, prec);
    Evaluator<CT> ev(ch);
    std::vector<CT> x = to_ct<CT>(in.x, prec);
    // high-precision arithmetic is orders of magnitude slower: fail fast there
    long budget = opts.max_steps_per_path;
    if (prec > 53) budget = std::max<long>(500, budget / 25);
    if (prec > 128) budget = std::max<long>(250, budget / 2);
    long steps = 0;
    double t = in.t;

    // phase 1: real-axis run down to the endgame radius
    double phase1_target =
        opts.assume_regular_endpoint ? std::min(1e-3, in.t) : opts.endgame_radius;
    if (t > phase1_target) {
        CT ta = ScalarOps<CT>::from_dcomplex({t, 0.0}, prec);
        CT tb = ScalarOps<CT>::from_dcomplex({phase1_target, 0.0}, prec);
        auto seg = track_segment(ev, x, ta, tb, opts, budget);
        steps += seg.steps;
        if (seg.status == SegStatus::Diverged) {
            out.kind = StageOutcome<CT>::Kind::Diverged;
            out.result.status = PathStatus::Diverged;
            out.result.endpoint = from_ct(x, prec);
            out.result.steps = steps;
            out.result.precision = prec;
            return out;
        }
        if (seg.status != SegStatus::Ok) {
            track_counters().escalate_phase1++;
            out.kind = StageOutcome<CT>::Kind::Escalate;
            out.resume.x = from_ct(x, prec);
            out.resume.t = t + seg.s_reached * (phase1_target - t);
            return out;
        }
        t = phase1_target;
    }

    if (opts.assume_regular_endpoint) {
        // guarded Newton hop to t = 0
        std::vector<CT> cand = x;
        CT zero_t = ScalarOps<CT>::zero(prec);
        auto cor = correct(ev, cand, zero_t, opts.endpoint_tol, 12);
        double disp = 0, scale = std::max(1.0, vec_norm_inf(x));
        for (std::size_t v = 0; v < cand.size(); ++v)
            disp = std::max(disp, ScalarOps<CT>::abs_approx(CT(cand[v] - x[v])));
        if (cor.ok && cor.rcond >= 1e-9 && disp / scale <= 0.02 &&
            vec_norm_inf(cand) <= opts.endgame_security_norm &&
            cor.residual <= opts.endpoint_tol * std::max(1.0, vec_norm_inf(cand))) {
            out.kind = StageOutcome<CT>::Kind::Done;
            out.result.status = PathStatus::Converged;
            out.result.endpoint = from_ct(cand, prec);
            out.result.winding = 1;
            out.result.residual = cor.residual;
            out.result.condition = cor.rcond > 0 ? 1.0 / cor.rcond : 1e300;
            out.result.steps = steps;
            out.result.precision = prec;
            return out;
        }
        // fall through to the regular endgame
    }

    auto eg = run_endgame(ev, x, t, opts, budget);
    steps += eg.steps;
    if (eg.diverged) {
        out.kind = StageOutcome<CT>::Kind::Diverged;
        out.result.status = PathStatus::Diverged;
        out.result.endpoint = from_ct(eg.resume_x, prec);
        out.result.steps = steps;
        out.result.precision = prec;
        return out;
    }
    if (eg.ok) {
        out.kind = StageOutcome<CT>::Kind::Done;
        out.result.status = PathStatus::Converged;
        out.result.endpoint = from_ct(eg.endpoint, prec);
        out.result.winding = eg.winding;
        out.result.residual = eg.residual;
        out.result.condition = eg.rcond > 0 ? 1.0 / eg.rcond : 1e300;
        out.result.steps = steps;
        out.result.precision = prec;
        return out;
    }
    track_counters().escalate_endgame++;
    out.kind = StageOutcome<CT>::Kind::Escalate;
    out.resume.x = from_ct(eg.resume_x, prec);
    out.resume.t = eg.resume_radius;
    return out;
}

}  // namespace

namespace {

// Singular endpoints come out of the Cauchy estimate with limited accuracy;
// deflation-backed Newton brings the residual below the endpoint tolerance
// as the converged-status contract requires.
PathResult finalize_path(const Homotopy& h, PathResult res, const TrackOptions& opts) {
    if (res.status != PathStatus::Converged) return res;
    double scale = std::max(1.0, point_norm_inf(res.endpoint_d()));
    if (res.residual <= opts.endpoint_tol * scale) return res;
    track_counters().singular_refines++;
    std::vector<Poly> F0 = h.fixed;
    F0.insert(F0.end(), h.targets.begin(), h.targets.end());
    Rng rng(opts.seed, "path-singular-refine");
    auto rr = refine_possibly_singular(F0, h.vars, res.endpoint, opts.endpoint_tol * scale,
                                       res.precision, rng);
    if (!rr.ok && res.precision < 128)
        rr = refine_possibly_singular(F0, h.vars, res.endpoint, opts.endpoint_tol * scale, 128, rng);
    if (rr.ok) {
        res.endpoint = rr.x;
        res.residual = rr.residual;
    } else {
        res.status = PathStatus::TrackingFailure;
    }
    return res;
}

}  // namespace

TrackCounters& track_counters() {
    static TrackCounters tc;
    return tc;
}

PathResult track_path(const Homotopy& h, const std::function<Point(mpfr_prec_t)>& start_at,
                      const TrackOptions& opts) {
    track_counters().paths++;
    static const bool trace = std::getenv("CF_TRACE_PATHS") != nullptr;
    auto twall = std::chrono::steady_clock::now();
    StageState state;
    bool resumed = false;
    PathResult last;
    for (std::size_t lad = 0; lad < opts.precision_ladder.size(); ++lad) {
        mpfr_prec_t prec = opts.precision_ladder[lad];
        if (!resumed) {
            state.x = start_at(prec);
            state.t = 1.0;
        }
        if (prec > 53) track_counters().mpfr_paths++;
        if (trace) {
            double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - twall)
                              .count();
            if (secs > 5.0)
                std::fprintf(stderr, "[path] slow path: prec %ld t=%.3g elapsed %.1fs\n",
                             (long)prec, state.t, secs);
        }
        if (prec == 53) {
            auto so = run_stage<std::complex<double>>(h, state, prec, opts);
            if (so.kind == StageOutcome<std::complex<double>>::Kind::Done)
                return finalize_path(h, so.result, opts);
            if (so.kind == StageOutcome<std::complex<double>>::Kind::Diverged) return so.result;
            state = so.resume;
            resumed = true;
        } else {
            auto so = run_stage<MpComplex>(h, state, prec, opts);
            if (so.kind == StageOutcome<MpComplex>::Kind::Done)
                return finalize_path(h, so.result, opts);
            if (so.kind == StageOutcome<MpComplex>::Kind::Diverged) return so.result;
            state = so.resume;
            resumed = true;
        }
    }
    last.status = PathStatus::TrackingFailure;
    last.endpoint = state.x;
    last.precision = opts.precision_ladder.back();
    track_counters().path_failures++;
    return last;
}

PathResult track_path(const Homotopy& h, const Point& start, const TrackOptions& opts) {
    return track_path(
        h, [&start](mpfr_prec_t prec) { return point_convert(start, prec); }, opts);
}

void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& fn) {
    if (workers <= 0) workers = static_cast<int>(std::thread::hardware_concurrency());
    workers = std::max(1, std::min<int>(workers, static_cast<int>(n)));
    if (workers == 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (;;) {
                std::size_t i = next.fetch_add(1);
                if (i >= n) return;
                fn(i);
            }
        });
    for (auto& th : pool) th.join();
}

std::vector<PathResult> track_paths(const Homotopy& h, long count,
                                    const std::function<Point(long, mpfr_prec_t)>& start_at,
                                    const TrackOptions& opts) {
    std::vector<PathResult> out(static_cast<std::size_t>(count));
    parallel_for(static_cast<std::size_t>(count), opts.workers, [&](std::size_t i) {
        TrackOptions o = opts;
        o.seed = opts.seed * 0x100000001b3ull + 0x9e3779b97f4a7c15ull * (i + 1);
        out[i] = track_path(
            h, [&, i](mpfr_prec_t prec) { return start_at(static_cast<long>(i), prec); }, o);
    });
    return out;
}

std::vector<PathResult> track_paths(const Homotopy& h, const std::vector<Point>& starts,
                                    const TrackOptions& opts) {
    return track_paths(
        h, static_cast<long>(starts.size()),
        [&starts](long i, mpfr_prec_t prec) { return point_convert(starts[i], prec); }, opts);
}

SolveResult solve(const std::vector<Poly>& F, const std::vector<std::string>& vars, Rng& rng,
                  const TrackOptions& opts) {
    SolveResult out;
    auto td = total_degree_start(F, vars);
    out.gamma = rng.next_unit_circle();
    Homotopy h = Homotopy::straight_line(F, td.start_system, vars, out.gamma);
    out.paths = track_paths(
        h, td.path_count, [&td](long i, mpfr_prec_t prec) { return td.start_point(i, prec); }, opts);

    // deduplicate converged endpoints
    std::vector<DPoint> conv;
    std::vector<std::size_t> conv_idx;
    for (std::size_t i = 0; i < out.paths.size(); ++i)
        if (out.paths[i].status == PathStatus::Converged) {
            conv.push_back(out.paths[i].endpoint_d());
            conv_idx.push_back(i);
        }
    auto cl = cluster_points(conv, opts.point_equality_tol);
    std::size_t nclusters = cl.empty() ? 0 : *std::max_element(cl.begin(), cl.end()) + 1;
    out.solutions.resize(nclusters);
    out.clusters.assign(nclusters, {});
    for (std::size_t k = 0; k < conv.size(); ++k) {
        if (out.clusters[cl[k]].empty()) out.solutions[cl[k]] = out.paths[conv_idx[k]].endpoint;
        out.clusters[cl[k]].push_back(conv_idx[k]);
    }
    return out;
}

MpComplex eval_poly_at(const Poly& p, const Point& x, mpfr_prec_t prec) {
    auto cp = CompiledPoly<MpComplex>::compile(p, prec);
    std::vector<std::vector<MpComplex>> pw(p.nvars());
    Point xx = point_convert(x, prec);
    for (std::size_t v = 0; v < p.nvars(); ++v) {
        pw[v].push_back(MpComplex::from(QC(1), prec));
        int maxe = p.degree_in(v);
        for (int e = 1; e <= maxe; ++e) pw[v].push_back(MpComplex(pw[v].back() * xx[v]));
    }
    return cp.eval(pw, prec);
}

double residual_at(const std::vector<Poly>& F, const std::vector<std::string>& vars, const Point& x) {
    mpfr_prec_t prec = x.empty() ? 53 : x[0].prec();
    double m = 0;
    for (const auto& f : F) {
        Poly ff = f.vars() == vars ? f : f.extend_vars(vars);
        m = std::max(m, eval_poly_at(ff, x, prec).abs_approx());
    }
    return m;
}

namespace {

template <class CT>
RefineResult newton_refine_impl(const std::vector<Poly>& F, const std::vector<std::string>& vars,
                                const Point& x0, double target_residual, mpfr_prec_t prec,
                                int max_iter) {
    RefineResult out;
    auto cs = CompiledSystem<CT>::compile(F, vars, prec);
    std::vector<CT> x = to_ct<CT>(x0, prec);
    std::vector<std::vector<CT>> pw, J;
    std::vector<CT> H;
    const bool square = F.size() == vars.size();
    for (int it = 0; it < max_iter; ++it) {
        cs.fill_powers(x, pw);
        cs.eval(pw, H);
        out.residual = vec_norm_inf(H);
        out.iterations = it;
        if (out.residual <= target_residual) {
            out.ok = true;
            break;
        }
        cs.eval_jacobian(pw, J);
        std::vector<CT> rhs;
        for (auto& c : H) rhs.push_back(-c);
        std::vector<CT> dx;
        if (square) {
            auto lu = LUFactor<CT>::factor(J);
            if (lu.singular) break;
            out.rcond = lu.rcond_estimate();
            dx = lu.solve(std::move(rhs));
        } else {
            auto qr = QRFactor<CT>::factor(J);
            dx = qr.solve_ls(std::move(rhs));
            out.rcond = 0.0;
        }
        double step = vec_norm_inf(dx);
        for (std::size_t v = 0; v < x.size(); ++v) x[v] += dx[v];
        if (step > 1e6 * std::max(1.0, vec_norm_inf(x))) break;  // diverging
    }
    // final residual
    cs.fill_powers(x, pw);
    cs.eval(pw, H);
    out.residual = vec_norm_inf(H);
    if (out.residual <= target_residual) out.ok = true;
    out.x = from_ct(x, prec);
    return out;
}

}  // namespace

RefineResult newton_refine(const std::vector<Poly>& F, const std::vector<std::string>& vars,
                           const Point& x0, double target_residual, mpfr_prec_t prec, int max_iter) {
    if (prec <= 53)
        return newton_refine_impl<std::complex<double>>(F, vars, x0, target_residual, prec, max_iter);
    return newton_refine_impl<MpComplex>(F, vars, x0, target_residual, prec, max_iter);
}

// --- deflation ---

// Numerical corank of the Jacobian of eqs at p. The rank threshold is
// relative to max(1, largest R diagonal) so a uniformly tiny Jacobian reads
// as rank deficient; diagonal entries inside the exclusion band around the
// threshold make the estimate ambiguous.
CorankEstimate jacobian_corank(const std::vector<Poly>& eqs, const std::vector<std::string>& vars,
                               const Point& p) {
    auto cs = CompiledSystem<MpComplex>::compile(eqs, vars, p.empty() ? 53 : p[0].prec());
    std::vector<std::vector<MpComplex>> pw, J;
    auto x = point_convert(p, cs.prec());
    cs.fill_powers(x, pw);
    cs.eval_jacobian(pw, J);
    auto qr = QRFactor<MpComplex>::factor(J);
    std::size_t steps = std::min(qr.m, qr.n);
    double top = steps ? ScalarOps<MpComplex>::abs_approx(qr.a[0][0]) : 0.0;
    double scale = std::max(1.0, top);
    const double tau = 1e-7 * scale;
    CorankEstimate out;
    std::size_t r = 0;
    for (std::size_t k = 0; k < steps; ++k) {
        double d = ScalarOps<MpComplex>::abs_approx(qr.a[k][k]);
        if (d > tau * 100)
            ++r;
        else if (d > tau / 100)
            out.ambiguous = true;
    }
    out.corank = vars.size() - r;
    return out;
}

std::optional<Deflation> deflate(const std::vector<Poly>& eqs, const std::vector<std::string>& vars,
                                 const Point& p, Rng& rng, int max_rounds) {
    Deflation d;
    d.eqs = eqs;
    d.vars = vars;
    d.orig_nvars = vars.size();
    d.extended_point = p;
    for (int round = 0; round < max_rounds; ++round) {
        // pull the point onto the zero set as far as Newton gets, then
        // estimate the rank with a coarse and a tight threshold;
        // disagreement escalates the precision, then gives up
        {
            auto pull = newton_refine(d.eqs, d.vars, d.extended_point, 1e-13,
                                      d.extended_point[0].prec(), 40);
            d.extended_point = pull.x;
        }
        auto est = jacobian_corank(d.eqs, d.vars, d.extended_point);
        if (est.ambiguous) {
            auto ref =
                newton_refine(d.eqs, d.vars, point_convert(d.extended_point, 128), 1e-25, 128, 45);
            d.extended_point = ref.x;
            est = jacobian_corank(d.eqs, d.vars, d.extended_point);
        }
        if (est.ambiguous) {
            track_counters().deflate_256++;
            auto ref =
                newton_refine(d.eqs, d.vars, point_convert(d.extended_point, 256), 1e-50, 256, 60);
            d.extended_point = ref.x;
            est = jacobian_corank(d.eqs, d.vars, d.extended_point);
            if (est.ambiguous) return std::nullopt;
        }
        std::size_t corank = est.corank;
        if (corank == 0) {
            d.rounds = round;
            return d;
        }
        std::size_t m = d.vars.size();
        std::size_t r = m - corank;
        // random B (m x (r+1)) and normalization b (r+1)
        std::vector<std::vector<QC>> B(m, std::vector<QC>(r + 1));
        std::vector<QC> b(r + 1);
        for (auto& row : B)
            for (auto& c : row) c = rng.next_qc();
        for (auto& c : b) c = rng.next_qc();

        std::vector<std::string> lvars;
        for (std::size_t j = 0; j <= r; ++j)
            lvars.push_back("dl" + std::to_string(d.rounds + 1) + "_" + std::to_string(j));
        std::vector<std::string> newvars = d.vars;
        newvars.insert(newvars.end(), lvars.begin(), lvars.end());

        std::vector<Poly> neweqs;
        for (const auto& e : d.eqs) neweqs.push_back(e.extend_vars(newvars));
        // J * B * lambda rows
        std::vector<Poly> jrows;
        for (const auto& e : d.eqs) {
            Poly row{newvars};
            for (std::size_t j = 0; j <= r; ++j) {
                Poly coef{d.vars};
                for (std::size_t v = 0; v < d.vars.size(); ++v) {
                    if (B[v][j].is_zero()) continue;
                    coef += e.differentiate(v).scaled(B[v][j]);
                }
                if (!coef.is_zero())
                    row += coef.extend_vars(newvars) * Poly::variable(lvars[j], newvars);
            }
            jrows.push_back(row);
        }
        Poly norm{newvars};
        for (std::size_t j = 0; j <= r; ++j)
            norm += Poly::variable(lvars[j], newvars).scaled(b[j]);
        norm -= Poly::constant(QC(1), newvars);

        // initial lambda from least squares [J*B; b] lambda = [0; 1]
        {
            mpfr_prec_t prec = d.extended_point[0].prec();
            auto cs = CompiledSystem<MpComplex>::compile(d.eqs, d.vars, prec);
            std::vector<std::vector<MpComplex>> pw, J;
            auto x = point_convert(d.extended_point, prec);
            cs.fill_powers(x, pw);
            cs.eval_jacobian(pw, J);
            std::vector<std::vector<MpComplex>> M;
            for (std::size_t i = 0; i < d.eqs.size(); ++i) {
                std::vector<MpComplex> row;
                for (std::size_t j = 0; j <= r; ++j) {
                    MpComplex s(prec);
                    for (std::size_t v = 0; v < d.vars.size(); ++v)
                        s += J[i][v] * MpComplex::from(B[v][j], prec);
                    row.push_back(std::move(s));
                }
                M.push_back(std::move(row));
            }
            std::vector<MpComplex> brow, rhs;
            for (std::size_t j = 0; j <= r; ++j) brow.push_back(MpComplex::from(b[j], prec));
            M.push_back(std::move(brow));
            for (std::size_t i = 0; i < d.eqs.size(); ++i) rhs.push_back(MpComplex(prec));
            rhs.push_back(MpComplex::from(QC(1), prec));
            auto qr = QRFactor<MpComplex>::factor(M);
            auto lam = qr.solve_ls(std::move(rhs));
            for (auto& l : lam) d.extended_point.push_back(l);
        }

        neweqs.insert(neweqs.end(), jrows.begin(), jrows.end());
        neweqs.push_back(norm);
        d.eqs = std::move(neweqs);
        d.vars = std::move(newvars);
        d.rounds = round + 1;

        // polish the extended point before the next rank check
        auto ref = newton_refine(d.eqs, d.vars, d.extended_point, 1e-10, d.extended_point[0].prec(), 30);
        if (ref.ok) d.extended_point = ref.x;
    }
    // final regularity check
    auto fin = jacobian_corank(d.eqs, d.vars, d.extended_point);
    if (!fin.ambiguous && fin.corank == 0) return d;
    return std::nullopt;
}

RefineResult refine_possibly_singular(const std::vector<Poly>& eqs,
                                      const std::vector<std::string>& vars, const Point& x0,
                                      double target_residual, mpfr_prec_t prec, Rng& rng,
                                      int max_rounds) {
    // plain Newton first; meeting the residual target is success regardless
    // of the conditioning (stalled Newton still contracts toward multiple
    // zeros)
    auto plain = newton_refine(eqs, vars, point_convert(x0, prec), target_residual, prec, 60);
    if (plain.ok) return plain;

    auto defl = deflate(eqs, vars, x0, rng, max_rounds);
    if (!defl) return plain;
    if (defl->rounds == 0) return plain;  // point was regular after all
    auto ref = newton_refine(defl->eqs, defl->vars, point_convert(defl->extended_point, prec),
                             target_residual, prec, 80);
    RefineResult out;
    out.iterations = ref.iterations;
    out.rcond = ref.rcond;
    out.x = Point(ref.x.begin(), ref.x.begin() + static_cast<long>(vars.size()));
    out.residual = residual_at(eqs, vars, out.x);
    out.ok = out.residual <= target_residual;
    return out;
}

}  // namespace centerfocus
