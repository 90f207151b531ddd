#include "centerfocus/exactify.hpp"

#include "centerfocus/linalg.hpp"

#include <algorithm>
#include <numeric>

namespace centerfocus {

namespace {

Rat dot_mpz_rat(const std::vector<mpz_class>& a, const std::vector<Rat>& b) {
    Rat s(0);
    for (std::size_t i = 0; i < a.size(); ++i) s += Rat(a[i]) * b[i];
    return s;
}

}  // namespace

void lll_reduce(std::vector<std::vector<mpz_class>>& basis, const Rat& delta) {
    const std::size_t n = basis.size();
    if (n == 0) return;
    const std::size_t m = basis[0].size();

    // rational Gram-Schmidt data
    std::vector<std::vector<Rat>> mu(n, std::vector<Rat>(n, Rat(0)));
    std::vector<Rat> B(n, Rat(0));
    std::vector<std::vector<Rat>> star(n, std::vector<Rat>(m, Rat(0)));

    auto recompute = [&]() {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t c = 0; c < m; ++c) star[i][c] = Rat(basis[i][c]);
            for (std::size_t j = 0; j < i; ++j) {
                if (B[j] == 0) {
                    mu[i][j] = 0;
                    continue;
                }
                Rat num(0);
                for (std::size_t c = 0; c < m; ++c) num += Rat(basis[i][c]) * star[j][c];
                mu[i][j] = num / B[j];
                for (std::size_t c = 0; c < m; ++c) star[i][c] -= mu[i][j] * star[j][c];
            }
            B[i] = 0;
            for (std::size_t c = 0; c < m; ++c) B[i] += star[i][c] * star[i][c];
        }
    };
    recompute();

    auto size_reduce = [&](std::size_t k, std::size_t j) {
        Rat q = mu[k][j];
        // nearest integer
        mpz_class num = q.get_num(), den = q.get_den();
        mpz_class r;
        mpz_fdiv_q(r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
        Rat frac = q - Rat(r);
        if (frac * 2 >= 1) r += 1;
        if (r == 0) return;
        for (std::size_t c = 0; c < m; ++c) basis[k][c] -= r * basis[j][c];
        for (std::size_t c = 0; c < j; ++c) mu[k][c] -= Rat(r) * mu[j][c];
        mu[k][j] -= Rat(r);
    };

    std::size_t k = 1;
    long guard = 0;
    const long guard_max = 200000;
    while (k < n && guard++ < guard_max) {
        for (std::size_t j = k; j-- > 0;) size_reduce(k, j);
        Rat lhs = B[k];
        Rat rhs = (delta - mu[k][k - 1] * mu[k][k - 1]) * B[k - 1];
        if (lhs >= rhs || B[k - 1] == 0) {
            ++k;
        } else {
            std::swap(basis[k], basis[k - 1]);
            recompute();  // simple and exact; fine for the small dimensions used here
            if (k > 1) --k;
        }
    }
}

std::vector<std::vector<mpz_class>> hermite_normal_form(std::vector<std::vector<mpz_class>> rows) {
    if (rows.empty()) return rows;
    const std::size_t m = rows[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < m && r < rows.size(); ++c) {
        // eliminate below using gcd steps
        for (;;) {
            std::size_t piv = rows.size();
            for (std::size_t i = r; i < rows.size(); ++i)
                if (rows[i][c] != 0 && (piv == rows.size() ||
                                        cmp(abs(rows[i][c]), abs(rows[piv][c])) < 0))
                    piv = i;
            if (piv == rows.size()) break;
            std::swap(rows[r], rows[piv]);
            bool clean = true;
            for (std::size_t i = r + 1; i < rows.size(); ++i) {
                if (rows[i][c] == 0) continue;
                mpz_class q = rows[i][c] / rows[r][c];
                for (std::size_t cc = 0; cc < m; ++cc) rows[i][cc] -= q * rows[r][cc];
                if (rows[i][c] != 0) clean = false;
            }
            if (clean) break;
        }
        if (rows[r][c] == 0) continue;
        if (rows[r][c] < 0)
            for (std::size_t cc = 0; cc < m; ++cc) rows[r][cc] = -rows[r][cc];
        // reduce above
        for (std::size_t i = 0; i < r; ++i) {
            mpz_class q;
            mpz_fdiv_q(q.get_mpz_t(), rows[i][c].get_mpz_t(), rows[r][c].get_mpz_t());
            if (q != 0)
                for (std::size_t cc = 0; cc < m; ++cc) rows[i][cc] -= q * rows[r][cc];
        }
        ++r;
    }
    rows.resize(r);
    return rows;
}

namespace {

std::optional<std::vector<mpz_class>> relation_via_lll(const std::vector<MpComplex>& v,
                                                       long max_height,
                                                       const IntegerRelationOptions& opts,
                                                       std::vector<std::vector<mpz_class>>* all_out) {
    const std::size_t n = v.size();
    if (n == 0) return std::nullopt;
    mpfr_prec_t prec = v[0].prec();
    double digits = 0.30103 * static_cast<double>(prec);
    double height_digits = std::log10(static_cast<double>(std::max(2L, max_height))) + 1.0;
    if (digits < 10.0 * height_digits)
        throw std::invalid_argument("integer_relation: input precision too low for the height");

    long scale_digits = static_cast<long>(digits) - 10;
    mpz_class N;
    mpz_ui_pow_ui(N.get_mpz_t(), 10, static_cast<unsigned long>(scale_digits));

    // decide whether the imaginary column is needed
    bool complex_data = false;
    for (const auto& c : v)
        if (c.im.to_double() != 0.0 || !c.im.is_zero()) complex_data = true;

    const std::size_t extra = complex_data ? 2 : 1;
    std::vector<std::vector<mpz_class>> basis(n, std::vector<mpz_class>(n + extra, 0));
    mpfr_t tmp;
    mpfr_init2(tmp, prec + 64);
    mpz_class z;
    for (std::size_t i = 0; i < n; ++i) {
        basis[i][i] = 1;
        mpfr_mul_z(tmp, v[i].re.raw(), N.get_mpz_t(), MPFR_RNDN);
        mpfr_get_z(z.get_mpz_t(), tmp, MPFR_RNDN);
        basis[i][n] = z;
        if (complex_data) {
            mpfr_mul_z(tmp, v[i].im.raw(), N.get_mpz_t(), MPFR_RNDN);
            mpfr_get_z(z.get_mpz_t(), tmp, MPFR_RNDN);
            basis[i][n + 1] = z;
        }
    }
    mpfr_clear(tmp);

    lll_reduce(basis);

    const double tol =
        opts.abs_tol > 0 ? opts.abs_tol : std::pow(10.0, -(digits - opts.tol_exponent_slack));
    std::optional<std::vector<mpz_class>> best;
    double best_norm = 1e300;
    bool near_miss = false;
    for (const auto& row : basis) {
        std::vector<mpz_class> c(row.begin(), row.begin() + static_cast<long>(n));
        bool nonzero = false;
        mpz_class height(0);
        for (const auto& x : c) {
            if (x != 0) nonzero = true;
            mpz_class a = abs(x);
            if (a > height) height = a;
        }
        if (!nonzero || height > max_height) continue;
        // exact residual at the input precision
        MpComplex dot(prec);
        for (std::size_t i = 0; i < n; ++i) {
            MpReal ci = MpReal::from(Rat(c[i]), prec);
            dot.re += ci * v[i].re;
            dot.im += ci * v[i].im;
        }
        double resid = dot.abs_approx();
        if (resid <= tol) {
            double norm = 0;
            for (const auto& x : c) norm += x.get_d() * x.get_d();
            if (all_out) all_out->push_back(c);
            if (norm < best_norm) {
                best_norm = norm;
                best = c;
            }
        } else if (resid <= tol * opts.gap_factor) {
            near_miss = true;
        }
    }
    if (!best && near_miss)
        throw std::runtime_error("integer_relation: tolerance gap inconclusive, raise precision");
    return best;
}

}  // namespace

std::optional<std::vector<mpz_class>> integer_relation(const std::vector<MpComplex>& v,
                                                       long max_height,
                                                       const IntegerRelationOptions& opts) {
    return relation_via_lll(v, max_height, opts, nullptr);
}

std::optional<std::vector<mpz_class>> integer_relation(const std::vector<MpReal>& v, long max_height,
                                                       const IntegerRelationOptions& opts) {
    std::vector<MpComplex> vv;
    for (const auto& r : v) {
        MpComplex c(r.prec());
        c.re = r;
        vv.push_back(std::move(c));
    }
    return integer_relation(vv, max_height, opts);
}

namespace {

// monomial exponent vectors over `k` variables with total degree in
// [lo, hi], graded-lex descending within each degree
std::vector<std::vector<std::uint16_t>> monomials_between(std::size_t k, int lo, int hi) {
    std::vector<std::vector<std::uint16_t>> out;
    std::vector<std::uint16_t> cur(k, 0);
    std::function<void(std::size_t, int)> rec = [&](std::size_t pos, int rem) {
        if (pos + 1 == k) {
            cur[pos] = static_cast<std::uint16_t>(rem);
            out.push_back(cur);
            return;
        }
        for (int e = rem; e >= 0; --e) {
            cur[pos] = static_cast<std::uint16_t>(e);
            rec(pos + 1, rem - e);
        }
    };
    for (int d = lo; d <= hi; ++d) rec(0, d);
    return out;
}

MpComplex eval_monomial(const std::vector<MpComplex>& coords,
                        const std::vector<std::uint16_t>& exps, mpfr_prec_t prec) {
    MpComplex acc = MpComplex::from(QC(1), prec);
    for (std::size_t i = 0; i < exps.size(); ++i)
        for (std::uint16_t e = 0; e < exps[i]; ++e) acc = acc * coords[i];
    return acc;
}

Poly poly_from_relation(const std::vector<mpz_class>& c,
                        const std::vector<std::vector<std::uint16_t>>& monos,
                        const std::vector<std::string>& vars) {
    std::vector<Poly::Term> terms;
    for (std::size_t i = 0; i < monos.size(); ++i) {
        if (c[i] == 0) continue;
        Mono m{std::vector<std::uint16_t>(monos[i])};
        terms.push_back({m, QC(Rat(c[i]))});
    }
    return Poly::from_terms(vars, std::move(terms));
}

// multivariate reduction by a set of generators (leading-term division)
Poly reduce_by(const Poly& p, const std::vector<Poly>& gens) {
    Poly cur = p;
    bool changed = true;
    while (changed && !cur.is_zero()) {
        changed = false;
        for (const auto& g : gens) {
            if (g.is_zero()) continue;
            const auto& lt = g.terms()[0];
            const auto& ct = cur.terms()[0];
            bool divisible = true;
            Mono q;
            q.e.resize(ct.first.e.size());
            for (std::size_t i = 0; i < q.e.size(); ++i) {
                if (ct.first.e[i] < lt.first.e[i]) {
                    divisible = false;
                    break;
                }
                q.e[i] = static_cast<std::uint16_t>(ct.first.e[i] - lt.first.e[i]);
            }
            if (!divisible) continue;
            q.deg = ct.first.deg - lt.first.deg;
            QC f = ct.second / lt.second;
            cur = cur - Poly::from_terms(cur.vars(), {{q, f}}) * g;
            changed = true;
            break;
        }
    }
    return cur;
}

}  // namespace

CenterCondition recover_polynomials(const WitnessSet& ws, int degree_bound, Rng& rng,
                                    const ExactifyOptions& opts) {
    if (degree_bound < 1) throw std::invalid_argument("recover_polynomials: degree bound >= 1");
    CenterCondition cc;
    cc.chart = ws.ambient == Ambient::AffineChart ? Chart::A6One : Chart::A6Zero;
    cc.witness_count = static_cast<long>(ws.points.size());

    // refined high-precision witness points (skipped for exact inputs whose
    // sliced system cannot pin the point)
    WitnessSet refined = ws;
    if (refined.sliced_square().size() >= refined.vars.size()) {
        Rng rr = rng.fork("exactify-refine");
        refine_witness_points(refined, opts.precision, 1e-55, rr);
    } else {
        for (auto& p : refined.points) p = point_convert(p, opts.precision);
    }

    // chart coordinates per point
    std::vector<std::string> chart_vars;
    std::vector<std::vector<MpComplex>> coords;
    if (ws.ambient == Ambient::AffineChart) {
        std::size_t inf_idx =
            std::find(ws.vars.begin(), ws.vars.end(), ws.infinity_var) - ws.vars.begin();
        for (const auto& v : ws.vars)
            if (v != ws.infinity_var) chart_vars.push_back(v);
        for (const auto& p : refined.points) {
            std::vector<MpComplex> c;
            for (std::size_t i = 0; i < ws.vars.size(); ++i)
                if (i != inf_idx) c.push_back(p[i] / p[inf_idx]);
            coords.push_back(std::move(c));
        }
    } else {
        chart_vars = ws.vars;
        for (const auto& p : refined.points) {
            // normalize by the coordinate of largest modulus for stable scaling
            std::size_t best = 0;
            for (std::size_t i = 1; i < p.size(); ++i)
                if (p[i].abs_approx() > p[best].abs_approx()) best = i;
            std::vector<MpComplex> c;
            for (const auto& x : p) c.push_back(x / p[best]);
            coords.push_back(std::move(c));
        }
    }

    const bool projective = ws.ambient != Ambient::AffineChart;
    IntegerRelationOptions iropts;
    iropts.abs_tol = opts.validation_tol;  // witness accuracy bounds relation residuals
    for (int d = 1; d <= degree_bound; ++d) {
        auto monos = monomials_between(chart_vars.size(), projective ? d : 0, d);
        // values at the first (general) witness point; found relations are
        // projected out by eliminating their pivot coordinate
        std::vector<MpComplex> vals;
        for (const auto& m : monos) vals.push_back(eval_monomial(coords[0], m, opts.precision));
        std::vector<std::size_t> active(monos.size());
        std::iota(active.begin(), active.end(), 0);

        for (;;) {
            std::vector<MpComplex> sub;
            for (auto i : active) sub.push_back(vals[i]);
            std::optional<std::vector<mpz_class>> rel;
            try {
                rel = integer_relation(sub, opts.max_height, iropts);
            } catch (const std::runtime_error&) {
                break;  // inconclusive at this height/precision
            }
            if (!rel) break;
            // lift to full monomial coordinates
            std::vector<mpz_class> full(monos.size(), 0);
            for (std::size_t i = 0; i < active.size(); ++i) full[active[i]] = (*rel)[i];
            Poly cand = poly_from_relation(full, monos, chart_vars);
            // validate at every other witness point
            bool valid = true;
            for (std::size_t p = 1; p < coords.size() && valid; ++p) {
                MpComplex acc(opts.precision);
                for (std::size_t i = 0; i < monos.size(); ++i) {
                    if (full[i] == 0) continue;
                    acc += MpComplex::from(QC(Rat(full[i])), opts.precision) *
                           eval_monomial(coords[p], monos[i], opts.precision);
                }
                if (acc.abs_approx() > opts.validation_tol * 1e3) valid = false;
            }
            // project out: drop the pivot (last nonzero) coordinate
            std::size_t pivot = active.size();
            for (std::size_t i = active.size(); i-- > 0;)
                if ((*rel)[i] != 0) {
                    pivot = i;
                    break;
                }
            if (pivot == active.size()) break;
            active.erase(active.begin() + static_cast<long>(pivot));
            if (valid) {
                Poly reduced = reduce_by(cand, cc.generators);
                if (!reduced.is_zero()) cc.generators.push_back(integer_primitive(cand));
            }
            if (active.empty()) break;
        }
    }

    // canonical presentation: reduced row echelon basis of the linear
    // generators (primitive integer rows), nonlinear ones appended
    std::vector<Poly> linear, rest;
    for (auto& g : cc.generators) (g.degree() <= 1 ? linear : rest).push_back(g);
    if (!linear.empty()) {
        const auto& vars = linear[0].vars();
        QCMatrix rows;
        for (const auto& g : linear) {
            std::vector<QC> row(vars.size() + 1, QC(0));
            for (const auto& [m, c] : g.terms()) {
                if (m.deg == 0) {
                    row[vars.size()] = c;
                    continue;
                }
                for (std::size_t v = 0; v < vars.size(); ++v)
                    if (m.e[v] == 1) row[v] = c;
            }
            rows.push_back(std::move(row));
        }
        qc_rref(rows);
        std::vector<Poly> canon;
        for (const auto& row : rows) {
            Poly g{vars};
            for (std::size_t v = 0; v < vars.size(); ++v)
                if (!row[v].is_zero()) g += Poly::variable(vars[v], vars).scaled(row[v]);
            if (!row[vars.size()].is_zero()) g += Poly::constant(row[vars.size()], vars);
            if (!g.is_zero()) canon.push_back(integer_primitive(g));
        }
        cc.generators = std::move(canon);
        for (auto& g : rest) cc.generators.push_back(integer_primitive(g));
    }
    return cc;
}

std::vector<bool> realness_filter(std::vector<Point>& pts, const std::vector<Poly>& refine_system,
                                  const std::vector<std::string>& vars, Rng& rng,
                                  const ExactifyOptions& opts, bool conjugate_pairing_check) {
    auto classify = [&](const Point& p) -> int {  // 1 real, 0 nonreal, -1 ambiguous
        std::size_t best = 0;
        for (std::size_t i = 1; i < p.size(); ++i)
            if (p[i].abs_approx() > p[best].abs_approx()) best = i;
        double worst = 0;
        for (const auto& c : p) {
            MpComplex q = c / p[best];
            worst = std::max(worst, std::abs(q.to_dcomplex().imag()));
        }
        if (worst < opts.realness_tol) return 1;
        if (worst > 100 * opts.realness_tol) return 0;
        return -1;
    };

    std::vector<bool> real(pts.size(), false);
    Rng rr = rng.fork("realness-refine");
    for (std::size_t i = 0; i < pts.size(); ++i) {
        int c = classify(pts[i]);
        if (c == -1) {
            auto ref = refine_possibly_singular(refine_system, vars, pts[i], 1e-45, 256, rr);
            if (ref.ok) pts[i] = ref.x;
            c = classify(pts[i]);
        }
        real[i] = c == 1;
    }

    if (!conjugate_pairing_check) return real;

    // conjugate-pair accounting for the nonreal points (projective compare)
    auto proj_equal = [&](const Point& a, const Point& b) {
        double scale = 0, worst = 0;
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = i + 1; j < a.size(); ++j) {
                auto ai = a[i].to_dcomplex(), aj = a[j].to_dcomplex();
                auto bi = b[i].to_dcomplex(), bj = b[j].to_dcomplex();
                worst = std::max(worst, std::abs(ai * bj - aj * bi));
                scale = std::max({scale, std::abs(ai), std::abs(bi), 1e-8});
            }
        return worst <= 1e-6 * scale * scale;
    };
    std::vector<std::size_t> nonreal;
    for (std::size_t i = 0; i < pts.size(); ++i)
        if (!real[i]) nonreal.push_back(i);
    std::vector<bool> paired(nonreal.size(), false);
    for (std::size_t a = 0; a < nonreal.size(); ++a) {
        if (paired[a]) continue;
        Point conj;
        for (const auto& c : pts[nonreal[a]]) conj.push_back(c.conj());
        bool found = false;
        for (std::size_t b = 0; b < nonreal.size(); ++b) {
            if (b == a || paired[b]) continue;
            if (proj_equal(conj, pts[nonreal[b]])) {
                paired[a] = paired[b] = true;
                found = true;
                break;
            }
        }
        if (!found && proj_equal(conj, pts[nonreal[a]])) {
            // self-conjugate under the projective comparison: actually real
            real[nonreal[a]] = true;
            paired[a] = true;
        } else if (!found) {
            throw std::runtime_error("realness_filter: nonreal point without conjugate partner");
        }
    }
    return real;
}

ComponentRealness realness_filter_component(const WitnessSet& ws, const CenterCondition& cc,
                                            Rng& rng, const ExactifyOptions& opts) {
    ComponentRealness out;
    // witness-point inspection first (the complex slice breaks conjugation
    // symmetry, so no pairing accounting here)
    std::vector<Point> pts = ws.points;
    auto real = realness_filter(pts, ws.sliced_square(), ws.vars, rng, opts, false);
    if (std::any_of(real.begin(), real.end(), [](bool b) { return b; })) {
        out.flag = ComponentRecord::RealFlag::Yes;
        return out;
    }
    // generator analysis: a sum of squares with positive constant has no
    // real zeros; without a constant it forces each squared variable to 0
    bool decided_no = false;
    for (const auto& g : cc.generators) {
        bool sos = true;
        Rat constant(0);
        std::vector<Poly> forced;
        for (const auto& [m, c] : g.terms()) {
            if (!c.is_real()) {
                sos = false;
                break;
            }
            if (m.deg == 0) {
                constant = c.re;
                continue;
            }
            // must be an even power of a single variable with positive coefficient
            int nz = 0;
            std::size_t var = 0;
            for (std::size_t v = 0; v < m.e.size(); ++v)
                if (m.e[v] > 0) {
                    nz++;
                    var = v;
                }
            if (nz != 1 || m.e[var] % 2 != 0 || c.re <= 0) {
                sos = false;
                break;
            }
            forced.push_back(Poly::variable(g.vars()[var], g.vars()));
        }
        if (!sos) continue;
        if (constant > 0) {
            decided_no = true;
            break;
        }
        if (constant == 0)
            for (auto& f : forced) out.real_locus_constraints.push_back(f);
    }
    if (decided_no) {
        out.flag = ComponentRecord::RealFlag::No;
        out.real_locus_constraints.clear();
        return out;
    }
    // linear generators constrain the real locus as well
    if (!out.real_locus_constraints.empty()) {
        for (const auto& g : cc.generators)
            if (g.degree() == 1) out.real_locus_constraints.push_back(g);
        if (ws.ambient == Ambient::Projective) {
            // constraints spanning every coordinate leave no projective point
            QCMatrix rows;
            for (const auto& g : out.real_locus_constraints) {
                std::vector<QC> row(g.nvars(), QC(0));
                for (const auto& [m, c] : g.terms())
                    for (std::size_t v = 0; v < g.nvars(); ++v)
                        if (m.e[v] == 1 && m.deg == 1) row[v] = c;
                rows.push_back(std::move(row));
            }
            auto pivots = qc_rref(rows);
            if (pivots.size() == cc.generators[0].nvars()) {
                out.flag = ComponentRecord::RealFlag::No;
                out.real_locus_constraints.clear();
                return out;
            }
        }
        out.flag = ComponentRecord::RealFlag::Unknown;  // real locus possibly lower-dimensional
        return out;
    }
    out.flag = ComponentRecord::RealFlag::Unknown;
    return out;
}

bool plane_curve_has_real_points(const Poly& f, Rng& rng, const TrackOptions& topts) {
    // critical points of the squared distance to a random rational point:
    // f = 0, (x - x0) fy - (y - y0) fx = 0
    const auto vars = f.vars();
    if (vars.size() != 2) throw std::invalid_argument("plane_curve_has_real_points needs 2 variables");
    QC x0{rng.next_dyadic()}, y0{rng.next_dyadic()};
    Poly fx = f.differentiate(std::size_t{0});
    Poly fy = f.differentiate(std::size_t{1});
    Poly gx = Poly::variable(vars[0], vars) - Poly::constant(x0, vars);
    Poly gy = Poly::variable(vars[1], vars) - Poly::constant(y0, vars);
    Poly crit = gx * fy - gy * fx;
    Rng solver = rng.fork("curve-critical");
    auto res = solve({f, crit}, vars, solver, topts);
    for (const auto& sol : res.solutions) {
        auto p = point_to_double(sol);
        if (std::abs(p[0].imag()) < 1e-8 && std::abs(p[1].imag()) < 1e-8) return true;
    }
    return false;
}

namespace {

// full 6-variable generator list of a chart condition
std::vector<Poly> chart_generators_a16(const CenterCondition& cc) {
    std::vector<Poly> gens;
    for (const auto& g : cc.generators) gens.push_back(g.extend_vars(kParamVars));
    Poly a6 = Poly::variable("a6", kParamVars);
    if (cc.chart == Chart::A6Zero)
        gens.push_back(a6);
    else if (cc.chart == Chart::A6One)
        gens.push_back(a6 - Poly::constant(QC(1), kParamVars));
    return gens;
}

}  // namespace

bool vanishes_on_parametrization(const std::vector<Poly>& generators_a16,
                                 const FocusQuantitySet& fq) {
    auto par = parametrize_linear(generators_a16, kParamVars);
    if (!par) throw std::invalid_argument("generators are not a linear system");
    for (int K = 2; K <= fq.kmax; ++K) {
        if (!fq.at(K).normalized.substitute(par->bindings).is_zero()) return false;
    }
    return true;
}

VerifyOutcome verify_vanishing(CenterCondition& cc, const FocusQuantitySet& fq) {
    VerifyOutcome out;
    auto gens = chart_generators_a16(cc);
    bool linear = std::all_of(gens.begin(), gens.end(),
                              [](const Poly& g) { return g.degree() <= 1; });
    if (!linear) {
        out.method = VerifyOutcome::Method::Failed;
        return out;
    }
    try {
        out.verified = vanishes_on_parametrization(gens, fq);
        out.method = VerifyOutcome::Method::Exact;
    } catch (const std::invalid_argument&) {
        out.method = VerifyOutcome::Method::Failed;
        return out;
    }
    if (out.verified) cc.status = CenterCondition::Status::SymbolicallyVerified;
    return out;
}

}  // namespace centerfocus
