#include "centerfocus/certify.hpp"

#include "centerfocus/linalg.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace centerfocus {

void VectorField::check() const {
    if (components.size() != state.size())
        throw std::invalid_argument("vector field component count != state variable count");
    for (const auto& c : components)
        if (c.vars() != components[0].vars())
            throw std::invalid_argument("vector field components over mismatched variables");
}

Poly lie_derivative(const VectorField& X, const Poly& F) {
    X.check();
    Poly FF = F.vars() == X.all_vars() ? F : F.extend_vars(X.all_vars());
    Poly out{X.all_vars()};
    for (std::size_t i = 0; i < X.state.size(); ++i)
        out += X.components[i] * FF.differentiate(X.state[i]);
    return out;
}

std::optional<Poly> cofactor_solve(const VectorField& X, const Poly& F) {
    if (F.is_zero()) throw std::invalid_argument("cofactor_solve: zero polynomial");
    Poly XF = lie_derivative(X, F);
    Poly FF = F.vars() == X.all_vars() ? F : F.extend_vars(X.all_vars());
    if (XF.is_zero()) return Poly{X.all_vars()};
    return exact_divide(XF, FF);
}

namespace {

// split state-degree parts: key = exponents on the state variables
std::map<std::vector<std::uint16_t>, Poly> state_parts(const Poly& p,
                                                       const std::vector<std::string>& state) {
    std::vector<std::size_t> idx;
    for (const auto& s : state) idx.push_back(p.var_index(s));
    return p.collect(idx);
}

}  // namespace

std::optional<DarbouxCertificate> darboux_certificate(const VectorField& X, const Poly& F) {
    auto K = cofactor_solve(X, F);
    if (!K) return std::nullopt;
    DarbouxCertificate cert;
    cert.F = F.vars() == X.all_vars() ? F : F.extend_vars(X.all_vars());
    cert.K = *K;
    // tangency: no constant part, linear part proportional to the last state variable
    auto parts = state_parts(cert.F, X.state);
    bool ok = true;
    std::vector<std::uint16_t> zero(X.state.size(), 0);
    if (parts.count(zero) && !parts[zero].is_zero()) ok = false;
    for (std::size_t i = 0; i + 1 < X.state.size(); ++i) {
        std::vector<std::uint16_t> key(X.state.size(), 0);
        key[i] = 1;
        if (parts.count(key) && !parts[key].is_zero()) ok = false;
    }
    std::vector<std::uint16_t> wkey(X.state.size(), 0);
    wkey.back() = 1;
    if (!parts.count(wkey) || parts[wkey].is_zero()) ok = false;
    cert.tangent_to_w = ok;
    return cert;
}

VectorField change_coordinates(const VectorField& X, const std::vector<std::vector<Rat>>& M,
                               const std::vector<std::string>& new_state) {
    X.check();
    const std::size_t n = X.state.size();
    if (M.size() != n || new_state.size() != n)
        throw std::invalid_argument("change_coordinates: dimension mismatch");

    // new variable list: new state + the parameters
    std::vector<std::string> params(X.all_vars().begin() + static_cast<long>(n),
                                    X.all_vars().end());
    std::vector<std::string> nv = new_state;
    nv.insert(nv.end(), params.begin(), params.end());

    // old = M * new
    std::map<std::string, Poly> sub;
    for (std::size_t i = 0; i < n; ++i) {
        Poly e{nv};
        for (std::size_t j = 0; j < n; ++j)
            e += Poly::variable(new_state[j], nv).scaled(QC(M[i][j]));
        sub[X.state[i]] = e;
    }
    for (const auto& p : params) sub[p] = Poly::variable(p, nv);

    // inverse of M over the rationals
    QCMatrix aug(n, std::vector<QC>(2 * n, QC(0)));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug[i][j] = QC(M[i][j]);
        aug[i][n + i] = QC(1);
    }
    auto piv = qc_rref(aug);
    if (piv.size() != n || piv.back() >= n)
        throw std::invalid_argument("change_coordinates: singular matrix");

    VectorField out;
    out.state = new_state;
    for (std::size_t i = 0; i < n; ++i) {
        Poly comp{nv};
        for (std::size_t j = 0; j < n; ++j) {
            const QC& minv = aug[i][n + j];
            if (minv.is_zero()) continue;
            comp += X.components[j].substitute(sub).scaled(minv);
        }
        out.components.push_back(comp);
    }
    return out;
}

VectorField restrict_to_graph(const VectorField& X, const Poly& surface) {
    X.check();
    if (X.state.size() != 3) throw std::invalid_argument("restrict_to_graph needs a 3D field");
    Poly F = surface.vars() == X.all_vars() ? surface : surface.extend_vars(X.all_vars());
    const std::string& zvar = X.state[2];
    std::size_t zi = F.var_index(zvar);

    // F must be c*z - phi(x,y): the only term involving z is c*z itself
    QC c(0);
    std::vector<Poly::Term> rest;
    for (const auto& [m, coef] : F.terms()) {
        if (m.e[zi] == 0) {
            rest.push_back({m, coef});
            continue;
        }
        if (m.e[zi] == 1 && m.deg == 1) {
            c = coef;
            continue;
        }
        throw std::invalid_argument("surface is not graph-form in " + zvar);
    }
    if (c.is_zero()) throw std::invalid_argument("surface does not involve " + zvar + " linearly");
    Poly phi = Poly::from_terms(F.vars(), std::move(rest)).scaled(-(QC(1) / c));

    std::vector<std::string> pv;
    for (const auto& v : X.all_vars())
        if (v != zvar) pv.push_back(v);
    std::map<std::string, Poly> sub;
    for (const auto& v : pv) sub[v] = Poly::variable(v, pv);
    sub[zvar] = phi.restrict_vars(pv);

    VectorField out;
    out.state = {X.state[0], X.state[1]};
    out.components = {X.components[0].substitute(sub), X.components[1].substitute(sub)};
    return out;
}

bool restriction_equals_mod_surface(const VectorField& X, const Poly& surface,
                                    const Poly& expected_xdot, const Poly& expected_ydot) {
    X.check();
    Poly F = surface.vars() == X.all_vars() ? surface : surface.extend_vars(X.all_vars());
    const Poly ex = expected_xdot.vars() == X.all_vars() ? expected_xdot
                                                         : expected_xdot.extend_vars(X.all_vars());
    const Poly ey = expected_ydot.vars() == X.all_vars() ? expected_ydot
                                                         : expected_ydot.extend_vars(X.all_vars());
    for (auto [comp, want] : {std::pair<const Poly&, const Poly&>{X.components[0], ex},
                              std::pair<const Poly&, const Poly&>{X.components[1], ey}}) {
        Poly diff = comp - want;
        if (diff.is_zero()) continue;
        if (!exact_divide(diff, F)) return false;
    }
    return true;
}

IifResult inverse_integrating_factor_check(const Poly& P, const Poly& Q, const Poly& V,
                                           const std::vector<std::string>& state) {
    if (state.size() != 2) throw std::invalid_argument("planar check needs 2 state variables");
    const auto& vars = P.vars();
    Poly VV = V.vars() == vars ? V : V.extend_vars(vars);
    Poly QQ = Q.vars() == vars ? Q : Q.extend_vars(vars);
    Poly lhs = P * VV.differentiate(state[0]) + QQ * VV.differentiate(state[1]);
    Poly div = P.differentiate(state[0]) + QQ.differentiate(state[1]);
    if (lhs != div * VV) return IifResult::Invalid;
    // V at the state origin, as a polynomial in the parameters
    std::vector<std::size_t> idx{VV.var_index(state[0]), VV.var_index(state[1])};
    auto parts = VV.collect(idx);
    std::vector<std::uint16_t> zero{0, 0};
    auto it = parts.find(zero);
    bool nonzero = it != parts.end() && !it->second.is_zero();
    return nonzero ? IifResult::ValidNonzeroOrigin : IifResult::ValidZeroOrigin;
}

bool reversibility_check(const Poly& P, const Poly& Q, const std::vector<std::string>& state) {
    if (state.size() != 2) throw std::invalid_argument("planar check needs 2 state variables");
    const auto& vars = P.vars();
    std::map<std::string, Poly> sigma;
    for (const auto& v : vars) sigma[v] = Poly::variable(v, vars);
    sigma[state[1]] = -Poly::variable(state[1], vars);
    Poly QQ = Q.vars() == vars ? Q : Q.extend_vars(vars);
    // invariance under (x, y, t) -> (x, -y, -t): P odd in y, Q even in y
    return P.substitute(sigma) == -P && QQ.substitute(sigma) == QQ;
}

bool dulac_kapteyn(const Poly& a, const Poly& b, const Poly& c, const Poly& d, const Poly& A,
                   const Poly& B) {
    // (i)
    if ((a + c - b - d).is_zero()) return true;
    // (ii)
    Poly cond1 = A * (a + c) - B * (b + d);
    Poly three = Poly::constant(QC(3), a.vars());
    Poly cond2 = a * A.pow(3) - (three * b + A) * A.pow(2) * B + (three * c + B) * A * B.pow(2) -
                 d * B.pow(3);
    if (cond1.is_zero() && cond2.is_zero()) return true;
    // (iii)
    Poly five = Poly::constant(QC(5), a.vars());
    Poly two = Poly::constant(QC(2), a.vars());
    if ((A + five * b + five * d).is_zero() && (B + five * a + five * c).is_zero() &&
        (a * c + b * d + two * a * a + two * d * d).is_zero())
        return true;
    return false;
}

VectorField dulac_kapteyn_normal_form(const Poly& a, const Poly& b, const Poly& c, const Poly& d,
                                      const Poly& A, const Poly& B,
                                      const std::vector<std::string>& state) {
    std::vector<std::string> nv = state;
    for (const auto& v : a.vars()) nv.push_back(v);
    auto lift = [&](const Poly& p) { return p.extend_vars(nv); };
    Poly u = Poly::variable(state[0], nv), v = Poly::variable(state[1], nv);
    Poly two = Poly::constant(QC(2), nv);
    VectorField X;
    X.state = state;
    X.components = {
        -v - lift(b) * u * u - (lift(B) + two * lift(c)) * u * v - lift(d) * v * v,
        u + lift(a) * u * u + (lift(A) + two * lift(b)) * u * v + lift(c) * v * v};
    return X;
}

std::optional<std::vector<Rat>> darboux_integral(const std::vector<std::pair<Poly, Poly>>& pairs,
                                                 const VectorField& X) {
    // verify every pair first
    for (const auto& [F, K] : pairs) {
        Poly XF = lie_derivative(X, F);
        Poly KK = K.vars() == X.all_vars() ? K : K.extend_vars(X.all_vars());
        Poly FF = F.vars() == X.all_vars() ? F : F.extend_vars(X.all_vars());
        if (XF != KK * FF) throw std::invalid_argument("darboux_integral: unverified pair");
    }
    // coefficient-wise linear system sum alpha_j K_j = 0
    std::map<Mono, std::vector<QC>, MonoGradedLexGreater> rows;
    for (std::size_t j = 0; j < pairs.size(); ++j) {
        Poly KK = pairs[j].second.vars() == X.all_vars()
                      ? pairs[j].second
                      : pairs[j].second.extend_vars(X.all_vars());
        for (const auto& [m, c] : KK.terms()) {
            auto& row = rows[m];
            row.resize(pairs.size(), QC(0));
            row[j] = c;
        }
    }
    QCMatrix mat;
    for (auto& [m, row] : rows) {
        row.resize(pairs.size(), QC(0));
        mat.push_back(row);
    }
    if (mat.empty()) mat.push_back(std::vector<QC>(pairs.size(), QC(0)));  // all cofactors zero
    auto null = qc_nullspace(mat);
    if (null.empty()) return std::nullopt;
    // rational alpha (entries of the first basis vector are rational when
    // the cofactors are; clear denominators)
    std::vector<Rat> alpha;
    for (const auto& c : null[0]) {
        if (c.im != 0) return std::nullopt;
        alpha.push_back(c.re);
    }
    mpz_class den(1);
    for (const auto& r : alpha) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), r.get_den().get_mpz_t());
    for (auto& r : alpha) r *= Rat(den);
    return alpha;
}

// --- manifest ---

namespace {

std::string trimmed(const std::string& s) {
    auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == sep) {
            out.push_back(trimmed(cur));
            cur.clear();
        } else
            cur += ch;
    }
    out.push_back(trimmed(cur));
    return out;
}

}  // namespace

std::vector<CertificateCase> parse_certificate_manifest(std::istream& in) {
    std::vector<CertificateCase> out;
    CertificateCase cur;
    bool open = false;
    std::string line;
    while (std::getline(in, line)) {
        line = trimmed(line);
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string key;
        ls >> key;
        std::string value = trimmed(line.substr(key.size()));
        if (key == "case") {
            if (open) out.push_back(cur);
            cur = CertificateCase{};
            cur.name = value;
            open = true;
        } else if (key == "chart") {
            cur.chart = value == "a6_1" ? Chart::A6One : Chart::A6Zero;
        } else if (key == "bind") {
            for (auto& kv : split(value, ';')) {
                auto eq = kv.find('=');
                if (eq == std::string::npos) throw std::runtime_error("bad bind line: " + line);
                cur.bindings[trimmed(kv.substr(0, eq))] = trimmed(kv.substr(eq + 1));
            }
        } else if (key == "free") {
            for (auto& f : split(value, ' '))
                if (!f.empty()) cur.free_symbols.push_back(f);
        } else if (key == "planar_decoupled") {
            cur.planar_decoupled = true;
        } else if (key == "surface") {
            cur.surface = value;
        } else if (key == "cofactor") {
            cur.cofactor = value;
        } else if (key == "change") {
            for (auto& kv : split(value, ';')) {
                auto eq = kv.find('=');
                if (eq == std::string::npos) throw std::runtime_error("bad change line: " + line);
                cur.change[trimmed(kv.substr(0, eq))] = trimmed(kv.substr(eq + 1));
            }
        } else if (key == "surface_new") {
            cur.surface_new = value;
        } else if (key == "system_new") {
            cur.system_new = split(value, '|');
        } else if (key == "restriction") {
            cur.restriction = split(value, '|');
        } else if (key == "cert") {
            CertificateCase::Cert c;
            c.type = value;
            cur.certs.push_back(c);
        } else if (key == "endcase") {
            out.push_back(cur);
            open = false;
        } else {
            // data line of the last certificate: "<name> <poly or list>"
            if (cur.certs.empty()) throw std::runtime_error("manifest data outside cert: " + line);
            cur.certs.back().data[key] = value;
        }
    }
    if (open) out.push_back(cur);
    return out;
}

std::vector<CertificateCase> load_certificate_manifest(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open manifest: " + path);
    return parse_certificate_manifest(in);
}

CaseOutcome run_certificate_case(const CertificateCase& c) {
    CaseOutcome out;
    out.name = c.name;
    auto fail = [&](const std::string& why) {
        out.notes.push_back(why);
        out.passed = false;
        return out;
    };

    // variable lists
    std::vector<std::string> uvw_vars = kRealStateVars;
    uvw_vars.insert(uvw_vars.end(), c.free_symbols.begin(), c.free_symbols.end());
    std::vector<std::string> xyz_state{"x", "y", "z"};
    std::vector<std::string> xyz_vars = xyz_state;
    xyz_vars.insert(xyz_vars.end(), c.free_symbols.begin(), c.free_symbols.end());
    std::vector<std::string> planar_uv{"u", "v"};
    std::vector<std::string> planar_xy{"x", "y"};

    // build the specialized family
    RealSystem3D fam = standard_family();
    std::map<std::string, Poly> sub;
    for (const auto& s : kRealStateVars) sub[s] = Poly::variable(s, uvw_vars);
    for (const auto& p : kParamVars) {
        auto it = c.bindings.find(p);
        if (it != c.bindings.end())
            sub[p] = poly_from_string(it->second, c.free_symbols).extend_vars(uvw_vars);
        else if (std::find(c.free_symbols.begin(), c.free_symbols.end(), p) !=
                 c.free_symbols.end())
            sub[p] = Poly::variable(p, uvw_vars);
        else
            throw std::runtime_error("case " + c.name + ": parameter " + p + " unbound");
    }
    VectorField X;
    X.state = kRealStateVars;
    for (int i = 0; i < 3; ++i) X.components.push_back(fam.rhs[i].substitute(sub));

    VectorField planar;  // filled when a restriction is established
    bool have_planar = false;
    std::vector<std::string> planar_state;

    if (c.planar_decoupled) {
        // first two equations independent of w
        for (int i = 0; i < 2; ++i)
            if (X.components[i].degree_in(X.components[i].var_index("w")) > 0)
                return fail("first two equations are not decoupled from w");
        std::vector<std::string> pv = planar_uv;
        pv.insert(pv.end(), c.free_symbols.begin(), c.free_symbols.end());
        planar.state = planar_uv;
        planar.components = {X.components[0].restrict_vars(pv), X.components[1].restrict_vars(pv)};
        planar_state = planar_uv;
        have_planar = true;
    }

    VectorField Xc = X;  // field in certificate coordinates
    Poly surface_c{uvw_vars};
    bool have_surface = false;

    if (!c.surface.empty()) {
        Poly F = poly_from_string(c.surface, uvw_vars);
        auto cert = darboux_certificate(X, F);
        if (!cert) return fail("surface is not invariant");
        if (!cert->tangent_to_w) return fail("surface is not tangent to w = 0");
        if (!c.cofactor.empty()) {
            Poly K = poly_from_string(c.cofactor, uvw_vars);
            if (cert->K != K) return fail("cofactor mismatch: got " + poly_to_string(cert->K));
            out.notes.push_back("cofactor K = " + c.cofactor + " verified");
        }
        surface_c = cert->F;
        have_surface = true;
    }

    if (!c.change.empty()) {
        // old = M * new, with rows given as polynomials in x, y, z
        std::vector<std::vector<Rat>> M(3, std::vector<Rat>(3, Rat(0)));
        for (int i = 0; i < 3; ++i) {
            auto it = c.change.find(kRealStateVars[i]);
            if (it == c.change.end()) return fail("incomplete coordinate change");
            Poly row = poly_from_string(it->second, xyz_state);
            for (const auto& [m, coef] : row.terms()) {
                if (m.deg != 1 || !coef.is_real()) return fail("coordinate change must be linear");
                for (int j = 0; j < 3; ++j)
                    if (m.e[static_cast<std::size_t>(j)] == 1) M[i][j] = coef.re;
            }
        }
        Xc = change_coordinates(X, M, xyz_state);
        if (have_surface) {
            std::map<std::string, Poly> csub;
            for (int i = 0; i < 3; ++i) {
                Poly e{xyz_vars};
                for (int j = 0; j < 3; ++j)
                    if (M[i][j] != 0) e += Poly::variable(xyz_state[j], xyz_vars).scaled(QC(M[i][j]));
                csub[kRealStateVars[i]] = e;
            }
            for (const auto& f : c.free_symbols) csub[f] = Poly::variable(f, xyz_vars);
            surface_c = surface_c.substitute(csub);
        }
        if (!c.surface_new.empty()) {
            Poly want = poly_from_string(c.surface_new, xyz_vars);
            if (surface_c != want)
                return fail("transformed surface mismatch: got " + poly_to_string(surface_c));
            out.notes.push_back("transformed surface matches");
        }
        if (!c.system_new.empty()) {
            for (int i = 0; i < 3; ++i) {
                Poly want = poly_from_string(c.system_new[static_cast<std::size_t>(i)], xyz_vars);
                if (Xc.components[static_cast<std::size_t>(i)] != want)
                    return fail("transformed system mismatch in component " + std::to_string(i));
            }
            out.notes.push_back("transformed system matches");
        }
    }

    // restriction to the surface graph when expected
    if (!c.restriction.empty()) {
        if (!have_surface) return fail("restriction expected without a surface");
        VectorField restricted = restrict_to_graph(Xc, surface_c);
        std::vector<std::string> pv{Xc.state[0], Xc.state[1]};
        pv.insert(pv.end(), c.free_symbols.begin(), c.free_symbols.end());
        for (int i = 0; i < 2; ++i) {
            Poly want = poly_from_string(c.restriction[static_cast<std::size_t>(i)], pv);
            if (restricted.components[static_cast<std::size_t>(i)] != want.extend_vars(restricted.all_vars()))
                return fail("restriction mismatch in component " + std::to_string(i));
        }
        out.notes.push_back("restriction to the center manifold matches");
        planar = restricted;
        planar_state = {Xc.state[0], Xc.state[1]};
        have_planar = true;
    }

    // run the certificates; a cert marked as fallback only has to pass when
    // the preceding stated certificate failed (the discrepancy is logged)
    std::vector<bool> results;
    for (const auto& cert : c.certs) {
        bool ok = false;
        if (cert.type == "linear_center") {
            if (!have_surface) return fail("linear_center needs a surface");
            VectorField restricted = restrict_to_graph(Xc, surface_c);
            const auto& av = restricted.all_vars();
            Poly want0 = -Poly::variable(restricted.state[1], av);
            Poly want1 = Poly::variable(restricted.state[0], av);
            ok = restricted.components[0] == want0 && restricted.components[1] == want1;
            out.notes.push_back(std::string("restriction is the linear center: ") +
                                (ok ? "yes" : "no"));
        } else if (cert.type == "linear_center_mod_f") {
            if (!have_surface) return fail("linear_center_mod_f needs a surface");
            const auto& av = Xc.all_vars();
            Poly want0 = -Poly::variable(Xc.state[1], av);
            Poly want1 = Poly::variable(Xc.state[0], av);
            ok = restriction_equals_mod_surface(Xc, surface_c, want0, want1);
            out.notes.push_back(std::string("restriction equals the linear center modulo F: ") +
                                (ok ? "yes" : "no"));
        } else if (cert.type == "inverse_factor") {
            if (!have_planar) return fail("inverse_factor needs a planar restriction");
            std::vector<std::string> pv = planar_state;
            pv.insert(pv.end(), c.free_symbols.begin(), c.free_symbols.end());
            Poly V = poly_from_string(cert.data.at("V"), pv);
            auto r = inverse_integrating_factor_check(planar.components[0], planar.components[1],
                                                      V.extend_vars(planar.all_vars()),
                                                      planar_state);
            ok = r == IifResult::ValidNonzeroOrigin;
            out.notes.push_back(std::string("inverse integrating factor: ") +
                                (r == IifResult::ValidNonzeroOrigin
                                     ? "valid, nonzero at the origin"
                                     : (r == IifResult::ValidZeroOrigin ? "valid but zero at origin"
                                                                        : "identity fails")));
        } else if (cert.type == "reversibility") {
            if (!have_planar) return fail("reversibility needs a planar restriction");
            ok = reversibility_check(planar.components[0], planar.components[1], planar_state);
            out.notes.push_back(std::string("time-reversal symmetry: ") + (ok ? "yes" : "no"));
        } else if (cert.type == "dulac_kapteyn") {
            if (!have_planar) return fail("dulac_kapteyn needs a planar system");
            VectorField pl = planar;
            // optional extra binding, e.g. the a4 = 0 subcase
            auto git = cert.data.find("guard_bind");
            std::vector<std::string> gfree = c.free_symbols;
            if (git != cert.data.end()) {
                auto eq = git->second.find('=');
                std::string gv = trimmed(git->second.substr(0, eq));
                std::string gval = trimmed(git->second.substr(eq + 1));
                gfree.erase(std::remove(gfree.begin(), gfree.end(), gv), gfree.end());
                std::vector<std::string> pv = planar_state;
                pv.insert(pv.end(), gfree.begin(), gfree.end());
                std::map<std::string, Poly> gsub;
                for (const auto& v : planar_state) gsub[v] = Poly::variable(v, pv);
                for (const auto& f : gfree) gsub[f] = Poly::variable(f, pv);
                gsub[gv] = poly_from_string(gval, gfree.empty()
                                                      ? std::vector<std::string>{"one"}
                                                      : gfree)
                               .extend_vars(pv);
                pl.components = {planar.components[0].substitute(gsub),
                                 planar.components[1].substitute(gsub)};
            }
            Poly a = poly_from_string(cert.data.at("a"), gfree);
            Poly b = poly_from_string(cert.data.at("b"), gfree);
            Poly cc = poly_from_string(cert.data.at("c"), gfree);
            Poly d = poly_from_string(cert.data.at("d"), gfree);
            Poly A = poly_from_string(cert.data.at("A"), gfree);
            Poly B = poly_from_string(cert.data.at("B"), gfree);
            // the planar system must literally be the Theorem A.1 normal form
            VectorField nf = dulac_kapteyn_normal_form(a, b, cc, d, A, B, planar_state);
            bool matches = nf.components[0].extend_vars(pl.all_vars()) == pl.components[0] &&
                           nf.components[1].extend_vars(pl.all_vars()) == pl.components[1];
            bool crit = dulac_kapteyn(a, b, cc, d, A, B);
            ok = matches && crit;
            out.notes.push_back(std::string("Dulac-Kapteyn normal form match: ") +
                                (matches ? "yes" : "no") + ", criterion: " +
                                (crit ? "satisfied" : "violated"));
        } else if (cert.type == "first_integral") {
            Poly H = poly_from_string(cert.data.at("H"), uvw_vars);
            Poly XH = lie_derivative(X, H);
            ok = XH.is_zero();
            out.notes.push_back(std::string("X H == 0: ") + (ok ? "yes" : "no"));
        } else {
            return fail("unknown certificate type: " + cert.type);
        }
        results.push_back(ok);
    }
    // certificates with guards cover complementary strata, so every stated
    // certificate must hold unless a designated fallback passes in its place
    bool all_ok = !c.certs.empty();
    for (std::size_t i = 0; i < c.certs.size(); ++i) {
        if (results[i]) continue;
        bool excused = false;
        for (std::size_t j = i + 1; j < c.certs.size(); ++j) {
            if (c.certs[j].data.count("fallback") && results[j]) {
                out.notes.push_back("stated " + c.certs[i].type +
                                    " certificate fails under the x=u, y=v reading; " +
                                    c.certs[j].type + " fallback certifies the case");
                excused = true;
                break;
            }
        }
        if (!excused) all_ok = false;
    }
    out.passed = all_ok;
    return out;
}

}  // namespace centerfocus
