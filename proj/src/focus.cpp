#include "centerfocus/focus.hpp"

#include <algorithm>

namespace centerfocus {

std::vector<std::string> RealSystem3D::all_vars() {
    std::vector<std::string> v = kRealStateVars;
    v.insert(v.end(), kParamVars.begin(), kParamVars.end());
    return v;
}

std::vector<std::string> ComplexSystem::all_vars() {
    std::vector<std::string> v = kComplexStateVars;
    v.insert(v.end(), kParamVars.begin(), kParamVars.end());
    return v;
}

namespace {

// linear-part coefficient of state variable `sv` in polynomial p (terms of
// state degree 1 with no other state variable), as a parameter polynomial
Poly state_linear_coeff(const Poly& p, std::size_t sv) {
    auto groups = p.collect({0, 1, 2});
    std::vector<std::uint16_t> key(3, 0);
    key[sv] = 1;
    auto it = groups.find(key);
    return it == groups.end() ? Poly(std::vector<std::string>(kParamVars)) : it->second;
}

Poly state_group(const Poly& p, std::vector<std::uint16_t> key) {
    auto groups = p.collect({0, 1, 2});
    auto it = groups.find(key);
    return it == groups.end() ? Poly(std::vector<std::string>(kParamVars)) : it->second;
}

bool param_equals(const Poly& p, const Rat& c) {
    Poly want = Poly::constant(QC(c), std::vector<std::string>(kParamVars));
    return p == want;
}

}  // namespace

void RealSystem3D::check_invariants() const {
    // linear part exactly ((0,-1,0),(1,0,0),(0,0,beta)), no constants,
    // nonlinear parts of degree >= 2 in the state variables
    const Rat zero(0), one(1);
    const Rat want[3][3] = {{zero, -one, zero}, {one, zero, zero}, {zero, zero, beta}};
    for (int c = 0; c < 3; ++c) {
        if (!state_group(rhs[c], {0, 0, 0}).is_zero())
            throw std::invalid_argument("RealSystem3D: constant term in component " + std::to_string(c));
        for (std::size_t sv = 0; sv < 3; ++sv)
            if (!param_equals(state_linear_coeff(rhs[c], sv), want[c][sv]))
                throw std::invalid_argument("RealSystem3D: linear part is not the normal form");
    }
    if (beta == 0) throw std::invalid_argument("RealSystem3D: beta must be nonzero");
}

std::map<std::array<int, 3>, Poly> ComplexSystem::coeff_table(int comp) const {
    std::map<std::array<int, 3>, Poly> out;
    for (auto& [key, p] : rhs[comp].collect({0, 1, 2})) {
        int d = key[0] + key[1] + key[2];
        if (d < 2) continue;  // linear part excluded from the table
        out.emplace(std::array<int, 3>{key[0], key[1], key[2]}, p);
    }
    return out;
}

bool ComplexSystem::conjugate_symmetric() const {
    auto ta = coeff_table(0), tb = coeff_table(1), tc = coeff_table(2);
    auto swapped = [](const std::array<int, 3>& k) { return std::array<int, 3>{k[1], k[0], k[2]}; };
    for (auto& [k, p] : ta) {
        auto it = tb.find(swapped(k));
        Poly want = p.conj_coeffs();
        if (want.is_zero()) {
            if (it != tb.end() && !it->second.is_zero()) return false;
        } else if (it == tb.end() || it->second != want)
            return false;
    }
    for (auto& [k, p] : tb)
        if (ta.find(swapped(k)) == ta.end() && !p.is_zero()) return false;
    for (auto& [k, p] : tc) {
        auto it = tc.find(swapped(k));
        Poly want = p.conj_coeffs();
        if (it == tc.end()) {
            if (!want.is_zero()) return false;
        } else if (it->second != want)
            return false;
    }
    return true;
}

void ComplexSystem::check_invariants() const {
    const QC i = QC::i();
    const QC want[3] = {i, -i, QC(beta)};
    auto pv = std::vector<std::string>(kParamVars);
    for (int c = 0; c < 3; ++c) {
        if (!state_group(rhs[c], {0, 0, 0}).is_zero())
            throw std::invalid_argument("ComplexSystem: constant term present");
        for (std::size_t sv = 0; sv < 3; ++sv) {
            Poly got = state_linear_coeff(rhs[c], sv);
            Poly expect = (static_cast<int>(sv) == c) ? Poly::constant(want[c], pv) : Poly(pv);
            if (got != expect)
                throw std::invalid_argument("ComplexSystem: linear part is not (ix, -iy, beta z)");
        }
    }
}

RealSystem3D standardize(const Poly& f) {
    if (f.vars() != std::vector<std::string>{"u", "du", "ddu"})
        throw std::invalid_argument("standardize expects f over (u, du, ddu)");
    for (const auto& [m, c] : f.terms())
        if (m.deg < 2)
            throw std::invalid_argument("standardize: f must have no constant or linear part");
    auto av = RealSystem3D::all_vars();
    Poly u = Poly::variable("u", av), v = Poly::variable("v", av), w = Poly::variable("w", av);
    std::map<std::string, Poly> sub;
    sub["u"] = -u + w;
    sub["du"] = v - w;
    sub["ddu"] = u + w;
    Poly h = f.substitute(sub).scaled(QC(Rat(1, 2)));
    return standardize_from_h(h);
}

RealSystem3D standardize_from_h(const Poly& h) {
    auto av = RealSystem3D::all_vars();
    Poly hh = h.vars() == av ? h : h.extend_vars(av);
    Poly u = Poly::variable("u", av), v = Poly::variable("v", av), w = Poly::variable("w", av);
    RealSystem3D sys;
    sys.rhs = {-v + hh, u + hh, -w + hh};
    sys.beta = Rat(-1);
    sys.check_invariants();
    return sys;
}

RealSystem3D standard_family() {
    auto av = RealSystem3D::all_vars();
    Poly h(av);
    const char* monos[6] = {"1*u^2", "1*v^2", "1*w^2", "1*u*v", "1*u*w", "1*v*w"};
    for (int i = 0; i < 6; ++i) {
        Poly m = poly_from_string(monos[i], av);
        h += m * Poly::variable(kParamVars[i], av);
    }
    return standardize_from_h(h);
}

ComplexSystem complexify(const RealSystem3D& sys) {
    sys.check_invariants();
    auto cv = ComplexSystem::all_vars();
    Poly x = Poly::variable("x", cv), y = Poly::variable("y", cv), z = Poly::variable("z", cv);
    const QC I = QC::i();
    const QC half(Rat(1, 2));
    // u = (x+y)/2, v = -i(x-y)/2, w = z
    std::map<std::string, Poly> sub;
    sub["u"] = (x + y).scaled(half);
    sub["v"] = (x - y).scaled(-I * half);
    sub["w"] = z;
    for (const auto& p : kParamVars) sub[p] = Poly::variable(p, cv);

    // nonlinear parts of the real system
    auto av = RealSystem3D::all_vars();
    Poly u = Poly::variable("u", av), v = Poly::variable("v", av), w = Poly::variable("w", av);
    Poly P = sys.rhs[0] + v;
    Poly Q = sys.rhs[1] - u;
    Poly R = sys.rhs[2] - w.scaled(QC(sys.beta));

    Poly A = (P.substitute(sub) + Q.substitute(sub).scaled(I));
    // formal conjugate: conjugate coefficients, swap x and y
    std::vector<std::string> swapped = cv;
    std::swap(swapped[0], swapped[1]);
    Poly B = A.conj_coeffs().rename_vars(swapped).extend_vars(cv);
    Poly C = R.substitute(sub);

    ComplexSystem out;
    out.beta = sys.beta;
    out.rhs = {x.scaled(I) + A, y.scaled(-I) + B, z.scaled(QC(sys.beta)) + C};
    out.check_invariants();
    return out;
}

namespace {

using Idx = std::array<int, 3>;

struct Recursion {
    const std::vector<std::string> avars = kParamVars;
    std::array<std::map<Idx, Poly>, 3> tables;
    Rat beta;
    bool mirror;
    std::map<Idx, Poly> v;

    Poly zero() const { return Poly(avars); }

    const Poly* v_at(int j, int k, int l) const {
        static const Poly empty;
        if (j < 0 || k < 0 || l < 0) return nullptr;
        int d = j + k + l;
        if (d < 2) return nullptr;
        auto it = v.find({j, k, l});
        return it == v.end() ? nullptr : &it->second;
    }

    // sum of the nonlinear contributions of X H to the coefficient of
    // x^j y^k z^l
    Poly known(int j, int k, int l) const {
        Poly acc = zero();
        for (int comp = 0; comp < 3; ++comp) {
            for (const auto& [pqr, coeff] : tables[comp]) {
                int aj = j, ak = k, al = l, factor_idx = 0;
                // derivative pulls the index of the differentiated variable
                if (comp == 0) { aj = j - pqr[0] + 1; ak = k - pqr[1]; al = l - pqr[2]; factor_idx = 0; }
                if (comp == 1) { aj = j - pqr[0]; ak = k - pqr[1] + 1; al = l - pqr[2]; factor_idx = 1; }
                if (comp == 2) { aj = j - pqr[0]; ak = k - pqr[1]; al = l - pqr[2] + 1; factor_idx = 2; }
                int fac = factor_idx == 0 ? aj : (factor_idx == 1 ? ak : al);
                if (fac <= 0) continue;
                const Poly* vv = v_at(aj, ak, al);
                if (!vv || vv->is_zero()) continue;
                acc += coeff * vv->scaled(QC(Rat(fac)));
            }
        }
        return acc;
    }
};

}  // namespace

FocusQuantitySet focus_quantities(const ComplexSystem& sys, int kmax) {
    if (kmax < 2) throw std::invalid_argument("focus_quantities requires K_max >= 2");
    sys.check_invariants();

    Recursion rec;
    rec.beta = sys.beta;
    for (int c = 0; c < 3; ++c) rec.tables[c] = sys.coeff_table(c);
    rec.mirror = sys.conjugate_symmetric();

    // degree-2 seed: v_110 = 1, all other degree-2 coefficients 0
    rec.v[{1, 1, 0}] = Poly::constant(QC(1), rec.avars);
    for (Idx i : {Idx{2, 0, 0}, Idx{0, 2, 0}, Idx{0, 0, 2}, Idx{1, 0, 1}, Idx{0, 1, 1}})
        rec.v[i] = rec.zero();

    FocusQuantitySet out;
    out.kmax = kmax;
    out.quantities.resize(kmax + 1);
    out.quantities[1] = {1, rec.zero(), rec.zero()};  // g_110 = 0

    for (int d = 3; d <= 2 * kmax; ++d) {
        const bool last = (d == 2 * kmax);
        for (int j = d; j >= 0; --j) {
            for (int k = d - j; k >= 0; --k) {
                int l = d - j - k;
                if (last && !(j == k && l == 0)) continue;  // only the obstruction is needed
                if (rec.mirror && k > j) continue;          // filled by the mirror below
                Poly kn = rec.known(j, k, l);
                if (j == k && l == 0) {
                    int K = j;
                    out.normalization_vkk0[{K, K, 0}] = QC(0);
                    rec.v[{j, k, l}] = rec.zero();
                    out.quantities[K] = {K, kn, Poly(rec.avars)};
                } else {
                    QC lambda(Rat(rec.beta * l), Rat(j - k));
                    rec.v[{j, k, l}] = kn.scaled(-QC(1) / lambda);
                    if (rec.mirror && j != k) rec.v[{k, j, l}] = rec.v[{j, k, l}].conj_coeffs();
                }
            }
        }
    }

    for (int K = 2; K <= kmax; ++K) {
        Poly& raw = out.quantities[K].raw;
        for (const auto& [m, c] : raw.terms())
            if (c.im != 0)
                throw std::runtime_error("focus quantity g_" + std::to_string(K) +
                                         " has nonreal coefficients");
        out.quantities[K].normalized = integer_primitive(raw);
    }
    out.v_table = std::move(rec.v);
    return out;
}

Poly closed_form_focus_quantity(const ComplexSystem& sys, int K,
                                const std::map<std::array<int, 3>, Poly>& v_table) {
    auto ta = sys.coeff_table(0);
    auto tb = sys.coeff_table(1);
    auto tc = sys.coeff_table(2);
    auto tbl = [](const std::map<Idx, Poly>& t, int p, int q, int r) -> Poly {
        auto it = t.find({p, q, r});
        return it == t.end() ? Poly(std::vector<std::string>(kParamVars)) : it->second;
    };
    auto vat = [&](int j, int k, int l) -> Poly {
        if (j == 1 && k == 1 && l == 0) return Poly::constant(QC(1), std::vector<std::string>(kParamVars));
        auto it = v_table.find({j, k, l});
        return it == v_table.end() ? Poly(std::vector<std::string>(kParamVars)) : it->second;
    };
    Poly g{std::vector<std::string>(kParamVars)};
    for (int s = 2; s <= 2 * K - 1; ++s)
        for (int j = 0; j <= s; ++j) {
            int k = s - j;
            Poly term = tbl(ta, K - j + 1, K - k, 0).scaled(QC(Rat(j))) +
                        tbl(tb, K - j, K - k + 1, 0).scaled(QC(Rat(k)));
            if (!term.is_zero()) g += term * vat(j, k, 0);
        }
    for (int s = 2; s <= 2 * K - 2; ++s)
        for (int j = 0; j <= s; ++j) {
            int k = s - j;
            Poly c = tbl(tc, K - j, K - k, 0);
            if (!c.is_zero()) g += c * vat(j, k, 1);
        }
    return g;
}

const FocusQuantity& FocusQuantitySet::at(int K) const {
    if (K < 1 || K > kmax) throw std::out_of_range("focus quantity index");
    return quantities[static_cast<std::size_t>(K)];
}

std::vector<std::pair<int, Poly>> chart_specialize(const FocusQuantitySet& fq, Chart chart) {
    std::vector<std::pair<int, Poly>> out;
    for (int K = 1; K <= fq.kmax; ++K) {
        const Poly& g = fq.at(K).normalized;
        if (chart == Chart::Symbolic) {
            if (!g.is_zero()) out.push_back({K, g});
            continue;
        }
        QC val = chart == Chart::A6Zero ? QC(0) : QC(1);
        Poly spec = integer_primitive(g.dehomogenize("a6", val));
        if (!spec.is_zero()) out.push_back({K, spec});
    }
    return out;
}

}  // namespace centerfocus
