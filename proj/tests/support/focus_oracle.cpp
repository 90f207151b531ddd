#include "focus_oracle.hpp"

#include "centerfocus/linalg.hpp"

#include <array>
#include <stdexcept>

namespace centerfocus::testsupport {

namespace {

std::string vsym_name(int j, int k, int l) {
    return "v" + std::to_string(j) + "_" + std::to_string(k) + "_" + std::to_string(l);
}

}  // namespace

std::map<int, Poly> oracle_focus_quantities(const ComplexSystem& sys, int kmax) {
    using Idx = std::array<int, 3>;
    // variable list: x,y,z, params, then one symbol per undetermined v
    std::vector<std::string> allv = ComplexSystem::all_vars();
    std::vector<Idx> vidx;
    for (int d = 3; d <= 2 * kmax; ++d)
        for (int j = d; j >= 0; --j)
            for (int k = d - j; k >= 0; --k) vidx.push_back({j, k, d - j - k});
    std::size_t base = allv.size();
    for (auto& [j, k, l] : vidx) allv.push_back(vsym_name(j, k, l));

    // H = x y + sum v_jkl x^j y^k z^l
    Poly H = Poly::variable("x", allv) * Poly::variable("y", allv);
    for (std::size_t s = 0; s < vidx.size(); ++s) {
        auto [j, k, l] = vidx[s];
        std::vector<std::uint16_t> e(allv.size(), 0);
        e[0] = static_cast<std::uint16_t>(j);
        e[1] = static_cast<std::uint16_t>(k);
        e[2] = static_cast<std::uint16_t>(l);
        e[base + s] = 1;
        Mono m{std::move(e)};
        H += Poly::from_terms(allv, {{m, QC(1)}});
    }

    Poly XH{allv};
    for (int c = 0; c < 3; ++c)
        XH += sys.rhs[c].extend_vars(allv) * H.differentiate(static_cast<std::size_t>(c));

    // collect coefficients by (x,y,z) exponents; values over params+vsyms
    auto coeffs = XH.collect({0, 1, 2});
    std::vector<std::string> rest(allv.begin() + 3, allv.end());
    std::vector<std::size_t> vsel;
    for (std::size_t s = 0; s < vidx.size(); ++s) vsel.push_back(base - 3 + s);

    std::map<Idx, Poly> exprs;  // solved v values over `rest`
    auto substitute_solved = [&](const Poly& e) {
        // e is linear in the vsyms; replace each solved one by its value
        auto groups = e.collect(vsel);
        Poly out{rest};
        for (auto& [key, p] : groups) {
            Poly term = p.extend_vars(rest);
            for (std::size_t s = 0; s < key.size(); ++s) {
                for (int rep = 0; rep < key[s]; ++rep) {
                    auto it = exprs.find(vidx[s]);
                    if (it == exprs.end()) {
                        // unsolved symbol stays symbolic
                        term = term * Poly::variable(vsym_name(vidx[s][0], vidx[s][1], vidx[s][2]), rest);
                    } else {
                        term = term * it->second;
                    }
                }
            }
            out += term;
        }
        return out;
    };

    std::map<int, Poly> out;
    for (int d = 3; d <= 2 * kmax; ++d) {
        for (std::size_t s = 0; s < vidx.size(); ++s) {
            auto [j, k, l] = vidx[s];
            if (j + k + l != d) continue;
            std::vector<std::uint16_t> key{static_cast<std::uint16_t>(j), static_cast<std::uint16_t>(k),
                                           static_cast<std::uint16_t>(l)};
            auto it = coeffs.find(key);
            Poly eq = it == coeffs.end() ? Poly{rest} : substitute_solved(it->second);
            if (j == k && l == 0) {
                exprs[{j, k, l}] = Poly{rest};  // normalization v_KK0 = 0
                Poly g = eq.restrict_vars(std::vector<std::string>(kParamVars));
                out[j] = g;
            } else {
                // eq = lambda * v_jkl + rest with constant lambda
                auto groups = eq.collect({vsel[s]});
                Poly lam{rest}, rp{rest};
                for (auto& [gk, p] : groups) {
                    if (gk[0] == 0)
                        rp = p.extend_vars(rest);
                    else if (gk[0] == 1)
                        lam = p.extend_vars(rest);
                    else
                        throw std::runtime_error("oracle: nonlinear in v");
                }
                if (!lam.is_constant() || lam.is_zero())
                    throw std::runtime_error("oracle: pivot is not a nonzero constant");
                QC lv = lam.leading_coeff();
                exprs[{j, k, l}] = rp.scaled(-(QC(1) / lv)).restrict_vars(rest);
            }
        }
    }
    return out;
}

const std::map<std::string, std::vector<std::string>>& center_condition_generators() {
    static const std::map<std::string, std::vector<std::string>> gens = {
        // Theorem 3.2, chart a6 = 0
        {"a", {"1*a1 + -1*a2", "1*a3", "1*a5", "1*a6"}},
        {"b", {"1*a1 + 1*a2", "1*a3", "1*a5", "1*a6"}},
        {"c", {"1*a1", "1*a2", "1*a4", "1*a6"}},
        {"d", {"1*a1 + 1*a2", "2*a1 + 1*a3", "6*a1 + -1*a4", "4*a1 + 1*a5", "1*a6"}},
        {"e", {"1*a1", "1*a2 + 1*a3", "2*a2 + -1*a4", "2*a2 + 1*a5", "1*a6"}},
        // Theorem 3.2, chart a6 = 1
        {"f", {"1*a1", "1*a2", "1*a4", "1*a6 + -1"}},
        {"g", {"2*a1 + -1", "1*a4 + 1*a5 + 1", "2*a2 + 1*a5", "2*a3 + -1*a5 + 1", "1*a6 + -1"}},
        {"h", {"2*a1 + 1", "2*a2 + 1", "1*a4", "1*a5 + 1", "1*a6 + -1"}},
        {"i", {"1*a1 + 1*a2", "4*a2 + -1*a5 + 3", "6*a2 + 1*a4 + 5", "2*a2 + -1*a3 + 1", "1*a6 + -1"}},
        {"j", {"4*a1 + -1", "2*a2 + 1", "4*a3 + 5", "1*a4", "2*a5 + -1", "1*a6 + -1"}},
        // Theorem 1.1 (projective, a6 symbolic)
        {"1", {"1*a1", "1*a2", "1*a4"}},
        {"2", {"1*a1 + -1*a2", "1*a3", "1*a5", "1*a6"}},
        {"3", {"1*a1 + 1*a2", "1*a3", "1*a5", "1*a6"}},
        {"4", {"1*a1 + 1*a2", "2*a2 + -1*a3 + 1*a6", "1*a3 + -1*a4 + -2*a5", "2*a4 + 3*a5 + 1*a6"}},
        {"5", {"2*a1 + -1*a6", "2*a2 + 1*a5", "2*a3 + -1*a5 + 1*a6", "1*a4 + 1*a5 + 1*a6"}},
        {"6", {"1*a1 + -1*a2", "2*a2 + 1*a6", "1*a4", "1*a5 + 1*a6"}},
        {"7", {"2*a1 + 1*a2", "2*a2 + 1*a6", "4*a3 + 5*a6", "1*a4", "2*a5 + -1*a6"}},
    };
    return gens;
}

bool vanishes_on_condition(const Poly& g, const std::string& key) {
    const auto& gens = center_condition_generators().at(key);
    std::vector<Poly> gp;
    for (const auto& s : gens) gp.push_back(poly_from_string(s, kParamVars));
    auto par = parametrize_linear(gp, kParamVars);
    if (!par) throw std::runtime_error("condition is not linear: " + key);
    Poly sub = g.substitute(par->bindings);
    return sub.is_zero();
}

}  // namespace centerfocus::testsupport
