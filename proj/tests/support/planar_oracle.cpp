#include "planar_oracle.hpp"

#include <array>
#include <map>

namespace centerfocus::testsupport {

std::vector<Poly> planar_focus_quantities(const Poly& P, const Poly& Q,
                                          const std::vector<std::string>& state, int kmax) {
    // complexify: x = u + iv, y the formal conjugate
    const auto& vars = P.vars();
    std::vector<std::string> params(vars.begin() + 2, vars.end());
    std::vector<std::string> cv{"cx", "cy"};
    cv.insert(cv.end(), params.begin(), params.end());

    const QC I = QC::i();
    const QC half(Rat(1, 2));
    Poly x = Poly::variable("cx", cv), y = Poly::variable("cy", cv);
    std::map<std::string, Poly> sub;
    sub[state[0]] = (x + y).scaled(half);
    sub[state[1]] = (x - y).scaled(-I * half);
    for (const auto& p : params) sub[p] = Poly::variable(p, cv);

    Poly QQ = Q.vars() == vars ? Q : Q.extend_vars(vars);
    Poly A = P.substitute(sub) + QQ.substitute(sub).scaled(I);
    std::vector<std::string> swapped = cv;
    std::swap(swapped[0], swapped[1]);
    Poly B = A.conj_coeffs().rename_vars(swapped).extend_vars(cv);

    // coefficient tables by (x,y) exponents
    auto ta = A.collect({0, 1});
    auto tb = B.collect({0, 1});

    std::map<std::array<int, 2>, Poly> v;
    Poly zero{std::vector<std::string>(params)};
    v[{1, 1}] = Poly::constant(QC(1), params);
    v[{2, 0}] = zero;
    v[{0, 2}] = zero;

    auto vat = [&](int j, int k) -> const Poly* {
        if (j < 0 || k < 0 || j + k < 2) return nullptr;
        auto it = v.find({j, k});
        return it == v.end() ? nullptr : &it->second;
    };

    std::vector<Poly> out(static_cast<std::size_t>(kmax) + 1, zero);
    for (int d = 3; d <= 2 * kmax; ++d) {
        for (int j = d; j >= 0; --j) {
            int k = d - j;
            Poly known = zero;
            for (const auto& [pq, coef] : ta) {
                if (pq[0] + pq[1] < 2) continue;
                int aj = j - pq[0] + 1, ak = k - pq[1];
                if (aj <= 0) continue;
                const Poly* vv = vat(aj, ak);
                if (vv && !vv->is_zero()) known += coef * vv->scaled(QC(Rat(aj)));
            }
            for (const auto& [pq, coef] : tb) {
                if (pq[0] + pq[1] < 2) continue;
                int aj = j - pq[0], ak = k - pq[1] + 1;
                if (ak <= 0) continue;
                const Poly* vv = vat(aj, ak);
                if (vv && !vv->is_zero()) known += coef * vv->scaled(QC(Rat(ak)));
            }
            if (j == k) {
                out[static_cast<std::size_t>(j)] = known;
                v[{j, k}] = zero;
            } else {
                QC lambda(Rat(0), Rat(j - k));
                v[{j, k}] = known.scaled(-(QC(1) / lambda));
            }
        }
    }
    return out;
}

}  // namespace centerfocus::testsupport
