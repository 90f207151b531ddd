#pragma once

#include "centerfocus/poly.hpp"

#include <vector>

namespace centerfocus {

/// Evaluation-oriented form of a polynomial: flat term array plus power
/// tables shared across a system. Coefficients are fixed at compile time
/// from the exact polynomial at the requested precision.
template <class CT>
struct CompiledPoly {
    std::vector<CT> coeffs;
    std::vector<std::uint8_t> exps;  // nterms x nvars, flattened
    std::size_t nvars = 0;

    static CompiledPoly compile(const Poly& p, mpfr_prec_t prec);
    CT eval(const std::vector<std::vector<CT>>& powers, mpfr_prec_t prec) const;
};

template <class CT>
class CompiledSystem {
public:
    static CompiledSystem compile(const std::vector<Poly>& eqs,
                                  const std::vector<std::string>& vars, mpfr_prec_t prec);

    std::size_t neqs() const { return polys_.size(); }
    std::size_t nvars() const { return nvars_; }
    mpfr_prec_t prec() const { return prec_; }

    /// power tables for a point, sized for this system's max exponents
    void fill_powers(const std::vector<CT>& x, std::vector<std::vector<CT>>& pw) const;

    void eval(const std::vector<std::vector<CT>>& pw, std::vector<CT>& out) const;
    void eval_jacobian(const std::vector<std::vector<CT>>& pw,
                       std::vector<std::vector<CT>>& jac) const;

    const std::vector<CompiledPoly<CT>>& polys() const { return polys_; }

private:
    std::vector<CompiledPoly<CT>> polys_;
    std::vector<std::vector<CompiledPoly<CT>>> jac_;  // neqs x nvars
    std::vector<std::uint8_t> maxexp_;
    std::size_t nvars_ = 0;
    mpfr_prec_t prec_ = 53;
};

extern template struct CompiledPoly<std::complex<double>>;
extern template struct CompiledPoly<MpComplex>;
extern template class CompiledSystem<std::complex<double>>;
extern template class CompiledSystem<MpComplex>;

}  // namespace centerfocus
