#include "hystera/constitutive_set.hpp"

#include <algorithm>
#include <stdexcept>

namespace hystera {

namespace {
CapillaryCurvePair make_pair_checked(const ConstitutiveParams& p) {
    return CapillaryCurvePair(VanGenuchtenCurve(p.alpha_i, p.n_i),
                              VanGenuchtenCurve(p.alpha_d, p.n_d));
}
}  // namespace

ConstitutiveSet::ConstitutiveSet(const ConstitutiveParams& p)
    : params_(p),
      pair_(make_pair_checked(p)),
      perm_(1.0 - 1.0 / p.n_i, p.k0, p.mu) {
    if (!(params_.tau > 0.0))
        throw std::invalid_argument("constitutive: tau must be > 0");
    if (params_.delta < 0.0 || params_.mu < 0.0)
        throw std::invalid_argument("constitutive: delta and mu must be >= 0");
    play_ = std::make_shared<const PlayMap>(PlayMap::from_capillary_pair(pair_));
    rho_ = std::make_shared<const RhoCurves>(RhoCurves::build(pair_, *play_, params_.n_rho));
    reg_surplus_ = play_->reg_surplus(params_.delta);
}

ConstitutiveSet ConstitutiveSet::with_tau(double tau) const {
    if (!(tau > 0.0)) throw std::invalid_argument("constitutive: tau must be > 0");
    ConstitutiveSet c(*this);
    c.params_.tau = tau;
    return c;
}

double ConstitutiveSet::diffusivity(double u, double v) const {
    const double slope =
        std::max(play_->slope_at_u(u - reg_surplus_), params_.delta);
    return perm_.eval(v - u) / slope;
}

}  // namespace hystera
