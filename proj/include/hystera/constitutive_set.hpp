#pragma once

#include "hystera/capillary.hpp"
#include "hystera/play_map.hpp"
#include "hystera/rho_curves.hpp"

#include <memory>

namespace hystera {

struct ConstitutiveParams {
    double alpha_i = 1.0;
    double alpha_d = 2.0;
    double n_i = 2.0;
    double n_d = 2.0;
    double k0 = 0.0;
    double mu = 1e-3;
    double delta = 1e-6;
    double tau = 0.1;
    std::size_t n_rho = 4096;
};

/// Immutable bundle of all pointwise closure relations for one run: the
/// capillary pair, relative permeability, play map and rho tables, plus the
/// regularisation parameters. Construction is single-threaded; evaluation is
/// pure and safe for concurrent reads.
class ConstitutiveSet {
  public:
    explicit ConstitutiveSet(const ConstitutiveParams& p);

    const ConstitutiveParams& params() const { return params_; }
    const CapillaryCurvePair& capillary() const { return pair_; }
    const PermeabilityCurve& permeability() const { return perm_; }
    const PlayMap& play() const { return *play_; }
    const RhoCurves& rho() const { return *rho_; }

    double tau() const { return params_.tau; }
    double delta() const { return params_.delta; }
    double mu() const { return params_.mu; }

    /// Cheap copy sharing the tabulated curves, with a different tau.
    ConstitutiveSet with_tau(double tau) const;

    /// Diffusion coefficient k_mu(v - u) / b_delta'(b_delta^-1(u)).
    double diffusivity(double u, double v) const;
    /// Advective coefficient k_mu(v - u) multiplying gravity.
    double flux_coeff(double u, double v) const { return perm_.eval(v - u); }

    double phi(double u, double v) const { return phi_tau(*rho_, u, v, params_.tau); }

  private:
    ConstitutiveParams params_;
    CapillaryCurvePair pair_;
    PermeabilityCurve perm_;
    std::shared_ptr<const PlayMap> play_;
    std::shared_ptr<const RhoCurves> rho_;
    double reg_surplus_ = 0.0;
};

}  // namespace hystera
