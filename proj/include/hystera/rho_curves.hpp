#pragma once

#include "hystera/capillary.hpp"
#include "hystera/kernels.hpp"
#include "hystera/play_map.hpp"

#include <span>
#include <vector>

namespace hystera {

/// The imbibition/drainage curves re-expressed in the (v, u) plane,
/// v = S + b(p), tabulated piecewise-linearly on a uniform v grid over
/// [v_min, v_max] and extended flat outside. Both branches are monotone
/// decreasing, coincide at the endpoints (v_min -> u_max, v_max -> u_min),
/// and the drainage branch lies strictly above the imbibition branch in
/// between.
class RhoCurves {
  public:
    /// Tabulate v_j(u) = pc_j^-1(b^-1(u)) + u on a uniform u grid of size
    /// n_intervals and invert monotonically onto the uniform v grid.
    /// Throws if the transformed curves are not strictly decreasing, which
    /// signals a violated scanning-consistency bound.
    static RhoCurves build(const CapillaryCurvePair& pair, const PlayMap& play,
                           std::size_t n_intervals);

    /// Direct construction from already tabulated branch values (descending,
    /// equal endpoints). Used by tests and synthetic scenarios.
    RhoCurves(double v_min, double v_max, std::vector<double> rho_i,
              std::vector<double> rho_d);

    double eval(Branch b, double v) const {
        return kernels::table_eval_one(view(b), v);
    }
    void eval_batch(Branch b, std::span<const double> v, std::span<double> out) const {
        kernels::table_eval(view(b), v, out);
    }

    /// Integral of the branch over [a, b] including the flat extensions.
    double integral(Branch b, double a, double c) const;

    kernels::TableView view(Branch b) const;

    double v_min() const { return v_min_; }
    double v_max() const { return v_max_; }
    double u_min() const { return u_min_; }
    double u_max() const { return u_max_; }
    double slope_bound() const { return m_rho_; }
    std::size_t intervals() const { return n_; }

  private:
    RhoCurves() = default;
    void finalize();

    double v_min_ = 0.0, v_max_ = 1.0;
    double u_min_ = 0.0, u_max_ = 1.0;
    double m_rho_ = 0.0;
    std::size_t n_ = 0;
    std::vector<double> rho_i_, rho_d_;
    std::vector<double> prefix_i_, prefix_d_;  // running integrals at knots
};

/// Rate operator of the regularised scanning relation, positive-part form:
/// phi = -(1/tau)[u - rho_d(v)]_+ - (1/tau)[u - rho_i(v)]_-.
inline double phi_tau(const RhoCurves& rho, double u, double v, double tau) {
    return kernels::phi_tau_one(rho.view(Branch::imbibition),
                                rho.view(Branch::drainage), u, v, 1.0 / tau);
}

/// Reference three-branch form; equals phi_tau exactly.
double phi_tau_branch(const RhoCurves& rho, double u, double v, double tau);

void phi_tau_batch(const RhoCurves& rho, std::span<const double> u,
                   std::span<const double> v, double tau, std::span<double> out);

/// Invariant rectangle of the coupled system together with the induced
/// saturation window.
struct BoxBounds {
    double u_l, u_r;
    double v_l, v_r;
    double s_l, s_r;  // s_l = v_l - u_r > 0, s_r = v_r - u_l < 1
};

/// Corners u_r = rho_d(v_l), u_l = rho_i(v_r). Requires the initial v range
/// strictly inside (v_min, v_max) and the initial u range inside
/// [u_l, u_r]; the rate operator vanishes at both corners by construction.
BoxBounds box_bounds(double u0_min, double u0_max, double v_l, double v_r,
                     const RhoCurves& rho);

}  // namespace hystera
