#pragma once

#include "hystera/capillary.hpp"

#include <functional>
#include <vector>

namespace hystera {

/// Monotone play map u = b(p) with b(0) = 0, plus its delta-regularisation
/// b_delta with slope floored at delta.
///
/// The default slope is built from a capillary pair as
///   b'(p) = (1/2) * min_j( -1 / pc_j'(pc_j^-1(p)) ),  p > 0,
/// and b'(p) = 0 for p <= 0, which satisfies the scanning-consistency bound
/// b'(pc_j(S)) * |pc_j'(S)| <= 1/2 by construction. b(p) saturates at
/// u_max = b(inf), evaluated by quadrature up to a cap pressure chosen so the
/// dropped tail is below 1e-10.
///
/// b_delta is realised as the integral of max(b', delta) from 0, so
/// b_delta(0) = 0 for every delta; on the cut interval (p_cut_lo, p_cut_hi)
/// it matches b up to the constant surplus delta*p_cut_lo - b(p_cut_lo),
/// which is O(delta^2) for the default slope.
class PlayMap {
  public:
    using SlopeFn = std::function<double(double)>;

    // decay_exponent: asymptotic power of the slope tail, b'(p) ~ p^-q; used
    // to bound the truncated part of b(inf).
    PlayMap(SlopeFn slope, double scale_pressure, double decay_exponent);

    static PlayMap from_capillary_pair(const CapillaryCurvePair& pair);

    double slope(double p) const { return p <= 0.0 ? 0.0 : slope_(p); }
    double slope_reg(double p, double delta) const;  // max(slope, delta)

    /// b_delta(p) = integral of max(b', delta) over [0, p]; delta = 0 gives b.
    double eval(double p, double delta = 0.0) const;
    /// Inverse of eval. With delta = 0 the map saturates: u must lie in
    /// [0, saturation_limit()), otherwise a domain error is thrown.
    double inverse(double u, double delta = 0.0) const;

    double u_max() const { return u_max_; }               // b(inf)
    double saturation_limit() const { return u_sat_; }    // b(p_cap)
    double slope_max() const { return slope_max_; }
    double peak_pressure() const { return p_peak_; }
    double cap_pressure() const { return p_cap_; }

    struct CutPoints {
        double lo, hi;
    };
    /// Pressures where the slope crosses delta (requires 0 < delta < slope_max).
    CutPoints cut_points(double delta) const;
    /// Constant offset b_delta - b on the cut interval.
    double reg_surplus(double delta) const;

    // Fast tabulated composites on u in [0, u_max), graded as functions of
    // sqrt(u) to resolve the square-root behaviour of b near p = 0.
    double slope_at_u(double u) const;     // b'(b^-1(u))
    double pressure_at_u(double u) const;  // b^-1(u), table accuracy
    /// b_delta'(b_delta^-1(u)) — the slope entering the diffusion coefficient.
    double reg_slope_at_u(double u, double delta) const;

  private:
    double integrate_slope(double a, double b, double eps) const;
    double eval_raw(double p) const;  // b(p) for p >= 0 via knot cache
    double invert_raw(double u) const;

    SlopeFn slope_;
    double decay_exponent_;
    double p_peak_ = 0.0;
    double slope_max_ = 0.0;
    double p_cap_ = 0.0;
    double u_max_ = 0.0;
    double u_sat_ = 0.0;

    std::vector<double> knot_p_;    // ascending, knot_p_[0] = 0
    std::vector<double> knot_b_;    // b at knots
    std::vector<double> comp_w_;    // sqrt(u) grid
    std::vector<double> comp_c_;    // slope at matching u
    std::vector<double> comp_pr_;   // pressure at matching u
};

}  // namespace hystera
