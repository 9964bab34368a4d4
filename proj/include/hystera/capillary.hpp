#pragma once

#include <stdexcept>

// Closed-form van Genuchten capillary pressure branches and the Mualem
// relative permeability, in dimensionless form. Saturation 1 maps to zero
// pressure; both branches blow up as saturation approaches 0 and their
// slopes blow up as saturation approaches 1.

namespace hystera {

enum class Branch { imbibition, drainage };

/// One van Genuchten branch: p(S) = alpha*(S^(-1/m) - 1)^(1/n), m = 1 - 1/n.
struct VanGenuchtenCurve {
    double alpha = 1.0;
    double n = 2.0;
    double m = 0.5;

    VanGenuchtenCurve() = default;
    VanGenuchtenCurve(double alpha_, double n_);

    double pressure(double s) const;        // s in (0, 1]
    double pressure_deriv(double s) const;  // dp/dS, -inf at s = 1
    double saturation(double p) const;      // inverse, p >= 0
    // -1/p'(S) evaluated at the saturation matching pressure p; log-safe for
    // very large p. Returns 0 at p = 0.
    double inv_abs_slope_at_pressure(double p) const;
};

struct CapillaryCurvePair {
    VanGenuchtenCurve imb;
    VanGenuchtenCurve dra;

    CapillaryCurvePair(VanGenuchtenCurve i, VanGenuchtenCurve d);

    const VanGenuchtenCurve& branch(Branch b) const {
        return b == Branch::imbibition ? imb : dra;
    }
    double eval(Branch b, double s) const { return branch(b).pressure(s); }
    double inverse(Branch b, double p) const { return branch(b).saturation(p); }
    double deriv(Branch b, double s) const { return branch(b).pressure_deriv(s); }
};

/// Mualem curve with optional floor offset k0 and low-saturation cut mu:
/// k_mu(S) = k(mu) for S < mu, where k(S) = mualem(clamp(S)) + k0.
struct PermeabilityCurve {
    double m = 0.5;
    double k0 = 0.0;
    double mu = 0.0;

    PermeabilityCurve() = default;
    PermeabilityCurve(double m_, double k0_, double mu_);

    double base(double s) const;  // clamped Mualem + k0, no mu cut
    double eval(double s) const { return base(s < mu ? mu : s); }
};

}  // namespace hystera
