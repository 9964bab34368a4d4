#include "hystera/capillary.hpp"

#include <cmath>
#include <limits>

namespace hystera {

VanGenuchtenCurve::VanGenuchtenCurve(double alpha_, double n_)
    : alpha(alpha_), n(n_), m(1.0 - 1.0 / n_) {
    if (!(alpha > 0.0)) throw std::invalid_argument("van Genuchten: alpha must be > 0");
    if (!(n > 1.0)) throw std::invalid_argument("van Genuchten: n must be > 1");
}

double VanGenuchtenCurve::pressure(double s) const {
    if (!(s > 0.0)) throw std::domain_error("capillary pressure undefined for S <= 0");
    if (s > 1.0) throw std::domain_error("capillary pressure undefined for S > 1");
    return alpha * std::pow(std::pow(s, -1.0 / m) - 1.0, 1.0 / n);
}

double VanGenuchtenCurve::pressure_deriv(double s) const {
    if (!(s > 0.0) || s > 1.0)
        throw std::domain_error("capillary slope undefined outside (0, 1]");
    const double t = std::pow(s, -1.0 / m);
    if (t == 1.0) return -std::numeric_limits<double>::infinity();
    return -(alpha / (n * m)) * std::pow(t - 1.0, 1.0 / n - 1.0) *
           std::pow(s, -1.0 / m - 1.0);
}

double VanGenuchtenCurve::saturation(double p) const {
    if (p < 0.0) throw std::domain_error("capillary inverse undefined for p < 0");
    return std::pow(1.0 + std::pow(p / alpha, n), -m);
}

double VanGenuchtenCurve::inv_abs_slope_at_pressure(double p) const {
    if (p < 0.0) throw std::domain_error("capillary inverse undefined for p < 0");
    if (p == 0.0) return 0.0;
    // -1/p'(S(p)) = (n m / alpha) * (p/alpha)^(n-1) * (1 + (p/alpha)^n)^(-(1+m))
    const double lx = std::log(p / alpha);
    const double a = n * lx;
    const double log1p_xn = a > 36.0 ? a : std::log1p(std::exp(a));
    return std::exp(std::log(n * m / alpha) + (n - 1.0) * lx - (1.0 + m) * log1p_xn);
}

CapillaryCurvePair::CapillaryCurvePair(VanGenuchtenCurve i, VanGenuchtenCurve d)
    : imb(i), dra(d) {
    // Drainage must sit above imbibition on (0,1); with matched n this is
    // alpha_d > alpha_i, otherwise probe a few interior points.
    if (imb.n == dra.n) {
        if (!(dra.alpha > imb.alpha))
            throw std::invalid_argument("capillary pair: need alpha_d > alpha_i");
    } else {
        for (double s : {0.05, 0.25, 0.5, 0.75, 0.95}) {
            if (!(dra.pressure(s) > imb.pressure(s)))
                throw std::invalid_argument("capillary pair: drainage curve not above imbibition");
        }
    }
}

PermeabilityCurve::PermeabilityCurve(double m_, double k0_, double mu_)
    : m(m_), k0(k0_), mu(mu_) {
    if (!(m > 0.0 && m < 1.0)) throw std::invalid_argument("permeability: m must be in (0,1)");
    if (k0 < 0.0) throw std::invalid_argument("permeability: k0 must be >= 0");
    if (mu < 0.0) throw std::invalid_argument("permeability: mu must be >= 0");
}

double PermeabilityCurve::base(double s) const {
    const double c = s < 0.0 ? 0.0 : (s > 1.0 ? 1.0 : s);
    const double inner = 1.0 - std::pow(1.0 - std::pow(c, 1.0 / m), m);
    return std::sqrt(c) * inner * inner + k0;
}

}  // namespace hystera
