#pragma once

#include "hystera/kernels.hpp"

#include <algorithm>

// Shared per-element formulas. The AVX2 translation unit mirrors these
// operation by operation; any change here must be reflected there to keep
// the backends bitwise-identical.

namespace hystera::kernels::detail {

inline double interp_one(const TableView& t, double x) {
    const double c = std::min(std::max(x, t.x0), t.x1);
    const double s = (c - t.x0) * t.inv_dx;
    std::size_t idx = static_cast<std::size_t>(s);
    if (idx >= t.n_intervals) idx = t.n_intervals - 1;
    const double f = s - static_cast<double>(idx);
    const double y0 = t.y[idx];
    return y0 + f * (t.y[idx + 1] - y0);
}

inline double phi_one(const TableView& rho_i, const TableView& rho_d, double u,
                      double v, double inv_tau) {
    const double ri = interp_one(rho_i, v);
    const double rd = interp_one(rho_d, v);
    const double pos = std::max(u - rd, 0.0);
    const double neg = std::min(u - ri, 0.0);
    return -(inv_tau * pos + inv_tau * neg);
}

struct Acc4 {
    double a0 = 0.0, a1 = 0.0, a2 = 0.0, a3 = 0.0;
    double combine() const { return (a0 + a2) + (a1 + a3); }
};

}  // namespace hystera::kernels::detail
