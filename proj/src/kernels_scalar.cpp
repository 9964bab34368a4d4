#include "kernels_detail.hpp"

namespace hystera::kernels {

using detail::Acc4;
using detail::interp_one;
using detail::phi_one;

namespace scalar {

void table_eval(const TableView& t, std::span<const double> x, std::span<double> out) {
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = interp_one(t, x[i]);
}

void phi_tau_eval(const TableView& rho_i, const TableView& rho_d,
                  std::span<const double> u, std::span<const double> v,
                  double inv_tau, std::span<double> out) {
    for (std::size_t i = 0; i < u.size(); ++i)
        out[i] = phi_one(rho_i, rho_d, u[i], v[i], inv_tau);
}

void band_mismatch_sq(const TableView& rho_i, const TableView& rho_d,
                      std::span<const double> w, std::span<const double> u,
                      std::span<const double> v, double& sum_d, double& sum_i) {
    const std::size_t n = u.size();
    const std::size_t n4 = n - n % 4;
    Acc4 ad, ai;
    for (std::size_t i = 0; i < n4; i += 4) {
        double td[4], ti[4];
        for (std::size_t j = 0; j < 4; ++j) {
            const double rd = interp_one(rho_d, v[i + j]);
            const double ri = interp_one(rho_i, v[i + j]);
            const double pd = std::max(u[i + j] - rd, 0.0);
            const double pi = std::max(ri - u[i + j], 0.0);
            td[j] = w[i + j] * (pd * pd);
            ti[j] = w[i + j] * (pi * pi);
        }
        ad.a0 += td[0]; ad.a1 += td[1]; ad.a2 += td[2]; ad.a3 += td[3];
        ai.a0 += ti[0]; ai.a1 += ti[1]; ai.a2 += ti[2]; ai.a3 += ti[3];
    }
    double sd = ad.combine();
    double si = ai.combine();
    for (std::size_t i = n4; i < n; ++i) {
        const double rd = interp_one(rho_d, v[i]);
        const double ri = interp_one(rho_i, v[i]);
        const double pd = std::max(u[i] - rd, 0.0);
        const double pi = std::max(ri - u[i], 0.0);
        sd += w[i] * (pd * pd);
        si += w[i] * (pi * pi);
    }
    sum_d = sd;
    sum_i = si;
}

double weighted_dot(std::span<const double> w, std::span<const double> a,
                    std::span<const double> b) {
    const std::size_t n = w.size();
    const std::size_t n4 = n - n % 4;
    Acc4 acc;
    for (std::size_t i = 0; i < n4; i += 4) {
        acc.a0 += w[i] * (a[i] * b[i]);
        acc.a1 += w[i + 1] * (a[i + 1] * b[i + 1]);
        acc.a2 += w[i + 2] * (a[i + 2] * b[i + 2]);
        acc.a3 += w[i + 3] * (a[i + 3] * b[i + 3]);
    }
    double s = acc.combine();
    for (std::size_t i = n4; i < n; ++i) s += w[i] * (a[i] * b[i]);
    return s;
}

double weighted_sq_diff(std::span<const double> w, std::span<const double> a,
                        std::span<const double> b) {
    const std::size_t n = w.size();
    const std::size_t n4 = n - n % 4;
    Acc4 acc;
    for (std::size_t i = 0; i < n4; i += 4) {
        const double d0 = a[i] - b[i];
        const double d1 = a[i + 1] - b[i + 1];
        const double d2 = a[i + 2] - b[i + 2];
        const double d3 = a[i + 3] - b[i + 3];
        acc.a0 += w[i] * (d0 * d0);
        acc.a1 += w[i + 1] * (d1 * d1);
        acc.a2 += w[i + 2] * (d2 * d2);
        acc.a3 += w[i + 3] * (d3 * d3);
    }
    double s = acc.combine();
    for (std::size_t i = n4; i < n; ++i) {
        const double d = a[i] - b[i];
        s += w[i] * (d * d);
    }
    return s;
}

void scaled_add(std::span<double> out, std::span<const double> a, double alpha,
                std::span<const double> b) {
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + alpha * b[i];
}

}  // namespace scalar

double table_eval_one(const TableView& t, double x) { return interp_one(t, x); }

double phi_tau_one(const TableView& rho_i, const TableView& rho_d, double u,
                   double v, double inv_tau) {
    return phi_one(rho_i, rho_d, u, v, inv_tau);
}

}  // namespace hystera::kernels
