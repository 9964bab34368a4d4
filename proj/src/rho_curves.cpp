#include "hystera/rho_curves.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hystera {

RhoCurves RhoCurves::build(const CapillaryCurvePair& pair, const PlayMap& play,
                           std::size_t n_intervals) {
    if (n_intervals < 16)
        throw std::invalid_argument("rho tables: need at least 16 intervals");
    const std::size_t n = n_intervals;

    const double u_min = play.eval(pair.eval(Branch::imbibition, 1.0));
    const double u_max = play.u_max();
    const double v_min = u_max;        // v at S = 0
    const double v_max = 1.0 + u_min;  // v at S = 1
    if (!(v_max > v_min))
        throw std::runtime_error("rho tables: v_max <= v_min, slope bound violated");

    // v_j(u) on the uniform u grid, endpoints pinned analytically.
    std::vector<double> u_tab(n + 1), vi_tab(n + 1), vd_tab(n + 1);
    for (std::size_t k = 0; k <= n; ++k)
        u_tab[k] = u_min + (u_max - u_min) * static_cast<double>(k) / n;
    vi_tab[0] = vd_tab[0] = v_max;
    vi_tab[n] = vd_tab[n] = v_min;
    for (std::size_t k = 1; k < n; ++k) {
        const double p = play.inverse(u_tab[k]);
        vi_tab[k] = pair.inverse(Branch::imbibition, p) + u_tab[k];
        vd_tab[k] = pair.inverse(Branch::drainage, p) + u_tab[k];
    }
    for (std::size_t k = 0; k < n; ++k) {
        if (!(vi_tab[k + 1] < vi_tab[k]) || !(vd_tab[k + 1] < vd_tab[k]))
            throw std::runtime_error(
                "rho tables: transformed curve not strictly decreasing "
                "(scanning-consistency bound violated numerically)");
    }

    // Monotone inversion onto the uniform v grid.
    RhoCurves rc;
    rc.v_min_ = v_min;
    rc.v_max_ = v_max;
    rc.u_min_ = u_min;
    rc.u_max_ = u_max;
    rc.n_ = n;
    rc.rho_i_.resize(n + 1);
    rc.rho_d_.resize(n + 1);
    auto invert = [&](const std::vector<double>& v_tab, std::vector<double>& out) {
        out[0] = u_max;
        out[n] = u_min;
        std::size_t k = 0;  // v_tab descending: v_tab[k+1] <= v_q <= v_tab[k]
        for (std::size_t q = 1; q < n; ++q) {
            const double vq = v_min + (v_max - v_min) * static_cast<double>(n - q) / n;
            // out index is ascending in v, so fill from the top down.
            while (k + 1 < n && v_tab[k + 1] > vq) ++k;
            const double t = (vq - v_tab[k]) / (v_tab[k + 1] - v_tab[k]);
            out[n - q] = u_tab[k] + t * (u_tab[k + 1] - u_tab[k]);
        }
    };
    invert(vi_tab, rc.rho_i_);
    invert(vd_tab, rc.rho_d_);
    rc.finalize();
    return rc;
}

RhoCurves::RhoCurves(double v_min, double v_max, std::vector<double> rho_i,
                     std::vector<double> rho_d)
    : v_min_(v_min), v_max_(v_max), rho_i_(std::move(rho_i)), rho_d_(std::move(rho_d)) {
    if (rho_i_.size() != rho_d_.size() || rho_i_.size() < 2)
        throw std::invalid_argument("rho tables: branch tables must match and have >= 2 knots");
    if (!(v_max_ > v_min_)) throw std::invalid_argument("rho tables: v_max <= v_min");
    if (rho_i_.front() != rho_d_.front() || rho_i_.back() != rho_d_.back())
        throw std::invalid_argument("rho tables: branches must coincide at the endpoints");
    n_ = rho_i_.size() - 1;
    u_max_ = rho_i_.front();
    u_min_ = rho_i_.back();
    finalize();
}

void RhoCurves::finalize() {
    const double h = (v_max_ - v_min_) / static_cast<double>(n_);
    double m = 0.0;
    for (std::size_t q = 0; q < n_; ++q) {
        if (!(rho_i_[q + 1] < rho_i_[q]) || !(rho_d_[q + 1] < rho_d_[q]))
            throw std::runtime_error("rho tables: inverted table not strictly decreasing");
        m = std::max(m, (rho_i_[q] - rho_i_[q + 1]) / h);
        m = std::max(m, (rho_d_[q] - rho_d_[q + 1]) / h);
    }
    for (std::size_t q = 1; q < n_; ++q) {
        if (!(rho_d_[q] > rho_i_[q]))
            throw std::runtime_error("rho tables: drainage branch not above imbibition");
    }
    m_rho_ = m * (1.0 + 1e-12);

    prefix_i_.assign(n_ + 1, 0.0);
    prefix_d_.assign(n_ + 1, 0.0);
    for (std::size_t q = 0; q < n_; ++q) {
        prefix_i_[q + 1] = prefix_i_[q] + 0.5 * h * (rho_i_[q] + rho_i_[q + 1]);
        prefix_d_[q + 1] = prefix_d_[q] + 0.5 * h * (rho_d_[q] + rho_d_[q + 1]);
    }
}

kernels::TableView RhoCurves::view(Branch b) const {
    kernels::TableView t;
    t.y = (b == Branch::imbibition ? rho_i_ : rho_d_).data();
    t.n_intervals = n_;
    t.x0 = v_min_;
    t.x1 = v_max_;
    t.inv_dx = static_cast<double>(n_) / (v_max_ - v_min_);
    return t;
}

double RhoCurves::integral(Branch b, double a, double c) const {
    const std::vector<double>& rho = b == Branch::imbibition ? rho_i_ : rho_d_;
    const std::vector<double>& pre = b == Branch::imbibition ? prefix_i_ : prefix_d_;
    const double h = (v_max_ - v_min_) / static_cast<double>(n_);
    auto anti = [&](double v) {
        if (v <= v_min_) return u_max_ * (v - v_min_);
        if (v >= v_max_) return pre.back() + u_min_ * (v - v_max_);
        const double s = (v - v_min_) / h;
        std::size_t q = static_cast<std::size_t>(s);
        if (q >= n_) q = n_ - 1;
        const double t = v - (v_min_ + h * static_cast<double>(q));
        const double slope = (rho[q + 1] - rho[q]) / h;
        return pre[q] + rho[q] * t + 0.5 * slope * t * t;
    };
    return anti(c) - anti(a);
}

double phi_tau_branch(const RhoCurves& rho, double u, double v, double tau) {
    const double ri = rho.eval(Branch::imbibition, v);
    const double rd = rho.eval(Branch::drainage, v);
    if (u > rd) return (rd - u) / tau;
    if (u < ri) return (ri - u) / tau;
    return 0.0;
}

void phi_tau_batch(const RhoCurves& rho, std::span<const double> u,
                   std::span<const double> v, double tau, std::span<double> out) {
    kernels::phi_tau_eval(rho.view(Branch::imbibition), rho.view(Branch::drainage),
                          u, v, 1.0 / tau, out);
}

BoxBounds box_bounds(double u0_min, double u0_max, double v_l, double v_r,
                     const RhoCurves& rho) {
    if (!(rho.v_min() < v_l && v_l <= v_r && v_r < rho.v_max()))
        throw std::invalid_argument("box bounds: need v_min < v_l <= v_r < v_max");
    const double u_r = rho.eval(Branch::drainage, v_l);
    const double u_l = rho.eval(Branch::imbibition, v_r);
    if (!(u0_min <= u0_max) || u0_min < u_l - 1e-12 || u0_max > u_r + 1e-12)
        throw std::invalid_argument(
            "box bounds: initial u range escapes [rho_i(v_r), rho_d(v_l)]");
    BoxBounds b{u_l, u_r, v_l, v_r, v_l - u_r, v_r - u_l};
    if (phi_tau(rho, b.u_r, b.v_l, 1.0) != 0.0 || phi_tau(rho, b.u_l, b.v_r, 1.0) != 0.0)
        throw std::runtime_error("box bounds: rate operator nonzero at a box corner");
    return b;
}

}  // namespace hystera
