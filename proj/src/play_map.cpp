#include "hystera/play_map.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hystera {

namespace {

constexpr double kTailBudget = 1e-10;   // allowed truncation of b(inf)
constexpr double kQuadTol = 1e-13;      // per-panel quadrature tolerance

double simpson(double fa, double fm, double fb, double h) {
    return h / 6.0 * (fa + 4.0 * fm + fb);
}

template <class F>
double adaptive_simpson(const F& f, double a, double b, double fa, double fm,
                        double fb, double whole, double eps, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = simpson(fa, flm, fm, m - a);
    const double right = simpson(fm, frm, fb, b - m);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * eps)
        return left + right + delta / 15.0;
    return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * eps, depth - 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * eps, depth - 1);
}

template <class F>
double integrate(const F& f, double a, double b, double eps) {
    if (a == b) return 0.0;
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const double whole = simpson(fa, fm, fb, b - a);
    const double r = adaptive_simpson(f, a, b, fa, fm, fb, whole, eps, 48);
    if (!std::isfinite(r))
        throw std::runtime_error("play map: slope quadrature did not converge");
    return r;
}

}  // namespace

PlayMap::PlayMap(SlopeFn slope, double scale_pressure, double decay_exponent)
    : slope_(std::move(slope)), decay_exponent_(decay_exponent) {
    if (!(scale_pressure > 0.0))
        throw std::invalid_argument("play map: scale pressure must be > 0");
    if (!(decay_exponent_ > 1.0))
        throw std::invalid_argument("play map: slope tail must decay faster than 1/p");

    // Locate the slope peak: coarse log-spaced scan plus golden refinement.
    const double lo = 1e-6 * scale_pressure, hi = 1e4 * scale_pressure;
    double best_p = lo, best = slope_(lo);
    for (int i = 0; i <= 800; ++i) {
        const double p = lo * std::pow(hi / lo, i / 800.0);
        const double s = slope_(p);
        if (s > best) { best = s; best_p = p; }
    }
    double a = best_p / std::pow(hi / lo, 1.0 / 800.0);
    double b = best_p * std::pow(hi / lo, 1.0 / 800.0);
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = slope_(x1), f2 = slope_(x2);
    for (int i = 0; i < 120; ++i) {
        if (f1 < f2) { a = x1; x1 = x2; f1 = f2; x2 = a + gr * (b - a); f2 = slope_(x2); }
        else { b = x2; x2 = x1; f2 = f1; x1 = b - gr * (b - a); f1 = slope_(x1); }
    }
    p_peak_ = 0.5 * (a + b);
    slope_max_ = slope_(p_peak_);
    if (!(slope_max_ > 0.0)) throw std::invalid_argument("play map: slope is not positive");

    // Cap pressure: double until the power-law tail estimate fits the budget.
    double cap = std::max(2.0 * p_peak_, scale_pressure);
    for (int i = 0; i < 600; ++i) {
        const double tail = slope_(cap) * cap / (decay_exponent_ - 1.0);
        if (tail < 0.5 * kTailBudget) break;
        cap *= 2.0;
        if (i == 599) throw std::runtime_error("play map: slope tail does not decay");
    }
    p_cap_ = 2.0 * cap;

    // Knot cache: 0, then geometric spacing up to p_cap.
    const double p0 = 1e-4 * std::min(scale_pressure, p_peak_);
    const double ratio = std::pow(2.0, 0.25);
    knot_p_.push_back(0.0);
    for (double p = p0; p < p_cap_; p *= ratio) knot_p_.push_back(p);
    knot_p_.push_back(p_cap_);
    knot_b_.resize(knot_p_.size());
    knot_b_[0] = 0.0;
    for (std::size_t k = 1; k < knot_p_.size(); ++k)
        knot_b_[k] = knot_b_[k - 1] +
                     integrate(slope_, knot_p_[k - 1], knot_p_[k], kQuadTol);
    u_sat_ = knot_b_.back();
    u_max_ = u_sat_;  // dropped tail < kTailBudget by construction

    // Composite tables on w = sqrt(u); w-grading linearises the sqrt
    // behaviour of b^-1 near u = 0.
    const std::size_t nc = 2048;
    comp_w_.resize(nc + 1);
    comp_c_.resize(nc + 1);
    comp_pr_.resize(nc + 1);
    const double w_max = std::sqrt(u_sat_);
    for (std::size_t k = 0; k <= nc; ++k) {
        const double w = w_max * static_cast<double>(k) / nc;
        const double u = w * w;
        const double p = k == 0 ? 0.0 : (k == nc ? p_cap_ : invert_raw(u));
        comp_w_[k] = w;
        comp_pr_[k] = p;
        comp_c_[k] = slope(p);
    }
}

PlayMap PlayMap::from_capillary_pair(const CapillaryCurvePair& pair) {
    const VanGenuchtenCurve imb = pair.imb;
    const VanGenuchtenCurve dra = pair.dra;
    auto slope = [imb, dra](double p) {
        return 0.5 * std::min(imb.inv_abs_slope_at_pressure(p),
                              dra.inv_abs_slope_at_pressure(p));
    };
    return PlayMap(slope, std::min(imb.alpha, dra.alpha),
                   std::min(imb.n, dra.n));
}

double PlayMap::integrate_slope(double a, double b, double eps) const {
    auto f = [this](double p) { return slope(p); };
    return integrate(f, a, b, eps);
}

double PlayMap::eval_raw(double p) const {
    if (p <= 0.0) return 0.0;
    if (p >= p_cap_) return u_sat_;
    const auto it = std::upper_bound(knot_p_.begin(), knot_p_.end(), p);
    const std::size_t k = static_cast<std::size_t>(it - knot_p_.begin()) - 1;
    return knot_b_[k] + integrate_slope(knot_p_[k], p, kQuadTol);
}

double PlayMap::invert_raw(double u) const {
    if (u <= 0.0) return 0.0;
    if (u >= u_sat_)
        throw std::domain_error("play map saturates: u outside attained range");
    auto it = std::upper_bound(knot_b_.begin(), knot_b_.end(), u);
    std::size_t k = static_cast<std::size_t>(it - knot_b_.begin()) - 1;
    double lo = knot_p_[k], hi = knot_p_[k + 1];
    double p = 0.5 * (lo + hi);
    for (int iter = 0; iter < 100; ++iter) {
        const double r = eval_raw(p) - u;
        if (std::abs(r) <= 1e-13 * std::max(1.0, u)) return p;
        if (r > 0.0) hi = p; else lo = p;
        const double ds = slope(p);
        double next = ds > 1e-300 ? p - r / ds : 0.5 * (lo + hi);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        p = next;
    }
    return p;
}

PlayMap::CutPoints PlayMap::cut_points(double delta) const {
    if (!(delta > 0.0 && delta < slope_max_))
        throw std::domain_error("play map: delta outside (0, max slope)");
    auto cross = [this, delta](double lo, double hi, bool rising) {
        for (int i = 0; i < 200; ++i) {
            const double mid = 0.5 * (lo + hi);
            const bool below = slope(mid) < delta;
            if (below == rising) lo = mid; else hi = mid;
        }
        return 0.5 * (lo + hi);
    };
    const double lo = cross(0.0, p_peak_, true);
    double hi_bracket = p_peak_;
    while (slope(hi_bracket) >= delta) hi_bracket *= 2.0;
    const double hi = cross(p_peak_, hi_bracket, false);
    return {lo, hi};
}

double PlayMap::reg_surplus(double delta) const {
    if (delta <= 0.0) return 0.0;
    if (delta >= slope_max_) return 0.0;  // b_delta is purely linear
    const CutPoints c = cut_points(delta);
    return delta * c.lo - eval_raw(c.lo);
}

double PlayMap::slope_reg(double p, double delta) const {
    return std::max(slope(p), delta);
}

double PlayMap::eval(double p, double delta) const {
    if (delta < 0.0) throw std::invalid_argument("play map: delta must be >= 0");
    if (delta == 0.0) return eval_raw(p);
    if (delta >= slope_max_) return delta * p;
    const CutPoints c = cut_points(delta);
    if (p <= c.lo) return delta * p;
    const double base = delta * c.lo - eval_raw(c.lo);
    if (p < c.hi) return base + eval_raw(p);
    return base + eval_raw(c.hi) + delta * (p - c.hi);
}

double PlayMap::inverse(double u, double delta) const {
    if (delta < 0.0) throw std::invalid_argument("play map: delta must be >= 0");
    if (delta == 0.0) {
        if (u < 0.0 || u >= u_sat_)
            throw std::domain_error("play map saturates: u outside attained range");
        return invert_raw(u);
    }
    if (delta >= slope_max_) return u / delta;
    const CutPoints c = cut_points(delta);
    const double u_lo = delta * c.lo;
    const double base = u_lo - eval_raw(c.lo);
    const double u_hi = base + eval_raw(c.hi);
    if (u <= u_lo) return u / delta;
    if (u >= u_hi) return c.hi + (u - u_hi) / delta;
    return invert_raw(u - base);
}

double PlayMap::slope_at_u(double u) const {
    if (u <= 0.0) return comp_c_.front();
    const double w = std::sqrt(u);
    if (w >= comp_w_.back()) return comp_c_.back();
    const double s = w / comp_w_.back() * static_cast<double>(comp_w_.size() - 1);
    std::size_t k = static_cast<std::size_t>(s);
    if (k >= comp_w_.size() - 1) k = comp_w_.size() - 2;
    const double f = s - static_cast<double>(k);
    return comp_c_[k] + f * (comp_c_[k + 1] - comp_c_[k]);
}

double PlayMap::pressure_at_u(double u) const {
    if (u <= 0.0) return 0.0;
    const double w = std::sqrt(u);
    if (w >= comp_w_.back()) return comp_pr_.back();
    const double s = w / comp_w_.back() * static_cast<double>(comp_w_.size() - 1);
    std::size_t k = static_cast<std::size_t>(s);
    if (k >= comp_w_.size() - 1) k = comp_w_.size() - 2;
    const double f = s - static_cast<double>(k);
    return comp_pr_[k] + f * (comp_pr_[k + 1] - comp_pr_[k]);
}

double PlayMap::reg_slope_at_u(double u, double delta) const {
    if (delta <= 0.0) return slope_at_u(u);
    return std::max(slope_at_u(u - reg_surplus(delta)), delta);
}

}  // namespace hystera
