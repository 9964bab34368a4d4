#include "hystera/stepper.hpp"

#include "hystera/kernels.hpp"
#include "hystera/linear_solve.hpp"

#include <cmath>
#include <string>

namespace hystera {

FieldVector State::saturation() const {
    FieldVector s(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) s[i] = v[i] - u[i];
    return s;
}

namespace {

// Everything that stays fixed over the inner iteration of one step.
struct StepContext {
    StepSystem sys;           // lumped M + dt K(D_{n-1}), condensed
    FieldVector mass;
    FieldVector rhs_const;    // M u_{n-1} + dt * flux load, Dirichlet-zeroed
    SparseOperator unit_stiffness;
    double d_min = 0.0;
    double dt = 0.0;
};

StepContext make_context(const State& prev, const StepperConfig& cfg,
                         const Grid& grid, const ConstitutiveSet& con, double dt) {
    StepContext ctx;
    ctx.dt = dt;
    const std::size_t n = grid.node_count();
    FieldVector d(n);
    for (std::size_t i = 0; i < n; ++i) d[i] = con.diffusivity(prev.u[i], prev.v[i]);
    ctx.d_min = d[0];
    for (double x : d) ctx.d_min = std::min(ctx.d_min, x);

    std::vector<FieldVector> f_axis;
    if (cfg.flux_enabled) {
        for (int a = 0; a < grid.dim; ++a) {
            FieldVector f(n);
            for (std::size_t i = 0; i < n; ++i)
                f[i] = cfg.gravity[static_cast<std::size_t>(a)] *
                       con.flux_coeff(prev.u[i], prev.v[i]);
            f_axis.push_back(std::move(f));
        }
    }
    ctx.sys = assemble_step_system(grid, d, f_axis, dt);
    ctx.mass = lumped_mass(grid);
    FieldVector ones(n, 1.0);
    ctx.unit_stiffness = assemble_stiffness(grid, ones);

    ctx.rhs_const.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        ctx.rhs_const[i] = ctx.mass[i] * prev.u[i] + dt * ctx.sys.load[i];
    for (std::size_t i = 0; i < n; ++i)
        if (grid.dirichlet[i]) ctx.rhs_const[i] = 0.0;
    return ctx;
}

State apply_inner_map(const StepContext& ctx, const State& prev,
                      const State& iterate, const Grid& grid,
                      const ConstitutiveSet& con, std::size_t* linear_iters) {
    const std::size_t n = grid.node_count();
    FieldVector phi(n);
    phi_tau_batch(con.rho(), iterate.u, iterate.v, con.tau(), phi);
    for (double x : phi)
        if (!std::isfinite(x))
            throw std::runtime_error("stepper: state corruption, non-finite rate value");

    FieldVector rhs(n);
    for (std::size_t i = 0; i < n; ++i)
        rhs[i] = ctx.rhs_const[i] + ctx.dt * ctx.mass[i] * phi[i];
    for (std::size_t i = 0; i < n; ++i)
        if (grid.dirichlet[i]) rhs[i] = 0.0;

    LinearSolveResult sol = solve_linear(ctx.sys.op, rhs);
    if (linear_iters) *linear_iters = sol.iterations;

    State next;
    next.u = std::move(sol.x);
    next.v.resize(n);
    kernels::scaled_add(next.v, prev.v, ctx.dt, phi);
    return next;
}

double combined_norm(const StepContext& ctx, const State& a, const State& b) {
    const std::size_t n = a.u.size();
    FieldVector du(n);
    for (std::size_t i = 0; i < n; ++i) du[i] = a.u[i] - b.u[i];
    const double uu = kernels::weighted_dot(ctx.mass, du, du);
    const double grad = ctx.unit_stiffness.quad_form(du);
    const double vv = kernels::weighted_sq_diff(ctx.mass, a.v, b.v);
    return std::sqrt(uu + 2.0 * ctx.dt * ctx.d_min * grad + vv);
}

void validate_initial(const State& s, const Grid& grid, const ConstitutiveSet& con) {
    const std::size_t n = grid.node_count();
    if (s.u.size() != n || s.v.size() != n)
        throw std::invalid_argument("stepper: initial state length mismatch");
    const double band_tol = 1e-9;
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::isfinite(s.u[i]) || !std::isfinite(s.v[i]))
            throw std::invalid_argument("stepper: non-finite initial data");
        if (grid.dirichlet[i] && s.u[i] != 0.0)
            throw std::invalid_argument("stepper: u must vanish on Dirichlet nodes");
        const double ri = con.rho().eval(Branch::imbibition, s.v[i]);
        const double rd = con.rho().eval(Branch::drainage, s.v[i]);
        if (s.u[i] < ri - band_tol || s.u[i] > rd + band_tol)
            throw std::invalid_argument(
                "stepper: initial data violates the scanning band condition "
                "rho_i(v0) <= u0 <= rho_d(v0) at node " + std::to_string(i));
    }
}

}  // namespace

State inner_map_B(const State& prev, const State& iterate, const StepperConfig& cfg,
                  const Grid& grid, const ConstitutiveSet& con) {
    const StepContext ctx = make_context(prev, cfg, grid, con, cfg.dt);
    return apply_inner_map(ctx, prev, iterate, grid, con, nullptr);
}

std::pair<State, StepReport> fixed_point_solve(const State& prev,
                                               const StepperConfig& cfg,
                                               const Grid& grid,
                                               const ConstitutiveSet& con,
                                               double t_next) {
    const StepContext ctx = make_context(prev, cfg, grid, con, cfg.dt);
    StepReport rep;
    rep.t = t_next;
    rep.dt_used = cfg.dt;

    State current = prev;
    double prev_resid = -1.0;
    for (std::size_t it = 1; it <= cfg.max_inner; ++it) {
        std::size_t lin = 0;
        State next = apply_inner_map(ctx, prev, current, grid, con, &lin);
        const double resid = combined_norm(ctx, next, current);
        if (!std::isfinite(resid))
            throw std::runtime_error("stepper: non-finite fixed-point residual");
        rep.inner_iterations = it;
        rep.residual = resid;
        rep.linear_iterations = lin;
        if (prev_resid >= 0.0) rep.contraction = prev_resid > 0.0 ? resid / prev_resid : 0.0;
        current = std::move(next);
        if (resid <= cfg.eps_fp) return {std::move(current), rep};
        if (prev_resid >= 0.0 && resid >= prev_resid)
            throw NonContractionError("stepper: inner map stopped contracting");
        prev_resid = resid;
    }
    throw NonContractionError("stepper: inner iteration budget exhausted");
}

Trajectory time_march(const State& initial, const StepperConfig& cfg,
                      const Grid& grid, const ConstitutiveSet& con) {
    if (!(cfg.dt > 0.0) || cfg.t_final < 0.0 || cfg.eps_fp <= 0.0 || cfg.max_inner < 1)
        throw std::invalid_argument("stepper: invalid configuration");
    if (!(con.delta() > 0.0) || !(con.mu() > 0.0 || con.params().k0 > 0.0))
        throw std::invalid_argument(
            "stepper: needs delta > 0 and a positive permeability floor (mu or k0)");
    validate_initial(initial, grid, con);

    {
        const double n_steps_f = cfg.t_final / cfg.dt;
        if (cfg.t_final > 0.0 &&
            std::abs(n_steps_f - std::llround(n_steps_f)) > 1e-9 * std::max(1.0, n_steps_f))
            throw std::invalid_argument("stepper: t_final must be an integer multiple of dt");
    }

    Trajectory traj;
    traj.dt_final = cfg.dt;
    traj.halvings = 0;

    for (;;) {  // restarted in full when rebasing onto a halved dt
        traj.times.assign(1, 0.0);
        traj.states.assign(1, initial);
        traj.reports.clear();
        if (cfg.t_final == 0.0) return traj;

        double dt = traj.dt_final;
        bool restarted = false;
        while (traj.times.back() < cfg.t_final - 0.25 * dt) {
            const double t_next = traj.times.back() + dt;
            StepperConfig step_cfg = cfg;
            step_cfg.dt = dt;
            try {
                auto [state, rep] = fixed_point_solve(traj.states.back(), step_cfg,
                                                      grid, con, t_next);
                traj.times.push_back(t_next);
                traj.states.push_back(std::move(state));
                traj.reports.push_back(rep);
            } catch (const NonContractionError& e) {
                if (traj.halvings >= cfg.halving_limit)
                    throw SolverAbort(std::string("stepper: halving limit exceeded (") +
                                          e.what() + ")",
                                      t_next);
                ++traj.halvings;
                traj.dt_final *= 0.5;
                dt = traj.dt_final;
                if (cfg.rebase_on_halving) {
                    restarted = true;
                    break;
                }
                // Retry the same step at the halved dt; previously accepted
                // times remain multiples of the new dt.
            }
        }
        if (!restarted) return traj;
    }
}

State state_from_saturation_pressure(const FieldVector& s0, const FieldVector& p0,
                                     const ConstitutiveSet& con) {
    if (s0.size() != p0.size())
        throw std::invalid_argument("stepper: saturation/pressure length mismatch");
    State st;
    st.u.resize(p0.size());
    st.v.resize(p0.size());
    for (std::size_t i = 0; i < p0.size(); ++i) {
        st.u[i] = con.play().eval(p0[i]);
        st.v[i] = s0[i] + st.u[i];
    }
    return st;
}

}  // namespace hystera
