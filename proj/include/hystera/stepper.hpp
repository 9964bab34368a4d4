#pragma once

#include "hystera/assembly.hpp"
#include "hystera/constitutive_set.hpp"
#include "hystera/grid.hpp"

#include <array>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace hystera {

struct StepperConfig {
    double dt = 1e-3;
    double t_final = 0.5;
    double eps_fp = 1e-10;        // fixed-point tolerance in the combined norm
    std::size_t max_inner = 50;
    int halving_limit = 20;
    bool rebase_on_halving = true;  // recompute the whole run at the halved dt
    std::array<double, 2> gravity{0.0, 0.0};
    bool flux_enabled = false;
};

/// Nodal fields at one time level. u is pinned to 0 on Dirichlet nodes; v is
/// free everywhere (it evolves pointwise, boundary included).
struct State {
    FieldVector u;
    FieldVector v;

    FieldVector saturation() const;  // S = v - u
};

struct StepReport {
    double t = 0.0;
    std::size_t inner_iterations = 0;
    double residual = 0.0;           // final successive-iterate combined norm
    double contraction = 0.0;        // last residual ratio, < 1 on success
    double dt_used = 0.0;
    std::size_t linear_iterations = 0;
};

struct Trajectory {
    std::vector<double> times;
    std::vector<State> states;
    std::vector<StepReport> reports;  // one per step (times.size() - 1)
    double dt_final = 0.0;
    int halvings = 0;
};

/// Raised when the inner map stops contracting; the caller halves dt.
struct NonContractionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Raised when the halving budget is exhausted; carries the offending time.
struct SolverAbort : std::runtime_error {
    double t_failed;
    SolverAbort(const std::string& what, double t) : std::runtime_error(what), t_failed(t) {}
};

/// One application of the inner map: a linear elliptic solve for u* with the
/// rate term frozen at the iterate, and the explicit pointwise v* update.
State inner_map_B(const State& prev, const State& iterate, const StepperConfig& cfg,
                  const Grid& grid, const ConstitutiveSet& con);

/// Iterates the inner map from (u_{n-1}, v_{n-1}) until the combined norm
/// sqrt(|du|^2 + 2 dt D_m |grad du|^2 + |dv|^2) of successive differences
/// drops below eps_fp. Throws NonContractionError when the iteration budget
/// is exhausted or a residual ratio reaches 1.
std::pair<State, StepReport> fixed_point_solve(const State& prev,
                                               const StepperConfig& cfg,
                                               const Grid& grid,
                                               const ConstitutiveSet& con,
                                               double t_next);

/// Marches from t = 0 to t_final. Initial data must satisfy the scanning
/// band condition rho_i(v0) <= u0 <= rho_d(v0) nodewise and u0 = 0 on
/// Dirichlet nodes.
Trajectory time_march(const State& initial, const StepperConfig& cfg,
                      const Grid& grid, const ConstitutiveSet& con);

/// Builds (u, v) = (b(p0), S0 + b(p0)) from saturation/pressure data.
State state_from_saturation_pressure(const FieldVector& s0, const FieldVector& p0,
                                     const ConstitutiveSet& con);

}  // namespace hystera
