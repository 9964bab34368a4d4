#pragma once

#include "hystera/grid.hpp"

#include <span>
#include <vector>

namespace hystera {

/// Symmetric sparse operator in CSR layout. 1D assemblies are tridiagonal
/// and flagged as such so the solver can use direct elimination.
struct SparseOperator {
    std::size_t n = 0;
    std::vector<std::size_t> row_ptr;
    std::vector<std::size_t> cols;
    std::vector<double> vals;
    bool tridiagonal = false;

    void apply(std::span<const double> x, std::span<double> y) const;
    double quad_form(std::span<const double> x) const;  // x^T A x
    double coeff(std::size_t i, std::size_t j) const;
};

/// Lumped P1/Q1 mass weights (row sums of the consistent mass matrix).
FieldVector lumped_mass(const Grid& g);

/// Stiffness with element-wise averaged nodal diffusivity. Throws if any
/// nodal coefficient is nonpositive (degenerate closure, a missing
/// regularisation). No boundary handling here.
SparseOperator assemble_stiffness(const Grid& g, std::span<const double> d_nodal);

/// Load vector with entries sum_e int_e F . grad(phi_i), nodal flux averaged
/// per element. `f_axis` holds one nodal array per axis.
FieldVector flux_load(const Grid& g, std::span<const FieldVector> f_axis);

struct StepSystem {
    SparseOperator op;   // lumped M + dt K, Dirichlet rows/cols condensed
    FieldVector load;    // flux load, Dirichlet entries zeroed
};

StepSystem assemble_step_system(const Grid& g, std::span<const double> d_nodal,
                                std::span<const FieldVector> f_axis, double dt);

/// Lumped L2 inner product.
double l2_inner(std::span<const double> a, std::span<const double> b, const Grid& g);

/// In-place row/column condensation for homogeneous Dirichlet data: the row
/// and column are zeroed and the diagonal set to 1.
void condense_dirichlet(SparseOperator& a, const Grid& g);

}  // namespace hystera
