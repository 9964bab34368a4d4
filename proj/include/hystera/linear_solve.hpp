#pragma once

#include "hystera/assembly.hpp"

namespace hystera {

struct LinearSolveResult {
    FieldVector x;
    std::size_t iterations = 0;  // 1 for direct elimination
};

/// Solves A x = b for a symmetric positive definite operator to a relative
/// residual of 1e-12: direct tridiagonal elimination in 1D, Jacobi-
/// preconditioned conjugate gradients otherwise. Throws on breakdown or
/// stagnation.
LinearSolveResult solve_linear(const SparseOperator& a, const FieldVector& b);

}  // namespace hystera
