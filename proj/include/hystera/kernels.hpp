#pragma once

#include <cstddef>
#include <span>
#include <string_view>

// Pointwise table/field kernels used in the solver inner loops. Every kernel
// has a scalar reference implementation and an AVX2 variant selected at
// runtime; both produce bitwise-identical results (same operation order, no
// FMA contraction, fixed 4-accumulator reduction scheme).

namespace hystera::kernels {

// Piecewise-linear table on a uniform abscissa grid with flat extension
// beyond [x0, x1]. `y` has n_intervals + 1 entries.
struct TableView {
    const double* y = nullptr;
    std::size_t n_intervals = 0;
    double x0 = 0.0;
    double x1 = 1.0;
    double inv_dx = 1.0;
};

enum class Backend { automatic, scalar, avx2 };

// Returns false if the requested backend is unavailable on this CPU.
bool set_backend(Backend b);
std::string_view backend_name();
bool avx2_available();

// out[i] = table(x[i])
void table_eval(const TableView& t, std::span<const double> x, std::span<double> out);

// out[i] = -(1/tau)*[u - rho_d(v)]_+ - (1/tau)*[u - rho_i(v)]_-
void phi_tau_eval(const TableView& rho_i, const TableView& rho_d,
                  std::span<const double> u, std::span<const double> v,
                  double inv_tau, std::span<double> out);

// sum_d = sum w[i]*[u - rho_d(v)]_+^2,  sum_i = sum w[i]*[rho_i(v) - u]_+^2
void band_mismatch_sq(const TableView& rho_i, const TableView& rho_d,
                      std::span<const double> w, std::span<const double> u,
                      std::span<const double> v, double& sum_d, double& sum_i);

// sum w[i]*a[i]*b[i]
double weighted_dot(std::span<const double> w, std::span<const double> a,
                    std::span<const double> b);

// sum w[i]*(a[i]-b[i])^2
double weighted_sq_diff(std::span<const double> w, std::span<const double> a,
                        std::span<const double> b);

// out[i] = a[i] + alpha*b[i]
void scaled_add(std::span<double> out, std::span<const double> a, double alpha,
                std::span<const double> b);

// Scalar single-point helpers, shared by tail handling and by callers that
// only need one value. Same formulas as the batch kernels.
double table_eval_one(const TableView& t, double x);
double phi_tau_one(const TableView& rho_i, const TableView& rho_d, double u,
                   double v, double inv_tau);

}  // namespace hystera::kernels
