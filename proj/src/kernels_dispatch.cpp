#include "hystera/kernels.hpp"

namespace hystera::kernels {

namespace scalar {
void table_eval(const TableView&, std::span<const double>, std::span<double>);
void phi_tau_eval(const TableView&, const TableView&, std::span<const double>,
                  std::span<const double>, double, std::span<double>);
void band_mismatch_sq(const TableView&, const TableView&, std::span<const double>,
                      std::span<const double>, std::span<const double>, double&, double&);
double weighted_dot(std::span<const double>, std::span<const double>, std::span<const double>);
double weighted_sq_diff(std::span<const double>, std::span<const double>, std::span<const double>);
void scaled_add(std::span<double>, std::span<const double>, double, std::span<const double>);
}  // namespace scalar

namespace avx2 {
void table_eval(const TableView&, std::span<const double>, std::span<double>);
void phi_tau_eval(const TableView&, const TableView&, std::span<const double>,
                  std::span<const double>, double, std::span<double>);
void band_mismatch_sq(const TableView&, const TableView&, std::span<const double>,
                      std::span<const double>, std::span<const double>, double&, double&);
double weighted_dot(std::span<const double>, std::span<const double>, std::span<const double>);
double weighted_sq_diff(std::span<const double>, std::span<const double>, std::span<const double>);
void scaled_add(std::span<double>, std::span<const double>, double, std::span<const double>);
}  // namespace avx2

namespace {

struct Vtable {
    decltype(&scalar::table_eval) table_eval;
    decltype(&scalar::phi_tau_eval) phi_tau_eval;
    decltype(&scalar::band_mismatch_sq) band_mismatch_sq;
    decltype(&scalar::weighted_dot) weighted_dot;
    decltype(&scalar::weighted_sq_diff) weighted_sq_diff;
    decltype(&scalar::scaled_add) scaled_add;
    const char* name;
};

constexpr Vtable kScalar{scalar::table_eval, scalar::phi_tau_eval,
                         scalar::band_mismatch_sq, scalar::weighted_dot,
                         scalar::weighted_sq_diff, scalar::scaled_add, "scalar"};

constexpr Vtable kAvx2{avx2::table_eval, avx2::phi_tau_eval,
                       avx2::band_mismatch_sq, avx2::weighted_dot,
                       avx2::weighted_sq_diff, avx2::scaled_add, "avx2"};

bool detect_avx2() {
#if defined(__x86_64__) || defined(_M_X64)
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

const Vtable* g_active = nullptr;

const Vtable* active() {
    if (!g_active) g_active = detect_avx2() ? &kAvx2 : &kScalar;
    return g_active;
}

}  // namespace

bool avx2_available() { return detect_avx2(); }

bool set_backend(Backend b) {
    switch (b) {
        case Backend::automatic:
            g_active = detect_avx2() ? &kAvx2 : &kScalar;
            return true;
        case Backend::scalar:
            g_active = &kScalar;
            return true;
        case Backend::avx2:
            if (!detect_avx2()) return false;
            g_active = &kAvx2;
            return true;
    }
    return false;
}

std::string_view backend_name() { return active()->name; }

void table_eval(const TableView& t, std::span<const double> x, std::span<double> out) {
    active()->table_eval(t, x, out);
}

void phi_tau_eval(const TableView& rho_i, const TableView& rho_d,
                  std::span<const double> u, std::span<const double> v,
                  double inv_tau, std::span<double> out) {
    active()->phi_tau_eval(rho_i, rho_d, u, v, inv_tau, out);
}

void band_mismatch_sq(const TableView& rho_i, const TableView& rho_d,
                      std::span<const double> w, std::span<const double> u,
                      std::span<const double> v, double& sum_d, double& sum_i) {
    active()->band_mismatch_sq(rho_i, rho_d, w, u, v, sum_d, sum_i);
}

double weighted_dot(std::span<const double> w, std::span<const double> a,
                    std::span<const double> b) {
    return active()->weighted_dot(w, a, b);
}

double weighted_sq_diff(std::span<const double> w, std::span<const double> a,
                        std::span<const double> b) {
    return active()->weighted_sq_diff(w, a, b);
}

void scaled_add(std::span<double> out, std::span<const double> a, double alpha,
                std::span<const double> b) {
    active()->scaled_add(out, a, alpha, b);
}

}  // namespace hystera::kernels
