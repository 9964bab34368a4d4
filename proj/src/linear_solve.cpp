#include "hystera/linear_solve.hpp"

#include <cmath>
#include <stdexcept>

namespace hystera {

namespace {

constexpr double kRelTol = 1e-12;

double norm2(const FieldVector& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

LinearSolveResult solve_tridiagonal(const SparseOperator& a, const FieldVector& b) {
    const std::size_t n = a.n;
    FieldVector diag(n), lower(n, 0.0), upper(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k) {
            const std::size_t j = a.cols[k];
            if (j == i) diag[i] = a.vals[k];
            else if (j + 1 == i) lower[i] = a.vals[k];
            else if (j == i + 1) upper[i] = a.vals[k];
        }
    }
    FieldVector c(n, 0.0), d(n, 0.0);
    double den = diag[0];
    if (den == 0.0) throw std::runtime_error("linear solve: zero pivot");
    c[0] = upper[0] / den;
    d[0] = b[0] / den;
    for (std::size_t i = 1; i < n; ++i) {
        den = diag[i] - lower[i] * c[i - 1];
        if (den == 0.0) throw std::runtime_error("linear solve: zero pivot");
        c[i] = upper[i] / den;
        d[i] = (b[i] - lower[i] * d[i - 1]) / den;
    }
    LinearSolveResult r;
    r.x.assign(n, 0.0);
    r.x[n - 1] = d[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) r.x[i] = d[i] - c[i] * r.x[i + 1];
    r.iterations = 1;
    return r;
}

LinearSolveResult solve_pcg(const SparseOperator& a, const FieldVector& b) {
    const std::size_t n = a.n;
    FieldVector inv_diag(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double d = a.coeff(i, i);
        if (!(d > 0.0)) throw std::runtime_error("linear solve: nonpositive diagonal");
        inv_diag[i] = 1.0 / d;
    }
    LinearSolveResult res;
    res.x.assign(n, 0.0);
    FieldVector r = b, z(n), p(n), q(n);
    const double target = kRelTol * norm2(b);
    if (norm2(r) <= target) return res;
    for (std::size_t i = 0; i < n; ++i) z[i] = inv_diag[i] * r[i];
    p = z;
    double rz = 0.0;
    for (std::size_t i = 0; i < n; ++i) rz += r[i] * z[i];
    const std::size_t max_iter = 20 * n + 100;
    double best = norm2(r);
    std::size_t stall = 0;
    for (std::size_t it = 1; it <= max_iter; ++it) {
        a.apply(p, q);
        double pq = 0.0;
        for (std::size_t i = 0; i < n; ++i) pq += p[i] * q[i];
        if (!(pq > 0.0)) throw std::runtime_error("linear solve: CG breakdown");
        const double alpha = rz / pq;
        for (std::size_t i = 0; i < n; ++i) res.x[i] += alpha * p[i];
        for (std::size_t i = 0; i < n; ++i) r[i] -= alpha * q[i];
        const double rn = norm2(r);
        res.iterations = it;
        if (rn <= target) {
            // Guard against drift between the recurrence and true residual.
            FieldVector t(n);
            a.apply(res.x, t);
            double tr = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                const double e = t[i] - b[i];
                tr += e * e;
            }
            if (std::sqrt(tr) <= 10.0 * target) return res;
        }
        if (rn < 0.999 * best) { best = rn; stall = 0; }
        else if (++stall > 200) throw std::runtime_error("linear solve: CG stagnated");
        for (std::size_t i = 0; i < n; ++i) z[i] = inv_diag[i] * r[i];
        double rz_new = 0.0;
        for (std::size_t i = 0; i < n; ++i) rz_new += r[i] * z[i];
        const double beta = rz_new / rz;
        rz = rz_new;
        for (std::size_t i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
    }
    throw std::runtime_error("linear solve: CG did not converge");
}

}  // namespace

LinearSolveResult solve_linear(const SparseOperator& a, const FieldVector& b) {
    if (b.size() != a.n) throw std::invalid_argument("linear solve: size mismatch");
    return a.tridiagonal ? solve_tridiagonal(a, b) : solve_pcg(a, b);
}

}  // namespace hystera
