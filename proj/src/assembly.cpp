#include "hystera/assembly.hpp"

#include "hystera/kernels.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace hystera {

void SparseOperator::apply(std::span<const double> x, std::span<double> y) const {
    for (std::size_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (std::size_t k = row_ptr[i]; k < row_ptr[i + 1]; ++k)
            s += vals[k] * x[cols[k]];
        y[i] = s;
    }
}

double SparseOperator::quad_form(std::span<const double> x) const {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double r = 0.0;
        for (std::size_t k = row_ptr[i]; k < row_ptr[i + 1]; ++k)
            r += vals[k] * x[cols[k]];
        s += x[i] * r;
    }
    return s;
}

double SparseOperator::coeff(std::size_t i, std::size_t j) const {
    for (std::size_t k = row_ptr[i]; k < row_ptr[i + 1]; ++k)
        if (cols[k] == j) return vals[k];
    return 0.0;
}

namespace {

// Structured CSR skeleton: 3 entries per row in 1D, up to 9 in 2D.
SparseOperator make_pattern(const Grid& g) {
    SparseOperator a;
    a.n = g.node_count();
    a.tridiagonal = g.dim == 1;
    a.row_ptr.assign(a.n + 1, 0);
    const std::ptrdiff_t nx = static_cast<std::ptrdiff_t>(g.nodes[0]);
    const std::ptrdiff_t ny = g.dim == 2 ? static_cast<std::ptrdiff_t>(g.nodes[1]) : 1;
    for (std::ptrdiff_t iy = 0; iy < ny; ++iy) {
        for (std::ptrdiff_t ix = 0; ix < nx; ++ix) {
            const std::size_t i = static_cast<std::size_t>(ix + nx * iy);
            for (std::ptrdiff_t dy = (g.dim == 2 ? -1 : 0); dy <= (g.dim == 2 ? 1 : 0); ++dy)
                for (std::ptrdiff_t dx = -1; dx <= 1; ++dx) {
                    const std::ptrdiff_t jx = ix + dx, jy = iy + dy;
                    if (jx < 0 || jx >= nx || jy < 0 || jy >= ny) continue;
                    a.row_ptr[i + 1]++;
                    a.cols.push_back(static_cast<std::size_t>(jx + nx * jy));
                }
        }
    }
    for (std::size_t i = 0; i < a.n; ++i) a.row_ptr[i + 1] += a.row_ptr[i];
    for (std::size_t i = 0; i < a.n; ++i)
        std::sort(a.cols.begin() + static_cast<std::ptrdiff_t>(a.row_ptr[i]),
                  a.cols.begin() + static_cast<std::ptrdiff_t>(a.row_ptr[i + 1]));
    a.vals.assign(a.cols.size(), 0.0);
    return a;
}

void add_at(SparseOperator& a, std::size_t i, std::size_t j, double val) {
    const auto begin = a.cols.begin() + static_cast<std::ptrdiff_t>(a.row_ptr[i]);
    const auto end = a.cols.begin() + static_cast<std::ptrdiff_t>(a.row_ptr[i + 1]);
    const auto it = std::lower_bound(begin, end, j);
    a.vals[static_cast<std::size_t>(it - a.cols.begin())] += val;
}

// Reference Q1 stiffness for unit coefficient, 2x2 Gauss (exact here).
// Local node order: (0,0), (hx,0), (0,hy), (hx,hy).
std::array<std::array<double, 4>, 4> q1_reference(double hx, double hy) {
    std::array<std::array<double, 4>, 4> k{};
    const double gp[2] = {0.5 - 0.5 / std::sqrt(3.0), 0.5 + 0.5 / std::sqrt(3.0)};
    for (double xi : gp) {
        for (double eta : gp) {
            const double dxi[4] = {-(1.0 - eta), (1.0 - eta), -eta, eta};
            const double deta[4] = {-(1.0 - xi), -xi, (1.0 - xi), xi};
            for (int a = 0; a < 4; ++a)
                for (int b = 0; b < 4; ++b)
                    k[a][b] += 0.25 * hx * hy *
                               (dxi[a] * dxi[b] / (hx * hx) +
                                deta[a] * deta[b] / (hy * hy));
        }
    }
    return k;
}

void check_nodal_positivity(std::span<const double> d) {
    for (double v : d)
        if (!(v > 0.0))
            throw std::runtime_error(
                "assembly: nonpositive diffusivity at a node (degenerate closure; "
                "was the delta/mu regularisation skipped?)");
}

}  // namespace

FieldVector lumped_mass(const Grid& g) {
    FieldVector m(g.node_count(), 0.0);
    if (g.dim == 1) {
        const double half = 0.5 * g.h[0];
        for (std::size_t e = 0; e + 1 < g.nodes[0]; ++e) {
            m[e] += half;
            m[e + 1] += half;
        }
    } else {
        const double quarter = 0.25 * g.h[0] * g.h[1];
        for (std::size_t ey = 0; ey + 1 < g.nodes[1]; ++ey)
            for (std::size_t ex = 0; ex + 1 < g.nodes[0]; ++ex) {
                m[g.index(ex, ey)] += quarter;
                m[g.index(ex + 1, ey)] += quarter;
                m[g.index(ex, ey + 1)] += quarter;
                m[g.index(ex + 1, ey + 1)] += quarter;
            }
    }
    return m;
}

SparseOperator assemble_stiffness(const Grid& g, std::span<const double> d_nodal) {
    if (d_nodal.size() != g.node_count())
        throw std::invalid_argument("assembly: coefficient length mismatch");
    check_nodal_positivity(d_nodal);
    SparseOperator a = make_pattern(g);
    if (g.dim == 1) {
        const double inv_h = 1.0 / g.h[0];
        for (std::size_t e = 0; e + 1 < g.nodes[0]; ++e) {
            const double de = 0.5 * (d_nodal[e] + d_nodal[e + 1]) * inv_h;
            add_at(a, e, e, de);
            add_at(a, e + 1, e + 1, de);
            add_at(a, e, e + 1, -de);
            add_at(a, e + 1, e, -de);
        }
    } else {
        const auto ref = q1_reference(g.h[0], g.h[1]);
        for (std::size_t ey = 0; ey + 1 < g.nodes[1]; ++ey)
            for (std::size_t ex = 0; ex + 1 < g.nodes[0]; ++ex) {
                const std::size_t loc[4] = {g.index(ex, ey), g.index(ex + 1, ey),
                                            g.index(ex, ey + 1), g.index(ex + 1, ey + 1)};
                const double de = 0.25 * (d_nodal[loc[0]] + d_nodal[loc[1]] +
                                          d_nodal[loc[2]] + d_nodal[loc[3]]);
                for (int p = 0; p < 4; ++p)
                    for (int q = 0; q < 4; ++q)
                        add_at(a, loc[p], loc[q], de * ref[p][q]);
            }
    }
    return a;
}

FieldVector flux_load(const Grid& g, std::span<const FieldVector> f_axis) {
    if (f_axis.size() != static_cast<std::size_t>(g.dim))
        throw std::invalid_argument("assembly: one flux component per axis required");
    FieldVector load(g.node_count(), 0.0);
    if (g.dim == 1) {
        const FieldVector& f = f_axis[0];
        for (std::size_t e = 0; e + 1 < g.nodes[0]; ++e) {
            const double fe = 0.5 * (f[e] + f[e + 1]);
            load[e] -= fe;
            load[e + 1] += fe;
        }
    } else {
        const double half_hy = 0.5 * g.h[1];
        const double half_hx = 0.5 * g.h[0];
        for (std::size_t ey = 0; ey + 1 < g.nodes[1]; ++ey)
            for (std::size_t ex = 0; ex + 1 < g.nodes[0]; ++ex) {
                const std::size_t loc[4] = {g.index(ex, ey), g.index(ex + 1, ey),
                                            g.index(ex, ey + 1), g.index(ex + 1, ey + 1)};
                const double fx = 0.25 * (f_axis[0][loc[0]] + f_axis[0][loc[1]] +
                                          f_axis[0][loc[2]] + f_axis[0][loc[3]]);
                const double fy = 0.25 * (f_axis[1][loc[0]] + f_axis[1][loc[1]] +
                                          f_axis[1][loc[2]] + f_axis[1][loc[3]]);
                load[loc[0]] += -fx * half_hy - fy * half_hx;
                load[loc[1]] += fx * half_hy - fy * half_hx;
                load[loc[2]] += -fx * half_hy + fy * half_hx;
                load[loc[3]] += fx * half_hy + fy * half_hx;
            }
    }
    return load;
}

void condense_dirichlet(SparseOperator& a, const Grid& g) {
    for (std::size_t i = 0; i < a.n; ++i) {
        for (std::size_t k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k) {
            const std::size_t j = a.cols[k];
            if (g.dirichlet[i] || g.dirichlet[j]) a.vals[k] = (i == j) ? 1.0 : 0.0;
        }
    }
}

StepSystem assemble_step_system(const Grid& g, std::span<const double> d_nodal,
                                std::span<const FieldVector> f_axis, double dt) {
    if (!(dt > 0.0)) throw std::invalid_argument("assembly: dt must be > 0");
    StepSystem s;
    s.op = assemble_stiffness(g, d_nodal);
    for (double& v : s.op.vals) v *= dt;
    const FieldVector m = lumped_mass(g);
    for (std::size_t i = 0; i < s.op.n; ++i) add_at(s.op, i, i, m[i]);
    condense_dirichlet(s.op, g);
    s.load = f_axis.empty() ? FieldVector(g.node_count(), 0.0) : flux_load(g, f_axis);
    for (std::size_t i = 0; i < s.load.size(); ++i)
        if (g.dirichlet[i]) s.load[i] = 0.0;
    return s;
}

double l2_inner(std::span<const double> a, std::span<const double> b, const Grid& g) {
    if (a.size() != b.size() || a.size() != g.node_count())
        throw std::invalid_argument("l2_inner: field length mismatch");
    const FieldVector m = lumped_mass(g);
    return kernels::weighted_dot(m, a, b);
}

}  // namespace hystera
