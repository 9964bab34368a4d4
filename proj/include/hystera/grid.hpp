#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace hystera {

using FieldVector = std::vector<double>;

/// Uniform tensor-product mesh on a box, 1D interval or 2D rectangle, with
/// P1/Q1 nodes. Geometric boundary nodes are always marked; the Dirichlet
/// mask defaults to the whole boundary and can be cleared for closed-column
/// (pure no-flux) runs.
struct Grid {
    int dim = 1;
    std::array<std::size_t, 2> nodes{3, 1};   // nodes per axis
    std::array<double, 2> extent{1.0, 1.0};
    std::array<double, 2> h{0.5, 0.0};

    std::vector<bool> boundary;   // geometric boundary nodes
    std::vector<bool> dirichlet;  // nodes with pinned u = 0

    std::size_t node_count() const { return nodes[0] * (dim == 2 ? nodes[1] : 1); }
    std::size_t index(std::size_t ix, std::size_t iy = 0) const {
        return ix + nodes[0] * iy;
    }
    double x_of(std::size_t i) const { return h[0] * static_cast<double>(i % nodes[0]); }
    double y_of(std::size_t i) const {
        return dim == 2 ? h[1] * static_cast<double>(i / nodes[0]) : 0.0;
    }

    void set_dirichlet_none() { dirichlet.assign(node_count(), false); }
    void set_dirichlet_all_boundary() { dirichlet = boundary; }
    bool any_dirichlet() const;
};

Grid build_grid(double extent_x, std::size_t nodes_x);
Grid build_grid_2d(double extent_x, std::size_t nodes_x, double extent_y,
                   std::size_t nodes_y);

}  // namespace hystera
