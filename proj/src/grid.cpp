#include "hystera/grid.hpp"

#include <algorithm>
#include <stdexcept>

namespace hystera {

bool Grid::any_dirichlet() const {
    return std::find(dirichlet.begin(), dirichlet.end(), true) != dirichlet.end();
}

Grid build_grid(double extent_x, std::size_t nodes_x) {
    if (!(extent_x > 0.0)) throw std::invalid_argument("grid: extent must be > 0");
    if (nodes_x < 3) throw std::invalid_argument("grid: need at least 3 nodes per axis");
    Grid g;
    g.dim = 1;
    g.nodes = {nodes_x, 1};
    g.extent = {extent_x, 0.0};
    g.h = {extent_x / static_cast<double>(nodes_x - 1), 0.0};
    g.boundary.assign(nodes_x, false);
    g.boundary.front() = g.boundary.back() = true;
    g.dirichlet = g.boundary;
    return g;
}

Grid build_grid_2d(double extent_x, std::size_t nodes_x, double extent_y,
                   std::size_t nodes_y) {
    if (!(extent_x > 0.0 && extent_y > 0.0))
        throw std::invalid_argument("grid: extent must be > 0");
    if (nodes_x < 3 || nodes_y < 3)
        throw std::invalid_argument("grid: need at least 3 nodes per axis");
    Grid g;
    g.dim = 2;
    g.nodes = {nodes_x, nodes_y};
    g.extent = {extent_x, extent_y};
    g.h = {extent_x / static_cast<double>(nodes_x - 1),
           extent_y / static_cast<double>(nodes_y - 1)};
    g.boundary.assign(nodes_x * nodes_y, false);
    for (std::size_t iy = 0; iy < nodes_y; ++iy)
        for (std::size_t ix = 0; ix < nodes_x; ++ix)
            if (ix == 0 || iy == 0 || ix == nodes_x - 1 || iy == nodes_y - 1)
                g.boundary[g.index(ix, iy)] = true;
    g.dirichlet = g.boundary;
    return g;
}

}  // namespace hystera
