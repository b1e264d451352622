#include "stils/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace stils {

double Grid::mesh_size() const { return std::max(hx(), hy()); }

double Grid::max_diameter() const { return std::hypot(hx(), hy()); }

std::array<Point, 4> Grid::element_vertices(Index e) const {
  const auto& conn = elements[static_cast<std::size_t>(e)];
  return {nodes[conn[0]], nodes[conn[1]], nodes[conn[2]], nodes[conn[3]]};
}

Grid build_grid(Index nx, Index ny, const Extents& extents) {
  if (nx < 1 || ny < 1) throw std::invalid_argument("grid needs at least one element per axis");
  if (!(extents.x_min < extents.x_max) || !(extents.y_min < extents.y_max))
    throw std::invalid_argument("degenerate grid extents");

  Grid grid;
  grid.nx = nx;
  grid.ny = ny;
  grid.extents = extents;

  const double hx = grid.hx();
  const double hy = grid.hy();
  grid.nodes.reserve(static_cast<std::size_t>((nx + 1) * (ny + 1)));
  for (Index j = 0; j <= ny; ++j) {
    // Pin the last line to the exact extent so the boundary is not perturbed
    // by accumulated rounding.
    const double y = (j == ny) ? extents.y_max : extents.y_min + static_cast<double>(j) * hy;
    for (Index i = 0; i <= nx; ++i) {
      const double x = (i == nx) ? extents.x_max : extents.x_min + static_cast<double>(i) * hx;
      grid.nodes.emplace_back(x, y);
    }
  }

  grid.elements.reserve(static_cast<std::size_t>(nx * ny));
  for (Index j = 0; j < ny; ++j) {
    for (Index i = 0; i < nx; ++i) {
      grid.elements.push_back({grid.node_index(i, j), grid.node_index(i + 1, j),
                               grid.node_index(i + 1, j + 1), grid.node_index(i, j + 1)});
    }
  }

  auto element_at = [nx](Index i, Index j) { return j * nx + i; };
  for (Index i = 0; i < nx; ++i) {
    grid.boundary_edges.push_back({grid.node_index(i, 0), grid.node_index(i + 1, 0),
                                   Point{0.0, -1.0}, Side::bottom, element_at(i, 0)});
  }
  for (Index j = 0; j < ny; ++j) {
    grid.boundary_edges.push_back({grid.node_index(nx, j), grid.node_index(nx, j + 1),
                                   Point{1.0, 0.0}, Side::right, element_at(nx - 1, j)});
  }
  for (Index i = nx; i > 0; --i) {
    grid.boundary_edges.push_back({grid.node_index(i, ny), grid.node_index(i - 1, ny),
                                   Point{0.0, 1.0}, Side::top, element_at(i - 1, ny - 1)});
  }
  for (Index j = ny; j > 0; --j) {
    grid.boundary_edges.push_back({grid.node_index(0, j), grid.node_index(0, j - 1),
                                   Point{-1.0, 0.0}, Side::left, element_at(0, j - 1)});
  }
  return grid;
}

std::vector<Index> classify_inflow_boundary(const Grid& grid, const VelocityField& velocity,
                                            double t, double eps) {
  std::vector<char> inflow(static_cast<std::size_t>(grid.num_nodes()), 0);
  for (const auto& edge : grid.boundary_edges) {
    const Point mid = 0.5 * (grid.nodes[edge.node_a] + grid.nodes[edge.node_b]);
    if (velocity(mid, t).dot(edge.normal) < -eps) {
      inflow[edge.node_a] = 1;
      inflow[edge.node_b] = 1;
    }
  }
  std::vector<Index> result;
  for (Index n = 0; n < grid.num_nodes(); ++n)
    if (inflow[n]) result.push_back(n);
  return result;
}

Index Partition::local_index(int subdomain, Index global) const {
  const auto& map = global_to_local[static_cast<std::size_t>(subdomain - 1)];
  if (global < 0 || global >= static_cast<Index>(map.size())) return -1;
  return map[static_cast<std::size_t>(global)];
}

Partition classify_interface(const Grid& grid, double split_x, const VelocityField& velocity,
                             double t, double eps, Side first) {
  if (first != Side::left && first != Side::right)
    throw std::invalid_argument("subdomain 1 must be the left or right half");

  const double hx = grid.hx();
  const double offset = (split_x - grid.extents.x_min) / hx;
  const Index column = static_cast<Index>(std::llround(offset));
  if (std::abs(offset - static_cast<double>(column)) > 1e-9 || column <= 0 || column >= grid.nx)
    throw std::invalid_argument("interface abscissa " + std::to_string(split_x) +
                                " is not an interior grid line");

  Partition part;
  part.split_x = grid.nodes[grid.node_index(column, 0)].x();
  part.first = first;
  part.normal = (first == Side::left) ? Point{1.0, 0.0} : Point{-1.0, 0.0};

  part.subdomain_of_element.resize(static_cast<std::size_t>(grid.num_elements()));
  std::array<std::vector<char>, 2> has_node;
  for (auto& flags : has_node) flags.assign(static_cast<std::size_t>(grid.num_nodes()), 0);
  for (Index e = 0; e < grid.num_elements(); ++e) {
    const bool left = (e % grid.nx) < column;
    const int sub = (left == (first == Side::left)) ? 1 : 2;
    part.subdomain_of_element[e] = sub;
    part.elements_of[sub - 1].push_back(e);
    for (Index n : grid.elements[e]) has_node[sub - 1][n] = 1;
  }
  for (int s = 0; s < 2; ++s) {
    auto& map = part.global_to_local[s];
    map.assign(static_cast<std::size_t>(grid.num_nodes()), -1);
    for (Index n = 0; n < grid.num_nodes(); ++n) {
      if (has_node[s][n]) {
        map[n] = static_cast<Index>(part.nodes_of[s].size());
        part.nodes_of[s].push_back(n);
      }
    }
  }

  for (Index j = 0; j <= grid.ny; ++j) {
    const Index n = grid.node_index(column, j);
    part.interface_nodes.push_back(n);
    const double flux = velocity(grid.nodes[n], t).dot(part.normal);
    if (flux < -eps)
      part.gamma_minus.push_back(n);
    else if (flux > eps)
      part.gamma_plus.push_back(n);
    else
      part.gamma_zero.push_back(n);
  }
  return part;
}

}  // namespace stils
