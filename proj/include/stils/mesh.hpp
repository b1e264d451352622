#pragma once

#include <array>
#include <vector>

#include "stils/fields.hpp"
#include "stils/types.hpp"

namespace stils {

struct Extents {
  double x_min = 0.0;
  double x_max = 1.0;
  double y_min = 0.0;
  double y_max = 1.0;
};

enum class Side { left, right, bottom, top };

struct BoundaryEdge {
  Index node_a;
  Index node_b;
  Point normal;  // outward unit normal
  Side side;
  Index element;
};

/// Structured quadrilateral mesh of an axis-aligned rectangle.
///
/// Nodes are numbered lexicographically with x fastest, node (i, j) has index
/// j * (nx + 1) + i. Elements are numbered the same way and list their nodes
/// counter-clockwise starting at the lower-left corner.
struct Grid {
  Index nx = 0;
  Index ny = 0;
  Extents extents;
  std::vector<Point> nodes;
  std::vector<std::array<Index, 4>> elements;
  std::vector<BoundaryEdge> boundary_edges;

  Index num_nodes() const { return static_cast<Index>(nodes.size()); }
  Index num_elements() const { return static_cast<Index>(elements.size()); }
  Index node_index(Index i, Index j) const { return j * (nx + 1) + i; }
  double hx() const { return (extents.x_max - extents.x_min) / static_cast<double>(nx); }
  double hy() const { return (extents.y_max - extents.y_min) / static_cast<double>(ny); }
  /// Largest element side length: the "h" used for tau/h stability ratios.
  double mesh_size() const;
  /// Largest element diameter.
  double max_diameter() const;

  std::array<Point, 4> element_vertices(Index e) const;
};

Grid build_grid(Index nx, Index ny, const Extents& extents);

/// Boundary nodes with at least one adjacent boundary edge whose midpoint flux
/// u.n is below -eps. Sorted ascending.
std::vector<Index> classify_inflow_boundary(const Grid& grid, const VelocityField& velocity,
                                            double t, double eps = 1e-12);

/// Two-subdomain split of the grid along the vertical line x = split_x.
///
/// The interface normal n points from subdomain 1 into subdomain 2. Interface
/// nodes are classified by the sign of u.n at the node.
struct Partition {
  double split_x = 0.0;
  Side first = Side::left;                  // which half is subdomain 1
  Point normal{1.0, 0.0};                   // into subdomain 2
  std::vector<int> subdomain_of_element;    // values in {1, 2}
  std::array<std::vector<Index>, 2> elements_of;
  std::array<std::vector<Index>, 2> nodes_of;  // sorted global node ids
  std::vector<Index> interface_nodes;          // sorted by y
  std::vector<Index> gamma_minus;
  std::vector<Index> gamma_plus;
  std::vector<Index> gamma_zero;

  /// Subdomain-local index of a global node, or -1 if absent.
  Index local_index(int subdomain, Index global) const;

  std::array<std::vector<Index>, 2> global_to_local;
};

/// Splits the grid at x = split_x. `first` selects whether subdomain 1 is the
/// left (n = (1,0)) or right (n = (-1,0)) half.
Partition classify_interface(const Grid& grid, double split_x, const VelocityField& velocity,
                             double t, double eps = 1e-12, Side first = Side::left);

}  // namespace stils
