#pragma once

#include "fissura/superposition.hpp"

#include <array>
#include <optional>
#include <ostream>
#include <utility>
#include <vector>

namespace fissura {

enum class Face { east = 0, north = 1, west = 2, south = 3 };

/// Square-cell grid of a fissured system; a cell without a crack is isotropic.
struct FissureGrid {
  int nx = 1;
  int ny = 1;
  double cell_size = 1.0;
  std::vector<std::optional<GlobalDirectionSpace>> cells;  // row-major, y * nx + x

  FissureGrid() = default;
  FissureGrid(int nx, int ny, double cell_size);

  int index(int x, int y) const { return y * nx + x; }
  std::size_t size() const { return static_cast<std::size_t>(nx) * ny; }
  /// Neighbor across `face`, or -1 on the grid boundary.
  int neighbor(int cell, Face face) const;
};

/// Exit-face probabilities for rays cast from the centroid of a square cell
/// along each sample's horizontal projection. Vertical or zero directions
/// spread over the existing neighbor faces; mass on faces without a neighbor
/// is moved proportionally onto faces with one.
/// Throws NoNeighbors when no face has a neighbor.
std::array<double, 4> cell_transmission(const GlobalDirectionSpace& space, const std::array<bool, 4>& has_neighbor);

struct TransmissionMatrix {
  int n = 0;
  std::vector<std::vector<std::pair<int, double>>> rows;  // sorted by column

  double entry(int i, int j) const;
  /// Largest |row sum - 1|.
  double max_row_error() const;
  /// Empty when the row-stochastic, zero-diagonal, adjacency constraints hold.
  std::vector<std::string> check(const FissureGrid& grid) const;
  void write_matrix_market(std::ostream& os) const;
};

/// Throws NoNeighbors for a 1x1 grid.
TransmissionMatrix build_matrix(const FissureGrid& grid);

struct StationaryResult {
  std::vector<double> pi;
  bool converged = false;
  int iterations = 0;
  double residual = 0.0;  // || pi P - pi ||_1
};

/// Power iteration pi <- pi P from `start` (uniform when empty) until the
/// L1 change drops below tol or max_iter steps; periodic chains may not converge.
StationaryResult stationary(const TransmissionMatrix& p, double tol = 1e-12, int max_iter = 10000,
                            std::vector<double> start = {});

}  // namespace fissura
