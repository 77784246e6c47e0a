#include "fissura/network.hpp"

#include "fissura/errors.hpp"
#include "fissura/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>

namespace fissura {

FissureGrid::FissureGrid(int nx_, int ny_, double cell_size_) : nx(nx_), ny(ny_), cell_size(cell_size_) {
  if (nx < 1 || ny < 1) throw InvalidMesh("grid dimensions must be at least 1x1");
  if (!(cell_size > 0.0)) throw InvalidMesh("cell size must be positive");
  cells.resize(size());
}

int FissureGrid::neighbor(int cell, Face face) const {
  const int x = cell % nx, y = cell / nx;
  switch (face) {
    case Face::east: return x + 1 < nx ? index(x + 1, y) : -1;
    case Face::west: return x > 0 ? index(x - 1, y) : -1;
    case Face::north: return y + 1 < ny ? index(x, y + 1) : -1;
    case Face::south: return y > 0 ? index(x, y - 1) : -1;
  }
  return -1;
}

std::array<double, 4> cell_transmission(const GlobalDirectionSpace& space, const std::array<bool, 4>& has_neighbor) {
  const int open = int(has_neighbor[0]) + int(has_neighbor[1]) + int(has_neighbor[2]) + int(has_neighbor[3]);
  if (open == 0) throw NoNeighbors("cell has no neighboring cells");
  std::array<double, 4> face{0, 0, 0, 0};
  double isotropic = 0.0;
  for (const auto& s : space.samples) {
    const double dx = s.dir.x(), dy = s.dir.y();
    if (std::hypot(dx, dy) < 1e-12) {
      isotropic += s.probability;
      continue;
    }
    // A ray from the centre of a square leaves through the face of the dominant component.
    const double ax = std::abs(dx), ay = std::abs(dy);
    const int fx = dx > 0 ? 0 : 2;
    const int fy = dy > 0 ? 1 : 3;
    if (ax > ay) {
      face[fx] += s.probability;
    } else if (ay > ax) {
      face[fy] += s.probability;
    } else {
      face[fx] += 0.5 * s.probability;
      face[fy] += 0.5 * s.probability;
    }
  }
  double inner = 0.0, total = isotropic;
  for (int f = 0; f < 4; ++f) {
    total += face[f];
    if (has_neighbor[f]) inner += face[f];
  }
  std::array<double, 4> out{0, 0, 0, 0};
  const double lost = total - inner - isotropic;
  for (int f = 0; f < 4; ++f) {
    if (!has_neighbor[f]) continue;
    out[f] = face[f] + isotropic / open;
    // Boundary-face mass follows the interior split; with none, it spreads evenly.
    out[f] += inner > 0.0 ? lost * face[f] / inner : lost / open;
  }
  double sum = out[0] + out[1] + out[2] + out[3];
  for (double& v : out) v /= sum;
  return out;
}

double TransmissionMatrix::entry(int i, int j) const {
  for (const auto& [c, v] : rows[i])
    if (c == j) return v;
  return 0.0;
}

double TransmissionMatrix::max_row_error() const {
  double worst = 0.0;
  for (const auto& row : rows) {
    double s = 0.0;
    for (const auto& e : row) s += e.second;
    worst = std::max(worst, std::abs(s - 1.0));
  }
  return worst;
}

std::vector<std::string> TransmissionMatrix::check(const FissureGrid& grid) const {
  std::vector<std::string> problems;
  for (int i = 0; i < n; ++i) {
    double s = 0.0;
    int nonzero = 0;
    for (const auto& [j, v] : rows[i]) {
      s += v;
      if (v < 0.0) problems.push_back("negative entry in row " + std::to_string(i));
      if (v != 0.0) ++nonzero;
      if (j == i && v != 0.0) problems.push_back("nonzero diagonal in row " + std::to_string(i));
      bool adjacent = false;
      for (Face f : {Face::east, Face::north, Face::west, Face::south}) adjacent |= grid.neighbor(i, f) == j;
      if (!adjacent && v != 0.0) problems.push_back("non-adjacent entry in row " + std::to_string(i));
    }
    if (nonzero > 4) problems.push_back("more than 4 nonzeros in row " + std::to_string(i));
    if (std::abs(s - 1.0) > 1e-12) problems.push_back("row " + std::to_string(i) + " does not sum to 1");
  }
  return problems;
}

void TransmissionMatrix::write_matrix_market(std::ostream& os) const {
  std::size_t nnz = 0;
  for (const auto& row : rows) nnz += row.size();
  os << "%%MatrixMarket matrix coordinate real general\n";
  os << n << ' ' << n << ' ' << nnz << '\n';
  os << std::setprecision(17);
  for (int i = 0; i < n; ++i)
    for (const auto& [j, v] : rows[i]) os << i + 1 << ' ' << j + 1 << ' ' << v << '\n';
}

TransmissionMatrix build_matrix(const FissureGrid& grid) {
  if (grid.size() == 0) throw InvalidMesh("empty grid");
  if (grid.size() == 1) throw NoNeighbors("a 1x1 grid has no neighboring cells");
  TransmissionMatrix m;
  m.n = static_cast<int>(grid.size());
  m.rows.resize(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) {
    const int cell = static_cast<int>(i);
    const std::array<Face, 4> faces{Face::east, Face::north, Face::west, Face::south};
    std::array<bool, 4> has{};
    for (int f = 0; f < 4; ++f) has[f] = grid.neighbor(cell, faces[f]) >= 0;
    std::array<double, 4> p{};
    if (grid.cells[i]) {
      p = cell_transmission(*grid.cells[i], has);
    } else {
      const int open = int(has[0]) + int(has[1]) + int(has[2]) + int(has[3]);
      for (int f = 0; f < 4; ++f) p[f] = has[f] ? 1.0 / open : 0.0;
    }
    for (int f = 0; f < 4; ++f)
      if (has[f] && p[f] > 0.0) m.rows[i].emplace_back(grid.neighbor(cell, faces[f]), p[f]);
    std::sort(m.rows[i].begin(), m.rows[i].end());
  });
  return m;
}

StationaryResult stationary(const TransmissionMatrix& p, double tol, int max_iter, std::vector<double> start) {
  StationaryResult r;
  const std::size_t n = static_cast<std::size_t>(p.n);
  r.pi = start.empty() ? std::vector<double>(n, 1.0 / static_cast<double>(n)) : std::move(start);
  std::vector<double> next(n);
  auto step = [&]() {
    std::fill(next.begin(), next.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (const auto& [j, v] : p.rows[i]) next[j] += r.pi[i] * v;
    double diff = 0.0;
    for (std::size_t i = 0; i < n; ++i) diff += std::abs(next[i] - r.pi[i]);
    return diff;
  };
  for (r.iterations = 0; r.iterations < max_iter; ++r.iterations) {
    r.residual = step();
    if (r.residual < tol) {
      r.converged = true;
      break;
    }
    r.pi.swap(next);
  }
  if (!r.converged) r.residual = step();
  double s = 0.0;
  for (double v : r.pi) s += v;
  for (double& v : r.pi) v /= s;
  return r;
}

}  // namespace fissura
