#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "loopsoup/errors.hpp"
#include "loopsoup/point.hpp"

namespace loopsoup {

// Renormalized lattice G_k = spacing * Z^d.
struct RenormLattice {
  int level = 0;
  std::int64_t spacing = 1;

  RenormLattice() = default;
  RenormLattice(int lvl, std::int64_t sp) : level(lvl), spacing(sp) {
    if (lvl < 0 || sp < 1) throw std::domain_error("RenormLattice: bad level/spacing");
  }

  bool contains(const Point& x) const {
    for (int i = 0; i < x.dim(); ++i)
      if (x[i] % spacing != 0) return false;
    return true;
  }
};

// { y in A : some l1-neighbor of y is outside A }
inline PointSet interior_boundary(const PointSet& a) {
  std::vector<Point> out;
  for (const Point& y : a) {
    for (const Point& z : neighbors(y)) {
      if (!a.contains(z)) {
        out.push_back(y);
        break;
      }
    }
  }
  return PointSet(std::move(out));
}

// { y not in A : some l1-neighbor of y is in A }
inline PointSet exterior_boundary(const PointSet& a) {
  std::vector<Point> out;
  for (const Point& y : a) {
    for (const Point& z : neighbors(y)) {
      if (!a.contains(z)) out.push_back(z);
    }
  }
  return PointSet(std::move(out));
}

inline PointSet interior_boundary(const Box& b) {
  std::vector<Point> out;
  if (b.radius == 0) return PointSet({b.center});
  for (const Point& p : b.points()) {
    if (dist_linf(p, b.center) == b.radius) out.push_back(p);
  }
  return PointSet(std::move(out));
}

// Exterior boundary of a cube: the face-adjacent shell (no edge/corner points).
inline PointSet exterior_boundary(const Box& b) {
  std::vector<Point> out;
  for (const Point& p : b.points()) {
    for (const Point& z : neighbors(p)) {
      if (!b.contains(z)) out.push_back(z);
    }
  }
  return PointSet(std::move(out));
}

// The 3^d - 1 points of `lattice` at l_infty distance exactly one spacing from x.
inline PointSet star_neighbors(const Point& x, const RenormLattice& lattice) {
  if (!lattice.contains(x)) throw std::domain_error("star_neighbors: point not on lattice");
  std::vector<Point> out;
  Point delta(x.dim());
  const std::int32_t sp = static_cast<std::int32_t>(lattice.spacing);
  for (int i = 0; i < x.dim(); ++i) delta[i] = -sp;
  for (;;) {
    bool all_zero = true;
    for (int i = 0; i < x.dim(); ++i)
      if (delta[i] != 0) all_zero = false;
    if (!all_zero) out.push_back(x + delta);
    int i = x.dim() - 1;
    while (i >= 0 && delta[i] == sp) {
      delta[i] = -sp;
      --i;
    }
    if (i < 0) break;
    delta[i] += sp;
  }
  return PointSet(std::move(out));
}

// Floor division towards -infinity.
inline std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

// The unique x' in G_0 = L0*Z^d with x in B(x', R), L0 = 2R+1 odd.
inline Point box_partition_cell(const Point& x, std::int64_t l0) {
  if (l0 < 3 || l0 % 2 == 0) throw config_error("box_partition_cell: L0 must be odd and >= 3");
  const std::int64_t r = (l0 - 1) / 2;
  Point cell(x.dim());
  for (int i = 0; i < x.dim(); ++i) {
    cell[i] = static_cast<std::int32_t>(l0 * floor_div(x[i] + r, l0));
  }
  return cell;
}

}  // namespace loopsoup
