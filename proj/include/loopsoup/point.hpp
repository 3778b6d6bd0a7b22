#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace loopsoup {

// Lattice points of Z^d with runtime dimension (2 <= d <= kMaxDim).
// One experiment fixes d; all geometric types share it.
inline constexpr int kMaxDim = 8;

struct Point {
  std::array<std::int32_t, kMaxDim> c{};
  std::int8_t d = 0;

  Point() = default;
  explicit Point(int dim) : d(static_cast<std::int8_t>(dim)) {
    if (dim < 1 || dim > kMaxDim) throw std::domain_error("Point: dimension out of range");
  }
  Point(std::initializer_list<std::int32_t> v) : d(static_cast<std::int8_t>(v.size())) {
    if (v.size() < 1 || v.size() > kMaxDim) throw std::domain_error("Point: dimension out of range");
    std::copy(v.begin(), v.end(), c.begin());
  }

  int dim() const { return d; }
  std::int32_t& operator[](int i) { return c[static_cast<size_t>(i)]; }
  std::int32_t operator[](int i) const { return c[static_cast<size_t>(i)]; }

  friend bool operator==(const Point& a, const Point& b) {
    if (a.d != b.d) return false;
    for (int i = 0; i < a.d; ++i)
      if (a.c[static_cast<size_t>(i)] != b.c[static_cast<size_t>(i)]) return false;
    return true;
  }
  friend bool operator!=(const Point& a, const Point& b) { return !(a == b); }
  // Lexicographic order; fixes all "smallest vertex" choices and set iteration.
  friend bool operator<(const Point& a, const Point& b) {
    for (int i = 0; i < std::min(a.d, b.d); ++i) {
      if (a.c[static_cast<size_t>(i)] != b.c[static_cast<size_t>(i)])
        return a.c[static_cast<size_t>(i)] < b.c[static_cast<size_t>(i)];
    }
    return a.d < b.d;
  }

  friend Point operator+(const Point& a, const Point& b) {
    Point r(a.dim());
    for (int i = 0; i < a.d; ++i) r.c[static_cast<size_t>(i)] = a.c[static_cast<size_t>(i)] + b.c[static_cast<size_t>(i)];
    return r;
  }
  friend Point operator-(const Point& a, const Point& b) {
    Point r(a.dim());
    for (int i = 0; i < a.d; ++i) r.c[static_cast<size_t>(i)] = a.c[static_cast<size_t>(i)] - b.c[static_cast<size_t>(i)];
    return r;
  }

  std::string str() const {
    std::string s = "(";
    for (int i = 0; i < d; ++i) {
      if (i) s += ",";
      s += std::to_string(c[static_cast<size_t>(i)]);
    }
    return s + ")";
  }
};

inline Point unit_vector(int dim, int axis, std::int32_t sign = 1) {
  Point e(dim);
  e[axis] = sign;
  return e;
}

inline std::int64_t norm_linf(const Point& x) {
  std::int64_t m = 0;
  for (int i = 0; i < x.dim(); ++i) m = std::max<std::int64_t>(m, std::abs(static_cast<std::int64_t>(x[i])));
  return m;
}

inline std::int64_t norm_l1(const Point& x) {
  std::int64_t s = 0;
  for (int i = 0; i < x.dim(); ++i) s += std::abs(static_cast<std::int64_t>(x[i]));
  return s;
}

inline std::int64_t dist_linf(const Point& a, const Point& b) { return norm_linf(a - b); }
inline std::int64_t dist_l1(const Point& a, const Point& b) { return norm_l1(a - b); }

inline bool l1_adjacent(const Point& a, const Point& b) { return dist_l1(a, b) == 1; }

// The 2d lattice neighbors, in a fixed axis-then-sign order (+e1,-e1,+e2,...).
inline std::vector<Point> neighbors(const Point& x) {
  std::vector<Point> out;
  out.reserve(static_cast<size_t>(2 * x.dim()));
  for (int i = 0; i < x.dim(); ++i) {
    for (int s : {+1, -1}) {
      Point y = x;
      y[i] += s;
      out.push_back(y);
    }
  }
  return out;
}

struct PointHash {
  size_t operator()(const Point& p) const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (int i = 0; i < p.dim(); ++i) {
      h ^= static_cast<std::uint64_t>(static_cast<std::uint32_t>(p[i]));
      h *= 0x100000001b3ULL;
      h ^= h >> 29;
    }
    return static_cast<size_t>(h);
  }
};

// Closed l_infty ball (hypercube) centered at `center`.
struct Box {
  Point center;
  std::int32_t radius = 0;

  Box() = default;
  Box(Point c, std::int32_t r) : center(std::move(c)), radius(r) {
    if (r < 0) throw std::domain_error("Box: negative radius");
  }

  int dim() const { return center.dim(); }
  bool contains(const Point& x) const { return dist_linf(x, center) <= radius; }
  std::int64_t cardinality() const {
    std::int64_t n = 1;
    for (int i = 0; i < dim(); ++i) n *= 2 * static_cast<std::int64_t>(radius) + 1;
    return n;
  }

  // Lexicographic enumeration of all points.
  std::vector<Point> points() const {
    std::vector<Point> out;
    out.reserve(static_cast<size_t>(cardinality()));
    Point p(dim());
    for (int i = 0; i < dim(); ++i) p[i] = center[i] - radius;
    for (;;) {
      out.push_back(p);
      int i = dim() - 1;
      while (i >= 0 && p[i] == center[i] + radius) {
        p[i] = center[i] - radius;
        --i;
      }
      if (i < 0) break;
      ++p[i];
    }
    return out;
  }
};

// Canonically sorted finite point set: deterministic iteration order.
class PointSet {
 public:
  PointSet() = default;
  explicit PointSet(std::vector<Point> pts) : pts_(std::move(pts)) {
    std::sort(pts_.begin(), pts_.end());
    pts_.erase(std::unique(pts_.begin(), pts_.end()), pts_.end());
  }

  bool contains(const Point& x) const { return std::binary_search(pts_.begin(), pts_.end(), x); }
  bool empty() const { return pts_.empty(); }
  size_t size() const { return pts_.size(); }
  const std::vector<Point>& points() const { return pts_; }
  auto begin() const { return pts_.begin(); }
  auto end() const { return pts_.end(); }

  friend bool operator==(const PointSet& a, const PointSet& b) { return a.pts_ == b.pts_; }

 private:
  std::vector<Point> pts_;
};

}  // namespace loopsoup
