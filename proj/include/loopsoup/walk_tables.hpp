#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

#include "loopsoup/errors.hpp"
#include "loopsoup/point.hpp"

namespace loopsoup {

// Dense array over the l_infty box [-radius, radius]^d around an origin.
template <typename T>
class BoxField {
 public:
  BoxField() = default;
  BoxField(int d, int radius, Point origin = Point{})
      : d_(d), radius_(radius), origin_(origin.dim() == 0 ? Point(d) : origin) {
    side_ = 2 * radius_ + 1;
    std::int64_t vol = 1;
    for (int i = 0; i < d_; ++i) vol *= side_;
    if (vol > (1LL << 31)) throw resource_error("BoxField: volume guard exceeded");
    vol_ = static_cast<size_t>(vol);
    data_.assign(vol_, T{});
  }

  bool in_range(const Point& p) const { return dist_linf(p, origin_) <= radius_; }

  size_t index(const Point& p) const {
    size_t idx = 0;
    for (int i = 0; i < d_; ++i)
      idx = idx * static_cast<size_t>(side_) + static_cast<size_t>(p[i] - origin_[i] + radius_);
    return idx;
  }

  T at(const Point& p) const { return in_range(p) ? data_[index(p)] : T{}; }
  T& ref(const Point& p) { return data_[index(p)]; }
  const std::vector<T>& raw() const { return data_; }
  std::vector<T>& raw() { return data_; }
  size_t volume() const { return vol_; }
  int radius() const { return radius_; }
  const Point& origin() const { return origin_; }

 private:
  int d_ = 0, radius_ = 0, side_ = 0;
  Point origin_;
  size_t vol_ = 0;
  std::vector<T> data_;
};

// n-step displacement law of the simple random walk:
//   prob(n, v)  = P_0[X_n = v],  count(n, v) = #{n-step walks 0 -> v}.
// Exact integer counts are kept alongside doubles; (2d)^n must fit in int64.
class ReturnTable {
 public:
  ReturnTable() = default;
  ReturnTable(int d, int nmax) : d_(d), nmax_(nmax) {
    // (2d)^nmax must fit in int64 with headroom
    if (static_cast<double>(nmax_) * std::log2(2.0 * d_) > 62.0)
      throw resource_error("ReturnTable: nmax over int64 count guard");
    prob_.reserve(static_cast<size_t>(nmax_ + 1));
    cnt_.reserve(static_cast<size_t>(nmax_ + 1));
    BoxField<std::int64_t> cur(d_, nmax_);
    cur.ref(Point(d_)) = 1;
    push_level(cur);
    for (int n = 1; n <= nmax_; ++n) {
      BoxField<std::int64_t> nxt(d_, nmax_);
      step(cur, nxt, n);
      cur = std::move(nxt);
      push_level(cur);
    }
  }

  int dim() const { return d_; }
  int nmax() const { return nmax_; }

  double prob(int n, const Point& v) const {
    if (n < 0 || n > nmax_) return 0.0;
    return prob_[static_cast<size_t>(n)].at(v);
  }
  std::int64_t count(int n, const Point& v) const {
    if (n < 0 || n > nmax_) return 0;
    return cnt_[static_cast<size_t>(n)].at(v);
  }
  double return_prob(int n) const { return prob(n, Point(d_)); }
  std::int64_t return_count(int n) const { return count(n, Point(d_)); }

 private:
  void step(const BoxField<std::int64_t>& cur, BoxField<std::int64_t>& nxt, int n) const {
    Point p(d_);
    iterate(p, 0, n, [&](const Point& q) {
      std::int64_t s = 0;
      for (const Point& w : neighbors(q)) s += cur.at(w);
      if (s) nxt.ref(q) = s;
    });
  }

  template <typename F>
  void iterate(Point& p, int axis, int n, F&& f) const {
    if (axis == d_) {
      if (norm_l1(p) <= n) f(p);
      return;
    }
    for (int v = -nmax_; v <= nmax_; ++v) {
      p[axis] = v;
      iterate(p, axis + 1, n, f);
    }
  }

  void push_level(const BoxField<std::int64_t>& counts) {
    cnt_.push_back(counts);
    BoxField<double> pr(d_, nmax_);
    const double norm = std::pow(static_cast<double>(2 * d_), static_cast<double>(cnt_.size() - 1));
    for (size_t i = 0; i < counts.volume(); ++i)
      pr.raw()[i] = static_cast<double>(counts.raw()[i]) / norm;
    prob_.push_back(std::move(pr));
  }

  int d_ = 0, nmax_ = 0;
  std::vector<BoxField<double>> prob_;
  std::vector<BoxField<std::int64_t>> cnt_;
};

// Backward bridge tables for one (root, n, window):
//   f(m, z) = P_z[X_m = root, X_0..X_{m-1} all avoid the window].
// Levels live on the box of radius n/2+1 around the root; every state a
// return bridge can reach is exact there (its completions stay within
// l1 distance (m + dist)/2 <= n/2 + 1 of the root).
template <typename T>
class AvoidTable {
 public:
  AvoidTable(int d, int n, const Point& root, const std::function<bool(const Point&)>& in_window,
             T one)
      : d_(d), n_(n), root_(root) {
    const int rb = n / 2 + 1;
    levels_.reserve(static_cast<size_t>(n_ + 1));
    BoxField<T> f0(d_, rb, root_);
    f0.ref(root_) = one;
    levels_.push_back(f0);
    for (int m = 1; m <= n_; ++m) {
      BoxField<T> fm(d_, rb, root_);
      Point p(d_);
      iterate(p, 0, rb, [&](const Point& q) {
        if (in_window(q)) return;  // killed before completing
        T s{};
        for (const Point& w : neighbors(q)) s += levels_.back().at(w);
        if (!(s == T{})) fm.ref(q) = s;
      });
      levels_.push_back(std::move(fm));
    }
  }

  // Value is a walk count; divide by (2d)^m for the probability.
  T at(int m, const Point& z) const {
    if (m < 0 || m > n_) return T{};
    return levels_[static_cast<size_t>(m)].at(z);
  }

 private:
  template <typename F>
  void iterate(Point& p, int axis, int rb, F&& f) const {
    if (axis == d_) {
      f(p);
      return;
    }
    for (int v = root_[axis] - rb; v <= root_[axis] + rb; ++v) {
      p[axis] = v;
      iterate(p, axis + 1, rb, f);
    }
  }

  int d_ = 0, n_ = 0;
  Point root_;
  std::vector<BoxField<T>> levels_;
};

}  // namespace loopsoup
