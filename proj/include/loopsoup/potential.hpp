#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include "loopsoup/errors.hpp"
#include "loopsoup/lattice.hpp"
#include "loopsoup/point.hpp"
#include "loopsoup/rng.hpp"
#include "loopsoup/walk_tables.hpp"

namespace loopsoup {

// Finite solve region for Z^d quantities: walk killed on the absorbing set
// and on exiting the carrier box. Truncation bias is O(R_carrier^{2-d}) and
// is reported alongside extrapolated values.
class KilledDomain {
 public:
  KilledDomain() = default;
  KilledDomain(Box carrier, PointSet absorbing = PointSet{})
      : carrier_(std::move(carrier)), absorbing_(std::move(absorbing)) {
    for (const Point& p : absorbing_)
      if (!carrier_.contains(p)) throw std::domain_error("KilledDomain: absorbing set outside carrier");
  }

  const Box& carrier() const { return carrier_; }
  const PointSet& absorbing() const { return absorbing_; }
  int dim() const { return carrier_.dim(); }
  bool interior(const Point& p) const { return carrier_.contains(p) && !absorbing_.contains(p); }

 private:
  Box carrier_;
  PointSet absorbing_;
};

struct SolveOptions {
  double tol = 1e-12;      // max-norm residual of (I - P)u = rhs
  long max_sweeps = 200000;
  int check_every = 8;
  double omega = 0.0;      // 0 -> auto from box side
};

struct SolveReport {
  long sweeps = 0;
  double residual = 0.0;
};

// SOR sweep solver for (I - P)u = rhs, u fixed on absorbing cells, u = 0
// outside the carrier. The operator is substochastic, so plain relaxation
// converges; omega is tuned from the box side as for the Dirichlet Laplacian.
class HarmonicSolver {
 public:
  explicit HarmonicSolver(const KilledDomain& dom) : dom_(dom), d_(dom.dim()) {
    const Box& b = dom.carrier();
    side_ = 2 * b.radius + 1;
    vol_ = 1;
    for (int i = 0; i < d_; ++i) vol_ *= static_cast<size_t>(side_);
    if (vol_ > (1ULL << 31)) throw resource_error("HarmonicSolver: carrier too large");
    stride_.assign(static_cast<size_t>(d_), 1);
    for (int i = d_ - 2; i >= 0; --i) stride_[static_cast<size_t>(i)] = stride_[static_cast<size_t>(i + 1)] * static_cast<size_t>(side_);
    fixed_.assign(vol_, 0);
    for (const Point& p : dom.absorbing()) fixed_[index(p)] = 1;
  }

  size_t index(const Point& p) const {
    size_t idx = 0;
    const Box& b = dom_.carrier();
    for (int i = 0; i < d_; ++i)
      idx += stride_[static_cast<size_t>(i)] * static_cast<size_t>(p[i] - b.center[i] + b.radius);
    return idx;
  }

  Point point_at(size_t idx) const {
    const Box& b = dom_.carrier();
    Point p(d_);
    for (int i = 0; i < d_; ++i) {
      p[i] = static_cast<std::int32_t>(idx / stride_[static_cast<size_t>(i)]) % side_ - b.radius + b.center[i];
    }
    return p;
  }

  // rhs and boundary values are sparse: (point, value) lists.
  BoxField<double> solve(const std::vector<std::pair<Point, double>>& rhs,
                         const std::vector<std::pair<Point, double>>& boundary,
                         const SolveOptions& opt = SolveOptions{}, SolveReport* report = nullptr) const {
    std::vector<double> u(vol_, 0.0), f(vol_, 0.0);
    for (const auto& [p, v] : rhs) {
      if (!dom_.interior(p)) throw std::domain_error("solve: rhs on absorbed cell " + p.str());
      f[index(p)] = v;
    }
    for (const auto& [p, v] : boundary) {
      if (!fixed_[index(p)]) throw std::domain_error("solve: boundary value on free cell " + p.str());
      u[index(p)] = v;
    }

    const double omega = opt.omega > 0.0 ? opt.omega : 2.0 / (1.0 + std::sin(M_PI / (side_ + 1)));
    const double inv2d = 1.0 / static_cast<double>(2 * d_);
    long sweeps = 0;
    double res = 0.0;
    for (;;) {
      for (int s = 0; s < opt.check_every; ++s) {
        sweep(u, f, omega, inv2d);
        ++sweeps;
      }
      res = residual(u, f, inv2d);
      if (res <= opt.tol) break;
      if (sweeps >= opt.max_sweeps)
        throw numerical_error("HarmonicSolver: no convergence, residual " + std::to_string(res));
    }
    if (report) {
      report->sweeps = sweeps;
      report->residual = res;
    }

    BoxField<double> out(d_, dom_.carrier().radius, dom_.carrier().center);
    out.raw() = std::move(u);
    return out;
  }

 private:
  // In-place lexicographic SOR pass.
  void sweep(std::vector<double>& u, const std::vector<double>& f, double omega, double inv2d) const {
    const Box& b = dom_.carrier();
    Point p(d_);
    for (int i = 0; i < d_; ++i) p[i] = b.center[i] - b.radius;
    for (size_t idx = 0; idx < vol_; ++idx) {
      if (!fixed_[idx]) {
        double s = 0.0;
        for (int i = 0; i < d_; ++i) {
          if (p[i] > b.center[i] - b.radius) s += u[idx - stride_[static_cast<size_t>(i)]];
          if (p[i] < b.center[i] + b.radius) s += u[idx + stride_[static_cast<size_t>(i)]];
        }
        const double gs = f[idx] + inv2d * s;
        u[idx] += omega * (gs - u[idx]);
      }
      int i = d_ - 1;
      while (i >= 0 && p[i] == b.center[i] + b.radius) p[i--] = b.center[i] - b.radius;
      if (i >= 0) ++p[i];
    }
  }

  double residual(const std::vector<double>& u, const std::vector<double>& f, double inv2d) const {
    const Box& b = dom_.carrier();
    Point p(d_);
    for (int i = 0; i < d_; ++i) p[i] = b.center[i] - b.radius;
    double worst = 0.0;
    for (size_t idx = 0; idx < vol_; ++idx) {
      if (!fixed_[idx]) {
        double s = 0.0;
        for (int i = 0; i < d_; ++i) {
          if (p[i] > b.center[i] - b.radius) s += u[idx - stride_[static_cast<size_t>(i)]];
          if (p[i] < b.center[i] + b.radius) s += u[idx + stride_[static_cast<size_t>(i)]];
        }
        worst = std::max(worst, std::fabs(f[idx] + inv2d * s - u[idx]));
      }
      int i = d_ - 1;
      while (i >= 0 && p[i] == b.center[i] + b.radius) p[i--] = b.center[i] - b.radius;
      if (i >= 0) ++p[i];
    }
    return worst;
  }

  const KilledDomain dom_;
  int d_, side_ = 0;
  size_t vol_ = 0;
  std::vector<size_t> stride_;
  std::vector<std::uint8_t> fixed_;
};

// g(., y): expected visits to y, walk killed on the domain's absorbing set.
inline BoxField<double> green_field(const KilledDomain& dom, const Point& y,
                                    const SolveOptions& opt = SolveOptions{}) {
  if (!dom.interior(y)) throw std::domain_error("green: source absorbed " + y.str());
  HarmonicSolver solver(dom);
  return solver.solve({{y, 1.0}}, {}, opt);
}

inline double green(const KilledDomain& dom, const Point& x, const Point& y,
                    const SolveOptions& opt = SolveOptions{}) {
  if (!dom.interior(x)) throw std::domain_error("green: argument absorbed " + x.str());
  return green_field(dom, y, opt).at(x);
}

// P_.[H_A < killing]: Dirichlet value 1 on A.
inline BoxField<double> hitting_prob_field(const KilledDomain& dom, const PointSet& a,
                                           const SolveOptions& opt = SolveOptions{}) {
  std::vector<Point> abs(dom.absorbing().points());
  for (const Point& p : a) {
    if (!dom.carrier().contains(p)) throw std::domain_error("hitting_prob: target outside carrier");
    abs.push_back(p);
  }
  KilledDomain dom2(dom.carrier(), PointSet(std::move(abs)));
  HarmonicSolver solver(dom2);
  std::vector<std::pair<Point, double>> bc;
  bc.reserve(a.size());
  for (const Point& p : a) bc.emplace_back(p, 1.0);
  return solver.solve({}, bc, opt);
}

inline double hitting_prob(const KilledDomain& dom, const Point& x, const PointSet& a,
                           const SolveOptions& opt = SolveOptions{}) {
  if (a.empty()) return 0.0;
  if (a.contains(x)) return 1.0;
  if (!dom.interior(x)) throw std::domain_error("hitting_prob: start absorbed");
  return hitting_prob_field(dom, a, opt).at(x);
}

struct HittingKernel {
  PointSet source;  // A
  PointSet target;  // B
  std::vector<double> entries;  // row-major, |A| x |B|

  double at(size_t i, size_t j) const { return entries[i * target.size() + j]; }
  double row_sum(size_t i) const {
    double s = 0.0;
    for (size_t j = 0; j < target.size(); ++j) s += at(i, j);
    return s;
  }
};

// entries(a,b) = P_a[H_B < killing, X_{H_B} = b], via the first-entrance
// decomposition H(a,b) = sum_{z ~ b, z notin B} G_{notB}(a,z)/2d.
// One Green solve per source point.
inline HittingKernel hitting_kernel(const KilledDomain& dom, const PointSet& a, const PointSet& b,
                                    const SolveOptions& opt = SolveOptions{}) {
  for (const Point& p : a)
    if (b.contains(p)) throw std::domain_error("hitting_kernel: A and B overlap");
  std::vector<Point> abs(dom.absorbing().points());
  for (const Point& p : b) abs.push_back(p);
  KilledDomain killed_b(dom.carrier(), PointSet(std::move(abs)));

  HittingKernel k;
  k.source = a;
  k.target = b;
  k.entries.assign(a.size() * b.size(), 0.0);
  const double inv2d = 1.0 / static_cast<double>(2 * dom.dim());
  for (size_t i = 0; i < a.size(); ++i) {
    const Point& src = a.points()[i];
    if (!killed_b.interior(src)) throw std::domain_error("hitting_kernel: source absorbed");
    BoxField<double> g = green_field(killed_b, src, opt);
    for (size_t j = 0; j < b.size(); ++j) {
      const Point& tgt = b.points()[j];
      double s = 0.0;
      for (const Point& z : neighbors(tgt)) {
        if (killed_b.interior(z)) s += g.at(z);
      }
      k.entries[i * b.size() + j] = s * inv2d;
    }
  }
  return k;
}

struct EquilibriumMeasure {
  PointSet support;             // A
  std::vector<double> weights;  // aligned with support.points()
  double total = 0.0;           // cap(A) on the truncated domain

  double at(const Point& p) const {
    const auto& pts = support.points();
    auto it = std::lower_bound(pts.begin(), pts.end(), p);
    if (it == pts.end() || !(*it == p)) return 0.0;
    return weights[static_cast<size_t>(it - pts.begin())];
  }
};

// e_A(y) = P_y[no return to A before killing], y in A. Computed as the
// one-step escape average of the complement hitting probability.
inline EquilibriumMeasure equilibrium_measure(const KilledDomain& dom, const PointSet& a,
                                              const SolveOptions& opt = SolveOptions{}) {
  if (a.empty()) throw std::domain_error("equilibrium_measure: empty set");
  BoxField<double> h = hitting_prob_field(dom, a, opt);
  const double inv2d = 1.0 / static_cast<double>(2 * dom.dim());
  EquilibriumMeasure e;
  e.support = a;
  e.weights.assign(a.size(), 0.0);
  for (size_t i = 0; i < a.size(); ++i) {
    double esc = 0.0;
    for (const Point& z : neighbors(a.points()[i])) {
      if (a.contains(z)) continue;
      if (!dom.carrier().contains(z) || dom.absorbing().contains(z)) {
        esc += 1.0;  // killed immediately: never returns
      } else {
        esc += 1.0 - h.at(z);
      }
    }
    e.weights[i] = esc * inv2d;
    e.total += e.weights[i];
  }
  return e;
}

inline double capacity(const KilledDomain& dom, const PointSet& a,
                       const SolveOptions& opt = SolveOptions{}) {
  return equilibrium_measure(dom, a, opt).total;
}

// Walk from x conditioned to first enter A at y (h-transform, exact law).
inline std::vector<Point> bridge_sample(const KilledDomain& dom, const Point& x, const Point& y,
                                        const PointSet& a, RngStream& rng,
                                        const SolveOptions& opt = SolveOptions{}) {
  if (a.contains(x)) throw std::domain_error("bridge_sample: start inside A");
  if (!a.contains(y)) throw std::domain_error("bridge_sample: target not in A");

  std::vector<Point> abs(dom.absorbing().points());
  for (const Point& p : a) abs.push_back(p);
  KilledDomain dom2(dom.carrier(), PointSet(std::move(abs)));
  HarmonicSolver solver(dom2);
  BoxField<double> h = solver.solve({}, {{y, 1.0}}, opt);
  if (h.at(x) < 1e-300) throw std::domain_error("bridge_sample: target unreachable from start");

  std::vector<Point> path{x};
  Point cur = x;
  std::vector<double> w;
  std::vector<Point> nb;
  while (!a.contains(cur)) {
    nb = neighbors(cur);
    w.assign(nb.size(), 0.0);
    double tot = 0.0;
    for (size_t i = 0; i < nb.size(); ++i) {
      const double hv = dom2.carrier().contains(nb[i]) ? h.at(nb[i]) : 0.0;
      w[i] = hv;
      tot += hv;
    }
    if (tot <= 0.0) throw numerical_error("bridge_sample: stranded (h vanished)");
    cur = nb[rng.discrete(w, tot)];
    path.push_back(cur);
    if (path.size() > 64u * h.volume()) throw numerical_error("bridge_sample: runaway path");
  }
  return path;
}

struct DecayRow {
  std::int64_t x_norm = 0;
  double prob = 0.0;
  double reference = 0.0;  // (n/|x|)^{d-2}
  double ratio = 0.0;
};

struct DecayReport {
  int n = 0;
  std::vector<DecayRow> rows;
  double ratio_min = 0.0, ratio_max = 0.0;
};

// P_x[H_{B(0,n)} < kill] against the (n/|x|)^{d-2} profile of the hitting
// estimate; constants are free, only the band is meaningful.
inline DecayReport hitting_decay_check(const KilledDomain& dom, int n,
                                       const std::vector<Point>& xs,
                                       const SolveOptions& opt = SolveOptions{}) {
  const int d = dom.dim();
  PointSet ball_bdry = interior_boundary(Box(Point(d), n));
  BoxField<double> h = hitting_prob_field(dom, ball_bdry, opt);
  DecayReport rep;
  rep.n = n;
  for (const Point& x : xs) {
    DecayRow row;
    row.x_norm = norm_linf(x);
    row.prob = row.x_norm <= n ? 1.0 : h.at(x);
    row.reference = std::pow(static_cast<double>(n) / static_cast<double>(row.x_norm),
                             static_cast<double>(d - 2));
    row.ratio = row.prob / row.reference;
    rep.rows.push_back(row);
  }
  rep.ratio_min = rep.ratio_max = rep.rows.empty() ? 0.0 : rep.rows.front().ratio;
  for (const auto& r : rep.rows) {
    rep.ratio_min = std::min(rep.ratio_min, r.ratio);
    rep.ratio_max = std::max(rep.ratio_max, r.ratio);
  }
  return rep;
}

// Two-radius Richardson refinement of a truncated value with leading bias
// c * radius^{2-d}: returns the extrapolated infinite-volume estimate.
inline double richardson_extrapolate(double v_small, double v_large, int r_small, int r_large, int d) {
  const double q = std::pow(static_cast<double>(r_small) / static_cast<double>(r_large),
                            static_cast<double>(d - 2));
  return (v_large - q * v_small) / (1.0 - q);
}

struct GreenOriginEstimate {
  double raw_small = 0.0, raw_large = 0.0, refined = 0.0;
  int r_small = 0, r_large = 0;
  double bias_bound = 0.0;  // |refined - raw_large|, the reported truncation scale
};

inline GreenOriginEstimate green_origin_estimate(int d, int r_large,
                                                 const SolveOptions& opt = SolveOptions{}) {
  GreenOriginEstimate est;
  est.r_small = r_large / 2;
  est.r_large = r_large;
  Point origin(d);
  est.raw_small = green(KilledDomain(Box(origin, est.r_small)), origin, origin, opt);
  est.raw_large = green(KilledDomain(Box(origin, est.r_large)), origin, origin, opt);
  est.refined = richardson_extrapolate(est.raw_small, est.raw_large, est.r_small, est.r_large, d);
  est.bias_bound = std::fabs(est.refined - est.raw_large);
  return est;
}

inline void dump_kernel_csv(const HittingKernel& k, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw config_error("dump_kernel_csv: cannot open " + path);
  const int d = k.source.points().empty() ? 0 : k.source.points().front().dim();
  for (int i = 0; i < d; ++i) out << "s" << i << ",";
  for (int i = 0; i < d; ++i) out << "t" << i << ",";
  out << "value\n";
  char buf[64];
  for (size_t i = 0; i < k.source.size(); ++i) {
    for (size_t j = 0; j < k.target.size(); ++j) {
      const Point& s = k.source.points()[i];
      const Point& t = k.target.points()[j];
      for (int c = 0; c < d; ++c) out << s[c] << ",";
      for (int c = 0; c < d; ++c) out << t[c] << ",";
      std::snprintf(buf, sizeof buf, "%.17g", k.at(i, j));
      out << buf << "\n";
    }
  }
}

}  // namespace loopsoup
