#include "afrl/multicone.hpp"

#include <algorithm>
#include <cmath>

namespace afrl {

bool Multicone::contains(double theta, double margin) const {
  double t = rp1::normalize(theta);
  for (auto [lo, hi] : intervals) {
    double a = lo + margin, b = hi - margin;
    if (t >= a && t <= b) return true;
    if (t + kPi >= a && t + kPi <= b) return true;  // wrapped interval
  }
  return false;
}

double Multicone::total_length() const {
  double s = 0;
  for (auto [lo, hi] : intervals) s += hi - lo;
  return s;
}

namespace {

// Image of the closed arc [a,b] (b <= a+pi) under the projective action.
// The action is a homeomorphism of RP^1, so the image is the arc between the
// endpoint images on the side selected by the midpoint.
std::pair<double, double> act_interval(const Mat2& m, double a, double b) {
  double ia = rp1::act(m, a);
  double ib = rp1::act(m, b);
  double im = rp1::act(m, (a + b) / 2);
  double lo = ia, hi = ib;
  if (hi < lo) hi += kPi;
  double mid = im < lo ? im + kPi : im;
  if (mid >= lo && mid <= hi) return {lo, hi};
  // midpoint on the other arc: swap roles
  lo = ib;
  hi = ia;
  if (hi < lo) hi += kPi;
  return {lo, hi};
}

}  // namespace

MulticoneSearch find_invariant_multicone(const std::vector<Mat2>& mats, int grid) {
  MulticoneSearch out;
  out.grid_resolution = grid;
  if (mats.empty()) return out;
  const double cell = kPi / grid;

  // Overestimate the forward limit set on the grid: iterate cell images from
  // seed directions until the marking stabilizes.
  std::vector<uint8_t> mark(size_t(grid), 0);
  auto mark_angle = [&](double t) {
    int c = int(std::floor(rp1::normalize(t) / cell));
    if (c >= grid) c = grid - 1;
    mark[size_t(c)] = 1;
  };
  Rng rng(0x5eedULL);
  std::vector<double> cdf(mats.size());
  for (size_t i = 0; i < mats.size(); ++i) cdf[i] = double(i + 1) / double(mats.size());
  for (int s = 0; s < 128; ++s) {
    double t = kPi * (s + 0.5) / 128;
    for (int it = 0; it < 40; ++it) t = rp1::act(mats[size_t(rng.next_index(cdf))], t);
    mark_angle(t);
  }
  for (int round = 0; round < 4 * grid; ++round) {
    bool grew = false;
    std::vector<uint8_t> next = mark;
    for (int c = 0; c < grid; ++c) {
      if (!mark[size_t(c)]) continue;
      double a = c * cell, b = (c + 1) * cell;
      for (const Mat2& m : mats) {
        auto [lo, hi] = act_interval(m, a, b);
        int c0 = int(std::floor(lo / cell));
        int c1 = int(std::floor(hi / cell));
        for (int cc = c0; cc <= c1; ++cc) {
          int idx = ((cc % grid) + grid) % grid;
          if (!next[size_t(idx)]) {
            next[size_t(idx)] = 1;
            grew = true;
          }
        }
      }
    }
    mark.swap(next);
    if (!grew) break;
  }

  for (int dilate = 1; dilate <= 3; ++dilate) {
    std::vector<uint8_t> cone(size_t(grid), 0);
    for (int c = 0; c < grid; ++c) {
      if (!mark[size_t(c)]) continue;
      for (int d = -dilate; d <= dilate; ++d) cone[size_t(((c + d) % grid + grid) % grid)] = 1;
    }
    size_t covered = 0;
    for (auto v : cone) covered += v;
    if (covered == 0 || covered >= size_t(grid) - 2) continue;  // complement must stay nonempty

    // merge marked cells into intervals (with wraparound)
    std::vector<std::pair<double, double>> ivs;
    int start = -1;
    for (int c = 0; c < grid; ++c) {
      if (cone[size_t(c)] && start < 0) start = c;
      if (!cone[size_t(c)] && start >= 0) {
        ivs.push_back({start * cell, c * cell});
        start = -1;
      }
    }
    if (start >= 0) {
      if (!ivs.empty() && ivs.front().first == 0.0) {
        ivs.front().first = start * cell;
        ivs.front().second += kPi;  // wraps
      } else {
        ivs.push_back({start * cell, kPi});
      }
    }

    // strict invariance with margin >= one grid cell, endpoints mapped exactly
    Multicone cand{ivs};
    bool ok = true;
    for (auto [lo, hi] : ivs) {
      for (const Mat2& m : mats) {
        auto [ilo, ihi] = act_interval(m, lo, hi);
        // the image interval, sampled at endpoints and quarter points, must
        // sit in the cone with one-cell margin
        for (double t : {ilo, ihi, (ilo + ihi) / 2, ilo + (ihi - ilo) / 4, ilo + 3 * (ihi - ilo) / 4})
          if (!cand.contains(t, cell)) {
            ok = false;
            break;
          }
        if (!ok) break;
      }
      if (!ok) break;
    }
    if (ok) {
      out.cone = cand;
      return out;
    }
  }
  return out;
}

IrreducibilityVerdict check_irreducible(const std::vector<Mat2>& mats) {
  IrreducibilityVerdict out;
  // candidate common directions are real eigendirections of the generators;
  // near-scalar generators constrain nothing
  std::vector<double> candidates;
  bool all_scalar = true;
  for (const Mat2& m : mats) {
    double scale = std::max(1.0, m.max_abs());
    bool scalar = std::fabs(m.a12) <= 1e-13 * scale && std::fabs(m.a21) <= 1e-13 * scale &&
                  std::fabs(m.a11 - m.a22) <= 1e-13 * scale;
    if (scalar) continue;
    all_scalar = false;
    Eigen2 e = eigen2(m);
    if (!e.real) {
      out.irreducible = true;  // this generator moves every direction
      return out;
    }
    if (e.v1) candidates.push_back(*e.v1);
    if (e.v2) candidates.push_back(*e.v2);
  }
  if (all_scalar) {
    out.irreducible = false;
    out.witness = 0.0;  // scalars fix every line
    return out;
  }
  for (double theta : candidates) {
    double worst = 0;
    for (const Mat2& m : mats) worst = std::max(worst, rp1::dist(rp1::act(m, theta), theta));
    if (worst < 1e-9) {
      out.irreducible = false;
      out.witness = theta;
      return out;
    }
  }
  out.irreducible = true;
  return out;
}

LimitDirection limit_direction(const std::vector<Mat2>& mats, const Word& prefix, LimitKind kind,
                               double tol, int depth_cap) {
  if (prefix.empty()) throw Error(ErrorCode::PrefixTooShort, "limit_direction: empty prefix");
  CyclicWord w{prefix};
  Mat2 p = Mat2::identity();
  double prev = -1.0;
  int stable = 0;
  for (int n = 0; n < depth_cap; ++n) {
    const Mat2& a = mats[size_t(w.at(size_t(n)))];
    Mat2 step;
    switch (kind) {
      case LimitKind::Forward: step = a; break;
      case LimitKind::Inverse: step = a.inverse(); break;
      case LimitKind::Adjoint: step = a.transpose(); break;
    }
    p = p * step;  // products grow on the right, matching the paper's order
    double m = p.max_abs();
    if (m > 0) p = p * (1.0 / m);
    Svd2 s = svd2(p);
    if (s.alpha2 - s.alpha1 <= kRelGap * s.alpha2) {
      prev = -1.0;
      stable = 0;
      continue;  // no usable gap yet (similarity-like product)
    }
    double theta = rp1::normalize(std::atan2(s.U.a21, s.U.a11));
    if (prev >= 0 && rp1::dist(theta, prev) < tol) {
      if (++stable >= 3) return {theta, n + 1};
    } else {
      stable = 0;
    }
    prev = theta;
  }
  throw Error(ErrorCode::NoConvergence, "limit_direction: depth cap reached");
}

}  // namespace afrl
