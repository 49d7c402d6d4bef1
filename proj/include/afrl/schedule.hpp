#ifndef AFRL_SCHEDULE_HPP
#define AFRL_SCHEDULE_HPP

#include <cmath>
#include <vector>

#include "afrl/ifs.hpp"

namespace afrl {

// Stopping times along one word:
//   i_k  = min{ n : ||A*_{w|n} restricted to theta*|| <= 2^{-kN} }
//   ell_k = max{ n : alpha1(A_{w|n}) >= 2^{-(k-1)N} }
// All logs are base 2 and accumulated in log-domain.

struct ScheduleRow {
  int k = 0;
  int i_k = 0;
  int ell_k = 0;
  double log2_alpha1_ell = 0.0;  // log2 alpha1(A_{w|ell_k})
  double log2_norm_i = 0.0;      // log2 ||A_{w|i_k}||
};

struct StoppingSchedule {
  int N = 0;
  std::vector<ScheduleRow> rows;
  // empirical comparability constants for ||A_{w|i_k}|| * 2^{kN}
  double comp_lo = 0.0, comp_hi = 0.0;
};

namespace detail {

struct AdjointNormScan {
  // log2 ||A*_{w|n}|_{theta}|| for n = 0..len, O(1) per step
  std::vector<double> log2_norms;  // index n
};

inline AdjointNormScan scan_adjoint_norms(const AffineIFS& ifs, const Word& w, double theta_star) {
  AdjointNormScan out;
  out.log2_norms.reserve(w.size() + 1);
  out.log2_norms.push_back(0.0);
  Vec2 v = rp1::unit(theta_star);
  double acc = 0.0;
  for (int s : w) {
    v = ifs.maps[size_t(s)].A.transpose().apply(v);
    double n = v.norm();
    acc += std::log2(n);
    v = v * (1.0 / n);
    out.log2_norms.push_back(acc);
  }
  return out;
}

struct CylinderScan {
  std::vector<double> log2_alpha1;  // index n = 1..len
  std::vector<double> log2_alpha2;
};

inline CylinderScan scan_cylinder_singular_values(const AffineIFS& ifs, const Word& w) {
  CylinderScan out;
  Mat2 p = Mat2::identity();
  double scale = 0.0;     // log2 of the factored-out magnitude
  double log2_det = 0.0;  // exact log2 |det A_{w|n}|
  for (int s : w) {
    p = p * ifs.maps[size_t(s)].A;
    log2_det += std::log2(std::fabs(ifs.maps[size_t(s)].A.det()));
    double m = p.max_abs();
    p = p * (1.0 / m);
    scale += std::log2(m);
    double a2 = alpha2(p);
    out.log2_alpha2.push_back(scale + std::log2(a2));
    out.log2_alpha1.push_back(log2_det - (scale + std::log2(a2)));
  }
  return out;
}

}  // namespace detail

inline int stopping_time_i_k(const AffineIFS& ifs, const Word& w, int k, int N,
                             double theta_star) {
  if (double(k) * N > 900) throw Error(ErrorCode::ConfigError, "threshold below 2^-900");
  auto scan = detail::scan_adjoint_norms(ifs, w, theta_star);
  double thr = -double(k) * N;
  for (size_t n = 0; n < scan.log2_norms.size(); ++n)
    if (scan.log2_norms[n] <= thr) return int(n);
  throw Error(ErrorCode::PrefixTooShort, "i_k: prefix too short for k=" + std::to_string(k));
}

inline int scale_index_ell_k(const AffineIFS& ifs, const Word& w, int k, int N) {
  if (double(k) * N > 900) throw Error(ErrorCode::ConfigError, "threshold below 2^-900");
  auto scan = detail::scan_cylinder_singular_values(ifs, w);
  double thr = -double(k - 1) * N;
  int best = 0;
  for (size_t n = 0; n < scan.log2_alpha1.size(); ++n)
    if (scan.log2_alpha1[n] >= thr) best = int(n) + 1;
  if (k > 1 && best == int(scan.log2_alpha1.size()))
    throw Error(ErrorCode::PrefixTooShort, "ell_k: prefix too short for k=" + std::to_string(k));
  return best;
}

inline StoppingSchedule build_schedule(const AffineIFS& ifs, const Word& w, int k_max, int N,
                                       double theta_star) {
  StoppingSchedule sched;
  sched.N = N;
  auto adj = detail::scan_adjoint_norms(ifs, w, theta_star);
  auto cyl = detail::scan_cylinder_singular_values(ifs, w);
  double clo = std::numeric_limits<double>::infinity(), chi = 0.0;
  size_t ni = 0;
  for (int k = 0; k <= k_max; ++k) {
    double thr = -double(k) * N;
    while (ni < adj.log2_norms.size() && adj.log2_norms[ni] > thr) ++ni;
    if (ni >= adj.log2_norms.size()) break;  // prefix exhausted; earlier rows stand
    ScheduleRow row;
    row.k = k;
    row.i_k = int(ni);
    double thr_l = -double(k - 1) * N;
    int ell = 0;
    for (size_t n = 0; n < cyl.log2_alpha1.size(); ++n)
      if (cyl.log2_alpha1[n] >= thr_l) ell = int(n) + 1;
    row.ell_k = ell;
    row.log2_alpha1_ell = ell > 0 ? cyl.log2_alpha1[size_t(ell - 1)] : 0.0;
    row.log2_norm_i = row.i_k > 0 ? cyl.log2_alpha2[size_t(row.i_k - 1)] : 0.0;
    double comp = std::exp2(row.log2_norm_i + double(k) * N);
    clo = std::min(clo, comp);
    chi = std::max(chi, comp);
    sched.rows.push_back(row);
  }
  sched.comp_lo = std::isfinite(clo) ? clo : 0.0;
  sched.comp_hi = chi;
  return sched;
}

}  // namespace afrl

#endif
