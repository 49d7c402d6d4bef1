#ifndef AFRL_GEOMETRY_HPP
#define AFRL_GEOMETRY_HPP

#include <cmath>
#include <optional>

#include "afrl/error.hpp"

namespace afrl {

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr double kSingularDetFloor = 1e-14;
inline constexpr double kRelGap = 1e-12;

struct Vec2 {
  double x = 0.0, y = 0.0;
  Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  Vec2 operator-() const { return {-x, -y}; }
  double dot(Vec2 o) const { return x * o.x + y * o.y; }
  double norm() const { return std::hypot(x, y); }
};

struct Mat2 {
  double a11 = 1.0, a12 = 0.0, a21 = 0.0, a22 = 1.0;

  static Mat2 identity() { return {}; }
  static Mat2 diag(double d1, double d2) { return {d1, 0.0, 0.0, d2}; }
  static Mat2 rotation(double angle) {
    double c = std::cos(angle), s = std::sin(angle);
    return {c, -s, s, c};
  }

  double det() const { return a11 * a22 - a12 * a21; }
  Mat2 transpose() const { return {a11, a21, a12, a22}; }
  double max_abs() const {
    return std::max(std::max(std::fabs(a11), std::fabs(a12)),
                    std::max(std::fabs(a21), std::fabs(a22)));
  }

  Vec2 apply(Vec2 v) const { return {a11 * v.x + a12 * v.y, a21 * v.x + a22 * v.y}; }

  Mat2 operator*(const Mat2& o) const {
    return {a11 * o.a11 + a12 * o.a21, a11 * o.a12 + a12 * o.a22,
            a21 * o.a11 + a22 * o.a21, a21 * o.a12 + a22 * o.a22};
  }
  Mat2 operator*(double s) const { return {a11 * s, a12 * s, a21 * s, a22 * s}; }
  Mat2 operator-(const Mat2& o) const {
    return {a11 - o.a11, a12 - o.a12, a21 - o.a21, a22 - o.a22};
  }

  Mat2 inverse() const {
    double d = det();
    if (std::fabs(d) <= kSingularDetFloor)
      throw Error(ErrorCode::SingularMatrix, "2x2 inverse: |det| <= 1e-14");
    double inv = 1.0 / d;
    return {a22 * inv, -a12 * inv, -a21 * inv, a11 * inv};
  }
};

// A = U * diag(alpha2, alpha1) * V^T, columns of U and V ordered major-first.
struct Svd2 {
  Mat2 U;
  double alpha1 = 0.0;  // smaller singular value
  double alpha2 = 0.0;  // larger singular value
  Mat2 V;
};

inline Svd2 svd2(const Mat2& m) {
  if (std::fabs(m.det()) <= kSingularDetFloor)
    throw Error(ErrorCode::SingularMatrix, "svd2 requires |det| > 1e-14");
  double e = (m.a11 + m.a22) / 2, f = (m.a11 - m.a22) / 2;
  double g = (m.a21 + m.a12) / 2, h = (m.a21 - m.a12) / 2;
  double q = std::hypot(e, h), r = std::hypot(f, g);
  double sx = q + r, sy = q - r;
  double a1 = std::atan2(g, f), a2 = std::atan2(h, e);
  double beta = (a2 - a1) / 2, gamma = (a2 + a1) / 2;
  Svd2 out;
  out.U = Mat2::rotation(gamma);
  out.V = Mat2::rotation(-beta);
  out.alpha2 = sx;
  out.alpha1 = sy;
  if (sy < 0) {
    out.alpha1 = -sy;
    out.V.a12 = -out.V.a12;
    out.V.a22 = -out.V.a22;
  }
  return out;
}

inline double alpha1(const Mat2& m) { return svd2(m).alpha1; }
inline double alpha2(const Mat2& m) {
  // operator norm; safe also for singular input
  double e = (m.a11 + m.a22) / 2, f = (m.a11 - m.a22) / 2;
  double g = (m.a21 + m.a12) / 2, h = (m.a21 - m.a12) / 2;
  return std::hypot(e, h) + std::hypot(f, g);
}

struct Eigen2 {
  double lam1 = 0.0, lam2 = 0.0;  // |lam1| <= |lam2| when real
  bool real = false;
  bool hyperbolic = false;
  std::optional<double> v1, v2;  // eigendirections as RP^1 angles
};

// --- the projective line, represented by angles in [0, pi) ---
namespace rp1 {

inline double normalize(double theta) {
  double t = std::fmod(theta, kPi);
  if (t < 0) t += kPi;
  if (t >= kPi) t = 0.0;
  return t;
}

inline double dist(double a, double b) {
  double d = std::fabs(normalize(a) - normalize(b));
  return std::min(d, kPi - d);
}

inline double perp(double theta) { return normalize(theta + kPi / 2); }

inline Vec2 unit(double theta) { return {std::cos(theta), std::sin(theta)}; }

// image line of theta under an invertible matrix
inline double act(const Mat2& m, double theta) {
  Vec2 v = m.apply(unit(normalize(theta)));
  return normalize(std::atan2(v.y, v.x));
}

// ||A restricted to the line theta||
inline double restricted_norm(const Mat2& m, double theta) {
  return m.apply(unit(theta)).norm();
}

// The paper's R_theta: shortest rotation taking the line theta onto the
// y-axis; for theta = 0 the clockwise one.
inline double rotation_angle_to_y(double theta) {
  double t = normalize(theta);
  if (t == 0.0) return -kPi / 2;
  return kPi / 2 - t;
}

inline Mat2 rotation_to_y(double theta) { return Mat2::rotation(rotation_angle_to_y(theta)); }

}  // namespace rp1

inline Eigen2 eigen2(const Mat2& m) {
  Eigen2 out;
  double tr = m.a11 + m.a22, det = m.det();
  double disc = tr * tr / 4 - det;
  double scale = std::max(1.0, m.max_abs());
  if (disc < 0) {
    // complex conjugate pair; |lam| = sqrt(det)
    out.real = false;
    out.hyperbolic = false;
    out.lam1 = out.lam2 = std::sqrt(det);
    return out;
  }
  out.real = true;
  double sq = std::sqrt(disc);
  double l1 = tr / 2 - sq, l2 = tr / 2 + sq;
  if (std::fabs(l1) > std::fabs(l2)) std::swap(l1, l2);
  out.lam1 = l1;
  out.lam2 = l2;
  out.hyperbolic = (std::fabs(l2) - std::fabs(l1)) > kRelGap * scale;
  auto eigendir = [&](double lam) -> std::optional<double> {
    // kernel of (m - lam I), pick the numerically larger row
    double r1x = m.a11 - lam, r1y = m.a12;
    double r2x = m.a21, r2y = m.a22 - lam;
    double n1 = std::hypot(r1x, r1y), n2 = std::hypot(r2x, r2y);
    if (std::max(n1, n2) <= 1e-13 * scale) return std::nullopt;  // scalar matrix
    Vec2 v = (n1 >= n2) ? Vec2{-r1y, r1x} : Vec2{-r2y, r2x};
    return rp1::normalize(std::atan2(v.y, v.x));
  };
  out.v1 = eigendir(l1);
  out.v2 = eigendir(l2);
  return out;
}

// Direction of the major semiaxis of A(B(0,1)).
inline double theta_of(const Mat2& m) {
  Svd2 s = svd2(m);
  if (s.alpha2 - s.alpha1 <= kRelGap * s.alpha2)
    throw Error(ErrorCode::DegenerateAxes, "theta_of: alpha1 ~ alpha2");
  return rp1::normalize(std::atan2(s.U.a21, s.U.a11));
}

// Reflection sign of A^{-1} acting on the line theta: -1 when the
// y-components of x and A^{-1}x disagree for x on theta.
inline int reflection_sign_inverse_step(const Mat2& a, double theta) {
  Vec2 x = rp1::unit(theta);
  Vec2 y = a.inverse().apply(x);
  if (std::fabs(x.y) <= 1e-12 || std::fabs(y.y) <= 1e-12 * y.norm())
    throw Error(ErrorCode::DegenerateDirection, "reflection sign: direction on the x-axis");
  return (x.y * y.y < 0) ? -1 : 1;
}

// Residual of the polar/reflection decomposition
//   A^{-1}x = ||A^{-1}x|| R_{A^{-1}theta}^{-1} rho R_theta x
// maximized over both unit representatives of theta. Also returns rho.
struct PolarCheck {
  double residual = 0.0;
  int rho = 1;
};

inline PolarCheck verify_polar_decomposition(const Mat2& a, double theta) {
  Mat2 ainv = a.inverse();
  double theta_img = rp1::act(ainv, theta);
  Mat2 r_from = rp1::rotation_to_y(theta);
  Mat2 r_to_inv = rp1::rotation_to_y(theta_img).inverse();
  PolarCheck out;
  for (int s = 0; s < 2; ++s) {
    Vec2 x = rp1::unit(theta) * (s == 0 ? 1.0 : -1.0);
    Vec2 lhs = ainv.apply(x);
    int rho = reflection_sign_inverse_step(a, theta);
    Vec2 rhs = r_to_inv.apply(r_from.apply(x) * double(rho)) * lhs.norm();
    out.residual = std::max(out.residual, (lhs - rhs).norm());
    out.rho = rho;
  }
  return out;
}

// Residual of tan d(A^{-1}theta, theta(A^{-1})) = (a1/a2) tan d(theta, theta(A)^perp),
// relative to max(1, |lhs|).
inline double tangent_identity_residual(const Mat2& a, double theta) {
  Mat2 ainv = a.inverse();
  double lhs = std::tan(rp1::dist(rp1::act(ainv, theta), theta_of(ainv)));
  Svd2 s = svd2(a);
  double th_a = rp1::normalize(std::atan2(s.U.a21, s.U.a11));
  double rhs = (s.alpha1 / s.alpha2) * std::tan(rp1::dist(theta, rp1::perp(th_a)));
  return std::fabs(lhs - rhs) / std::max(1.0, std::fabs(lhs));
}

}  // namespace afrl

#endif
