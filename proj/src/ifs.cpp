#include "afrl/ifs.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "afrl/toml_lite.hpp"

namespace afrl {

double AffineIFS::max_alpha2() const {
  double m = 0;
  for (const auto& f : maps) m = std::max(m, alpha2(f.A));
  return m;
}

double AffineIFS::radius_bound() const {
  double a = max_alpha2();
  double t = 0;
  for (const auto& f : maps) t = std::max(t, f.t.norm());
  return t / (1.0 - a);
}

void AffineIFS::validate() {
  if (maps.size() < 2) throw Error(ErrorCode::ConfigError, "alphabet size must be >= 2");
  if (maps.size() != p.size())
    throw Error(ErrorCode::ConfigError, "probability vector length != alphabet size");
  for (size_t i = 0; i < maps.size(); ++i) {
    if (std::fabs(maps[i].A.det()) <= kSingularDetFloor)
      throw Error(ErrorCode::ConfigError, "map " + std::to_string(i) + " is singular");
    if (alpha2(maps[i].A) >= 1.0)
      throw Error(ErrorCode::ConfigError, "map " + std::to_string(i) + " is not a contraction");
    if (p[i] <= 0.0)
      throw Error(ErrorCode::ConfigError, "probability " + std::to_string(i) + " must be > 0");
  }
  double s = 0;
  for (double w : p) s += w;
  if (std::fabs(s - 1.0) > 1e-9)
    throw Error(ErrorCode::ConfigError, "probabilities sum to " + std::to_string(s));
  for (double& w : p) w /= s;
  cdf.resize(p.size());
  double acc = 0;
  for (size_t i = 0; i < p.size(); ++i) {
    acc += p[i];
    cdf[i] = acc;
  }
  cdf.back() = 1.0;
}

AffineIFS parse_ifs_toml(const std::string& text, const std::string& name) {
  TomlDoc doc = parse_toml(text);
  if (!doc.tables.count("system")) throw Error(ErrorCode::ConfigError, "missing [system]");
  int m = int(doc.tables["system"].number("alphabet"));
  auto it = doc.lists.find("map");
  if (it == doc.lists.end()) throw Error(ErrorCode::ConfigError, "missing [[map]] entries");
  const auto& entries = it->second;
  if (int(entries.size()) != m)
    throw Error(ErrorCode::ConfigError, "alphabet = " + std::to_string(m) + " but " +
                                            std::to_string(entries.size()) + " [[map]] blocks");
  AffineIFS ifs;
  ifs.name = name;
  for (const auto& e : entries) {
    const auto& a = e.array("A");
    const auto& t = e.array("t");
    if (a.size() != 4 || t.size() != 2)
      throw Error(ErrorCode::ConfigError, "A needs 4 entries, t needs 2");
    AffineMap2 f;
    f.A = Mat2{a[0], a[1], a[2], a[3]};
    f.t = Vec2{t[0], t[1]};
    ifs.maps.push_back(f);
    ifs.p.push_back(e.number("p"));
  }
  ifs.validate();
  return ifs;
}

AffineIFS load_ifs_toml(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  std::string name = path;
  size_t slash = name.find_last_of('/');
  if (slash != std::string::npos) name = name.substr(slash + 1);
  return parse_ifs_toml(buf.str(), name);
}

AffineMap2 cylinder_map(const AffineIFS& ifs, const Word& w) {
  if (w.empty()) return {Mat2::identity(), {0, 0}};
  AffineMap2 acc = ifs.maps[size_t(w[0])];
  for (size_t k = 1; k < w.size(); ++k) acc = acc.compose(ifs.maps[size_t(w[k])]);
  return acc;
}

Vec2 natural_projection(const AffineIFS& ifs, const std::function<int(size_t)>& sym, double tol) {
  double bound = ifs.radius_bound();
  Mat2 lin = Mat2::identity();
  Vec2 t{0, 0};
  double log2_alpha = 0.0;
  const double amax = ifs.max_alpha2();
  for (size_t k = 0; k < 100000; ++k) {
    const AffineMap2& f = ifs.maps[size_t(sym(k))];
    t = t + lin.apply(f.t);
    lin = lin * f.A;
    log2_alpha += std::log2(amax);
    // a-priori tail bound: remaining image diameter <= prod(alpha2) * bound
    if (std::exp2(log2_alpha) * std::max(bound, 1.0) <= tol) return t;
    if (log2_alpha < -900) return t;  // subnormal guard
  }
  return t;
}

Vec2 natural_projection(const AffineIFS& ifs, const CyclicWord& w, double tol) {
  return natural_projection(ifs, [&](size_t k) { return w.at(k); }, tol);
}

// ---------------- separation ----------------

namespace {

// maximum of ||d + M u(t)|| over the unit circle u(t)
double max_norm_on_ellipse(Vec2 d, const Mat2& m) {
  // f(t) = c0 + c1 cos t + c2 sin t + c3 cos 2t + c4 sin 2t
  Vec2 m1{m.a11, m.a21}, m2{m.a12, m.a22};
  double p = m1.dot(m1), q = m1.dot(m2), s = m2.dot(m2);
  double c0 = d.dot(d) + (p + s) / 2;
  double c1 = 2 * d.dot(m1), c2 = 2 * d.dot(m2);
  double c3 = (p - s) / 2, c4 = q;
  auto f = [&](double t) {
    return c0 + c1 * std::cos(t) + c2 * std::sin(t) + c3 * std::cos(2 * t) + c4 * std::sin(2 * t);
  };
  auto fd = [&](double t) {
    return -c1 * std::sin(t) + c2 * std::cos(t) - 2 * c3 * std::sin(2 * t) +
           2 * c4 * std::cos(2 * t);
  };
  auto fdd = [&](double t) {
    return -c1 * std::cos(t) - c2 * std::sin(t) - 4 * c3 * std::cos(2 * t) -
           4 * c4 * std::sin(2 * t);
  };
  double best = 0;
  const int n = 512;
  for (int i = 0; i < n; ++i) {
    double t = 2 * kPi * i / n;
    for (int it = 0; it < 30; ++it) {
      double dd = fdd(t);
      if (std::fabs(dd) < 1e-300) break;
      double step = fd(t) / dd;
      t -= step;
      if (std::fabs(step) < 1e-15) break;
    }
    best = std::max(best, std::max(f(t), f(2 * kPi * i / n)));
  }
  return std::sqrt(std::max(0.0, best));
}

double min_norm_on_ellipse_boundary(Vec2 d, const Mat2& m) {
  Vec2 m1{m.a11, m.a21}, m2{m.a12, m.a22};
  double p = m1.dot(m1), q = m1.dot(m2), s = m2.dot(m2);
  double c0 = d.dot(d) + (p + s) / 2;
  double c1 = 2 * d.dot(m1), c2 = 2 * d.dot(m2);
  double c3 = (p - s) / 2, c4 = q;
  auto f = [&](double t) {
    return c0 + c1 * std::cos(t) + c2 * std::sin(t) + c3 * std::cos(2 * t) + c4 * std::sin(2 * t);
  };
  auto fd = [&](double t) {
    return -c1 * std::sin(t) + c2 * std::cos(t) - 2 * c3 * std::sin(2 * t) +
           2 * c4 * std::cos(2 * t);
  };
  auto fdd = [&](double t) {
    return -c1 * std::cos(t) - c2 * std::sin(t) - 4 * c3 * std::cos(2 * t) -
           4 * c4 * std::sin(2 * t);
  };
  double best = f(0);
  const int n = 512;
  for (int i = 0; i < n; ++i) {
    double t = 2 * kPi * i / n;
    for (int it = 0; it < 30; ++it) {
      double dd = fdd(t);
      if (std::fabs(dd) < 1e-300) break;
      double step = fd(t) / dd;
      t -= step;
      if (std::fabs(step) < 1e-15) break;
    }
    best = std::min(best, std::min(f(t), f(2 * kPi * i / n)));
  }
  return std::sqrt(std::max(0.0, best));
}

// Euclidean distance from point x to the filled ellipse {c + M u : |u|<=1}
double point_to_ellipse_distance(Vec2 x, Vec2 c, const Mat2& m) {
  Vec2 d = x - c;
  Vec2 local = m.inverse().apply(d);
  if (local.norm() <= 1.0) return 0.0;
  return min_norm_on_ellipse_boundary(d * -1.0, m);  // min over u of ||Mu - d|| = ||(-d) + Mu||
}

}  // namespace

SeparationReport check_strong_separation(const AffineIFS& ifs, Vec2 center, double radius) {
  SeparationReport rep;
  const int m = ifs.size();
  std::vector<Vec2> centers(size_t(m));
  std::vector<Mat2> shapes(size_t(m));
  for (int i = 0; i < m; ++i) {
    centers[size_t(i)] = ifs.maps[size_t(i)].apply(center);
    shapes[size_t(i)] = ifs.maps[size_t(i)].A * radius;
  }
  rep.containment_ok = true;
  for (int i = 0; i < m; ++i) {
    double reach = max_norm_on_ellipse(centers[size_t(i)] - center, shapes[size_t(i)]);
    if (reach >= radius) {
      rep.containment_ok = false;
      rep.worst_i = i;
      rep.note = "image " + std::to_string(i) + " escapes V";
    }
  }
  rep.disjoint_ok = true;
  rep.min_gap = std::numeric_limits<double>::infinity();
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      // exact verdict in the frame where ellipse i is the unit disk
      Mat2 inv_i = shapes[size_t(i)].inverse();
      Vec2 cj = inv_i.apply(centers[size_t(j)] - centers[size_t(i)]);
      Mat2 mj = inv_i * shapes[size_t(j)];
      bool origin_inside = mj.inverse().apply(cj * -1.0).norm() <= 1.0;
      double normalized_min = origin_inside ? 0.0 : min_norm_on_ellipse_boundary(cj, mj);
      bool disjoint = !origin_inside && normalized_min > 1.0;
      // reported gap in original coordinates
      double gap = 0.0;
      if (disjoint) {
        gap = std::numeric_limits<double>::infinity();
        const int n = 1024;
        for (int t = 0; t < n; ++t) {
          double a = 2 * kPi * t / n;
          Vec2 bndry = centers[size_t(i)] + shapes[size_t(i)].apply({std::cos(a), std::sin(a)});
          gap = std::min(gap, point_to_ellipse_distance(bndry, centers[size_t(j)], shapes[size_t(j)]));
        }
        // golden-section polish around the best boundary angle
        double lo = 0, hi = 2 * kPi, best_t = 0, best_v = gap;
        for (int t = 0; t < n; ++t) {
          double a = 2 * kPi * t / n;
          Vec2 bndry = centers[size_t(i)] + shapes[size_t(i)].apply({std::cos(a), std::sin(a)});
          double v = point_to_ellipse_distance(bndry, centers[size_t(j)], shapes[size_t(j)]);
          if (v < best_v) {
            best_v = v;
            best_t = a;
          }
        }
        lo = best_t - 2 * kPi / n;
        hi = best_t + 2 * kPi / n;
        const double gr = 0.618033988749894848;
        double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
        auto eval = [&](double a) {
          Vec2 bndry = centers[size_t(i)] + shapes[size_t(i)].apply({std::cos(a), std::sin(a)});
          return point_to_ellipse_distance(bndry, centers[size_t(j)], shapes[size_t(j)]);
        };
        double f1 = eval(x1), f2 = eval(x2);
        for (int it = 0; it < 80; ++it) {
          if (f1 < f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - gr * (hi - lo);
            f1 = eval(x1);
          } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + gr * (hi - lo);
            f2 = eval(x2);
          }
        }
        gap = std::min(best_v, std::min(f1, f2));
      }
      if (!disjoint) {
        rep.disjoint_ok = false;
        rep.worst_i = i;
        rep.worst_j = j;
        rep.min_gap = 0.0;
      } else if (gap < rep.min_gap) {
        rep.min_gap = gap;
        if (rep.disjoint_ok) {
          rep.worst_i = i;
          rep.worst_j = j;
        }
      }
    }
  }
  if (!std::isfinite(rep.min_gap)) rep.min_gap = 0.0;
  rep.pass = rep.containment_ok && rep.disjoint_ok;
  return rep;
}

SeparationSearch find_separating_ball(const AffineIFS& ifs) {
  SeparationSearch out;
  // barycenter estimate from the fixed points
  Vec2 c{0, 0};
  for (const auto& f : ifs.maps) c = c + f.fixed_point() * (1.0 / ifs.size());
  // r >= ||f_i(c) - c|| / (1 - alpha2_i) makes every image ellipse fit in B(c,r)
  double r = 0;
  for (const auto& f : ifs.maps) {
    double need = (f.apply(c) - c).norm() / (1.0 - alpha2(f.A));
    r = std::max(r, need);
  }
  for (double grow : {1.0001, 1.01, 1.1, 1.5, 2.0}) {
    out.report = check_strong_separation(ifs, c, r * grow);
    out.center = c;
    out.radius = r * grow;
    if (out.report.pass) return out;
  }
  return out;
}

}  // namespace afrl
