#ifndef AFRL_IFS_HPP
#define AFRL_IFS_HPP

#include <functional>
#include <string>
#include <vector>

#include "afrl/geometry.hpp"
#include "afrl/word.hpp"

namespace afrl {

struct AffineMap2 {
  Mat2 A;
  Vec2 t;

  Vec2 apply(Vec2 v) const { return A.apply(v) + t; }
  // (this o other)(x) = this(other(x))
  AffineMap2 compose(const AffineMap2& other) const {
    return {A * other.A, A.apply(other.t) + t};
  }
  Vec2 fixed_point() const {
    Mat2 m{1.0 - A.a11, -A.a12, -A.a21, 1.0 - A.a22};
    return m.inverse().apply(t);
  }
};

struct AffineIFS {
  std::vector<AffineMap2> maps;
  std::vector<double> p;
  std::vector<double> cdf;  // cumulative of p
  std::string name;

  int size() const { return int(maps.size()); }
  std::vector<Mat2> matrices() const {
    std::vector<Mat2> out;
    for (const auto& m : maps) out.push_back(m.A);
    return out;
  }
  double max_alpha2() const;
  // every point of the attractor lies in B(0, radius_bound)
  double radius_bound() const;
  void validate();  // contraction, probabilities; renormalizes p within 1e-9
};

AffineIFS load_ifs_toml(const std::string& path);
AffineIFS parse_ifs_toml(const std::string& text, const std::string& name);

// phi_w = phi_{w0} o phi_{w1} o ... o phi_{w_{n-1}}
AffineMap2 cylinder_map(const AffineIFS& ifs, const Word& w);

// Pi(i) for the infinite word given by symbol access, to absolute error tol.
Vec2 natural_projection(const AffineIFS& ifs, const std::function<int(size_t)>& sym, double tol);
Vec2 natural_projection(const AffineIFS& ifs, const CyclicWord& w, double tol = 1e-12);

// --- strong separation ---

struct SeparationReport {
  bool pass = false;
  bool containment_ok = false;
  bool disjoint_ok = false;
  double min_gap = 0.0;  // smallest pairwise distance between image ellipses
  int worst_i = -1, worst_j = -1;
  std::string note;
};

// Checks f_i(cl V) subset V and pairwise disjointness of the image ellipses
// for V = B(center, radius), with deterministic support-function tests.
SeparationReport check_strong_separation(const AffineIFS& ifs, Vec2 center, double radius);

// Smallest sufficient ball radius around the attractor barycenter estimate;
// convenience for `afrl check`.
struct SeparationSearch {
  SeparationReport report;
  Vec2 center;
  double radius = 0.0;
};
SeparationSearch find_separating_ball(const AffineIFS& ifs);

}  // namespace afrl

#endif
