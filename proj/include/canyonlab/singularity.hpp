#pragma once

#include <optional>
#include <vector>

#include "canyonlab/newton_puiseux.hpp"
#include "canyonlab/series.hpp"

namespace canyonlab {

// A Puiseux root gamma of f_x that is not a root of f, completed with the
// data the invariant ladder reads off it.
struct PolarArc {
  PuiseuxSeries arc;
  Rat h;            // ord f(gamma(y), y)
  Coeff a;          // leading coefficient of f(gamma(y), y)
  Rat d;            // gradient degree
  Coeff tangent;    // slope of the tangent line x = tangent * y
  bool steep = false;       // arc of order < 1, tangent [1:0]
  bool tangential = false;  // tangent lies in the tangent cone of f
  int bar_id = -1;
  PuiseuxSeries f_series;   // f(gamma(y), y), working truncation
};

struct KuoLuNode {
  int id = -1;
  int parent = -1;
  RatInf height;             // split height; infinity at leaves
  Rat low;                   // height inherited from the parent split
  std::vector<int> roots;    // indices into KuoLuTree::roots
  std::vector<int> children;
};

// Contact-order hierarchy of the conjugate-expanded roots of f.
struct KuoLuTree {
  std::vector<PuiseuxRoot> roots;
  std::vector<KuoLuNode> nodes;
  int root_node = -1;
};

struct Canyon {
  int id = -1;
  std::vector<int> members;  // polar indices
  int rep = -1;              // representative polar index
  Rat degree;
  Rat h;
  Coeff a;
  Coeff tangent;
  bool tangential = false;
  int bar_id = -1;
  PuiseuxSeries f_series;    // canyon-canonical expansion of f along rep
};

struct Cluster {
  int tangent_group = -1;  // index into Skeleton::tangent_groups
  Rat degree;
  int bar_id = -1;
  Rat h;
  std::vector<int> canyons;                       // canyon ids
  std::vector<std::vector<Rat>> contact_row;      // K_i per canyon (sorted)
  std::vector<std::vector<int>> omega_partition;  // canyon ids with equal K_i
  Rat contact(int ci, int cj) const;              // via lookup
  std::vector<std::tuple<int, int, Rat>> contacts;  // k(i,j), i<j by id
};

// The geometric skeleton of one germ.
struct Skeleton {
  BivarPoly f;       // after mini-regularization
  Rat shear;         // lambda used
  Rat trunc;
  std::vector<Coeff> tangent_cone;       // slopes of Cone_0(f)
  std::vector<std::vector<int>> tangent_groups;  // canyon ids by tangent line
  std::vector<PolarArc> polars;
  KuoLuTree tree;
  std::vector<Canyon> canyons;
  std::vector<Cluster> clusters;  // tangential, degree > 1 only
};

// f(x, y + lambda*x) with the smallest-height rational lambda making f
// mini-regular in x (initial form nonzero at (1,0)).
std::pair<BivarPoly, Rat> mini_regularize(const BivarPoly& f);

// Distinct slopes a with f_m(a, 1) = 0; requires f mini-regular.
std::vector<Coeff> tangent_cone(const BivarPoly& f);

std::vector<PolarArc> polar_arcs(const BivarPoly& f, const Rat& trunc);

KuoLuTree kuo_lu_tree(const BivarPoly& f, const Rat& trunc);

// Deepest bar whose defining jet gamma shares; asserts the factorization
// identity h = sum of contacts with the roots of f.
int bar_of(const KuoLuTree& tree, const PolarArc& gamma);

// min_k (ord c_k + k*q) over both gradient components, u carried
// symbolically: a y^e term counts as present iff some z^k Taylor
// coefficient of grad f(gamma + z, y) contributes to it.
RatInf gradient_lambda(const BivarPoly& f, const PuiseuxSeries& gamma,
                       const RatInf& q);
Rat gradient_degree(const BivarPoly& f, const PolarArc& gamma);

std::vector<Canyon> group_canyons(const std::vector<PolarArc>& polars);

// Full pipeline: mini-regularize, find polars, tree, canyons, clusters.
Skeleton analyze(const BivarPoly& f, std::optional<Rat> trunc_override = {});

}  // namespace canyonlab
