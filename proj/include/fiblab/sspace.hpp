#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fiblab/poset.hpp"
#include "fiblab/sset.hpp"

namespace fiblab::sspace {

using sset::Simplex;
using sset::SSetMap;
using sset::SSetPtr;

/// A simplicial object in finite simplicial sets, truncated at level_bound M.  The first
/// index (level) is the simplicial direction, the second (inside each level) the space
/// direction.  exact() means the object is generated by its levels <= M and every level is
/// exact.
class FinSimplicialSpace {
 public:
  /// face[m][i]: X_m -> X_{m-1} (m >= 1), degeneracy[m][j]: X_m -> X_{m+1} (m < M).
  FinSimplicialSpace(std::vector<SSetPtr> levels, std::vector<std::vector<SSetMap>> face,
                     std::vector<std::vector<SSetMap>> degeneracy, bool exact);

  int level_bound() const { return static_cast<int>(levels_.size()) - 1; }
  bool exact() const { return exact_; }
  const sset::FinSimplicialSet& level(int m) const { return *levels_[static_cast<std::size_t>(m)]; }
  const SSetPtr& level_ptr(int m) const { return levels_[static_cast<std::size_t>(m)]; }
  const SSetMap& face(int m, int i) const { return face_[static_cast<std::size_t>(m)][static_cast<std::size_t>(i)]; }
  const SSetMap& degeneracy(int m, int j) const {
    return degeneracy_[static_cast<std::size_t>(m)][static_cast<std::size_t>(j)];
  }

  /// theta^*: X_b -> X_a applied to a simplex of X_b, for theta: [a] -> [b].
  Simplex act(const poset::MonotoneMap& theta, const Simplex& x) const;
  /// theta^* as a map of simplicial sets.
  SSetMap operator_map(const poset::MonotoneMap& theta) const;

  /// All level spaces are discrete (only 0-cells).
  bool is_discrete() const;
  /// Largest level containing a cell outside the image of every degeneracy (-1 if empty).
  int generator_level() const;
  /// Empty string when the simplicial identities hold and every operator is a valid map.
  std::string validate() const;
  std::size_t level_size(int m) const { return static_cast<std::size_t>(level(m).vertex_count()); }

 private:
  std::vector<SSetPtr> levels_;
  std::vector<std::vector<SSetMap>> face_;
  std::vector<std::vector<SSetMap>> degeneracy_;
  bool exact_;
};

using SSpacePtr = std::shared_ptr<const FinSimplicialSpace>;

struct SSpaceMap {
  SSpacePtr source;
  SSpacePtr target;
  std::vector<SSetMap> components;

  Simplex operator()(int m, const Simplex& x) const { return components[static_cast<std::size_t>(m)](x); }
  std::string validate() const;
  bool is_identity() const;
  /// Levelwise injective.
  bool injective() const;
};

SSpaceMap identity_map(const SSpacePtr& x);
SSpaceMap compose(const SSpaceMap& g, const SSpaceMap& f);
bool same_map(const SSpaceMap& a, const SSpaceMap& b);

/// Pointed space: a vertex of X_0.
struct PointedSpaceMap {
  SSpacePtr base;
  int vertex = 0;
};

// ---------------------------------------------------------------- standard objects

SSpacePtr point_space(int M);
SSpacePtr empty_space(int M);
/// F(n), truncated at level M.
SSpacePtr F(int n, int M);
/// Boundary of F(n).
SSpacePtr dF(int n, int M);
/// Sub-object of F(n) lacking the l-th face.
SSpacePtr L(int n, int l, int M);
/// E(n)_k = J[n]_k, levels 0..T.
SSpacePtr E(int n, int T);
/// F(1) u_F(0) ... u_F(0) F(1), n copies.
SSpacePtr G(int n, int M);

/// Discrete simplicial space with level m the set S_m.  Level-m vertices follow S.simplices(m).
SSpacePtr embed_discrete(const SSetPtr& s, int M);
/// Constant simplicial space with every level K.
SSpacePtr embed_constant(const SSetPtr& k, int M);
/// Map of discrete embeddings induced by a simplicial map.
SSpaceMap embed_discrete_map(const SSetMap& f, const SSpacePtr& source, const SSpacePtr& target);

/// n -> (X_n)_0.
SSetPtr first_row(const FinSimplicialSpace& x);
/// first_row with keys {vertex of X_n} for every simplex.
sset::KeyedSet first_row_keyed(const FinSimplicialSpace& x);
/// The vertex of X_n named by an n-simplex of first_row_keyed(x).
int row_vertex(const FinSimplicialSpace& x, const sset::KeyedSet& row, const Simplex& s);
/// The level-0 space X_0.
SSetPtr level_zero(const FinSimplicialSpace& x);
/// n -> (X_n)_n.
SSetPtr diagonal(const FinSimplicialSpace& x);

/// Delta[n] x J[l] as a bisimplicial object: embed_discrete(delta(n)) x embed_constant(J[l]).
SSpacePtr t_cell(int n, int l, int T, int M);

/// The simplex f of F(n)_m, as a vertex id of the level.
int F_vertex(const FinSimplicialSpace& fn, int n, const poset::MonotoneMap& f);
/// The monotone map of a vertex of F(n)_m.
poset::MonotoneMap F_map(int n, int m, int vertex);

// ---------------------------------------------------------------- limits and colimits

struct SpaceProduct {
  SSpacePtr space;
  std::vector<SSpacePtr> factors;
  std::vector<SSpaceMap> projections;
  std::vector<sset::Product> levels;

  Simplex tuple(int m, const std::vector<Simplex>& comps) const { return levels[static_cast<std::size_t>(m)].tuple(comps); }
};
SpaceProduct product(const std::vector<SSpacePtr>& factors);
SSpaceMap product_map(const SpaceProduct& source, const SpaceProduct& target, const std::vector<SSpaceMap>& comps);

struct SpacePullback {
  SSpacePtr space;
  SSpaceMap p1, p2;
  std::vector<sset::Pullback> levels;
};
SpacePullback pullback(const SSpaceMap& f, const SSpaceMap& g);

struct SpacePushout {
  SSpacePtr space;
  SSpaceMap from_b, from_c;
};
SpacePushout pushout(const SSpaceMap& i, const SSpaceMap& f);

struct SpaceCoproduct {
  SSpacePtr space;
  std::vector<SSpaceMap> injections;
};
SpaceCoproduct coproduct(const std::vector<SSpacePtr>& parts);

/// Same object truncated at a lower level bound.
SSpacePtr truncate(const FinSimplicialSpace& x, int M);
SSpaceMap truncate_map(const SSpaceMap& f, const SSpacePtr& source, const SSpacePtr& target);

/// Opposite simplicial space: reverses the simplicial (level) direction.
SSpacePtr opposite(const FinSimplicialSpace& x);
SSpaceMap opposite_map(const SSpaceMap& f, const SSpacePtr& source, const SSpacePtr& target);

/// Constant maps of spaces: the unique map to the point.
SSpaceMap to_point(const SSpacePtr& x);
/// The map F(0) -> X picking a vertex of X_0.
SSpaceMap point_map(const SSpacePtr& x, int vertex);
/// The map F(m) -> X classifying a vertex of X_m (for discrete-level use).
SSpaceMap classifying_map(const SSpacePtr& fm, int m, const SSpacePtr& x, int vertex);

// ---------------------------------------------------------------- hom search, exponentials, mapping spaces

struct SpaceHomOptions {
  /// Require q o h = base, given per level and source cell.
  const SSpaceMap* target_over = nullptr;
  std::vector<std::vector<Simplex>> over_values;
  std::vector<std::vector<std::optional<Simplex>>> pinned;
  std::size_t limit = 0;
};

struct SpaceHomResult {
  std::vector<SSpaceMap> maps;
  bool bounded = false;
  std::string warning;
};

SpaceHomResult hom(const SSpacePtr& a, const SSpacePtr& b, const SpaceHomOptions& opts = {});

struct Exponential {
  SSpacePtr space;
  bool bounded = false;
  std::string warning;
  SSpacePtr base;      // Y truncated at the level bound of space
  SSpacePtr exponent;  // X
  SSpacePtr y;
  int l_max = 0;
  /// products[m][l] = X x F(m) x Delta[l]; keyed[m] encodes maps out of them.
  std::vector<std::vector<SpaceProduct>> products;
  std::vector<sset::KeyedSet> keyed;
};
/// Y^X with levels m <= min(M_Y - gen(X), m_max) and space direction up to l_max.
/// Level (m, l) is hom(X x F(m) x Delta[l], Y).
Exponential exponential(const SSpacePtr& y, const SSpacePtr& x, int m_max, int l_max);
/// Evaluation Y^X -> Y at a vertex of X_0.
SSpaceMap evaluate(const Exponential& e, int vertex);
/// Restriction Y^B -> Y^A along f: A -> B (both exponentials with the same bounds).
SSpaceMap restrict_along(const Exponential& big, const Exponential& small, const SSpaceMap& f);
/// Constant maps Y -> Y^X.
SSpaceMap constant_maps(const Exponential& e);
/// The vertex of (Y^X)_0 given by p: X -> Y.
int exponential_vertex(const Exponential& e, const SSpaceMap& p);

/// Map(A, B)_l = hom(A x Delta[l], B); relative version counts maps over X.
struct MapSpaceResult {
  SSetPtr space;
  bool bounded = false;
  std::string warning;
};
MapSpaceResult map_space(const SSpacePtr& a, const SSpacePtr& b, int l_max, const SSpaceMap* a_over = nullptr,
                         const SSpaceMap* b_over = nullptr);

/// Fiber of p: X -> F(n) over f in F(n)_m, as a sub simplicial set of X_m.
sset::Sub fiber_over(const SSpaceMap& p, int n, const poset::MonotoneMap& f);
/// delta^*: X_{/f} -> X_{/f delta}.
SSetMap fiber_operator(const SSpaceMap& p, int n, const poset::MonotoneMap& f, const poset::MonotoneMap& delta);

// ---------------------------------------------------------------- discrete tables

/// Flat tables of a discrete simplicial space.
struct DiscreteView {
  int M = 0;
  std::vector<int> size;
  std::vector<std::vector<std::vector<int>>> face;  // [m][i][x]
  std::vector<std::vector<std::vector<int>>> degen; // [m][j][x]
  std::vector<std::vector<std::string>> label;

  /// theta^* on an element of level theta.n.
  int act(const poset::MonotoneMap& theta, int x) const;
};
DiscreteView discrete_view(const FinSimplicialSpace& x);
/// Levelwise vertex functions of a map of discrete spaces.
std::vector<std::vector<int>> discrete_components(const SSpaceMap& f);

/// Builds a discrete simplicial space from levelwise sets and generator tables.
SSpacePtr discrete_space(const std::vector<std::vector<std::string>>& labels,
                         const std::vector<std::vector<std::vector<int>>>& face,
                         const std::vector<std::vector<std::vector<int>>>& degen, bool exact);
SSpaceMap discrete_map(const SSpacePtr& source, const SSpacePtr& target, const std::vector<std::vector<int>>& comps);

}  // namespace fiblab::sspace
