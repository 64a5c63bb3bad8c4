#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "fiblab/poset.hpp"
#include "fiblab/util.hpp"

namespace fiblab::sset {

/// A simplex in Eilenberg-Zilber normal form: a nondegenerate cell together with the
/// surjection [dim] ->> [dim(cell)] applied to it, stored as the set of positions j
/// where the surjection repeats a value.  The degeneracy word s_{j1}...s_{jk}
/// (j1 > ... > jk) is exactly this tie set read from the top.
struct Simplex {
  int cell = -1;
  int dim = 0;
  std::uint32_t ties = 0;

  bool degenerate() const { return ties != 0; }
  int base_dim() const;
  /// Degeneracy word, strictly decreasing.
  std::vector<int> word() const;
  std::uint64_t key() const {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(cell)) << 32) ^
           (static_cast<std::uint64_t>(dim) << 26) ^ ties;
  }
  friend bool operator==(const Simplex&, const Simplex&) = default;
  friend auto operator<=>(const Simplex&, const Simplex&) = default;
};

/// Ties of sigma o tau where tau: [d2] ->> [d1] has ties `outer` and sigma: [d1] ->> [d0] has ties `inner`.
std::uint32_t compose_ties(std::uint32_t inner, std::uint32_t outer, int outer_dim);

class FinSimplicialSet;
using SSetPtr = std::shared_ptr<const FinSimplicialSet>;

/// A finitely presented simplicial set truncated at dim_bound.  Cells are numbered in
/// order of dimension, so the vertices are 0..vertex_count()-1.  exact() means every
/// nondegenerate simplex of the intended object has dimension <= dim_bound.
class FinSimplicialSet {
 public:
  int dim_bound() const { return dim_bound_; }
  bool exact() const { return exact_; }
  int cell_count() const { return static_cast<int>(cell_dim_.size()); }
  int cell_dim(int c) const { return cell_dim_[static_cast<std::size_t>(c)]; }
  const std::string& label(int c) const { return label_[static_cast<std::size_t>(c)]; }
  /// First cell id of dimension d (cells of dimension d are [first(d), first(d+1))).
  int first(int d) const;
  int count_cells(int d) const { return first(d + 1) - first(d); }
  int vertex_count() const { return count_cells(0); }
  /// Largest dimension carrying a nondegenerate cell, or -1 when empty.
  int top_dim() const { return static_cast<int>(offsets_.size()) - 2; }
  bool empty() const { return cell_dim_.empty(); }
  bool is_discrete() const { return top_dim() <= 0; }

  Simplex cell(int c) const { return Simplex{c, cell_dim(c), 0}; }
  const Simplex& cell_face(int c, int i) const;
  const std::vector<Simplex>& cell_faces(int c) const { return faces_[static_cast<std::size_t>(c)]; }

  Simplex face(const Simplex& x, int i) const;
  Simplex degeneracy(const Simplex& x, int j) const;
  /// x . sigma for the surjection [new_dim] ->> [x.dim] with the given ties.
  Simplex degenerate(const Simplex& x, std::uint32_t ties, int new_dim) const;
  /// theta^*(x) for theta: [m] -> [x.dim].
  Simplex apply(const Simplex& x, const poset::MonotoneMap& theta) const;
  /// The i-th vertex of x.
  int vertex(const Simplex& x, int i) const;
  std::vector<int> vertices(const Simplex& x) const;

  /// All k-simplices (degenerate ones included) ordered by cell, then tie mask.
  std::vector<Simplex> simplices(int k) const;
  std::uint64_t count(int k) const;

  /// "label" for cells, "label.s2s0" for degenerate simplices.
  std::string ref(const Simplex& x) const;
  std::optional<Simplex> parse_ref(const std::string& ref) const;
  int find(const std::string& label) const;

  /// Display name of an arbitrary simplex: vertex-sequence labels when every vertex label is
  /// a single character and vertex sequences separate simplices, otherwise ref().
  std::string simplex_label(const Simplex& x) const;

 private:
  friend class Builder;
  int dim_bound_ = 0;
  bool exact_ = true;
  bool vertex_labels_ = false;
  std::vector<int> cell_dim_;
  std::vector<std::string> label_;
  std::vector<std::vector<Simplex>> faces_;
  std::vector<int> offsets_;  // offsets_[d] = first cell of dim d; size top_dim + 2
  std::unordered_map<std::string, int> by_label_;
};

/// Incremental construction.  Cells may be added in any order; build() renumbers them by
/// dimension (stable within a dimension) and rewrites faces.  Face simplices refer to
/// provisional ids.
class Builder {
 public:
  Builder(int dim_bound = 0, bool exact = true) : dim_bound_(dim_bound), exact_(exact) {}
  void set_dim_bound(int d) { dim_bound_ = d; }
  void set_exact(bool e) { exact_ = e; }
  int add_cell(int dim, std::string label, std::vector<Simplex> faces = {});
  int size() const { return static_cast<int>(dims_.size()); }
  int dim_of(int provisional) const { return dims_[static_cast<std::size_t>(provisional)]; }
  /// Verifies face dimensions and the identities d_i d_j = d_{j-1} d_i.
  SSetPtr build(bool validate = true);
  /// Final id of a provisional id, valid after build().
  int final_id(int provisional) const { return remap_[static_cast<std::size_t>(provisional)]; }
  const std::vector<int>& remap() const { return remap_; }

 private:
  int dim_bound_;
  bool exact_;
  std::vector<int> dims_;
  std::vector<std::string> labels_;
  std::vector<std::vector<Simplex>> faces_;
  std::vector<int> remap_;
};

/// Replaces cell labels (must stay unique).
SSetPtr relabel(const FinSimplicialSet& s, const std::vector<std::string>& labels);
/// Same cells with a different truncation bound / exactness flag.
SSetPtr with_bound(const FinSimplicialSet& s, int dim_bound, bool exact);

/// A simplicial map, given on nondegenerate cells.
struct SSetMap {
  SSetPtr source;
  SSetPtr target;
  std::vector<Simplex> assign;

  Simplex operator()(const Simplex& x) const;
  /// Empty string when the map commutes with faces and preserves dimensions.
  std::string validate() const;
  bool injective() const;
  /// Surjective on simplices of every dimension <= dim.
  bool surjective_up_to(int dim) const;
  bool is_identity() const;
};

SSetMap identity_map(const SSetPtr& x);
SSetMap compose(const SSetMap& g, const SSetMap& f);
/// Unique map to the point.
SSetMap to_point(const SSetPtr& x);
/// Whether two maps agree on every cell.
bool same_map(const SSetMap& a, const SSetMap& b);

// ---------------------------------------------------------------- standard objects

SSetPtr point();
SSetPtr empty_set();
SSetPtr delta(int n);
SSetPtr boundary(int n);
SSetPtr horn(int n, int i);
/// Nerve of the contractible groupoid on l+1 objects, truncated at T; inexact for l >= 1.
SSetPtr j_truncated(int l, int T);
/// Discrete simplicial set on the given labels.
SSetPtr discrete(const std::vector<std::string>& labels);
SSetPtr discrete(int n);
/// Spine Delta[1] v ... v Delta[1] (n edges), built by iterated pushout.
SSetPtr spine(int n);

/// Simplex of delta(n) corresponding to the monotone map theta: [k] -> [n].
Simplex delta_simplex(int n, const poset::MonotoneMap& theta);
/// Monotone map [x.dim] -> [n] of a simplex of delta(n).
poset::MonotoneMap delta_map(int n, const Simplex& x);
/// The simplicial map delta(m) -> delta(n) induced by theta.
SSetMap delta_functor(const poset::MonotoneMap& theta);
/// The map delta(m) -> X classifying an m-simplex x.
SSetMap classifying_map(const SSetPtr& x_set, const Simplex& x);
/// Inclusion of a sub-simplicial set of delta(n) (boundary, horn) into delta(n).
SSetMap inclusion_into_delta(const SSetPtr& sub, int n);

// ---------------------------------------------------------------- keyed construction

using Key = std::vector<int>;

/// Abstract simplicial data: all simplices of each dimension as keys plus face and
/// degeneracy operators on keys.  The builder extracts nondegenerate keys and normal forms.
struct KeyedSpec {
  int dim_bound = 0;
  bool exact = true;
  std::function<std::vector<Key>(int dim)> simplices;
  std::function<Key(const Key&, int dim, int i)> face;
  std::function<Key(const Key&, int dim, int j)> degeneracy;
  std::function<std::string(const Key&, int dim)> label;
};

struct KeyedSet {
  SSetPtr set;
  /// Normal form of every enumerated key, per dimension.
  std::vector<std::unordered_map<Key, Simplex, VectorHash>> lookup;
  /// Key of each nondegenerate cell.
  std::vector<Key> cell_key;

  Simplex find(const Key& k, int dim) const;
  bool contains(const Key& k, int dim) const;
};

KeyedSet build_keyed(const KeyedSpec& spec);

// ---------------------------------------------------------------- limits and colimits

/// n-ary product.  Cells are tuples of equal-dimensional simplices with no common tie.
struct Product {
  SSetPtr set;
  std::vector<SSetPtr> factors;
  std::vector<SSetMap> projections;
  std::vector<std::vector<Simplex>> cell_tuple;
  std::unordered_map<Key, int, VectorHash> index;

  /// Normal form of the simplex with the given components (all of one dimension).
  Simplex tuple(const std::vector<Simplex>& comps) const;
  std::optional<Simplex> find_tuple(const std::vector<Simplex>& comps) const;
};

Product product(const std::vector<SSetPtr>& factors);
inline Product product(const SSetPtr& a, const SSetPtr& b) { return product(std::vector<SSetPtr>{a, b}); }

/// Induced map f1 x ... x fk between products.
SSetMap product_map(const Product& source, const Product& target, const std::vector<SSetMap>& comps);

struct Pullback {
  SSetPtr set;
  SSetMap p1, p2;
  std::vector<std::pair<Simplex, Simplex>> cell_pair;
  std::unordered_map<Key, int, VectorHash> index;

  Simplex pair(const Simplex& a, const Simplex& b) const;
  std::optional<Simplex> find_pair(const Simplex& a, const Simplex& b) const;
};

/// A x_C B for f: A -> C, g: B -> C.  Throws ShapeError if the targets differ.
Pullback pullback(const SSetMap& f, const SSetMap& g);

struct Pushout {
  SSetPtr set;
  SSetMap from_b, from_c;
};

/// B u_A C for i: A -> B, f: A -> C; one leg must be injective.
Pushout pushout(const SSetMap& i, const SSetMap& f);

struct Coproduct {
  SSetPtr set;
  std::vector<SSetMap> injections;
  /// Summand and cell within the summand, per cell.
  std::vector<std::pair<int, int>> origin;
};
Coproduct coproduct(const std::vector<SSetPtr>& parts, const std::vector<std::string>& prefixes = {});

/// The sub-simplicial set generated by a set of cells (closed under faces).
struct Sub {
  SSetPtr set;
  SSetMap inclusion;
};
Sub sub_generated(const SSetPtr& x, const std::vector<int>& cells);
/// Cells whose image lies over the given vertex of the target (a fiber of a map into a set).
Sub fiber(const SSetMap& p, int vertex);

/// Opposite simplicial set: face i becomes face d - i.
SSetPtr opposite(const FinSimplicialSet& x);

// ---------------------------------------------------------------- search

/// A constraint problem on maps of simplicial objects, used for hom sets and lifts.
struct HomOptions {
  /// Optional structure map of the target: every found map h must satisfy q o h = base(c).
  const SSetMap* target_over = nullptr;
  std::vector<Simplex> over_values;  // required image in q's target, per source cell
  /// Optional pinned values per source cell.
  std::vector<std::optional<Simplex>> pinned;
  std::size_t limit = 0;  // 0: all
};

struct HomResult {
  std::vector<SSetMap> maps;
  bool bounded = false;
  std::string warning;
};

/// All simplicial maps A -> B (under the given constraints), in deterministic order.
HomResult hom_set(const SSetPtr& a, const SSetPtr& b, const HomOptions& opts = {});
/// Whether hom(A, B) can be trusted given truncations.
bool hom_trusted(const FinSimplicialSet& a, const FinSimplicialSet& b, std::string* why = nullptr);

/// Map(A, B)_l = hom(A x Delta[l], B), truncated at l_max.
SSetPtr mapping_space(const SSetPtr& a, const SSetPtr& b, int l_max, std::string* warning = nullptr);

struct LiftResult {
  bool found = false;
  std::optional<SSetMap> lift;
  /// For square-free calls: number of squares examined and the first failing square.
  std::size_t squares = 0;
  std::optional<std::pair<SSetMap, SSetMap>> failing_square;
  bool bounded = false;
};

/// Lift in the square  A -u-> X,  B -v-> Y  with i: A >-> B, p: X -> Y.
LiftResult find_lift(const SSetMap& p, const SSetMap& i, const SSetMap& u, const SSetMap& v);
/// Quantifies over all commuting squares.
LiftResult has_rlp(const SSetMap& p, const SSetMap& i);

struct KanFailure {
  std::string kind;  // "horn" or "boundary"
  int n = 0;
  int i = -1;
};
struct KanReport {
  int bound = 0;
  bool fibration_up_to_bound = true;
  bool trivial_fibration_up_to_bound = true;
  bool bounded = false;  // some check needed cells beyond a truncation
  std::vector<KanFailure> failures;
};
/// RLP against horns Lambda[n]_i (1 <= n <= bound) and boundaries (0 <= n <= bound).
KanReport kan_check(const SSetMap& p, int bound);

}  // namespace fiblab::sset
