#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "fiblab/sset.hpp"

namespace fiblab::cat {

struct Morphism {
  std::string id;
  int src = 0;
  int tgt = 0;
};

/// A finite category with an explicit composition table.
class FinCategory {
 public:
  /// compose lists triples (f, g, h) with h = g o f; identities[c] is the id of c.
  /// Composites with an identity may be omitted.
  FinCategory(std::vector<std::string> objects, std::vector<Morphism> morphisms,
              const std::vector<std::array<int, 3>>& compose, std::vector<int> identities);

  int object_count() const { return static_cast<int>(objects_.size()); }
  int morphism_count() const { return static_cast<int>(morphisms_.size()); }
  const std::string& object(int c) const { return objects_[static_cast<std::size_t>(c)]; }
  const Morphism& morphism(int f) const { return morphisms_[static_cast<std::size_t>(f)]; }
  int src(int f) const { return morphism(f).src; }
  int tgt(int f) const { return morphism(f).tgt; }
  int id(int c) const { return identities_[static_cast<std::size_t>(c)]; }
  bool is_identity(int f) const { return id(src(f)) == f; }
  /// g o f, or -1 when tgt(f) != src(g).
  int comp(int g, int f) const { return comp_[static_cast<std::size_t>(g) * morphisms_.size() + static_cast<std::size_t>(f)]; }
  const std::vector<int>& hom(int c, int d) const { return hom_[static_cast<std::size_t>(c) * objects_.size() + static_cast<std::size_t>(d)]; }
  int find_object(const std::string& name) const;
  int find_morphism(const std::string& name) const;
  /// Non-identity morphisms generating the category under composition.
  const std::vector<int>& generators() const { return generators_; }
  /// Empty when associativity and the unit laws hold.
  std::string validate() const;

  /// Concrete categories: each object a finite set, each morphism a function (empty otherwise).
  bool concrete() const { return !concrete_sizes_.empty(); }
  const std::vector<int>& concrete_sizes() const { return concrete_sizes_; }
  const std::vector<std::vector<int>>& concrete_maps() const { return concrete_maps_; }
  void set_concrete(std::vector<int> sizes, std::vector<std::vector<int>> maps);

 private:
  std::vector<int> concrete_sizes_;
  std::vector<std::vector<int>> concrete_maps_;
  std::vector<std::string> objects_;
  std::vector<Morphism> morphisms_;
  std::vector<int> identities_;
  std::vector<int> comp_;
  std::vector<std::vector<int>> hom_;
  std::vector<int> generators_;
};

using CatPtr = std::shared_ptr<const FinCategory>;

/// [n] as a category.
CatPtr ordinal(int n);
/// The thin category of a partial order given by leq[i][j] (reflexive, transitive, antisymmetric).
CatPtr poset_category(const std::vector<std::vector<bool>>& leq, std::vector<std::string> names = {});
/// The contractible groupoid I[l].
CatPtr groupoid(int l);
/// The terminal category.
CatPtr terminal_category();
CatPtr opposite(const FinCategory& c);

/// Random concrete category: objects are small finite sets, morphisms a composition-closed
/// family of functions generated by random ones.
CatPtr random_category(std::mt19937_64& rng, int max_objects = 5, int max_morphisms = 12);
/// Random partial order on n elements; with_top adds a greatest element.
CatPtr random_poset(std::mt19937_64& rng, int n, bool with_top);

struct Functor {
  CatPtr source;
  CatPtr target;
  std::vector<int> on_objects;
  std::vector<int> on_morphisms;
  std::string validate() const;
};

Functor identity_functor(const CatPtr& c);

enum class Variance { covariant, contravariant };

/// Functor C -> Set (covariant) or C^op -> Set (contravariant); the elements of F(c) are 0..size-1.
struct SetFunctor {
  CatPtr base;
  Variance variance = Variance::covariant;
  std::vector<int> sizes;
  std::vector<std::vector<std::string>> labels;
  /// Covariant: maps[f] : F(src f) -> F(tgt f).  Contravariant: maps[f] : F(tgt f) -> F(src f).
  std::vector<std::vector<int>> maps;

  int size(int c) const { return sizes[static_cast<std::size_t>(c)]; }
  int apply(int f, int x) const { return maps[static_cast<std::size_t>(f)][static_cast<std::size_t>(x)]; }
  /// Object the morphism maps from / to in this functor's direction.
  int from(int f) const;
  int to(int f) const;
  std::string validate() const;
};

SetFunctor representable(const CatPtr& c, int object, Variance variance);
SetFunctor constant_functor(const CatPtr& c, int size, Variance variance);
/// Random finite coproduct of representables, constants and (on concrete categories)
/// the underlying-set functor or its S-dual; all values of size <= max_size.
SetFunctor random_functor(const CatPtr& c, Variance variance, std::mt19937_64& rng, int max_size = 3);

/// Components per object: alpha[c][x] in G(c).
using NatTrans = std::vector<std::vector<int>>;
/// All natural transformations F => G (same base and variance), in deterministic order.
std::vector<NatTrans> natural_transformations(const SetFunctor& f, const SetFunctor& g, std::size_t limit = 0);

struct FiberedCategory {
  CatPtr total;
  CatPtr base;
  Functor projection;
};

/// Under (c/) or over (/c) category with its projection (target resp. source).
enum class Direction { under, over };
FiberedCategory slice_category(const CatPtr& c, int object, Direction direction);

struct FiberedReport {
  bool fibered_in_sets = false;
  bool cofibered_in_sets = false;
  std::string fibered_witness;
  std::string cofibered_witness;
};
FiberedReport fibered_check(const FiberedCategory& p);

/// Category of elements with its projection (cofibered for covariant, fibered for contravariant).
FiberedCategory grothendieck_cat(const SetFunctor& f);

/// Equivalence classes of the coequalizer of phi, psi over the coproduct of P(c) x F(c).
struct Tensor {
  /// Representative (object, a, b) per class.
  std::vector<std::array<int, 3>> classes;
  /// Class of (c, a, b): index offset[c] + a * F(c) + b.
  std::vector<int> class_of;
  std::vector<int> offset;
  std::vector<int> fsize;
  int of(int c, int a, int b) const {
    return class_of[static_cast<std::size_t>(offset[static_cast<std::size_t>(c)] + a * fsize[static_cast<std::size_t>(c)] + b)];
  }
  std::size_t size() const { return classes.size(); }
};
Tensor tensor_functors(const SetFunctor& p, const SetFunctor& f);

/// pi_0 N(D x_C E): components of the pullback category, given by object pairs.
struct FiberedTensor {
  std::vector<std::pair<int, int>> objects;  // (d, e) with equal images
  std::vector<int> component;                // per object pair
  int count = 0;
  int of(int d, int e) const;
};
FiberedTensor tensor_fibered(const FiberedCategory& d, const FiberedCategory& e);

/// Functors A -> D commuting with the projections.
std::vector<Functor> functors_over(const FiberedCategory& a, const FiberedCategory& d, std::size_t limit = 0);

enum class YonedaMode { hom_functor, tensor_functor, hom_fibered, tensor_fibered };
const char* mode_name(YonedaMode m);

struct YonedaReport {
  YonedaMode mode = YonedaMode::hom_functor;
  bool bijection = false;
  std::size_t lhs = 0;
  std::size_t rhs = 0;
  /// (lhs element, image) pairs.
  std::vector<std::pair<std::string, std::string>> table;
  std::string detail;
};

/// hom_functor: Nat(Hom(c,-), F) -> F(c) for covariant F (Nat(Hom(-,c), F) for contravariant F).
YonedaReport yoneda_hom_functor(const SetFunctor& f, int c);
/// tensor_functor: Hom(c,-) (x) F -> F(c) for contravariant F.
YonedaReport yoneda_tensor_functor(const SetFunctor& f, int c);
/// hom_fibered: Fun_{/C}(C_{/c}, D) -> {c} x_C D for D fibered in sets.
YonedaReport yoneda_hom_fibered(const FiberedCategory& d, int c);
/// tensor_fibered: C_{c/} (x)_C D -> {c} (x)_C D for D fibered in sets.
YonedaReport yoneda_tensor_fibered(const FiberedCategory& d, int c);

struct HomTensorReport {
  bool bijection = false;
  std::size_t lhs = 0;  // Nat(P, Hom(F(-), S))
  std::size_t rhs = 0;  // Hom(P (x) F, S)
  std::string detail;
};
/// Largest |S|^|P (x) F| enumerated by hom_tensor_check.
inline constexpr double kHomTensorCap = 65536;
HomTensorReport hom_tensor_check(const SetFunctor& p, const SetFunctor& f, int s);

/// Nerve truncated at T; exact when no chain of non-identity morphisms is longer than T.
sset::SSetPtr nerve(const FinCategory& c, int T);
/// Keyed nerve: cell keys are chains of morphisms (a single object for vertices).
sset::KeyedSet nerve_keyed(const FinCategory& c, int T);

}  // namespace fiblab::cat
