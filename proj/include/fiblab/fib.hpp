#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fiblab/cat.hpp"
#include "fiblab/oracle.hpp"
#include "fiblab/sspace.hpp"

namespace fiblab::fib {

using sspace::FinSimplicialSpace;
using sspace::SSpaceMap;
using sspace::SSpacePtr;

enum class Mode { exact_discrete, bounded_evidence };
enum class Side { left, right };
enum class Variant { zeroth, adjacent };
enum class Claim { left, right, reedy, segal, trivial };

const char* mode_name(Mode m);
const char* side_name(Side s);
const char* variant_name(Variant v);
const char* claim_name(Claim c);

/// exact_discrete when every level of every given space is discrete.
Mode natural_mode(const std::vector<SSpacePtr>& spaces);

struct LevelRow {
  int level = 0;
  std::size_t lhs = 0;
  std::size_t rhs = 0;
  bool pass = true;
  std::string note;
};

struct Counterexample {
  int level = 0;
  std::vector<std::string> lhs;
  std::vector<std::string> rhs;
  /// Right-hand elements without a preimage, or hit more than once.
  std::vector<std::string> unmatched;
  std::string detail;
};

struct FibrationReport {
  Claim claim = Claim::left;
  Mode mode = Mode::exact_discrete;
  Variant variant = Variant::zeroth;
  bool verdict = true;
  std::vector<LevelRow> per_level;
  std::optional<Counterexample> counterexample;
  /// Verdict of the other variant, when both were run.
  std::optional<bool> other_variant;
  std::vector<std::string> warnings;
  int bound = 0;
};

/// Left: Y_n -> X_n x_{X_0} Y_0 via vertex 0 (zeroth) or Y_n -> X_n x_{X_{n-1}} Y_{n-1} via d_n
/// (adjacent).  Right uses vertex n, resp. d_0.  Bounded mode runs kan_check on the comparison
/// maps up to `bound`.
FibrationReport fibration_check(const SSpaceMap& p, Side side, Variant variant, Mode mode, int bound = 2);
/// Runs both variants; the zeroth report carries the adjacent verdict in other_variant.
FibrationReport fibration_check_both(const SSpaceMap& p, Side side, Mode mode, int bound = 2);

/// Matching maps Y_n -> M_n Y x_{M_n X} X_n checked with kan_check up to bound (trivial: trivial fibrations).
FibrationReport reedy_bounded(const SSpaceMap& p, int bound, bool trivial = false);

/// Segal maps X_n -> X_1 x_{X_0} ... x_{X_0} X_1 for 2 <= n <= level bound.
FibrationReport segal_check(const SSpacePtr& x, Mode mode, int bound = 2);

using cat::Direction;

struct SliceOptions {
  int l_max = 1;
  /// Use the exponential construction even for discrete W.
  bool general = false;
};

struct SliceResult {
  SSpacePtr space;
  SSpaceMap projection;
  bool bounded = false;
  std::string warning;
  std::string path;  // "discrete" or "exponential"
  /// Discrete path: witness[m][v] is the square Delta[m] x Delta[1] -> first_row(W) of vertex v.
  sset::KeyedSet row;
  std::vector<sset::Product> squares;
  std::vector<std::vector<sset::SSetMap>> witness;
};

/// W_{x/} = F(0) x_W W^{F(1)} (under, source-end evaluation) or W_{/x} (over, target end),
/// with the projection given by the other end.
SliceResult slice_space(const SSpacePtr& w, int x, Direction direction, const SliceOptions& opts = {});

struct InitialReport {
  bool value = false;
  Mode mode = Mode::exact_discrete;
  FibrationReport trivial_reedy;
  FibrationReport segal;
  std::vector<std::string> warnings;
};
/// x is initial when W_{x/} -> W is a trivial Reedy fibration.
InitialReport initial_object_check(const SSpacePtr& w, int x, int bound = 2, const SliceOptions& opts = {});

struct CoconeResult {
  SSpacePtr space;
  SSpaceMap projection;
  bool bounded = false;
  std::string warning;
  std::string path;
};
/// X_{p/} = F(0) x_{X^K} X^{F(1) x K} x_{X^K} X.
CoconeResult cocone_space(const SSpaceMap& p, const SliceOptions& opts = {});

struct ColimitReport {
  bool has_colimit = false;
  std::optional<int> vertex;         // in X_0
  std::optional<int> cocone_vertex;  // in (X_{p/})_0
  std::size_t candidates = 0;
  std::vector<std::string> warnings;
};
ColimitReport colimit_evidence(const SSpaceMap& p, int bound = 2, const SliceOptions& opts = {});

struct CofinalRow {
  int vertex = 0;
  std::string label;
  oracle::Verdict verdict;
};
struct CofinalReport {
  bool value = true;
  oracle::Tier tier = oracle::Tier::decisive;
  std::vector<CofinalRow> rows;
  std::vector<std::string> warnings;
};
/// Quillen A: for each vertex y of Y_0, Y_{y/} x_Y X is diagonally contractible.
CofinalReport cofinal_evidence(const SSpaceMap& f, int hom_bound = 3, const SliceOptions& opts = {});

struct SpanLeg {
  int edge = 0;  // vertex of the base level 1
  std::string label;
  int source = 0, target = 0;  // base vertices
  std::size_t fiber_source = 0, fiber_edge = 0, fiber_target = 0;
  bool left_leg_bijective = false;   // L_e -> L_source
  bool right_leg_bijective = false;  // L_e -> L_target
};
struct SpanProfile {
  std::vector<SpanLeg> spans;
  bool also_right = true;
};
/// Fibers over the non-degenerate edges of a discrete base with both boundary maps.
SpanProfile span_profile(const SSpaceMap& l);

/// Main-Yoneda instance: |Map_{/X}(X_{x/}, L)_0| against |fiber of L over x|.
struct YonedaSpaceReport {
  std::size_t maps = 0;
  std::size_t fiber = 0;
  bool equal = false;
  bool bounded = false;
  std::string warning;
};
YonedaSpaceReport yoneda_space_check(const SSpaceMap& l, int x);

/// Pullback of p along a map F(n) -> X classifying a vertex of X_n.
SSpaceMap pull_to_simplex(const SSpaceMap& p, int n, int vertex);

/// Discrete nerve embedding: embed_discrete(nerve(C, M), M).
SSpacePtr nerve_space(const cat::FinCategory& c, int M);

}  // namespace fiblab::fib
