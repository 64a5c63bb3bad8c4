#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace fiblab::poset {

/// A weakly increasing map [m] -> [n] of finite linear orders, stored by its value sequence.
struct MonotoneMap {
  int m = 0;
  int n = 0;
  std::vector<int> values;

  MonotoneMap() : values{0} {}
  /// Validates sizes, monotonicity and range; throws DomainError.
  MonotoneMap(int m, int n, std::vector<int> values);

  static MonotoneMap identity(int n);
  /// The constant map [m] -> [n] with value v.
  static MonotoneMap constant(int m, int n, int v);

  int operator()(int i) const { return values[static_cast<std::size_t>(i)]; }
  bool injective() const;
  bool surjective() const;
  bool is_identity() const { return m == n && injective(); }

  /// "(0,0,2):[2]->[3]"
  std::string str() const;
  /// Compact digit form used for labels ("002"); comma separated once n >= 10.
  std::string digits() const;

  friend bool operator==(const MonotoneMap&, const MonotoneMap&) = default;
  friend auto operator<=>(const MonotoneMap& a, const MonotoneMap& b) {
    if (auto c = a.m <=> b.m; c != 0) return c;
    if (auto c = a.n <=> b.n; c != 0) return c;
    return a.values <=> b.values;
  }
};

/// g o f; throws CompositionError unless f.n == g.m.
MonotoneMap compose(const MonotoneMap& g, const MonotoneMap& f);

struct Classification {
  bool is_right_convex_injection = false;
  bool is_right_convex_surjection = false;
};
Classification classify(const MonotoneMap& f);

struct Factorization {
  MonotoneMap p;  // right convex surjection
  MonotoneMap i;  // right convex injection
};
/// f = i_f o p_f with p_f onto [f(m)] and i_f = se(f(m), n).
Factorization factorize(const MonotoneMap& f);

/// se(m, n): [m] -> [n], i -> i.  Throws DomainError if m > n.
MonotoneMap standard_embedding(int m, int n);

/// delta^i: [n-1] -> [n], skipping i.
MonotoneMap coface(int n, int i);
/// sigma^j: [n+1] -> [n], hitting j twice.
MonotoneMap codegeneracy(int n, int j);

/// All monotone maps [m] -> [n] in lexicographic order of values.
std::vector<MonotoneMap> all_maps(int m, int n);
/// Number of monotone maps [m] -> [n], i.e. C(m+n+1, m+1).
std::uint64_t count_maps(int m, int n);

struct EpiMono {
  MonotoneMap epi;   // [m] ->> [k]
  MonotoneMap mono;  // [k] >-> [n]
};
EpiMono epi_mono(const MonotoneMap& f);

/// Bitmask of positions j with f(j) == f(j+1).
std::uint32_t ties_of(const MonotoneMap& f);
/// The surjection [dim] ->> [dim - popcount(ties)] with the given tie positions.
MonotoneMap surjection_from_ties(int dim, std::uint32_t ties);

/// i -> n - f(m - i); the action of the reversal involution of the simplex category.
MonotoneMap reversed(const MonotoneMap& f);

}  // namespace fiblab::poset
