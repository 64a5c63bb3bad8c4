#include <catch_amalgamated.hpp>

#include "fiblab/error.hpp"
#include "fiblab/sspace.hpp"
#include "fiblab/straighten.hpp"
#include "fiblab/fib.hpp"
#include "oracles.hpp"

using namespace fiblab;
using namespace fiblab::sspace;
using poset::MonotoneMap;

namespace {

std::vector<std::size_t> level_sizes(const FinSimplicialSpace& x) {
  std::vector<std::size_t> out;
  for (int m = 0; m <= x.level_bound(); ++m) out.push_back(x.level_size(m));
  return out;
}

std::vector<int> cell_counts(const sset::FinSimplicialSet& s) {
  std::vector<int> out;
  for (int d = 0; d <= s.top_dim(); ++d) out.push_back(s.count_cells(d));
  return out;
}

std::vector<std::string> vertex_labels(const sset::FinSimplicialSet& s) {
  std::vector<std::string> out;
  for (int v = 0; v < s.vertex_count(); ++v) out.push_back(s.label(v));
  std::sort(out.begin(), out.end());
  return out;
}

/// Order-preserving maps [1] x [m] -> [n], by enumeration.
std::size_t grid_maps(int m, int n) {
  std::size_t count = 0;
  for (const auto& bottom : suite::monotone_sequences(m, n))
    for (const auto& top : suite::monotone_sequences(m, n)) {
      bool ok = true;
      for (int k = 0; k <= m; ++k) ok = ok && bottom[k] <= top[k];
      count += ok;
    }
  return count;
}

}  // namespace

TEST_CASE("standard spaces", "[sspace]") {
  auto f2 = F(2, 3);
  CHECK(f2->level_size(1) == 6);
  for (int m = 0; m <= 3; ++m) CHECK(f2->level_size(m) == poset::count_maps(m, 2));
  CHECK(f2->validate().empty());
  auto g2 = G(2, 2);
  CHECK(vertex_labels(g2->level(0)) == std::vector<std::string>{"0", "1", "2"});
  CHECK(vertex_labels(g2->level(1)) == std::vector<std::string>{"00", "01", "11", "12", "22"});
  CHECK(g2->validate().empty());
  auto e1 = E(1, 2);
  CHECK(level_sizes(*e1) == std::vector<std::size_t>{2, 4, 8});
  CHECK(vertex_labels(e1->level(1)).size() == 4);
  CHECK(dF(2, 3)->level_size(2) == poset::count_maps(2, 2) - 1);
  CHECK(L(2, 1, 2)->validate().empty());
  CHECK_THROWS_AS(F(-1, 2), DomainError);
}

TEST_CASE("embeddings", "[sspace]") {
  for (int n = 0; n <= 3; ++n) CHECK(level_sizes(*embed_discrete(sset::delta(n), 3)) == level_sizes(*F(n, 3)));
  auto k = sset::boundary(2);
  auto c = embed_constant(k, 3);
  for (int m = 0; m <= 3; ++m) {
    CHECK(cell_counts(c->level(m)) == cell_counts(*k));
    for (int i = 0; m > 0 && i <= m; ++i) CHECK(c->face(m, i).is_identity());
  }
  CHECK(level_sizes(*embed_discrete(sset::j_truncated(1, 3), 3)) == level_sizes(*E(1, 3)));
}

TEST_CASE("first row and diagonal", "[sspace]") {
  for (int n = 0; n <= 3; ++n) CHECK(cell_counts(*first_row(*F(n, n))) == cell_counts(*sset::delta(n)));
  auto k = sset::horn(2, 0);
  auto row = first_row(*embed_constant(k, 3));
  CHECK(row->vertex_count() == k->vertex_count());
  auto e = first_row(*E(1, 3));
  auto j = sset::j_truncated(1, 3);
  for (int d = 0; d <= 3; ++d) CHECK(e->count(d) == j->count(d));

  auto s = sset::boundary(2);
  CHECK(cell_counts(*diagonal(*embed_discrete(s, 3))) == cell_counts(*s));
  CHECK(cell_counts(*diagonal(*embed_constant(s, 3))) == cell_counts(*s));
  auto prism = diagonal(*product({F(1, 3), embed_constant(sset::delta(1), 3)}).space);
  CHECK(prism->count_cells(2) == 2);
}

TEST_CASE("limits and colimits of spaces", "[sspace]") {
  auto f1 = F(1, 3);
  auto prod = product({f1, f1});
  CHECK(level_sizes(*prod.space) == std::vector<std::size_t>{4, 9, 16, 25});
  auto f2 = F(2, 3);
  auto edge = classifying_map(f1, 1, f2, F_vertex(*f2, 2, MonotoneMap(1, 2, {0, 2})));
  auto po = pushout(edge, edge);
  CHECK(level_sizes(*po.space) == level_sizes(*prod.space));
  CHECK(po.space->validate().empty());

  auto y = G(2, 3);
  auto to_pt = to_point(y);
  auto pb = pullback(to_pt, identity_map(to_pt.target));
  CHECK(level_sizes(*pb.space) == level_sizes(*y));

  auto f0 = F(0, 3);
  auto glue = pushout(classifying_map(f0, 0, f1, 1), classifying_map(f0, 0, f1, 0));
  CHECK(level_sizes(*glue.space) == level_sizes(*G(2, 3)));
}

TEST_CASE("exponentials", "[sspace]") {
  auto y = G(2, 2);
  auto e0 = exponential(y, F(0, 2), 2, 0);
  CHECK(level_sizes(*e0.space) == level_sizes(*y));
  auto nerve = fib::nerve_space(*cat::ordinal(2), 3);
  auto e1 = exponential(nerve, F(1, 3), 2, 0);
  for (int m = 0; m <= e1.space->level_bound(); ++m) CHECK(e1.space->level_size(m) == grid_maps(m, 2));
  CHECK(exponential(F(1, 2), F(1, 2), 1, 0).space->level_size(0) == 3);
}

TEST_CASE("mapping spaces", "[sspace]") {
  auto x = G(2, 2);
  CHECK(map_space(F(0, 2), x, 0).space->vertex_count() == static_cast<int>(x->level_size(0)));
  for (int n = 0; n <= 2; ++n)
    for (int m = 0; m <= 2; ++m)
      CHECK(map_space(F(n, 3), F(m, 3), 0).space->vertex_count() == static_cast<int>(poset::count_maps(n, m)));
  std::mt19937_64 rng(7);
  auto p = straighten::random_chain_functor(1, cat::Variance::contravariant, rng);
  auto l = straighten::grothendieck_fibration(p, 2);
  auto at0 = point_map(l.target, 0);
  CHECK(map_space(at0.source, l.source, 0, &at0, &l).space->vertex_count() == p.size(0));
}

TEST_CASE("fibers over simplices", "[sspace]") {
  auto fn = F(2, 2);
  auto id = identity_map(fn);
  for (int m = 0; m <= 2; ++m)
    for (const auto& f : poset::all_maps(m, 2)) CHECK(fiber_over(id, 2, f).set->cell_count() == 1);
  std::mt19937_64 rng(11);
  auto p = straighten::random_chain_functor(2, cat::Variance::contravariant, rng);
  auto r = straighten::grothendieck_fibration(p, 2);
  CHECK(fiber_over(r, 2, MonotoneMap::identity(2)).set->vertex_count() == p.size(2));
}

TEST_CASE("t cells", "[sspace]") {
  for (int n = 0; n <= 2; ++n) CHECK(level_sizes(*t_cell(n, 0, 2, 2)) == level_sizes(*F(n, 2)));
  auto t = t_cell(0, 1, 3, 2);
  auto j = sset::j_truncated(1, 3);
  for (int d = 0; d <= 3; ++d) CHECK(t->level(0).count(d) == j->count(d));
  CHECK(t_cell(1, 1, 1, 1)->level(1).count(1) == 12);
}

TEST_CASE("hom, opposite, truncation", "[sspace]") {
  CHECK(hom(F(1, 2), F(2, 2)).maps.size() == 6);
  auto g = G(3, 3);
  auto op = opposite(*g);
  CHECK(level_sizes(*op) == level_sizes(*g));
  CHECK(op->validate().empty());
  auto t = truncate(*g, 1);
  CHECK(t->level_bound() == 1);
  CHECK(t->level_ptr(1) == g->level_ptr(1));
}
