#include "acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <sstream>

#include "fiblab/error.hpp"
#include "fiblab/fib.hpp"
#include "fiblab/oracle.hpp"
#include "fiblab/straighten.hpp"
#include "oracles.hpp"

namespace fiblab::suite {

using fib::Mode;
using fib::Side;
using fib::Variant;
using poset::MonotoneMap;
using sset::Simplex;
using sspace::SSpaceMap;
using sspace::SSpacePtr;

namespace {

std::uint64_t derive(std::uint64_t seed, int id) { return seed ^ (0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(id)); }

/// Collects failure messages, keeping the first few.
struct Tally {
  std::size_t checks = 0;
  std::size_t failures = 0;
  std::vector<std::string> first;

  void check(bool ok, const std::string& what) {
    ++checks;
    if (ok) return;
    ++failures;
    if (first.size() < 3) first.push_back(what);
  }
  void merge(const Tally& t) {
    checks += t.checks;
    failures += t.failures;
    for (const auto& f : t.first)
      if (first.size() < 3) first.push_back(f);
  }
  bool pass() const { return failures == 0 && checks > 0; }
  std::string failures_text() const {
    std::string s = std::to_string(failures) + " failure(s)";
    for (const auto& f : first) s += "; " + f;
    return s;
  }
};

std::string sizes_text(const sspace::FinSimplicialSpace& x) {
  std::string s;
  for (int m = 0; m <= x.level_bound(); ++m) s += (m ? "," : "") + std::to_string(x.level_size(m));
  return s;
}

/// g o f after truncating both to the smaller level bound; the level spaces are shared.
SSpaceMap compose_truncated(const SSpaceMap& g, const SSpaceMap& f) {
  const int L = std::min(f.source->level_bound(), g.source->level_bound());
  auto src = f.source->level_bound() == L ? f.source : sspace::truncate(*f.source, L);
  auto tgt = g.target->level_bound() == L ? g.target : sspace::truncate(*g.target, L);
  SSpaceMap h{src, tgt, {}};
  for (int m = 0; m <= L; ++m) h.components.push_back(sset::compose(g.components[m], f.components[m]));
  return h;
}

SSpaceMap truncated(const SSpaceMap& f, int L) {
  if (f.source->level_bound() == L) return f;
  return sspace::truncate_map(f, sspace::truncate(*f.source, L), sspace::truncate(*f.target, L));
}

bool left_fib(const SSpaceMap& p) { return fib::fibration_check(p, Side::left, Variant::zeroth, Mode::exact_discrete).verdict; }

// ---------------------------------------------------------------- shared nerve corpus

struct NerveCase {
  cat::CatPtr c;
  int x = 0;
  SSpacePtr w;
  fib::SliceResult slice;
  std::string mismatch;
};

std::shared_ptr<const std::vector<NerveCase>> nerve_cases(std::uint64_t seed) {
  static std::mutex mu;
  static std::map<std::uint64_t, std::shared_ptr<const std::vector<NerveCase>>> cache;
  std::lock_guard<std::mutex> lock(mu);
  if (auto it = cache.find(seed); it != cache.end()) return it->second;
  auto cats = category_corpus(derive(seed, 4), 50);
  std::vector<std::pair<int, int>> jobs;
  for (int k = 0; k < static_cast<int>(cats.size()); ++k)
    for (int x = 0; x < cats[k]->object_count(); ++x) jobs.emplace_back(k, x);
  auto out = std::make_shared<std::vector<NerveCase>>(jobs.size());
  parallel_for(jobs.size(), [&](std::size_t i) {
    auto& nc = (*out)[i];
    nc.c = cats[jobs[i].first];
    nc.x = jobs[i].second;
    nc.mismatch = compare_under_slice(nc.c, nc.x, kNerveLevels, &nc.slice, &nc.w);
  });
  cache[seed] = out;
  return out;
}

cat::SetFunctor worked_example_functor() {
  // P(2) = {a,b,c} -> P(1) = {a,b} -> P(0) = {a}
  auto c = cat::ordinal(2);
  cat::SetFunctor p{c, cat::Variance::contravariant, {1, 2, 3}, {{"a"}, {"a", "b"}, {"a", "b", "c"}}, {}};
  auto restrict = [](int i, int j, int x) {
    if (i == j) return x;
    if (j == 2 && i == 1) return std::min(x, 1);
    return 0;
  };
  for (int f = 0; f < c->morphism_count(); ++f) {
    std::vector<int> m;
    for (int x = 0; x < p.size(c->tgt(f)); ++x) m.push_back(restrict(c->src(f), c->tgt(f), x));
    p.maps.push_back(std::move(m));
  }
  return p;
}

// ---------------------------------------------------------------- criteria

CriterionResult c1_g2_counterexample(std::uint64_t) {
  CriterionResult r{1, "G(2) counterexample", false, {}, 0};
  auto g2 = sspace::G(2, 2);
  auto sl = fib::slice_space(g2, 0, fib::Direction::under);
  auto rep = fib::fibration_check(sl.projection, Side::left, Variant::zeroth, Mode::exact_discrete);
  const fib::LevelRow* row = nullptr;
  for (const auto& l : rep.per_level)
    if (l.level == 1) row = &l;
  const std::set<std::string> expected{"(00,00)", "(00,01)", "(01,11)", "(01,12)"};
  bool ok = !rep.verdict && row && row->lhs == 3 && row->rhs == 4 && !row->pass && rep.counterexample &&
            rep.counterexample->level == 1;
  std::string detail;
  if (ok) {
    const auto& ce = *rep.counterexample;
    std::set<std::string> rhs(ce.rhs.begin(), ce.rhs.end());
    ok = rhs == expected && ce.rhs.size() == 4 && ce.lhs.size() == 3 &&
         std::find_if(ce.unmatched.begin(), ce.unmatched.end(), [](const std::string& s) { return s.rfind("(01,12)", 0) == 0; }) !=
             ce.unmatched.end();
    detail = "level 1: |LHS|=3 {" + join(ce.lhs, " ") + "} vs |RHS|=4 {" + join(ce.rhs, " ") + "}";
  } else {
    detail = row ? "level 1: " + std::to_string(row->lhs) + " vs " + std::to_string(row->rhs) : "no level-1 row";
  }
  r.pass = ok;
  r.detail = detail;
  return r;
}

CriterionResult c2_factorization(std::uint64_t) {
  CriterionResult r{2, "unique factorization", false, {}, 0};
  Tally t;
  std::size_t maps = 0;
  for (int m = 0; m <= 6; ++m)
    for (int n = 0; n <= 6; ++n) {
      auto splits = all_splittings(m, n);
      for (const auto& f : poset::all_maps(m, n)) {
        ++maps;
        auto it = splits.find(f.values);
        const bool unique = it != splits.end() && it->second.size() == 1;
        t.check(unique, f.str() + " has no unique splitting");
        if (!unique) continue;
        const auto& [p, i] = it->second[0];
        auto fac = poset::factorize(f);
        const int k = static_cast<int>(i.size()) - 1;
        t.check(fac.p.values == p && fac.p.m == m && fac.p.n == k && fac.i.values == i && fac.i.m == k && fac.i.n == n,
                f.str() + ": factorize disagrees with the brute-force splitting");
      }
    }
  std::size_t sequences = 0;
  for (int m = 0; m <= 6; ++m)
    for (int n = 0; n <= 6; ++n) sequences += monotone_sequences(m, n).size();
  t.check(sequences == maps, "all_maps count differs from the sequence enumeration");
  r.pass = t.pass();
  r.detail = std::to_string(maps) + " maps, " + t.failures_text();
  return r;
}

CriterionResult c3_yoneda(std::uint64_t seed) {
  CriterionResult r{3, "Yoneda suite", false, {}, 0};
  auto cats = category_corpus(derive(seed, 3), 100);
  std::vector<Tally> per(cats.size());
  parallel_for(cats.size(), [&](std::size_t k) {
    const auto& c = cats[k];
    std::mt19937_64 rng(derive(seed, 300 + static_cast<int>(k)));
    auto cov = cat::random_functor(c, cat::Variance::covariant, rng);
    auto contra = cat::random_functor(c, cat::Variance::contravariant, rng);
    auto d = cat::grothendieck_cat(contra);
    auto& t = per[k];
    t.check(cat::fibered_check(d).fibered_in_sets, "category of elements is not fibered");
    for (int o = 0; o < c->object_count(); ++o) {
      const std::string where = "category " + std::to_string(k) + " object " + c->object(o);
      t.check(cat::yoneda_hom_functor(cov, o).bijection, where + ": hom_functor (covariant)");
      t.check(cat::yoneda_hom_functor(contra, o).bijection, where + ": hom_functor (contravariant)");
      t.check(cat::yoneda_tensor_functor(contra, o).bijection, where + ": tensor_functor");
      t.check(cat::yoneda_hom_fibered(d, o).bijection, where + ": hom_fibered");
      t.check(cat::yoneda_tensor_fibered(d, o).bijection, where + ": tensor_fibered");
    }
  });
  Tally all;
  for (const auto& t : per) all.merge(t);
  // hom-tensor adjunction: instances above the enumeration cap are redrawn
  std::mt19937_64 rng(derive(seed, 31));
  Tally ht;
  int skipped = 0;
  for (int attempt = 0; ht.checks < 50 && attempt < 2000; ++attempt) {
    const auto& c = cats[static_cast<std::size_t>(attempt) % cats.size()];
    auto p = cat::random_functor(c, cat::Variance::contravariant, rng, 2);
    auto f = cat::random_functor(c, cat::Variance::covariant, rng, 2);
    const int s = 1 + static_cast<int>(rng() % 3);
    try {
      auto rep = cat::hom_tensor_check(p, f, s);
      ht.check(rep.bijection, "hom-tensor instance " + std::to_string(attempt) + ": " + rep.detail);
    } catch (const PreconditionError&) {
      ++skipped;
    }
  }
  all.merge(ht);
  r.pass = all.pass() && ht.checks == 50;
  r.detail = std::to_string(all.checks - ht.checks) + " Yoneda checks over 100 categories, " + std::to_string(ht.checks) +
             " hom-tensor instances (" + std::to_string(skipped) + " redrawn above the cap), " + all.failures_text();
  return r;
}

CriterionResult c4_under_space(std::uint64_t seed) {
  CriterionResult r{4, "under-space coherence", false, {}, 0};
  auto cases = nerve_cases(seed);
  std::vector<Tally> per(cases->size());
  parallel_for(cases->size(), [&](std::size_t i) {
    const auto& nc = (*cases)[i];
    const std::string where = "case " + std::to_string(i) + " (x=" + nc.c->object(nc.x) + ")";
    per[i].check(nc.mismatch.empty(), where + ": " + nc.mismatch);
    if (nc.mismatch.empty()) per[i].check(left_fib(nc.slice.projection), where + ": projection is not a left fibration");
  });
  Tally all;
  for (const auto& t : per) all.merge(t);
  r.pass = all.pass();
  r.detail = std::to_string(cases->size()) + " (category, object) pairs over 50 categories, " + all.failures_text();
  return r;
}

CriterionResult c5_straightening(std::uint64_t seed) {
  CriterionResult r{5, "straightening", false, {}, 0};
  auto corpus = chain_corpus(derive(seed, 5), 100, cat::Variance::contravariant);
  std::vector<Tally> per(corpus.size());
  parallel_for(corpus.size(), [&](std::size_t k) {
    const auto& inst = corpus[k];
    auto& t = per[k];
    const std::string where = "instance " + std::to_string(k) + " (n=" + std::to_string(inst.n) + ")";
    auto s = straighten::straighten(inst.fibration);
    t.check(s.straightened.source->validate().empty() && s.straightened.validate().empty() && s.comparison.validate().empty(),
            where + ": simplicial identities");
    auto cond = straighten::check_straightening_condition(s);
    t.check(cond.empty(), where + ": " + cond);
    auto cmp = straighten::check_comparison(s);
    t.check(cmp.empty(), where + ": " + cmp);
    bool literal = true;
    for (std::size_t m = 0; m < s.summand_inclusion.size(); ++m)
      for (std::size_t f = 0; f < s.summand_inclusion[m].size(); ++f)
        literal = literal && s.summand_inclusion[m][f].source.get() == s.chain[s.summand_chain[m][f]].set.get();
    t.check(literal, where + ": summands are not the chain spaces");
  });
  Tally all;
  for (const auto& t : per) all.merge(t);

  // worked example over F(2)
  auto p = worked_example_functor();
  auto R = straighten::grothendieck_fibration(p, 2);
  auto s = straighten::straighten(R);
  bool chain_ok = s.chain.size() == 3;
  std::string chain_text;
  for (int i = 0; chain_ok && i <= 2; ++i) {
    auto fiber = sspace::fiber_over(R, 2, poset::standard_embedding(i, 2));
    chain_ok = s.chain[i].set->cell_count() == fiber.set->cell_count() && s.chain[i].set->vertex_count() == p.size(i);
    chain_text += (i ? "," : "") + std::to_string(s.chain[i].set->vertex_count());
  }
  chain_ok = chain_ok && s.summand_chain.at(0) == std::vector<int>{0, 1, 2} && straighten::check_straightening_condition(s).empty();
  all.check(chain_ok, "F(2) worked example chain");
  r.pass = all.pass();
  r.detail = "100 presheaves on [n], n<=4; F(2) chain (R_/0, R_/01, R_/012) sizes " + chain_text + "; " + all.failures_text();
  return r;
}

CriterionResult c6_fibers(std::uint64_t seed) {
  CriterionResult r{6, "fiber equivalences", false, {}, 0};
  auto right = chain_corpus(derive(seed, 5), 100, cat::Variance::contravariant);
  auto left = chain_corpus(derive(seed, 6), 100, cat::Variance::covariant);
  std::vector<Tally> per(right.size() + left.size());
  std::vector<std::size_t> rows(per.size(), 0);
  parallel_for(per.size(), [&](std::size_t k) {
    const bool is_right = k < right.size();
    const auto& inst = is_right ? right[k] : left[k - right.size()];
    auto rep = straighten::fiber_equivalence_report(inst.fibration, is_right ? Side::right : Side::left);
    auto& t = per[k];
    const std::string where = std::string(is_right ? "right " : "left ") + std::to_string(k);
    t.check(rep.mode == Mode::exact_discrete, where + ": not exact");
    rows[k] = rep.rows.size();
    for (const auto& row : rep.rows) {
      t.check(row.pass && row.tier == oracle::Tier::decisive && row.fiber == row.end_fiber, where + ": fiber over " + row.simplex);
      // the fiber over f is P(f(m)) (left: P(f(0)))
      const char end = is_right ? row.simplex.back() : row.simplex.front();
      t.check(row.fiber == static_cast<std::size_t>(inst.functor.size(end - '0')), where + ": fiber size over " + row.simplex);
    }
    // simplices of F(n) up to the level bound
    std::size_t expected = 0;
    for (int m = 0; m <= inst.fibration.target->level_bound(); ++m) expected += poset::count_maps(m, inst.n);
    t.check(rep.rows.size() == expected, where + ": missing rows");
  });
  Tally all;
  std::size_t total = 0;
  for (std::size_t k = 0; k < per.size(); ++k) {
    all.merge(per[k]);
    total += rows[k];
  }
  r.pass = all.pass();
  r.detail = std::to_string(total) + " fibers compared over 200 fibrations, " + all.failures_text();
  return r;
}

CriterionResult c7_decomposition(std::uint64_t seed) {
  CriterionResult r{7, "mapping decomposition", false, {}, 0};
  std::mt19937_64 rng(derive(seed, 7));
  struct Inst {
    int n;
    SSpaceMap R, W;
  };
  std::vector<Inst> insts;
  for (int it = 0; it < 20; ++it) {
    const int n = 1 + it % 2;
    auto P = straighten::random_chain_functor(n, cat::Variance::contravariant, rng);
    auto Q = straighten::random_chain_functor(n, it % 3 ? cat::Variance::covariant : cat::Variance::contravariant, rng);
    insts.push_back({n, straighten::grothendieck_fibration(P, n + 1), straighten::grothendieck_fibration(Q, n + 1)});
  }
  std::vector<Tally> per(insts.size());
  std::vector<std::string> rows(insts.size());
  parallel_for(insts.size(), [&](std::size_t k) {
    auto d = straighten::mapping_decomposition_check(insts[k].R, insts[k].W, 2);
    auto& t = per[k];
    bool rows_ok = d.rows.size() == 3;
    for (const auto& row : d.rows) {
      rows_ok = rows_ok && row.pass && row.lhs == row.rhs;
      rows[k] += (row.l ? "," : "") + std::to_string(row.lhs);
    }
    t.check(rows_ok && d.pass && !d.bounded, "instance " + std::to_string(k) + ": sides differ");
    t.check(d.chain_pass, "instance " + std::to_string(k) + ": chain form differs");
  });
  Tally all;
  for (const auto& t : per) all.merge(t);
  // W = F(n): both sides a point
  for (int n = 1; n <= 2; ++n) {
    auto R = insts[static_cast<std::size_t>(n - 1)].R;
    auto W = sspace::identity_map(R.target);
    auto d = straighten::mapping_decomposition_check(R, W, 2);
    all.check(d.pass && !d.rows.empty() && d.rows[0].lhs == 1 && d.rows[0].rhs == 1, "W = F(n) is not a point");
  }
  r.pass = all.pass();
  r.detail = "20 instances over F(1), F(2), l_max=2, |Map_0| per instance " + join(std::vector<std::string>(rows.begin(), rows.begin() + 4), " ") +
             " ...; " + all.failures_text();
  return r;
}

CriterionResult c8_cofinality(std::uint64_t seed) {
  CriterionResult r{8, "cofinality", false, {}, 0};
  Tally t;
  auto f1 = sspace::F(1, 2);
  auto f0 = sspace::F(0, 2);
  auto one = fib::cofinal_evidence(sspace::classifying_map(f0, 0, f1, 1));
  auto zero = fib::cofinal_evidence(sspace::classifying_map(f0, 0, f1, 0));
  t.check(one.value, "1: F(0) -> F(1) rejected");
  bool empty_fiber = false;
  for (const auto& row : zero.rows) empty_fiber = empty_fiber || (!row.verdict.value && row.verdict.tier == oracle::Tier::decisive && row.verdict.reason == "empty");
  t.check(!zero.value && zero.tier == oracle::Tier::decisive && empty_fiber, "0: F(0) -> F(1) not decisively rejected");
  std::mt19937_64 rng(derive(seed, 8));
  std::vector<cat::CatPtr> posets;
  for (int k = 0; k < 20; ++k) posets.push_back(cat::random_poset(rng, 1 + static_cast<int>(rng() % 4), true));
  std::vector<Tally> per(posets.size());
  parallel_for(posets.size(), [&](std::size_t k) {
    const auto& c = *posets[k];
    const int top = poset_top(c);
    auto x = fib::nerve_space(c, c.object_count());
    const int v = top >= 0 ? x->level(0).find(c.object(top)) : -1;
    per[k].check(top >= 0 && v >= 0, "poset " + std::to_string(k) + ": no top element");
    if (v < 0) return;
    auto rep = fib::cofinal_evidence(sspace::point_map(x, v));
    per[k].check(rep.value, "poset " + std::to_string(k) + ": terminal inclusion rejected");
  });
  for (const auto& p : per) t.merge(p);
  r.pass = t.pass();
  r.detail = std::string("1: ") + (one.value ? "true" : "false") + " (" + oracle::tier_name(one.tier) + "), 0: " +
             (zero.value ? "true" : "false") + " (" + oracle::tier_name(zero.tier) + "), 20 posets; " + t.failures_text();
  return r;
}

CriterionResult c9_structure(std::uint64_t) {
  CriterionResult r{9, "structural identities", false, {}, 0};
  Tally t;
  const int M = 3;
  auto f1 = sspace::F(1, M);
  auto f2 = sspace::F(2, M);
  // F(1) x F(1) against F(2) u_F(1) F(2) glued along the long edge
  auto edge = sspace::classifying_map(f1, 1, f2, sspace::F_vertex(*f2, 2, MonotoneMap(1, 2, {0, 2})));
  auto po = sspace::pushout(edge, edge);
  auto prod = sspace::product({f1, f1});
  const MonotoneMap a(2, 1, {0, 1, 1}), b(2, 1, {0, 0, 1});
  auto image = [&](int m, int w, bool swap) {
    auto g = sspace::F_map(2, m, w);
    auto ag = poset::compose(a, g), bg = poset::compose(b, g);
    Simplex x{sspace::F_vertex(*f1, 1, swap ? bg : ag), 0, 0}, y{sspace::F_vertex(*f1, 1, swap ? ag : bg), 0, 0};
    return prod.tuple(m, {x, y}).cell;
  };
  std::vector<std::vector<int>> phi(static_cast<std::size_t>(M + 1));
  bool iso = true;
  for (int m = 0; m <= M && iso; ++m) {
    phi[m].assign(po.space->level_size(m), -1);
    for (int w = 0; w < static_cast<int>(f2->level_size(m)); ++w)
      for (bool second : {false, true}) {
        const int e = (second ? po.from_c : po.from_b)(m, Simplex{w, 0, 0}).cell;
        const int img = image(m, w, second);
        if (phi[m][e] >= 0 && phi[m][e] != img) iso = false;
        phi[m][e] = img;
      }
    std::vector<char> hit(prod.space->level_size(m), 0);
    for (int v : phi[m]) {
      if (v < 0 || hit[v]) iso = false;
      else hit[v] = 1;
    }
    iso = iso && po.space->level_size(m) == prod.space->level_size(m);
  }
  if (iso) iso = sspace::discrete_map(po.space, prod.space, phi).validate().empty();
  t.check(iso, "F(1) x F(1) is not F(2) u_F(1) F(2)");

  auto e1 = sspace::E(1, 4);
  t.check(e1->level_size(0) == 2 && e1->level_size(1) == 4 && e1->level_size(2) == 8, "E(1) level sizes");
  t.check(nondegenerate_elements(*e1) == std::vector<std::size_t>(5, 2), "E(1) nondegenerate elements");
  auto j = sset::j_truncated(1, 4);
  bool two = j->top_dim() == 4;
  for (int d = 0; d <= 4 && two; ++d) two = j->count_cells(d) == 2;
  t.check(two, "J[1] nondegenerate cells");

  for (int n = 0; n <= 5; ++n) {
    auto fn = sspace::F(n, n);
    auto row = sspace::first_row_keyed(*fn);
    auto top = row.find({sspace::F_vertex(*fn, n, MonotoneMap::identity(n))}, n);
    auto cls = sset::classifying_map(row.set, top);
    t.check(row.set->top_dim() == n && cls.injective() && cls.surjective_up_to(n) && cls.validate().empty(),
            "first_row(F(" + std::to_string(n) + ")) is not Delta[" + std::to_string(n) + "]");
  }
  r.pass = t.pass();
  r.detail = "F(1)xF(1) levels " + sizes_text(*prod.space) + " = pushout levels " + sizes_text(*po.space) + "; E(1) levels " +
             sizes_text(*e1) + "; first_row(F(n)) for n<=5; " + t.failures_text();
  return r;
}

struct LemmaCase {
  SSpaceMap p;
  std::string name;
};

Tally lemma_checks(const SSpaceMap& p, const std::string& where) {
  Tally t;
  bool verdict[2];
  for (Side side : {Side::left, Side::right}) {
    auto both = fib::fibration_check_both(p, side, Mode::exact_discrete);
    verdict[side == Side::left] = both.verdict;
    t.check(both.other_variant && *both.other_variant == both.verdict, where + ": variants disagree (" + fib::side_name(side) + ")");
  }
  auto op = sspace::opposite_map(p, sspace::opposite(*p.source), sspace::opposite(*p.target));
  t.check(fib::fibration_check(op, Side::right, Variant::zeroth, Mode::exact_discrete).verdict == verdict[1],
          where + ": left on p differs from right on p^op");
  t.check(fib::fibration_check(op, Side::left, Variant::zeroth, Mode::exact_discrete).verdict == verdict[0],
          where + ": right on p differs from left on p^op");
  // locality: p is a left (right) fibration iff every pullback to a simplex is
  const auto& X = *p.target;
  for (Side side : {Side::left, Side::right}) {
    bool all = true;
    for (int k = 0; k <= X.level_bound() && all; ++k)
      for (int v = 0; v < static_cast<int>(X.level_size(k)) && all; ++v)
        all = fib::fibration_check(fib::pull_to_simplex(p, k, v), side, Variant::zeroth, Mode::exact_discrete).verdict;
    t.check(all == verdict[side == Side::left], where + ": locality fails (" + fib::side_name(side) + ")");
  }
  return t;
}

CriterionResult c10_lemmas(std::uint64_t seed) {
  CriterionResult r{10, "duality and lemma equivalences", false, {}, 0};
  auto cases = nerve_cases(seed);
  auto right = chain_corpus(derive(seed, 5), 100, cat::Variance::contravariant);
  auto left = chain_corpus(derive(seed, 6), 100, cat::Variance::covariant);
  std::vector<LemmaCase> maps;
  for (std::size_t i = 0; i < cases->size(); ++i)
    if ((*cases)[i].mismatch.empty()) maps.push_back({(*cases)[i].slice.projection, "slice " + std::to_string(i)});
  for (std::size_t i = 0; i < right.size(); ++i) maps.push_back({right[i].fibration, "presheaf " + std::to_string(i)});
  for (std::size_t i = 0; i < left.size(); ++i) maps.push_back({left[i].fibration, "copresheaf " + std::to_string(i)});
  std::vector<Tally> per(maps.size());
  parallel_for(maps.size(), [&](std::size_t i) { per[i] = lemma_checks(maps[i].p, maps[i].name); });

  // composition and cancellation on composable slice pairs
  std::vector<Tally> comp(cases->size());
  std::vector<int> nontrivial(cases->size(), 0);
  parallel_for(cases->size(), [&](std::size_t i) {
    const auto& nc = (*cases)[i];
    if (!nc.mismatch.empty()) return;
    const auto& f = nc.slice.projection;  // W_{x/} -> W
    const int y = static_cast<int>(nc.slice.space->level_size(0)) - 1;
    std::vector<SSpaceMap> gs{sspace::point_map(nc.slice.space, y)};
    if (nc.slice.space->level_bound() >= 1) gs.push_back(fib::slice_space(nc.slice.space, y, fib::Direction::under).projection);
    for (const auto& g : gs) {
      auto fg = compose_truncated(f, g);
      const int L = fg.source->level_bound();
      auto ft = truncated(f, L);
      const bool lf = left_fib(ft), lg = left_fib(g), lfg = left_fib(fg);
      comp[i].check(!(lf && lg) || lfg, "case " + std::to_string(i) + ": composite of left fibrations is not one");
      // every map of discrete spaces is a Reedy fibration
      comp[i].check(!(lf && lfg) || lg, "case " + std::to_string(i) + ": cancellation fails");
      nontrivial[i] += (lf && lg) + (lf && lfg);
    }
  });
  Tally all;
  for (const auto& t : per) all.merge(t);
  int premises = 0;
  for (std::size_t i = 0; i < comp.size(); ++i) {
    all.merge(comp[i]);
    premises += nontrivial[i];
  }
  r.pass = all.pass();
  r.detail = std::to_string(maps.size()) + " maps (variants, opposites, locality), " + std::to_string(premises) +
             " composition premises met; " + all.failures_text();
  return r;
}

CriterionResult c11_oracle(std::uint64_t seed) {
  CriterionResult r{11, "oracle sanity", false, {}, 0};
  Tally t;
  std::vector<std::pair<std::string, sset::SSetPtr>> sets;
  for (int n = 0; n <= 4; ++n) sets.emplace_back("delta(" + std::to_string(n) + ")", sset::delta(n));
  for (int n = 1; n <= 4; ++n) sets.emplace_back("boundary(" + std::to_string(n) + ")", sset::boundary(n));
  for (int n = 1; n <= 4; ++n)
    for (int i = 0; i <= n; ++i) sets.emplace_back("horn(" + std::to_string(n) + "," + std::to_string(i) + ")", sset::horn(n, i));
  for (int l = 0; l <= 2; ++l) sets.emplace_back("J(" + std::to_string(l) + ")", sset::j_truncated(l, 4));
  sets.emplace_back("spine(3)", sset::spine(3));
  sets.emplace_back("diag G(2)", sspace::diagonal(*sspace::G(2, 3)));
  sets.emplace_back("diag E(1)", sspace::diagonal(*sspace::E(1, 4)));
  sets.emplace_back("diag F(1)xF(1)", sspace::diagonal(*sspace::product({sspace::F(1, 3), sspace::F(1, 3)}).space));
  sets.emplace_back("diag const J(1)", sspace::diagonal(*sspace::embed_constant(sset::j_truncated(1, 3), 3)));
  auto cats = category_corpus(derive(seed, 11), 20);
  for (std::size_t k = 0; k < cats.size(); ++k) sets.emplace_back("nerve " + std::to_string(k), cat::nerve(*cats[k], 3));
  for (const auto& [name, s] : sets) {
    auto cc = oracle::chain_complex(*s, std::max(s->top_dim(), 1));
    auto why = cc.check_d_squared();
    t.check(why.empty(), name + ": " + why);
  }
  auto b = oracle::betti(*sset::boundary(2), 1);
  t.check(b.numbers == std::vector<int>{1, 1}, "betti(boundary(2)) != (1,1)");
  auto e = oracle::contractible_evidence(*sset::empty_set());
  t.check(!e.value && e.tier == oracle::Tier::decisive, "empty space not decisively rejected");
  for (int n = 0; n <= 4; ++n) t.check(oracle::contractible_evidence(*sset::delta(n)).value, "delta(" + std::to_string(n) + ") rejected");
  r.pass = t.pass();
  r.detail = std::to_string(sets.size()) + " chain complexes with d^2 = 0, betti(boundary(2)) = (" + std::to_string(b.numbers.at(0)) + "," +
             std::to_string(b.numbers.at(1)) + "); " + t.failures_text();
  return r;
}

}  // namespace

CriterionResult run_criterion(int id, std::uint64_t seed) {
  using Fn = CriterionResult (*)(std::uint64_t);
  static const Fn table[] = {c1_g2_counterexample, c2_factorization, c3_yoneda, c4_under_space, c5_straightening, c6_fibers,
                             c7_decomposition,     c8_cofinality,    c9_structure, c10_lemmas,   c11_oracle};
  if (id < 1 || id > kCriteria) throw DomainError("no acceptance criterion " + std::to_string(id));
  const auto t0 = std::chrono::steady_clock::now();
  CriterionResult r;
  try {
    r = table[id - 1](seed);
  } catch (const std::exception& e) {
    r.id = id;
    r.name = "criterion " + std::to_string(id);
    r.pass = false;
    r.detail = std::string("exception: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

std::vector<CriterionResult> run_acceptance(std::uint64_t seed, const std::function<void(const CriterionResult&)>& on_result) {
  std::vector<CriterionResult> out;
  for (int id = 1; id <= kCriteria; ++id) {
    out.push_back(run_criterion(id, seed));
    if (on_result) on_result(out.back());
  }
  return out;
}

std::string format_result(const CriterionResult& r) {
  std::ostringstream os;
  os << (r.pass ? "PASS" : "FAIL") << "  " << (r.id < 10 ? " " : "") << r.id << "  " << r.name << "  (" << r.detail << ")  [";
  os.setf(std::ios::fixed);
  os.precision(2);
  os << r.seconds << "s]";
  return os.str();
}

}  // namespace fiblab::suite
