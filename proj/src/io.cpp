#include "fiblab/io.hpp"

#include <regex>

#include "fiblab/error.hpp"

namespace fiblab::io {

using poset::MonotoneMap;
using sset::Simplex;
using sset::SSetPtr;
using sspace::SSpaceMap;
using sspace::SSpacePtr;

Json parse(const std::string& text, const std::string& where) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError(where + ": malformed JSON at byte " + std::to_string(e.byte) + ": " + e.what());
  }
}

Json parse_value(const std::string& text, const std::string& where) {
  auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) throw InputError(where + ": empty value");
  const char c = text[first];
  if (c == '{' || c == '"' || c == '-' || (c >= '0' && c <= '9') || text.compare(first, 4, "true") == 0 ||
      text.compare(first, 5, "false") == 0)
    return parse(text, where);
  // "[2]" names an ordinal, "[1,2]" is a JSON list
  if (c == '[' && !std::regex_match(text, std::regex(R"(\s*\[\d+\]\s*)"))) return parse(text, where);
  return Json(text);
}

namespace {

[[noreturn]] void bad(const std::string& what) { throw InputError(what); }

const Json& need(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

int get_int(const Json& j, const char* key, int fallback) {
  if (!j.is_object() || !j.contains(key)) return fallback;
  if (!j.at(key).is_number_integer()) bad(std::string("field \"") + key + "\" must be an integer");
  return j.at(key).get<int>();
}

int as_int(const Json& j, const std::string& what) {
  if (!j.is_number_integer()) bad(what + " must be an integer");
  return j.get<int>();
}

/// name(a,b,...)@M, returning the arguments and M (or -1).
bool named(const std::string& s, const std::string& name, std::vector<int>& args, int& at) {
  static const std::regex re(R"(^\s*([A-Za-z]+)\s*(?:\(\s*(\d+(?:\s*,\s*\d+)*)?\s*\))?\s*(?:@\s*(\d+))?\s*$)");
  std::smatch m;
  if (!std::regex_match(s, m, re) || m[1].str() != name) return false;
  args.clear();
  if (m[2].matched) {
    std::string list = m[2].str();
    std::size_t p = 0;
    while (p < list.size()) {
      std::size_t q = list.find(',', p);
      if (q == std::string::npos) q = list.size();
      args.push_back(std::stoi(list.substr(p, q - p)));
      p = q + 1;
    }
  }
  at = m[3].matched ? std::stoi(m[3].str()) : -1;
  return true;
}

void arity(const std::string& s, const std::vector<int>& args, std::size_t n) {
  if (args.size() != n) bad("\"" + s + "\" takes " + std::to_string(n) + " argument(s)");
}

Simplex parse_ref_in(const sset::FinSimplicialSet& s, const Json& r, const std::string& what) {
  if (!r.is_string()) bad(what + ": simplex references are strings");
  auto x = s.parse_ref(r.get<std::string>());
  if (!x) bad(what + ": unknown simplex \"" + r.get<std::string>() + "\"");
  return *x;
}

sset::SSetMap map_of_refs(const SSetPtr& src, const SSetPtr& tgt, const Json& refs, const std::string& what) {
  if (!refs.is_array() || static_cast<int>(refs.size()) != src->cell_count())
    bad(what + ": expected one reference per source cell (" + std::to_string(src->cell_count()) + ")");
  sset::SSetMap f{src, tgt, {}};
  for (const auto& r : refs) f.assign.push_back(parse_ref_in(*tgt, r, what));
  return f;
}

Json refs_of(const sset::SSetMap& f) {
  Json a = Json::array();
  for (const auto& x : f.assign) a.push_back(f.target->ref(x));
  return a;
}

fib::Direction direction_from(const Json& j) {
  std::string d = j.is_object() && j.contains("direction") ? j.at("direction").get<std::string>() : "under";
  if (d == "under") return fib::Direction::under;
  if (d == "over") return fib::Direction::over;
  bad("direction must be under or over");
}

}  // namespace

// ---------------------------------------------------------------- poset

Json to_json(const MonotoneMap& f) { return Json{{"m", f.m}, {"n", f.n}, {"values", f.values}}; }

MonotoneMap monotone_from_json(const Json& j) {
  if (!j.is_object()) bad("a monotone map is an object {\"m\", \"n\", \"values\"}");
  try {
    return MonotoneMap(as_int(need(j, "m"), "m"), as_int(need(j, "n"), "n"), need(j, "values").get<std::vector<int>>());
  } catch (const Json::exception& e) {
    bad(std::string("monotone map: ") + e.what());
  } catch (const DomainError& e) {
    bad(std::string("monotone map: ") + e.what());
  }
}

Json to_json(const poset::Classification& c) {
  return Json{{"is_right_convex_injection", c.is_right_convex_injection},
              {"is_right_convex_surjection", c.is_right_convex_surjection}};
}

Json to_json(const poset::Factorization& f) { return Json{{"p_f", to_json(f.p)}, {"i_f", to_json(f.i)}}; }

// ---------------------------------------------------------------- simplicial sets

Json to_json(const sset::FinSimplicialSet& s) {
  Json cells = Json::array();
  for (int c = 0; c < s.cell_count(); ++c) {
    Json faces = Json::array();
    if (s.cell_dim(c) > 0)
      for (const auto& f : s.cell_faces(c)) faces.push_back(s.ref(f));
    cells.push_back(Json{{"label", s.label(c)}, {"dim", s.cell_dim(c)}, {"faces", faces}});
  }
  return Json{{"dim_bound", s.dim_bound()}, {"exact", s.exact()}, {"cells", cells}};
}

Json summary(const sset::FinSimplicialSet& s) {
  std::vector<int> counts;
  for (int d = 0; d <= s.top_dim(); ++d) counts.push_back(s.count_cells(d));
  return Json{{"dim_bound", s.dim_bound()}, {"exact", s.exact()}, {"nondegenerate", counts}};
}

SSetPtr sset_from_json(const Json& j) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    std::vector<int> a;
    int at = -1;
    if (named(s, "point", a, at)) return sset::point();
    if (named(s, "empty", a, at)) return sset::empty_set();
    try {
      if (named(s, "delta", a, at)) return arity(s, a, 1), sset::delta(a[0]);
      if (named(s, "boundary", a, at)) return arity(s, a, 1), sset::boundary(a[0]);
      if (named(s, "horn", a, at)) return arity(s, a, 2), sset::horn(a[0], a[1]);
      if (named(s, "spine", a, at)) return arity(s, a, 1), sset::spine(a[0]);
      if (named(s, "discrete", a, at)) return arity(s, a, 1), sset::discrete(a[0]);
      if (named(s, "J", a, at)) return arity(s, a, 1), sset::j_truncated(a[0], at < 0 ? kDefaultLevels : at);
    } catch (const DomainError& e) {
      bad(s + ": " + e.what());
    }
    bad("unknown simplicial set \"" + s + "\"");
  }
  const auto& cells = need(j, "cells");
  if (!cells.is_array()) bad("\"cells\" must be a list");
  sset::Builder b(get_int(j, "dim_bound", 0), !j.contains("exact") || j.at("exact").get<bool>());
  std::unordered_map<std::string, int> ids;
  int top = 0;
  for (const auto& c : cells) {
    const std::string label = need(c, "label").get<std::string>();
    const int dim = as_int(need(c, "dim"), "cell dim");
    std::vector<Simplex> faces;
    if (dim > 0)
      for (const auto& r : need(c, "faces")) {
        const std::string ref = r.get<std::string>();
        std::string base = ref;
        std::uint32_t ties = 0;
        int extra = 0;
        if (!ids.count(ref)) {
          auto dot = ref.rfind('.');
          if (dot == std::string::npos) bad("cell " + label + ": face \"" + ref + "\" names no earlier cell");
          base = ref.substr(0, dot);
          static const std::regex word(R"((s\d+)+)");
          const std::string w = ref.substr(dot + 1);
          if (!std::regex_match(w, word)) bad("cell " + label + ": bad degeneracy word in \"" + ref + "\"");
          for (std::size_t p = 1; p < w.size();) {
            std::size_t q = w.find('s', p);
            if (q == std::string::npos) q = w.size();
            ties |= 1u << std::stoi(w.substr(p, q - p));
            ++extra;
            p = q + 1;
          }
        }
        auto it = ids.find(base);
        if (it == ids.end()) bad("cell " + label + ": face \"" + ref + "\" names no earlier cell");
        faces.push_back(Simplex{it->second, b.dim_of(it->second) + extra, ties});
      }
    if (ids.count(label)) bad("duplicate cell label " + label);
    ids[label] = b.add_cell(dim, label, std::move(faces));
    top = std::max(top, dim);
  }
  if (!j.contains("dim_bound")) b.set_dim_bound(top);
  try {
    return b.build();
  } catch (const Error& e) {
    bad(std::string("simplicial set: ") + e.what());
  }
}

Json to_json(const sset::SSetMap& f) {
  return Json{{"source", summary(*f.source)}, {"target", summary(*f.target)}, {"assign", refs_of(f)}};
}

Json to_json(const sset::KanReport& r) {
  Json fails = Json::array();
  for (const auto& f : r.failures) fails.push_back(Json{{"kind", f.kind}, {"n", f.n}, {"i", f.i}});
  return Json{{"bound", r.bound},
              {"fibration_up_to_bound", r.fibration_up_to_bound},
              {"trivial_fibration_up_to_bound", r.trivial_fibration_up_to_bound},
              {"bounded", r.bounded},
              {"failures", fails}};
}

// ---------------------------------------------------------------- simplicial spaces

Json to_json(const sspace::FinSimplicialSpace& x) {
  Json levels = Json::array(), face = Json::array(), degen = Json::array();
  for (int m = 0; m <= x.level_bound(); ++m) {
    levels.push_back(to_json(x.level(m)));
    Json fm = Json::array();
    for (int i = 0; m > 0 && i <= m; ++i) fm.push_back(refs_of(x.face(m, i)));
    face.push_back(fm);
    Json dm = Json::array();
    for (int j = 0; m < x.level_bound() && j <= m; ++j) dm.push_back(refs_of(x.degeneracy(m, j)));
    degen.push_back(dm);
  }
  return Json{{"level_bound", x.level_bound()}, {"exact", x.exact()}, {"levels", levels}, {"face", face}, {"degeneracy", degen}};
}

Json summary(const sspace::FinSimplicialSpace& x) {
  Json levels = Json::array();
  for (int m = 0; m <= x.level_bound(); ++m) levels.push_back(summary(x.level(m)));
  return Json{{"level_bound", x.level_bound()}, {"exact", x.exact()}, {"discrete", x.is_discrete()}, {"levels", levels}};
}

SSpacePtr space_from_json(const Json& j) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    std::vector<int> a;
    int at = -1;
    auto M = [&](int fallback) { return at < 0 ? fallback : at; };
    try {
      if (named(s, "point", a, at)) return sspace::point_space(M(kDefaultLevels));
      if (named(s, "empty", a, at)) return sspace::empty_space(M(kDefaultLevels));
      if (named(s, "F", a, at)) return arity(s, a, 1), sspace::F(a[0], M(std::max(a[0], kDefaultLevels)));
      if (named(s, "dF", a, at)) return arity(s, a, 1), sspace::dF(a[0], M(std::max(a[0], kDefaultLevels)));
      if (named(s, "L", a, at)) return arity(s, a, 2), sspace::L(a[0], a[1], M(std::max(a[0], kDefaultLevels)));
      if (named(s, "E", a, at)) return arity(s, a, 1), sspace::E(a[0], M(kDefaultLevels));
      if (named(s, "G", a, at)) return arity(s, a, 1), sspace::G(a[0], M(2));
    } catch (const DomainError& e) {
      bad(s + ": " + e.what());
    }
    bad("unknown simplicial space \"" + s + "\"");
  }
  if (!j.is_object()) bad("a simplicial space is a name or an object");
  const int M = get_int(j, "M", kDefaultLevels);
  if (j.contains("nerve")) return fib::nerve_space(*category_from_json(j.at("nerve")), M);
  if (j.contains("discrete")) return sspace::embed_discrete(sset_from_json(j.at("discrete")), M);
  if (j.contains("constant")) return sspace::embed_constant(sset_from_json(j.at("constant")), M);
  if (j.contains("opposite")) return sspace::opposite(*space_from_json(j.at("opposite")));
  if (j.contains("product")) {
    std::vector<SSpacePtr> parts;
    for (const auto& p : j.at("product")) parts.push_back(space_from_json(p));
    if (parts.empty()) bad("empty product");
    return sspace::product(parts).space;
  }
  if (j.contains("slice")) {
    fib::SliceOptions opts;
    opts.general = j.value("general", false);
    return fib::slice_space(space_from_json(j.at("slice")), get_int(j, "vertex", 0), direction_from(j), opts).space;
  }
  const auto& levels = need(j, "levels");
  if (!levels.is_array() || levels.empty()) bad("\"levels\" must be a non-empty list");
  std::vector<SSetPtr> L;
  for (const auto& l : levels) L.push_back(sset_from_json(l));
  const int top = static_cast<int>(L.size()) - 1;
  const auto& face = need(j, "face");
  const auto& degen = need(j, "degeneracy");
  std::vector<std::vector<sset::SSetMap>> F(L.size()), D(L.size());
  for (int m = 1; m <= top; ++m)
    for (int i = 0; i <= m; ++i)
      F[m].push_back(map_of_refs(L[m], L[m - 1], face.at(m).at(i), "face " + std::to_string(m) + "," + std::to_string(i)));
  for (int m = 0; m < top; ++m)
    for (int k = 0; k <= m; ++k)
      D[m].push_back(map_of_refs(L[m], L[m + 1], degen.at(m).at(k), "degeneracy " + std::to_string(m) + "," + std::to_string(k)));
  auto x = std::make_shared<sspace::FinSimplicialSpace>(std::move(L), std::move(F), std::move(D), !j.contains("exact") || j.at("exact").get<bool>());
  if (auto why = x->validate(); !why.empty()) bad("simplicial space: " + why);
  return x;
}

Json to_json(const SSpaceMap& f) {
  Json comps = Json::array();
  for (const auto& c : f.components) comps.push_back(refs_of(c));
  return Json{{"source", to_json(*f.source)}, {"target", to_json(*f.target)}, {"components", comps}};
}

Json summary(const SSpaceMap& f) {
  Json comps = Json::array();
  for (const auto& c : f.components) comps.push_back(refs_of(c));
  return Json{{"source", summary(*f.source)}, {"target", summary(*f.target)}, {"components", comps}};
}

SSpaceMap map_from_json(const Json& j) {
  if (!j.is_object()) bad("a map is an object");
  if (j.contains("identity")) return sspace::identity_map(space_from_json(j.at("identity")));
  if (j.contains("to_point")) return sspace::to_point(space_from_json(j.at("to_point")));
  if (j.contains("point")) return sspace::point_map(space_from_json(j.at("point")), get_int(j, "vertex", 0));
  if (j.contains("classifying")) {
    auto x = space_from_json(j.at("classifying"));
    const int m = get_int(j, "m", 0);
    return sspace::classifying_map(sspace::F(m, x->level_bound()), m, x, get_int(j, "vertex", 0));
  }
  if (j.contains("slice_projection")) {
    fib::SliceOptions opts;
    opts.general = j.value("general", false);
    return fib::slice_space(space_from_json(j.at("slice_projection")), get_int(j, "vertex", 0), direction_from(j), opts).projection;
  }
  if (j.contains("cocone_projection")) return fib::cocone_space(map_from_json(j.at("cocone_projection"))).projection;
  if (j.contains("grothendieck")) {
    auto p = functor_from_json(j.at("grothendieck"));
    return straighten::grothendieck_fibration(p, get_int(j, "M", std::max(p.base->object_count() - 1, 2)));
  }
  if (j.contains("compose")) {
    const auto& c = j.at("compose");
    if (!c.is_array() || c.size() != 2) bad("\"compose\" takes [g, f]");
    return sspace::compose(map_from_json(c.at(0)), map_from_json(c.at(1)));
  }
  if (j.contains("opposite")) {
    auto f = map_from_json(j.at("opposite"));
    return sspace::opposite_map(f, sspace::opposite(*f.source), sspace::opposite(*f.target));
  }
  if (j.contains("pullback")) {
    auto f = map_from_json(j.at("pullback"));
    auto g = map_from_json(need(j, "along"));
    return sspace::pullback(f, g).p2;
  }
  auto src = space_from_json(need(j, "source"));
  auto tgt = space_from_json(need(j, "target"));
  const auto& comps = need(j, "components");
  if (!comps.is_array() || static_cast<int>(comps.size()) != src->level_bound() + 1) bad("one component per level required");
  if (tgt->level_bound() != src->level_bound()) bad("source and target level bounds differ");
  SSpaceMap f{src, tgt, {}};
  for (int m = 0; m <= src->level_bound(); ++m)
    f.components.push_back(map_of_refs(src->level_ptr(m), tgt->level_ptr(m), comps.at(m), "component " + std::to_string(m)));
  if (auto why = f.validate(); !why.empty()) bad("map: " + why);
  return f;
}

// ---------------------------------------------------------------- categories

Json to_json(const cat::FinCategory& c) {
  Json objects = Json::array(), morphisms = Json::array(), compose = Json::array(), ids = Json::object();
  for (int o = 0; o < c.object_count(); ++o) {
    objects.push_back(c.object(o));
    ids[c.object(o)] = c.morphism(c.id(o)).id;
  }
  for (int f = 0; f < c.morphism_count(); ++f)
    morphisms.push_back(Json{{"id", c.morphism(f).id}, {"src", c.object(c.src(f))}, {"tgt", c.object(c.tgt(f))}});
  for (int f = 0; f < c.morphism_count(); ++f)
    for (int g = 0; g < c.morphism_count(); ++g) {
      if (c.is_identity(f) || c.is_identity(g)) continue;
      int h = c.comp(g, f);
      if (h >= 0) compose.push_back(Json::array({c.morphism(f).id, c.morphism(g).id, c.morphism(h).id}));
    }
  return Json{{"objects", objects}, {"morphisms", morphisms}, {"compose", compose}, {"identities", ids}};
}

cat::CatPtr category_from_json(const Json& j) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    std::smatch m;
    if (s == "terminal") return cat::terminal_category();
    if (std::regex_match(s, m, std::regex(R"(\s*\[(\d+)\]\s*)"))) return cat::ordinal(std::stoi(m[1].str()));
    if (std::regex_match(s, m, std::regex(R"(\s*I\[(\d+)\]\s*)"))) return cat::groupoid(std::stoi(m[1].str()));
    bad("unknown category \"" + s + "\"");
  }
  if (!j.is_object()) bad("a category is a name or an object");
  if (j.contains("random_category")) {
    std::mt19937_64 rng(j.at("random_category").get<std::uint64_t>());
    return cat::random_category(rng);
  }
  if (j.contains("random_poset")) {
    const auto& p = j.at("random_poset");
    std::mt19937_64 rng(p.value("seed", std::uint64_t{1}));
    return cat::random_poset(rng, p.value("n", 4), p.value("top", false));
  }
  std::vector<std::string> objects = need(j, "objects").get<std::vector<std::string>>();
  std::unordered_map<std::string, int> obj, mor;
  for (std::size_t i = 0; i < objects.size(); ++i) obj[objects[i]] = static_cast<int>(i);
  auto object = [&](const Json& v) {
    auto it = obj.find(v.get<std::string>());
    if (it == obj.end()) bad("unknown object " + v.get<std::string>());
    return it->second;
  };
  std::vector<cat::Morphism> morphisms;
  for (const auto& m : need(j, "morphisms")) {
    morphisms.push_back(cat::Morphism{need(m, "id").get<std::string>(), object(need(m, "src")), object(need(m, "tgt"))});
    mor[morphisms.back().id] = static_cast<int>(morphisms.size()) - 1;
  }
  auto morphism = [&](const Json& v) {
    auto it = mor.find(v.get<std::string>());
    if (it == mor.end()) bad("unknown morphism " + v.get<std::string>());
    return it->second;
  };
  std::vector<int> ids(objects.size(), -1);
  const Json& given = j.contains("identities") ? j.at("identities") : Json::object();
  for (std::size_t o = 0; o < objects.size(); ++o) {
    if (given.contains(objects[o])) {
      ids[o] = morphism(given.at(objects[o]));
      continue;
    }
    // implicit identity
    morphisms.push_back(cat::Morphism{"id_" + objects[o], static_cast<int>(o), static_cast<int>(o)});
    ids[o] = static_cast<int>(morphisms.size()) - 1;
    mor[morphisms.back().id] = ids[o];
  }
  std::vector<std::array<int, 3>> compose;
  if (j.contains("compose"))
    for (const auto& t : j.at("compose")) {
      if (!t.is_array() || t.size() != 3) bad("composition entries are [f, g, g o f]");
      compose.push_back({morphism(t[0]), morphism(t[1]), morphism(t[2])});
    }
  try {
    auto c = std::make_shared<cat::FinCategory>(objects, morphisms, compose, ids);
    if (auto why = c->validate(); !why.empty()) bad("category: " + why);
    return c;
  } catch (const DomainError& e) {
    bad(e.what());
  }
}

cat::Variance variance_from_string(const std::string& s) {
  if (s == "covariant") return cat::Variance::covariant;
  if (s == "contravariant") return cat::Variance::contravariant;
  bad("variance must be covariant or contravariant");
}

const char* variance_name(cat::Variance v) { return v == cat::Variance::covariant ? "covariant" : "contravariant"; }

Json to_json(const cat::SetFunctor& f) {
  const auto& C = *f.base;
  Json values = Json::object(), maps = Json::object();
  for (int c = 0; c < C.object_count(); ++c) {
    if (f.labels.empty()) values[C.object(c)] = f.size(c);
    else values[C.object(c)] = f.labels[c];
  }
  for (int m = 0; m < C.morphism_count(); ++m)
    if (!C.is_identity(m)) maps[C.morphism(m).id] = f.maps[m];
  return Json{{"category", to_json(C)}, {"variance", variance_name(f.variance)}, {"values", values}, {"maps", maps}};
}

cat::SetFunctor functor_from_json(const Json& j) {
  if (!j.is_object()) bad("a functor is an object");
  auto variance = [&] { return variance_from_string(j.value("variance", std::string("contravariant"))); };
  if (j.contains("random_chain")) {
    const auto& r = j.at("random_chain");
    std::mt19937_64 rng(r.value("seed", std::uint64_t{1}));
    return straighten::random_chain_functor(r.value("n", 2), variance_from_string(r.value("variance", std::string("contravariant"))),
                                            rng, r.value("max_size", 3));
  }
  auto base = category_from_json(j.contains("category") ? j.at("category") : Json("terminal"));
  if (j.contains("representable")) {
    const auto& o = j.at("representable");
    int c = o.is_string() ? base->find_object(o.get<std::string>()) : o.get<int>();
    if (c < 0 || c >= base->object_count()) bad("representable: unknown object");
    return cat::representable(base, c, variance());
  }
  if (j.contains("constant")) return cat::constant_functor(base, as_int(j.at("constant"), "constant size"), variance());
  if (j.contains("random")) {
    std::mt19937_64 rng(j.at("random").get<std::uint64_t>());
    return cat::random_functor(base, variance(), rng, get_int(j, "max_size", 3));
  }
  cat::SetFunctor f{base, variance(), {}, {}, {}};
  const auto& values = need(j, "values");
  for (int c = 0; c < base->object_count(); ++c) {
    if (!values.contains(base->object(c))) bad("functor: no value for object " + base->object(c));
    const auto& v = values.at(base->object(c));
    std::vector<std::string> labels;
    if (v.is_number_integer())
      for (int x = 0; x < v.get<int>(); ++x) labels.push_back(std::to_string(x));
    else
      labels = v.get<std::vector<std::string>>();
    f.sizes.push_back(static_cast<int>(labels.size()));
    f.labels.push_back(std::move(labels));
  }
  const Json& maps = j.contains("maps") ? j.at("maps") : Json::object();
  for (int m = 0; m < base->morphism_count(); ++m) {
    if (base->is_identity(m)) {
      std::vector<int> id(static_cast<std::size_t>(f.size(base->src(m))));
      for (std::size_t x = 0; x < id.size(); ++x) id[x] = static_cast<int>(x);
      f.maps.push_back(id);
      continue;
    }
    if (!maps.contains(base->morphism(m).id)) bad("functor: no map for morphism " + base->morphism(m).id);
    f.maps.push_back(maps.at(base->morphism(m).id).get<std::vector<int>>());
  }
  if (auto why = f.validate(); !why.empty()) bad("functor: " + why);
  return f;
}

// ---------------------------------------------------------------- reports

Json to_json(const fib::FibrationReport& r) {
  Json rows = Json::array();
  for (const auto& l : r.per_level) {
    Json row{{"level", l.level}, {"lhs", l.lhs}, {"rhs", l.rhs}, {"pass", l.pass}};
    if (!l.note.empty()) row["note"] = l.note;
    rows.push_back(row);
  }
  Json out{{"claim", fib::claim_name(r.claim)},
           {"mode", fib::mode_name(r.mode)},
           {"variant", fib::variant_name(r.variant)},
           {"verdict", r.verdict},
           {"per_level", rows},
           {"counterexample", nullptr}};
  if (r.counterexample) {
    const auto& c = *r.counterexample;
    out["counterexample"] = Json{{"level", c.level}, {"lhs", c.lhs}, {"rhs", c.rhs}, {"unmatched", c.unmatched}, {"detail", c.detail}};
  }
  if (r.other_variant) out["other_variant"] = *r.other_variant;
  if (r.mode == fib::Mode::bounded_evidence) out["bound"] = r.bound;
  if (!r.warnings.empty()) out["warnings"] = r.warnings;
  return out;
}

Json to_json(const fib::SliceResult& r) {
  Json sizes = Json::array();
  for (int m = 0; m <= r.space->level_bound(); ++m) sizes.push_back(r.space->level_size(m));
  Json out{{"path", r.path}, {"bounded", r.bounded}, {"exact", r.space->exact()}, {"level_sizes", sizes}, {"space", summary(*r.space)}};
  if (!r.warning.empty()) out["warning"] = r.warning;
  return out;
}

Json to_json(const fib::InitialReport& r) {
  Json out{{"initial", r.value}, {"mode", fib::mode_name(r.mode)}, {"trivial_reedy", to_json(r.trivial_reedy)}, {"segal", to_json(r.segal)}};
  if (!r.warnings.empty()) out["warnings"] = r.warnings;
  return out;
}

Json to_json(const fib::CoconeResult& r) {
  Json sizes = Json::array();
  for (int m = 0; m <= r.space->level_bound(); ++m) sizes.push_back(r.space->level_size(m));
  Json out{{"path", r.path}, {"bounded", r.bounded}, {"level_sizes", sizes}};
  if (!r.warning.empty()) out["warning"] = r.warning;
  return out;
}

Json to_json(const fib::ColimitReport& r) {
  Json out{{"has_colimit", r.has_colimit},
           {"vertex", r.vertex ? Json(*r.vertex) : Json(nullptr)},
           {"cocone_vertex", r.cocone_vertex ? Json(*r.cocone_vertex) : Json(nullptr)},
           {"candidates", r.candidates}};
  if (!r.warnings.empty()) out["warnings"] = r.warnings;
  return out;
}

Json to_json(const oracle::Verdict& v) {
  return Json{{"value", v.value}, {"tier", oracle::tier_name(v.tier)}, {"k_max", v.k_max}, {"reason", v.reason}};
}

Json to_json(const oracle::Betti& b) { return Json{{"betti", b.numbers}, {"bounded", b.bounded}}; }

Json to_json(const fib::CofinalReport& r) {
  Json rows = Json::array();
  for (const auto& row : r.rows) rows.push_back(Json{{"vertex", row.vertex}, {"label", row.label}, {"verdict", to_json(row.verdict)}});
  Json out{{"cofinal", r.value}, {"tier", oracle::tier_name(r.tier)}, {"vertices", rows}};
  if (!r.warnings.empty()) out["warnings"] = r.warnings;
  return out;
}

Json to_json(const fib::SpanProfile& r) {
  Json spans = Json::array();
  for (const auto& s : r.spans)
    spans.push_back(Json{{"edge", s.label},
                         {"source", s.source},
                         {"target", s.target},
                         {"fiber_sizes", Json::array({s.fiber_source, s.fiber_edge, s.fiber_target})},
                         {"left_leg_bijective", s.left_leg_bijective},
                         {"right_leg_bijective", s.right_leg_bijective}});
  return Json{{"spans", spans}, {"also_right", r.also_right}};
}

Json to_json(const fib::YonedaSpaceReport& r) {
  Json out{{"maps", r.maps}, {"fiber", r.fiber}, {"equal", r.equal}, {"bounded", r.bounded}};
  if (!r.warning.empty()) out["warning"] = r.warning;
  return out;
}

Json to_json(const straighten::FiberReport& r) {
  Json rows = Json::array();
  for (const auto& f : r.rows)
    rows.push_back(Json{{"simplex", f.simplex},
                        {"level", f.level},
                        {"fiber", f.fiber},
                        {"end_fiber", f.end_fiber},
                        {"pass", f.pass},
                        {"tier", oracle::tier_name(f.tier)}});
  return Json{{"all_pass", r.all_pass}, {"mode", fib::mode_name(r.mode)}, {"rows", rows}};
}

Json to_json(const straighten::StraightenedFibration& s) {
  return Json{{"side", fib::side_name(s.side)},
              {"n", s.n},
              {"chain", s.chain_sizes()},
              {"original", summary(s.original)},
              {"straightened", summary(s.straightened)},
              {"comparison", summary(s.comparison)}};
}

Json to_json(const straighten::DecompositionReport& r) {
  Json rows = Json::array();
  for (const auto& row : r.rows) rows.push_back(Json{{"l", row.l}, {"lhs", row.lhs}, {"rhs", row.rhs}, {"pass", row.pass}});
  Json out{{"pass", r.pass}, {"bounded", r.bounded}, {"rows", rows}, {"chain_maps", r.chain_maps}, {"chain_pass", r.chain_pass}};
  if (!r.warnings.empty()) out["warnings"] = r.warnings;
  return out;
}

Json to_json(const cat::YonedaReport& r) {
  Json table = Json::array();
  for (const auto& [a, b] : r.table) table.push_back(Json::array({a, b}));
  Json out{{"mode", cat::mode_name(r.mode)}, {"bijection", r.bijection}, {"lhs", r.lhs}, {"rhs", r.rhs}, {"map_table", table}};
  if (!r.detail.empty()) out["detail"] = r.detail;
  return out;
}

Json to_json(const cat::HomTensorReport& r) {
  Json out{{"bijection", r.bijection}, {"lhs", r.lhs}, {"rhs", r.rhs}};
  if (!r.detail.empty()) out["detail"] = r.detail;
  return out;
}

Json to_json(const cat::FiberedReport& r) {
  Json out{{"fibered_in_sets", r.fibered_in_sets}, {"cofibered_in_sets", r.cofibered_in_sets}};
  if (!r.fibered_witness.empty()) out["fibered_witness"] = r.fibered_witness;
  if (!r.cofibered_witness.empty()) out["cofibered_witness"] = r.cofibered_witness;
  return out;
}

}  // namespace fiblab::io
