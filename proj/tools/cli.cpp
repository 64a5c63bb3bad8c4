#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <random>
#include <sstream>

#include "acceptance.hpp"
#include "fiblab/error.hpp"
#include "fiblab/fib.hpp"
#include "fiblab/oracle.hpp"
#include "fiblab/straighten.hpp"

namespace fiblab::cli {

using io::Json;

namespace {

struct Outcome {
  Json report = Json::object();
  bool ok = true;
  /// Overrides the generic rendering in text mode.
  std::vector<std::string> lines;
};

const Json& need(const CommandRequest& req, const char* key) {
  if (!req.inputs.contains(key)) throw InputError(std::string("command ") + req.command + " needs \"" + key + "\"");
  return req.inputs.at(key);
}

bool has(const CommandRequest& req, const char* key) { return req.inputs.contains(key); }

fib::Mode mode_of(const CommandRequest& req, const std::vector<sspace::SSpacePtr>& spaces) {
  if (!req.mode) return fib::natural_mode(spaces);
  if (*req.mode == "exact" || *req.mode == "exact_discrete") return fib::Mode::exact_discrete;
  if (*req.mode == "bounded" || *req.mode == "bounded_evidence") return fib::Mode::bounded_evidence;
  throw InputError("--mode must be exact or bounded, got " + *req.mode);
}

fib::Side side_of(const std::string& s) {
  if (s == "left") return fib::Side::left;
  if (s == "right") return fib::Side::right;
  throw InputError("--side must be left or right, got " + s);
}

fib::Direction direction_of(const std::string& s) {
  if (s == "under") return fib::Direction::under;
  if (s == "over") return fib::Direction::over;
  throw InputError("--direction must be under or over, got " + s);
}

int bound_of(const CommandRequest& req, int fallback) {
  const int b = req.bound.value_or(fallback);
  if (b < 0) throw InputError("--bound must be non-negative");
  return b;
}

/// A fibration given as "map", or the Grothendieck construction of "functor" over F(n).
sspace::SSpaceMap fibration_input(const CommandRequest& req) {
  if (has(req, "map")) return io::map_from_json(req.inputs.at("map"));
  if (has(req, "functor")) {
    auto p = io::functor_from_json(req.inputs.at("functor"));
    return straighten::grothendieck_fibration(p, bound_of(req, std::max(p.base->object_count() - 1, 1)));
  }
  throw InputError("command " + req.command + " needs \"map\" or \"functor\"");
}

/// Right unless the map is a right-fibration failure and a left fibration.
std::string default_side(const sspace::SSpaceMap& p) {
  auto check = [&](fib::Side s) {
    return fib::fibration_check(p, s, fib::Variant::zeroth, fib::natural_mode({p.source, p.target})).verdict;
  };
  return !check(fib::Side::right) && check(fib::Side::left) ? "left" : "right";
}

cat::CatPtr category_input(const CommandRequest& req) {
  return has(req, "category") ? io::category_from_json(req.inputs.at("category")) : cat::terminal_category();
}

/// "functor" from the input, else a seeded random functor on `c`.
cat::SetFunctor functor_input(const CommandRequest& req, const char* key, const cat::CatPtr& c, cat::Variance variance,
                              std::mt19937_64& rng, int max_size = 3) {
  if (has(req, key)) {
    Json j = req.inputs.at(key);
    if (j.is_object() && !j.contains("category") && (j.contains("representable") || j.contains("constant") || j.contains("random")))
      j["category"] = io::to_json(*c);
    auto f = io::functor_from_json(j);
    if (f.base->object_count() != c->object_count())
      throw InputError(std::string("\"") + key + "\" lives on a different category");
    return f;
  }
  return cat::random_functor(c, variance, rng, max_size);
}

// ---------------------------------------------------------------- commands

Outcome cmd_factorize(const CommandRequest& req) {
  Outcome o;
  auto f = io::monotone_from_json(need(req, "map"));
  auto fac = poset::factorize(f);
  o.report["map"] = io::to_json(f);
  o.report["factorization"] = io::to_json(fac);
  o.ok = poset::compose(fac.i, fac.p) == f;
  return o;
}

Outcome cmd_classify(const CommandRequest& req) {
  Outcome o;
  auto f = io::monotone_from_json(need(req, "map"));
  o.report["map"] = io::to_json(f);
  o.report["classification"] = io::to_json(poset::classify(f));
  return o;
}

Outcome cmd_build(const CommandRequest& req) {
  Outcome o;
  auto check = [](const std::string& why, const char* what) {
    if (!why.empty()) throw InputError(std::string(what) + " is invalid: " + why);
  };
  if (has(req, "set")) {
    // the builder checks the simplicial identities
    auto s = io::sset_from_json(req.inputs.at("set"));
    o.report["set"] = req.full ? io::to_json(*s) : io::summary(*s);
  }
  if (has(req, "space")) {
    auto x = io::space_from_json(req.inputs.at("space"));
    check(x->validate(), "space");
    o.report["space"] = req.full ? io::to_json(*x) : io::summary(*x);
  }
  if (has(req, "map")) {
    auto f = io::map_from_json(req.inputs.at("map"));
    check(f.validate(), "map");
    o.report["map"] = req.full ? io::to_json(f) : Json{{"source", io::summary(*f.source)}, {"target", io::summary(*f.target)}};
  }
  if (has(req, "category")) {
    auto c = io::category_from_json(req.inputs.at("category"));
    o.report["category"] = io::to_json(*c);
  }
  if (has(req, "functor")) o.report["functor"] = io::to_json(io::functor_from_json(req.inputs.at("functor")));
  if (o.report.empty()) throw InputError("build needs \"set\", \"space\", \"map\", \"category\" or \"functor\"");
  return o;
}

Outcome cmd_check_fibration(const CommandRequest& req) {
  Outcome o;
  auto p = io::map_from_json(need(req, "map"));
  const auto mode = mode_of(req, {p.source, p.target});
  const int bound = bound_of(req, 2);
  fib::FibrationReport rep;
  const std::string side = req.side.empty() ? "left" : req.side;
  if (side == "reedy" || side == "trivial") {
    rep = fib::reedy_bounded(p, bound, side == "trivial");
  } else if (req.variant == "both") {
    rep = fib::fibration_check_both(p, side_of(side), mode, bound);
  } else if (req.variant == "zeroth" || req.variant == "adjacent") {
    rep = fib::fibration_check(p, side_of(side), req.variant == "zeroth" ? fib::Variant::zeroth : fib::Variant::adjacent,
                               mode, bound);
  } else {
    throw InputError("--variant must be zeroth, adjacent or both, got " + req.variant);
  }
  o.report["fibration"] = io::to_json(rep);
  o.ok = rep.verdict;
  return o;
}

Outcome cmd_segal(const CommandRequest& req) {
  Outcome o;
  auto x = io::space_from_json(need(req, "space"));
  auto rep = fib::segal_check(x, mode_of(req, {x}), bound_of(req, 2));
  o.report["segal"] = io::to_json(rep);
  o.ok = rep.verdict;
  return o;
}

Outcome cmd_slice(const CommandRequest& req) {
  Outcome o;
  auto w = io::space_from_json(need(req, "space"));
  const auto dir = direction_of(req.direction);
  fib::SliceOptions opts;
  opts.general = req.general;
  opts.l_max = std::max(req.l_max.value_or(1), 1);
  auto sl = fib::slice_space(w, req.vertex, dir, opts);
  o.report["slice"] = io::to_json(sl);
  const auto side = dir == fib::Direction::under ? fib::Side::left : fib::Side::right;
  auto rep = fib::fibration_check(sl.projection, side, fib::Variant::zeroth, mode_of(req, {sl.space, w}), bound_of(req, 2));
  o.report["projection"] = io::to_json(rep);
  o.ok = rep.verdict;
  if (req.initial) {
    auto init = fib::initial_object_check(w, req.vertex, bound_of(req, 2), opts);
    o.report["initial"] = io::to_json(init);
    o.ok = o.ok && init.value;
  }
  return o;
}

Outcome cmd_straighten(const CommandRequest& req) {
  Outcome o;
  auto p = fibration_input(req);
  const auto side = side_of(req.side.empty() ? default_side(p) : req.side);
  auto fibrep = fib::fibration_check(p, side, fib::Variant::zeroth, mode_of(req, {p.source, p.target}), bound_of(req, 2));
  if (!fibrep.verdict) {
    o.report["fibration"] = io::to_json(fibrep);
    o.ok = false;
    return o;
  }
  auto s = straighten::straighten(p, side);
  o.report["straightened"] = io::to_json(s);
  auto cond = straighten::check_straightening_condition(s);
  auto cmp = straighten::check_comparison(s);
  auto ids = s.straightened.validate();
  o.report["checks"] = {{"simplicial_identities", ids.empty() ? "ok" : ids},
                        {"identity_on_fibers", cond.empty() ? "ok" : cond},
                        {"comparison_bijective", cmp.empty() ? "ok" : cmp}};
  o.ok = ids.empty() && cond.empty() && cmp.empty();
  return o;
}

Outcome cmd_fibers(const CommandRequest& req) {
  Outcome o;
  auto p = fibration_input(req);
  auto rep = straighten::fiber_equivalence_report(p, side_of(req.side.empty() ? default_side(p) : req.side));
  o.report["fibers"] = io::to_json(rep);
  o.ok = rep.all_pass;
  return o;
}

Outcome cmd_yoneda(const CommandRequest& req) {
  Outcome o;
  static const std::map<std::string, cat::YonedaMode> modes{{"hom_functor", cat::YonedaMode::hom_functor},
                                                             {"tensor_functor", cat::YonedaMode::tensor_functor},
                                                             {"hom_fibered", cat::YonedaMode::hom_fibered},
                                                             {"tensor_fibered", cat::YonedaMode::tensor_fibered}};
  if (req.yoneda_mode == "space") {
    auto l = io::map_from_json(need(req, "map"));
    auto rep = fib::yoneda_space_check(l, req.vertex);
    o.report["space"] = io::to_json(rep);
    o.ok = rep.equal;
    return o;
  }
  std::vector<cat::YonedaMode> run;
  if (req.yoneda_mode == "all") {
    for (const auto& [name, m] : modes) run.push_back(m);
    std::sort(run.begin(), run.end());
  } else if (auto it = modes.find(req.yoneda_mode); it != modes.end()) {
    run.push_back(it->second);
  } else {
    throw InputError("yoneda --mode must be hom_functor, tensor_functor, hom_fibered, tensor_fibered, space or all");
  }
  auto c = category_input(req);
  std::mt19937_64 rng(req.seed);
  Json rows = Json::array();
  for (auto mode : run) {
    const auto variance = mode == cat::YonedaMode::hom_functor && has(req, "functor") ? cat::Variance::covariant
                                                                                      : cat::Variance::contravariant;
    auto f = functor_input(req, "functor", c, variance, rng);
    std::optional<cat::FiberedCategory> d;
    if (mode == cat::YonedaMode::hom_fibered || mode == cat::YonedaMode::tensor_fibered) {
      if (f.variance != cat::Variance::contravariant) throw InputError("fibered modes need a contravariant functor");
      d = cat::grothendieck_cat(f);
    }
    if (mode == cat::YonedaMode::tensor_functor && f.variance != cat::Variance::contravariant)
      throw InputError("tensor_functor needs a contravariant functor");
    for (int x = 0; x < c->object_count(); ++x) {
      cat::YonedaReport rep;
      switch (mode) {
        case cat::YonedaMode::hom_functor: rep = cat::yoneda_hom_functor(f, x); break;
        case cat::YonedaMode::tensor_functor: rep = cat::yoneda_tensor_functor(f, x); break;
        case cat::YonedaMode::hom_fibered: rep = cat::yoneda_hom_fibered(*d, x); break;
        case cat::YonedaMode::tensor_fibered: rep = cat::yoneda_tensor_fibered(*d, x); break;
      }
      Json row = io::to_json(rep);
      row["object"] = c->object(x);
      rows.push_back(std::move(row));
      o.ok = o.ok && rep.bijection;
    }
  }
  o.report["yoneda"] = std::move(rows);
  return o;
}

Outcome cmd_tensor(const CommandRequest& req) {
  Outcome o;
  auto c = category_input(req);
  std::mt19937_64 rng(req.seed);
  auto p = functor_input(req, "presheaf", c, cat::Variance::contravariant, rng, 2);
  auto f = functor_input(req, "copresheaf", c, cat::Variance::covariant, rng, 2);
  if (p.variance != cat::Variance::contravariant || f.variance != cat::Variance::covariant)
    throw InputError("tensor needs a contravariant \"presheaf\" and a covariant \"copresheaf\"");
  int s = 2;
  if (has(req, "s")) s = req.inputs.at("s").get<int>();
  auto t = cat::tensor_functors(p, f);
  o.report["tensor"] = {{"size", t.size()}};
  auto rep = cat::hom_tensor_check(p, f, s);
  o.report["hom_tensor"] = io::to_json(rep);
  o.ok = rep.bijection;
  return o;
}

Outcome cmd_theorem_a(const CommandRequest& req) {
  Outcome o;
  sspace::SSpaceMap f;
  if (has(req, "map")) {
    f = io::map_from_json(req.inputs.at("map"));
  } else {
    // terminal object of a seeded poset
    std::mt19937_64 rng(req.seed);
    auto c = has(req, "category") ? io::category_from_json(req.inputs.at("category")) : cat::random_poset(rng, 4, true);
    int top = -1;
    for (int t = 0; t < c->object_count() && top < 0; ++t) {
      bool all = true;
      for (int x = 0; x < c->object_count() && all; ++x) all = !c->hom(x, t).empty();
      if (all) top = t;
    }
    if (top < 0) throw InputError("theorem-a: the category has no terminal object");
    auto x = fib::nerve_space(*c, std::max(c->object_count(), 1));
    f = sspace::point_map(x, x->level(0).find(c->object(top)));
    o.report["category"] = io::to_json(*c);
    o.report["terminal"] = c->object(top);
  }
  auto rep = fib::cofinal_evidence(f, bound_of(req, 3));
  o.report["cofinal"] = io::to_json(rep);
  o.ok = rep.value;
  return o;
}

Outcome cmd_colimit(const CommandRequest& req) {
  Outcome o;
  auto p = io::map_from_json(need(req, "map"));
  fib::SliceOptions opts;
  opts.general = req.general;
  opts.l_max = std::max(req.l_max.value_or(1), 1);
  auto rep = fib::colimit_evidence(p, bound_of(req, 2), opts);
  o.report["colimit"] = io::to_json(rep);
  o.ok = rep.has_colimit;
  return o;
}

Outcome cmd_decompose(const CommandRequest& req) {
  Outcome o;
  auto r = io::map_from_json(need(req, "R"));
  auto w = io::map_from_json(need(req, "W"));
  auto rep = straighten::mapping_decomposition_check(r, w, req.l_max.value_or(2));
  o.report["decomposition"] = io::to_json(rep);
  o.ok = rep.pass && rep.chain_pass;
  return o;
}

Outcome cmd_homology(const CommandRequest& req) {
  Outcome o;
  sset::SSetPtr s;
  if (has(req, "set")) s = io::sset_from_json(req.inputs.at("set"));
  else if (has(req, "space")) s = sspace::diagonal(*io::space_from_json(req.inputs.at("space")));
  else throw InputError("homology needs \"set\" or \"space\"");
  const int k = bound_of(req, 3);
  auto cc = oracle::chain_complex(*s, std::max(k, 1));
  auto d2 = cc.check_d_squared();
  o.report["set"] = io::summary(*s);
  o.report["betti"] = io::to_json(oracle::betti(*s, k));
  o.report["components"] = oracle::pi0(*s).count;
  o.report["contractible"] = io::to_json(oracle::contractible_evidence(*s, k));
  o.report["d_squared"] = d2.empty() ? "ok" : d2;
  o.ok = d2.empty();
  return o;
}

Outcome cmd_report_suite(const CommandRequest& req) {
  Outcome o;
  std::vector<suite::CriterionResult> results;
  if (req.criterion) results.push_back(suite::run_criterion(*req.criterion, req.seed));
  else results = suite::run_acceptance(req.seed);
  Json rows = Json::array();
  for (const auto& r : results) {
    rows.push_back({{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
    // timings vary between runs and stay out of the report
    auto copy = r;
    copy.seconds = 0;
    auto line = suite::format_result(copy);
    o.lines.push_back(line.substr(0, line.rfind("  [")));
    o.ok = o.ok && r.pass;
  }
  o.report["criteria"] = std::move(rows);
  return o;
}

using Handler = Outcome (*)(const CommandRequest&);

const std::vector<std::pair<std::string, Handler>>& registry() {
  static const std::vector<std::pair<std::string, Handler>> table{
      {"factorize", cmd_factorize},   {"classify", cmd_classify},
      {"build", cmd_build},           {"check-fibration", cmd_check_fibration},
      {"segal", cmd_segal},           {"slice", cmd_slice},
      {"straighten", cmd_straighten}, {"fibers", cmd_fibers},
      {"yoneda", cmd_yoneda},         {"tensor", cmd_tensor},
      {"theorem-a", cmd_theorem_a},   {"colimit", cmd_colimit},
      {"decompose-map", cmd_decompose}, {"homology", cmd_homology},
      {"report-suite", cmd_report_suite}};
  return table;
}

void render(const Json& j, std::ostream& out, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  auto scalar_list = [](const Json& a) {
    return std::all_of(a.begin(), a.end(), [](const Json& e) { return !e.is_structured(); });
  };
  for (auto it = j.begin(); it != j.end(); ++it) {
    const Json& v = it.value();
    if (v.is_object()) {
      out << pad << it.key() << ":\n";
      render(v, out, indent + 2);
    } else if (v.is_array() && !scalar_list(v)) {
      out << pad << it.key() << ":\n";
      for (const auto& e : v) {
        if (e.is_object()) {
          out << pad << "  -\n";
          render(e, out, indent + 4);
        } else {
          out << pad << "  - " << e.dump() << "\n";
        }
      }
    } else {
      out << pad << it.key() << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
    }
  }
}

}  // namespace

const std::vector<std::string>& commands() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& [name, h] : registry()) n.push_back(name);
    return n;
  }();
  return names;
}

int execute(const CommandRequest& req, std::ostream& out, std::ostream& err) {
  Handler handler = nullptr;
  for (const auto& [name, h] : registry())
    if (name == req.command) handler = h;
  if (!handler) {
    err << "error: unknown command " << req.command << "\n";
    return 2;
  }
  Outcome o;
  try {
    o = handler(req);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const Json::exception& e) {
    err << "error: malformed input: " << e.what() << "\n";
    return 2;
  }
  Json report;
  report["command"] = req.command;
  report["seed"] = req.seed;
  for (auto it = o.report.begin(); it != o.report.end(); ++it) report[it.key()] = it.value();
  report["verdict"] = o.ok ? "pass" : "fail";
  if (req.json) {
    out << report.dump(2) << "\n";
  } else if (!o.lines.empty()) {
    out << "seed: " << req.seed << "\n";
    for (const auto& l : o.lines) out << l << "\n";
    out << "verdict: " << (o.ok ? "pass" : "fail") << "\n";
  } else {
    render(report, out, 0);
  }
  return o.ok ? 0 : 1;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"fiblab: finite simplicial spaces, fibrations and straightening", "fiblab"};
  CommandRequest req;
  std::string input, map, space, set, category, functor, w, mode;
  int bound = -1;
  app.add_option("command", req.command, "Command to run")->required()->check(CLI::IsMember(commands()));
  app.add_option("--input", input, "JSON file with the command payloads");
  app.add_option("--mode", mode, "exact | bounded (yoneda: hom_functor | tensor_functor | hom_fibered | tensor_fibered | space | all)");
  app.add_option("--bound", bound, "Evidence bound (levels, k_max or hom bound)");
  app.add_option("--l-max", req.l_max, "Simplicial level of mapping spaces");
  app.add_option("--seed", req.seed, "Seed for generated inputs");
  app.add_flag("--json", req.json, "JSON report");
  app.add_flag("--full", req.full, "build: print the full form");
  app.add_option("--map", map, "Map payload (JSON or a name)");
  app.add_option("--space", space, "Simplicial space payload");
  app.add_option("--set", set, "Simplicial set payload");
  app.add_option("--category", category, "Category payload");
  app.add_option("--functor", functor, "Functor payload");
  app.add_option("--target", w, "decompose-map: the fibration W (R comes from --map)");
  app.add_option("--side", req.side, "left | right (check-fibration also: reedy | trivial)");
  app.add_option("--variant", req.variant, "zeroth | adjacent | both");
  app.add_option("--vertex", req.vertex, "Vertex of level 0");
  app.add_option("--direction", req.direction, "under | over");
  app.add_flag("--general", req.general, "Slices through the exponential even for discrete input");
  app.add_flag("--initial", req.initial, "slice: also check that the vertex is initial");
  app.add_option("--criterion", req.criterion, "report-suite: run a single criterion");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  try {
    if (!input.empty()) {
      std::ifstream in(input);
      if (!in) throw InputError("cannot read " + input);
      std::stringstream buf;
      buf << in.rdbuf();
      req.inputs = io::parse(buf.str(), input);
      if (!req.inputs.is_object()) throw InputError(input + ": top level must be an object");
    }
    const std::pair<const char*, std::string*> inline_payloads[] = {
        {"map", &map}, {"space", &space}, {"set", &set}, {"category", &category}, {"functor", &functor}};
    for (const auto& [key, text] : inline_payloads)
      if (!text->empty()) req.inputs[key] = io::parse_value(*text, std::string("--") + key);
    if (req.command == "decompose-map") {
      if (!map.empty()) req.inputs["R"] = req.inputs["map"];
      if (!w.empty()) req.inputs["W"] = io::parse_value(w, "--target");
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  if (!mode.empty()) {
    if (req.command == "yoneda") req.yoneda_mode = mode;
    else req.mode = mode;
  }
  if (bound >= 0) req.bound = bound;
  return execute(req, out, err);
}

}  // namespace fiblab::cli
