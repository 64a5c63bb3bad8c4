#pragma once

#include <string>

#include "json.hpp"

#include "fiblab/cat.hpp"
#include "fiblab/fib.hpp"
#include "fiblab/oracle.hpp"
#include "fiblab/poset.hpp"
#include "fiblab/sset.hpp"
#include "fiblab/sspace.hpp"
#include "fiblab/straighten.hpp"

namespace fiblab::io {

using Json = nlohmann::ordered_json;

/// Parses JSON text; throws InputError naming `where` and the byte offset on failure.
Json parse(const std::string& text, const std::string& where = "input");
/// A flag value: JSON when it starts like JSON, otherwise a bare string (a named object).
Json parse_value(const std::string& text, const std::string& where);

// ---------------------------------------------------------------- poset

Json to_json(const poset::MonotoneMap& f);
/// {"m": int, "n": int, "values": [...]}
poset::MonotoneMap monotone_from_json(const Json& j);
Json to_json(const poset::Classification& c);
Json to_json(const poset::Factorization& f);

// ---------------------------------------------------------------- simplicial sets

/// {"dim_bound", "exact", "cells": [{"label", "dim", "faces": [ref, ...]}]}
Json to_json(const sset::FinSimplicialSet& s);
/// Cell counts per dimension plus bound and exactness.
Json summary(const sset::FinSimplicialSet& s);
/// Full form or a name: point, empty, delta(n), boundary(n), horn(n,i), spine(n), discrete(k), J(l)@T.
sset::SSetPtr sset_from_json(const Json& j);
Json to_json(const sset::SSetMap& f);
Json to_json(const sset::KanReport& r);

// ---------------------------------------------------------------- simplicial spaces

/// {"level_bound", "exact", "levels": [...], "face": [[[ref...] per i] per m], "degeneracy": ...}
Json to_json(const sspace::FinSimplicialSpace& x);
Json summary(const sspace::FinSimplicialSpace& x);
/// Full form, a name (F(n), dF(n), L(n,l), E(n), G(n), point, each optionally "@M"), or
/// {"nerve": category, "M"}, {"discrete": sset, "M"}, {"constant": sset, "M"},
/// {"product": [spaces]}, {"opposite": space}, {"slice": space, "vertex", "direction"}.
sspace::SSpacePtr space_from_json(const Json& j);

/// {"source", "target", "components": [[ref per cell] per level]}
Json to_json(const sspace::SSpaceMap& f);
/// Level summaries of source and target plus the components.
Json summary(const sspace::SSpaceMap& f);
/// Full form or {"identity": X}, {"to_point": X}, {"point": X, "vertex"},
/// {"classifying": X, "m", "vertex"}, {"slice_projection": X, "vertex", "direction", "general"},
/// {"cocone_projection": p}, {"grothendieck": functor, "M"}, {"compose": [g, f]},
/// {"opposite": p}, {"pullback": f, "along": g}.
sspace::SSpaceMap map_from_json(const Json& j);

/// Default level bound of named spaces without "@M".
inline constexpr int kDefaultLevels = 3;

// ---------------------------------------------------------------- categories

/// {"objects": [...], "morphisms": [{"id","src","tgt"}], "compose": [[f,g,fg],...], "identities": {...}}
Json to_json(const cat::FinCategory& c);
/// Full form or "[n]", "I[l]", "terminal", {"random_category": seed}, {"random_poset": {"seed","n","top"}}.
cat::CatPtr category_from_json(const Json& j);
/// {"category", "variance", "values": {object: [labels]}, "maps": {morphism: [ints]}}
Json to_json(const cat::SetFunctor& f);
/// Full form or {"representable": object, "category", "variance"}, {"constant": size, ...},
/// {"random": seed, "category", "variance", "max_size"}, {"random_chain": {"n","seed","variance","max_size"}}.
cat::SetFunctor functor_from_json(const Json& j);
cat::Variance variance_from_string(const std::string& s);
const char* variance_name(cat::Variance v);

// ---------------------------------------------------------------- reports

Json to_json(const fib::FibrationReport& r);
Json to_json(const fib::SliceResult& r);
Json to_json(const fib::InitialReport& r);
Json to_json(const fib::CoconeResult& r);
Json to_json(const fib::ColimitReport& r);
Json to_json(const fib::CofinalReport& r);
Json to_json(const fib::SpanProfile& r);
Json to_json(const fib::YonedaSpaceReport& r);
Json to_json(const straighten::FiberReport& r);
/// The triple of maps plus {"chain": [...]}.
Json to_json(const straighten::StraightenedFibration& s);
Json to_json(const straighten::DecompositionReport& r);
Json to_json(const cat::YonedaReport& r);
Json to_json(const cat::HomTensorReport& r);
Json to_json(const cat::FiberedReport& r);
Json to_json(const oracle::Verdict& v);
Json to_json(const oracle::Betti& b);

}  // namespace fiblab::io
