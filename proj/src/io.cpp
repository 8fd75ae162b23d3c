#include "kzero/io.hpp"

#include "kzero/error.hpp"

#include <algorithm>
#include <regex>
#include <sstream>

namespace kzero::io {

namespace {

[[noreturn]] void fail(const std::string& what) { throw SchemaError(what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) fail(std::string("expected an object with field '") + key + "'");
  const auto it = j.find(key);
  if (it == j.end()) fail(std::string("missing field '") + key + "'");
  return *it;
}

const Json* optional_field(const Json& j, const char* key) {
  if (!j.is_object()) fail(std::string("expected an object"));
  const auto it = j.find(key);
  return it == j.end() || it->is_null() ? nullptr : &*it;
}

long long small_int(const Json& j, const std::string& what) {
  if (j.is_number_integer()) return j.get<long long>();
  if (j.is_number_unsigned()) {
    const auto v = j.get<unsigned long long>();
    if (v > static_cast<unsigned long long>(std::numeric_limits<long long>::max())) fail(what + " is too large");
    return static_cast<long long>(v);
  }
  fail(what + " must be an integer");
}

int int_field(const Json& j, const char* key, int lo = std::numeric_limits<int>::min(),
              int hi = std::numeric_limits<int>::max()) {
  const long long v = small_int(field(j, key), std::string("'") + key + "'");
  if (v < lo || v > hi) fail(std::string("'") + key + "' out of range");
  return static_cast<int>(v);
}

int int_field_or(const Json& j, const char* key, int fallback, int lo = std::numeric_limits<int>::min(),
                 int hi = std::numeric_limits<int>::max()) {
  return optional_field(j, key) ? int_field(j, key, lo, hi) : fallback;
}

bool bool_field_or(const Json& j, const char* key, bool fallback) {
  const Json* v = optional_field(j, key);
  if (!v) return fallback;
  if (!v->is_boolean()) fail(std::string("'") + key + "' must be a boolean");
  return v->get<bool>();
}

const std::string& string_of(const Json& j, const std::string& what) {
  if (!j.is_string()) fail(what + " must be a string");
  return j.get_ref<const std::string&>();
}

const Json& array_field(const Json& j, const char* key) {
  const Json& a = field(j, key);
  if (!a.is_array()) fail(std::string("'") + key + "' must be an array");
  return a;
}

const Json& object_field(const Json& j, const char* key) {
  const Json& a = field(j, key);
  if (!a.is_object()) fail(std::string("'") + key + "' must be an object");
  return a;
}

int degree_key(const std::string& key) {
  static const std::regex pattern("-?[0-9]{1,9}");
  if (!std::regex_match(key, pattern)) fail("degree key '" + key + "' is not an integer");
  return std::stoi(key);
}

std::vector<std::string> string_list(const Json& j, const std::string& what) {
  if (!j.is_array()) fail(what + " must be an array of strings");
  std::vector<std::string> out;
  for (const auto& x : j) out.push_back(string_of(x, what + " entry"));
  return out;
}

Word index_word(const std::string& key, int size) {
  Word w;
  std::stringstream ss(key);
  std::string part;
  static const std::regex pattern("[0-9]{1,9}");
  while (std::getline(ss, part, ',')) {
    if (!std::regex_match(part, pattern)) fail("word key '" + key + "' must list basis indices");
    const int i = std::stoi(part);
    if (i >= size) fail("word key '" + key + "' names basis index " + part + " out of range");
    w.push_back(i);
  }
  if (w.empty()) fail("empty word key");
  return w;
}

std::string word_key(const Word& w) {
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) s += (i ? "," : "") + std::to_string(w[i]);
  return s;
}

std::map<int, StructureTable> to_tables(const Json& j, int input_size, int output_size, const char* what) {
  if (!j.is_object()) fail(std::string("'") + what + "' must be an object keyed by arity");
  std::map<int, StructureTable> out;
  for (const auto& [k, table] : j.items()) {
    const int arity = degree_key(k);
    if (arity < 1) fail(std::string("'") + what + "' arity must be positive");
    if (!table.is_object()) fail(std::string("'") + what + "' arity table must be an object");
    for (const auto& [key, terms] : table.items()) {
      const Word w = index_word(key, input_size);
      if (static_cast<int>(w.size()) != arity)
        fail("word '" + key + "' has length " + std::to_string(w.size()) + " in the arity " + k + " table");
      if (!terms.is_array()) fail("table entries must be arrays of [coeff, index] pairs");
      Combination c;
      for (const auto& t : terms) {
        if (!t.is_array() || t.size() != 2) fail("table entries must be arrays of [coeff, index] pairs");
        const long long idx = small_int(t[1], "output index");
        if (idx < 0 || idx >= output_size) fail("output index out of range in word '" + key + "'");
        c[static_cast<int>(idx)] += to_integer(t[0]);
      }
      std::erase_if(c, [](const auto& e) { return e.second == 0; });
      out[arity][w] = std::move(c);
    }
  }
  return out;
}

Json from_tables(const std::map<int, StructureTable>& tables) {
  Json out = Json::object();
  for (const auto& [k, table] : tables) {
    Json t = Json::object();
    for (const auto& [w, c] : table) {
      if (c.empty()) continue;
      Json terms = Json::array();
      for (const auto& [idx, coeff] : c) terms.push_back(Json::array({from_integer(coeff), idx}));
      t[word_key(w)] = std::move(terms);
    }
    if (!t.empty()) out[std::to_string(k)] = std::move(t);
  }
  return out;
}

int object_ref(const Json& j, const std::vector<std::string>& names, const std::string& what) {
  if (j.is_string()) {
    const auto it = std::find(names.begin(), names.end(), j.get<std::string>());
    if (it == names.end()) fail(what + " names unknown object '" + j.get<std::string>() + "'");
    return static_cast<int>(it - names.begin());
  }
  const long long i = small_int(j, what);
  if (i < 0 || i >= static_cast<long long>(names.size())) fail(what + " out of range");
  return static_cast<int>(i);
}

int arrow_ref(const Json& j, const FiniteCategory& C, const std::string& what) {
  if (j.is_string()) {
    for (int a = 0; a < C.arrow_count(); ++a)
      if (C.arrows[static_cast<std::size_t>(a)].label == j.get<std::string>()) return a;
    fail(what + " names unknown arrow '" + j.get<std::string>() + "'");
  }
  const long long i = small_int(j, what);
  if (i < 0 || i >= C.arrow_count()) fail(what + " out of range");
  return static_cast<int>(i);
}

std::vector<int> indices(const Json& j, int size, const std::string& what) {
  if (!j.is_array()) fail(what + " must be an array");
  std::vector<int> out;
  for (const auto& x : j) {
    const long long i = small_int(x, what + " entry");
    if (i < 0 || i >= size) fail(what + " entry out of range");
    out.push_back(static_cast<int>(i));
  }
  return out;
}

template <typename T>
std::shared_ptr<const T> share(T x) {
  return std::make_shared<const T>(std::move(x));
}

}  // namespace

Json parse(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    fail(std::string("malformed JSON: ") + e.what());
  }
}

Integer to_integer(const Json& j) {
  static const std::regex pattern("-?[0-9]+");
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    if (!std::regex_match(s, pattern)) fail("'" + s + "' is not a decimal integer");
    return Integer(s);
  }
  if (j.is_number_integer() || j.is_number_unsigned()) return Integer(j.dump());
  fail("expected an integer or a decimal string, got " + j.dump());
}

Json from_integer(const Integer& x) { return x.str(); }

Json from_integers(const std::vector<Integer>& xs) {
  Json out = Json::array();
  for (const auto& x : xs) out.push_back(from_integer(x));
  return out;
}

Json from_vector(const IntVector& v) {
  Json out = Json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(from_integer(v(i)));
  return out;
}

IntMatrix to_matrix(const Json& j, Index rows, Index cols) {
  if (!j.is_array()) fail("a matrix must be an array of rows");
  if (j.empty()) return IntMatrix(0, rows == 0 && cols >= 0 ? cols : 0);
  Index width = -1;
  for (const auto& row : j) {
    if (!row.is_array()) fail("a matrix must be an array of rows");
    if (width >= 0 && static_cast<Index>(row.size()) != width) fail("matrix rows have different lengths");
    width = static_cast<Index>(row.size());
  }
  IntMatrix A(static_cast<Index>(j.size()), width);
  for (Index r = 0; r < A.rows(); ++r)
    for (Index c = 0; c < width; ++c) A(r, c) = to_integer(j[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]);
  return A;
}

Json from_matrix(const IntMatrix& A) {
  Json out = Json::array();
  for (Index r = 0; r < A.rows(); ++r) {
    Json row = Json::array();
    for (Index c = 0; c < A.cols(); ++c) row.push_back(from_integer(A(r, c)));
    out.push_back(std::move(row));
  }
  return out;
}

GroundRing to_ring(const Json& j) {
  if (j.is_string()) {
    if (j == "Z") return GroundRing::integers();
    if (j == "Q") return GroundRing::rationals();
    fail("unknown ring '" + j.get<std::string>() + "'");
  }
  if (j.is_object() && j.size() == 1 && j.contains("Fp")) {
    const Integer p = to_integer(j["Fp"]);
    if (p < 2) fail("'Fp' must be at least 2");
    return GroundRing::prime_field(p);
  }
  fail("ring must be \"Z\", \"Q\" or {\"Fp\": p}");
}

Json from_ring(const GroundRing& R) {
  switch (R.kind) {
    case GroundRing::Kind::Integers: return "Z";
    case GroundRing::Kind::Rationals: return "Q";
    case GroundRing::Kind::PrimeField: return Json{{"Fp", from_integer(R.p)}};
  }
  return nullptr;
}

Json from_group(const FinAbGroup& G) {
  return Json{{"free_rank", G.free_rank}, {"torsion", from_integers(G.torsion)}, {"text", G.to_string()}};
}

Complex to_complex(const Json& j) {
  const GroundRing ring = optional_field(j, "ring") ? to_ring(j["ring"]) : GroundRing::integers();
  const Json& g = object_field(j, "grading");
  const std::string& type = string_of(field(g, "type"), "grading type");
  Grading grading;
  if (type == "bounded") {
    grading = Grading::bounded(int_field(g, "min", -100000, 100000), int_field(g, "max", -100000, 100000));
  } else if (type == "periodic") {
    grading = Grading::periodic_mod(int_field(g, "n", -100000, 100000));
  } else {
    fail("grading type must be \"bounded\" or \"periodic\"");
  }
  std::map<int, Index> ranks;
  for (const auto& [k, r] : object_field(j, "ranks").items()) {
    const long long v = small_int(r, "rank");
    if (v > 100000) fail("rank in degree " + k + " is too large");
    ranks[degree_key(k)] = static_cast<Index>(v);
  }
  // Shapes follow the declared ranks so that empty matrices are unambiguous.
  auto rank_at = [&](int d) -> Index {
    if (grading.periodic && grading.period > 0) d = ((d % grading.period) + grading.period) % grading.period;
    const auto it = ranks.find(d);
    return it == ranks.end() ? 0 : std::max<Index>(it->second, 0);
  };
  std::map<int, IntMatrix> diffs;
  if (const Json* d = optional_field(j, "differentials")) {
    if (!d->is_object()) fail("'differentials' must be an object keyed by degree");
    for (const auto& [k, m] : d->items()) {
      const int deg = degree_key(k);
      diffs[deg] = to_matrix(m, rank_at(deg - 1), rank_at(deg));
    }
  }
  return Complex(ring, grading, std::move(ranks), std::move(diffs));
}

Json from_complex(const Complex& C) {
  Json out;
  out["ring"] = from_ring(C.ring());
  if (C.is_periodic())
    out["grading"] = Json{{"type", "periodic"}, {"n", C.period()}};
  else
    out["grading"] = Json{{"type", "bounded"}, {"min", C.grading().min}, {"max", C.grading().max}};
  Json ranks = Json::object(), diffs = Json::object();
  for (int d : C.degrees()) {
    ranks[std::to_string(d)] = C.rank(d);
    const IntMatrix m = C.differential(d);
    if (m.size() > 0 && !m.isZero()) diffs[std::to_string(d)] = from_matrix(m);
  }
  out["ranks"] = std::move(ranks);
  out["differentials"] = std::move(diffs);
  return out;
}

ChainMap to_chain_map(const Json& j) {
  ChainMap f;
  f.source = to_complex(field(j, "source"));
  f.target = to_complex(field(j, "target"));
  if (const Json* c = optional_field(j, "components")) {
    if (!c->is_object()) fail("'components' must be an object keyed by degree");
    for (const auto& [k, m] : c->items()) {
      const int deg = degree_key(k);
      f.components[f.source.canonical(deg)] = to_matrix(m, f.target.rank(deg), f.source.rank(deg));
    }
  }
  return f;
}

AInfCategory to_category(const Json& j) {
  AInfCategory C;
  C.ring = optional_field(j, "ring") ? to_ring(j["ring"]) : GroundRing::integers();
  C.period = int_field_or(j, "period", 0, 0, 1000);
  C.objects = string_list(array_field(j, "objects"), "'objects'");
  if (C.objects.empty()) fail("a category needs at least one object");
  for (const auto& b : array_field(j, "basis")) {
    BasisElement e;
    e.label = string_of(field(b, "label"), "basis label");
    e.source = object_ref(field(b, "source"), C.objects, "basis source");
    e.target = object_ref(field(b, "target"), C.objects, "basis target");
    e.degree = int_field(b, "degree", -100000, 100000);
    C.basis.push_back(std::move(e));
  }
  const Json& units = array_field(j, "units");
  if (units.size() != C.objects.size()) fail("'units' needs one entry per object");
  for (const auto& u : units) {
    if (u.is_null()) {
      C.units.push_back(-1);
      continue;
    }
    const long long i = small_int(u, "unit");
    if (i < -1 || i >= C.size()) fail("unit index out of range");
    C.units.push_back(static_cast<int>(i));
  }
  C.max_arity = int_field_or(j, "max_arity", 4, 1, 64);
  if (const Json* mu = optional_field(j, "mu")) C.mu = to_tables(*mu, C.size(), C.size(), "mu");
  C.finite_type = bool_field_or(j, "finite_type", false);
  C.morita_asserted = bool_field_or(j, "morita_asserted", false);
  return C;
}

Json from_category(const AInfCategory& C) {
  Json out;
  out["ring"] = from_ring(C.ring);
  out["period"] = C.period;
  out["objects"] = C.objects;
  Json basis = Json::array();
  for (const auto& b : C.basis)
    basis.push_back(Json{{"label", b.label},
                         {"source", C.objects[static_cast<std::size_t>(b.source)]},
                         {"target", C.objects[static_cast<std::size_t>(b.target)]},
                         {"degree", b.degree}});
  out["basis"] = std::move(basis);
  Json units = Json::array();
  for (int u : C.units) units.push_back(u < 0 ? Json(nullptr) : Json(u));
  out["units"] = std::move(units);
  out["max_arity"] = C.max_arity;
  out["mu"] = from_tables(C.mu);
  if (C.finite_type) out["finite_type"] = true;
  if (C.morita_asserted) out["morita_asserted"] = true;
  return out;
}

namespace {

AInfFunctor functor_body(const Json& j, std::shared_ptr<const AInfCategory> S, std::shared_ptr<const AInfCategory> T) {
  AInfFunctor F;
  F.source = std::move(S);
  F.target = std::move(T);
  const Json& om = array_field(j, "object_map");
  if (om.size() != F.source->objects.size()) fail("'object_map' needs one entry per source object");
  for (const auto& o : om) F.object_map.push_back(object_ref(o, F.target->objects, "object_map entry"));
  if (const Json* c = optional_field(j, "components"))
    F.components = to_tables(*c, F.source->size(), F.target->size(), "components");
  F.max_arity = int_field_or(j, "max_arity", 4, 1, 64);
  return F;
}

Json functor_body_json(const AInfFunctor& F) {
  Json out;
  out["object_map"] = F.object_map;
  out["components"] = from_tables(F.components);
  out["max_arity"] = F.max_arity;
  return out;
}

}  // namespace

AInfFunctor to_functor(const Json& j) {
  return functor_body(j, share(to_category(field(j, "source"))), share(to_category(field(j, "target"))));
}

Json from_functor(const AInfFunctor& F) {
  Json out;
  out["source"] = from_category(*F.source);
  out["target"] = from_category(*F.target);
  const Json body = functor_body_json(F);
  for (const auto& [k, v] : body.items()) out[k] = v;
  return out;
}

Span to_span(const Json& j) {
  const auto A = share(to_category(field(j, "A")));
  const auto B = share(to_category(field(j, "B")));
  const auto C = share(to_category(field(j, "C")));
  return {functor_body(field(j, "f"), A, B), functor_body(field(j, "g"), A, C)};
}

Json from_span(const Span& s) {
  Json out;
  out["A"] = from_category(*s.f.source);
  out["B"] = from_category(*s.f.target);
  out["C"] = from_category(*s.g.target);
  out["f"] = functor_body_json(s.f);
  out["g"] = functor_body_json(s.g);
  return out;
}

K0Presentation to_presentation(const Json& j) {
  K0Presentation P;
  P.generators = string_list(array_field(j, "generators"), "'generators'");
  for (const auto& r : array_field(j, "relations")) {
    const auto names = string_list(r, "relation");
    if (names.size() != 3) fail("each relation lists exactly three generators [A, B, C]");
    P.relations.push_back({names[0], names[1], names[2]});
  }
  return P;
}

Json from_presentation(const K0Presentation& P) {
  Json rel = Json::array();
  for (const auto& r : P.relations) rel.push_back(Json::array({r[0], r[1], r[2]}));
  return Json{{"generators", P.generators}, {"relations", std::move(rel)}};
}

SimplicialSet to_simplicial_set(const Json& j) {
  if (!j.is_object()) fail("a simplicial set must be an object");
  if (optional_field(j, "standard"))
    return standard_simplex(int_field(j, "standard", 0, 8), int_field(j, "dim_bound", 0, 6));
  if (optional_field(j, "empty")) return empty_simplicial_set(int_field(j, "dim_bound", 0, 6));
  if (const Json* p = optional_field(j, "product")) {
    if (!p->is_array() || p->size() != 2) fail("'product' takes two simplicial sets");
    return product(to_simplicial_set((*p)[0]), to_simplicial_set((*p)[1]));
  }
  SimplicialSet X;
  X.dim_bound = int_field(j, "dim_bound", 0, 6);
  const Json& simplices = array_field(j, "simplices");
  if (static_cast<int>(simplices.size()) != X.dim_bound + 1) fail("'simplices' needs one list per dimension");
  for (const auto& level : simplices) X.simplices.push_back(string_list(level, "simplex labels"));
  auto operators = [&](const char* key, int first, int last, int offset, auto& out) {
    const Json& a = array_field(j, key);
    if (static_cast<int>(a.size()) != X.dim_bound + 1) fail(std::string("'") + key + "' needs one entry per dimension");
    out.resize(static_cast<std::size_t>(X.dim_bound + 1));
    for (int n = first; n <= last; ++n) {
      const Json& level = a[static_cast<std::size_t>(n)];
      if (!level.is_array() || static_cast<int>(level.size()) != n + 1)
        fail(std::string("'") + key + "' in dimension " + std::to_string(n) + " needs " + std::to_string(n + 1) +
             " operators");
      for (const auto& op : level)
        out[static_cast<std::size_t>(n)].push_back(indices(op, X.count(n + offset), key));
    }
  };
  operators("faces", 1, X.dim_bound, -1, X.faces);
  operators("degeneracies", 0, X.dim_bound - 1, 1, X.degeneracies);
  return X;
}

Json from_simplicial_set(const SimplicialSet& X) {
  Json out;
  out["dim_bound"] = X.dim_bound;
  out["simplices"] = X.simplices;
  out["faces"] = X.faces;
  out["degeneracies"] = X.degeneracies;
  return out;
}

FiniteCategory to_finite_category(const Json& j) {
  FiniteCategory C;
  C.objects = string_list(array_field(j, "objects"), "'objects'");
  for (const auto& a : array_field(j, "arrows"))
    C.arrows.push_back({string_of(field(a, "label"), "arrow label"),
                        object_ref(field(a, "source"), C.objects, "arrow source"),
                        object_ref(field(a, "target"), C.objects, "arrow target")});
  for (std::size_t x = 0; x < C.arrows.size(); ++x)
    for (std::size_t y = 0; y < x; ++y)
      if (C.arrows[x].label == C.arrows[y].label) fail("duplicate arrow label '" + C.arrows[x].label + "'");
  const Json& ids = array_field(j, "identities");
  if (ids.size() != C.objects.size()) fail("'identities' needs one arrow per object");
  for (const auto& i : ids) C.identities.push_back(arrow_ref(i, C, "identity"));
  const auto n = static_cast<std::size_t>(C.arrow_count());
  C.composition.assign(n, std::vector<int>(n, -1));
  for (std::size_t o = 0; o < C.identities.size(); ++o) {
    const int id = C.identities[o];
    if (C.arrows[static_cast<std::size_t>(id)].source != static_cast<int>(o) ||
        C.arrows[static_cast<std::size_t>(id)].target != static_cast<int>(o))
      fail("identity of '" + C.objects[o] + "' must be an endomorphism of it");
    for (int f = 0; f < C.arrow_count(); ++f) {
      const auto& a = C.arrows[static_cast<std::size_t>(f)];
      if (a.target == static_cast<int>(o)) C.composition[static_cast<std::size_t>(id)][static_cast<std::size_t>(f)] = f;
      if (a.source == static_cast<int>(o)) C.composition[static_cast<std::size_t>(f)][static_cast<std::size_t>(id)] = f;
    }
  }
  if (const Json* comp = optional_field(j, "composition")) {
    if (!comp->is_array()) fail("'composition' must be an array of [g, h, g∘h] triples");
    for (const auto& t : *comp) {
      if (!t.is_array() || t.size() != 3) fail("'composition' must be an array of [g, h, g∘h] triples");
      const int g = arrow_ref(t[0], C, "composition"), h = arrow_ref(t[1], C, "composition");
      C.composition[static_cast<std::size_t>(g)][static_cast<std::size_t>(h)] = arrow_ref(t[2], C, "composition");
    }
  }
  return C;
}

Json from_finite_category(const FiniteCategory& C) {
  Json out;
  out["objects"] = C.objects;
  Json arrows = Json::array(), ids = Json::array(), comp = Json::array();
  for (const auto& a : C.arrows)
    arrows.push_back(Json{{"label", a.label},
                          {"source", C.objects[static_cast<std::size_t>(a.source)]},
                          {"target", C.objects[static_cast<std::size_t>(a.target)]}});
  for (int i : C.identities) ids.push_back(C.arrows[static_cast<std::size_t>(i)].label);
  auto is_identity = [&](int f) { return std::find(C.identities.begin(), C.identities.end(), f) != C.identities.end(); };
  for (int g = 0; g < C.arrow_count(); ++g)
    for (int h = 0; h < C.arrow_count(); ++h) {
      const int gh = C.compose(g, h);
      if (gh < 0 || is_identity(g) || is_identity(h)) continue;
      comp.push_back(Json::array({C.arrows[static_cast<std::size_t>(g)].label, C.arrows[static_cast<std::size_t>(h)].label,
                                  C.arrows[static_cast<std::size_t>(gh)].label}));
    }
  out["arrows"] = std::move(arrows);
  out["identities"] = std::move(ids);
  out["composition"] = std::move(comp);
  return out;
}

WaldhausenToy to_toy(const Json& j) {
  if (const Json* b = optional_field(j, "builtin")) {
    const std::string& name = string_of(*b, "'builtin'");
    if (name == "f2-free-modules") return f2_free_modules(int_field_or(j, "max_rank", 2, 0, 4));
    if (name == "zero") return zero_toy();
    fail("unknown builtin toy '" + name + "'");
  }
  WaldhausenToy W;
  W.name = optional_field(j, "name") ? string_of(j["name"], "'name'") : "toy";
  W.category = to_finite_category(field(j, "category"));
  W.zero = object_ref(field(j, "zero"), W.category.objects, "'zero'");
  const auto n = static_cast<std::size_t>(W.category.arrow_count());
  W.cofibration.assign(n, false);
  W.weak_equivalence.assign(n, false);
  for (const auto& a : array_field(j, "cofibrations"))
    W.cofibration[static_cast<std::size_t>(arrow_ref(a, W.category, "cofibration"))] = true;
  for (const auto& a : array_field(j, "weak_equivalences"))
    W.weak_equivalence[static_cast<std::size_t>(arrow_ref(a, W.category, "weak equivalence"))] = true;
  for (const auto& q : array_field(j, "quotients")) {
    if (!q.is_array() || q.size() != 2) fail("'quotients' entries are [cofibration, quotient] pairs");
    W.quotients[arrow_ref(q[0], W.category, "quotient")] = arrow_ref(q[1], W.category, "quotient");
  }
  return W;
}

SimplexFunctor to_simplex_functor(const Json& j, const FiniteCategory& source, const FiniteCategory& target) {
  SimplexFunctor F;
  if (const Json* c = optional_field(j, "constant")) {
    const int o = object_ref(*c, target.objects, "'constant'");
    F.objects.assign(source.objects.size(), o);
    F.arrows.assign(source.arrows.size(), target.identities.at(static_cast<std::size_t>(o)));
    return F;
  }
  for (const auto& o : array_field(j, "objects")) F.objects.push_back(object_ref(o, target.objects, "functor object"));
  for (const auto& a : array_field(j, "arrows")) F.arrows.push_back(arrow_ref(a, target, "functor arrow"));
  return F;
}

}  // namespace kzero::io
