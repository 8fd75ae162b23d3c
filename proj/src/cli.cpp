#include "kzero/cli.hpp"

#include "kzero/error.hpp"
#include "kzero/presets.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

namespace kzero::cli {

using io::Json;

namespace {

struct Options {
  std::string file;
  std::string inline_json;
  std::string preset;
  std::vector<std::string> params;
  std::string format = "json";
  int length = 0;
  int period = 2;
  int arity = 0;
  int bound = 5;
  int dim_bound = -1;
  int depth = 2;
  std::optional<int> degree;
  bool unnormalized = false;
  bool no_weq = false;
};

struct Command {
  std::string name;
  std::string help;
  std::vector<std::string> kinds;  // accepted preset kinds; empty when no input
  std::function<void(CLI::App&, Options&)> options;
  std::function<Json(const Json&, const Options&)> run;
};

std::map<std::string, long long> parse_params(const std::vector<std::string>& raw) {
  std::map<std::string, long long> out;
  for (const auto& p : raw) {
    const auto eq = p.find('=');
    if (eq == std::string::npos || eq == 0) throw SchemaError("parameter '" + p + "' must look like key=value");
    const std::string value = p.substr(eq + 1);
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(value, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != value.size()) throw SchemaError("parameter '" + p + "' needs an integer value");
    out[p.substr(0, eq)] = v;
  }
  return out;
}

Json load_input(const Command& cmd, const Options& o, std::istream& in) {
  const int sources = !o.file.empty() + !o.inline_json.empty() + !o.preset.empty();
  if (cmd.kinds.empty()) {
    if (sources > 0) throw SchemaError(cmd.name + " takes no input document");
    return nullptr;
  }
  if (sources > 1) throw SchemaError("give at most one of a file, --json and --preset");
  if (!o.params.empty() && o.preset.empty()) throw SchemaError("--param needs --preset");
  if (!o.preset.empty()) {
    const PresetInfo& info = preset_info(o.preset);
    if (std::find(cmd.kinds.begin(), cmd.kinds.end(), info.kind) == cmd.kinds.end())
      throw SchemaError("preset '" + o.preset + "' is of kind '" + info.kind + "', " + cmd.name + " expects '" + cmd.kinds.front() + "'");
    return preset_document(o.preset, parse_params(o.params));
  }
  if (!o.inline_json.empty()) return io::parse(o.inline_json);
  std::stringstream buffer;
  if (o.file.empty() || o.file == "-") {
    buffer << in.rdbuf();
  } else {
    std::ifstream f(o.file);
    if (!f) throw SchemaError("cannot read '" + o.file + "'");
    buffer << f.rdbuf();
  }
  return io::parse(buffer.str());
}

Json verdict(Verdict v) { return to_string(v); }

void merge(Json& into, const Json& from) {
  for (const auto& [k, v] : from.items()) into[k] = v;
}

Json table_row(int degree, const FinAbGroup& G) {
  Json row{{"degree", degree}};
  merge(row, io::from_group(G));
  return row;
}

Json report_json(const RelationReport& r, const AInfCategory& source, const AInfCategory& target) {
  Json out{{"ok", r.ok}};
  if (!r.ok) {
    out["arity"] = r.arity;
    out["reason"] = r.reason;
    Json w = Json::array();
    for (int i : r.witness) w.push_back(source.basis[static_cast<std::size_t>(i)].label);
    out["witness"] = std::move(w);
    out["message"] = r.describe(source, target);
  }
  return out;
}

std::string word_text(const GrothCategory& G, int basis) {
  return basis < 0 ? std::string("0") : G.category->basis[static_cast<std::size_t>(basis)].label;
}

int arity_or(const Options& o, int fallback) { return o.arity > 0 ? o.arity : fallback; }

Json cmd_snf(const Json& in, const Options&) {
  const IntMatrix A = io::to_matrix(in.is_object() && in.contains("matrix") ? in["matrix"] : in);
  const auto s = smith_normal_form(A);
  std::vector<Integer> factors;
  for (const auto& d : s.diag)
    if (d != 0) factors.push_back(d);
  return Json{{"rows", A.rows()},
              {"cols", A.cols()},
              {"rank", s.rank},
              {"diagonal", io::from_integers(s.diag)},
              {"invariant_factors", io::from_integers(factors)},
              {"D", io::from_matrix(s.D)}};
}

Json cmd_group(const Json& in, const Options&) {
  if (!in.is_object() || !in.contains("generators") || !in["generators"].is_number_integer())
    throw SchemaError("expected {\"generators\": n, \"relations\": matrix}");
  const long long n = in["generators"].get<long long>();
  if (n < 0 || n > 100000) throw SchemaError("'generators' out of range");
  const IntMatrix R = in.contains("relations") ? io::to_matrix(in["relations"], -1, n) : IntMatrix(0, n);
  return io::from_group(abelian_group_from_relations(static_cast<Index>(n), R));
}

Json cmd_homology(const Json& in, const Options& o) {
  const Complex C = io::to_complex(in);
  Json rows = Json::array();
  if (o.degree) {
    rows.push_back(table_row(*o.degree, homology(C, *o.degree)));
  } else {
    for (int d : C.degrees()) rows.push_back(table_row(d, homology(C, d)));
  }
  return Json{{"ring", io::from_ring(C.ring())}, {"homology", std::move(rows)}};
}

Json cmd_euler(const Json& in, const Options&) {
  return Json{{"euler", io::from_integer(euler_characteristic(io::to_complex(in)))}};
}

Json cmd_psi(const Json& in, const Options&) {
  const Complex C = io::to_complex(in);
  return Json{{"psi", io::from_integer(psi_class(C))}, {"period", C.period()}};
}

Json cmd_fold(const Json& in, const Options& o) { return io::from_complex(fold(io::to_complex(in), o.period)); }

Json cmd_cone(const Json& in, const Options&) { return io::from_complex(mapping_cone(io::to_chain_map(in))); }

Json cmd_ainf_check(const Json& in, const Options& o) {
  const AInfCategory C = io::to_category(in);
  validate_structure(C);
  const int k = arity_or(o, C.max_arity);
  Json out = report_json(check_ainf_relations(C, k), C, C);
  out["checked_to_arity"] = k;
  return out;
}

Json cmd_hcat(const Json& in, const Options&) {
  const AInfCategory C = io::to_category(in);
  validate_structure(C);
  const LinearCategory H = homotopy_category(C);
  Json homs = Json::array();
  for (const auto& [key, hom] : H.homs) {
    Json row{{"source", H.objects[static_cast<std::size_t>(key.first)]},
             {"target", H.objects[static_cast<std::size_t>(key.second)]}};
    merge(row, io::from_group(hom.group()));
    homs.push_back(std::move(row));
  }
  Json units = Json::array();
  for (const auto& u : H.units) units.push_back(io::from_vector(u));
  const auto violation = verify_linear_category(H);
  return Json{{"objects", H.objects},
              {"homs", std::move(homs)},
              {"units", std::move(units)},
              {"lawful", !violation.has_value()}};
}

Json cmd_functor_check(const Json& in, const Options& o) {
  const AInfFunctor F = io::to_functor(in);
  validate_structure(*F.source);
  validate_structure(*F.target);
  validate_functor_structure(F);
  const int k = arity_or(o, F.max_arity);
  const RelationReport r = check_functor_relations(F, k);
  Json out = report_json(r, *F.source, *F.target);
  out["checked_to_arity"] = k;
  if (r.ok) {
    out["quasi_fully_faithful"] = is_quasi_fully_faithful(F);
    out["quasi_equivalence"] = verdict(is_quasi_equivalence(F));
  }
  return out;
}

Json hochschild_table(const HochschildReport& R) {
  Json rows = Json::array();
  for (const auto& d : R.degrees) {
    Json row{{"degree", d.degree}, {"chains", R.truncation.complex.rank(d.degree)}, {"rank", d.group.free_rank},
             {"torsion", io::from_integers(d.group.torsion)}, {"certified", d.certified}};
    rows.push_back(std::move(row));
  }
  return rows;
}

int length_or(const Options& o, int fallback) { return o.length > 0 ? o.length : fallback; }

Json cmd_hochschild(const Json& in, const Options& o) {
  const AInfCategory A = io::to_category(in);
  const int L = length_or(o, 6);
  const HochschildReport R = hochschild_homology(A, L, !o.unnormalized);
  return Json{{"length", L},
              {"normalized", !o.unnormalized},
              {"grading", to_string(R.truncation.grading)},
              {"table", hochschild_table(R)}};
}

Json cmd_hochschild_class(const Json& in, const Options& o) {
  const AInfCategory A = io::to_category(in);
  const int L = length_or(o, 8);
  const HochschildClass h = hochschild_class(A, L, o.period);
  return Json{{"class", io::from_integer(h.value)},
              {"certified", true},
              {"period", h.period},
              {"length", L},
              {"window", Json::array({h.window_min, h.window_max})},
              {"inclusive_sum", io::from_integer(h.inclusive_sum)},
              {"table", hochschild_table(h.report)}};
}

Json k0_json(const K0Group& K) {
  Json classes = Json::object();
  for (const auto& g : K.generators) classes[g] = io::from_vector(K.class_of(g).coordinates);
  return Json{{"group", io::from_group(K.group)}, {"orders", io::from_integers(K.orders)}, {"classes", std::move(classes)}};
}

Json cmd_k0(const Json& in, const Options&) { return k0_json(grothendieck_group(io::to_presentation(in))); }

Json cmd_cofiber_check(const Json& in, const Options& o) {
  const AInfCategory A = io::to_category(in.at("A")), B = io::to_category(in.at("B")), C = io::to_category(in.at("C"));
  int L = 4;
  if (o.length > 0) {
    L = o.length;
  } else if (in.contains("length")) {
    if (!in["length"].is_number_integer()) throw SchemaError("'length' must be an integer");
    L = in["length"].get<int>();
  }
  const AdditivityReport r = verify_cofiber_additivity(A, B, C, L, o.period);
  Json out{{"ok", r.ok}, {"length", L},
           {"classes", io::from_integers({r.classes[0], r.classes[1], r.classes[2]})}};
  if (!r.ok) out["discrepancy"] = r.discrepancy;
  return out;
}

Json cmd_groth(const Json& in, const Options&) {
  const Span s = io::to_span(in);
  const GrothCategory G = grothendieck_construction(s.f, s.g);
  Json objects = Json::array();
  for (int x = 0; x < G.category->object_count(); ++x)
    objects.push_back(Json{{"name", G.category->objects[static_cast<std::size_t>(x)]},
                           {"origin", to_string(G.provenance[static_cast<std::size_t>(x)])}});
  Json adjacent = Json::array();
  for (const auto& a : G.adjacent)
    adjacent.push_back(Json{{"source", G.category->objects[static_cast<std::size_t>(a.source)]},
                            {"target", G.category->objects[static_cast<std::size_t>(a.target)]},
                            {"side", to_string(a.side)},
                            {"morphism", word_text(G, a.basis)}});
  return Json{{"objects", std::move(objects)},
              {"basis_size", G.category->size()},
              {"cross_elements", G.cross.size()},
              {"adjacent", std::move(adjacent)},
              {"provenance_respected", provenance_respected(G)},
              {"category", io::from_category(*G.category)}};
}

Json cmd_localize(const Json& in, const Options& o) {
  const Span s = io::to_span(in);
  const GrothCategory G = grothendieck_construction(s.f, s.g);
  const LocalizedHCategory L = localize_h(G, o.bound);
  Json homs = Json::array();
  for (const auto& [key, hom] : L.category.homs) {
    Json row{{"source", L.category.objects[static_cast<std::size_t>(key.first)]},
             {"target", L.category.objects[static_cast<std::size_t>(key.second)]},
             {"before", L.homotopy.hom(key.first, key.second).group().to_string()},
             {"after", hom.group().to_string()}};
    homs.push_back(std::move(row));
  }
  return Json{{"bound", L.bound},
              {"status", L.status()},
              {"complete", L.complete},
              {"composition_available", L.composition_available},
              {"inverted", L.inverted.size()},
              {"homs", std::move(homs)}};
}

Json comparisons(const std::vector<HomComparison>& cs) {
  Json out = Json::array();
  for (const auto& c : cs)
    out.push_back(Json{{"source", c.source}, {"target", c.target}, {"before", c.before.to_string()},
                       {"after", c.after.to_string()}, {"isomorphic", c.isomorphic}});
  return out;
}

Json cmd_pushout_check(const Json& in, const Options& o) {
  const Span s = io::to_span(in);
  const PushoutReport r = check_pushout_and_cofibration(s.f, s.g, o.bound);
  return Json{{"f_fully_faithful", r.f_fully_faithful},
              {"g_star_fully_faithful", r.g_star_fully_faithful},
              {"f_star_fully_faithful", r.f_star_fully_faithful},
              {"provenance", r.provenance},
              {"embeddings", Json::array({r.embeddings[0], r.embeddings[1], r.embeddings[2]})},
              {"localization_status", r.localization_status},
              {"square", comparisons(r.square)},
              {"quotient", comparisons(r.quotient)},
              {"cocones_checked", r.cocones_checked},
              {"pushout", verdict(r.pushout_certified)},
              {"detail", r.detail}};
}

Json cmd_simplex_cat(const Json& in, const Options& o) {
  const SimplicialSet X = io::to_simplicial_set(in);
  X.validate();
  const int bound = o.dim_bound >= 0 ? o.dim_bound : X.dim_bound;
  const SimplexCategory D = simplex_category(X, bound);
  return Json{{"dim_bound", bound},
              {"objects", D.category.objects},
              {"arrow_count", D.category.arrow_count()},
              {"isomorphisms", [&] {
                 int n = 0;
                 for (int f = 0; f < D.category.arrow_count(); ++f) n += D.category.is_isomorphism(f);
                 return n;
               }()}};
}

Json cmd_nerve(const Json& in, const Options& o) {
  const FiniteCategory C = in.is_object() && in.contains("builtin") ? io::to_toy(in).category : io::to_finite_category(in);
  C.validate();
  const int bound = o.dim_bound >= 0 ? o.dim_bound : 2;
  const SimplicialSet N = nerve(C, bound);
  Json counts = Json::array(), nondeg = Json::array();
  for (int n = 0; n <= bound; ++n) {
    counts.push_back(N.count(n));
    nondeg.push_back(nondegenerate(N, n).size());
  }
  Json out{{"dim_bound", bound}, {"counts", std::move(counts)}, {"nondegenerate", std::move(nondeg)}};
  if (bound >= 1) {
    std::size_t total = 0;
    for (int n = 0; n <= bound; ++n) total += static_cast<std::size_t>(N.count(n));
    if (total <= 64) out["simplices"] = N.simplices;
  }
  return out;
}

Json cmd_sconstruct(const Json& in, const Options& o) {
  const WaldhausenToy W = io::to_toy(in);
  const SConstruction S = s_construction(W, o.depth);
  const auto& obj = W.category.objects;
  Json seq = Json::array();
  const auto& arrows = W.category.arrows;
  for (const auto& q : S.s2)
    seq.push_back(Json{{"a", obj[static_cast<std::size_t>(q.a)]},
                       {"b", obj[static_cast<std::size_t>(q.b)]},
                       {"c", obj[static_cast<std::size_t>(q.c)]},
                       {"cofibration", arrows[static_cast<std::size_t>(q.cofibration)].label},
                       {"quotient", arrows[static_cast<std::size_t>(q.quotient)].label}});
  return Json{{"name", W.name},
              {"depth", S.depth},
              {"s0", S.s0.size()},
              {"s1", S.s1.size()},
              {"s2", S.s2.size()},
              {"sequences", std::move(seq)}};
}

Json cmd_k0_s(const Json& in, const Options& o) {
  const WaldhausenToy W = io::to_toy(in);
  Json out = k0_json(k0_from_s_construction(W, !o.no_weq));
  out["weak_equivalence_relations"] = !o.no_weq;
  return out;
}

Json cmd_concordance_check(const Json& in, const Options& o) {
  if (!in.is_object()) throw SchemaError("expected a concordance document");
  const SimplicialSet Y = io::to_simplicial_set(in.at("Y"));
  Y.validate();
  const FiniteCategory T = io::to_finite_category(in.at("target"));
  T.validate();
  int bound = Y.dim_bound;
  if (o.dim_bound >= 0) {
    bound = o.dim_bound;
  } else if (in.contains("dim_bound")) {
    if (!in["dim_bound"].is_number_integer()) throw SchemaError("'dim_bound' must be an integer");
    bound = in["dim_bound"].get<int>();
  }
  if (bound < 0 || bound > Y.dim_bound) throw SchemaError("'dim_bound' must lie in [0, " + std::to_string(Y.dim_bound) + "]");
  const FiniteCategory DY = simplex_category(Y, bound).category;
  const SimplexFunctor F0 = io::to_simplex_functor(in.at("F0"), DY, T);
  const SimplexFunctor F1 = io::to_simplex_functor(in.at("F1"), DY, T);
  std::optional<SimplexFunctor> Ft;
  if (in.contains("concordance") && !in["concordance"].is_null()) {
    const Json& c = in["concordance"];
    if (c.is_string()) {
      if (c != "constant") throw SchemaError("'concordance' must be a functor or \"constant\"");
      Ft = constant_concordance(Y, F0, bound);
    } else {
      const SimplicialSet cyl = product(Y, standard_simplex(1, Y.dim_bound));
      Ft = io::to_simplex_functor(c, simplex_category(cyl, bound).category, T);
    }
  }
  const ConcordanceReport r = concordance_check(Y, T, F0, F1, Ft, bound);
  Json out{{"pass", r.pass}};
  if (!r.pass) out["witness"] = r.witness;
  return out;
}

Json cmd_list_presets(const Json&, const Options&) {
  Json list = Json::array();
  for (const auto& p : preset_catalog()) {
    Json params = Json::object();
    for (const auto& [k, v] : p.defaults) params[k] = v;
    list.push_back(Json{{"name", p.name}, {"kind", p.kind}, {"description", p.description}, {"parameters", params}});
  }
  return Json{{"presets", std::move(list)}};
}

void no_options(CLI::App&, Options&) {}

const std::vector<Command>& commands() {
  static const std::vector<Command> table = {
      {"snf", "Smith normal form of an integer matrix", {"matrix"}, no_options, cmd_snf},
      {"group", "abelian group from generators and relation rows", {"relations"}, no_options, cmd_group},
      {"homology", "homology groups of a complex", {"complex"},
       [](CLI::App& a, Options& o) { a.add_option("--degree", o.degree, "single degree"); }, cmd_homology},
      {"euler", "Euler characteristic of a bounded complex", {"complex"}, no_options, cmd_euler},
      {"psi", "alternating free rank over one period", {"complex"}, no_options, cmd_psi},
      {"fold", "fold into a periodic complex", {"complex"},
       [](CLI::App& a, Options& o) { a.add_option("--period", o.period, "target period")->capture_default_str(); }, cmd_fold},
      {"cone", "mapping cone of a chain map", {"chain-map"}, no_options, cmd_cone},
      {"ainf-check", "A-infinity relations up to an arity", {"algebra", "category"},
       [](CLI::App& a, Options& o) { a.add_option("--arity", o.arity, "highest arity (default: max_arity)"); }, cmd_ainf_check},
      {"hcat", "homotopy category", {"algebra", "category"}, no_options, cmd_hcat},
      {"functor-check", "functor relations and homotopy properties", {"functor"},
       [](CLI::App& a, Options& o) { a.add_option("--arity", o.arity, "highest arity (default: max_arity)"); }, cmd_functor_check},
      {"hochschild", "truncated Hochschild homology with stabilization flags", {"algebra"},
       [](CLI::App& a, Options& o) {
         a.add_option("--length", o.length, "tensor length bound (default 6)");
         a.add_flag("--unnormalized", o.unnormalized, "allow units among the bar letters");
       },
       cmd_hochschild},
      {"hochschild-class", "periodic class of the Hochschild complex", {"algebra"},
       [](CLI::App& a, Options& o) {
         a.add_option("--length", o.length, "tensor length bound (default 8)");
         a.add_option("--period", o.period, "even period")->capture_default_str();
       },
       cmd_hochschild_class},
      {"k0", "Grothendieck group of a presentation", {"presentation"}, no_options, cmd_k0},
      {"cofiber-check", "additivity of Hochschild classes over A -> B -> C", {"cofiber-triple"},
       [](CLI::App& a, Options& o) {
         a.add_option("--length", o.length, "tensor length bound");
         a.add_option("--period", o.period, "even period")->capture_default_str();
       },
       cmd_cofiber_check},
      {"groth", "Grothendieck construction of a span", {"span"}, no_options, cmd_groth},
      {"localize", "homotopy category of the construction with adjacent morphisms inverted", {"span"},
       [](CLI::App& a, Options& o) { a.add_option("--bound", o.bound, "fraction word length bound")->capture_default_str(); },
       cmd_localize},
      {"pushout-check", "pushout and cofibration checks for a span", {"span"},
       [](CLI::App& a, Options& o) { a.add_option("--bound", o.bound, "fraction word length bound")->capture_default_str(); },
       cmd_pushout_check},
      {"simplex-cat", "category of simplices", {"simplicial-set"},
       [](CLI::App& a, Options& o) { a.add_option("--dim-bound", o.dim_bound, "dimension bound"); }, cmd_simplex_cat},
      {"nerve", "nerve of a finite category", {"finite-category", "toy"},
       [](CLI::App& a, Options& o) { a.add_option("--dim-bound", o.dim_bound, "dimension bound (default 2)"); }, cmd_nerve},
      {"sconstruct", "low levels of the S-construction", {"toy"},
       [](CLI::App& a, Options& o) { a.add_option("--depth", o.depth, "depth")->capture_default_str(); }, cmd_sconstruct},
      {"k0-s", "K0 from the S-construction", {"toy"},
       [](CLI::App& a, Options& o) { a.add_flag("--no-weq", o.no_weq, "omit weak-equivalence relations"); }, cmd_k0_s},
      {"concordance-check", "concordance of functors out of a simplex category", {"concordance"},
       [](CLI::App& a, Options& o) { a.add_option("--dim-bound", o.dim_bound, "dimension bound"); }, cmd_concordance_check},
      {"list-presets", "catalog of shipped inputs", {}, no_options, cmd_list_presets},
  };
  return table;
}

Json error_doc(const std::string& kind, const std::string& message) {
  return Json{{"error", Json{{"kind", kind}, {"message", message}}}};
}

std::string emit(const Json& doc, const std::string& format) {
  return format == "text" ? render_text(doc) : doc.dump(2) + "\n";
}

// --- text rendering -------------------------------------------------------------

std::string scalar(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "-";
  return v.dump();
}

bool flat(const Json& v) {
  if (!v.is_structured()) return true;
  if (!v.is_array()) return false;
  return std::all_of(v.begin(), v.end(), [](const Json& x) { return !x.is_structured(); });
}

std::string cell(const Json& v) {
  if (!v.is_array()) return scalar(v);
  if (v.empty()) return "-";
  std::string s;
  for (const auto& x : v) s += (s.empty() ? "" : " ") + scalar(x);
  return s;
}

bool tabular(const Json& v) {
  if (!v.is_array() || v.empty()) return false;
  for (const auto& row : v) {
    if (!row.is_object()) return false;
    for (const auto& [k, x] : row.items())
      if (!flat(x)) return false;
  }
  return true;
}

void render(const Json& v, const std::string& pad, std::ostringstream& os);

void render_table(const Json& rows, const std::string& pad, std::ostringstream& os) {
  std::vector<std::string> columns;
  for (const auto& row : rows)
    for (const auto& [k, x] : row.items())
      if (std::find(columns.begin(), columns.end(), k) == columns.end()) columns.push_back(k);
  std::vector<std::vector<std::string>> cells;
  cells.push_back(columns);
  for (const auto& row : rows) {
    std::vector<std::string> line;
    for (const auto& c : columns) line.push_back(row.contains(c) ? cell(row[c]) : "");
    cells.push_back(std::move(line));
  }
  std::vector<std::size_t> width(columns.size(), 0);
  for (const auto& line : cells)
    for (std::size_t i = 0; i < line.size(); ++i) width[i] = std::max(width[i], line[i].size());
  for (const auto& line : cells) {
    std::string s = pad;
    for (std::size_t i = 0; i < line.size(); ++i) {
      s += line[i];
      if (i + 1 < line.size()) s += std::string(width[i] - line[i].size() + 2, ' ');
    }
    while (!s.empty() && s.back() == ' ') s.pop_back();
    os << s << "\n";
  }
}

void render_entry(const std::string& key, const Json& x, const std::string& pad, std::ostringstream& os) {
  if (flat(x) || x.empty()) {
    const std::string c = x.is_structured() && x.empty() ? "-" : cell(x);
    os << pad << key << ":" << (c.empty() ? "" : " " + c) << "\n";
  } else if (tabular(x)) {
    os << pad << key << ":\n";
    render_table(x, pad + "  ", os);
  } else {
    os << pad << key << ":\n";
    render(x, pad + "  ", os);
  }
}

void render(const Json& v, const std::string& pad, std::ostringstream& os) {
  if (v.is_object()) {
    for (const auto& [k, x] : v.items()) render_entry(k, x, pad, os);
  } else if (v.is_array()) {
    for (const auto& x : v) {
      if (flat(x)) {
        os << pad << cell(x) << "\n";
      } else {
        os << pad << "-\n";
        render(x, pad + "  ", os);
      }
    }
  } else {
    os << pad << scalar(v) << "\n";
  }
}

}  // namespace

std::string render_text(const Json& doc) {
  std::ostringstream os;
  if (doc.is_object() && doc.size() == 1 && doc.contains("error")) {
    const Json& e = doc["error"];
    os << "error (" << scalar(e.value("kind", Json())) << "): " << scalar(e.value("message", Json())) << "\n";
    return os.str();
  }
  render(doc, "", os);
  return os.str();
}

const std::vector<std::string>& subcommands() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& c : commands()) out.push_back(c.name);
    return out;
  }();
  return names;
}

Outcome run(const std::vector<std::string>& args, std::istream& input) {
  CLI::App app{"kzero: exact computations around K_0 of stable categories", "kzero"};
  app.require_subcommand(1);
  Options o;
  std::map<CLI::App*, const Command*> dispatch;
  for (const auto& cmd : commands()) {
    CLI::App* sub = app.add_subcommand(cmd.name, cmd.help);
    if (!cmd.kinds.empty()) {
      sub->add_option("input", o.file, "input document path, or - for stdin");
      sub->add_option("--json", o.inline_json, "inline input document");
      sub->add_option("--preset", o.preset, "named input document (see list-presets)");
      sub->add_option("--param", o.params, "preset parameter key=value");
    }
    sub->add_option("--format", o.format, "output format")->check(CLI::IsMember({"json", "text"}))->capture_default_str();
    cmd.options(*sub, o);
    dispatch[sub] = &cmd;
  }
  if (!args.empty() && !args.front().starts_with("-") &&
      std::find(subcommands().begin(), subcommands().end(), args.front()) == subcommands().end())
    return {2, emit(error_doc("schema", "unknown subcommand '" + args.front() + "'"), "json")};
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    std::ostringstream out, err;
    app.exit(CLI::CallForHelp(), out, err);
    for (auto* sub : app.get_subcommands()) return {0, sub->help()};
    return {0, out.str()};
  } catch (const CLI::ParseError& e) {
    return {2, emit(error_doc("schema", e.what()), o.format == "text" ? "text" : "json")};
  }
  const Command* cmd = dispatch.at(app.get_subcommands().front());
  try {
    const Json in = load_input(*cmd, o, input);
    return {0, emit(cmd->run(in, o), o.format)};
  } catch (const SchemaError& e) {
    return {2, emit(error_doc("schema", e.what()), o.format)};
  } catch (const Json::exception& e) {
    return {2, emit(error_doc("schema", e.what()), o.format)};
  } catch (const DomainError& e) {
    return {1, emit(error_doc(e.kind(), e.what()), o.format)};
  } catch (const std::exception& e) {
    return {1, emit(error_doc("internal", e.what()), o.format)};
  }
}

}  // namespace kzero::cli
