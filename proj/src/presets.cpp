#include "kzero/presets.hpp"

#include "kzero/error.hpp"

#include <algorithm>

namespace kzero {

namespace {

using CategoryPtr = std::shared_ptr<const AInfCategory>;

CategoryPtr share(AInfCategory C) { return std::make_shared<const AInfCategory>(std::move(C)); }

AInfCategory indiscrete(int n) {
  AInfCategory C;
  for (int x = 0; x < n; ++x) C.objects.push_back("o" + std::to_string(x));
  auto label = [](int x, int y) { return "e" + std::to_string(x) + std::to_string(y); };
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) C.basis.push_back({label(x, y), x, y, 0});
  for (int x = 0; x < n; ++x) C.units.push_back(x * n + x);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z) set_mu(C, {label(y, z), label(x, y)}, {{1, label(x, z)}});
  return C;
}

AInfFunctor strict(CategoryPtr S, CategoryPtr T, std::vector<int> objects, const std::vector<int>& basis) {
  AInfFunctor F;
  F.source = std::move(S);
  F.target = std::move(T);
  F.object_map = std::move(objects);
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (basis[i] >= 0) F.components[1][{static_cast<int>(i)}] = {{basis[i], 1}};
  return F;
}

AInfFunctor to_zero(CategoryPtr S) {
  auto Z = share(zero_category(S->ring));
  return strict(S, Z, std::vector<int>(static_cast<std::size_t>(S->object_count()), 0),
                std::vector<int>(static_cast<std::size_t>(S->size()), -1));
}

io::Json complex_doc(const Complex& C) { return io::from_complex(C); }

io::Json arrow_category() {
  FiniteCategory C;
  C.objects = {"0", "1"};
  C.arrows = {{"id0", 0, 0}, {"id1", 1, 1}, {"f", 0, 1}};
  C.identities = {0, 1};
  C.composition = {{0, -1, 2}, {-1, 1, -1}, {-1, 2, -1}};
  return io::from_finite_category(C);
}

using Builder = io::Json (*)(const std::map<std::string, long long>&);

struct Entry {
  PresetInfo info;
  Builder build;
};

long long param(const std::map<std::string, long long>& p, const char* key) { return p.at(key); }

const std::vector<Entry>& entries() {
  static const std::vector<Entry> table = [] {
    std::vector<Entry> t = {
        {{"arrow-category", "finite-category", "two objects and one arrow 0 -> 1", {}},
         [](const auto&) { return arrow_category(); }},
        {{"bounded-example", "complex", "Z -> Z^2 -> Z in degrees 2, 1, 0 with homology Z/2 in degree 1", {}},
         [](const auto&) {
           IntMatrix d2(2, 1), d1(1, 2);
           d2 << 2, -2;
           d1 << 1, 1;
           return complex_doc(Complex::bounded(GroundRing::integers(), 0, 2, {{0, 1}, {1, 2}, {2, 1}}, {{1, d1}, {2, d2}}));
         }},
        {{"cofiber-span", "span", "Z <- Z -> 0: the cofiber of the identity", {}},
         [](const auto&) {
           const auto Z = share(ground_algebra());
           return io::from_span({identity_functor(Z), to_zero(Z)});
         }},
        {{"cofiber-triple", "cofiber-triple", "Z -> Z x Z -> Z, a split cofiber sequence of algebras", {{"length", 4}}},
         [](const auto& p) {
           const AInfCategory Z = ground_algebra();
           return io::Json{{"A", io::from_category(Z)},
                           {"B", io::from_category(product_algebra(Z, Z))},
                           {"C", io::from_category(Z)},
                           {"length", param(p, "length")}};
         }},
        {{"constant-concordance", "concordance", "constant functor on the simplices of an edge, with its constant concordance", {}},
         [](const auto&) {
           return io::Json{{"Y", io::Json{{"standard", 1}, {"dim_bound", 1}}},
                           {"target", arrow_category()},
                           {"dim_bound", 1},
                           {"F0", io::Json{{"constant", "1"}}},
                           {"F1", io::Json{{"constant", "1"}}},
                           {"concordance", "constant"}};
         }},
        {{"dual-numbers", "algebra", "Z[e]/e^2 with |e| = 0", {}},
         [](const auto&) { return io::from_category(dual_numbers_algebra()); }},
        {{"equator", "algebra", "Z[x]/(x^2 - w) with |x| odd, Z/2-graded; p > 0 works over F_p", {{"p", 0}, {"w", 1}}},
         [](const auto& p) {
           const long long prime = param(p, "p");
           const GroundRing R = prime == 0 ? GroundRing::integers() : GroundRing::prime_field(Integer(prime));
           return io::from_category(equator_algebra(static_cast<long>(param(p, "w")), R));
         }},
        {{"equator-identity", "functor", "identity functor of the equator algebra", {}},
         [](const auto&) { return io::from_functor(identity_functor(share(equator_algebra()))); }},
        {{"f2-free-modules", "toy", "F_2^k for k <= max_rank with all linear maps", {{"max_rank", 3}}},
         [](const auto& p) { return io::Json{{"builtin", "f2-free-modules"}, {"max_rank", param(p, "max_rank")}}; }},
        {{"ground", "algebra", "the ground ring Z in degree 0", {}},
         [](const auto&) { return io::from_category(ground_algebra()); }},
        {{"identity-span", "span", "Z <- Z -> Z with identity functors", {}},
         [](const auto&) {
           const auto Z = share(ground_algebra());
           return io::from_span({identity_functor(Z), identity_functor(Z)});
         }},
        {{"indiscrete-span", "span", "two isomorphic objects, glued to a point along one side", {}},
         [](const auto&) {
           const auto I = share(indiscrete(2));
           const auto pt = share(ground_algebra());
           return io::from_span({identity_functor(I), strict(I, pt, {0, 0}, {0, 0, 0, 0})});
         }},
        {{"odd-period", "complex", "a 3-periodic complex with one generator in each degree", {}},
         [](const auto&) { return complex_doc(Complex::periodic(GroundRing::integers(), 3, {{0, 1}, {1, 1}, {2, 1}})); }},
        {{"product", "algebra", "Z x Z presented on {1, e}", {}},
         [](const auto&) { return io::from_category(product_algebra(ground_algebra(), ground_algebra())); }},
        {{"snf-example", "matrix", "the matrix [[2, 4], [6, 8]]", {}},
         [](const auto&) {
           IntMatrix A(2, 2);
           A << 2, 4, 6, 8;
           return io::Json{{"matrix", io::from_matrix(A)}};
         }},
        {{"standard-k0", "presentation", "free modules r0 ... r{max_rank} with r_{a+b} = r_a + r_b", {{"max_rank", 3}}},
         [](const auto& p) {
           const long long r = param(p, "max_rank");
           if (r < 0 || r > 64) throw SchemaError("'max_rank' out of range");
           return io::from_presentation(standard_presentation(static_cast<int>(r)));
         }},
        {{"standard-simplex", "simplicial-set", "the standard simplex of dimension d", {{"d", 1}, {"dim_bound", 2}}},
         [](const auto& p) { return io::Json{{"standard", param(p, "d")}, {"dim_bound", param(p, "dim_bound")}}; }},
        {{"times-two", "chain-map", "multiplication by 2 on the 2-periodic complex Z -> Z with zero maps", {}},
         [](const auto&) {
           const Complex C = Complex::periodic(GroundRing::integers(), 2, {{0, 1}, {1, 1}});
           IntMatrix two(1, 1);
           two << 2;
           return io::Json{{"source", complex_doc(C)}, {"target", complex_doc(C)},
                           {"components", io::Json{{"0", io::from_matrix(two)}, {"1", io::from_matrix(two)}}}};
         }},
        {{"two-periodic", "complex", "Z --2--> Z, 2-periodic, homology Z/2 in even degrees", {}},
         [](const auto&) {
           IntMatrix two(1, 1);
           two << 2;
           return complex_doc(Complex::periodic(GroundRing::integers(), 2, {{0, 1}, {1, 1}}, {{1, two}}));
         }},
        {{"zero-toy", "toy", "the category with a single zero object", {}},
         [](const auto&) { return io::Json{{"builtin", "zero"}}; }},
    };
    std::sort(t.begin(), t.end(), [](const Entry& a, const Entry& b) { return a.info.name < b.info.name; });
    return t;
  }();
  return table;
}

const Entry& entry(const std::string& name) {
  for (const auto& e : entries())
    if (e.info.name == name) return e;
  throw SchemaError("unknown preset '" + name + "'");
}

}  // namespace

AInfCategory equator_algebra(long w, GroundRing ring) {
  AInfCategory A = ground_algebra(ring, 2);
  A.basis.push_back({"x", 0, 0, 1});
  set_mu(A, {"x", "x"}, {{w, "1"}});
  return A;
}

AInfCategory dual_numbers_algebra() {
  AInfCategory A = ground_algebra(GroundRing::integers(), 0);
  A.basis.push_back({"e", 0, 0, 0});
  return A;
}

const std::vector<PresetInfo>& preset_catalog() {
  static const std::vector<PresetInfo> catalog = [] {
    std::vector<PresetInfo> out;
    for (const auto& e : entries()) out.push_back(e.info);
    return out;
  }();
  return catalog;
}

const PresetInfo& preset_info(const std::string& name) { return entry(name).info; }

io::Json preset_document(const std::string& name, const std::map<std::string, long long>& params) {
  const Entry& e = entry(name);
  std::map<std::string, long long> values = e.info.defaults;
  for (const auto& [k, v] : params) {
    if (!values.count(k)) throw SchemaError("preset '" + name + "' has no parameter '" + k + "'");
    values[k] = v;
  }
  return e.build(values);
}

}  // namespace kzero
