#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "kzero/error.hpp"
#include "kzero/simplicial.hpp"

#include <random>

using namespace kzero;

namespace {

// Category of a preorder on 0..n−1 given by leq (reflexive, transitive).
FiniteCategory preorder(int n, const std::function<bool(int, int)>& leq) {
  FiniteCategory C;
  std::map<std::pair<int, int>, int> arrow;
  for (int x = 0; x < n; ++x) C.objects.push_back("x" + std::to_string(x));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (leq(x, y)) {
        arrow[{x, y}] = C.arrow_count();
        C.arrows.push_back({std::to_string(x) + "<" + std::to_string(y), x, y});
      }
  for (int x = 0; x < n; ++x) C.identities.push_back(arrow.at({x, x}));
  const auto m = static_cast<std::size_t>(C.arrow_count());
  C.composition.assign(m, std::vector<int>(m, -1));
  for (std::size_t g = 0; g < m; ++g)
    for (std::size_t h = 0; h < m; ++h)
      if (C.arrows[h].target == C.arrows[g].source) C.composition[g][h] = arrow.at({C.arrows[h].source, C.arrows[g].target});
  return C;
}

// One object with endomorphisms ℤ/k under addition.
FiniteCategory cyclic_monoid(int k) {
  FiniteCategory C;
  C.objects = {"*"};
  for (int i = 0; i < k; ++i) C.arrows.push_back({"g" + std::to_string(i), 0, 0});
  C.identities = {0};
  C.composition.assign(static_cast<std::size_t>(k), std::vector<int>(static_cast<std::size_t>(k)));
  for (int g = 0; g < k; ++g)
    for (int h = 0; h < k; ++h) C.composition[static_cast<std::size_t>(g)][static_cast<std::size_t>(h)] = (g + h) % k;
  return C;
}

// Number of composable n-chains: the entries of M^n summed, M the arrow-count matrix.
long path_count(const FiniteCategory& C, int n) {
  const int k = C.object_count();
  if (n == 0) return k;
  std::vector<std::vector<long>> M(static_cast<std::size_t>(k), std::vector<long>(static_cast<std::size_t>(k), 0));
  for (const auto& a : C.arrows) ++M[static_cast<std::size_t>(a.source)][static_cast<std::size_t>(a.target)];
  std::vector<std::vector<long>> P = M;
  for (int step = 1; step < n; ++step) {
    std::vector<std::vector<long>> Q(static_cast<std::size_t>(k), std::vector<long>(static_cast<std::size_t>(k), 0));
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j)
        for (int t = 0; t < k; ++t) Q[i][j] += P[i][t] * M[t][j];
    P = Q;
  }
  long total = 0;
  for (const auto& row : P)
    for (long v : row) total += v;
  return total;
}

// All maps [n] → [d] filtered for monotonicity.
std::vector<std::string> brute_monotone_labels(int n, int d) {
  std::vector<std::string> out;
  std::vector<int> m(static_cast<std::size_t>(n + 1), 0);
  while (true) {
    if (std::is_sorted(m.begin(), m.end())) {
      std::string s;
      for (int v : m) s += std::to_string(v);
      out.push_back(s);
    }
    int i = n;
    while (i >= 0 && m[static_cast<std::size_t>(i)] == d) m[static_cast<std::size_t>(i--)] = 0;
    if (i < 0) break;
    ++m[static_cast<std::size_t>(i)];
  }
  std::sort(out.begin(), out.end());
  return out;
}

long injections(int k, int l) {
  long c = 1;
  for (int i = 0; i < k; ++i) c *= (1L << l) - (1L << i);
  return c;
}

}  // namespace

TEST_CASE("standard simplices") {
  const SimplicialSet D0 = standard_simplex(0, 4);
  for (int n = 0; n <= 4; ++n) CHECK(D0.count(n) == 1);
  const SimplicialSet D1 = standard_simplex(1, 1);
  CHECK(D1.simplices[1] == std::vector<std::string>{"00", "01", "11"});
  for (int d = 0; d <= 3; ++d)
    for (int n = 0; n <= 3; ++n) {
      auto labels = standard_simplex(d, n).simplices[static_cast<std::size_t>(n)];
      std::sort(labels.begin(), labels.end());
      CHECK(labels == brute_monotone_labels(n, d));
    }
  CHECK(!standard_simplex(3, 4).identity_violation());
  CHECK_THROWS_AS(standard_simplex(-1, 2), InputError);
}

TEST_CASE("operators on Δ^m are precomposition") {
  for (int m = 0; m <= 3; ++m) {
    const SimplicialSet X = standard_simplex(m, 3);
    for (int e = 0; e <= 3; ++e)
      for (int y = 0; y < X.count(e); ++y)
        for (int d = 0; d <= 3; ++d)
          for (const MonotoneMap& theta : monotone_maps(d, e)) {
            const std::string& yl = X.simplices[static_cast<std::size_t>(e)][static_cast<std::size_t>(y)];
            std::string expected;
            for (int v : theta) expected += yl[static_cast<std::size_t>(v)];
            CHECK(X.simplices[static_cast<std::size_t>(d)][static_cast<std::size_t>(X.act(theta, e, y))] == expected);
          }
  }
}

TEST_CASE("validation catches broken identities") {
  SimplicialSet X = standard_simplex(1, 2);
  CHECK_NOTHROW(X.validate());
  std::swap(X.faces[2][0][1], X.faces[2][0][2]);
  CHECK(X.identity_violation());
  CHECK_THROWS_AS(X.validate(), ValidationError);
  SimplicialSet Y = standard_simplex(1, 2);
  Y.degeneracies[0][0].pop_back();
  CHECK_THROWS_AS(Y.validate(), ValidationError);
}

TEST_CASE("simplex categories") {
  const SimplexCategory S = simplex_category(standard_simplex(0, 3), 1);
  CHECK(S.category.object_count() == 2);
  // id, two vertices of the degenerate edge, its collapse, and three self-maps.
  CHECK(S.category.arrow_count() == 7);
  CHECK(!S.category.violation());
  CHECK(simplex_category(empty_simplicial_set(2), 2).category.object_count() == 0);
  int previous = 0;
  for (int b = 0; b <= 3; ++b) {
    const int count = simplex_category(standard_simplex(1, 3), b).category.object_count();
    CHECK(count >= previous);
    previous = count;
  }
  // Arrow counts against Δ^m: θ with y ∘ θ = x, counted by brute force.
  for (int m = 0; m <= 2; ++m) {
    const SimplicialSet X = standard_simplex(m, 2);
    const SimplexCategory D = simplex_category(X, 2);
    long expected = 0;
    for (int d = 0; d <= 2; ++d)
      for (int e = 0; e <= 2; ++e)
        for (const auto& x : X.simplices[static_cast<std::size_t>(d)])
          for (const auto& y : X.simplices[static_cast<std::size_t>(e)])
            for (const MonotoneMap& theta : monotone_maps(d, e)) {
              std::string pulled;
              for (int v : theta) pulled += y[static_cast<std::size_t>(v)];
              expected += pulled == x;
            }
    CHECK(D.category.arrow_count() == expected);
  }
}

TEST_CASE("nerves") {
  const FiniteCategory point = preorder(1, [](int, int) { return true; });
  const SimplicialSet Np = nerve(point, 3);
  for (int n = 0; n <= 3; ++n) CHECK(Np.count(n) == 1);
  const FiniteCategory arrow = preorder(2, [](int x, int y) { return x <= y; });
  const SimplicialSet Na = nerve(arrow, 2);
  CHECK(nondegenerate(Na, 1).size() == 1);
  CHECK(nondegenerate(Na, 2).empty());
  CHECK(!Na.identity_violation());

  std::mt19937 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 5);
    // Random order-compatible relation, closed transitively.
    std::vector<std::vector<bool>> r(static_cast<std::size_t>(n), std::vector<bool>(static_cast<std::size_t>(n), false));
    for (int x = 0; x < n; ++x) r[x][x] = true;
    for (int x = 0; x < n; ++x)
      for (int y = x + 1; y < n; ++y) r[x][y] = rng() % 2;
    for (int t = 0; t < n; ++t)
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
          if (r[x][t] && r[t][y]) r[x][y] = true;
    const FiniteCategory C = preorder(n, [&](int x, int y) { return r[x][y]; });
    const SimplicialSet N = nerve(C, 3);
    CHECK(!N.identity_violation());
    for (int d = 0; d <= 3; ++d) CHECK(N.count(d) == path_count(C, d));
  }
  for (int k = 1; k <= 4; ++k) {
    const FiniteCategory C = cyclic_monoid(k);
    const SimplicialSet N = nerve(C, 3);
    CHECK(!N.identity_violation());
    for (int d = 0; d <= 3; ++d) CHECK(N.count(d) == path_count(C, d));
  }
}

TEST_CASE("S-construction of 𝔽_2 free modules") {
  const WaldhausenToy W = f2_free_modules(2);
  CHECK(!W.axiom_violation());
  const SConstruction S = s_construction(W);
  CHECK(S.s0.size() == 1);
  CHECK(S.s1.size() == 3);
  long expected = 0;
  for (int k = 0; k <= 2; ++k)
    for (int l = k; l <= 2; ++l) expected += injections(k, l);
  CHECK(static_cast<long>(S.s2.size()) == expected);
  for (const auto& s : S.s2) CHECK(s.b == s.a + s.c);

  const SConstruction Z = s_construction(zero_toy());
  CHECK(Z.s0.size() == 1);
  CHECK(Z.s1.size() == 1);
  CHECK(Z.s2.size() == 1);
  CHECK_THROWS_AS(s_construction(W, 3), InputError);
}

TEST_CASE("K_0 from the S-construction") {
  const WaldhausenToy W = f2_free_modules(3);
  const K0Group K = k0_from_s_construction(W);
  CHECK(K.group == FinAbGroup{1, {}});
  const K0Group R = grothendieck_group(standard_presentation(3));
  CHECK(R.group == K.group);
  const K0Class one = K.class_of("F2^1");
  CHECK(abs(one.coordinates(0)) == 1);
  for (int k = 0; k <= 3; ++k) {
    CHECK(K.class_of("F2^" + std::to_string(k)) == K.scale(one, k));
    // Same coordinate, up to the orientation of the generator.
    const Integer sign = one.coordinates(0) * R.class_of("r1").coordinates(0);
    CHECK(K.class_of("F2^" + std::to_string(k)).coordinates(0) == sign * R.class_of("r" + std::to_string(k)).coordinates(0));
  }
  const K0Group Kw = k0_from_s_construction(W, false);
  CHECK(Kw.group == K.group);
  for (int k = 0; k <= 3; ++k)
    CHECK(Kw.class_of("F2^" + std::to_string(k)) == K.class_of("F2^" + std::to_string(k)));
  CHECK(k0_from_s_construction(zero_toy()).group.is_zero());
}

TEST_CASE("invalid toys are refused") {
  WaldhausenToy W = f2_free_modules(1);
  W.weak_equivalence[static_cast<std::size_t>(W.category.identities[1])] = false;
  CHECK(W.axiom_violation());
  CHECK_THROWS_AS(s_construction(W), ValidationError);

  WaldhausenToy V = f2_free_modules(1);
  V.quotients.erase(V.quotients.begin());
  CHECK_THROWS_AS(s_construction(V), ValidationError);

  WaldhausenToy U = f2_free_modules(2);
  U.zero = 1;
  CHECK(U.axiom_violation());
}

TEST_CASE("concordance") {
  const SimplicialSet Y = standard_simplex(0, 1);
  const SimplexCategory DY = simplex_category(Y, 1);
  const FiniteCategory T = preorder(2, [](int x, int y) { return x <= y; });
  auto constant = [&](int o) {
    SimplexFunctor F;
    F.objects.assign(static_cast<std::size_t>(DY.category.object_count()), o);
    F.arrows.assign(static_cast<std::size_t>(DY.category.arrow_count()), T.identities[static_cast<std::size_t>(o)]);
    return F;
  };
  const SimplexFunctor F0 = constant(0), F1 = constant(1);
  CHECK(concordance_check(Y, T, F0, F0, constant_concordance(Y, F0, 1), 1).pass);

  // Constant at one end only: the witness names an end simplex.
  const ConcordanceReport bad = concordance_check(Y, T, F0, F1, constant_concordance(Y, F0, 1), 1);
  CHECK(!bad.pass);
  CHECK(bad.witness.find("F1 differs at simplex") == 0);
  CHECK(bad.witness == "F1 differs at simplex 0:(0,1)");

  const ConcordanceReport none = concordance_check(Y, T, F0, F1, std::nullopt, 1);
  CHECK(!none.pass);
  CHECK(none.witness == "no concordance supplied");

  // Simplices of Y × Δ^1 touching the end 1 go to 1, the rest to 0.
  const SimplicialSet I = standard_simplex(1, 1);
  const SimplexCategory DYI = simplex_category(product(Y, I), 1);
  SimplexFunctor Ft;
  for (const auto& [n, yi] : DYI.simplices) {
    const std::string& il = I.simplices[static_cast<std::size_t>(n)][static_cast<std::size_t>(yi % I.count(n))];
    Ft.objects.push_back(il.find('1') != std::string::npos ? 1 : 0);
  }
  for (const auto& a : DYI.category.arrows)
    Ft.arrows.push_back(T.arrows_between(Ft.objects[static_cast<std::size_t>(a.source)], Ft.objects[static_cast<std::size_t>(a.target)])[0]);
  CHECK(!functor_violation(DYI.category, T, Ft));
  CHECK(concordance_check(Y, T, F0, F1, Ft, 1).pass);

  // Editing one end simplex breaks functoriality first.
  SimplexFunctor edited = Ft;
  edited.objects[0] = 1 - edited.objects[0];
  CHECK(!concordance_check(Y, T, F0, F1, edited, 1).pass);

  SimplexFunctor wrong = F0;
  wrong.objects.pop_back();
  CHECK_THROWS_AS(concordance_check(Y, T, wrong, F1, Ft, 1), InputError);
}
