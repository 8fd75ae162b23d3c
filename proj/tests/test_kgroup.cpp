#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "kzero/error.hpp"
#include "kzero/kgroup.hpp"

#include <algorithm>
#include <random>

using namespace kzero;

namespace {

AInfCategory ground() { return ground_algebra(GroundRing::integers(), 0); }

AInfCategory clifford() {
  AInfCategory A = ground_algebra(GroundRing::integers(), 2);
  A.basis.push_back({"x", 0, 0, 1});
  set_mu(A, {"x", "x"}, {{1, "1"}});
  return A;
}

Complex random_bounded(std::mt19937& rng) {
  std::uniform_int_distribution<int> rank(0, 3), lo(-2, 2), len(0, 3);
  const int a = lo(rng), b = a + len(rng);
  std::map<int, Index> ranks;
  for (int d = a; d <= b; ++d) ranks[d] = rank(rng);
  return Complex::bounded(GroundRing::integers(), a, b, ranks);
}

}  // namespace

TEST_CASE("standard presentation is ℤ with class = rank") {
  for (int N : {1, 2, 4, 6}) {
    const K0Group G = grothendieck_group(standard_presentation(N));
    REQUIRE(G.group == FinAbGroup{1, {}});
    const K0Class one = G.class_of("r1");
    CHECK(abs(one.coordinates(0)) == 1);
    for (int n = 0; n <= N; ++n) CHECK(G.class_of("r" + std::to_string(n)) == G.scale(one, n));
  }
}

TEST_CASE("small presentations") {
  K0Presentation P;
  P.generators = {"A", "B"};
  CHECK(grothendieck_group(P).group == FinAbGroup{2, {}});

  P.generators = {"0", "X"};
  P.relations = {{"X", "X", "0"}};
  const K0Group G = grothendieck_group(P);
  CHECK(G.group == FinAbGroup{1, {}});
  CHECK(G.class_of("0").coordinates.isZero());

  // X → X → X forces [X] = 0.
  P.relations = {{"X", "X", "X"}};
  CHECK(grothendieck_group(P).class_of("X").coordinates.isZero());

  // [B] = 2[A] and [B] = 0 leave ℤ/2.
  K0Presentation Q;
  Q.generators = {"0", "A", "B"};
  Q.relations = {{"A", "B", "A"}, {"B", "B", "0"}, {"0", "0", "0"}, {"0", "B", "0"}};
  CHECK(grothendieck_group(Q).group == FinAbGroup{0, {2}});
  CHECK(grothendieck_group(Q).class_of("A").coordinates == IntVector::Constant(1, 1));
}

TEST_CASE("undeclared generators are input errors") {
  K0Presentation P;
  P.generators = {"A"};
  P.relations = {{"A", "B", "A"}};
  CHECK_THROWS_AS(grothendieck_group(P), InputError);
  P.generators = {"A", "A"};
  P.relations = {};
  CHECK_THROWS_AS(grothendieck_group(P), InputError);
  CHECK_THROWS_AS(standard_presentation(0), InputError);
}

TEST_CASE("group is invariant under permuting generators and relations") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    K0Presentation P;
    const int n = 2 + trial % 4;
    for (int i = 0; i < n; ++i) P.generators.push_back("g" + std::to_string(i));
    std::uniform_int_distribution<int> pick(0, n - 1);
    for (int r = 0; r < trial % 5; ++r)
      P.relations.push_back({P.generators[pick(rng)], P.generators[pick(rng)], P.generators[pick(rng)]});
    const K0Group G = grothendieck_group(P);
    K0Presentation Q = P;
    std::shuffle(Q.generators.begin(), Q.generators.end(), rng);
    std::shuffle(Q.relations.begin(), Q.relations.end(), rng);
    const K0Group H = grothendieck_group(Q);
    CHECK(G.group == H.group);
    // Class relations transport: [x] = [y] in G iff in H.
    for (const auto& x : P.generators)
      for (const auto& y : P.generators)
        CHECK((G.class_of(x) == G.class_of(y)) == (H.class_of(x) == H.class_of(y)));
  }
}

TEST_CASE("class of a complex") {
  const K0Group std4 = grothendieck_group(standard_presentation(4));
  const Complex Z0 = Complex::bounded(GroundRing::integers(), 0, 0, {{0, 1}});
  CHECK(complex_class_value(Z0) == 1);
  CHECK(class_of_complex(Z0, std4) == std4.class_of("r1"));

  ChainMap id{Z0, Z0, {{0, identity_matrix(1)}}};
  const Complex cone = mapping_cone(id);
  CHECK(complex_class_value(cone) == 0);
  CHECK(class_of_complex(cone, std4).coordinates.isZero());

  const Complex P = Complex::periodic(GroundRing::integers(), 2, {{0, 2}, {1, 1}});
  CHECK(class_of_complex(P, std4) == std4.class_of("r1"));
  const Complex odd = Complex::periodic(GroundRing::integers(), 3, {{0, 1}});
  CHECK_THROWS_AS(complex_class_value(odd), PeriodError);

  const auto eq = hochschild_class(clifford(), 8);
  CHECK(class_of_complex(fold(eq.stable, 2), std4) == std4.scale(std4.class_of("r1"), eq.value));
}

TEST_CASE("class is additive over cones and direct sums") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    const Complex A = random_bounded(rng), B = random_bounded(rng);
    if (A.grading().min <= A.grading().max && B.grading().min <= B.grading().max) {
      const Complex S = direct_sum(A, B);
      CHECK(complex_class_value(S) == complex_class_value(A) + complex_class_value(B));
    }
    // cone(0 : A → B) = B ⊕ A[1]
    ChainMap zero{A, B, {}};
    CHECK(complex_class_value(mapping_cone(zero)) == complex_class_value(B) - complex_class_value(A));
  }
  const Complex P = Complex::periodic(GroundRing::integers(), 2, {{0, 2}, {1, 1}});
  const Complex Q = Complex::periodic(GroundRing::integers(), 2, {{0, 1}, {1, 3}});
  CHECK(complex_class_value(direct_sum(P, Q)) == complex_class_value(P) + complex_class_value(Q));
}

TEST_CASE("cofiber additivity of Hochschild classes") {
  const AInfCategory Z = ground();
  const AInfCategory ZZ = product_algebra(Z, Z);
  const AInfCategory zero = zero_category(GroundRing::integers(), 0);

  const auto trivial = verify_cofiber_additivity(zero, Z, Z, 4);
  CHECK(trivial.ok);
  const auto split = verify_cofiber_additivity(Z, ZZ, Z, 4);
  CHECK(split.ok);
  CHECK(split.classes[1] == 2);

  const auto wrong = verify_cofiber_additivity(zero, ZZ, Z, 4);
  CHECK_FALSE(wrong.ok);
  CHECK(wrong.discrepancy.find("2") != std::string::npos);

  const AInfCategory dual = [] {
    AInfCategory A = ground_algebra(GroundRing::integers(), 0);
    A.basis.push_back({"e", 0, 0, 0});
    return A;
  }();
  CHECK_THROWS_AS(verify_cofiber_additivity(Z, dual, Z, 5), UnstableError);
}
