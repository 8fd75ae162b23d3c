#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "kzero/error.hpp"
#include "kzero/hochschild.hpp"

#include <algorithm>

using namespace kzero;

namespace {

AInfCategory algebra(std::vector<std::pair<std::string, int>> basis, int period = 0,
                     GroundRing ring = GroundRing::integers()) {
  AInfCategory A;
  A.ring = ring;
  A.period = period;
  A.objects = {"o"};
  A.basis.push_back({"1", 0, 0, 0});
  for (auto& [l, d] : basis) A.basis.push_back({l, 0, 0, d});
  A.units = {0};
  return A;
}

AInfCategory clifford(long w, GroundRing ring = GroundRing::integers()) {
  AInfCategory A = algebra({{"x", 1}}, 2, ring);
  set_mu(A, {"x", "x"}, {{w, "1"}});
  return A;
}

AInfCategory dual_numbers() { return algebra({{"e", 0}}); }

FinAbGroup group(Index free, std::vector<long> torsion = {}) {
  std::vector<Integer> t(torsion.begin(), torsion.end());
  return {free, t};
}

// Two-periodic bimodule resolution of ℤ[ε]/ε² tensored down: every term is
// A = ℤ{1, ε}; odd differentials vanish and even ones multiply by 2ε.
Complex dual_numbers_koszul(int top) {
  std::map<int, Index> ranks;
  std::map<int, IntMatrix> d;
  for (int i = 0; i <= top; ++i) {
    ranks[i] = 2;
    if (i >= 2 && i % 2 == 0) {
      IntMatrix m = zero_matrix(2, 2);
      m(1, 0) = 2;
      d[i] = m;
    }
  }
  return Complex::bounded(GroundRing::integers(), 0, top, ranks, d);
}

}  // namespace

TEST_CASE("ground ring: the reduced complex is the ring in degree zero") {
  const AInfCategory Z = algebra({});
  for (int L = 1; L <= 4; ++L) {
    const auto T = hochschild_complex(Z, L);
    REQUIRE(T.complex.degrees() == std::vector<int>{0});
    CHECK(T.complex.rank(0) == 1);
    const auto R = hochschild_homology(Z, L);
    CHECK(R.at(0)->group == group(1));
    CHECK(R.at(0)->certified);
  }
  CHECK(hochschild_class(Z, 3).value == 1);
}

TEST_CASE("zero multiplication: only the unit in front contributes") {
  const AInfCategory A = algebra({{"a", 0}, {"b", 0}});
  const auto T = hochschild_complex(A, 3);
  for (int d : T.complex.degrees()) {
    const IntMatrix m = T.complex.differential(d);
    const auto& words = T.words.at(d);
    for (std::size_t j = 0; j < words.size(); ++j)
      if (words[j][0] != 0) CHECK(m.col(static_cast<Index>(j)).isZero());
  }
  // b(1; a a) = (a; a) + (a; a).
  const auto& w2 = T.words.at(2);
  const auto col = std::find(w2.begin(), w2.end(), Word{0, 1, 1}) - w2.begin();
  const auto row = std::find(T.words.at(1).begin(), T.words.at(1).end(), Word{1, 1}) - T.words.at(1).begin();
  CHECK(T.complex.differential(2)(row, col) == 2);
  // Words (v0; a|b…) of length n: 3 · 2^n.
  for (int n = 0; n <= 3; ++n) CHECK(T.complex.rank(n) == 3 * (1 << n));
}

TEST_CASE("odd x with x² = 1: one word per (a_0, length)") {
  const auto T = hochschild_complex(clifford(1), 8);
  CHECK(T.grading == HochschildGrading::Length);
  for (int n = 0; n <= 8; ++n) {
    CHECK(T.complex.rank(n) == 2);
    CHECK(T.words.at(n).size() == 2);
  }
  const auto R = hochschild_homology(clifford(1), 8);
  CHECK(R.at(0)->group == group(1, {2}));
  for (int n = 1; n <= 6; ++n) CHECK(R.at(n)->group == group(0, {2}));
}

TEST_CASE("d² = 0 on every shipped truncation") {
  const std::vector<AInfCategory> algebras = {algebra({}), clifford(1), clifford(-1), clifford(3),
                                              dual_numbers(), product_algebra(algebra({}), algebra({})),
                                              clifford(1, GroundRing::prime_field(3))};
  for (const auto& A : algebras)
    for (int L = 1; L <= 5; ++L)
      for (bool normalized : {true, false}) CHECK_NOTHROW(hochschild_complex(A, L, normalized));
}

TEST_CASE("dual numbers agree with the Koszul resolution") {
  const int L = 7;
  const auto R = hochschild_homology(dual_numbers(), L);
  const Complex K = dual_numbers_koszul(L + 2);
  int certified = 0;
  for (const auto& d : R.degrees) {
    if (!d.certified) continue;
    ++certified;
    CHECK_MESSAGE(d.group == homology(K, d.degree), "degree ", d.degree);
  }
  CHECK(certified >= L - 1);
  CHECK(R.at(0)->group == group(2));
  CHECK(R.at(1)->group == group(1, {2}));
  CHECK(R.at(2)->group == group(1));
  CHECK_THROWS_AS(hochschild_class(dual_numbers(), L), UnstableError);
}

TEST_CASE("equator model: Clifford homology in every degree") {
  for (long w : {1L, -1L, 2L}) {
    const auto R = hochschild_homology(clifford(w), 8);
    const long t = 2 * std::abs(w);
    CHECK(R.at(0)->group == group(1, {t}));
    for (int n = 1; n <= 6; ++n) {
      CHECK(R.at(n)->certified);
      CHECK(R.at(n)->group == group(0, {t}));
    }
    CHECK(hochschild_class(clifford(w), 8).value == 1);
  }
}

TEST_CASE("class refuses on uncertified data") {
  CHECK_THROWS_AS(hochschild_class(clifford(1), 8, 3), PeriodError);
  CHECK_THROWS_AS(hochschild_class(clifford(1), 8, 0), PeriodError);
  CHECK(hochschild_class(clifford(1), 8, 4).value == 1);
  CHECK_THROWS_AS(hochschild_complex(clifford(1), 0), InputError);
  AInfCategory bad = algebra({{"a", 0}, {"b", 0}});
  set_mu(bad, {"a", "a"}, {{1, "b"}});
  set_mu(bad, {"a", "b"}, {{1, "a"}});
  CHECK_THROWS_AS(hochschild_complex(bad, 2), InputError);

  AInfCategory two;
  two.objects = {"X", "Y"};
  two.basis = {{"uX", 0, 0, 0}, {"uY", 1, 1, 0}};
  two.units = {0, 1};
  CHECK_THROWS_AS(hochschild_complex(two, 2), InputError);
}

TEST_CASE("additivity on split examples") {
  const AInfCategory Z = algebra({});
  const AInfCategory ZZ = product_algebra(Z, Z);
  const auto c = hochschild_class(ZZ, 5);
  CHECK(c.value == 2);
  CHECK(c.value == hochschild_class(Z, 5).value * 2);

  const AInfCategory Zp = ground_algebra(GroundRing::integers(), 2);
  const AInfCategory EZ = product_algebra(clifford(1), Zp);
  CHECK(hochschild_class(EZ, 6).value == hochschild_class(clifford(1), 6).value + hochschild_class(Zp, 6).value);

  const AInfCategory ZZZ = product_algebra(ZZ, Z);
  CHECK(hochschild_class(ZZZ, 4).value == 3);
}

TEST_CASE("normalized and unnormalized chains agree where both are certified") {
  const std::vector<AInfCategory> algebras = {algebra({}), clifford(1), dual_numbers(),
                                              product_algebra(algebra({}), algebra({}))};
  for (const auto& A : algebras) {
    const auto N = hochschild_homology(A, 5, true);
    const auto U = hochschild_homology(A, 5, false);
    int compared = 0;
    for (const auto& d : N.degrees) {
      const auto* u = U.at(d.degree);
      if (!d.certified || u == nullptr || !u->certified) continue;
      CHECK(d.group == u->group);
      ++compared;
    }
    CHECK(compared >= 1);
  }
}

TEST_CASE("class is ψ of the folded stable complex") {
  for (const auto& A : {algebra({}), clifford(1), product_algebra(algebra({}), algebra({}))}) {
    const auto c = hochschild_class(A, 6);
    CHECK(c.value == psi_class(fold(c.stable, 2)));
    for (int d = c.window_min; d <= c.window_max; ++d)
      CHECK(homology(c.stable, d) == c.report.at(d)->group);
  }
}

TEST_CASE("periodic grading from higher products") {
  // μ_3(x, x, x) = 1 with |x| odd.
  AInfCategory A = algebra({{"x", 1}}, 2);
  set_mu(A, {"x", "x", "x"}, {{1, "1"}});
  REQUIRE(check_ainf_relations(A, 4).ok);
  const auto T = hochschild_complex(A, 4);
  CHECK(T.grading == HochschildGrading::Periodic);
  CHECK(T.complex.is_periodic());
  CHECK(T.complex.period() == 2);
}

TEST_CASE("prime field coefficients") {
  const auto R = hochschild_homology(clifford(1, GroundRing::prime_field(3)), 6);
  CHECK(R.at(0)->group == group(1));
  for (int n = 1; n <= 4; ++n) CHECK(R.at(n)->group.is_zero());
  CHECK(hochschild_class(clifford(1, GroundRing::prime_field(3)), 6).value == 1);
}
