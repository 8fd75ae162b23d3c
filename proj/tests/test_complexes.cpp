#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "kzero/complexes.hpp"
#include "kzero/error.hpp"

#include <random>

using namespace kzero;

namespace {

const GroundRing ZZ = GroundRing::integers();

IntMatrix scalar(long v) {
  IntMatrix m(1, 1);
  m(0, 0) = v;
  return m;
}

// 0 → ℤ --2--> ℤ → 0 in degrees 1, 0.
Complex times_two() { return Complex::bounded(ZZ, 0, 1, {{0, 1}, {1, 1}}, {{1, scalar(2)}}); }

Complex point(int period = 0) {
  if (period > 0) return Complex::periodic(ZZ, period, {{0, 1}});
  return Complex::bounded(ZZ, 0, 0, {{0, 1}});
}

IntMatrix random_matrix(std::mt19937& rng, Index r, Index c, int lo, int hi) {
  std::uniform_int_distribution<int> dist(lo, hi);
  IntMatrix m(r, c);
  for (Index i = 0; i < r; ++i)
    for (Index j = 0; j < c; ++j) m(i, j) = dist(rng);
  return m;
}

// Random bounded complex with each d_i landing in ker d_{i−1}.
Complex random_bounded(std::mt19937& rng, int lo, int hi) {
  std::uniform_int_distribution<int> rk(0, 3);
  std::map<int, Index> ranks;
  for (int i = lo; i <= hi; ++i) ranks[i] = rk(rng);
  std::map<int, IntMatrix> diffs;
  for (int i = lo + 1; i <= hi; ++i) {
    const Index rows = ranks[i - 1], cols = ranks[i];
    IntMatrix d = zero_matrix(rows, cols);
    if (rows > 0 && cols > 0) {
      const IntMatrix prev = diffs.count(i - 1) ? diffs[i - 1] : zero_matrix(ranks[i - 2], rows);
      const IntMatrix K = kernel_basis(prev);
      if (K.cols() > 0) d = K * random_matrix(rng, K.cols(), cols, -2, 2);
    }
    diffs[i] = d;
  }
  return Complex::bounded(ZZ, lo, hi, ranks, diffs);
}

Complex random_periodic(std::mt19937& rng) {
  // 2-periodic: d_1 : C_1 → C_0 and d_0 : C_0 → C_1 with d_0 d_1 = 0 and
  // d_1 d_0 = 0, arranged through a splitting C = image part ⊕ rest.
  std::uniform_int_distribution<int> rk(0, 2);
  const Index a = rk(rng), b = rk(rng), c = rk(rng), e = rk(rng);
  // C_0 = ℤ^a ⊕ ℤ^b, C_1 = ℤ^c ⊕ ℤ^e; d_1 maps ℤ^c into ℤ^a, kills ℤ^e;
  // d_0 maps ℤ^b into ℤ^e, kills ℤ^a.
  IntMatrix d1 = zero_matrix(a + b, c + e), d0 = zero_matrix(c + e, a + b);
  if (a > 0 && c > 0) d1.block(0, 0, a, c) = random_matrix(rng, a, c, -3, 3);
  if (e > 0 && b > 0) d0.block(c, a, e, b) = random_matrix(rng, e, b, -3, 3);
  return Complex::periodic(ZZ, 2, {{0, a + b}, {1, c + e}}, {{0, d0}, {1, d1}});
}

ChainMap random_chain_map(std::mt19937& rng, const Complex& A, const Complex& B) {
  // Rejection sampling over small entries, falling back to zero.
  for (int attempt = 0; attempt < 40; ++attempt) {
    ChainMap f{A, B, {}};
    for (int d : A.degrees()) f.components[d] = random_matrix(rng, B.rank(d), A.rank(d), -1, 1);
    try {
      validate_chain_map(f);
      return f;
    } catch (const ValidationError&) {
    }
  }
  return ChainMap{A, B, {}};
}

}  // namespace

TEST_CASE("homology examples") {
  const Complex C = times_two();
  CHECK(homology(C, 0) == FinAbGroup{0, {2}});
  CHECK(homology(C, 1).is_zero());

  const Complex Z = Complex::bounded(ZZ, 0, 2, {{0, 1}, {1, 2}, {2, 3}});
  CHECK(homology(Z, 1) == FinAbGroup{2, {}});
  CHECK(homology(Z, 2) == FinAbGroup{3, {}});

  const Complex P = Complex::periodic(ZZ, 2, {{0, 1}});
  CHECK(homology(P, 0) == FinAbGroup{1, {}});
  CHECK(homology(P, 1).is_zero());
  CHECK(homology(P, 4) == FinAbGroup{1, {}});
}

TEST_CASE("homology over fields") {
  const Complex Q = Complex::bounded(GroundRing::rationals(), 0, 1, {{0, 1}, {1, 1}}, {{1, scalar(2)}});
  CHECK(homology(Q, 0).is_zero());
  const Complex F2 = Complex::bounded(GroundRing::prime_field(2), 0, 1, {{0, 1}, {1, 1}}, {{1, scalar(2)}});
  CHECK(homology(F2, 0) == FinAbGroup{1, {}});
  CHECK(homology(F2, 1) == FinAbGroup{1, {}});
  CHECK_THROWS_AS(GroundRing::prime_field(4), InputError);
}

TEST_CASE("construction validates shapes and d squared") {
  CHECK_THROWS_AS(Complex::bounded(ZZ, 0, 1, {{0, 1}, {1, 1}}, {{1, zero_matrix(2, 1)}}), InputError);
  IntMatrix d1(1, 1), d2(1, 1);
  d1 << 1;
  d2 << 1;
  CHECK_THROWS_AS(Complex::bounded(ZZ, 0, 2, {{0, 1}, {1, 1}, {2, 1}}, {{1, d1}, {2, d2}}), ValidationError);
  // Periodic wrap-around: d_0 d_1 and d_1 d_0 both checked.
  CHECK_THROWS_AS(Complex::periodic(ZZ, 2, {{0, 1}, {1, 1}}, {{0, scalar(1)}, {1, scalar(3)}}), ValidationError);
}

TEST_CASE("corrupted differentials are rejected exactly when d squared fails") {
  std::mt19937 rng(5);
  int rejected = 0;
  for (int t = 0; t < 200; ++t) {
    const Complex C = random_bounded(rng, 0, 3);
    std::map<int, Index> ranks;
    std::map<int, IntMatrix> diffs;
    for (int d : C.degrees()) {
      ranks[d] = C.rank(d);
      diffs[d] = C.differential(d);
    }
    const int i = std::uniform_int_distribution<int>(1, 3)(rng);
    if (diffs[i].size() == 0) continue;
    diffs[i] += random_matrix(rng, diffs[i].rows(), diffs[i].cols(), -1, 1);
    bool bad = false;
    for (int d = 1; d <= 3; ++d)
      if (d + 1 <= 3 && !(diffs[d] * diffs[d + 1]).isZero()) bad = true;
    if (bad) {
      CHECK_THROWS_AS(Complex::bounded(ZZ, 0, 3, ranks, diffs), ValidationError);
      ++rejected;
    } else {
      CHECK_NOTHROW(Complex::bounded(ZZ, 0, 3, ranks, diffs));
    }
  }
  CHECK(rejected > 20);
}

TEST_CASE("euler characteristic") {
  CHECK(euler_characteristic(times_two()) == 0);
  CHECK(euler_characteristic(point()) == 1);
  CHECK(euler_characteristic(Complex::bounded(ZZ, 0, 2, {{0, 2}, {1, 1}, {2, 3}})) == 4);
  CHECK_THROWS_AS(euler_characteristic(point(2)), GradingError);
}

TEST_CASE("psi examples") {
  CHECK(psi_class(point(2)) == 1);
  CHECK(psi_class(shift(point(2), 1)) == -1);
  CHECK_THROWS_AS(psi_class(point(3)), PeriodError);
  CHECK_THROWS_AS(psi_class(point()), GradingError);
  try {
    psi_class(point(3));
  } catch (const PeriodError& e) {
    CHECK(std::string(e.what()).find("period must be even") != std::string::npos);
    CHECK(e.kind() == "unsupported-period");
  }
}

TEST_CASE("fold examples") {
  const Complex C = Complex::bounded(ZZ, 0, 2, {{0, 1}, {2, 1}});
  const Complex F = fold(C, 2);
  CHECK(F.is_periodic());
  CHECK(homology(F, 0) == FinAbGroup{2, {}});
  CHECK(homology(F, 1).is_zero());

  const Complex T = fold(times_two(), 2);
  CHECK(homology(T, 0) == FinAbGroup{0, {2}});
  CHECK(homology(T, 1).is_zero());

  const Complex E = fold(Complex::bounded(ZZ, 0, -1, {}), 2);
  CHECK(E.rank(0) == 0);
  CHECK(E.rank(1) == 0);
  CHECK_THROWS_AS(fold(C, 3), PeriodError);
}

TEST_CASE("shift examples") {
  const Complex C = times_two();
  CHECK(shift(C, 0) == C);
  const Complex S = shift(C, 1);
  CHECK(S.grading().min == 1);
  CHECK(S.differential(2) == scalar(-2));
  std::mt19937 rng(1);
  for (int t = 0; t < 10; ++t) {
    const Complex P = random_periodic(rng);
    CHECK(shift(P, 2) == P);
  }
}

TEST_CASE("cone examples") {
  const Complex Z0 = point();
  ChainMap id{Z0, Z0, {{0, scalar(1)}}};
  CHECK(is_acyclic(mapping_cone(id)));

  ChainMap zero{Z0, Z0, {}};
  const Complex C0 = mapping_cone(zero);
  CHECK(homology(C0, 0) == FinAbGroup{1, {}});
  CHECK(homology(C0, 1) == FinAbGroup{1, {}});

  ChainMap two{Z0, Z0, {{0, scalar(2)}}};
  CHECK(homology(mapping_cone(two), 0) == FinAbGroup{0, {2}});

  const Complex C = times_two();
  ChainMap bad{C, C, {{0, scalar(1)}}};
  try {
    mapping_cone(bad);
    FAIL("expected a validation error");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("degree 1") != std::string::npos);
  }
}

TEST_CASE("cone exactness degreewise and euler additivity") {
  std::mt19937 rng(17);
  int nontrivial = 0;
  for (int t = 0; t < 80; ++t) {
    const Complex A = random_bounded(rng, 0, 2), B = random_bounded(rng, 0, 2);
    const ChainMap f = random_chain_map(rng, A, B);
    if (!f.components.empty()) ++nontrivial;
    const Complex K = mapping_cone(f);
    for (int d = -1; d <= 4; ++d) CHECK(K.rank(d) == B.rank(d) + A.rank(d - 1));
    CHECK(euler_characteristic(K) == euler_characteristic(B) - euler_characteristic(A));
  }
  CHECK(nontrivial > 10);
}

TEST_CASE("psi additivity and quasi-isomorphism invariance on periodic cones") {
  std::mt19937 rng(23);
  int acyclic = 0;
  for (int t = 0; t < 120; ++t) {
    const Complex A = random_periodic(rng), B = random_periodic(rng);
    const ChainMap f = random_chain_map(rng, A, B);
    const Complex K = mapping_cone(f);
    CHECK(psi_class(K) == psi_class(B) - psi_class(A));
    if (is_acyclic(K)) {
      ++acyclic;
      CHECK(psi_class(A) == psi_class(B));
    }
  }
  // Identity maps guarantee some quasi-isomorphisms in the corpus.
  for (int t = 0; t < 20; ++t) {
    const Complex A = random_periodic(rng);
    ChainMap id{A, A, {{0, identity_matrix(A.rank(0))}, {1, identity_matrix(A.rank(1))}}};
    CHECK(is_acyclic(mapping_cone(id)));
    ++acyclic;
  }
  CHECK(acyclic >= 20);
}

TEST_CASE("fold compatibility and shift sign") {
  std::mt19937 rng(29);
  for (int t = 0; t < 80; ++t) {
    const Complex C = random_bounded(rng, -1, 3);
    Integer rational_chi = 0;
    for (int d : C.degrees()) rational_chi += (((d % 2) + 2) % 2 == 0 ? 1 : -1) * Integer(homology(C, d).free_rank);
    CHECK(psi_class(fold(C, 2)) == rational_chi);
    CHECK(rational_chi == euler_characteristic(C));

    const Complex P = random_periodic(rng);
    CHECK(psi_class(shift(P, 1)) == -psi_class(P));
    CHECK(psi_class(shift(P, 3)) == -psi_class(P));
  }
}

TEST_CASE("direct sums add homology") {
  const Complex S = direct_sum(times_two(), point());
  CHECK(homology(S, 0) == FinAbGroup{1, {2}});
}
