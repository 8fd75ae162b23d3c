#pragma once

// Chain complexes of finite-rank free modules, ℤ-graded (bounded) or
// ℤ/n-periodic, with homological differentials d_i : C_i → C_{i−1}.

#include "kzero/exactalg.hpp"

#include <map>
#include <optional>
#include <string>

namespace kzero {

struct GroundRing {
  enum class Kind { Integers, Rationals, PrimeField };
  Kind kind = Kind::Integers;
  Integer p = 0;

  static GroundRing integers() { return {}; }
  static GroundRing rationals() { return {Kind::Rationals, 0}; }
  static GroundRing prime_field(const Integer& p);

  bool is_field() const { return kind != Kind::Integers; }
  bool operator==(const GroundRing&) const = default;
  std::string name() const;

  /// Homology-style subquotient computed over this ring.
  Subquotient subquotient(const IntMatrix& outgoing, const IntMatrix& incoming) const;
  /// Entries reduced to canonical representatives (only matters for 𝔽_p).
  IntMatrix normalize(const IntMatrix& A) const;
};

struct Grading {
  bool periodic = false;
  int period = 0;  // periodic only
  int min = 0;     // bounded only
  int max = -1;    // bounded only; max < min means the empty complex

  static Grading bounded(int lo, int hi) { return {false, 0, lo, hi}; }
  static Grading periodic_mod(int n) { return {true, n, 0, n - 1}; }
  bool operator==(const Grading&) const = default;
};

class Complex {
public:
  Complex() = default;
  /// Validates shapes and d∘d = 0. Differentials omitted from the map are
  /// zero. Ranks omitted inside the grading window are zero.
  Complex(GroundRing ring, Grading grading, std::map<int, Index> ranks,
          std::map<int, IntMatrix> differentials);

  static Complex bounded(GroundRing ring, int lo, int hi, std::map<int, Index> ranks,
                         std::map<int, IntMatrix> differentials = {}) {
    return Complex(ring, Grading::bounded(lo, hi), std::move(ranks), std::move(differentials));
  }
  static Complex periodic(GroundRing ring, int n, std::map<int, Index> ranks,
                          std::map<int, IntMatrix> differentials = {}) {
    return Complex(ring, Grading::periodic_mod(n), std::move(ranks), std::move(differentials));
  }

  const GroundRing& ring() const { return ring_; }
  const Grading& grading() const { return grading_; }
  bool is_periodic() const { return grading_.periodic; }
  int period() const { return grading_.period; }

  /// Canonical degree: reduced mod n when periodic.
  int canonical(int degree) const;
  /// Degrees carrying data: [min, max] or [0, n).
  std::vector<int> degrees() const;

  Index rank(int degree) const;
  /// d_i : C_i → C_{i−1}, shape rank(i−1) × rank(i).
  IntMatrix differential(int degree) const;

  bool operator==(const Complex&) const;

private:
  GroundRing ring_;
  Grading grading_;
  std::map<int, Index> ranks_;
  std::map<int, IntMatrix> diffs_;
};

struct ChainMap {
  Complex source, target;
  std::map<int, IntMatrix> components;  // f_i : A_i → B_i, missing means zero

  IntMatrix component(int degree) const;
};

// --- operations -----------------------------------------------------------

FinAbGroup homology(const Complex& C, int degree);
Subquotient homology_presentation(const Complex& C, int degree);

Integer euler_characteristic(const Complex& C);

/// Σ_{i=0}^{n−1} (−1)^i free_rank H_i for even n.
Integer psi_class(const Complex& C);

Complex fold(const Complex& C, int n);
Complex shift(const Complex& C, int s);

/// Throws ValidationError naming the first degree where f fails to commute.
void validate_chain_map(const ChainMap& f);
/// cone(f)_i = B_i ⊕ A_{i−1}, d(b, a) = (d b + f a, −d a).
Complex mapping_cone(const ChainMap& f);

/// Degree-wise direct sum; both complexes must share ring and grading kind.
Complex direct_sum(const Complex& A, const Complex& B);

/// Whether every homology group vanishes.
bool is_acyclic(const Complex& C);

}  // namespace kzero
