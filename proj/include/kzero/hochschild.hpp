#pragma once

// Hochschild chains of a single-object A∞ algebra: the reduced cyclic bar
// complex on words (a_0 | a_1 … a_n), with a_1 … a_n non-unit basis elements,
// truncated at tensor length n ≤ L.
//
// Grading. A ℤ-graded algebra uses the total degree |a_0| + Σ (|a_i| + 1).
// A ℤ/n-graded algebra with μ_2 as its only structure map uses the tensor
// length n, which μ_2 lowers by exactly one; any other ℤ/n-graded algebra
// gives a periodic complex in total degree mod n.

#include "kzero/ainf.hpp"

#include <map>
#include <string>
#include <vector>

namespace kzero {

enum class HochschildGrading { Total, Length, Periodic };
std::string to_string(HochschildGrading g);

struct HochschildTruncation {
  AInfCategory algebra;
  int length = 0;
  bool normalized = true;
  HochschildGrading grading = HochschildGrading::Total;
  Complex complex;
  std::map<int, std::vector<Word>> words;  // degree → words, in basis order
};

/// Unnormalized truncations allow units among a_1 … a_n.
HochschildTruncation hochschild_complex(const AInfCategory& A, int L, bool normalized = true);

struct HochschildDegree {
  int degree = 0;
  FinAbGroup group;
  /// H_i(F_{L−1}) → H_i(F_L) induced by inclusion is an isomorphism.
  bool certified = false;
};

struct HochschildReport {
  HochschildTruncation truncation;
  std::vector<HochschildDegree> degrees;

  const HochschildDegree* at(int degree) const;
};

HochschildReport hochschild_homology(const AInfCategory& A, int L, bool normalized = true);

struct HochschildClass {
  Integer value = 0;
  int period = 2;
  Complex stable;           // bounded, or periodic for the periodic grading
  int window_min = 0;       // certified window
  int window_max = -1;
  /// Σ_{i=0}^{n} (−1)^i free_rank H_i of the folded complex, endpoint included.
  Integer inclusive_sum = 0;
  HochschildReport report;
};

/// ψ of the folded stable complex. The window is the lowest run of certified
/// degrees; refuses with UnstableError when its open edges carry free homology.
HochschildClass hochschild_class(const AInfCategory& A, int L, int n = 2);

}  // namespace kzero
