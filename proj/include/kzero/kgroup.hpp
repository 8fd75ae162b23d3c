#pragma once

// Grothendieck groups presented by generators and cofiber relations.

#include "kzero/hochschild.hpp"

#include <array>
#include <map>
#include <string>
#include <vector>

namespace kzero {

struct K0Presentation {
  std::vector<std::string> generators;
  /// (A, B, C) from A → B → C, contributing [B] − [A] − [C].
  std::vector<std::array<std::string, 3>> relations;

  void validate() const;
};

/// Coordinates in the canonical group: torsion first, then free, reduced.
struct K0Class {
  IntVector coordinates;

  bool operator==(const K0Class& o) const {
    return coordinates.size() == o.coordinates.size() && coordinates == o.coordinates;
  }
};

struct K0Group {
  FinAbGroup group;
  std::vector<Integer> orders;
  std::vector<std::string> generators;
  QuotientMap quotient;

  K0Class class_of(const std::string& generator) const;
  /// Class of Σ c_i [g_i].
  K0Class class_of(const std::map<std::string, Integer>& combination) const;
  K0Class add(const K0Class& a, const K0Class& b) const;
  K0Class scale(const K0Class& a, const Integer& c) const;
};

K0Group grothendieck_group(const K0Presentation& P);

/// Free modules r0 … r{max_rank} with r_{a+b} = r_a + r_b whenever a + b ≤ max_rank.
K0Presentation standard_presentation(int max_rank);

/// χ for bounded complexes, ψ for even-periodic ones; the integer class in
/// K₀(k) ≅ ℤ.
Integer complex_class_value(const Complex& C);
/// The same class as an element of a standard presentation's group, via r1.
K0Class class_of_complex(const Complex& C, const K0Group& standard);

struct AdditivityReport {
  bool ok = true;
  std::array<Integer, 3> classes{};  // hochschild classes of A, B, C
  std::string discrepancy;
};

/// Checks [Hoch B] = [Hoch A] + [Hoch C] for a cofiber triple A → B → C.
AdditivityReport verify_cofiber_additivity(const AInfCategory& A, const AInfCategory& B, const AInfCategory& C,
                                           int L, int n = 2);

}  // namespace kzero
