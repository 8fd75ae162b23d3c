#pragma once

// Grothendieck construction of a span B ←f− A −g→ C, localization of linear
// categories at a set of morphisms, and the homotopy-level pushout checks.

#include "kzero/ainf.hpp"

#include <array>
#include <compare>
#include <map>
#include <memory>
#include <string>
#include <tuple>
#include <vector>

namespace kzero {

// --- Grothendieck construction -------------------------------------------------

enum class Origin { A = 0, B = 1, C = 2 };
std::string to_string(Origin o);

struct GrothCategory {
  std::shared_ptr<const AInfCategory> category;
  std::array<std::shared_ptr<const AInfCategory>, 3> parts;  // A, B, C
  std::vector<Origin> provenance;                             // per object
  std::array<std::vector<int>, 3> object_embedding;           // part object → object
  std::array<std::vector<int>, 3> basis_embedding;            // part basis → basis
  /// a → f(a) and a → g(a); basis is the cross element over the unit of the
  /// target, −1 when the target is a zero object.
  struct Adjacent {
    int source = 0;
    int target = 0;
    int basis = -1;
    Origin side = Origin::B;
  };
  std::vector<Adjacent> adjacent;
  /// (side, A object, part basis of B or C) → cross basis element.
  std::map<std::tuple<Origin, int, int>, int> cross;
};

/// Objects A ⊔ B ⊔ C. hom(a, b) = hom_B(f a, b) and hom(a, c) = hom_C(g a, c);
/// cross words compose through the functor on the bar construction:
/// m(y…, z, x…) = Σ m_B(y…, z, f(x-blocks)…).
GrothCategory grothendieck_construction(const AInfFunctor& f, const AInfFunctor& g);

/// The strict embedding of one part.
AInfFunctor groth_embedding(const GrothCategory& G, Origin part);

/// Chain-level vanishing of hom(x, y) unless x = y's part or x ∈ A.
bool provenance_respected(const GrothCategory& G);

// --- localization -------------------------------------------------------------

struct InvertedMorphism {
  int source = 0;
  int target = 0;
  IntVector element;  // generator coordinates in hom(source, target)
};

/// Alternating word γ_0 s_{j_1}^{-1} γ_1 … s_{j_m}^{-1} γ_m in path order, each
/// γ_i a hom generator. Letter count 2m + 1.
struct FractionWord {
  int source = 0;
  int target = 0;
  std::vector<int> generators;
  std::vector<int> inverses;

  int letters() const { return 2 * static_cast<int>(inverses.size()) + 1; }
  auto operator<=>(const FractionWord&) const = default;
};

struct LocalizedHCategory {
  LinearCategory category;  // localized; composition empty when unavailable
  LinearCategory homotopy;  // before inversion
  std::vector<InvertedMorphism> inverted;
  int bound = 8;
  /// Every hom agrees with the next bound through the inclusion.
  bool complete = false;
  bool composition_available = false;
  /// homotopy(x, y) → category(x, y) in generator coordinates.
  std::map<std::pair<int, int>, IntMatrix> localization_map;

  struct Presentation {
    std::vector<FractionWord> words;
    IntMatrix relations;  // rows over words
    QuotientMap quotient;
  };
  std::map<std::pair<int, int>, Presentation> presentations;

  std::string status() const { return complete ? "complete" : "bounded, possibly incomplete"; }
  IntVector classify(const FractionWord& w) const;
};

/// Category of fractions presented by normalized words of at most `bound`
/// letters. Over ℚ the lattice presentation is not meaningful and the call is
/// refused.
LocalizedHCategory localize(const LinearCategory& H, const std::vector<InvertedMorphism>& S, int bound = 8);

/// Homotopy category of G with the adjacent identities inverted.
LocalizedHCategory localize_h(const GrothCategory& G, int bound = 8);

// --- pushout checks ---------------------------------------------------------------

struct HomComparison {
  std::string source, target;
  FinAbGroup before, after;
  bool isomorphic = false;
};

struct PushoutReport {
  bool f_fully_faithful = false;
  bool g_star_fully_faithful = false;
  bool f_star_fully_faithful = false;
  bool provenance = false;
  std::array<bool, 3> embeddings{};
  std::string localization_status;
  std::vector<HomComparison> square;    // hC(c, c') against the localization
  std::vector<HomComparison> quotient;  // hB(b, b') against the localization
  int cocones_checked = 0;
  Verdict pushout_certified = Verdict::Undetermined;
  std::string detail;
};

/// Requires f quasi fully-faithful (PreconditionError otherwise). Cocones are
/// functors into the one-object category with endomorphisms ℤ (plus a zero
/// object), with generator values in {−1, 0, 1}.
PushoutReport check_pushout_and_cofibration(const AInfFunctor& f, const AInfFunctor& g, int bound = 8);

// --- gluing -----------------------------------------------------------------------

struct Span {
  AInfFunctor f, g;
};

/// Functors between the parts of two spans commuting with f and g on objects.
struct SpanMap {
  AInfFunctor alpha_a, alpha_b, alpha_c;
};

struct GluingReport {
  Verdict spans_equivalent = Verdict::Undetermined;
  bool fully_faithful = false;
  Verdict induced_equivalence = Verdict::Undetermined;
  bool complete = false;
  std::string detail;
};

GluingReport check_gluing(const Span& s, const Span& t, const SpanMap& m, int bound = 8);

}  // namespace kzero
