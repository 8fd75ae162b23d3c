#pragma once

// Finite simplicial sets truncated at a dimension bound, finite categories,
// simplex categories, nerves, concordance of functors out of simplex
// categories, and a small Waldhausen S-construction feeding K_0.

#include "kzero/kgroup.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace kzero {

/// Monotone map [d] → [e] as its list of values.
using MonotoneMap = std::vector<int>;

/// All non-decreasing maps [n] → [d], in lexicographic order.
std::vector<MonotoneMap> monotone_maps(int n, int d);

struct SimplicialSet {
  int dim_bound = 0;
  std::vector<std::vector<std::string>> simplices;  // dimension → labels
  /// faces[n][i][x] = d_i x for 1 ≤ n ≤ dim_bound, 0 ≤ i ≤ n.
  std::vector<std::vector<std::vector<int>>> faces;
  /// degeneracies[n][i][x] = s_i x for 0 ≤ n < dim_bound, 0 ≤ i ≤ n.
  std::vector<std::vector<std::vector<int>>> degeneracies;

  int count(int n) const { return static_cast<int>(simplices[static_cast<std::size_t>(n)].size()); }
  int face(int n, int i, int x) const;
  int degeneracy(int n, int i, int x) const;
  /// X(θ)(y) for y an e-simplex and θ : [d] → [e].
  int act(const MonotoneMap& theta, int e, int y) const;
  int find(int n, const std::string& label) const;  // −1 when absent

  /// First failing simplicial identity, or nullopt.
  std::optional<std::string> identity_violation() const;
  /// Shape and simplicial identities; throws ValidationError.
  void validate() const;
};

/// Δ^d with n-simplices the monotone maps [n] → [d], n ≤ dim_bound. Labels
/// list the values, e.g. "011".
SimplicialSet standard_simplex(int d, int dim_bound);
SimplicialSet empty_simplicial_set(int dim_bound);
/// Levelwise product; labels "(x,y)".
SimplicialSet product(const SimplicialSet& X, const SimplicialSet& Y);
/// Simplices outside the images of the degeneracies.
std::vector<int> nondegenerate(const SimplicialSet& X, int n);

struct FiniteCategory {
  struct Arrow {
    std::string label;
    int source = 0;
    int target = 0;
  };
  std::vector<std::string> objects;
  std::vector<Arrow> arrows;
  std::vector<int> identities;
  /// composition[g][h] = g ∘ h when h ends where g starts, −1 otherwise.
  std::vector<std::vector<int>> composition;

  int object_count() const { return static_cast<int>(objects.size()); }
  int arrow_count() const { return static_cast<int>(arrows.size()); }
  int compose(int g, int h) const { return composition[static_cast<std::size_t>(g)][static_cast<std::size_t>(h)]; }
  std::vector<int> arrows_between(int a, int b) const;
  bool is_isomorphism(int f) const;

  /// Shape, identities, closure, and (optionally) associativity.
  std::optional<std::string> violation(bool associativity = true) const;
  void validate(bool associativity = true) const;
};

/// Δ(X) truncated at dim_bound: one object per simplex of dimension ≤ the
/// bound, morphisms x → y the maps θ with X(θ)(y) = x.
struct SimplexCategory {
  FiniteCategory category;
  std::vector<std::pair<int, int>> simplices;  // object → (dimension, index)
  std::vector<MonotoneMap> maps;               // arrow → θ
  int object_of(int n, int x) const;
  int arrow_of(int source, int target, const MonotoneMap& theta) const;  // −1 when absent
};

SimplexCategory simplex_category(const SimplicialSet& X, int dim_bound);

/// n-simplices are composable chains f_1, …, f_n (f_1 applied first).
SimplicialSet nerve(const FiniteCategory& C, int dim_bound);

// --- concordance ------------------------------------------------------------

struct SimplexFunctor {
  std::vector<int> objects;  // per object of the source
  std::vector<int> arrows;   // per arrow of the source
};

/// Identity and composition failures, or nullopt.
std::optional<std::string> functor_violation(const FiniteCategory& source, const FiniteCategory& target,
                                             const SimplexFunctor& F);

struct ConcordanceReport {
  bool pass = false;
  std::string witness;  // empty on pass
};

/// Checks that F̃ on Δ(Y × Δ^1) is a functor restricting to F0 on Y × {0} and
/// F1 on Y × {1}. A missing F̃ fails. Shape mismatches throw InputError.
ConcordanceReport concordance_check(const SimplicialSet& Y, const FiniteCategory& target, const SimplexFunctor& F0,
                                    const SimplexFunctor& F1, const std::optional<SimplexFunctor>& Ft, int dim_bound);

/// F composed with the projection Δ(Y × Δ^1) → Δ(Y).
SimplexFunctor constant_concordance(const SimplicialSet& Y, const SimplexFunctor& F, int dim_bound);

// --- Waldhausen toys --------------------------------------------------------

struct WaldhausenToy {
  std::string name;
  FiniteCategory category;
  int zero = 0;
  std::vector<bool> cofibration;       // per arrow
  std::vector<bool> weak_equivalence;  // per arrow
  /// Chosen quotient of each cofibration A ↣ B: the pushout along A → 0,
  /// recorded as the arrow B ↠ C.
  std::map<int, int> quotients;

  /// Zero object, 0 → A cofibrations, isomorphisms ⊂ weak equivalences ⊂
  /// cofibrations, weak equivalences closed under composition, and quotient
  /// table sanity. nullopt when all hold.
  std::optional<std::string> axiom_violation() const;
};

/// 𝔽_2^k for k ≤ max_rank with all linear maps; cofibrations are the
/// injections and weak equivalences the isomorphisms.
WaldhausenToy f2_free_modules(int max_rank);
/// One object and its identity.
WaldhausenToy zero_toy();

struct CofibrationSequence {
  int cofibration = 0;  // A ↣ B
  int quotient = 0;     // B ↠ C
  int a = 0, b = 0, c = 0;
};

struct SConstruction {
  std::vector<int> s0;  // {zero}
  std::vector<int> s1;  // objects
  std::vector<CofibrationSequence> s2;
  int depth = 2;
};

/// S_0, S_1 and S_2 (for depth ≤ 2). Throws ValidationError on an invalid toy.
SConstruction s_construction(const WaldhausenToy& W, int depth = 2);

/// K_0 presented by S_1 generators and S_2 relations [B] = [A] + [C]. Weak
/// equivalences A → B add [B] = [A].
K0Group k0_from_s_construction(const WaldhausenToy& W, bool weak_equivalence_relations = true);
K0Presentation s_presentation(const WaldhausenToy& W, bool weak_equivalence_relations = true);

}  // namespace kzero
