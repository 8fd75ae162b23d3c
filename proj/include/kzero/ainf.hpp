#pragma once

// Finite-basis A∞ categories and functors.
//
// Conventions. Composition arguments are listed last-morphism-first:
// μ_k(x_1, …, x_k) with x_{i+1} : X → Y and x_i : Y → Z, landing in
// hom(source(x_k), target(x_1)). μ_k has homological degree k − 2 and the
// structure relations are
//
//   Σ_{r+s+t=k} (−1)^{r+st} μ_{r+1+t}(1^r ⊗ μ_s ⊗ 1^t) = 0
//
// with the Koszul rule (1^r ⊗ μ_s ⊗ 1^t)(x) = (−1)^{s·(|x_1|+…+|x_r|)} (…).
// Units are strict: μ_2(u, x) = x = μ_2(x, u) and μ_k vanishes on units for
// k ≠ 2.
//
// On the shifted module sA the maps m_k(sx_1, …, sx_k) = (−1)^{Σ_i (k−i)|x_i|} s μ_k(x)
// satisfy the bar identity Σ m(1^r ⊗ m_s ⊗ 1^t) = 0 with plain Koszul signs.
// Functor components F_k (degree k − 1) are shifted with the same sign, and
// the functor relations are the bar identity f ∘ D = D ∘ f read back through
// the shift.

#include "kzero/complexes.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace kzero {

using Word = std::vector<int>;
using Combination = std::map<int, Integer>;
using StructureTable = std::map<Word, Combination>;

void add_scaled(Combination& acc, const Combination& x, const Integer& c);
Combination scaled(const Combination& x, const Integer& c);
void reduce_coefficients(Combination& x, const Integer& modulus);

struct BasisElement {
  std::string label;
  int source = 0;
  int target = 0;
  int degree = 0;
};

struct AInfCategory {
  GroundRing ring;
  int period = 0;  // 0 for ℤ-graded, otherwise the even period n of ℤ/n
  std::vector<std::string> objects;
  std::vector<BasisElement> basis;
  std::vector<int> units;  // basis index per object, −1 for a zero object
  int max_arity = 4;
  std::map<int, StructureTable> mu;  // arity → table; absent entries are zero
  bool finite_type = false;          // Hochschild finiteness certificate supplied
  bool morita_asserted = false;      // user-asserted Morita-equivalence to an algebra

  int object_count() const { return static_cast<int>(objects.size()); }
  int size() const { return static_cast<int>(basis.size()); }
  int degree_class(int d) const { return period == 0 ? d : ((d % period) + period) % period; }
  int parity(int idx) const { return ((basis[static_cast<std::size_t>(idx)].degree % 2) + 2) % 2; }
  std::vector<int> hom(int a, int b) const;
  std::vector<int> hom(int a, int b, int degree) const;
  bool is_unit(int idx) const;
  int object_index(const std::string& name) const;
  int basis_index(const std::string& label) const;

  /// Listed words only: x_{i+1} ends where x_i starts.
  bool composable(const Word& w) const;
  Combination apply(int k, const Word& w) const;
};

/// Shape, degree, and strict-unitality checks. Throws ValidationError.
void validate_structure(const AInfCategory& C);

/// Table entry by labels: μ_k(word) = Σ c · label.
void set_mu(AInfCategory& C, const std::vector<std::string>& word,
            const std::vector<std::pair<long, std::string>>& output);

struct RelationReport {
  bool ok = true;
  int arity = 0;
  Word witness;
  Combination residual;
  std::string reason;  // relation, unit, degree, hom, composability

  std::string describe(const AInfCategory& C) const { return describe(C, C); }
  /// Functor reports: the witness lies in the source, the residual in the target.
  std::string describe(const AInfCategory& source, const AInfCategory& target) const;
};

RelationReport check_ainf_relations(const AInfCategory& C, int max_arity);
/// Left-hand side of the arity-|x| relation evaluated on the word x.
Combination ainf_relation_residual(const AInfCategory& C, const Word& x);

/// Shifted (bar) structure maps m_k = ± μ_k on sA with |sx| = |x| + 1, for
/// which the relations read Σ m(1^r ⊗ m_s ⊗ 1^t) = 0 with plain Koszul signs.
int shifted_sign(const AInfCategory& C, const Word& w);
Combination shifted_mu(const AInfCategory& C, int k, const Word& w);

/// Chain complex hom(a, b) with μ_1 as differential (bounded over the
/// occurring degrees, or periodic).
Complex hom_complex(const AInfCategory& C, int a, int b);

// --- homotopy category -----------------------------------------------------

struct LinearCategory {
  struct Hom {
    std::vector<Integer> orders;  // generator orders, 0 for free
    FinAbGroup group() const { return FinAbGroup::from_orders(orders); }
    Index size() const { return static_cast<Index>(orders.size()); }
  };

  std::vector<std::string> objects;
  Integer modulus = 0;     // p over 𝔽_p
  bool rational = false;  // hom lattices stand for ℚ-vector spaces
  std::map<std::pair<int, int>, Hom> homs;
  /// (a, b, c) ↦ table[i][j] = g_i ∘ h_j for g_i ∈ H(b, c), h_j ∈ H(a, b).
  std::map<std::tuple<int, int, int>, std::vector<std::vector<IntVector>>> composition;
  std::vector<IntVector> units;
  /// Cycle-level presentations when derived from an A∞ category.
  std::map<std::pair<int, int>, Subquotient> presentations;

  int object_count() const { return static_cast<int>(objects.size()); }
  const Hom& hom(int a, int b) const { return homs.at({a, b}); }
  IntVector reduce(int a, int b, IntVector v) const;
  IntVector compose(int a, int b, int c, const IntVector& g, const IntVector& h) const;
  bool is_zero_object(int a) const;
};

/// Exact associativity and unit checks on generators; nullopt when lawful,
/// otherwise a description of the first violation.
std::optional<std::string> verify_linear_category(const LinearCategory& L);

LinearCategory homotopy_category(const AInfCategory& C);

enum class Verdict { True, False, Undetermined };
std::string to_string(Verdict v);

/// Bounded isomorphism search in a linear category: coefficients in
/// {−bound..bound} on free coordinates, full residues on torsion, and
/// exhaustive over 𝔽_p.
Verdict objects_isomorphic(const LinearCategory& L, int x, int y, int bound = 2);

// --- functors ----------------------------------------------------------------

struct AInfFunctor {
  std::shared_ptr<const AInfCategory> source, target;
  std::vector<int> object_map;
  std::map<int, StructureTable> components;  // arity k ≥ 1
  int max_arity = 4;

  Combination apply(int k, const Word& w) const;
};

void validate_functor_structure(const AInfFunctor& F);
RelationReport check_functor_relations(const AInfFunctor& F, int max_arity);
/// Difference of the two sides of the functor relation on the word x.
Combination functor_relation_residual(const AInfFunctor& F, const Word& x);

AInfFunctor identity_functor(std::shared_ptr<const AInfCategory> C);
/// Full subcategory on the listed objects, with its strict inclusion.
std::shared_ptr<const AInfCategory> full_subcategory(const AInfCategory& C, const std::vector<int>& objects);
AInfFunctor inclusion_functor(std::shared_ptr<const AInfCategory> sub, std::shared_ptr<const AInfCategory> ambient,
                              const std::vector<int>& object_map);
AInfFunctor compose(const AInfFunctor& G, const AInfFunctor& F);  // G ∘ F

/// Class in H_0(a, b) of a degree-0 cycle given on the basis.
IntVector h0_class(const AInfCategory& C, const LinearCategory& h, int a, int b, const Combination& cycle);

/// Matrix of the induced map H_0(a, b) → H_0(F a, F b) in generator coordinates.
IntMatrix induced_h0_map(const AInfFunctor& F, const LinearCategory& hs, const LinearCategory& ht, int a, int b);

bool is_quasi_fully_faithful(const AInfFunctor& F);
Verdict is_quasi_equivalence(const AInfFunctor& F, int bound = 2);

// --- constructions -----------------------------------------------------------

/// Product A × B of single-object strictly unital algebras, presented on the
/// basis {1, e, a_i, b_j} with e the idempotent unit of A.
AInfCategory product_algebra(const AInfCategory& A, const AInfCategory& B);

/// One object, basis {1}, μ_2(1, 1) = 1.
AInfCategory ground_algebra(GroundRing ring = GroundRing::integers(), int period = 0);

/// One object with a zero unit and no morphisms.
AInfCategory zero_category(GroundRing ring = GroundRing::integers(), int period = 0);

}  // namespace kzero
