#pragma once

// Exact integer linear algebra: Smith normal form over Euclidean domains,
// finitely generated abelian groups in invariant-factor form, and
// subquotient (homology) presentations with explicit class coordinates.

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Core>

#include <compare>
#include <cstdint>
#include <string>
#include <utility>
#include <optional>
#include <vector>

namespace kzero {

using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using IntMatrix = Matrix<Integer>;
using IntVector = Vector<Integer>;
using Index = Eigen::Index;

inline IntMatrix zero_matrix(Index rows, Index cols) { return IntMatrix::Zero(rows, cols); }
inline IntMatrix identity_matrix(Index n) { return IntMatrix::Identity(n, n); }

/// Euclidean structure of ℤ. Pivots are chosen by absolute value and the
/// canonical associate of a non-zero element is its absolute value.
struct IntegerDomain {
  Integer reduce(const Integer& x) const { return x; }
  bool smaller(const Integer& a, const Integer& b) const { return abs(a) < abs(b); }
  Integer quotient(const Integer& a, const Integer& b) const { return a / b; }
  Integer canonical_unit(const Integer& a) const { return a < 0 ? Integer(-1) : Integer(1); }
  Integer unit_inverse(const Integer& u) const { return u; }
  bool is_field() const { return false; }
};

/// 𝔽_p with representatives in [0, p).
struct PrimeFieldDomain {
  Integer p;

  Integer reduce(const Integer& x) const {
    Integer r = x % p;
    return r < 0 ? Integer(r + p) : r;
  }
  bool smaller(const Integer&, const Integer&) const { return false; }
  Integer inverse(const Integer& a) const;
  Integer quotient(const Integer& a, const Integer& b) const { return reduce(a * inverse(b)); }
  Integer canonical_unit(const Integer& a) const { return inverse(a); }
  Integer unit_inverse(const Integer& u) const { return inverse(u); }
  bool is_field() const { return true; }
};

/// U·A·V = D with U, V invertible over the domain and D diagonal in
/// divisibility order. The inverses are tracked alongside so callers never
/// need to invert a unimodular matrix themselves.
template <typename Scalar>
struct SmithForm {
  Matrix<Scalar> U, Uinv, D, V, Vinv;
  std::vector<Scalar> diag;  // min(rows, cols) entries, zeros trailing
  Index rank = 0;
};

template <typename Domain>
SmithForm<Integer> smith_normal_form(const IntMatrix& A, const Domain& dom);

inline SmithForm<Integer> smith_normal_form(const IntMatrix& A) {
  return smith_normal_form(A, IntegerDomain{});
}

/// Finitely generated abelian group ℤ^free_rank ⊕ ⊕ ℤ/t_i, canonical form:
/// torsion entries ≥ 2, each dividing the next.
struct FinAbGroup {
  Index free_rank = 0;
  std::vector<Integer> torsion;

  bool is_zero() const { return free_rank == 0 && torsion.empty(); }
  bool operator==(const FinAbGroup&) const = default;

  /// Canonicalizes an arbitrary list of cyclic orders (0 meaning ℤ).
  static FinAbGroup from_orders(const std::vector<Integer>& orders);
  std::string to_string() const;
};

/// Group ℤ^generators / (row space of relations).
FinAbGroup abelian_group_from_relations(Index generators, const IntMatrix& relations);

inline bool groups_isomorphic(const FinAbGroup& G, const FinAbGroup& H) { return G == H; }

/// Quotient ℤ^n / rowspace(R) together with the coordinate map of the
/// standard basis vectors. Coordinates are ordered torsion-first then free,
/// matching `orders` (0 for free coordinates).
struct QuotientMap {
  FinAbGroup group;
  std::vector<Integer> orders;
  IntMatrix coordinates;  // orders.size() × n, column j is the class of e_j
  IntMatrix representatives;  // n × orders.size(), column r maps to the r-th unit coordinate

  IntVector classify(const IntVector& x) const;
};

QuotientMap quotient_by_rows(Index generators, const IntMatrix& relations);

/// ker(outgoing) / im(incoming) for a composable pair C' → C → C''.
/// Generators are ambient vectors in C; `classify` returns reduced
/// coordinates of a cycle.
struct Subquotient {
  FinAbGroup group;
  std::vector<Integer> orders;  // per generator: torsion order, or 0 for free
  IntMatrix generators;         // ambient × orders.size()
  IntMatrix projection;         // orders.size() × ambient, valid on cycles
  Integer modulus = 0;          // p for 𝔽_p, 0 otherwise

  Index size() const { return static_cast<Index>(orders.size()); }
  IntVector classify(const IntVector& cycle) const;
  IntVector reduce(IntVector coords) const;
};

template <typename Domain>
Subquotient subquotient(const IntMatrix& outgoing, const IntMatrix& incoming, const Domain& dom,
                        bool drop_torsion = false);

/// Basis (columns) of the column space of A over ℤ.
IntMatrix image_basis(const IntMatrix& A);
/// Basis (columns) of the kernel of A over ℤ; saturated.
IntMatrix kernel_basis(const IntMatrix& A);

/// Whether the homomorphism with matrix `phi` (target coords × source gens)
/// between groups with the given generator orders is bijective.
bool is_group_isomorphism(const IntMatrix& phi, const std::vector<Integer>& source_orders,
                          const std::vector<Integer>& target_orders, const Integer& modulus = 0);

IntMatrix reduce_mod(const IntMatrix& A, const Integer& p);

/// Some x with A x = b over ℤ (or over 𝔽_p when modulus ≠ 0), if one exists.
std::optional<IntVector> solve_linear(const IntMatrix& A, const IntVector& b, const Integer& modulus = 0);

// ---------------------------------------------------------------------------

template <typename Domain>
SmithForm<Integer> smith_normal_form(const IntMatrix& input, const Domain& dom) {
  const Index m = input.rows();
  const Index n = input.cols();
  SmithForm<Integer> s;
  IntMatrix& A = s.D;
  A = input.unaryExpr([&](const Integer& x) { return dom.reduce(x); });
  s.U = identity_matrix(m);
  s.Uinv = identity_matrix(m);
  s.V = identity_matrix(n);
  s.Vinv = identity_matrix(n);

  // Elementary operations, each mirrored into the transform and its inverse.
  auto row_addmul = [&](Index dst, Index src, const Integer& q) {  // row_dst -= q row_src
    for (Index j = 0; j < n; ++j) A(dst, j) = dom.reduce(A(dst, j) - q * A(src, j));
    for (Index j = 0; j < m; ++j) s.U(dst, j) = dom.reduce(s.U(dst, j) - q * s.U(src, j));
    for (Index i = 0; i < m; ++i) s.Uinv(i, src) = dom.reduce(s.Uinv(i, src) + q * s.Uinv(i, dst));
  };
  auto col_addmul = [&](Index dst, Index src, const Integer& q) {  // col_dst -= q col_src
    for (Index i = 0; i < m; ++i) A(i, dst) = dom.reduce(A(i, dst) - q * A(i, src));
    for (Index i = 0; i < n; ++i) s.V(i, dst) = dom.reduce(s.V(i, dst) - q * s.V(i, src));
    for (Index j = 0; j < n; ++j) s.Vinv(src, j) = dom.reduce(s.Vinv(src, j) + q * s.Vinv(dst, j));
  };
  auto row_swap = [&](Index a, Index b) {
    if (a == b) return;
    A.row(a).swap(A.row(b));
    s.U.row(a).swap(s.U.row(b));
    s.Uinv.col(a).swap(s.Uinv.col(b));
  };
  auto col_swap = [&](Index a, Index b) {
    if (a == b) return;
    A.col(a).swap(A.col(b));
    s.V.col(a).swap(s.V.col(b));
    s.Vinv.row(a).swap(s.Vinv.row(b));
  };
  auto row_scale = [&](Index r, const Integer& u) {
    const Integer uinv = dom.unit_inverse(u);
    for (Index j = 0; j < n; ++j) A(r, j) = dom.reduce(A(r, j) * u);
    for (Index j = 0; j < m; ++j) s.U(r, j) = dom.reduce(s.U(r, j) * u);
    for (Index i = 0; i < m; ++i) s.Uinv(i, r) = dom.reduce(s.Uinv(i, r) * uinv);
  };

  const Index steps = std::min(m, n);
  Index t = 0;
  for (; t < steps; ++t) {
    for (;;) {
      // Pivot: non-zero entry of least norm in the trailing block.
      Index pi = -1, pj = -1;
      for (Index j = t; j < n; ++j)
        for (Index i = t; i < m; ++i)
          if (A(i, j) != 0 && (pi < 0 || dom.smaller(A(i, j), A(pi, pj)))) {
            pi = i;
            pj = j;
          }
      if (pi < 0) break;
      row_swap(t, pi);
      col_swap(t, pj);

      bool clean = true;
      for (Index i = t + 1; i < m; ++i) {
        if (A(i, t) == 0) continue;
        row_addmul(i, t, dom.quotient(A(i, t), A(t, t)));
        if (A(i, t) != 0) clean = false;
      }
      for (Index j = t + 1; j < n; ++j) {
        if (A(t, j) == 0) continue;
        col_addmul(j, t, dom.quotient(A(t, j), A(t, t)));
        if (A(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      // Divisibility fix-up: fold an offending row into the pivot row.
      Index bad = -1;
      if (!dom.is_field()) {
        for (Index i = t + 1; i < m && bad < 0; ++i)
          for (Index j = t + 1; j < n; ++j)
            if (A(i, j) % A(t, t) != 0) {
              bad = i;
              break;
            }
      }
      if (bad >= 0) {
        row_addmul(t, bad, Integer(-1));
        continue;
      }
      break;
    }
    if (A(t, t) == 0) break;
    row_scale(t, dom.canonical_unit(A(t, t)));
  }
  s.rank = t;
  s.diag.resize(static_cast<std::size_t>(steps));
  for (Index i = 0; i < steps; ++i) s.diag[static_cast<std::size_t>(i)] = A(i, i);
  return s;
}

template <typename Domain>
Subquotient subquotient(const IntMatrix& outgoing, const IntMatrix& incoming, const Domain& dom,
                        bool drop_torsion) {
  const Index ambient = outgoing.cols();
  Subquotient out;
  if constexpr (std::is_same_v<Domain, PrimeFieldDomain>) out.modulus = dom.p;

  const auto outer = smith_normal_form(outgoing, dom);
  const Index r = outer.rank;
  const Index k = ambient - r;
  const IntMatrix K = outer.V.rightCols(k);
  const IntMatrix Kinv = outer.Vinv.bottomRows(k);

  IntMatrix M = Kinv * incoming;
  M = M.unaryExpr([&](const Integer& x) { return dom.reduce(x); });
  const auto inner = smith_normal_form(M, dom);
  const Index r2 = inner.rank;

  std::vector<Index> keep;
  for (Index j = 0; j < k; ++j) {
    if (j < r2) {
      const Integer& d = inner.diag[static_cast<std::size_t>(j)];
      if (drop_torsion || dom.is_field() || d == 1) continue;
      out.orders.push_back(d);
    } else {
      out.orders.push_back(0);
    }
    keep.push_back(j);
  }
  const Index g = static_cast<Index>(keep.size());
  const IntMatrix gens_all = K * inner.Uinv;
  const IntMatrix proj_all = inner.U * Kinv;
  out.generators = IntMatrix(ambient, g);
  out.projection = IntMatrix(g, ambient);
  for (Index c = 0; c < g; ++c) {
    out.generators.col(c) = gens_all.col(keep[static_cast<std::size_t>(c)]);
    out.projection.row(c) = proj_all.row(keep[static_cast<std::size_t>(c)]);
  }
  if (out.modulus != 0) {
    out.generators = reduce_mod(out.generators, out.modulus);
    out.projection = reduce_mod(out.projection, out.modulus);
  }
  out.group = FinAbGroup::from_orders(out.orders);
  return out;
}

}  // namespace kzero
