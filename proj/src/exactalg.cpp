#include "kzero/exactalg.hpp"

#include "kzero/error.hpp"

#include <algorithm>
#include <sstream>

namespace kzero {

Integer PrimeFieldDomain::inverse(const Integer& a) const {
  // Extended Euclid on (a mod p, p).
  Integer r0 = reduce(a), r1 = p, s0 = 1, s1 = 0;
  if (r0 == 0) throw ValidationError("division by zero in prime field");
  while (r1 != 0) {
    const Integer q = r0 / r1;
    Integer t = r0 - q * r1;
    r0 = r1;
    r1 = t;
    t = s0 - q * s1;
    s0 = s1;
    s1 = t;
  }
  return reduce(s0);
}

FinAbGroup FinAbGroup::from_orders(const std::vector<Integer>& orders) {
  // Diagonal relation matrix, then SNF for the divisibility chain.
  FinAbGroup g;
  std::vector<Integer> finite;
  for (const auto& o : orders) {
    if (o == 0)
      ++g.free_rank;
    else if (abs(o) != 1)
      finite.push_back(abs(o));
  }
  if (finite.empty()) return g;
  IntMatrix D = IntMatrix::Zero(static_cast<Index>(finite.size()), static_cast<Index>(finite.size()));
  for (std::size_t i = 0; i < finite.size(); ++i) D(static_cast<Index>(i), static_cast<Index>(i)) = finite[i];
  for (const auto& d : smith_normal_form(D).diag)
    if (d > 1) g.torsion.push_back(d);
  return g;
}

std::string FinAbGroup::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& t : torsion) {
    os << (first ? "" : " + ") << "Z/" << t;
    first = false;
  }
  if (free_rank > 0) {
    os << (first ? "" : " + ") << "Z";
    if (free_rank > 1) os << "^" << free_rank;
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

FinAbGroup abelian_group_from_relations(Index generators, const IntMatrix& relations) {
  return quotient_by_rows(generators, relations).group;
}

QuotientMap quotient_by_rows(Index generators, const IntMatrix& relations) {
  if (relations.rows() > 0 && relations.cols() != generators)
    throw InputError("relation matrix has " + std::to_string(relations.cols()) +
                     " columns, expected " + std::to_string(generators));
  const IntMatrix R = relations.rows() == 0 ? IntMatrix(0, generators) : relations;
  const auto s = smith_normal_form(R);
  // Row space of R equals row space of D·V⁻¹, so x ↦ x·V sends it onto
  // row space of D.
  QuotientMap q;
  std::vector<Index> rows;
  for (Index i = 0; i < generators; ++i) {
    if (i < s.rank) {
      const Integer& d = s.diag[static_cast<std::size_t>(i)];
      if (d == 1) continue;
      q.orders.push_back(d);
    } else {
      q.orders.push_back(0);
    }
    rows.push_back(i);
  }
  q.coordinates = IntMatrix(static_cast<Index>(rows.size()), generators);
  q.representatives = IntMatrix(generators, static_cast<Index>(rows.size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    q.coordinates.row(static_cast<Index>(r)) = s.V.col(rows[r]).transpose();
    q.representatives.col(static_cast<Index>(r)) = s.Vinv.row(rows[r]).transpose();
  }
  for (Index r = 0; r < q.coordinates.rows(); ++r) {
    const Integer& d = q.orders[static_cast<std::size_t>(r)];
    if (d == 0) continue;
    for (Index c = 0; c < generators; ++c) {
      Integer v = q.coordinates(r, c) % d;
      q.coordinates(r, c) = v < 0 ? Integer(v + d) : v;
    }
  }
  q.group = FinAbGroup::from_orders(q.orders);
  return q;
}

IntVector QuotientMap::classify(const IntVector& x) const {
  IntVector y = coordinates * x;
  for (Index i = 0; i < y.size(); ++i) {
    const Integer& d = orders[static_cast<std::size_t>(i)];
    if (d == 0) continue;
    Integer v = y(i) % d;
    y(i) = v < 0 ? Integer(v + d) : v;
  }
  return y;
}

IntVector Subquotient::reduce(IntVector y) const {
  for (Index i = 0; i < y.size(); ++i) {
    const Integer& d = modulus != 0 ? modulus : orders[static_cast<std::size_t>(i)];
    if (d == 0) continue;
    Integer v = y(i) % d;
    y(i) = v < 0 ? Integer(v + d) : v;
  }
  return y;
}

IntVector Subquotient::classify(const IntVector& cycle) const { return reduce(projection * cycle); }

IntMatrix image_basis(const IntMatrix& A) {
  const auto s = smith_normal_form(A);
  IntMatrix B(A.rows(), s.rank);
  for (Index j = 0; j < s.rank; ++j) B.col(j) = s.Uinv.col(j) * s.diag[static_cast<std::size_t>(j)];
  return B;
}

IntMatrix kernel_basis(const IntMatrix& A) {
  const auto s = smith_normal_form(A);
  return s.V.rightCols(A.cols() - s.rank);
}

IntMatrix reduce_mod(const IntMatrix& A, const Integer& p) {
  PrimeFieldDomain dom{p};
  return A.unaryExpr([&](const Integer& x) { return dom.reduce(x); });
}

bool is_group_isomorphism(const IntMatrix& phi, const std::vector<Integer>& source_orders,
                          const std::vector<Integer>& target_orders, const Integer& modulus) {
  const Index n = static_cast<Index>(target_orders.size());
  if (phi.rows() != n || phi.cols() != static_cast<Index>(source_orders.size()))
    throw InputError("homomorphism matrix shape does not match generator counts");
  if (modulus != 0) {
    // Vector spaces: bijective iff square of full rank.
    if (phi.rows() != phi.cols()) return false;
    return smith_normal_form(phi, PrimeFieldDomain{modulus}).rank == n;
  }
  if (FinAbGroup::from_orders(source_orders) != FinAbGroup::from_orders(target_orders)) return false;
  // Isomorphic finitely generated groups: bijective iff surjective.
  IntMatrix aug = IntMatrix::Zero(n, phi.cols() + n);
  aug.leftCols(phi.cols()) = phi;
  for (Index i = 0; i < n; ++i) aug(i, phi.cols() + i) = target_orders[static_cast<std::size_t>(i)];
  const auto s = smith_normal_form(aug);
  if (s.rank != n) return false;
  for (Index i = 0; i < n; ++i)
    if (s.diag[static_cast<std::size_t>(i)] != 1) return false;
  return true;
}

std::optional<IntVector> solve_linear(const IntMatrix& A, const IntVector& b, const Integer& modulus) {
  if (b.size() != A.rows()) throw InputError("right-hand side length does not match matrix rows");
  auto solve = [&](const auto& dom) -> std::optional<IntVector> {
    const auto s = smith_normal_form(A, dom);
    IntVector c = s.U * b;
    IntVector y = IntVector::Zero(A.cols());
    for (Index i = 0; i < A.rows(); ++i) {
      const Integer ci = dom.reduce(c(i));
      if (i < s.rank) {
        const Integer& d = s.diag[static_cast<std::size_t>(i)];
        if (!dom.is_field() && ci % d != 0) return std::nullopt;
        y(i) = dom.quotient(ci, d);
      } else if (ci != 0) {
        return std::nullopt;
      }
    }
    IntVector x = s.V * y;
    return x.unaryExpr([&](const Integer& v) { return dom.reduce(v); }).eval();
  };
  if (modulus != 0) return solve(PrimeFieldDomain{modulus});
  return solve(IntegerDomain{});
}

}  // namespace kzero
