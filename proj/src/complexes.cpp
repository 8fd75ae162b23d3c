#include "kzero/complexes.hpp"

#include "kzero/error.hpp"

#include <boost/multiprecision/miller_rabin.hpp>

#include <algorithm>
#include <set>

namespace kzero {

namespace {

bool is_probable_prime(const Integer& p) {
  if (p < 2) return false;
  return boost::multiprecision::miller_rabin_test(p, 25);
}

}  // namespace

GroundRing GroundRing::prime_field(const Integer& p) {
  if (!is_probable_prime(p)) throw InputError("prime field modulus " + p.str() + " is not prime");
  return {Kind::PrimeField, p};
}

std::string GroundRing::name() const {
  switch (kind) {
    case Kind::Integers: return "Z";
    case Kind::Rationals: return "Q";
    case Kind::PrimeField: return "F" + p.str();
  }
  return "?";
}

Subquotient GroundRing::subquotient(const IntMatrix& outgoing, const IntMatrix& incoming) const {
  switch (kind) {
    case Kind::Integers: return kzero::subquotient(outgoing, incoming, IntegerDomain{});
    case Kind::Rationals: return kzero::subquotient(outgoing, incoming, IntegerDomain{}, true);
    case Kind::PrimeField: return kzero::subquotient(outgoing, incoming, PrimeFieldDomain{p});
  }
  return {};
}

IntMatrix GroundRing::normalize(const IntMatrix& A) const {
  return kind == Kind::PrimeField ? reduce_mod(A, p) : A;
}

Complex::Complex(GroundRing ring, Grading grading, std::map<int, Index> ranks,
                 std::map<int, IntMatrix> differentials)
    : ring_(ring), grading_(grading) {
  if (grading_.periodic) {
    if (grading_.period < 1) throw GradingError("period must be at least 1");
    grading_.min = 0;
    grading_.max = grading_.period - 1;
  }
  for (auto& [deg, r] : ranks) {
    if (r < 0) throw InputError("negative rank in degree " + std::to_string(deg));
    const int c = canonical(deg);
    if (!grading_.periodic && (deg < grading_.min || deg > grading_.max)) {
      if (r != 0) throw GradingError("rank outside grading window at degree " + std::to_string(deg));
      continue;
    }
    if (r != 0) ranks_[c] = r;
  }
  for (auto& [deg, d] : differentials) {
    const int c = canonical(deg);
    const Index rows = rank(deg - 1), cols = rank(deg);
    if (d.rows() != rows || d.cols() != cols)
      throw InputError("differential d_" + std::to_string(deg) + " has shape " +
                       std::to_string(d.rows()) + "x" + std::to_string(d.cols()) + ", expected " +
                       std::to_string(rows) + "x" + std::to_string(cols));
    IntMatrix m = ring_.normalize(d);
    if (rows > 0 && cols > 0 && !m.isZero()) diffs_[c] = std::move(m);
  }
  for (int deg : degrees()) {
    IntMatrix dd = ring_.normalize(differential(deg - 1) * differential(deg));
    if (!dd.isZero())
      throw ValidationError("d_" + std::to_string(deg - 1) + " . d_" + std::to_string(deg) +
                            " is non-zero");
  }
}

int Complex::canonical(int degree) const {
  if (!grading_.periodic) return degree;
  const int n = grading_.period;
  return ((degree % n) + n) % n;
}

std::vector<int> Complex::degrees() const {
  std::vector<int> out;
  for (int d = grading_.min; d <= grading_.max; ++d) out.push_back(d);
  return out;
}

Index Complex::rank(int degree) const {
  const auto it = ranks_.find(canonical(degree));
  return it == ranks_.end() ? 0 : it->second;
}

IntMatrix Complex::differential(int degree) const {
  const auto it = diffs_.find(canonical(degree));
  if (it != diffs_.end()) return it->second;
  return zero_matrix(rank(degree - 1), rank(degree));
}

bool Complex::operator==(const Complex& other) const {
  if (!(ring_ == other.ring_) || grading_.periodic != other.grading_.periodic) return false;
  if (grading_.periodic && grading_.period != other.grading_.period) return false;
  std::set<int> degs;
  for (int d : degrees()) degs.insert(d);
  for (int d : other.degrees()) degs.insert(d);
  for (int d : degs) {
    if (rank(d) != other.rank(d)) return false;
    if (differential(d) != other.differential(d)) return false;
  }
  return true;
}

IntMatrix ChainMap::component(int degree) const {
  const auto it = components.find(source.canonical(degree));
  if (it != components.end()) return it->second;
  return zero_matrix(target.rank(degree), source.rank(degree));
}

Subquotient homology_presentation(const Complex& C, int degree) {
  return C.ring().subquotient(C.differential(degree), C.differential(degree + 1));
}

FinAbGroup homology(const Complex& C, int degree) { return homology_presentation(C, degree).group; }

Integer euler_characteristic(const Complex& C) {
  if (C.is_periodic()) throw GradingError("Euler characteristic needs a bounded complex");
  Integer chi = 0;
  for (int d : C.degrees()) chi += (d % 2 == 0 ? 1 : -1) * Integer(C.rank(d));
  return chi;
}

Integer psi_class(const Complex& C) {
  if (!C.is_periodic()) throw GradingError("psi is defined on periodic complexes");
  if (C.period() % 2 != 0) throw PeriodError("period must be even");
  Integer psi = 0;
  for (int i = 0; i < C.period(); ++i)
    psi += (i % 2 == 0 ? 1 : -1) * Integer(homology(C, i).free_rank);
  return psi;
}

Complex fold(const Complex& C, int n) {
  if (C.is_periodic()) throw GradingError("fold expects a bounded complex");
  if (n <= 0 || n % 2 != 0) throw PeriodError("period must be even");
  // Block offsets: degree i contributes to class i mod n in ascending order.
  auto cls = [n](int i) { return ((i % n) + n) % n; };
  std::map<int, Index> ranks;
  std::map<int, Index> offset;
  for (int i : C.degrees()) {
    offset[i] = ranks[cls(i)];
    ranks[cls(i)] += C.rank(i);
  }
  std::map<int, IntMatrix> diffs;
  for (int j = 0; j < n; ++j) diffs[j] = zero_matrix(ranks[cls(j - 1)], ranks[j]);
  for (int i : C.degrees()) {
    if (C.rank(i) == 0 || C.rank(i - 1) == 0) continue;
    diffs[cls(i)].block(offset[i - 1], offset[i], C.rank(i - 1), C.rank(i)) = C.differential(i);
  }
  return Complex::periodic(C.ring(), n, ranks, diffs);
}

Complex shift(const Complex& C, int s) {
  const Integer sign = (s % 2 == 0) ? 1 : -1;
  std::map<int, Index> ranks;
  std::map<int, IntMatrix> diffs;
  for (int d : C.degrees()) {
    ranks[d + s] = C.rank(d);
    diffs[d + s] = C.differential(d) * sign;
  }
  if (C.is_periodic()) {
    std::map<int, Index> r2;
    std::map<int, IntMatrix> d2;
    for (auto& [d, r] : ranks) r2[C.canonical(d)] = r;
    for (auto& [d, m] : diffs) d2[C.canonical(d)] = m;
    return Complex::periodic(C.ring(), C.period(), r2, d2);
  }
  const auto& g = C.grading();
  return Complex::bounded(C.ring(), g.min + s, g.max + s, ranks, diffs);
}

void validate_chain_map(const ChainMap& f) {
  const Complex& A = f.source;
  const Complex& B = f.target;
  if (!(A.ring() == B.ring())) throw InputError("chain map between complexes over different rings");
  if (A.is_periodic() != B.is_periodic() || (A.is_periodic() && A.period() != B.period()))
    throw GradingError("chain map between complexes of different grading");
  std::set<int> degs;
  for (int d : A.degrees()) degs.insert(d);
  for (int d : B.degrees()) degs.insert(d);
  for (int d : degs) {
    const IntMatrix fd = f.component(d);
    if (fd.rows() != B.rank(d) || fd.cols() != A.rank(d))
      throw InputError("chain map component f_" + std::to_string(d) + " has wrong shape");
  }
  for (int d : degs) {
    const IntMatrix lhs = B.differential(d) * f.component(d);
    const IntMatrix rhs = f.component(d - 1) * A.differential(d);
    if (A.ring().normalize(lhs - rhs).isZero()) continue;
    throw ValidationError("not a chain map: d f != f d in degree " + std::to_string(d));
  }
}

Complex mapping_cone(const ChainMap& f) {
  validate_chain_map(f);
  const Complex& A = f.source;
  const Complex& B = f.target;
  std::map<int, Index> ranks;
  std::map<int, IntMatrix> diffs;
  std::vector<int> degs;
  if (A.is_periodic()) {
    for (int d = 0; d < A.period(); ++d) degs.push_back(d);
  } else {
    const auto& ga = A.grading();
    const auto& gb = B.grading();
    int lo = std::min(gb.min, ga.min + 1), hi = std::max(gb.max, ga.max + 1);
    if (gb.max < gb.min) lo = ga.min + 1, hi = ga.max + 1;
    if (ga.max < ga.min) lo = gb.min, hi = gb.max;
    for (int d = lo; d <= hi; ++d) degs.push_back(d);
  }
  for (int d : degs) ranks[d] = B.rank(d) + A.rank(d - 1);
  for (int d : degs) {
    const Index rb = B.rank(d), ra = A.rank(d - 1);
    const Index rb1 = B.rank(d - 1), ra1 = A.rank(d - 2);
    IntMatrix m = zero_matrix(rb1 + ra1, rb + ra);
    if (rb1 > 0 && rb > 0) m.topLeftCorner(rb1, rb) = B.differential(d);
    if (rb1 > 0 && ra > 0) m.topRightCorner(rb1, ra) = f.component(d - 1);
    if (ra1 > 0 && ra > 0) m.bottomRightCorner(ra1, ra) = -A.differential(d - 1);
    diffs[d] = m;
  }
  if (A.is_periodic()) return Complex::periodic(A.ring(), A.period(), ranks, diffs);
  if (degs.empty()) return Complex::bounded(A.ring(), 0, -1, {}, {});
  return Complex::bounded(A.ring(), degs.front(), degs.back(), ranks, diffs);
}

Complex direct_sum(const Complex& A, const Complex& B) {
  if (!(A.ring() == B.ring())) throw InputError("direct sum over different rings");
  if (A.is_periodic() != B.is_periodic() || (A.is_periodic() && A.period() != B.period()))
    throw GradingError("direct sum of complexes with different grading");
  std::vector<int> degs;
  if (A.is_periodic()) {
    degs = A.degrees();
  } else {
    int lo = std::min(A.grading().min, B.grading().min);
    int hi = std::max(A.grading().max, B.grading().max);
    if (A.grading().max < A.grading().min) lo = B.grading().min, hi = B.grading().max;
    if (B.grading().max < B.grading().min) lo = A.grading().min, hi = A.grading().max;
    for (int d = lo; d <= hi; ++d) degs.push_back(d);
  }
  std::map<int, Index> ranks;
  std::map<int, IntMatrix> diffs;
  for (int d : degs) ranks[d] = A.rank(d) + B.rank(d);
  for (int d : degs) {
    IntMatrix m = zero_matrix(A.rank(d - 1) + B.rank(d - 1), A.rank(d) + B.rank(d));
    if (A.rank(d - 1) > 0 && A.rank(d) > 0) m.topLeftCorner(A.rank(d - 1), A.rank(d)) = A.differential(d);
    if (B.rank(d - 1) > 0 && B.rank(d) > 0)
      m.bottomRightCorner(B.rank(d - 1), B.rank(d)) = B.differential(d);
    diffs[d] = m;
  }
  if (A.is_periodic()) return Complex::periodic(A.ring(), A.period(), ranks, diffs);
  if (degs.empty()) return Complex::bounded(A.ring(), 0, -1, {}, {});
  return Complex::bounded(A.ring(), degs.front(), degs.back(), ranks, diffs);
}

bool is_acyclic(const Complex& C) {
  for (int d : C.degrees())
    if (!homology(C, d).is_zero()) return false;
  return true;
}

}  // namespace kzero
