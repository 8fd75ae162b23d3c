#include "kzero/kgroup.hpp"

#include "kzero/error.hpp"

#include <algorithm>
#include <set>

namespace kzero {

void K0Presentation::validate() const {
  std::set<std::string> seen;
  for (const auto& g : generators)
    if (!seen.insert(g).second) throw InputError("duplicate generator \"" + g + "\"");
  for (const auto& r : relations)
    for (const auto& x : r)
      if (!seen.count(x)) throw InputError("relation references undeclared generator \"" + x + "\"");
}

K0Group grothendieck_group(const K0Presentation& P) {
  P.validate();
  const Index n = static_cast<Index>(P.generators.size());
  std::map<std::string, Index> at;
  for (Index i = 0; i < n; ++i) at[P.generators[static_cast<std::size_t>(i)]] = i;
  IntMatrix R = zero_matrix(static_cast<Index>(P.relations.size()), n);
  for (std::size_t r = 0; r < P.relations.size(); ++r) {
    const auto& [a, b, c] = P.relations[r];
    const Index row = static_cast<Index>(r);
    R(row, at[b]) += 1;
    R(row, at[a]) -= 1;
    R(row, at[c]) -= 1;
  }
  K0Group G;
  G.generators = P.generators;
  G.quotient = quotient_by_rows(n, R);
  G.group = G.quotient.group;
  G.orders = G.quotient.orders;
  return G;
}

K0Class K0Group::class_of(const std::string& generator) const { return class_of({{generator, 1}}); }

K0Class K0Group::class_of(const std::map<std::string, Integer>& combination) const {
  IntVector x = IntVector::Zero(static_cast<Index>(generators.size()));
  for (const auto& [g, c] : combination) {
    const auto it = std::find(generators.begin(), generators.end(), g);
    if (it == generators.end()) throw InputError("unknown generator \"" + g + "\"");
    x(it - generators.begin()) += c;
  }
  return {quotient.classify(x)};
}

K0Class K0Group::add(const K0Class& a, const K0Class& b) const {
  IntVector y = a.coordinates + b.coordinates;
  for (Index i = 0; i < y.size(); ++i) {
    const Integer& d = orders[static_cast<std::size_t>(i)];
    if (d != 0) y(i) = ((y(i) % d) + d) % d;
  }
  return {y};
}

K0Class K0Group::scale(const K0Class& a, const Integer& c) const {
  IntVector y = a.coordinates * c;
  for (Index i = 0; i < y.size(); ++i) {
    const Integer& d = orders[static_cast<std::size_t>(i)];
    if (d != 0) y(i) = ((y(i) % d) + d) % d;
  }
  return {y};
}

K0Presentation standard_presentation(int max_rank) {
  if (max_rank < 1) throw InputError("standard presentation needs max_rank ≥ 1");
  K0Presentation P;
  for (int r = 0; r <= max_rank; ++r) P.generators.push_back("r" + std::to_string(r));
  for (int a = 0; a <= max_rank; ++a)
    for (int b = a; a + b <= max_rank; ++b)
      P.relations.push_back({"r" + std::to_string(a), "r" + std::to_string(a + b), "r" + std::to_string(b)});
  return P;
}

Integer complex_class_value(const Complex& C) {
  return C.is_periodic() ? psi_class(C) : euler_characteristic(C);
}

K0Class class_of_complex(const Complex& C, const K0Group& standard) {
  return standard.scale(standard.class_of("r1"), complex_class_value(C));
}

AdditivityReport verify_cofiber_additivity(const AInfCategory& A, const AInfCategory& B, const AInfCategory& C,
                                           int L, int n) {
  AdditivityReport rep;
  const AInfCategory* algebras[] = {&A, &B, &C};
  for (int i = 0; i < 3; ++i) rep.classes[static_cast<std::size_t>(i)] = hochschild_class(*algebras[i], L, n).value;
  const Integer expected = rep.classes[0] + rep.classes[2];
  if (rep.classes[1] != expected) {
    rep.ok = false;
    rep.discrepancy = "[Hoch B] = " + rep.classes[1].str() + " but [Hoch A] + [Hoch C] = " + expected.str();
  }
  return rep;
}

}  // namespace kzero
