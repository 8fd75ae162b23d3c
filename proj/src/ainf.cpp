#include "kzero/ainf.hpp"

#include "kzero/error.hpp"
#include "kzero/parallel.hpp"

#include <functional>
#include <numeric>
#include <set>
#include <sstream>

namespace kzero {

// --- combinations ------------------------------------------------------------

void add_scaled(Combination& acc, const Combination& x, const Integer& c) {
  if (c == 0) return;
  for (const auto& [idx, v] : x) {
    Integer& slot = acc[idx];
    slot += c * v;
    if (slot == 0) acc.erase(idx);
  }
}

Combination scaled(const Combination& x, const Integer& c) {
  Combination out;
  add_scaled(out, x, c);
  return out;
}

void reduce_coefficients(Combination& x, const Integer& modulus) {
  if (modulus == 0) return;
  for (auto it = x.begin(); it != x.end();) {
    Integer r = it->second % modulus;
    if (r < 0) r += modulus;
    if (r == 0) {
      it = x.erase(it);
    } else {
      it->second = r;
      ++it;
    }
  }
}

namespace {

Integer ring_modulus(const GroundRing& R) { return R.kind == GroundRing::Kind::PrimeField ? R.p : Integer(0); }

int sign_of(long e) { return (e % 2 == 0) ? 1 : -1; }

std::string format_word(const AInfCategory& C, const Word& w) {
  std::string s = "(";
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += ", ";
    s += C.basis[static_cast<std::size_t>(w[i])].label;
  }
  return s + ")";
}

std::string format_combination(const AInfCategory& C, const Combination& x) {
  if (x.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [idx, v] : x) {
    if (!first) os << (v < 0 ? " - " : " + ");
    else if (v < 0) os << "-";
    const Integer a = abs(v);
    if (a != 1) os << a << "*";
    os << C.basis[static_cast<std::size_t>(idx)].label;
    first = false;
  }
  return os.str();
}

std::vector<std::vector<int>> successors(const AInfCategory& C) {
  // after[b] lists the basis elements that may follow b in a listed word.
  std::vector<std::vector<int>> after(static_cast<std::size_t>(C.size()));
  for (int b = 0; b < C.size(); ++b)
    for (int c = 0; c < C.size(); ++c)
      if (C.basis[static_cast<std::size_t>(c)].target == C.basis[static_cast<std::size_t>(b)].source)
        after[static_cast<std::size_t>(b)].push_back(c);
  return after;
}

/// Depth-first enumeration of composable words of length k starting with
/// `first`; stops early when fn returns false.
bool for_each_word(const std::vector<std::vector<int>>& after, int first, int k,
                   const std::function<bool(const Word&)>& fn) {
  Word w{first};
  std::function<bool()> rec = [&]() -> bool {
    if (static_cast<int>(w.size()) == k) return fn(w);
    for (int c : after[static_cast<std::size_t>(w.back())]) {
      w.push_back(c);
      const bool go = rec();
      w.pop_back();
      if (!go) return false;
    }
    return true;
  };
  return rec();
}

int degree_sum(const AInfCategory& C, const Word& w, std::size_t from, std::size_t to) {
  int s = 0;
  for (std::size_t i = from; i < to; ++i) s += C.basis[static_cast<std::size_t>(w[i])].degree;
  return s;
}

/// Runs `probe` on every composable word of length k, in parallel over the
/// first letter, and returns the first failure in enumeration order.
RelationReport scan_words(const AInfCategory& C, int k,
                          const std::function<std::optional<RelationReport>(const Word&)>& probe) {
  const auto after = successors(C);
  std::vector<std::optional<RelationReport>> found(static_cast<std::size_t>(C.size()));
  parallel_for(static_cast<std::size_t>(C.size()), [&](std::size_t first) {
    for_each_word(after, static_cast<int>(first), k, [&](const Word& w) {
      if (auto r = probe(w)) {
        found[first] = std::move(r);
        return false;
      }
      return true;
    });
  });
  for (auto& f : found)
    if (f) return *f;
  return {};
}

RelationReport failure(int arity, Word w, Combination residual, std::string reason) {
  RelationReport r;
  r.ok = false;
  r.arity = arity;
  r.witness = std::move(w);
  r.residual = std::move(residual);
  r.reason = std::move(reason);
  return r;
}

void check_indices(const AInfCategory& C, const Word& w, const std::string& what) {
  for (int i : w)
    if (i < 0 || i >= C.size()) throw InputError(what + " refers to basis index " + std::to_string(i) + " out of range");
}

std::optional<RelationReport> table_defects(const AInfCategory& C) {
  const Integer mod = ring_modulus(C.ring);
  for (const auto& [k, table] : C.mu) {
    for (const auto& [w, out] : table) {
      if (!C.composable(w)) return failure(k, w, out, "composability");
      const int src = C.basis[static_cast<std::size_t>(w.back())].source;
      const int tgt = C.basis[static_cast<std::size_t>(w.front())].target;
      const int deg = C.degree_class(degree_sum(C, w, 0, w.size()) + k - 2);
      Combination reduced = out;
      reduce_coefficients(reduced, mod);
      for (const auto& [idx, v] : reduced) {
        const auto& b = C.basis[static_cast<std::size_t>(idx)];
        if (b.source != src || b.target != tgt) return failure(k, w, reduced, "hom");
        if (C.degree_class(b.degree) != deg) return failure(k, w, reduced, "degree");
      }
      bool has_unit = false;
      for (int i : w) has_unit = has_unit || C.is_unit(i);
      if (!has_unit) continue;
      Combination expected;
      if (k == 2) expected = C.is_unit(w[0]) ? Combination{{w[1], 1}} : Combination{{w[0], 1}};
      reduce_coefficients(expected, mod);
      if (reduced != expected) {
        Combination diff = reduced;
        add_scaled(diff, expected, -1);
        return failure(k, w, diff, "unit");
      }
    }
  }
  return std::nullopt;
}

}  // namespace

// --- AInfCategory --------------------------------------------------------------

std::vector<int> AInfCategory::hom(int a, int b) const {
  std::vector<int> out;
  for (int i = 0; i < size(); ++i)
    if (basis[static_cast<std::size_t>(i)].source == a && basis[static_cast<std::size_t>(i)].target == b) out.push_back(i);
  return out;
}

std::vector<int> AInfCategory::hom(int a, int b, int degree) const {
  std::vector<int> out;
  for (int i : hom(a, b))
    if (degree_class(basis[static_cast<std::size_t>(i)].degree) == degree_class(degree)) out.push_back(i);
  return out;
}

bool AInfCategory::is_unit(int idx) const { return std::find(units.begin(), units.end(), idx) != units.end(); }

int AInfCategory::object_index(const std::string& name) const {
  for (int i = 0; i < object_count(); ++i)
    if (objects[static_cast<std::size_t>(i)] == name) return i;
  throw InputError("unknown object '" + name + "'");
}

int AInfCategory::basis_index(const std::string& label) const {
  for (int i = 0; i < size(); ++i)
    if (basis[static_cast<std::size_t>(i)].label == label) return i;
  throw InputError("unknown basis element '" + label + "'");
}

bool AInfCategory::composable(const Word& w) const {
  for (std::size_t i = 0; i + 1 < w.size(); ++i)
    if (basis[static_cast<std::size_t>(w[i + 1])].target != basis[static_cast<std::size_t>(w[i])].source) return false;
  return true;
}

Combination AInfCategory::apply(int k, const Word& w) const {
  const auto t = mu.find(k);
  if (t != mu.end()) {
    const auto e = t->second.find(w);
    if (e != t->second.end()) return e->second;
  }
  if (k == 2) {
    if (is_unit(w[0])) return {{w[1], 1}};
    if (is_unit(w[1])) return {{w[0], 1}};
  }
  return {};
}

void validate_structure(const AInfCategory& C) {
  if (C.period < 0) throw GradingError("period must be non-negative");
  if (C.period % 2 != 0) throw PeriodError("period must be even");
  if (C.max_arity < 1) throw InputError("arity bound must be at least 1");
  if (C.units.size() != C.objects.size()) throw InputError("one unit per object is required");
  std::set<std::string> labels;
  for (const auto& b : C.basis) {
    if (b.source < 0 || b.source >= C.object_count() || b.target < 0 || b.target >= C.object_count())
      throw InputError("basis element '" + b.label + "' has an endpoint out of range");
    if (!labels.insert(b.label).second) throw InputError("duplicate basis label '" + b.label + "'");
  }
  for (int a = 0; a < C.object_count(); ++a) {
    const int u = C.units[static_cast<std::size_t>(a)];
    if (u == -1) {
      for (const auto& b : C.basis)
        if (b.source == a || b.target == a)
          throw ValidationError("object '" + C.objects[static_cast<std::size_t>(a)] + "' has a zero unit but non-zero morphisms");
      continue;
    }
    if (u < 0 || u >= C.size()) throw InputError("unit index out of range");
    const auto& b = C.basis[static_cast<std::size_t>(u)];
    if (b.source != a || b.target != a || C.degree_class(b.degree) != 0)
      throw ValidationError("unit of '" + C.objects[static_cast<std::size_t>(a)] + "' is not a degree-0 endomorphism");
  }
  for (const auto& [k, table] : C.mu) {
    if (k < 1 || k > C.max_arity) throw InputError("structure map arity " + std::to_string(k) + " outside 1.." + std::to_string(C.max_arity));
    for (const auto& [w, out] : table) {
      if (static_cast<int>(w.size()) != k) throw InputError("mu_" + std::to_string(k) + " entry has " + std::to_string(w.size()) + " arguments");
      check_indices(C, w, "mu_" + std::to_string(k) + " entry");
      for (const auto& [idx, v] : out)
        if (idx < 0 || idx >= C.size()) throw InputError("mu_" + std::to_string(k) + " output index out of range");
    }
  }
  if (auto d = table_defects(C)) throw ValidationError(d->describe(C));
}

void set_mu(AInfCategory& C, const std::vector<std::string>& word,
            const std::vector<std::pair<long, std::string>>& output) {
  Word w;
  for (const auto& l : word) w.push_back(C.basis_index(l));
  Combination out;
  for (const auto& [c, l] : output) add_scaled(out, {{C.basis_index(l), 1}}, c);
  C.mu[static_cast<int>(w.size())][w] = out;
}

std::string RelationReport::describe(const AInfCategory& source, const AInfCategory& target) const {
  if (ok) return "ok";
  std::string what = reason == "relation" ? "relation fails" : reason + " violation";
  return "arity " + std::to_string(arity) + " " + what + " on " + format_word(source, witness) + ": " +
         format_combination(target, residual);
}

Combination ainf_relation_residual(const AInfCategory& C, const Word& x) {
  const int k = static_cast<int>(x.size());
  Combination res;
  for (int s = 1; s <= k; ++s) {
    for (int r = 0; r + s <= k; ++r) {
      const int t = k - r - s;
      const Combination inner = C.apply(s, Word(x.begin() + r, x.begin() + r + s));
      if (inner.empty()) continue;
      const int sign = sign_of(r + s * t + s * degree_sum(C, x, 0, static_cast<std::size_t>(r)));
      Word outer(x.begin(), x.begin() + r);
      outer.push_back(0);
      outer.insert(outer.end(), x.begin() + r + s, x.end());
      for (const auto& [y, c] : inner) {
        outer[static_cast<std::size_t>(r)] = y;
        add_scaled(res, C.apply(r + 1 + t, outer), c * sign);
      }
    }
  }
  reduce_coefficients(res, ring_modulus(C.ring));
  return res;
}

RelationReport check_ainf_relations(const AInfCategory& C, int max_arity) {
  if (max_arity > C.max_arity)
    throw PreconditionError("requested arity " + std::to_string(max_arity) + " exceeds the declared bound " +
                            std::to_string(C.max_arity));
  try {
    validate_structure(C);
  } catch (const ValidationError&) {
    if (auto d = table_defects(C)) return *d;
    throw;
  }
  for (int k = 1; k <= max_arity; ++k) {
    RelationReport r = scan_words(C, k, [&](const Word& w) -> std::optional<RelationReport> {
      Combination res = ainf_relation_residual(C, w);
      if (res.empty()) return std::nullopt;
      return failure(k, w, std::move(res), "relation");
    });
    if (!r.ok) return r;
  }
  return {};
}

int shifted_sign(const AInfCategory& C, const Word& w) {
  const int k = static_cast<int>(w.size());
  long e = 0;
  for (int i = 0; i < k; ++i) e += static_cast<long>(k - 1 - i) * C.parity(w[static_cast<std::size_t>(i)]);
  return sign_of(e);
}

Combination shifted_mu(const AInfCategory& C, int k, const Word& w) {
  return scaled(C.apply(k, w), shifted_sign(C, w));
}

Complex hom_complex(const AInfCategory& C, int a, int b) {
  const auto elems = C.hom(a, b);
  std::map<int, std::vector<int>> by_degree;
  for (int i : elems) by_degree[C.degree_class(C.basis[static_cast<std::size_t>(i)].degree)].push_back(i);
  auto position = [&](int idx) {
    const auto& v = by_degree[C.degree_class(C.basis[static_cast<std::size_t>(idx)].degree)];
    return static_cast<Index>(std::find(v.begin(), v.end(), idx) - v.begin());
  };
  std::map<int, Index> ranks;
  for (auto& [d, v] : by_degree) ranks[d] = static_cast<Index>(v.size());
  std::map<int, IntMatrix> diffs;
  for (auto& [d, v] : by_degree) {
    const int lower = C.degree_class(d - 1);
    const Index rows = by_degree.count(lower) ? static_cast<Index>(by_degree[lower].size()) : 0;
    IntMatrix m = zero_matrix(rows, static_cast<Index>(v.size()));
    for (std::size_t j = 0; j < v.size(); ++j)
      for (const auto& [y, c] : C.apply(1, {v[j]})) m(position(y), static_cast<Index>(j)) += c;
    diffs[d] = m;
  }
  if (C.period > 0) return Complex::periodic(C.ring, C.period, ranks, diffs);
  if (ranks.empty()) return Complex::bounded(C.ring, 0, -1, {}, {});
  const int lo = std::min(ranks.begin()->first, 0), hi = std::max(ranks.rbegin()->first, 0);
  return Complex::bounded(C.ring, lo, hi, ranks, diffs);
}

// --- homotopy category -----------------------------------------------------------

IntVector LinearCategory::reduce(int a, int b, IntVector v) const {
  const auto& orders = hom(a, b).orders;
  for (Index i = 0; i < v.size(); ++i) {
    const Integer d = modulus != 0 ? modulus : orders[static_cast<std::size_t>(i)];
    if (d == 0) continue;
    Integer r = v(i) % d;
    v(i) = r < 0 ? Integer(r + d) : r;
  }
  return v;
}

IntVector LinearCategory::compose(int a, int b, int c, const IntVector& g, const IntVector& h) const {
  IntVector out = IntVector::Zero(hom(a, c).size());
  const auto& table = composition.at({a, b, c});
  for (Index i = 0; i < g.size(); ++i) {
    if (g(i) == 0) continue;
    for (Index j = 0; j < h.size(); ++j)
      if (h(j) != 0) out += table[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] * (g(i) * h(j));
  }
  return reduce(a, c, out);
}

bool LinearCategory::is_zero_object(int a) const { return hom(a, a).size() == 0; }

std::optional<std::string> verify_linear_category(const LinearCategory& L) {
  const int n = L.object_count();
  auto unit_vec = [&](int a, int b, Index i) {
    IntVector e = IntVector::Zero(L.hom(a, b).size());
    e(i) = 1;
    return e;
  };
  auto name = [&](int a) { return L.objects[static_cast<std::size_t>(a)]; };
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (Index i = 0; i < L.hom(a, b).size(); ++i) {
        const IntVector f = unit_vec(a, b, i);
        if (L.compose(a, b, b, L.units[static_cast<std::size_t>(b)], f) != f ||
            L.compose(a, a, b, f, L.units[static_cast<std::size_t>(a)]) != f)
          return "unit law fails on generator " + std::to_string(i) + " of hom(" + name(a) + ", " + name(b) + ")";
        const Integer ord = L.modulus != 0 ? L.modulus : L.hom(a, b).orders[static_cast<std::size_t>(i)];
        if (ord == 0) continue;
        for (int c = 0; c < n; ++c)
          for (Index j = 0; j < L.hom(b, c).size(); ++j)
            if (!L.compose(a, b, c, unit_vec(b, c, j), f * ord).isZero())
              return "composition is not well defined on torsion in hom(" + name(a) + ", " + name(b) + ")";
      }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d)
          for (Index i = 0; i < L.hom(c, d).size(); ++i)
            for (Index j = 0; j < L.hom(b, c).size(); ++j)
              for (Index k = 0; k < L.hom(a, b).size(); ++k) {
                const IntVector f = unit_vec(c, d, i), g = unit_vec(b, c, j), h = unit_vec(a, b, k);
                if (L.compose(a, c, d, f, L.compose(a, b, c, g, h)) != L.compose(a, b, d, L.compose(b, c, d, f, g), h))
                  return "associativity fails on hom(" + name(c) + ", " + name(d) + ") x hom(" + name(b) + ", " + name(c) +
                         ") x hom(" + name(a) + ", " + name(b) + ")";
              }
  return std::nullopt;
}

namespace {

IntVector degree_zero_vector(const AInfCategory& C, int a, int b, const Combination& x) {
  const auto elems = C.hom(a, b, 0);
  IntVector v = IntVector::Zero(static_cast<Index>(elems.size()));
  for (const auto& [idx, c] : x) {
    const auto it = std::find(elems.begin(), elems.end(), idx);
    if (it != elems.end()) v(it - elems.begin()) += c;
  }
  return v;
}

void require_relations(const AInfCategory& C, int arity, bool precondition) {
  const RelationReport r = check_ainf_relations(C, std::min(arity, C.max_arity));
  if (r.ok) return;
  if (precondition) throw PreconditionError("relation check failed: " + r.describe(C));
  throw InputError("relation check failed: " + r.describe(C));
}

}  // namespace

LinearCategory homotopy_category(const AInfCategory& C) {
  require_relations(C, 3, false);
  LinearCategory L;
  L.objects = C.objects;
  L.modulus = ring_modulus(C.ring);
  L.rational = C.ring.kind == GroundRing::Kind::Rationals;
  const int n = C.object_count();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      Subquotient S = homology_presentation(hom_complex(C, a, b), 0);
      L.homs[{a, b}] = LinearCategory::Hom{S.orders};
      L.presentations[{a, b}] = std::move(S);
    }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        const auto& Sab = L.presentations[{a, b}];
        const auto& Sbc = L.presentations[{b, c}];
        const auto& Sac = L.presentations[{a, c}];
        const auto left = C.hom(b, c, 0), right = C.hom(a, b, 0);
        std::vector<std::vector<IntVector>> table(static_cast<std::size_t>(Sbc.size()),
                                                  std::vector<IntVector>(static_cast<std::size_t>(Sab.size())));
        for (Index i = 0; i < Sbc.size(); ++i)
          for (Index j = 0; j < Sab.size(); ++j) {
            Combination prod;
            for (std::size_t p = 0; p < left.size(); ++p) {
              const Integer& gp = Sbc.generators(static_cast<Index>(p), i);
              if (gp == 0) continue;
              for (std::size_t q = 0; q < right.size(); ++q) {
                const Integer& hq = Sab.generators(static_cast<Index>(q), j);
                if (hq != 0) add_scaled(prod, C.apply(2, {left[p], right[q]}), gp * hq);
              }
            }
            table[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = Sac.classify(degree_zero_vector(C, a, c, prod));
          }
        L.composition[{a, b, c}] = std::move(table);
      }
  for (int a = 0; a < n; ++a) {
    const int u = C.units[static_cast<std::size_t>(a)];
    const Combination unit = u < 0 ? Combination{} : Combination{{u, 1}};
    L.units.push_back(L.presentations[{a, a}].classify(degree_zero_vector(C, a, a, unit)));
  }
  return L;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::True: return "true";
    case Verdict::False: return "false";
    case Verdict::Undetermined: return "undetermined";
  }
  return "?";
}

namespace {

bool solvable(const IntMatrix& A, const IntVector& b, const LinearCategory& L) {
  if (!L.rational) return solve_linear(A, b, L.modulus).has_value();
  IntMatrix aug(A.rows(), A.cols() + 1);
  aug << A, b;
  return smith_normal_form(A).rank == smith_normal_form(aug).rank;
}

/// Whether some g ∈ H(y, x) inverts f ∈ H(x, y) on both sides. The
/// conditions are linear in g, with torsion in the targets absorbed by
/// extra unknowns.
bool has_inverse(const LinearCategory& L, int x, int y, const IntVector& f) {
  const Index ng = L.hom(y, x).size();
  const auto& ox = L.hom(x, x).orders;
  const auto& oy = L.hom(y, y).orders;
  const Index m1 = static_cast<Index>(ox.size()), m2 = static_cast<Index>(oy.size());
  std::vector<std::pair<Index, Integer>> slack;
  if (L.modulus == 0 && !L.rational) {
    for (Index i = 0; i < m1; ++i)
      if (ox[static_cast<std::size_t>(i)] != 0) slack.push_back({i, ox[static_cast<std::size_t>(i)]});
    for (Index i = 0; i < m2; ++i)
      if (oy[static_cast<std::size_t>(i)] != 0) slack.push_back({m1 + i, oy[static_cast<std::size_t>(i)]});
  }
  IntMatrix A = zero_matrix(m1 + m2, ng + static_cast<Index>(slack.size()));
  for (Index j = 0; j < ng; ++j) {
    IntVector e = IntVector::Zero(ng);
    e(j) = 1;
    if (m1 > 0) A.block(0, j, m1, 1) = L.compose(x, y, x, e, f);
    if (m2 > 0) A.block(m1, j, m2, 1) = L.compose(y, x, y, f, e);
  }
  for (std::size_t s = 0; s < slack.size(); ++s) A(slack[s].first, ng + static_cast<Index>(s)) = slack[s].second;
  IntVector rhs(m1 + m2);
  if (m1 > 0) rhs.head(m1) = L.units[static_cast<std::size_t>(x)];
  if (m2 > 0) rhs.tail(m2) = L.units[static_cast<std::size_t>(y)];
  if (A.cols() == 0) return rhs.isZero();
  return solvable(A, rhs, L);
}

/// Whether 1_x lies in the span of all composites g ∘ f with f ∈ H(x, y) and
/// g ∈ H(y, x); necessary for x ≅ y.
bool unit_in_composite_span(const LinearCategory& L, int x, int y) {
  const Index nf = L.hom(x, y).size(), ng = L.hom(y, x).size();
  const auto& ox = L.hom(x, x).orders;
  const Index m = static_cast<Index>(ox.size());
  if (m == 0) return true;
  std::vector<IntVector> cols;
  for (Index i = 0; i < ng; ++i)
    for (Index j = 0; j < nf; ++j) {
      IntVector g = IntVector::Zero(ng), f = IntVector::Zero(nf);
      g(i) = 1;
      f(j) = 1;
      cols.push_back(L.compose(x, y, x, g, f));
    }
  if (L.modulus == 0 && !L.rational)
    for (Index i = 0; i < m; ++i)
      if (ox[static_cast<std::size_t>(i)] != 0) {
        IntVector e = IntVector::Zero(m);
        e(i) = ox[static_cast<std::size_t>(i)];
        cols.push_back(e);
      }
  if (cols.empty()) return L.units[static_cast<std::size_t>(x)].isZero();
  IntMatrix A(m, static_cast<Index>(cols.size()));
  for (std::size_t c = 0; c < cols.size(); ++c) A.col(static_cast<Index>(c)) = cols[c];
  return solvable(A, L.units[static_cast<std::size_t>(x)], L);
}

}  // namespace

Verdict objects_isomorphic(const LinearCategory& L, int x, int y, int bound) {
  if (x == y) return Verdict::True;
  for (int z = 0; z < L.object_count(); ++z)
    if (L.hom(x, z).group() != L.hom(y, z).group() || L.hom(z, x).group() != L.hom(z, y).group()) return Verdict::False;
  if (!unit_in_composite_span(L, x, y) || !unit_in_composite_span(L, y, x)) return Verdict::False;

  const auto& orders = L.hom(x, y).orders;
  const Index dim = static_cast<Index>(orders.size());
  std::vector<Integer> lo(static_cast<std::size_t>(dim)), hi(static_cast<std::size_t>(dim));
  bool exhaustive = true;
  for (Index i = 0; i < dim; ++i) {
    const Integer d = L.modulus != 0 ? L.modulus : orders[static_cast<std::size_t>(i)];
    if (d != 0 && !L.rational) {
      lo[static_cast<std::size_t>(i)] = 0;
      hi[static_cast<std::size_t>(i)] = d - 1;
    } else {
      lo[static_cast<std::size_t>(i)] = -bound;
      hi[static_cast<std::size_t>(i)] = bound;
      exhaustive = false;
    }
  }
  constexpr long kCap = 2000000;
  long visited = 0;
  IntVector f(dim);
  for (Index i = 0; i < dim; ++i) f(i) = lo[static_cast<std::size_t>(i)];
  while (true) {
    if (has_inverse(L, x, y, f)) return Verdict::True;
    if (++visited >= kCap) return Verdict::Undetermined;
    Index i = 0;
    for (; i < dim; ++i) {
      if (f(i) < hi[static_cast<std::size_t>(i)]) {
        f(i) += 1;
        break;
      }
      f(i) = lo[static_cast<std::size_t>(i)];
    }
    if (i == dim) break;
  }
  return exhaustive ? Verdict::False : Verdict::Undetermined;
}

// --- functors ------------------------------------------------------------------------

Combination AInfFunctor::apply(int k, const Word& w) const {
  const auto t = components.find(k);
  if (t == components.end()) return {};
  const auto e = t->second.find(w);
  return e == t->second.end() ? Combination{} : e->second;
}

namespace {

std::optional<RelationReport> functor_defects(const AInfFunctor& F) {
  const AInfCategory& S = *F.source;
  const AInfCategory& T = *F.target;
  const Integer mod = ring_modulus(T.ring);
  for (const auto& [k, table] : F.components)
    for (const auto& [w, out] : table) {
      if (!S.composable(w)) return failure(k, w, {}, "composability");
      const int src = F.object_map[static_cast<std::size_t>(S.basis[static_cast<std::size_t>(w.back())].source)];
      const int tgt = F.object_map[static_cast<std::size_t>(S.basis[static_cast<std::size_t>(w.front())].target)];
      const int deg = T.degree_class(degree_sum(S, w, 0, w.size()) + k - 1);
      Combination reduced = out;
      reduce_coefficients(reduced, mod);
      for (const auto& [idx, v] : reduced) {
        const auto& b = T.basis[static_cast<std::size_t>(idx)];
        if (b.source != src || b.target != tgt) return failure(k, w, reduced, "hom");
        if (T.degree_class(b.degree) != deg) return failure(k, w, reduced, "degree");
      }
    }
  return std::nullopt;
}

/// Σ_{i≤len} (len − i)|d_i|, the sign relating a structure map on sA to
/// the unshifted one.
long shift_exponent(const std::vector<int>& degrees) {
  const long n = static_cast<long>(degrees.size());
  long e = 0;
  for (long i = 0; i < n; ++i) e += (n - 1 - i) * degrees[static_cast<std::size_t>(i)];
  return e;
}

std::vector<int> degrees_of(const AInfCategory& C, const Word& w) {
  std::vector<int> d;
  for (int i : w) d.push_back(C.basis[static_cast<std::size_t>(i)].degree);
  return d;
}

/// Σ over compositions i_1 + … + i_q = k of ±outer_q(F_{i_1}(block_1), …, F_{i_q}(block_q)),
/// normalized by (−1)^{E(x)}. Functor components and structure maps pass to
/// sA with the same shift sign as μ_k, and on sA the terms carry no sign.
template <typename Outer>
Combination compose_through(const AInfCategory& S, const AInfFunctor& F, const Word& x, Outer&& outer) {
  const int k = static_cast<int>(x.size());
  const std::vector<int> deg = degrees_of(S, x);
  const long base = shift_exponent(deg);
  Combination total;
  std::vector<int> parts;
  std::function<void(int)> rec = [&](int used) {
    if (used == k) {
      long e = base;
      int before = 0;
      std::vector<Combination> blocks;
      std::vector<int> out_degrees;
      for (int i : parts) {
        const std::vector<int> bd(deg.begin() + before, deg.begin() + before + i);
        e += shift_exponent(bd);
        out_degrees.push_back(std::accumulate(bd.begin(), bd.end(), 0) + i - 1);
        blocks.push_back(F.apply(i, Word(x.begin() + before, x.begin() + before + i)));
        if (blocks.back().empty()) return;
        before += i;
      }
      e += shift_exponent(out_degrees);
      const int sign = sign_of(e);
      Word w(blocks.size());
      std::function<void(std::size_t, Integer)> expand = [&](std::size_t u, Integer coeff) {
        if (u == blocks.size()) {
          add_scaled(total, outer(static_cast<int>(w.size()), w), coeff * sign);
          return;
        }
        for (const auto& [y, c] : blocks[u]) {
          w[u] = y;
          expand(u + 1, coeff * c);
        }
      };
      expand(0, 1);
      return;
    }
    for (int i = 1; used + i <= k; ++i) {
      parts.push_back(i);
      rec(used + i);
      parts.pop_back();
    }
  };
  rec(0);
  return total;
}

}  // namespace

Combination functor_relation_residual(const AInfFunctor& F, const Word& x) {
  const AInfCategory& S = *F.source;
  const AInfCategory& T = *F.target;
  const int k = static_cast<int>(x.size());
  const std::vector<int> deg = degrees_of(S, x);
  const long base = shift_exponent(deg);
  Combination res;
  for (int s = 1; s <= k; ++s)
    for (int r = 0; r + s <= k; ++r) {
      const Combination inner = S.apply(s, Word(x.begin() + r, x.begin() + r + s));
      if (inner.empty()) continue;
      // Koszul sign of m_s passing sx_1 … sx_r, then the shift signs of the
      // inner and outer maps.
      std::vector<int> od(deg.begin(), deg.begin() + r);
      const std::vector<int> block(deg.begin() + r, deg.begin() + r + s);
      od.push_back(std::accumulate(block.begin(), block.end(), 0) + s - 2);
      od.insert(od.end(), deg.begin() + r + s, deg.end());
      const long e = base + std::accumulate(deg.begin(), deg.begin() + r, 0L) + r + shift_exponent(block) + shift_exponent(od);
      const int sign = sign_of(e);
      Word outer(x.begin(), x.begin() + r);
      outer.push_back(0);
      outer.insert(outer.end(), x.begin() + r + s, x.end());
      for (const auto& [y, c] : inner) {
        outer[static_cast<std::size_t>(r)] = y;
        add_scaled(res, F.apply(static_cast<int>(outer.size()), outer), c * sign);
      }
    }
  add_scaled(res, compose_through(S, F, x, [&](int q, const Word& w) { return T.apply(q, w); }), -1);
  reduce_coefficients(res, ring_modulus(T.ring));
  return res;
}

void validate_functor_structure(const AInfFunctor& F) {
  if (!F.source || !F.target) throw InputError("functor needs a source and a target category");
  const AInfCategory& S = *F.source;
  const AInfCategory& T = *F.target;
  if (!(S.ring == T.ring)) throw InputError("functor between categories over different rings");
  if (S.period != T.period) throw GradingError("functor between categories of different grading");
  if (static_cast<int>(F.object_map.size()) != S.object_count()) throw InputError("object map must cover every source object");
  for (int o : F.object_map)
    if (o < 0 || o >= T.object_count()) throw InputError("object map target out of range");
  for (const auto& [k, table] : F.components) {
    if (k < 1 || k > F.max_arity) throw InputError("functor component arity " + std::to_string(k) + " out of range");
    for (const auto& [w, out] : table) {
      if (static_cast<int>(w.size()) != k) throw InputError("F_" + std::to_string(k) + " entry has wrong length");
      check_indices(S, w, "F_" + std::to_string(k) + " entry");
      for (const auto& [idx, v] : out)
        if (idx < 0 || idx >= T.size()) throw InputError("F_" + std::to_string(k) + " output index out of range");
    }
  }
  if (auto d = functor_defects(F)) throw ValidationError(d->describe(S, *F.target));
}

RelationReport check_functor_relations(const AInfFunctor& F, int max_arity) {
  if (max_arity > F.max_arity)
    throw PreconditionError("requested arity " + std::to_string(max_arity) + " exceeds the declared bound " +
                            std::to_string(F.max_arity));
  try {
    validate_functor_structure(F);
  } catch (const ValidationError&) {
    if (auto d = functor_defects(F)) return *d;
    throw;
  }
  for (int k = 1; k <= max_arity; ++k) {
    RelationReport r = scan_words(*F.source, k, [&](const Word& w) -> std::optional<RelationReport> {
      Combination res = functor_relation_residual(F, w);
      if (res.empty()) return std::nullopt;
      return failure(k, w, std::move(res), "relation");
    });
    if (!r.ok) return r;
  }
  return {};
}

AInfFunctor identity_functor(std::shared_ptr<const AInfCategory> C) {
  AInfFunctor F;
  F.source = C;
  F.target = C;
  F.max_arity = C->max_arity;
  for (int a = 0; a < C->object_count(); ++a) F.object_map.push_back(a);
  for (int i = 0; i < C->size(); ++i) F.components[1][{i}] = {{i, 1}};
  return F;
}

std::shared_ptr<const AInfCategory> full_subcategory(const AInfCategory& C, const std::vector<int>& objects) {
  auto sub = std::make_shared<AInfCategory>();
  sub->ring = C.ring;
  sub->period = C.period;
  sub->max_arity = C.max_arity;
  std::map<int, int> obj;
  for (int o : objects) {
    if (o < 0 || o >= C.object_count()) throw InputError("subcategory object out of range");
    obj[o] = static_cast<int>(sub->objects.size());
    sub->objects.push_back(C.objects[static_cast<std::size_t>(o)]);
  }
  std::map<int, int> idx;
  for (int i = 0; i < C.size(); ++i) {
    const auto& b = C.basis[static_cast<std::size_t>(i)];
    if (!obj.count(b.source) || !obj.count(b.target)) continue;
    idx[i] = sub->size();
    sub->basis.push_back({b.label, obj[b.source], obj[b.target], b.degree});
  }
  for (int o : objects) {
    const int u = C.units[static_cast<std::size_t>(o)];
    sub->units.push_back(u < 0 ? -1 : idx.at(u));
  }
  for (const auto& [k, table] : C.mu)
    for (const auto& [w, out] : table) {
      Word nw;
      for (int i : w) {
        if (!idx.count(i)) break;
        nw.push_back(idx[i]);
      }
      if (nw.size() != w.size()) continue;
      Combination nout;
      for (const auto& [i, c] : out) nout[idx.at(i)] = c;
      sub->mu[k][nw] = nout;
    }
  return sub;
}

AInfFunctor inclusion_functor(std::shared_ptr<const AInfCategory> sub, std::shared_ptr<const AInfCategory> ambient,
                              const std::vector<int>& object_map) {
  AInfFunctor F;
  F.source = sub;
  F.target = ambient;
  F.object_map = object_map;
  F.max_arity = std::min(sub->max_arity, ambient->max_arity);
  for (int i = 0; i < sub->size(); ++i) F.components[1][{i}] = {{ambient->basis_index(sub->basis[static_cast<std::size_t>(i)].label), 1}};
  return F;
}

AInfFunctor compose(const AInfFunctor& G, const AInfFunctor& F) {
  if (F.target.get() != G.source.get() && F.target->basis.size() != G.source->basis.size())
    throw InputError("functors are not composable");
  AInfFunctor H;
  H.source = F.source;
  H.target = G.target;
  H.max_arity = std::min(F.max_arity, G.max_arity);
  for (int o : F.object_map) H.object_map.push_back(G.object_map[static_cast<std::size_t>(o)]);
  const AInfCategory& S = *F.source;
  const auto after = successors(S);
  const Integer mod = ring_modulus(G.target->ring);
  for (int k = 1; k <= H.max_arity; ++k)
    for (int first = 0; first < S.size(); ++first)
      for_each_word(after, first, k, [&](const Word& x) {
        Combination c = compose_through(S, F, x, [&](int q, const Word& w) { return G.apply(q, w); });
        reduce_coefficients(c, mod);
        if (!c.empty()) H.components[k][x] = std::move(c);
        return true;
      });
  return H;
}

// --- induced maps ------------------------------------------------------------------

IntVector h0_class(const AInfCategory& C, const LinearCategory& h, int a, int b, const Combination& cycle) {
  return h.presentations.at({a, b}).classify(degree_zero_vector(C, a, b, cycle));
}

IntMatrix induced_h0_map(const AInfFunctor& F, const LinearCategory& hs, const LinearCategory& ht, int a, int b) {
  const AInfCategory& S = *F.source;
  const AInfCategory& T = *F.target;
  const int fa = F.object_map[static_cast<std::size_t>(a)], fb = F.object_map[static_cast<std::size_t>(b)];
  const Subquotient& src = hs.presentations.at({a, b});
  const Subquotient& tgt = ht.presentations.at({fa, fb});
  const auto elems = S.hom(a, b, 0);
  IntMatrix M = zero_matrix(tgt.size(), src.size());
  for (Index j = 0; j < src.size(); ++j) {
    Combination image;
    for (std::size_t p = 0; p < elems.size(); ++p) {
      const Integer& c = src.generators(static_cast<Index>(p), j);
      if (c != 0) add_scaled(image, F.apply(1, {elems[p]}), c);
    }
    M.col(j) = tgt.classify(degree_zero_vector(T, fa, fb, image));
  }
  return M;
}

namespace {

void require_functor(const AInfFunctor& F) {
  validate_functor_structure(F);
  require_relations(*F.source, 3, true);
  require_relations(*F.target, 3, true);
  const RelationReport r = check_functor_relations(F, std::min(2, F.max_arity));
  if (!r.ok) throw PreconditionError("functor relation check failed: " + r.describe(*F.source, *F.target));
}

bool qff(const AInfFunctor& F, const LinearCategory& hs, const LinearCategory& ht) {
  const int n = F.source->object_count();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const IntMatrix M = induced_h0_map(F, hs, ht, a, b);
      const auto& so = hs.hom(a, b).orders;
      const auto& to = ht.hom(F.object_map[static_cast<std::size_t>(a)], F.object_map[static_cast<std::size_t>(b)]).orders;
      if (ht.rational) {
        if (M.rows() != M.cols() || smith_normal_form(M).rank != M.rows()) return false;
      } else if (!is_group_isomorphism(M, so, to, ht.modulus)) {
        return false;
      }
    }
  return true;
}

}  // namespace

bool is_quasi_fully_faithful(const AInfFunctor& F) {
  require_functor(F);
  return qff(F, homotopy_category(*F.source), homotopy_category(*F.target));
}

Verdict is_quasi_equivalence(const AInfFunctor& F, int bound) {
  require_functor(F);
  const LinearCategory hs = homotopy_category(*F.source);
  const LinearCategory ht = homotopy_category(*F.target);
  if (!qff(F, hs, ht)) return Verdict::False;
  bool undetermined = false;
  for (int y = 0; y < ht.object_count(); ++y) {
    if (std::find(F.object_map.begin(), F.object_map.end(), y) != F.object_map.end()) continue;
    bool found = false, open = false;
    for (int x : std::set<int>(F.object_map.begin(), F.object_map.end())) {
      const Verdict v = objects_isomorphic(ht, x, y, bound);
      if (v == Verdict::True) {
        found = true;
        break;
      }
      if (v == Verdict::Undetermined) open = true;
    }
    if (found) continue;
    if (!open) return Verdict::False;
    undetermined = true;
  }
  return undetermined ? Verdict::Undetermined : Verdict::True;
}

// --- constructions ---------------------------------------------------------------------

AInfCategory ground_algebra(GroundRing ring, int period) {
  AInfCategory A;
  A.ring = ring;
  A.period = period;
  A.objects = {"pt"};
  A.basis = {{"1", 0, 0, 0}};
  A.units = {0};
  return A;
}

AInfCategory zero_category(GroundRing ring, int period) {
  AInfCategory Z;
  Z.ring = ring;
  Z.period = period;
  Z.objects = {"0"};
  Z.units = {-1};
  return Z;
}

AInfCategory product_algebra(const AInfCategory& A, const AInfCategory& B) {
  if (A.object_count() != 1 || B.object_count() != 1) throw InputError("product_algebra expects single-object algebras");
  if (!(A.ring == B.ring) || A.period != B.period) throw InputError("product_algebra factors must share ring and grading");
  if (A.units[0] < 0 || B.units[0] < 0) throw InputError("product_algebra factors must be unital");
  AInfCategory P;
  P.ring = A.ring;
  P.period = A.period;
  P.max_arity = std::max(A.max_arity, B.max_arity);
  P.objects = {A.objects[0] + "x" + B.objects[0]};
  P.basis = {{"1", 0, 0, 0}, {"e", 0, 0, 0}};
  P.units = {0};
  std::map<int, int> ia, ib;
  for (int i = 0; i < A.size(); ++i)
    if (i != A.units[0]) {
      ia[i] = P.size();
      P.basis.push_back({"a:" + A.basis[static_cast<std::size_t>(i)].label, 0, 0, A.basis[static_cast<std::size_t>(i)].degree});
    }
  for (int i = 0; i < B.size(); ++i)
    if (i != B.units[0]) {
      ib[i] = P.size();
      P.basis.push_back({"b:" + B.basis[static_cast<std::size_t>(i)].label, 0, 0, B.basis[static_cast<std::size_t>(i)].degree});
    }
  const int e = 1;
  // Rewrite outputs: 1_A = e and 1_B = 1 − e.
  auto out_a = [&](const Combination& x) {
    Combination y;
    for (const auto& [i, c] : x) add_scaled(y, i == A.units[0] ? Combination{{e, 1}} : Combination{{ia.at(i), 1}}, c);
    return y;
  };
  auto out_b = [&](const Combination& x) {
    Combination y;
    for (const auto& [i, c] : x) add_scaled(y, i == B.units[0] ? Combination{{0, 1}, {e, -1}} : Combination{{ib.at(i), 1}}, c);
    return y;
  };
  auto copy = [&](const AInfCategory& X, const std::map<int, int>& idx, auto&& rewrite) {
    for (const auto& [k, table] : X.mu)
      for (const auto& [w, out] : table) {
        Word nw;
        for (int i : w) {
          if (!idx.count(i)) break;
          nw.push_back(idx.at(i));
        }
        if (nw.size() != w.size()) continue;
        Combination o = rewrite(out);
        if (!o.empty()) P.mu[k][nw] = o;
      }
  };
  copy(A, ia, out_a);
  copy(B, ib, out_b);
  P.mu[2][{e, e}] = {{e, 1}};
  for (const auto& [i, j] : ia) {
    P.mu[2][{e, j}] = {{j, 1}};
    P.mu[2][{j, e}] = {{j, 1}};
  }
  return P;
}

}  // namespace kzero
