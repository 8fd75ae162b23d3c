#include "kzero/groth.hpp"

#include "kzero/error.hpp"
#include "kzero/parallel.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace kzero {

std::string to_string(Origin o) {
  switch (o) {
    case Origin::A: return "A";
    case Origin::B: return "B";
    case Origin::C: return "C";
  }
  return "?";
}

namespace {

Integer ring_modulus(const GroundRing& R) { return R.kind == GroundRing::Kind::PrimeField ? R.p : Integer(0); }

int sign_of(long e) { return e % 2 == 0 ? 1 : -1; }

long shift_exponent(const std::vector<int>& d) {
  const long n = static_cast<long>(d.size());
  long e = 0;
  for (long i = 0; i < n; ++i) e += (n - 1 - i) * d[static_cast<std::size_t>(i)];
  return e;
}

std::size_t part(Origin o) { return static_cast<std::size_t>(o); }

bool same_category(const AInfCategory& X, const AInfCategory& Y) {
  if (!(X.ring == Y.ring) || X.period != Y.period || X.objects != Y.objects || X.units != Y.units || X.mu != Y.mu)
    return false;
  if (X.basis.size() != Y.basis.size()) return false;
  for (std::size_t i = 0; i < X.basis.size(); ++i) {
    const auto &a = X.basis[i], &b = Y.basis[i];
    if (a.label != b.label || a.source != b.source || a.target != b.target || a.degree != b.degree) return false;
  }
  return true;
}

void require_span_functor(const AInfFunctor& F, const std::string& name) {
  validate_functor_structure(F);
  for (const AInfCategory* X : {F.source.get(), F.target.get()}) {
    const RelationReport r = check_ainf_relations(*X, std::min(3, X->max_arity));
    if (!r.ok) throw PreconditionError("relation check failed: " + r.describe(*X));
  }
  const RelationReport r = check_functor_relations(F, std::min(3, F.max_arity));
  if (!r.ok) throw PreconditionError(name + " fails its functor relations: " + r.describe(*F.source, *F.target));
  const AInfCategory& S = *F.source;
  const AInfCategory& T = *F.target;
  const Integer mod = ring_modulus(T.ring);
  for (int a = 0; a < S.object_count(); ++a) {
    const int u = S.units[static_cast<std::size_t>(a)];
    if (u < 0) continue;
    const int tu = T.units[static_cast<std::size_t>(F.object_map[static_cast<std::size_t>(a)])];
    Combination expected = tu < 0 ? Combination{} : Combination{{tu, 1}};
    Combination got = F.apply(1, {u});
    reduce_coefficients(got, mod);
    if (got != expected) throw PreconditionError(name + " is not strictly unital at object '" + S.objects[static_cast<std::size_t>(a)] + "'");
  }
  for (const auto& [k, table] : F.components) {
    if (k < 2) continue;
    for (const auto& [w, out] : table) {
      Combination c = out;
      reduce_coefficients(c, mod);
      if (c.empty()) continue;
      for (int i : w)
        if (S.is_unit(i)) throw PreconditionError(name + "_" + std::to_string(k) + " does not vanish on a unit");
    }
  }
}

/// All composable listed words of length k in X whose last letter starts at
/// `start` (k = 0 gives the empty word), skipping units.
void chains_ending(const AInfCategory& X, int start_object, int k, bool by_source,
                   const std::function<void(const Word&)>& fn) {
  // by_source: the last letter's source is start_object (chains entering on the right).
  // otherwise: the first letter's target is start_object (chains leaving on the left).
  Word w;
  std::function<void(int)> rec = [&](int obj) {
    if (static_cast<int>(w.size()) == k) {
      fn(w);
      return;
    }
    for (int i = 0; i < X.size(); ++i) {
      if (X.is_unit(i)) continue;
      const auto& b = X.basis[static_cast<std::size_t>(i)];
      if (by_source ? b.source != obj : b.target != obj) continue;
      w.push_back(i);
      rec(by_source ? b.target : b.source);
      w.pop_back();
    }
  };
  rec(start_object);
}

}  // namespace

GrothCategory grothendieck_construction(const AInfFunctor& f, const AInfFunctor& g) {
  if (!f.source || !g.source) throw InputError("span functors need source categories");
  if (f.source != g.source && !same_category(*f.source, *g.source))
    throw InputError("the span functors do not share their source");
  require_span_functor(f, "f");
  require_span_functor(g, "g");
  const AInfCategory& A = *f.source;
  const AInfCategory& B = *f.target;
  const AInfCategory& C = *g.target;
  if (!(B.ring == C.ring) || B.period != C.period) throw InputError("span targets differ in ring or grading");

  GrothCategory G;
  G.parts = {f.source, f.target, g.target};
  auto cat = std::make_shared<AInfCategory>();
  cat->ring = A.ring;
  cat->period = A.period;
  cat->max_arity = std::min({A.max_arity, B.max_arity, C.max_arity, f.max_arity, g.max_arity});
  const Integer mod = ring_modulus(A.ring);
  const char* names[] = {"A:", "B:", "C:"};
  for (std::size_t p = 0; p < 3; ++p) {
    const AInfCategory& X = *G.parts[p];
    for (int o = 0; o < X.object_count(); ++o) {
      G.object_embedding[p].push_back(cat->object_count());
      G.provenance.push_back(static_cast<Origin>(p));
      cat->objects.push_back(names[p] + X.objects[static_cast<std::size_t>(o)]);
    }
  }
  for (std::size_t p = 0; p < 3; ++p) {
    const AInfCategory& X = *G.parts[p];
    for (const auto& b : X.basis) {
      G.basis_embedding[p].push_back(cat->size());
      cat->basis.push_back({names[p] + b.label, G.object_embedding[p][static_cast<std::size_t>(b.source)],
                            G.object_embedding[p][static_cast<std::size_t>(b.target)], b.degree});
    }
    for (int u : X.units) cat->units.push_back(u < 0 ? -1 : G.basis_embedding[p][static_cast<std::size_t>(u)]);
  }
  // Cross elements: hom(a, x) = hom_X(F a, x). A zero object of A keeps no cross morphisms.
  const AInfFunctor* functors[] = {&f, &g};
  for (int side = 0; side < 2; ++side) {
    const Origin o = side == 0 ? Origin::B : Origin::C;
    const AInfFunctor& F = *functors[side];
    const AInfCategory& X = *F.target;
    const char* prefix = side == 0 ? "f[" : "g[";
    for (int a = 0; a < A.object_count(); ++a) {
      if (A.units[static_cast<std::size_t>(a)] < 0) continue;
      const int fa = F.object_map[static_cast<std::size_t>(a)];
      for (int i = 0; i < X.size(); ++i) {
        const auto& b = X.basis[static_cast<std::size_t>(i)];
        if (b.source != fa) continue;
        G.cross[{o, a, i}] = cat->size();
        cat->basis.push_back({prefix + A.objects[static_cast<std::size_t>(a)] + "]" + b.label,
                              G.object_embedding[0][static_cast<std::size_t>(a)],
                              G.object_embedding[part(o)][static_cast<std::size_t>(b.target)], b.degree});
      }
      const int tu = X.units[static_cast<std::size_t>(fa)];
      G.adjacent.push_back({G.object_embedding[0][static_cast<std::size_t>(a)],
                            G.object_embedding[part(o)][static_cast<std::size_t>(fa)],
                            tu < 0 ? -1 : G.cross.at({o, a, tu}), o});
    }
  }
  // Structure maps inside each part.
  for (std::size_t p = 0; p < 3; ++p)
    for (const auto& [k, table] : G.parts[p]->mu) {
      if (k > cat->max_arity) continue;
      for (const auto& [w, out] : table) {
        Word nw;
        for (int i : w) nw.push_back(G.basis_embedding[p][static_cast<std::size_t>(i)]);
        Combination nout;
        for (const auto& [i, c] : out) nout[G.basis_embedding[p][static_cast<std::size_t>(i)]] = c;
        cat->mu[k][nw] = nout;
      }
    }
  // Cross words (y_1 … y_m, z, x_1 … x_r).
  for (int side = 0; side < 2; ++side) {
    const Origin o = side == 0 ? Origin::B : Origin::C;
    const AInfFunctor& F = *functors[side];
    const AInfCategory& X = *F.target;
    for (const auto& [key, zg] : G.cross) {
      const auto& [zo, a, zi] = key;
      if (zo != o) continue;
      const auto& zb = X.basis[static_cast<std::size_t>(zi)];
      for (int m = 0; m + 1 <= cat->max_arity; ++m)
        chains_ending(X, zb.target, m, true, [&](const Word& yrev) {
          // yrev runs from z's target outward; listed order is reversed.
          const Word y(yrev.rbegin(), yrev.rend());
          for (int r = 0; m + 1 + r <= cat->max_arity; ++r) {
            chains_ending(A, a, r, false, [&](const Word& x) {
              std::vector<int> deg;
              for (int i : y) deg.push_back(X.basis[static_cast<std::size_t>(i)].degree);
              deg.push_back(zb.degree);
              for (int i : x) deg.push_back(A.basis[static_cast<std::size_t>(i)].degree);
              const long base = shift_exponent(deg);
              Combination total;
              std::vector<int> parts;
              std::function<void(int)> rec = [&](int used) {
                if (used == r) {
                  long e = base;
                  int before = 0;
                  std::vector<Combination> blocks;
                  std::vector<int> outer_deg(deg.begin(), deg.begin() + m + 1);
                  for (int len : parts) {
                    const std::vector<int> bd(deg.begin() + m + 1 + before, deg.begin() + m + 1 + before + len);
                    e += shift_exponent(bd);
                    int sum = len - 1;
                    for (int d : bd) sum += d;
                    outer_deg.push_back(sum);
                    blocks.push_back(F.apply(len, Word(x.begin() + before, x.begin() + before + len)));
                    if (blocks.back().empty()) return;
                    before += len;
                  }
                  e += shift_exponent(outer_deg);
                  Word w(y);
                  w.push_back(zi);
                  w.resize(w.size() + blocks.size());
                  std::function<void(std::size_t, Integer)> expand = [&](std::size_t u, Integer coeff) {
                    if (u == blocks.size()) {
                      add_scaled(total, X.apply(static_cast<int>(w.size()), w), coeff * sign_of(e));
                      return;
                    }
                    for (const auto& [v, c] : blocks[u]) {
                      w[static_cast<std::size_t>(m + 1) + u] = v;
                      expand(u + 1, coeff * c);
                    }
                  };
                  expand(0, 1);
                  return;
                }
                for (int len = 1; used + len <= r; ++len) {
                  parts.push_back(len);
                  rec(used + len);
                  parts.pop_back();
                }
              };
              rec(0);
              reduce_coefficients(total, mod);
              if (total.empty()) return;
              const int src = r == 0 ? a : A.basis[static_cast<std::size_t>(x.back())].source;
              Combination out;
              for (const auto& [v, c] : total) out[G.cross.at({o, src, v})] = c;
              Word gw;
              for (int i : y) gw.push_back(G.basis_embedding[part(o)][static_cast<std::size_t>(i)]);
              gw.push_back(zg);
              for (int i : x) gw.push_back(G.basis_embedding[0][static_cast<std::size_t>(i)]);
              cat->mu[static_cast<int>(gw.size())][gw] = out;
            });
          }
        });
    }
  }
  validate_structure(*cat);
  const RelationReport rel = check_ainf_relations(*cat, std::min(3, cat->max_arity));
  if (!rel.ok) throw ValidationError("Grothendieck construction: " + rel.describe(*cat));
  G.category = cat;
  return G;
}

AInfFunctor groth_embedding(const GrothCategory& G, Origin p) {
  AInfFunctor F;
  F.source = G.parts[part(p)];
  F.target = G.category;
  F.max_arity = G.category->max_arity;
  F.object_map = G.object_embedding[part(p)];
  for (int i = 0; i < F.source->size(); ++i) F.components[1][{i}] = {{G.basis_embedding[part(p)][static_cast<std::size_t>(i)], 1}};
  return F;
}

bool provenance_respected(const GrothCategory& G) {
  for (const auto& b : G.category->basis) {
    const Origin s = G.provenance[static_cast<std::size_t>(b.source)];
    const Origin t = G.provenance[static_cast<std::size_t>(b.target)];
    if (s != t && s != Origin::A) return false;
  }
  return true;
}

// --- localization ---------------------------------------------------------------

namespace {

struct Item {
  bool inverse = false;
  int j = 0;
  int from = 0, to = 0;
  IntVector v;
};

using WordCombination = std::map<FractionWord, Integer>;

class Fractions {
public:
  Fractions(const LinearCategory& H, const std::vector<InvertedMorphism>& S) : H_(H), S_(S) {}

  int segment_source(const FractionWord& w, std::size_t i) const {
    return i == 0 ? w.source : S_[static_cast<std::size_t>(w.inverses[i - 1])].source;
  }
  int segment_target(const FractionWord& w, std::size_t i) const {
    return i == w.inverses.size() ? w.target : S_[static_cast<std::size_t>(w.inverses[i])].target;
  }

  std::vector<Item> items(const FractionWord& w) const {
    std::vector<Item> out;
    for (std::size_t i = 0; i < w.generators.size(); ++i) {
      if (i > 0) out.push_back({true, w.inverses[i - 1], 0, 0, {}});
      const int a = segment_source(w, i), b = segment_target(w, i);
      IntVector e = IntVector::Zero(H_.hom(a, b).size());
      e(w.generators[i]) = 1;
      out.push_back({false, 0, a, b, e});
    }
    return out;
  }

  Item element(int a, int b, IntVector v) const { return {false, 0, a, b, std::move(v)}; }
  Item identity(int a) const { return element(a, a, H_.units[static_cast<std::size_t>(a)]); }
  Item inverse(int j) const { return {true, j, 0, 0, {}}; }

  /// Composes adjacent elements and expands into words.
  WordCombination normal_form(const std::vector<Item>& in) const {
    std::vector<Item> seq;
    for (const Item& it : in) {
      if (it.inverse) {
        const InvertedMorphism& s = S_[static_cast<std::size_t>(it.j)];
        if (seq.empty() || seq.back().inverse) seq.push_back(identity(s.target));
        seq.push_back(it);
      } else if (!seq.empty() && !seq.back().inverse) {
        Item& last = seq.back();
        last.v = H_.compose(last.from, last.to, it.to, it.v, last.v);
        last.to = it.to;
      } else {
        seq.push_back(it);
      }
    }
    if (!seq.empty() && seq.back().inverse) seq.push_back(identity(S_[static_cast<std::size_t>(seq.back().j)].source));
    WordCombination out;
    if (seq.empty()) return out;
    FractionWord w;
    w.source = seq.front().from;
    w.target = seq.back().to;
    for (const Item& it : seq)
      if (it.inverse) w.inverses.push_back(it.j);
    std::vector<const Item*> elems;
    for (const Item& it : seq)
      if (!it.inverse) elems.push_back(&it);
    w.generators.assign(elems.size(), 0);
    std::function<void(std::size_t, Integer)> expand = [&](std::size_t u, Integer c) {
      if (u == elems.size()) {
        Integer& slot = out[w];
        slot += c;
        if (H_.modulus != 0) slot = ((slot % H_.modulus) + H_.modulus) % H_.modulus;
        if (slot == 0) out.erase(w);
        return;
      }
      const IntVector& v = elems[u]->v;
      for (Index i = 0; i < v.size(); ++i) {
        if (v(i) == 0) continue;
        w.generators[u] = static_cast<int>(i);
        expand(u + 1, c * v(i));
      }
    };
    expand(0, 1);
    return out;
  }

  /// Words with at most `m` inverses, bucketed by endpoints and inverse count.
  std::map<std::pair<int, int>, std::vector<std::vector<FractionWord>>> enumerate(int m) const {
    std::map<std::pair<int, int>, std::vector<std::vector<FractionWord>>> out;
    const int n = H_.object_count();
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y) out[{x, y}].resize(static_cast<std::size_t>(m + 1));
    for (int x = 0; x < n; ++x) {
      FractionWord w;
      w.source = x;
      std::function<void(int)> rec = [&](int o) {
        for (int q = 0; q < n; ++q) {
          const Index size = H_.hom(o, q).size();
          for (Index gen = 0; gen < size; ++gen) {
            w.generators.push_back(static_cast<int>(gen));
            w.target = q;
            out[{x, q}][w.inverses.size()].push_back(w);
            if (static_cast<int>(w.inverses.size()) < m)
              for (std::size_t j = 0; j < S_.size(); ++j) {
                if (S_[j].target != q) continue;
                w.inverses.push_back(static_cast<int>(j));
                rec(S_[j].source);
                w.inverses.pop_back();
              }
            w.generators.pop_back();
          }
        }
      };
      rec(x);
    }
    return out;
  }

  LocalizedHCategory::Presentation present(
      int x, int y, int m, const std::map<std::pair<int, int>, std::vector<std::vector<FractionWord>>>& words) const {
    LocalizedHCategory::Presentation P;
    for (int k = 0; k <= m; ++k)
      for (const auto& w : words.at({x, y})[static_cast<std::size_t>(k)]) P.words.push_back(w);
    std::map<FractionWord, Index> at;
    for (std::size_t i = 0; i < P.words.size(); ++i) at[P.words[i]] = static_cast<Index>(i);
    std::set<std::vector<std::pair<Index, Integer>>> rows;
    auto add_row = [&](const WordCombination& plus, const WordCombination& minus) {
      std::map<Index, Integer> r;
      for (const auto& [w, c] : plus) r[at.at(w)] += c;
      for (const auto& [w, c] : minus) r[at.at(w)] -= c;
      std::vector<std::pair<Index, Integer>> row;
      for (auto& [i, c] : r) {
        Integer v = c;
        if (H_.modulus != 0) v = ((v % H_.modulus) + H_.modulus) % H_.modulus;
        if (v != 0) row.push_back({i, v});
      }
      if (!row.empty()) rows.insert(row);
    };
    for (std::size_t i = 0; i < P.words.size(); ++i) {
      const FractionWord& w = P.words[i];
      if (H_.modulus != 0) {
        rows.insert({{static_cast<Index>(i), H_.modulus}});
        continue;
      }
      for (std::size_t s = 0; s < w.generators.size(); ++s) {
        const Integer& t = H_.hom(segment_source(w, s), segment_target(w, s)).orders[static_cast<std::size_t>(w.generators[s])];
        if (t != 0) rows.insert({{static_cast<Index>(i), t}});
      }
    }
    for (std::size_t j = 0; j < S_.size(); ++j) {
      const InvertedMorphism& s = S_[j];
      for (int m1 = 0; m1 < m; ++m1)
        for (int m2 = 0; m1 + m2 + 1 <= m; ++m2) {
          // ℓ · s⁻¹ s · r = ℓ · r at the source of s.
          for (const auto& l : words.at({x, s.source})[static_cast<std::size_t>(m1)])
            for (const auto& r : words.at({s.source, y})[static_cast<std::size_t>(m2)]) {
              std::vector<Item> lhs = items(l), rhs = items(l);
              const auto ri = items(r);
              lhs.push_back(element(s.source, s.target, s.element));
              lhs.push_back(inverse(static_cast<int>(j)));
              lhs.insert(lhs.end(), ri.begin(), ri.end());
              rhs.insert(rhs.end(), ri.begin(), ri.end());
              add_row(normal_form(lhs), normal_form(rhs));
            }
          // ℓ · s s⁻¹ · r = ℓ · r at the target of s.
          for (const auto& l : words.at({x, s.target})[static_cast<std::size_t>(m1)])
            for (const auto& r : words.at({s.target, y})[static_cast<std::size_t>(m2)]) {
              std::vector<Item> lhs = items(l), rhs = items(l);
              const auto ri = items(r);
              lhs.push_back(inverse(static_cast<int>(j)));
              lhs.push_back(element(s.source, s.target, s.element));
              lhs.insert(lhs.end(), ri.begin(), ri.end());
              rhs.insert(rhs.end(), ri.begin(), ri.end());
              add_row(normal_form(lhs), normal_form(rhs));
            }
        }
    }
    P.relations = zero_matrix(static_cast<Index>(rows.size()), static_cast<Index>(P.words.size()));
    Index r = 0;
    for (const auto& row : rows) {
      for (const auto& [i, c] : row) P.relations(r, i) = c;
      ++r;
    }
    P.quotient = quotient_by_rows(static_cast<Index>(P.words.size()), P.relations);
    return P;
  }

private:
  const LinearCategory& H_;
  const std::vector<InvertedMorphism>& S_;
};

IntVector classify_in(const LocalizedHCategory::Presentation& P, const WordCombination& x) {
  IntVector v = IntVector::Zero(static_cast<Index>(P.words.size()));
  for (const auto& [w, c] : x) {
    const auto it = std::lower_bound(P.words.begin(), P.words.end(), w);
    if (it == P.words.end() || !(*it == w)) throw InputError("word outside the localization bound");
    v(it - P.words.begin()) += c;
  }
  return P.quotient.classify(v);
}

WordCombination words_of(const LocalizedHCategory::Presentation& P, const IntVector& v) {
  WordCombination out;
  for (Index i = 0; i < v.size(); ++i)
    if (v(i) != 0) out[P.words[static_cast<std::size_t>(i)]] += v(i);
  return out;
}

bool isomorphism(const IntMatrix& M, const std::vector<Integer>& so, const std::vector<Integer>& to, const Integer& modulus) {
  return is_group_isomorphism(M, so, to, modulus);
}

}  // namespace

IntVector LocalizedHCategory::classify(const FractionWord& w) const {
  const auto& P = presentations.at({w.source, w.target});
  IntVector v = classify_in(P, {{w, 1}});
  return category.reduce(w.source, w.target, v);
}

LocalizedHCategory localize(const LinearCategory& H, const std::vector<InvertedMorphism>& S, int bound) {
  if (H.rational) throw InputError("localization needs integer or prime-field coefficients");
  if (bound < 1) throw InputError("word bound must be at least 1");
  for (const auto& s : S) {
    if (s.source < 0 || s.source >= H.object_count() || s.target < 0 || s.target >= H.object_count())
      throw InputError("inverted morphism endpoint out of range");
    if (s.element.size() != H.hom(s.source, s.target).size())
      throw InputError("inverted morphism has the wrong number of coordinates");
  }
  // Sorted words make lookups by binary search possible.
  const int m = (bound - 1) / 2;
  const Fractions F(H, S);
  auto words = F.enumerate(m + 1);
  for (auto& [key, buckets] : words)
    for (auto& b : buckets) std::sort(b.begin(), b.end());

  const int n = H.object_count();
  std::vector<std::pair<int, int>> pairs;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) pairs.push_back({x, y});
  std::vector<LocalizedHCategory::Presentation> small(pairs.size()), big(pairs.size());
  parallel_for(pairs.size(), [&](std::size_t i) {
    small[i] = F.present(pairs[i].first, pairs[i].second, m, words);
    big[i] = F.present(pairs[i].first, pairs[i].second, m + 1, words);
  });
  for (auto* list : {&small, &big})
    for (auto& P : *list) {
      std::vector<std::size_t> order(P.words.size());
      for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
      std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return P.words[a] < P.words[b]; });
      bool sorted = std::is_sorted(P.words.begin(), P.words.end());
      if (!sorted) {
        std::vector<FractionWord> w;
        IntMatrix R(P.relations.rows(), P.relations.cols());
        IntMatrix coords(P.quotient.coordinates.rows(), P.quotient.coordinates.cols());
        IntMatrix reps(P.quotient.representatives.rows(), P.quotient.representatives.cols());
        for (std::size_t k = 0; k < order.size(); ++k) {
          w.push_back(P.words[order[k]]);
          R.col(static_cast<Index>(k)) = P.relations.col(static_cast<Index>(order[k]));
          coords.col(static_cast<Index>(k)) = P.quotient.coordinates.col(static_cast<Index>(order[k]));
          reps.row(static_cast<Index>(k)) = P.quotient.representatives.row(static_cast<Index>(order[k]));
        }
        P.words = std::move(w);
        P.relations = std::move(R);
        P.quotient.coordinates = std::move(coords);
        P.quotient.representatives = std::move(reps);
      }
    }

  LocalizedHCategory out;
  out.homotopy = H;
  out.inverted = S;
  out.bound = bound;
  LinearCategory& L = out.category;
  L.objects = H.objects;
  L.modulus = H.modulus;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    auto orders = small[i].quotient.orders;
    if (H.modulus != 0) std::fill(orders.begin(), orders.end(), Integer(0));
    L.homs[pairs[i]] = LinearCategory::Hom{orders};
    out.presentations[pairs[i]] = small[i];
  }

  // Inclusion of bound m into bound m + 1, and reductions of words with m + 1
  // inverses to shorter ones.
  out.complete = true;
  bool reducible = true;
  std::map<FractionWord, WordCombination> reduction;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto& P = small[i];
    const auto& Q = big[i];
    IntMatrix M = zero_matrix(static_cast<Index>(Q.quotient.orders.size()), static_cast<Index>(P.quotient.orders.size()));
    for (Index r = 0; r < M.cols(); ++r) M.col(r) = classify_in(Q, words_of(P, P.quotient.representatives.col(r)));
    if (!isomorphism(M, P.quotient.orders, Q.quotient.orders, 0)) out.complete = false;
    // Columns of the short words in Q, with torsion slack.
    std::vector<Index> shorter;
    for (std::size_t k = 0; k < Q.words.size(); ++k)
      if (static_cast<int>(Q.words[k].inverses.size()) <= m) shorter.push_back(static_cast<Index>(k));
    Index slack = 0;
    for (const auto& o : Q.quotient.orders)
      if (o != 0) ++slack;
    IntMatrix A = zero_matrix(Q.quotient.coordinates.rows(), static_cast<Index>(shorter.size()) + slack);
    for (std::size_t k = 0; k < shorter.size(); ++k) A.col(static_cast<Index>(k)) = Q.quotient.coordinates.col(shorter[k]);
    Index c = static_cast<Index>(shorter.size());
    for (std::size_t r = 0; r < Q.quotient.orders.size(); ++r)
      if (Q.quotient.orders[r] != 0) A(static_cast<Index>(r), c++) = Q.quotient.orders[r];
    for (std::size_t k = 0; k < Q.words.size(); ++k) {
      if (static_cast<int>(Q.words[k].inverses.size()) != m + 1) continue;
      const auto sol = solve_linear(A, Q.quotient.coordinates.col(static_cast<Index>(k)));
      if (!sol) {
        reducible = false;
        continue;
      }
      WordCombination red;
      for (std::size_t s = 0; s < shorter.size(); ++s)
        if ((*sol)(static_cast<Index>(s)) != 0) red[Q.words[static_cast<std::size_t>(shorter[s])]] = (*sol)(static_cast<Index>(s));
      reduction[Q.words[k]] = std::move(red);
    }
  }

  // Rewrites words with more than m inverses through the reductions.
  std::function<WordCombination(const WordCombination&)> shorten = [&](const WordCombination& x) {
    WordCombination outc;
    std::vector<std::pair<FractionWord, Integer>> todo(x.begin(), x.end());
    while (!todo.empty()) {
      auto [w, c] = todo.back();
      todo.pop_back();
      if (static_cast<int>(w.inverses.size()) <= m) {
        Integer& slot = outc[w];
        slot += c;
        if (slot == 0) outc.erase(w);
        continue;
      }
      FractionWord head;
      head.source = w.source;
      head.generators.assign(w.generators.begin(), w.generators.begin() + m + 2);
      head.inverses.assign(w.inverses.begin(), w.inverses.begin() + m + 1);
      head.target = F.segment_target(w, static_cast<std::size_t>(m + 1));
      const auto it = reduction.find(head);
      if (it == reduction.end()) throw UnstableError("localization is incomplete at this bound; increase it");
      for (const auto& [h, hc] : it->second) {
        FractionWord nw;
        nw.source = w.source;
        nw.target = w.target;
        nw.generators = h.generators;
        nw.generators.insert(nw.generators.end(), w.generators.begin() + m + 2, w.generators.end());
        nw.inverses = h.inverses;
        nw.inverses.insert(nw.inverses.end(), w.inverses.begin() + m + 1, w.inverses.end());
        todo.push_back({nw, c * hc});
      }
    }
    return outc;
  };

  for (int x = 0; x < n; ++x) {
    const auto& P = out.presentations.at({x, x});
    const Item id = F.identity(x);
    L.units.push_back(L.reduce(x, x, classify_in(P, F.normal_form({id}))));
  }
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      const Index k = H.hom(x, y).size();
      IntMatrix M = zero_matrix(L.hom(x, y).size(), k);
      for (Index g = 0; g < k; ++g) {
        IntVector e = IntVector::Zero(k);
        e(g) = 1;
        M.col(g) = L.reduce(x, y, classify_in(out.presentations.at({x, y}), F.normal_form({F.element(x, y, e)})));
      }
      out.localization_map[{x, y}] = M;
    }

  out.composition_available = reducible;
  if (reducible) {
    std::vector<std::tuple<int, int, int>> triples;
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        for (int z = 0; z < n; ++z) triples.push_back({x, y, z});
    std::vector<std::vector<std::vector<IntVector>>> tables(triples.size());
    parallel_for(triples.size(), [&](std::size_t t) {
      const auto [x, y, z] = triples[t];
      const auto& Pxy = out.presentations.at({x, y});
      const auto& Pyz = out.presentations.at({y, z});
      const auto& Pxz = out.presentations.at({x, z});
      auto& table = tables[t];
      table.assign(static_cast<std::size_t>(L.hom(y, z).size()), std::vector<IntVector>(static_cast<std::size_t>(L.hom(x, y).size())));
      for (Index i = 0; i < L.hom(y, z).size(); ++i)
        for (Index j = 0; j < L.hom(x, y).size(); ++j) {
          const WordCombination gi = words_of(Pyz, Pyz.quotient.representatives.col(i));
          const WordCombination hj = words_of(Pxy, Pxy.quotient.representatives.col(j));
          WordCombination prod;
          for (const auto& [w2, c2] : hj)
            for (const auto& [w1, c1] : gi) {
              std::vector<Item> seq = F.items(w2);
              const auto tail = F.items(w1);
              seq.insert(seq.end(), tail.begin(), tail.end());
              for (const auto& [w, c] : F.normal_form(seq)) prod[w] += c * c1 * c2;
            }
          table[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = L.reduce(x, z, classify_in(Pxz, shorten(prod)));
        }
    });
    for (std::size_t t = 0; t < triples.size(); ++t) L.composition[triples[t]] = std::move(tables[t]);
  }
  return out;
}

namespace {

LinearCategory h_of(const GrothCategory& G) { return homotopy_category(*G.category); }

std::vector<InvertedMorphism> adjacent_elements(const GrothCategory& G, const LinearCategory& H) {
  std::vector<InvertedMorphism> S;
  for (const auto& a : G.adjacent) {
    InvertedMorphism s;
    s.source = a.source;
    s.target = a.target;
    if (a.basis < 0) s.element = IntVector::Zero(H.hom(a.source, a.target).size());
    else s.element = h0_class(*G.category, H, a.source, a.target, {{a.basis, 1}});
    S.push_back(std::move(s));
  }
  return S;
}

}  // namespace

LocalizedHCategory localize_h(const GrothCategory& G, int bound) {
  const LinearCategory H = h_of(G);
  return localize(H, adjacent_elements(G, H), bound);
}

// --- pushout checks -----------------------------------------------------------------

namespace {

/// Chain-level cycle representing generator j of H(x, y).
Combination representative(const AInfCategory& C, const LinearCategory& H, int x, int y, Index j) {
  const auto elems = C.hom(x, y, 0);
  const auto& S = H.presentations.at({x, y});
  Combination out;
  for (std::size_t p = 0; p < elems.size(); ++p) {
    const Integer& c = S.generators(static_cast<Index>(p), j);
    if (c != 0) out[elems[p]] = c;
  }
  return out;
}

struct Cocone {
  std::vector<int> objects;                       // 1 for the point, 0 for the zero object
  std::map<std::pair<int, int>, IntVector> values;  // per hom of the part, on generators
};

Integer reduce_scalar(const Integer& v, const Integer& modulus) {
  if (modulus == 0) return v;
  Integer r = v % modulus;
  return r < 0 ? Integer(r + modulus) : r;
}

Integer dot(const IntVector& a, const IntVector& b, const Integer& modulus) {
  Integer s = 0;
  for (Index i = 0; i < a.size(); ++i) s += a(i) * b(i);
  return reduce_scalar(s, modulus);
}

/// Functors from a linear category to {pt, 0} with End(pt) = ground ring and
/// generator values in {−1, 0, 1}. Returns false when the search exceeds `cap`.
bool enumerate_cocone_functors(const LinearCategory& H, const std::vector<int>& objects, std::vector<Cocone>& out,
                               long cap) {
  const Integer mod = H.modulus;
  const int n = static_cast<int>(objects.size());
  const std::vector<int> values = mod == 2 ? std::vector<int>{0, 1} : std::vector<int>{-1, 0, 1};
  long visited = 0;
  for (int mask = 0; mask < (1 << n); ++mask) {
    Cocone c;
    for (int i = 0; i < n; ++i) c.objects.push_back((mask >> i) & 1);
    std::vector<std::pair<int, int>> slots;  // (pair index, generator)
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) {
        const int x = objects[static_cast<std::size_t>(i)], y = objects[static_cast<std::size_t>(k)];
        pairs.push_back({x, y});
        c.values[{x, y}] = IntVector::Zero(H.hom(x, y).size());
        if (!c.objects[static_cast<std::size_t>(i)] || !c.objects[static_cast<std::size_t>(k)]) continue;
        const auto& orders = H.hom(x, y).orders;
        for (std::size_t g = 0; g < orders.size(); ++g)
          if (orders[g] == 0 || mod != 0) slots.push_back({static_cast<int>(pairs.size() - 1), static_cast<int>(g)});
      }
    auto lawful = [&]() {
      for (int i = 0; i < n; ++i) {
        if (!c.objects[static_cast<std::size_t>(i)]) continue;
        const int x = objects[static_cast<std::size_t>(i)];
        if (dot(c.values[{x, x}], H.units[static_cast<std::size_t>(x)], mod) != reduce_scalar(1, mod)) return false;
      }
      for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k)
          for (int l = 0; l < n; ++l) {
            const int x = objects[static_cast<std::size_t>(i)], y = objects[static_cast<std::size_t>(k)],
                      z = objects[static_cast<std::size_t>(l)];
            const auto& table = H.composition.at({x, y, z});
            const IntVector& vyz = c.values[{y, z}];
            const IntVector& vxy = c.values[{x, y}];
            const IntVector& vxz = c.values[{x, z}];
            for (std::size_t gi = 0; gi < table.size(); ++gi)
              for (std::size_t hj = 0; hj < table[gi].size(); ++hj)
                if (dot(vxz, table[gi][hj], mod) != reduce_scalar(vyz(static_cast<Index>(gi)) * vxy(static_cast<Index>(hj)), mod))
                  return false;
          }
      return true;
    };
    std::function<bool(std::size_t)> rec = [&](std::size_t s) -> bool {
      if (++visited > cap) return false;
      if (s == slots.size()) {
        if (lawful()) out.push_back(c);
        return true;
      }
      const auto [p, g] = slots[s];
      for (int v : values) {
        c.values[pairs[static_cast<std::size_t>(p)]](g) = reduce_scalar(v, mod);
        if (!rec(s + 1)) return false;
      }
      c.values[pairs[static_cast<std::size_t>(p)]](g) = 0;
      return true;
    };
    if (!rec(0)) return false;
  }
  return true;
}

}  // namespace

PushoutReport check_pushout_and_cofibration(const AInfFunctor& f, const AInfFunctor& g, int bound) {
  const GrothCategory G = grothendieck_construction(f, g);
  if (!is_quasi_fully_faithful(f)) throw PreconditionError("f is not quasi fully-faithful, so it is not a cofibration");
  PushoutReport rep;
  rep.f_fully_faithful = true;
  rep.provenance = provenance_respected(G);
  for (Origin o : {Origin::A, Origin::B, Origin::C}) rep.embeddings[part(o)] = is_quasi_fully_faithful(groth_embedding(G, o));

  const LinearCategory H = h_of(G);
  const LocalizedHCategory L = localize(H, adjacent_elements(G, H), bound);
  rep.localization_status = L.status();
  const AInfCategory& GC = *G.category;

  auto compare = [&](Origin o, std::vector<HomComparison>& list) {
    const auto& objs = G.object_embedding[part(o)];
    bool all = true;
    for (int x : objs)
      for (int y : objs) {
        HomComparison h;
        h.source = GC.objects[static_cast<std::size_t>(x)];
        h.target = GC.objects[static_cast<std::size_t>(y)];
        h.before = H.hom(x, y).group();
        h.after = L.category.hom(x, y).group();
        h.isomorphic = is_group_isomorphism(L.localization_map.at({x, y}), H.hom(x, y).orders, L.category.hom(x, y).orders, H.modulus);
        all = all && h.isomorphic;
        list.push_back(std::move(h));
      }
    return all;
  };
  rep.g_star_fully_faithful = compare(Origin::C, rep.square);
  rep.f_star_fully_faithful = compare(Origin::B, rep.quotient);

  // Cocones on the B and C parts, read through the Groth category.
  const Integer mod = H.modulus;
  std::vector<Cocone> PB, QC;
  const long cap = 2000000;
  const bool finished = enumerate_cocone_functors(H, G.object_embedding[1], PB, cap) &&
                        enumerate_cocone_functors(H, G.object_embedding[2], QC, cap);
  if (!finished) {
    rep.pushout_certified = Verdict::Undetermined;
    rep.detail = "cocone enumeration exceeded its budget";
    return rep;
  }
  const AInfCategory& A = *G.parts[0];
  const int nG = GC.object_count();
  // Transport matrices: hom(x, y) generators → hom of the part they land in.
  struct Route {
    Origin side;
    int x, y;      // Groth objects in the part
    IntMatrix M;   // part generators × generators
  };
  std::map<std::pair<int, int>, std::vector<Route>> routes;
  for (int x = 0; x < nG; ++x)
    for (int y = 0; y < nG; ++y) {
      const Index k = H.hom(x, y).size();
      if (k == 0) continue;
      const Origin ox = G.provenance[static_cast<std::size_t>(x)], oy = G.provenance[static_cast<std::size_t>(y)];
      if (ox != Origin::A) {
        routes[{x, y}].push_back({ox, x, y, IntMatrix::Identity(k, k)});
        continue;
      }
      auto a_index = [&](int obj) {
        return static_cast<int>(std::find(G.object_embedding[0].begin(), G.object_embedding[0].end(), obj) - G.object_embedding[0].begin());
      };
      const int a = a_index(x);
      if (oy == Origin::A) {
        // Through f and through g; the cocone condition compares the two.
        const int a2 = a_index(y);
        for (int side = 0; side < 2; ++side) {
          const AInfFunctor& F = side == 0 ? f : g;
          const Origin o = side == 0 ? Origin::B : Origin::C;
          const int fx = G.object_embedding[part(o)][static_cast<std::size_t>(F.object_map[static_cast<std::size_t>(a)])];
          const int fy = G.object_embedding[part(o)][static_cast<std::size_t>(F.object_map[static_cast<std::size_t>(a2)])];
          IntMatrix M = zero_matrix(H.hom(fx, fy).size(), k);
          for (Index j = 0; j < k; ++j) {
            Combination img;
            for (const auto& [idx, c] : representative(GC, H, x, y, j)) {
              const auto& emb = G.basis_embedding[0];
              const int ai = static_cast<int>(std::find(emb.begin(), emb.end(), idx) - emb.begin());
              for (const auto& [t, tc] : F.apply(1, {ai})) img[G.basis_embedding[part(o)][static_cast<std::size_t>(t)]] += c * tc;
            }
            M.col(j) = h0_class(GC, H, fx, fy, img);
          }
          routes[{x, y}].push_back({o, fx, fy, M});
        }
      } else {
        const AInfFunctor& F = oy == Origin::B ? f : g;
        const int fx = G.object_embedding[part(oy)][static_cast<std::size_t>(F.object_map[static_cast<std::size_t>(a)])];
        IntMatrix M = zero_matrix(H.hom(fx, y).size(), k);
        for (Index j = 0; j < k; ++j) {
          Combination img;
          for (const auto& [idx, c] : representative(GC, H, x, y, j))
            for (const auto& [key, gi] : G.cross)
              if (gi == idx) img[G.basis_embedding[part(oy)][static_cast<std::size_t>(std::get<2>(key))]] += c;
          M.col(j) = h0_class(GC, H, fx, y, img);
        }
        routes[{x, y}].push_back({oy, fx, y, M});
      }
    }

  auto object_value = [&](const Cocone& P, const Cocone& Q, int x) {
    const Origin o = G.provenance[static_cast<std::size_t>(x)];
    if (o == Origin::B) return P.objects[static_cast<std::size_t>(std::find(G.object_embedding[1].begin(), G.object_embedding[1].end(), x) - G.object_embedding[1].begin())];
    if (o == Origin::C) return Q.objects[static_cast<std::size_t>(std::find(G.object_embedding[2].begin(), G.object_embedding[2].end(), x) - G.object_embedding[2].begin())];
    const int a = static_cast<int>(std::find(G.object_embedding[0].begin(), G.object_embedding[0].end(), x) - G.object_embedding[0].begin());
    if (A.units[static_cast<std::size_t>(a)] < 0) return 0;
    return P.objects[static_cast<std::size_t>(f.object_map[static_cast<std::size_t>(a)])];
  };

  bool all_factor = true;
  int checked = 0;
  for (const Cocone& P : PB)
    for (const Cocone& Q : QC) {
      // Cocone condition on objects and on H(A).
      bool cocone = true;
      for (int a = 0; a < A.object_count() && cocone; ++a) {
        if (A.units[static_cast<std::size_t>(a)] < 0) continue;
        cocone = P.objects[static_cast<std::size_t>(f.object_map[static_cast<std::size_t>(a)])] ==
                 Q.objects[static_cast<std::size_t>(g.object_map[static_cast<std::size_t>(a)])];
      }
      std::map<std::pair<int, int>, IntVector> phi;
      for (const auto& [key, list] : routes) {
        std::vector<IntVector> candidates;
        for (const Route& r : list) {
          const Cocone& X = r.side == Origin::B ? P : Q;
          candidates.push_back(X.values.at({r.x, r.y}).transpose() * r.M);
        }
        for (auto& v : candidates)
          for (Index i = 0; i < v.size(); ++i) v(i) = reduce_scalar(v(i), mod);
        for (std::size_t i = 1; i < candidates.size(); ++i)
          if (candidates[i] != candidates[0]) cocone = false;
        phi[key] = candidates[0];
      }
      if (!cocone) continue;
      ++checked;
      // The induced functional on words must kill every relation.
      for (const auto& [key, Pres] : L.presentations) {
        if (Pres.words.empty()) continue;
        IntVector val = IntVector::Zero(static_cast<Index>(Pres.words.size()));
        for (std::size_t i = 0; i < Pres.words.size(); ++i) {
          const FractionWord& w = Pres.words[i];
          Integer v = 1;
          for (std::size_t s = 0; s < w.generators.size() && v != 0; ++s) {
            const int a = s == 0 ? w.source : L.inverted[static_cast<std::size_t>(w.inverses[s - 1])].source;
            const int b = s == w.inverses.size() ? w.target : L.inverted[static_cast<std::size_t>(w.inverses[s])].target;
            const auto it = phi.find({a, b});
            v = it == phi.end() ? Integer(0) : v * it->second(w.generators[s]);
          }
          for (int j : w.inverses)
            if (!object_value(P, Q, L.inverted[static_cast<std::size_t>(j)].source)) v = 0;
          val(static_cast<Index>(i)) = reduce_scalar(v, mod);
        }
        const IntVector r = Pres.relations * val;
        for (Index i = 0; i < r.size(); ++i)
          if (reduce_scalar(r(i), mod) != 0) all_factor = false;
      }
    }
  rep.cocones_checked = checked;
  if (!all_factor) {
    rep.pushout_certified = Verdict::False;
    rep.detail = "a cocone does not factor through the localization";
  } else if (!L.complete) {
    rep.pushout_certified = Verdict::Undetermined;
    rep.detail = "localization is bounded, possibly incomplete";
  } else {
    rep.pushout_certified = Verdict::True;
  }
  return rep;
}

// --- gluing -------------------------------------------------------------------------

GluingReport check_gluing(const Span& s, const Span& t, const SpanMap& m, int bound) {
  const AInfFunctor* alphas[] = {&m.alpha_a, &m.alpha_b, &m.alpha_c};
  for (const AInfFunctor* a : alphas) validate_functor_structure(*a);
  for (int a = 0; a < s.f.source->object_count(); ++a) {
    const int ta = m.alpha_a.object_map[static_cast<std::size_t>(a)];
    if (m.alpha_b.object_map[static_cast<std::size_t>(s.f.object_map[static_cast<std::size_t>(a)])] != t.f.object_map[static_cast<std::size_t>(ta)] ||
        m.alpha_c.object_map[static_cast<std::size_t>(s.g.object_map[static_cast<std::size_t>(a)])] != t.g.object_map[static_cast<std::size_t>(ta)])
      throw InputError("span map does not commute with f and g on objects");
  }
  GluingReport rep;
  rep.spans_equivalent = Verdict::True;
  for (const AInfFunctor* a : alphas) {
    const Verdict v = is_quasi_equivalence(*a);
    if (v == Verdict::False) rep.spans_equivalent = Verdict::False;
    else if (v == Verdict::Undetermined && rep.spans_equivalent == Verdict::True) rep.spans_equivalent = Verdict::Undetermined;
  }

  const GrothCategory G = grothendieck_construction(s.f, s.g);
  const GrothCategory G2 = grothendieck_construction(t.f, t.g);
  const LinearCategory H = h_of(G), H2 = h_of(G2);
  const auto S1 = adjacent_elements(G, H), S2 = adjacent_elements(G2, H2);
  const LocalizedHCategory L = localize(H, S1, bound);
  const LocalizedHCategory L2 = localize(H2, S2, bound);
  rep.complete = L.complete && L2.complete;
  const AInfCategory& GC = *G.category;
  const AInfCategory& GC2 = *G2.category;

  // Object and chain-level maps G → G2.
  std::vector<int> obj(static_cast<std::size_t>(GC.object_count()));
  for (std::size_t p = 0; p < 3; ++p)
    for (std::size_t o = 0; o < G.object_embedding[p].size(); ++o)
      obj[static_cast<std::size_t>(G.object_embedding[p][o])] =
          G2.object_embedding[p][static_cast<std::size_t>(alphas[p]->object_map[o])];
  std::map<int, Combination> chain;
  for (std::size_t p = 0; p < 3; ++p)
    for (std::size_t i = 0; i < G.basis_embedding[p].size(); ++i) {
      Combination img;
      for (const auto& [u, c] : alphas[p]->apply(1, {static_cast<int>(i)})) img[G2.basis_embedding[p][static_cast<std::size_t>(u)]] += c;
      chain[G.basis_embedding[p][i]] = img;
    }
  for (const auto& [key, gi] : G.cross) {
    const auto& [o, a, pi] = key;
    const AInfFunctor& alpha = o == Origin::B ? m.alpha_b : m.alpha_c;
    const int ta = m.alpha_a.object_map[static_cast<std::size_t>(a)];
    Combination img;
    for (const auto& [u, c] : alpha.apply(1, {pi})) {
      const auto it = G2.cross.find({o, ta, u});
      if (it == G2.cross.end()) throw InputError("span map does not carry cross morphisms to cross morphisms");
      img[it->second] += c;
    }
    chain[gi] = img;
  }
  auto h_map = [&](int x, int y) {
    const Index k = H.hom(x, y).size();
    const int X = obj[static_cast<std::size_t>(x)], Y = obj[static_cast<std::size_t>(y)];
    IntMatrix M = zero_matrix(H2.hom(X, Y).size(), k);
    for (Index j = 0; j < k; ++j) {
      Combination img;
      for (const auto& [idx, c] : representative(GC, H, x, y, j)) add_scaled(img, chain[idx], c);
      M.col(j) = h0_class(GC2, H2, X, Y, img);
    }
    return M;
  };
  std::vector<int> inv_map;
  for (const auto& a : G.adjacent) {
    int found = -1;
    for (std::size_t j = 0; j < G2.adjacent.size(); ++j)
      if (G2.adjacent[j].source == obj[static_cast<std::size_t>(a.source)] && G2.adjacent[j].side == a.side) found = static_cast<int>(j);
    if (found < 0) throw InputError("span map does not preserve adjacent identities");
    inv_map.push_back(found);
  }
  const Fractions F2(H2, S2);
  const Fractions F1(H, S1);
  rep.fully_faithful = true;
  std::map<std::pair<int, int>, IntMatrix> hm;
  for (int x = 0; x < GC.object_count(); ++x)
    for (int y = 0; y < GC.object_count(); ++y) hm[{x, y}] = h_map(x, y);
  for (const auto& [key, P] : L.presentations) {
    const auto [x, y] = key;
    const int X = obj[static_cast<std::size_t>(x)], Y = obj[static_cast<std::size_t>(y)];
    const auto& P2 = L2.presentations.at({X, Y});
    IntMatrix M = zero_matrix(L2.category.hom(X, Y).size(), L.category.hom(x, y).size());
    for (Index r = 0; r < M.cols(); ++r) {
      WordCombination image;
      for (const auto& [w, c] : words_of(P, P.quotient.representatives.col(r))) {
        std::vector<Item> seq;
        for (std::size_t s2 = 0; s2 < w.generators.size(); ++s2) {
          if (s2 > 0) seq.push_back(F2.inverse(inv_map[static_cast<std::size_t>(w.inverses[s2 - 1])]));
          const int a = F1.segment_source(w, s2), b = F1.segment_target(w, s2);
          seq.push_back(F2.element(obj[static_cast<std::size_t>(a)], obj[static_cast<std::size_t>(b)],
                                   hm[{a, b}].col(w.generators[s2])));
        }
        for (const auto& [w2, c2] : F2.normal_form(seq)) image[w2] += c * c2;
      }
      M.col(r) = L2.category.reduce(X, Y, classify_in(P2, image));
    }
    if (!is_group_isomorphism(M, L.category.hom(x, y).orders, L2.category.hom(X, Y).orders, L2.category.modulus))
      rep.fully_faithful = false;
  }
  if (!rep.fully_faithful) {
    rep.induced_equivalence = Verdict::False;
    rep.detail = "induced map of localizations is not fully faithful";
    return rep;
  }
  if (!L2.composition_available) {
    rep.induced_equivalence = Verdict::Undetermined;
    rep.detail = "target localization has no composition at this bound";
    return rep;
  }
  Verdict ess = Verdict::True;
  for (int y = 0; y < GC2.object_count(); ++y) {
    if (std::find(obj.begin(), obj.end(), y) != obj.end()) continue;
    bool found = false, open = false;
    for (int x : std::set<int>(obj.begin(), obj.end())) {
      const Verdict v = objects_isomorphic(L2.category, x, y);
      if (v == Verdict::True) {
        found = true;
        break;
      }
      if (v == Verdict::Undetermined) open = true;
    }
    if (found) continue;
    if (!open) {
      ess = Verdict::False;
      break;
    }
    ess = Verdict::Undetermined;
  }
  rep.induced_equivalence = ess;
  if (ess == Verdict::True && !rep.complete) rep.induced_equivalence = Verdict::Undetermined;
  if (rep.induced_equivalence != Verdict::True && rep.detail.empty()) rep.detail = "essential surjectivity not established";
  return rep;
}

}  // namespace kzero
