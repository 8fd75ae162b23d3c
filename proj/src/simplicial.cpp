#include "kzero/simplicial.hpp"

#include "kzero/error.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <set>

namespace kzero {

std::vector<MonotoneMap> monotone_maps(int n, int d) {
  std::vector<MonotoneMap> out;
  if (n < 0 || d < 0) return out;
  MonotoneMap m(static_cast<std::size_t>(n + 1));
  std::function<void(int, int)> rec = [&](int i, int lo) {
    if (i > n) {
      out.push_back(m);
      return;
    }
    for (int v = lo; v <= d; ++v) {
      m[static_cast<std::size_t>(i)] = v;
      rec(i + 1, v);
    }
  };
  rec(0, 0);
  return out;
}

namespace {

std::string map_label(const MonotoneMap& m, int d) {
  std::string s;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (d >= 10 && i > 0) s += ",";
    s += std::to_string(m[i]);
  }
  return s;
}

MonotoneMap compose_maps(const MonotoneMap& outer, const MonotoneMap& inner) {
  MonotoneMap out;
  for (int v : inner) out.push_back(outer[static_cast<std::size_t>(v)]);
  return out;
}

}  // namespace

int SimplicialSet::face(int n, int i, int x) const {
  return faces[static_cast<std::size_t>(n)][static_cast<std::size_t>(i)][static_cast<std::size_t>(x)];
}

int SimplicialSet::degeneracy(int n, int i, int x) const {
  return degeneracies[static_cast<std::size_t>(n)][static_cast<std::size_t>(i)][static_cast<std::size_t>(x)];
}

int SimplicialSet::find(int n, const std::string& label) const {
  if (n < 0 || n > dim_bound) return -1;
  const auto& s = simplices[static_cast<std::size_t>(n)];
  const auto it = std::find(s.begin(), s.end(), label);
  return it == s.end() ? -1 : static_cast<int>(it - s.begin());
}

int SimplicialSet::act(const MonotoneMap& theta, int e, int y) const {
  // θ = δ ∘ σ with σ surjective; faces for the missing values go first,
  // largest index first, then degeneracies at the repeats, smallest first.
  std::vector<bool> hit(static_cast<std::size_t>(e + 1), false);
  for (int v : theta) hit[static_cast<std::size_t>(v)] = true;
  int dim = e;
  for (int i = e; i >= 0; --i)
    if (!hit[static_cast<std::size_t>(i)]) y = face(dim--, i, y);
  for (std::size_t j = 0; j + 1 < theta.size(); ++j)
    if (theta[j] == theta[j + 1]) y = degeneracy(dim++, static_cast<int>(j), y);
  return y;
}

std::optional<std::string> SimplicialSet::identity_violation() const {
  auto at = [](int n, int x) { return "dimension " + std::to_string(n) + " simplex " + std::to_string(x); };
  for (int n = 2; n <= dim_bound; ++n)
    for (int x = 0; x < count(n); ++x)
      for (int j = 1; j <= n; ++j)
        for (int i = 0; i < j; ++i)
          if (face(n - 1, i, face(n, j, x)) != face(n - 1, j - 1, face(n, i, x)))
            return "d_" + std::to_string(i) + " d_" + std::to_string(j) + " fails on " + at(n, x);
  for (int n = 0; n + 2 <= dim_bound; ++n)
    for (int x = 0; x < count(n); ++x)
      for (int j = 0; j <= n; ++j)
        for (int i = 0; i <= j; ++i)
          if (degeneracy(n + 1, i, degeneracy(n, j, x)) != degeneracy(n + 1, j + 1, degeneracy(n, i, x)))
            return "s_" + std::to_string(i) + " s_" + std::to_string(j) + " fails on " + at(n, x);
  for (int n = 0; n < dim_bound; ++n)
    for (int x = 0; x < count(n); ++x)
      for (int j = 0; j <= n; ++j) {
        const int sx = degeneracy(n, j, x);
        for (int i = 0; i <= n + 1; ++i) {
          const int lhs = face(n + 1, i, sx);
          int rhs;
          if (i == j || i == j + 1) rhs = x;
          else if (n == 0) continue;
          else if (i < j) rhs = degeneracy(n - 1, j - 1, face(n, i, x));
          else rhs = degeneracy(n - 1, j, face(n, i - 1, x));
          if (lhs != rhs) return "d_" + std::to_string(i) + " s_" + std::to_string(j) + " fails on " + at(n, x);
        }
      }
  return std::nullopt;
}

void SimplicialSet::validate() const {
  if (dim_bound < 0) throw ValidationError("dimension bound must be non-negative");
  const auto bound = static_cast<std::size_t>(dim_bound);
  if (simplices.size() != bound + 1 || faces.size() != bound + 1 || degeneracies.size() != bound + 1)
    throw ValidationError("simplicial set tables must cover dimensions 0.." + std::to_string(dim_bound));
  for (int n = 0; n <= dim_bound; ++n) {
    const auto un = static_cast<std::size_t>(n);
    if (n >= 1) {
      if (faces[un].size() != un + 1) throw ValidationError("wrong number of face maps in dimension " + std::to_string(n));
      for (const auto& f : faces[un]) {
        if (f.size() != simplices[un].size()) throw ValidationError("face map size mismatch in dimension " + std::to_string(n));
        for (int v : f)
          if (v < 0 || v >= count(n - 1)) throw ValidationError("face value out of range in dimension " + std::to_string(n));
      }
    }
    if (n < dim_bound) {
      if (degeneracies[un].size() != un + 1)
        throw ValidationError("wrong number of degeneracies in dimension " + std::to_string(n));
      for (const auto& s : degeneracies[un]) {
        if (s.size() != simplices[un].size()) throw ValidationError("degeneracy size mismatch in dimension " + std::to_string(n));
        for (int v : s)
          if (v < 0 || v >= count(n + 1)) throw ValidationError("degeneracy value out of range in dimension " + std::to_string(n));
      }
    }
  }
  if (auto v = identity_violation()) throw ValidationError("simplicial identity " + *v);
}

namespace {

// Builds the face and degeneracy tables from simplices given as opaque keys
// with key-level face and degeneracy functions.
template <typename Key>
SimplicialSet tabulate(int dim_bound, const std::vector<std::vector<Key>>& keys,
                       const std::function<std::string(int, const Key&)>& label,
                       const std::function<Key(int, int, const Key&)>& face,
                       const std::function<Key(int, int, const Key&)>& degeneracy) {
  SimplicialSet X;
  X.dim_bound = dim_bound;
  const auto levels = static_cast<std::size_t>(dim_bound + 1);
  X.simplices.resize(levels);
  X.faces.resize(levels);
  X.degeneracies.resize(levels);
  std::vector<std::map<Key, int>> index(levels);
  for (std::size_t n = 0; n < levels; ++n)
    for (std::size_t x = 0; x < keys[n].size(); ++x) {
      index[n][keys[n][x]] = static_cast<int>(x);
      X.simplices[n].push_back(label(static_cast<int>(n), keys[n][x]));
    }
  for (int n = 0; n <= dim_bound; ++n) {
    const auto un = static_cast<std::size_t>(n);
    if (n >= 1)
      for (int i = 0; i <= n; ++i) {
        std::vector<int> f;
        for (const Key& k : keys[un]) f.push_back(index[un - 1].at(face(n, i, k)));
        X.faces[un].push_back(std::move(f));
      }
    if (n < dim_bound)
      for (int i = 0; i <= n; ++i) {
        std::vector<int> s;
        for (const Key& k : keys[un]) s.push_back(index[un + 1].at(degeneracy(n, i, k)));
        X.degeneracies[un].push_back(std::move(s));
      }
  }
  return X;
}

}  // namespace

SimplicialSet standard_simplex(int d, int dim_bound) {
  if (d < 0) throw InputError("simplex dimension must be non-negative");
  if (dim_bound < 0) throw InputError("dimension bound must be non-negative");
  std::vector<std::vector<MonotoneMap>> keys;
  for (int n = 0; n <= dim_bound; ++n) keys.push_back(monotone_maps(n, d));
  SimplicialSet X = tabulate<MonotoneMap>(
      dim_bound, keys, [d](int, const MonotoneMap& m) { return map_label(m, d); },
      [](int, int i, const MonotoneMap& m) {
        MonotoneMap out = m;
        out.erase(out.begin() + i);
        return out;
      },
      [](int, int i, const MonotoneMap& m) {
        MonotoneMap out = m;
        out.insert(out.begin() + i, m[static_cast<std::size_t>(i)]);
        return out;
      });
  X.validate();
  return X;
}

SimplicialSet empty_simplicial_set(int dim_bound) {
  if (dim_bound < 0) throw InputError("dimension bound must be non-negative");
  SimplicialSet X;
  X.dim_bound = dim_bound;
  const auto levels = static_cast<std::size_t>(dim_bound + 1);
  X.simplices.resize(levels);
  X.faces.resize(levels);
  X.degeneracies.resize(levels);
  for (int n = 0; n <= dim_bound; ++n) {
    if (n >= 1) X.faces[static_cast<std::size_t>(n)].assign(static_cast<std::size_t>(n + 1), {});
    if (n < dim_bound) X.degeneracies[static_cast<std::size_t>(n)].assign(static_cast<std::size_t>(n + 1), {});
  }
  return X;
}

SimplicialSet product(const SimplicialSet& X, const SimplicialSet& Y) {
  const int bound = std::min(X.dim_bound, Y.dim_bound);
  using Key = std::pair<int, int>;
  std::vector<std::vector<Key>> keys(static_cast<std::size_t>(bound + 1));
  for (int n = 0; n <= bound; ++n)
    for (int x = 0; x < X.count(n); ++x)
      for (int y = 0; y < Y.count(n); ++y) keys[static_cast<std::size_t>(n)].push_back({x, y});
  SimplicialSet P;
  P.dim_bound = bound;
  P.simplices.resize(static_cast<std::size_t>(bound + 1));
  P.faces.resize(static_cast<std::size_t>(bound + 1));
  P.degeneracies.resize(static_cast<std::size_t>(bound + 1));
  auto index = [&](int n, int x, int y) { return x * Y.count(n) + y; };
  for (int n = 0; n <= bound; ++n) {
    const auto un = static_cast<std::size_t>(n);
    for (const auto& [x, y] : keys[un])
      P.simplices[un].push_back("(" + X.simplices[un][static_cast<std::size_t>(x)] + "," +
                                Y.simplices[un][static_cast<std::size_t>(y)] + ")");
    if (n >= 1)
      for (int i = 0; i <= n; ++i) {
        std::vector<int> f;
        for (const auto& [x, y] : keys[un]) f.push_back(index(n - 1, X.face(n, i, x), Y.face(n, i, y)));
        P.faces[un].push_back(std::move(f));
      }
    if (n < bound)
      for (int i = 0; i <= n; ++i) {
        std::vector<int> s;
        for (const auto& [x, y] : keys[un]) s.push_back(index(n + 1, X.degeneracy(n, i, x), Y.degeneracy(n, i, y)));
        P.degeneracies[un].push_back(std::move(s));
      }
  }
  P.validate();
  return P;
}

std::vector<int> nondegenerate(const SimplicialSet& X, int n) {
  std::set<int> degenerate;
  if (n >= 1)
    for (const auto& s : X.degeneracies[static_cast<std::size_t>(n - 1)])
      for (int v : s) degenerate.insert(v);
  std::vector<int> out;
  for (int x = 0; x < X.count(n); ++x)
    if (!degenerate.count(x)) out.push_back(x);
  return out;
}

// --- finite categories --------------------------------------------------------------

std::vector<int> FiniteCategory::arrows_between(int a, int b) const {
  std::vector<int> out;
  for (int f = 0; f < arrow_count(); ++f)
    if (arrows[static_cast<std::size_t>(f)].source == a && arrows[static_cast<std::size_t>(f)].target == b) out.push_back(f);
  return out;
}

bool FiniteCategory::is_isomorphism(int f) const {
  const auto& a = arrows[static_cast<std::size_t>(f)];
  for (int g : arrows_between(a.target, a.source))
    if (compose(g, f) == identities[static_cast<std::size_t>(a.source)] &&
        compose(f, g) == identities[static_cast<std::size_t>(a.target)])
      return true;
  return false;
}

std::optional<std::string> FiniteCategory::violation(bool associativity) const {
  const int n = object_count(), m = arrow_count();
  if (static_cast<int>(identities.size()) != n) return "one identity per object required";
  if (static_cast<int>(composition.size()) != m) return "composition table must have one row per arrow";
  for (const auto& a : arrows)
    if (a.source < 0 || a.source >= n || a.target < 0 || a.target >= n) return "arrow '" + a.label + "' has an endpoint out of range";
  for (int o = 0; o < n; ++o) {
    const int id = identities[static_cast<std::size_t>(o)];
    if (id < 0 || id >= m || arrows[static_cast<std::size_t>(id)].source != o || arrows[static_cast<std::size_t>(id)].target != o)
      return "identity of '" + objects[static_cast<std::size_t>(o)] + "' is not an endomorphism";
  }
  for (int g = 0; g < m; ++g) {
    if (static_cast<int>(composition[static_cast<std::size_t>(g)].size()) != m) return "composition table must be square";
    const auto& ga = arrows[static_cast<std::size_t>(g)];
    for (int h = 0; h < m; ++h) {
      const auto& ha = arrows[static_cast<std::size_t>(h)];
      const int c = compose(g, h);
      if (ha.target != ga.source) {
        if (c != -1) return "composite of non-composable arrows '" + ga.label + "' and '" + ha.label + "'";
        continue;
      }
      if (c < 0 || c >= m || arrows[static_cast<std::size_t>(c)].source != ha.source ||
          arrows[static_cast<std::size_t>(c)].target != ga.target)
        return "composite '" + ga.label + " ∘ " + ha.label + "' missing or misplaced";
    }
    if (compose(g, identities[static_cast<std::size_t>(ga.source)]) != g ||
        compose(identities[static_cast<std::size_t>(ga.target)], g) != g)
      return "identities do not act trivially on '" + ga.label + "'";
  }
  if (associativity)
    for (int f = 0; f < m; ++f)
      for (int g = 0; g < m; ++g) {
        const int gf = compose(g, f);
        if (gf < 0) continue;
        for (int h = 0; h < m; ++h) {
          const int hg = compose(h, g);
          if (hg < 0) continue;
          if (compose(h, gf) != compose(hg, f))
            return "associativity fails on '" + arrows[static_cast<std::size_t>(h)].label + "', '" +
                   arrows[static_cast<std::size_t>(g)].label + "', '" + arrows[static_cast<std::size_t>(f)].label + "'";
        }
      }
  return std::nullopt;
}

void FiniteCategory::validate(bool associativity) const {
  if (auto v = violation(associativity)) throw ValidationError("invalid finite category: " + *v);
}

// --- simplex categories and nerves ----------------------------------------------------

int SimplexCategory::object_of(int n, int x) const {
  const auto it = std::find(simplices.begin(), simplices.end(), std::pair<int, int>{n, x});
  return it == simplices.end() ? -1 : static_cast<int>(it - simplices.begin());
}

int SimplexCategory::arrow_of(int source, int target, const MonotoneMap& theta) const {
  for (int f : category.arrows_between(source, target))
    if (maps[static_cast<std::size_t>(f)] == theta) return f;
  return -1;
}

SimplexCategory simplex_category(const SimplicialSet& X, int dim_bound) {
  X.validate();
  if (dim_bound < 0) throw InputError("dimension bound must be non-negative");
  const int bound = std::min(dim_bound, X.dim_bound);
  SimplexCategory S;
  FiniteCategory& C = S.category;
  for (int n = 0; n <= bound; ++n)
    for (int x = 0; x < X.count(n); ++x) {
      S.simplices.push_back({n, x});
      C.objects.push_back(std::to_string(n) + ":" + X.simplices[static_cast<std::size_t>(n)][static_cast<std::size_t>(x)]);
    }
  const int objects = C.object_count();
  std::map<std::tuple<int, int, MonotoneMap>, int> index;
  C.identities.assign(static_cast<std::size_t>(objects), -1);
  for (int s = 0; s < objects; ++s)
    for (int t = 0; t < objects; ++t) {
      const auto [d, x] = S.simplices[static_cast<std::size_t>(s)];
      const auto [e, y] = S.simplices[static_cast<std::size_t>(t)];
      for (const MonotoneMap& theta : monotone_maps(d, e)) {
        if (X.act(theta, e, y) != x) continue;
        const int f = C.arrow_count();
        index[{s, t, theta}] = f;
        C.arrows.push_back({map_label(theta, e), s, t});
        S.maps.push_back(theta);
        if (s == t && std::is_sorted(theta.begin(), theta.end()) &&
            std::adjacent_find(theta.begin(), theta.end()) == theta.end())
          C.identities[static_cast<std::size_t>(s)] = f;
      }
    }
  const int m = C.arrow_count();
  C.composition.assign(static_cast<std::size_t>(m), std::vector<int>(static_cast<std::size_t>(m), -1));
  for (int g = 0; g < m; ++g)
    for (int h = 0; h < m; ++h) {
      const auto& ga = C.arrows[static_cast<std::size_t>(g)];
      const auto& ha = C.arrows[static_cast<std::size_t>(h)];
      if (ha.target != ga.source) continue;
      C.composition[static_cast<std::size_t>(g)][static_cast<std::size_t>(h)] =
          index.at({ha.source, ga.target, compose_maps(S.maps[static_cast<std::size_t>(g)], S.maps[static_cast<std::size_t>(h)])});
    }
  C.validate(m <= 400);
  return S;
}

SimplicialSet nerve(const FiniteCategory& C, int dim_bound) {
  C.validate(C.arrow_count() <= 200);
  if (dim_bound < 0) throw InputError("dimension bound must be non-negative");
  // Keys: the object for n = 0, the chain of arrows otherwise.
  using Key = std::vector<int>;
  std::vector<std::vector<Key>> keys(static_cast<std::size_t>(dim_bound + 1));
  for (int o = 0; o < C.object_count(); ++o) keys[0].push_back({o});
  for (int n = 1; n <= dim_bound; ++n)
    for (const Key& k : keys[static_cast<std::size_t>(n - 1)]) {
      const int end = n == 1 ? k[0] : C.arrows[static_cast<std::size_t>(k.back())].target;
      for (int f = 0; f < C.arrow_count(); ++f) {
        if (C.arrows[static_cast<std::size_t>(f)].source != end) continue;
        Key next = n == 1 ? Key{} : k;
        next.push_back(f);
        keys[static_cast<std::size_t>(n)].push_back(std::move(next));
      }
    }
  auto object_at = [&](const Key& k, int n, int i) {
    if (n == 0) return k[0];
    return i == 0 ? C.arrows[static_cast<std::size_t>(k[0])].source : C.arrows[static_cast<std::size_t>(k[static_cast<std::size_t>(i - 1)])].target;
  };
  return tabulate<Key>(
      dim_bound, keys,
      [&](int n, const Key& k) {
        if (n == 0) return C.objects[static_cast<std::size_t>(k[0])];
        std::string s;
        for (std::size_t i = 0; i < k.size(); ++i) s += (i ? "|" : "") + C.arrows[static_cast<std::size_t>(k[i])].label;
        return s;
      },
      [&](int n, int i, const Key& k) -> Key {
        if (n == 1) return {i == 0 ? C.arrows[static_cast<std::size_t>(k[0])].target : C.arrows[static_cast<std::size_t>(k[0])].source};
        Key out;
        for (int j = 0; j < n; ++j) {
          const int f = k[static_cast<std::size_t>(j)];
          if (i == 0 && j == 0) continue;
          if (i == n && j == n - 1) continue;
          if (i > 0 && i < n && j == i - 1) {
            out.push_back(C.compose(k[static_cast<std::size_t>(i)], f));
            ++j;
            continue;
          }
          out.push_back(f);
        }
        return out;
      },
      [&](int n, int i, const Key& k) -> Key {
        const int id = C.identities[static_cast<std::size_t>(object_at(k, n, i))];
        if (n == 0) return {id};
        Key out = k;
        out.insert(out.begin() + i, id);
        return out;
      });
}

// --- concordance ------------------------------------------------------------------

std::optional<std::string> functor_violation(const FiniteCategory& source, const FiniteCategory& target,
                                             const SimplexFunctor& F) {
  if (static_cast<int>(F.objects.size()) != source.object_count() || static_cast<int>(F.arrows.size()) != source.arrow_count())
    throw InputError("functor data does not match the shape of its source");
  for (int o : F.objects)
    if (o < 0 || o >= target.object_count()) throw InputError("functor object value out of range");
  for (int f : F.arrows)
    if (f < 0 || f >= target.arrow_count()) throw InputError("functor arrow value out of range");
  for (int f = 0; f < source.arrow_count(); ++f) {
    const auto& a = source.arrows[static_cast<std::size_t>(f)];
    const auto& b = target.arrows[static_cast<std::size_t>(F.arrows[static_cast<std::size_t>(f)])];
    if (b.source != F.objects[static_cast<std::size_t>(a.source)] || b.target != F.objects[static_cast<std::size_t>(a.target)])
      return "arrow '" + a.label + "' is sent between the wrong objects";
  }
  for (int o = 0; o < source.object_count(); ++o)
    if (F.arrows[static_cast<std::size_t>(source.identities[static_cast<std::size_t>(o)])] !=
        target.identities[static_cast<std::size_t>(F.objects[static_cast<std::size_t>(o)])])
      return "identity of '" + source.objects[static_cast<std::size_t>(o)] + "' is not preserved";
  for (int g = 0; g < source.arrow_count(); ++g)
    for (int h = 0; h < source.arrow_count(); ++h) {
      const int gh = source.compose(g, h);
      if (gh < 0) continue;
      if (F.arrows[static_cast<std::size_t>(gh)] !=
          target.compose(F.arrows[static_cast<std::size_t>(g)], F.arrows[static_cast<std::size_t>(h)]))
        return "composite '" + source.arrows[static_cast<std::size_t>(g)].label + " ∘ " +
               source.arrows[static_cast<std::size_t>(h)].label + "' is not preserved";
    }
  return std::nullopt;
}

namespace {

// Inclusion Δ(Y) → Δ(Y × Δ^1) at the end `end`, as object and arrow maps.
SimplexFunctor end_inclusion(const SimplexCategory& DY, const SimplicialSet& I, const SimplexCategory& DYI, int end) {
  SimplexFunctor J;
  for (const auto& [n, y] : DY.simplices) {
    const std::string endpoint(static_cast<std::size_t>(n + 1), static_cast<char>('0' + end));
    const int i = I.find(n, endpoint);
    const int idx = y * I.count(n) + i;
    J.objects.push_back(DYI.object_of(n, idx));
  }
  for (int f = 0; f < DY.category.arrow_count(); ++f) {
    const auto& a = DY.category.arrows[static_cast<std::size_t>(f)];
    J.arrows.push_back(DYI.arrow_of(J.objects[static_cast<std::size_t>(a.source)], J.objects[static_cast<std::size_t>(a.target)],
                                    DY.maps[static_cast<std::size_t>(f)]));
  }
  return J;
}

}  // namespace

ConcordanceReport concordance_check(const SimplicialSet& Y, const FiniteCategory& target, const SimplexFunctor& F0,
                                    const SimplexFunctor& F1, const std::optional<SimplexFunctor>& Ft, int dim_bound) {
  const SimplexCategory DY = simplex_category(Y, dim_bound);
  const SimplicialSet I = standard_simplex(1, std::min(dim_bound, Y.dim_bound));
  const SimplicialSet YI = product(Y, I);
  const SimplexCategory DYI = simplex_category(YI, dim_bound);
  ConcordanceReport rep;
  if (auto v = functor_violation(DY.category, target, F0)) {
    rep.witness = "F0: " + *v;
    return rep;
  }
  if (auto v = functor_violation(DY.category, target, F1)) {
    rep.witness = "F1: " + *v;
    return rep;
  }
  if (!Ft) {
    rep.witness = "no concordance supplied";
    return rep;
  }
  if (auto v = functor_violation(DYI.category, target, *Ft)) {
    rep.witness = "concordance: " + *v;
    return rep;
  }
  for (int end = 0; end < 2; ++end) {
    const SimplexFunctor& F = end == 0 ? F0 : F1;
    const SimplexFunctor J = end_inclusion(DY, I, DYI, end);
    const std::string tag = end == 0 ? "F0" : "F1";
    for (std::size_t o = 0; o < J.objects.size(); ++o)
      if (Ft->objects[static_cast<std::size_t>(J.objects[o])] != F.objects[o]) {
        rep.witness = tag + " differs at simplex " + DYI.category.objects[static_cast<std::size_t>(J.objects[o])];
        return rep;
      }
    for (std::size_t f = 0; f < J.arrows.size(); ++f)
      if (Ft->arrows[static_cast<std::size_t>(J.arrows[f])] != F.arrows[f]) {
        const auto& a = DYI.category.arrows[static_cast<std::size_t>(J.arrows[f])];
        rep.witness = tag + " differs at the arrow " + a.label + " from " + DYI.category.objects[static_cast<std::size_t>(a.source)] +
                      " to " + DYI.category.objects[static_cast<std::size_t>(a.target)];
        return rep;
      }
  }
  rep.pass = true;
  return rep;
}

SimplexFunctor constant_concordance(const SimplicialSet& Y, const SimplexFunctor& F, int dim_bound) {
  const SimplexCategory DY = simplex_category(Y, dim_bound);
  const SimplicialSet I = standard_simplex(1, std::min(dim_bound, Y.dim_bound));
  const SimplexCategory DYI = simplex_category(product(Y, I), dim_bound);
  if (static_cast<int>(F.objects.size()) != DY.category.object_count() || static_cast<int>(F.arrows.size()) != DY.category.arrow_count())
    throw InputError("functor data does not match the shape of its source");
  SimplexFunctor out;
  std::vector<int> projection;
  for (const auto& [n, yi] : DYI.simplices) {
    const int o = DY.object_of(n, yi / I.count(n));
    projection.push_back(o);
    out.objects.push_back(F.objects[static_cast<std::size_t>(o)]);
  }
  for (int f = 0; f < DYI.category.arrow_count(); ++f) {
    const auto& a = DYI.category.arrows[static_cast<std::size_t>(f)];
    const int g = DY.arrow_of(projection[static_cast<std::size_t>(a.source)], projection[static_cast<std::size_t>(a.target)],
                              DYI.maps[static_cast<std::size_t>(f)]);
    out.arrows.push_back(F.arrows[static_cast<std::size_t>(g)]);
  }
  return out;
}

// --- Waldhausen toys ----------------------------------------------------------------

std::optional<std::string> WaldhausenToy::axiom_violation() const {
  const FiniteCategory& C = category;
  const auto m = static_cast<std::size_t>(C.arrow_count());
  if (cofibration.size() != m || weak_equivalence.size() != m) return "cofibration and weak-equivalence flags must cover every arrow";
  if (zero < 0 || zero >= C.object_count()) return "zero object out of range";
  auto name = [&](int f) { return "'" + C.arrows[static_cast<std::size_t>(f)].label + "'"; };
  for (int a = 0; a < C.object_count(); ++a) {
    if (C.arrows_between(zero, a).size() != 1 || C.arrows_between(a, zero).size() != 1)
      return "'" + C.objects[static_cast<std::size_t>(zero)] + "' is not a zero object (object '" + C.objects[static_cast<std::size_t>(a)] + "')";
    const int z = C.arrows_between(zero, a)[0];
    if (!cofibration[static_cast<std::size_t>(z)]) return "0 → " + C.objects[static_cast<std::size_t>(a)] + " is not a cofibration";
  }
  for (int f = 0; f < C.arrow_count(); ++f) {
    if (weak_equivalence[static_cast<std::size_t>(f)] && !cofibration[static_cast<std::size_t>(f)])
      return "weak equivalence " + name(f) + " is not a cofibration";
    if (!weak_equivalence[static_cast<std::size_t>(f)] && C.is_isomorphism(f)) return "isomorphism " + name(f) + " is not a weak equivalence";
  }
  for (int g = 0; g < C.arrow_count(); ++g) {
    if (!weak_equivalence[static_cast<std::size_t>(g)]) continue;
    for (int h = 0; h < C.arrow_count(); ++h) {
      const int gh = C.compose(g, h);
      if (gh >= 0 && weak_equivalence[static_cast<std::size_t>(h)] && !weak_equivalence[static_cast<std::size_t>(gh)])
        return "weak equivalences " + name(g) + " and " + name(h) + " compose to " + name(gh);
    }
  }
  for (int f = 0; f < C.arrow_count(); ++f) {
    if (!cofibration[static_cast<std::size_t>(f)]) continue;
    const auto it = quotients.find(f);
    if (it == quotients.end()) return "cofibration " + name(f) + " has no chosen quotient";
    const int q = it->second;
    if (q < 0 || q >= C.arrow_count() || C.arrows[static_cast<std::size_t>(q)].source != C.arrows[static_cast<std::size_t>(f)].target)
      return "quotient of " + name(f) + " does not start at its target";
    // q ∘ f factors through the zero object.
    const int a = C.arrows[static_cast<std::size_t>(f)].source;
    const int c = C.arrows[static_cast<std::size_t>(q)].target;
    const int through_zero = C.compose(C.arrows_between(zero, c)[0], C.arrows_between(a, zero)[0]);
    if (C.compose(q, f) != through_zero) return "quotient of " + name(f) + " does not kill it";
  }
  for (const auto& [f, q] : quotients)
    if (f < 0 || f >= C.arrow_count() || !cofibration[static_cast<std::size_t>(f)]) return "quotient recorded for a non-cofibration";
  return std::nullopt;
}

namespace {

// l × k matrices over 𝔽_2 packed column-major into bits.
struct F2Map {
  int k, l;
  std::uint32_t bits;
  bool entry(int r, int c) const { return (bits >> (c * l + r)) & 1u; }
};

std::uint32_t f2_compose(const F2Map& g, const F2Map& h) {
  std::uint32_t out = 0;
  for (int c = 0; c < h.k; ++c)
    for (int r = 0; r < g.l; ++r) {
      bool v = false;
      for (int t = 0; t < h.l; ++t) v ^= g.entry(r, t) && h.entry(t, c);
      if (v) out |= 1u << (c * g.l + r);
    }
  return out;
}

int f2_rank(std::vector<std::uint32_t> rows) {
  int rank = 0;
  for (int bit = 31; bit >= 0; --bit) {
    auto it = std::find_if(rows.begin(), rows.end(), [bit](std::uint32_t r) { return (r >> bit) & 1u; });
    if (it == rows.end()) continue;
    const std::uint32_t pivot = *it;
    rows.erase(it);
    for (auto& r : rows)
      if ((r >> bit) & 1u) r ^= pivot;
    ++rank;
  }
  return rank;
}

}  // namespace

WaldhausenToy f2_free_modules(int max_rank) {
  if (max_rank < 0 || max_rank > 4) throw InputError("𝔽_2 toy supports ranks 0..4");
  WaldhausenToy W;
  W.name = "f2-free-rank-" + std::to_string(max_rank);
  FiniteCategory& C = W.category;
  for (int k = 0; k <= max_rank; ++k) C.objects.push_back("F2^" + std::to_string(k));
  std::vector<F2Map> maps;
  std::map<std::tuple<int, int, std::uint32_t>, int> index;
  for (int k = 0; k <= max_rank; ++k)
    for (int l = 0; l <= max_rank; ++l)
      for (std::uint32_t b = 0; b < (1u << (k * l)); ++b) {
        index[{k, l, b}] = static_cast<int>(maps.size());
        maps.push_back({k, l, b});
        std::string label = std::to_string(k) + ">" + std::to_string(l) + ":";
        for (int c = 0; c < k; ++c) {
          if (c) label += ",";
          for (int r = 0; r < l; ++r) label += maps.back().entry(r, c) ? '1' : '0';
        }
        C.arrows.push_back({label, k, l});
      }
  for (int k = 0; k <= max_rank; ++k) {
    std::uint32_t id = 0;
    for (int i = 0; i < k; ++i) id |= 1u << (i * k + i);
    C.identities.push_back(index.at({k, k, id}));
  }
  const auto m = maps.size();
  C.composition.assign(m, std::vector<int>(m, -1));
  for (std::size_t g = 0; g < m; ++g)
    for (std::size_t h = 0; h < m; ++h)
      if (maps[h].l == maps[g].k) C.composition[g][h] = index.at({maps[h].k, maps[g].l, f2_compose(maps[g], maps[h])});
  W.zero = 0;
  W.cofibration.assign(m, false);
  W.weak_equivalence.assign(m, false);
  for (std::size_t f = 0; f < m; ++f) {
    const F2Map& a = maps[f];
    std::vector<std::uint32_t> cols;
    for (int c = 0; c < a.k; ++c) cols.push_back((a.bits >> (c * a.l)) & ((1u << a.l) - 1u));
    const bool injective = f2_rank(cols) == a.k;
    W.cofibration[f] = injective;
    W.weak_equivalence[f] = injective && a.k == a.l;
    if (!injective) continue;
    // Rows of the quotient: a reduced basis of the annihilator of the image.
    std::vector<std::uint32_t> ann;
    for (std::uint32_t v = 1; v < (1u << a.l); ++v) {
      bool kills = true;
      for (auto col : cols) kills = kills && (__builtin_popcount(v & col) % 2 == 0);
      if (!kills) continue;
      std::vector<std::uint32_t> trial = ann;
      trial.push_back(v);
      if (f2_rank(trial) == static_cast<int>(trial.size())) ann.push_back(v);
    }
    const int c = a.l - a.k;
    std::uint32_t q = 0;
    for (int col = 0; col < a.l; ++col)
      for (int r = 0; r < c; ++r)
        if ((ann[static_cast<std::size_t>(r)] >> col) & 1u) q |= 1u << (col * c + r);
    W.quotients[static_cast<int>(f)] = index.at({a.l, c, q});
  }
  return W;
}

WaldhausenToy zero_toy() {
  WaldhausenToy W;
  W.name = "zero";
  W.category.objects = {"0"};
  W.category.arrows = {{"id", 0, 0}};
  W.category.identities = {0};
  W.category.composition = {{0}};
  W.cofibration = {true};
  W.weak_equivalence = {true};
  W.quotients[0] = 0;
  return W;
}

SConstruction s_construction(const WaldhausenToy& W, int depth) {
  if (depth < 0 || depth > 2) throw InputError("S-construction depth must be 0, 1 or 2");
  W.category.validate(W.category.arrow_count() <= 200);
  if (auto v = W.axiom_violation()) throw ValidationError("invalid WaldhausenToy: " + *v);
  SConstruction S;
  S.depth = depth;
  S.s0 = {W.zero};
  if (depth >= 1)
    for (int o = 0; o < W.category.object_count(); ++o) S.s1.push_back(o);
  if (depth >= 2)
    for (const auto& [f, q] : W.quotients) {
      const auto& a = W.category.arrows[static_cast<std::size_t>(f)];
      S.s2.push_back({f, q, a.source, a.target, W.category.arrows[static_cast<std::size_t>(q)].target});
    }
  return S;
}

K0Presentation s_presentation(const WaldhausenToy& W, bool weak_equivalence_relations) {
  const SConstruction S = s_construction(W, 2);
  const auto& obj = W.category.objects;
  K0Presentation P;
  for (int o : S.s1) P.generators.push_back(obj[static_cast<std::size_t>(o)]);
  for (const auto& s : S.s2)
    P.relations.push_back({obj[static_cast<std::size_t>(s.a)], obj[static_cast<std::size_t>(s.b)], obj[static_cast<std::size_t>(s.c)]});
  if (weak_equivalence_relations)
    for (int f = 0; f < W.category.arrow_count(); ++f) {
      if (!W.weak_equivalence[static_cast<std::size_t>(f)]) continue;
      const auto& a = W.category.arrows[static_cast<std::size_t>(f)];
      P.relations.push_back({obj[static_cast<std::size_t>(a.source)], obj[static_cast<std::size_t>(a.target)], obj[static_cast<std::size_t>(W.zero)]});
    }
  std::sort(P.relations.begin(), P.relations.end());
  P.relations.erase(std::unique(P.relations.begin(), P.relations.end()), P.relations.end());
  return P;
}

K0Group k0_from_s_construction(const WaldhausenToy& W, bool weak_equivalence_relations) {
  return grothendieck_group(s_presentation(W, weak_equivalence_relations));
}

}  // namespace kzero
