#include "kzero/hochschild.hpp"

#include "kzero/error.hpp"
#include "kzero/parallel.hpp"

#include <algorithm>
#include <functional>

namespace kzero {

std::string to_string(HochschildGrading g) {
  switch (g) {
    case HochschildGrading::Total: return "total";
    case HochschildGrading::Length: return "length";
    case HochschildGrading::Periodic: return "periodic";
  }
  return "?";
}

namespace {

Integer modulus_of(const GroundRing& R) { return R.kind == GroundRing::Kind::PrimeField ? R.p : Integer(0); }

HochschildGrading choose_grading(const AInfCategory& A) {
  if (A.period == 0) return HochschildGrading::Total;
  for (const auto& [k, table] : A.mu)
    if (k != 2 && !table.empty()) return HochschildGrading::Periodic;
  return HochschildGrading::Length;
}

int shifted_parity(const AInfCategory& A, int idx) { return (A.parity(idx) + 1) % 2; }

int word_degree(const AInfCategory& A, HochschildGrading g, const Word& w) {
  if (g == HochschildGrading::Length) return static_cast<int>(w.size()) - 1;
  int d = A.basis[static_cast<std::size_t>(w[0])].degree;
  for (std::size_t i = 1; i < w.size(); ++i) d += A.basis[static_cast<std::size_t>(w[i])].degree + 1;
  return A.degree_class(d);
}

/// b on a single word, as a combination of words.
std::map<Word, Integer> bar_differential(const AInfCategory& A, const Word& v, bool normalized) {
  const int n = static_cast<int>(v.size()) - 1;
  std::map<Word, Integer> out;
  auto emit = [&](Word w, const Integer& c) {
    Integer& slot = out[w];
    slot += c;
    if (slot == 0) out.erase(w);
  };
  std::vector<int> prefix(static_cast<std::size_t>(n + 2), 0);  // Σ_{i<j} |v_i|'
  for (int i = 0; i <= n; ++i) prefix[static_cast<std::size_t>(i + 1)] = prefix[static_cast<std::size_t>(i)] + shifted_parity(A, v[static_cast<std::size_t>(i)]);

  // Windows away from a_0.
  for (int j = 1; j <= n; ++j)
    for (int k = 1; j + k - 1 <= n; ++k) {
      const Combination m = shifted_mu(A, k, Word(v.begin() + j, v.begin() + j + k));
      if (m.empty()) continue;
      const int sign = prefix[static_cast<std::size_t>(j)] % 2 == 0 ? 1 : -1;
      for (const auto& [y, c] : m) {
        if (normalized && A.is_unit(y)) continue;
        Word w(v.begin(), v.begin() + j);
        w.push_back(y);
        w.insert(w.end(), v.begin() + j + k, v.end());
        emit(std::move(w), c * sign);
      }
    }
  // Windows through a_0: the last p letters rotate to the front.
  for (int p = 0; p <= n; ++p)
    for (int q = 0; p + q <= n; ++q) {
      Word args(v.end() - p, v.end());
      args.insert(args.end(), v.begin(), v.begin() + q + 1);
      const Combination m = shifted_mu(A, p + 1 + q, args);
      if (m.empty()) continue;
      const int moved = prefix[static_cast<std::size_t>(n + 1)] - prefix[static_cast<std::size_t>(n - p + 1)];
      const int stay = prefix[static_cast<std::size_t>(n - p + 1)];
      const int sign = (moved * stay) % 2 == 0 ? 1 : -1;
      for (const auto& [y, c] : m) {
        Word w{y};
        w.insert(w.end(), v.begin() + q + 1, v.end() - p);
        emit(std::move(w), c * sign);
      }
    }
  return out;
}

void require_algebra(const AInfCategory& A, int L) {
  if (L < 1) throw InputError("length bound must be at least 1");
  if (A.object_count() != 1)
    throw InputError("Hochschild complexes need a single-object algebra; collapse the category first");
  const RelationReport r = check_ainf_relations(A, A.max_arity);
  if (!r.ok) throw InputError("relation check failed: " + r.describe(A));
}

HochschildTruncation build(const AInfCategory& A, int L, bool normalized) {
  HochschildTruncation T;
  T.algebra = A;
  T.length = L;
  T.normalized = normalized;
  T.grading = choose_grading(A);

  std::vector<int> letters;
  for (int i = 0; i < A.size(); ++i)
    if (!normalized || !A.is_unit(i)) letters.push_back(i);
  std::map<Word, std::pair<int, Index>> index;
  for (int a0 = 0; a0 < A.size(); ++a0) {
    Word w{a0};
    std::function<void()> rec = [&] {
      const int d = word_degree(A, T.grading, w);
      auto& list = T.words[d];
      index[w] = {d, static_cast<Index>(list.size())};
      list.push_back(w);
      if (static_cast<int>(w.size()) - 1 == L) return;
      for (int l : letters) {
        w.push_back(l);
        rec();
        w.pop_back();
      }
    };
    rec();
  }
  // Within a degree, order by length then lexicographically.
  for (auto& [d, list] : T.words) {
    std::stable_sort(list.begin(), list.end(), [](const Word& a, const Word& b) {
      return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    for (std::size_t i = 0; i < list.size(); ++i) index[list[i]] = {d, static_cast<Index>(i)};
  }

  std::map<int, Index> ranks;
  for (auto& [d, list] : T.words) ranks[d] = static_cast<Index>(list.size());
  auto rank_of = [&](int d) -> Index {
    const int c = T.grading == HochschildGrading::Periodic ? A.degree_class(d) : d;
    return ranks.count(c) ? ranks[c] : 0;
  };
  std::map<int, IntMatrix> diffs;
  for (auto& [d, list] : T.words) {
    const int lower = T.grading == HochschildGrading::Periodic ? A.degree_class(d - 1) : d - 1;
    IntMatrix m = zero_matrix(rank_of(lower), static_cast<Index>(list.size()));
    for (std::size_t j = 0; j < list.size(); ++j)
      for (const auto& [w, c] : bar_differential(A, list[j], normalized)) {
        const auto it = index.find(w);
        if (it == index.end() || it->second.first != lower)
          throw ValidationError("Hochschild differential leaves the truncation");
        m(it->second.second, static_cast<Index>(j)) += c;
      }
    diffs[d] = m;
  }
  if (T.grading == HochschildGrading::Periodic) {
    T.complex = Complex::periodic(A.ring, A.period, ranks, diffs);
  } else if (ranks.empty()) {
    T.complex = Complex::bounded(A.ring, 0, -1, {}, {});
  } else {
    const int lo = ranks.begin()->first, hi = ranks.rbegin()->first;
    std::map<int, IntMatrix> inside;
    for (auto& [d, m] : diffs)
      if (d - 1 >= lo) inside[d] = m;
    T.complex = Complex::bounded(A.ring, lo, hi, ranks, inside);
  }
  return T;
}

bool induced_isomorphism(const HochschildTruncation& small, const HochschildTruncation& big, int degree) {
  const Subquotient S = homology_presentation(small.complex, degree);
  const Subquotient B = homology_presentation(big.complex, degree);
  const int c = small.complex.canonical(degree);
  const auto sit = small.words.find(c);
  const auto bit = big.words.find(c);
  if (S.size() == 0 && B.size() == 0) return true;
  if (sit == small.words.end() || bit == big.words.end()) return false;
  std::map<Word, Index> pos;
  for (std::size_t i = 0; i < bit->second.size(); ++i) pos[bit->second[i]] = static_cast<Index>(i);
  IntMatrix M = zero_matrix(B.size(), S.size());
  for (Index j = 0; j < S.size(); ++j) {
    IntVector v = IntVector::Zero(static_cast<Index>(bit->second.size()));
    for (std::size_t i = 0; i < sit->second.size(); ++i) v(pos.at(sit->second[i])) = S.generators(static_cast<Index>(i), j);
    M.col(j) = B.classify(v);
  }
  if (small.algebra.ring.kind == GroundRing::Kind::Rationals)
    return M.rows() == M.cols() && smith_normal_form(M).rank == M.rows();
  return is_group_isomorphism(M, S.orders, B.orders, modulus_of(small.algebra.ring));
}

}  // namespace

HochschildTruncation hochschild_complex(const AInfCategory& A, int L, bool normalized) {
  require_algebra(A, L);
  return build(A, L, normalized);
}

const HochschildDegree* HochschildReport::at(int degree) const {
  for (const auto& d : degrees)
    if (d.degree == degree) return &d;
  return nullptr;
}

HochschildReport hochschild_homology(const AInfCategory& A, int L, bool normalized) {
  require_algebra(A, L);
  std::vector<HochschildTruncation> pair(2);
  parallel_for(2, [&](std::size_t i) { pair[i] = build(A, L - 1 + static_cast<int>(i), normalized); });
  HochschildReport R;
  R.truncation = std::move(pair[1]);
  const Complex& C = R.truncation.complex;
  for (int d : C.degrees()) {
    HochschildDegree h;
    h.degree = d;
    h.group = homology(C, d);
    h.certified = induced_isomorphism(pair[0], R.truncation, d);
    R.degrees.push_back(h);
  }
  return R;
}

namespace {

/// τ_{≥lo} τ_{≤hi} of a bounded complex: degree hi + 1 becomes a basis of
/// im d_{hi+1} and degree lo becomes a basis of ker d_lo.
IntMatrix ring_image(const Complex& C, const IntMatrix& A) {
  if (C.ring().kind != GroundRing::Kind::PrimeField) return image_basis(A);
  const auto s = smith_normal_form(A, PrimeFieldDomain{C.ring().p});
  return reduce_mod(s.Uinv.leftCols(s.rank), C.ring().p);
}

IntMatrix ring_kernel(const Complex& C, const IntMatrix& A) {
  if (C.ring().kind != GroundRing::Kind::PrimeField) return kernel_basis(A);
  const auto s = smith_normal_form(A, PrimeFieldDomain{C.ring().p});
  return reduce_mod(s.V.rightCols(A.cols() - s.rank), C.ring().p);
}

Complex good_truncation(const Complex& C, int lo, int hi) {
  const auto& g = C.grading();
  const Integer modulus = modulus_of(C.ring());
  std::map<int, Index> ranks;
  std::map<int, IntMatrix> diffs;
  for (int d = lo; d <= hi; ++d) ranks[d] = C.rank(d);
  for (int d = lo + 1; d <= hi; ++d) diffs[d] = C.differential(d);
  int top = hi;
  if (hi < g.max) {
    const IntMatrix image = ring_image(C, C.differential(hi + 1));
    if (image.cols() > 0) {
      ranks[hi + 1] = image.cols();
      diffs[hi + 1] = image;
      top = hi + 1;
    }
  }
  if (lo > g.min) {
    const IntMatrix K = ring_kernel(C, C.differential(lo));
    ranks[lo] = K.cols();
    if (lo + 1 <= top) {
      const IntMatrix& d = diffs[lo + 1];
      IntMatrix X = zero_matrix(K.cols(), d.cols());
      for (Index j = 0; j < d.cols(); ++j) {
        const auto x = solve_linear(K, d.col(j), modulus);
        if (!x) throw ValidationError("boundary does not lie in the kernel basis");
        X.col(j) = *x;
      }
      diffs[lo + 1] = X;
    }
  }
  return Complex::bounded(C.ring(), lo, top, ranks, diffs);
}

}  // namespace

HochschildClass hochschild_class(const AInfCategory& A, int L, int n) {
  if (n <= 0 || n % 2 != 0) throw PeriodError("period must be even");
  HochschildClass out;
  out.period = n;
  out.report = hochschild_homology(A, L);
  const auto& degs = out.report.degrees;
  const Complex& C = out.report.truncation.complex;

  if (degs.empty()) {
    out.stable = Complex::bounded(C.ring(), 0, -1, {});
    return out;
  }
  if (C.is_periodic()) {
    if (C.period() != n) throw PeriodError("periodic Hochschild complex has period " + std::to_string(C.period()));
    for (const auto& d : degs)
      if (!d.certified) throw UnstableError("degree " + std::to_string(d.degree) + " is not stable at length " +
                                            std::to_string(L) + "; increase L");
    out.stable = C;
    out.window_min = 0;
    out.window_max = n - 1;
    out.value = psi_class(C);
    for (int i = 0; i <= n; ++i) out.inclusive_sum += (i % 2 == 0 ? 1 : -1) * Integer(homology(C, i).free_rank);
    return out;
  }

  // The window is the first run of certified degrees; anything above it is
  // treated as truncation noise.
  int lo = 0, hi = -1;
  bool seen = false;
  for (const auto& d : degs) {
    if (d.certified) {
      if (!seen) lo = d.degree;
      hi = d.degree;
      seen = true;
    } else if (seen) {
      break;
    }
  }
  if (!seen) throw UnstableError("no degree is stable at length " + std::to_string(L) + "; increase L");
  const int gmin = C.grading().min, gmax = C.grading().max;
  auto free_rank = [&](int d) { return out.report.at(d)->group.free_rank; };
  auto require_quiet = [&](int from, int to, const char* edge) {
    for (int d = from; d <= to; ++d)
      if (d < lo || d > hi || free_rank(d) != 0)
        throw UnstableError(std::string("free homology near the ") + edge + " of the certified window at length " +
                            std::to_string(L) + "; increase L");
  };
  if (hi < gmax) require_quiet(hi - n + 1, hi, "top");
  if (lo > gmin) require_quiet(lo, lo + n - 1, "bottom");

  out.window_min = lo;
  out.window_max = hi;
  out.stable = good_truncation(C, lo, hi);
  const Complex folded = fold(out.stable, n);
  out.value = psi_class(folded);
  for (int i = 0; i <= n; ++i) out.inclusive_sum += (i % 2 == 0 ? 1 : -1) * Integer(homology(folded, i).free_rank);
  return out;
}

}  // namespace kzero
