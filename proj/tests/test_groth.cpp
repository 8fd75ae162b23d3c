#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "kzero/error.hpp"
#include "kzero/groth.hpp"

#include "span_fixtures.hpp"

#include <memory>

using namespace kzero;
using namespace kzero::fixtures;

namespace {

int count_origin(const GrothCategory& G, Origin o) {
  return static_cast<int>(std::count(G.provenance.begin(), G.provenance.end(), o));
}

}  // namespace

TEST_CASE("identity span: three objects joined by two adjacent identities") {
  const auto Z = point();
  const GrothCategory G = grothendieck_construction(identity_functor(Z), identity_functor(Z));
  CHECK(G.category->object_count() == 3);
  CHECK(G.adjacent.size() == 2);
  CHECK(provenance_respected(G));
  CHECK(check_ainf_relations(*G.category, 4).ok);
  const LinearCategory H = homotopy_category(*G.category);
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 3; ++y) {
      const bool expected = x == y || x == 0;
      CHECK(H.hom(x, y).group() == FinAbGroup{expected ? 1 : 0, {}});
    }
  const LocalizedHCategory L = localize_h(G, 5);
  CHECK(L.complete);
  CHECK(L.composition_available);
  CHECK(L.status() == "complete");
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 3; ++y) CHECK(L.category.hom(x, y).group() == FinAbGroup{1, {}});
  CHECK(!verify_linear_category(L.category));
  CHECK(objects_isomorphic(L.category, 1, 2) == Verdict::True);
  CHECK(objects_isomorphic(H, 1, 2) == Verdict::False);
}


TEST_CASE("localized homs match the pushout") {
  for (const auto& c : span_cases()) {
    CAPTURE(c.name);
    const GrothCategory G = grothendieck_construction(c.f, c.g);
    REQUIRE(check_ainf_relations(*G.category, 4).ok);
    CHECK(provenance_respected(G));
    const LocalizedHCategory L = localize_h(G, 5);
    CHECK(L.complete);
    REQUIRE(L.composition_available);
    CHECK(!verify_linear_category(L.category));
    const int n = G.category->object_count();
    REQUIRE(n == static_cast<int>(c.ranks.size()));
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y) {
        CAPTURE(x);
        CAPTURE(y);
        const FinAbGroup h = L.category.hom(x, y).group();
        CHECK(h.torsion.empty());
        if (L.category.modulus != 0) CHECK(static_cast<int>(L.category.hom(x, y).size()) == c.ranks[x][y]);
        else CHECK(h.free_rank == c.ranks[x][y]);
      }
  }
}

TEST_CASE("pushout and cofibration report") {
  for (const auto& c : span_cases()) {
    CAPTURE(c.name);
    const PushoutReport r = check_pushout_and_cofibration(c.f, c.g, 5);
    CHECK(r.f_fully_faithful);
    CHECK(r.g_star_fully_faithful);
    CHECK(r.provenance);
    CHECK(r.embeddings == std::array<bool, 3>{true, true, true});
    CHECK(r.localization_status == "complete");
    CHECK(r.cocones_checked > 0);
    CHECK(r.pushout_certified == Verdict::True);
  }
  // Collapsing B to zero loses its homs in the quotient.
  const auto Z = point();
  const PushoutReport cof = check_pushout_and_cofibration(identity_functor(Z), to_zero(Z), 5);
  CHECK(!cof.f_star_fully_faithful);
  const PushoutReport id = check_pushout_and_cofibration(identity_functor(Z), identity_functor(Z), 5);
  CHECK(id.f_star_fully_faithful);
}

TEST_CASE("cross products pass the functor's higher components") {
  const AInfFunctor F = homotopy_functor();
  REQUIRE(check_functor_relations(F, 4).ok);
  const GrothCategory G = grothendieck_construction(F, identity_functor(F.source));
  CHECK(check_ainf_relations(*G.category, 4).ok);
  // μ_3(z, e10, e01) = μ_2(z, F_2(e10, e01)) for z the cross element over e00.
  const auto& C = *G.category;
  const int z = C.basis_index("f[o0]e00");
  const Combination out = C.apply(3, {z, C.basis_index("A:e10"), C.basis_index("A:e01")});
  CHECK(out == Combination{{C.basis_index("f[o0]b00"), -1}});
  // The strict part of F alone fails on the same word.
  AInfFunctor strict_part = F;
  strict_part.components.erase(2);
  CHECK(!check_functor_relations(strict_part, 3).ok);
}

TEST_CASE("span refusals") {
  const auto Z = point();
  const auto D2 = discrete(2);
  // Not fully faithful: two distinct objects collapse to the point.
  CHECK_THROWS_AS(check_pushout_and_cofibration(collapse(D2, Z), collapse(D2, Z)), PreconditionError);
  // Sources differ.
  CHECK_THROWS_AS(grothendieck_construction(identity_functor(Z), identity_functor(D2)), InputError);
  // Not strictly unital: the unit goes to twice the unit.
  AInfFunctor twice = identity_functor(Z);
  twice.components[1][{0}] = {{0, 2}};
  CHECK_THROWS_AS(grothendieck_construction(twice, identity_functor(Z)), PreconditionError);
  // Rational coefficients.
  const auto Q = point(GroundRing::rationals());
  CHECK_THROWS_AS(localize_h(grothendieck_construction(identity_functor(Q), identity_functor(Q))), InputError);
  CHECK_THROWS_AS(localize(homotopy_category(*Z), {}, 0), InputError);
}

TEST_CASE("zero source gives a disjoint union") {
  const auto O = std::make_shared<AInfCategory>(zero_category());
  const auto Z = point();
  const AInfFunctor f = strict(O, Z, {0}, {});
  const GrothCategory G = grothendieck_construction(f, f);
  CHECK(G.category->object_count() == 3);
  CHECK(G.adjacent.empty());
  CHECK(G.cross.empty());
  CHECK(count_origin(G, Origin::A) == 1);
  const LocalizedHCategory L = localize_h(G);
  CHECK(L.complete);
  CHECK(L.category.is_zero_object(0));
  CHECK(L.category.hom(1, 1).group() == FinAbGroup{1, {}});
  CHECK(L.category.hom(1, 2).group().is_zero());
  CHECK(objects_isomorphic(L.category, 1, 2) == Verdict::False);
}

TEST_CASE("localization of linear categories") {
  const LinearCategory I2 = homotopy_category(*indiscrete(2));
  // Inverting an isomorphism changes nothing.
  const InvertedMorphism e01{0, 1, IntVector::Constant(1, 1)};
  const LocalizedHCategory L = localize(I2, {e01}, 5);
  CHECK(L.complete);
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y) {
      CHECK(L.category.hom(x, y).group() == FinAbGroup{1, {}});
      CHECK(is_group_isomorphism(L.localization_map.at({x, y}), I2.hom(x, y).orders, L.category.hom(x, y).orders));
    }
  // Inverting twice an isomorphism inverts 2 as well; the bound sees ℤ[1/2] grow.
  const InvertedMorphism twice{0, 1, IntVector::Constant(1, 2)};
  const LocalizedHCategory M = localize(I2, {twice}, 5);
  CHECK(!M.complete);
  CHECK(M.status() == "bounded, possibly incomplete");
  // Inverting zero kills every morphism of H; the longest words only die at the
  // next bound, so the presentation never stabilizes.
  const InvertedMorphism zero{0, 1, IntVector::Zero(1)};
  const LocalizedHCategory N = localize(I2, {zero}, 3);
  CHECK(!N.complete);
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y) CHECK(N.localization_map.at({x, y}).isZero());
  // Classification of an explicit word: e01 s⁻¹ e00 = e00 … up to the unit.
  FractionWord w{0, 0, {0, 0}, {0}};
  CHECK(L.classify(w) == L.category.units[0]);
}

TEST_CASE("gluing along span maps") {
  const auto Z = point();
  const auto I2 = indiscrete(2);
  const auto D2 = discrete(2);
  const Span s{identity_functor(Z), identity_functor(Z)};

  const GluingReport same = check_gluing(s, s, {identity_functor(Z), identity_functor(Z), identity_functor(Z)}, 5);
  CHECK(same.spans_equivalent == Verdict::True);
  CHECK(same.fully_faithful);
  CHECK(same.induced_equivalence == Verdict::True);
  CHECK(same.complete);

  const Span t{strict(Z, I2, {0}, {0}), identity_functor(Z)};
  const GluingReport up = check_gluing(s, t, {identity_functor(Z), strict(Z, I2, {0}, {0}), identity_functor(Z)}, 5);
  CHECK(up.spans_equivalent == Verdict::True);
  CHECK(up.fully_faithful);
  CHECK(up.induced_equivalence == Verdict::True);

  const Span u{strict(Z, D2, {0}, {0}), identity_functor(Z)};
  const GluingReport miss = check_gluing(s, u, {identity_functor(Z), strict(Z, D2, {0}, {0}), identity_functor(Z)}, 5);
  CHECK(miss.spans_equivalent == Verdict::False);
  CHECK(miss.fully_faithful);
  CHECK(miss.induced_equivalence == Verdict::False);

  // Object maps must commute with the spans.
  CHECK_THROWS_AS(check_gluing(t, t, {identity_functor(Z), strict(I2, I2, {1, 0}, {3, 2, 1, 0}), identity_functor(Z)}, 5),
                  InputError);
}
