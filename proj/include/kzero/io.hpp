#pragma once

// JSON documents for every input and output type. Arbitrary-size integers
// travel as decimal strings; small counts, degrees and indices as numbers.
// Malformed documents throw SchemaError; well-formed but invalid data is left
// to the modules, which throw DomainError.

#include "kzero/groth.hpp"
#include "kzero/simplicial.hpp"

#include <json.hpp>

#include <memory>
#include <optional>
#include <string>

namespace kzero::io {

using Json = nlohmann::ordered_json;

Json parse(const std::string& text);

Integer to_integer(const Json& j);
Json from_integer(const Integer& x);
Json from_integers(const std::vector<Integer>& xs);
Json from_vector(const IntVector& v);

/// Arrays of rows. An empty array is accepted for any shape with no rows.
IntMatrix to_matrix(const Json& j, Index rows = -1, Index cols = -1);
Json from_matrix(const IntMatrix& A);

GroundRing to_ring(const Json& j);
Json from_ring(const GroundRing& R);

Json from_group(const FinAbGroup& G);

/// {"ring", "grading": {"type": "bounded", "min", "max"} | {"type": "periodic", "n"},
///  "ranks": {degree: rank}, "differentials": {degree: matrix}}
Complex to_complex(const Json& j);
Json from_complex(const Complex& C);

/// {"source": complex, "target": complex, "components": {degree: matrix}}
ChainMap to_chain_map(const Json& j);

/// {"ring", "period", "objects", "basis": [{"label", "source", "target", "degree"}],
///  "units": [index | null], "max_arity", "mu": {"k": {"i1,...,ik": [[coeff, index], ...]}}}
AInfCategory to_category(const Json& j);
Json from_category(const AInfCategory& C);

/// {"source", "target", "object_map", "components": {"k": {...}}, "max_arity"}
AInfFunctor to_functor(const Json& j);
Json from_functor(const AInfFunctor& F);

/// {"A", "B", "C": categories, "f", "g": {"object_map", "components"}}
Span to_span(const Json& j);
Json from_span(const Span& s);

K0Presentation to_presentation(const Json& j);
Json from_presentation(const K0Presentation& P);

/// Explicit tables, or {"standard": d, "dim_bound": b}, {"empty": true,
/// "dim_bound": b}, {"product": [X, Y]}.
SimplicialSet to_simplicial_set(const Json& j);
Json from_simplicial_set(const SimplicialSet& X);

/// {"objects", "arrows": [{"label", "source", "target"}], "identities": [label],
///  "composition": [[g, h, g∘h], ...]}; composites with an identity are implied.
FiniteCategory to_finite_category(const Json& j);
Json from_finite_category(const FiniteCategory& C);

/// {"builtin": "f2-free-modules", "max_rank": r}, {"builtin": "zero"}, or
/// {"name", "category", "zero", "cofibrations", "weak_equivalences", "quotients": [[cof, quot]]}.
WaldhausenToy to_toy(const Json& j);

/// {"objects": [target object], "arrows": [target arrow]} by name, or
/// {"constant": object}.
SimplexFunctor to_simplex_functor(const Json& j, const FiniteCategory& source, const FiniteCategory& target);

}  // namespace kzero::io
