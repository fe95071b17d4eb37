#ifndef AMBIENTKIT_SERIALIZE_HPP
#define AMBIENTKIT_SERIALIZE_HPP

/*
  JSON and CSV forms. Rationals are strings ("3/4", "-2"), compositions are
  integer arrays, and objects use nlohmann's default std::map storage, so
  keys always come out sorted and dumps are byte-stable.
*/

#include <string>

#include <json.hpp>

#include "ambientkit/exact_matrix.hpp"
#include "ambientkit/family_solver.hpp"
#include "ambientkit/polynomial.hpp"

namespace ambientkit {

using Json = nlohmann::json;

inline constexpr const char* kToolVersion = "0.1.0";

Json to_json(const Composition& alpha);
Json to_json(const ExactMatrix& m);
Json to_json(const GradedPolynomial& p);
Json to_json(const CoefficientFamily& a);
Json to_json(const WeightAssignment& w);
Json spec_json(const OperatorSpec& spec);

/// family.json: family, n, k, l (or l1/l2), weights, generic, basis.
Json to_json(const FamilyBasis& basis);

/// Throws ParseError on malformed input and the spec's own errors
/// (InvalidSpec, IndexMismatch) on inconsistent content.
FamilyBasis family_basis_from_json(const Json& j);
GradedPolynomial polynomial_from_json(const Json& j, std::size_t variables);
ExactMatrix matrix_from_json(const Json& j);

/// One row per (member, alpha): member,a1,...,al,value with quoted values.
std::string to_csv(const FamilyBasis& basis);

/// dump with two-space indent and a trailing newline.
std::string dump(const Json& j);

} // namespace ambientkit

#endif
