#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "jetbeta/poly.hpp"

namespace jetbeta {

/// A set expression whose virtual Poincare polynomial can be evaluated from
/// the atom catalog with the additivity and multiplicativity laws.
///
/// Textual form: `pt`, `A(m)`, `S(m)`, `RP(m)`, `Rstar`, and the combinators
/// `U(e1,...)` (disjoint union), `X(e1,...)` (product), `D(ambient,subset)`.
struct SetExpr {
  enum class Kind {
    Point,
    Affine,
    Sphere,
    ProjSpace,
    PuncturedLine,
    DisjointUnion,
    Product,
    Difference,
  };

  Kind kind = Kind::Point;
  std::uint32_t m = 0; // atom dimension parameter; unused by combinators
  std::vector<SetExpr> children;

  static SetExpr point() { return {Kind::Point, 0, {}}; }
  static SetExpr affine(std::uint32_t m) { return {Kind::Affine, m, {}}; }
  static SetExpr sphere(std::uint32_t m) { return {Kind::Sphere, m, {}}; }
  static SetExpr proj_space(std::uint32_t m) { return {Kind::ProjSpace, m, {}}; }
  static SetExpr punctured_line() { return {Kind::PuncturedLine, 0, {}}; }
  static SetExpr disjoint_union(std::vector<SetExpr> parts) {
    return {Kind::DisjointUnion, 0, std::move(parts)};
  }
  static SetExpr product(std::vector<SetExpr> factors) {
    return {Kind::Product, 0, std::move(factors)};
  }
  /// The caller asserts `subset` is contained in `ambient`; this is not checked.
  static SetExpr difference(SetExpr ambient, SetExpr subset) {
    return {Kind::Difference, 0, {std::move(ambient), std::move(subset)}};
  }

  bool is_atom() const;
  friend bool operator==(const SetExpr &, const SetExpr &) = default;
};

/// Point -> 1, A(m) -> u^m, S(m) -> 1 + u^m, RP(m) -> 1 + u + ... + u^m,
/// Rstar -> u - 1. Throws INVALID_ARGUMENT for a non-atom.
Poly catalog_beta(const SetExpr &atom);

/// Dimension of a catalog atom (0 for a point, 1 for Rstar).
std::uint32_t atom_dimension(const SetExpr &atom);

Poly beta_eval(const SetExpr &expr);

struct BetaEvaluation {
  Poly value;
  /// Set when the final value, or any difference node, has a negative
  /// leading coefficient. That cannot happen for a true subset.
  bool suspicious = false;
  /// Every containment the expression relies on, as "ambient >= subset".
  std::vector<std::string> subset_assertions;
  /// Difference nodes whose value came out with a negative leading coefficient.
  std::vector<std::string> suspicious_nodes;
};

BetaEvaluation evaluate_beta(const SetExpr &expr);

std::string to_string(const SetExpr &expr);
/// Throws PARSE_ERROR with the byte offset of the problem.
SetExpr parse_set_expr(std::string_view text);

/// Names of the catalog atoms in their textual form.
std::vector<std::string> catalog_atom_names();

} // namespace jetbeta
