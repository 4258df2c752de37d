#include "jetbeta/beta.hpp"

#include <cctype>

#include "jetbeta/error.hpp"

namespace jetbeta {

bool SetExpr::is_atom() const {
  switch (kind) {
  case Kind::Point:
  case Kind::Affine:
  case Kind::Sphere:
  case Kind::ProjSpace:
  case Kind::PuncturedLine:
    return true;
  default:
    return false;
  }
}

Poly catalog_beta(const SetExpr &atom) {
  switch (atom.kind) {
  case SetExpr::Kind::Point:
    return Poly{1};
  case SetExpr::Kind::Affine:
    return Poly::monomial(atom.m);
  case SetExpr::Kind::Sphere:
    // S^0 is two points.
    return Poly{1} + Poly::monomial(atom.m);
  case SetExpr::Kind::ProjSpace:
    return Poly(std::vector<mpz_class>(atom.m + 1, mpz_class(1)));
  case SetExpr::Kind::PuncturedLine:
    return Poly{-1, 1};
  default:
    throw Error(ErrorCode::InvalidArgument, "catalog_beta called on a combinator: " + to_string(atom));
  }
}

std::uint32_t atom_dimension(const SetExpr &atom) {
  switch (atom.kind) {
  case SetExpr::Kind::Point:
    return 0;
  case SetExpr::Kind::PuncturedLine:
    return 1;
  case SetExpr::Kind::Affine:
  case SetExpr::Kind::Sphere:
  case SetExpr::Kind::ProjSpace:
    return atom.m;
  default:
    throw Error(ErrorCode::InvalidArgument, "atom_dimension called on a combinator: " + to_string(atom));
  }
}

namespace {

Poly eval_node(const SetExpr &expr, BetaEvaluation *trace) {
  if (expr.is_atom())
    return catalog_beta(expr);
  switch (expr.kind) {
  case SetExpr::Kind::DisjointUnion: {
    Poly sum;
    for (const auto &child : expr.children)
      sum += eval_node(child, trace);
    return sum;
  }
  case SetExpr::Kind::Product: {
    Poly prod{1};
    for (const auto &child : expr.children)
      prod *= eval_node(child, trace);
    return prod;
  }
  case SetExpr::Kind::Difference: {
    if (expr.children.size() != 2)
      throw Error(ErrorCode::InvalidArgument, "difference node needs exactly two operands");
    Poly value = eval_node(expr.children[0], trace) - eval_node(expr.children[1], trace);
    if (trace != nullptr) {
      trace->subset_assertions.push_back(to_string(expr.children[0]) + " >= " +
                                         to_string(expr.children[1]));
      if (!value.is_zero() && value.leading() < 0)
        trace->suspicious_nodes.push_back(to_string(expr));
    }
    return value;
  }
  default:
    break;
  }
  throw Error(ErrorCode::InvalidArgument, "malformed set expression");
}

class ExprParser {
public:
  explicit ExprParser(std::string_view text) : text_(text) {}

  SetExpr parse() {
    SetExpr e = parse_expr();
    skip_ws();
    if (pos_ != text_.size())
      fail("trailing characters");
    return e;
  }

private:
  [[noreturn]] void fail(const std::string &what) const {
    throw Error(ErrorCode::ParseError,
                "set expression '" + std::string(text_) + "' at offset " + std::to_string(pos_) + ": " + what);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  bool consume(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!consume(c))
      fail(std::string("expected '") + c + "'");
  }

  std::string identifier() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    if (start == pos_)
      fail("expected a name");
    return std::string(text_.substr(start, pos_ - start));
  }

  std::uint32_t dimension_argument() {
    expect('(');
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    if (start == pos_)
      fail("expected a nonnegative integer");
    if (pos_ - start > 6)
      fail("dimension too large");
    auto value = static_cast<std::uint32_t>(std::stoul(std::string(text_.substr(start, pos_ - start))));
    expect(')');
    return value;
  }

  std::vector<SetExpr> arguments() {
    expect('(');
    std::vector<SetExpr> out;
    if (consume(')'))
      return out;
    do {
      out.push_back(parse_expr());
    } while (consume(','));
    expect(')');
    return out;
  }

  SetExpr parse_expr() {
    const std::string name = identifier();
    if (name == "pt" || name == "Point")
      return SetExpr::point();
    if (name == "Rstar")
      return SetExpr::punctured_line();
    if (name == "A")
      return SetExpr::affine(dimension_argument());
    if (name == "S")
      return SetExpr::sphere(dimension_argument());
    if (name == "RP")
      return SetExpr::proj_space(dimension_argument());
    if (name == "U")
      return SetExpr::disjoint_union(arguments());
    if (name == "X")
      return SetExpr::product(arguments());
    if (name == "D") {
      auto args = arguments();
      if (args.size() != 2)
        fail("D(ambient,subset) takes exactly two operands");
      return SetExpr::difference(std::move(args[0]), std::move(args[1]));
    }
    fail("unknown set constructor '" + name + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

std::string join_children(const char *head, const std::vector<SetExpr> &children) {
  std::string out = head;
  out += "(";
  for (std::size_t i = 0; i < children.size(); ++i) {
    if (i > 0)
      out += ",";
    out += to_string(children[i]);
  }
  out += ")";
  return out;
}

} // namespace

Poly beta_eval(const SetExpr &expr) { return eval_node(expr, nullptr); }

BetaEvaluation evaluate_beta(const SetExpr &expr) {
  BetaEvaluation result;
  result.value = eval_node(expr, &result);
  result.suspicious = !result.suspicious_nodes.empty() ||
                      (!result.value.is_zero() && result.value.leading() < 0);
  return result;
}

std::string to_string(const SetExpr &expr) {
  switch (expr.kind) {
  case SetExpr::Kind::Point:
    return "pt";
  case SetExpr::Kind::Affine:
    return "A(" + std::to_string(expr.m) + ")";
  case SetExpr::Kind::Sphere:
    return "S(" + std::to_string(expr.m) + ")";
  case SetExpr::Kind::ProjSpace:
    return "RP(" + std::to_string(expr.m) + ")";
  case SetExpr::Kind::PuncturedLine:
    return "Rstar";
  case SetExpr::Kind::DisjointUnion:
    return join_children("U", expr.children);
  case SetExpr::Kind::Product:
    return join_children("X", expr.children);
  case SetExpr::Kind::Difference:
    return join_children("D", expr.children);
  }
  return "?";
}

SetExpr parse_set_expr(std::string_view text) { return ExprParser(text).parse(); }

std::vector<std::string> catalog_atom_names() { return {"pt", "A(m)", "S(m)", "RP(m)", "Rstar"}; }

} // namespace jetbeta
