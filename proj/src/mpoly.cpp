#include "jetbeta/mpoly.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

#include "jetbeta/error.hpp"

namespace jetbeta {

MPoly MPoly::constant(std::size_t nvars, const mpq_class &c) {
  MPoly p(nvars);
  p.add_term(Exponent(nvars, 0), c);
  return p;
}

MPoly MPoly::variable(std::size_t nvars, std::size_t index) {
  MPoly p(nvars);
  Exponent e(nvars, 0);
  e.at(index) = 1;
  p.add_term(e, 1);
  return p;
}

void MPoly::add_term(const Exponent &e, const mpq_class &c) {
  if (c == 0)
    return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0)
      terms_.erase(it);
  }
}

MPoly MPoly::derivative(std::size_t var) const {
  MPoly out(nvars_);
  for (const auto &[e, c] : terms_) {
    if (e[var] == 0)
      continue;
    Exponent d = e;
    --d[var];
    out.add_term(d, c * e[var]);
  }
  return out;
}

MPoly operator+(const MPoly &a, const MPoly &b) {
  MPoly out = a;
  for (const auto &[e, c] : b.terms_)
    out.add_term(e, c);
  return out;
}

MPoly operator-(const MPoly &a, const MPoly &b) {
  MPoly out = a;
  for (const auto &[e, c] : b.terms_)
    out.add_term(e, -c);
  return out;
}

MPoly operator*(const MPoly &a, const MPoly &b) {
  MPoly out(std::max(a.nvars_, b.nvars_));
  for (const auto &[ea, ca] : a.terms_)
    for (const auto &[eb, cb] : b.terms_) {
      Exponent e(out.nvars_, 0);
      for (std::size_t i = 0; i < e.size(); ++i)
        e[i] = (i < ea.size() ? ea[i] : 0) + (i < eb.size() ? eb[i] : 0);
      out.add_term(e, ca * cb);
    }
  return out;
}

MPoly MPoly::pow(std::uint64_t m) const {
  MPoly result = constant(nvars_, 1);
  MPoly base = *this;
  while (m > 0) {
    if (m & 1U)
      result = result * base;
    m >>= 1U;
    if (m > 0)
      base = base * base;
  }
  return result;
}

TruncatedSeries MPoly::eval(const std::vector<TruncatedSeries> &args) const {
  if (args.size() != nvars_)
    throw Error(ErrorCode::InvalidArgument, "expected " + std::to_string(nvars_) + " series, got " +
                                                std::to_string(args.size()));
  std::int64_t precision = 0;
  if (!args.empty()) {
    precision = args.front().precision();
    for (const auto &a : args)
      precision = std::min(precision, a.precision());
  }
  // powers[v][p] = args[v]^p, grown on demand
  std::vector<std::vector<TruncatedSeries>> powers(nvars_);
  for (std::size_t v = 0; v < nvars_; ++v)
    powers[v].push_back(TruncatedSeries::constant(1, precision));
  TruncatedSeries out(precision);
  for (const auto &[e, c] : terms_) {
    TruncatedSeries term = TruncatedSeries::constant(c, precision);
    for (std::size_t v = 0; v < nvars_; ++v) {
      while (powers[v].size() <= e[v])
        powers[v].push_back(powers[v].back() * args[v].truncated(precision));
      if (e[v] > 0)
        term = term * powers[v][e[v]];
    }
    out = out + term;
  }
  return out;
}

std::string MPoly::to_string(const std::vector<std::string> &names) const {
  if (terms_.empty())
    return "0";
  std::ostringstream os;
  bool first = true;
  // Highest total degree first for readability.
  std::vector<std::pair<Exponent, mpq_class>> ordered(terms_.begin(), terms_.end());
  std::stable_sort(ordered.begin(), ordered.end(), [](const auto &a, const auto &b) {
    return std::accumulate(a.first.begin(), a.first.end(), 0U) > std::accumulate(b.first.begin(), b.first.end(), 0U);
  });
  for (const auto &[e, c] : ordered) {
    mpq_class mag = abs(c);
    os << (first ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + "));
    first = false;
    const bool is_const = std::all_of(e.begin(), e.end(), [](auto x) { return x == 0; });
    bool wrote = false;
    if (mag != 1 || is_const) {
      os << mag.get_str();
      wrote = true;
    }
    for (std::size_t v = 0; v < e.size(); ++v) {
      if (e[v] == 0)
        continue;
      if (wrote)
        os << "*";
      os << (v < names.size() ? names[v] : "x" + std::to_string(v + 1));
      if (e[v] > 1)
        os << "^" << e[v];
      wrote = true;
    }
  }
  return os.str();
}

std::vector<std::string> default_variable_names(std::size_t n) {
  static const std::vector<std::string> small = {"x", "y", "z", "w"};
  if (n <= small.size())
    return {small.begin(), small.begin() + static_cast<std::ptrdiff_t>(n)};
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i)
    out.push_back("x" + std::to_string(i + 1));
  return out;
}

namespace {

class MPolyParser {
public:
  MPolyParser(std::string_view text, const std::vector<std::string> &names) : text_(text), names_(names) {}

  MPoly parse() {
    MPoly p = expr();
    skip_ws();
    if (pos_ != text_.size())
      fail("unexpected character");
    return p;
  }

private:
  [[noreturn]] void fail(const std::string &what) const {
    throw Error(ErrorCode::ParseError,
                "polynomial '" + std::string(text_) + "' at offset " + std::to_string(pos_) + ": " + what);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  bool consume(char c) {
    if (peek(c)) {
      ++pos_;
      return true;
    }
    return false;
  }

  MPoly expr() {
    MPoly acc = term();
    while (true) {
      if (consume('+'))
        acc = acc + term();
      else if (consume('-'))
        acc = acc - term();
      else
        return acc;
    }
  }

  MPoly term() {
    MPoly acc = unary();
    while (consume('*'))
      acc = acc * unary();
    return acc;
  }

  MPoly unary() {
    if (consume('-'))
      return MPoly::constant(names_.size(), -1) * unary();
    if (consume('+'))
      return unary();
    return power();
  }

  MPoly power() {
    MPoly base = primary();
    if (consume('^')) {
      skip_ws();
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
        ++pos_;
      if (start == pos_ || pos_ - start > 4)
        fail("expected a small nonnegative integer exponent");
      base = base.pow(std::stoul(std::string(text_.substr(start, pos_ - start))));
    }
    return base;
  }

  std::string digits() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  MPoly primary() {
    skip_ws();
    if (pos_ >= text_.size())
      fail("unexpected end of input");
    const char ch = text_[pos_];
    if (ch == '(') {
      ++pos_;
      MPoly inner = expr();
      if (!consume(')'))
        fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      std::string num = digits();
      // A rational literal binds tighter than any operator.
      if (pos_ < text_.size() && text_[pos_] == '/') {
        ++pos_;
        std::string den = digits();
        if (den.empty())
          fail("expected a denominator");
        num += "/" + den;
      }
      return MPoly::constant(names_.size(), parse_rational(num));
    }
    if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      const std::string name(text_.substr(start, pos_ - start));
      auto it = std::find(names_.begin(), names_.end(), name);
      if (it == names_.end())
        fail("unknown variable '" + name + "'");
      return MPoly::variable(names_.size(), static_cast<std::size_t>(it - names_.begin()));
    }
    fail(std::string("unexpected '") + ch + "'");
  }

  std::string_view text_;
  const std::vector<std::string> &names_;
  std::size_t pos_ = 0;
};

} // namespace

MPoly parse_mpoly(std::string_view text, const std::vector<std::string> &names) {
  return MPolyParser(text, names).parse();
}

std::vector<TruncatedSeries> PolyMap::apply(const std::vector<TruncatedSeries> &arc) const {
  std::vector<TruncatedSeries> out;
  out.reserve(components.size());
  for (const auto &c : components)
    out.push_back(c.eval(arc));
  return out;
}

std::vector<std::string> PolyMap::to_strings() const {
  std::vector<std::string> out;
  for (const auto &c : components)
    out.push_back(c.to_string(names));
  return out;
}

PolyMap parse_polymap(const std::vector<std::string> &components, std::vector<std::string> names) {
  if (names.empty())
    names = default_variable_names(components.size());
  if (names.size() != components.size())
    throw Error(ErrorCode::InvalidArgument, "a map needs as many components as variables (" +
                                                std::to_string(components.size()) + " vs " +
                                                std::to_string(names.size()) + ")");
  PolyMap m;
  m.names = std::move(names);
  for (const auto &text : components)
    m.components.push_back(parse_mpoly(text, m.names));
  return m;
}

MPoly jacobian_det(const PolyMap &m) {
  const std::size_t n = m.dimension();
  std::vector<std::vector<MPoly>> d(n, std::vector<MPoly>(n, MPoly(n)));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c)
      d[r][c] = m.components[r].derivative(c);

  // Leibniz expansion over permutations; parity tracked by counting inversions.
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  MPoly det(n);
  if (n == 0)
    return MPoly::constant(0, 1);
  do {
    std::size_t inversions = 0;
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b)
        if (perm[a] > perm[b])
          ++inversions;
    MPoly prod = MPoly::constant(n, inversions % 2 == 0 ? 1 : -1);
    for (std::size_t r = 0; r < n && !prod.is_zero(); ++r)
      prod = prod * d[r][perm[r]];
    det = det + prod;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return det;
}

} // namespace jetbeta
