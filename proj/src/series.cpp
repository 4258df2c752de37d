#include "jetbeta/series.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "jetbeta/error.hpp"

namespace jetbeta {

TruncatedSeries::TruncatedSeries(std::int64_t precision) : precision_(precision) {
  if (precision < 0)
    throw Error(ErrorCode::InvalidArgument, "series precision must be nonnegative");
  coeffs_.assign(static_cast<std::size_t>(precision) + 1, mpq_class(0));
}

TruncatedSeries::TruncatedSeries(std::vector<mpq_class> coeffs, std::int64_t precision)
    : TruncatedSeries(precision) {
  if (static_cast<std::int64_t>(coeffs.size()) > precision + 1)
    coeffs.resize(static_cast<std::size_t>(precision) + 1);
  std::copy(coeffs.begin(), coeffs.end(), coeffs_.begin());
  for (auto &c : coeffs_)
    c.canonicalize();
}

TruncatedSeries TruncatedSeries::constant(const mpq_class &c, std::int64_t precision) {
  return monomial(0, c, precision);
}

TruncatedSeries TruncatedSeries::monomial(std::int64_t degree, const mpq_class &c, std::int64_t precision) {
  TruncatedSeries s(precision);
  if (degree <= precision)
    s.coeffs_[static_cast<std::size_t>(degree)] = c;
  return s;
}

const mpq_class &TruncatedSeries::coeff(std::int64_t i) const {
  if (i < 0 || i > precision_)
    throw Error(ErrorCode::PrecisionExhausted,
                "coefficient of t^" + std::to_string(i) + " requested from a series known through t^" +
                    std::to_string(precision_));
  return coeffs_[static_cast<std::size_t>(i)];
}

void TruncatedSeries::set_coeff(std::int64_t i, const mpq_class &c) {
  if (i < 0 || i > precision_)
    throw Error(ErrorCode::PrecisionExhausted, "cannot set t^" + std::to_string(i) + " beyond the truncation");
  coeffs_[static_cast<std::size_t>(i)] = c;
  coeffs_[static_cast<std::size_t>(i)].canonicalize();
}

bool TruncatedSeries::known_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const mpq_class &c) { return c == 0; });
}

std::int64_t TruncatedSeries::order() const {
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    if (coeffs_[i] != 0)
      return static_cast<std::int64_t>(i);
  throw Error(ErrorCode::PrecisionExhausted,
              "all coefficients through t^" + std::to_string(precision_) + " vanish; raise the truncation");
}

TruncatedSeries TruncatedSeries::truncated(std::int64_t precision) const {
  return TruncatedSeries(coeffs_, std::min(precision, precision_));
}

TruncatedSeries operator+(const TruncatedSeries &a, const TruncatedSeries &b) {
  TruncatedSeries out(std::min(a.precision_, b.precision_));
  for (std::size_t i = 0; i < out.coeffs_.size(); ++i)
    out.coeffs_[i] = a.coeffs_[i] + b.coeffs_[i];
  return out;
}

TruncatedSeries operator-(const TruncatedSeries &a, const TruncatedSeries &b) {
  TruncatedSeries out(std::min(a.precision_, b.precision_));
  for (std::size_t i = 0; i < out.coeffs_.size(); ++i)
    out.coeffs_[i] = a.coeffs_[i] - b.coeffs_[i];
  return out;
}

TruncatedSeries operator*(const TruncatedSeries &a, const TruncatedSeries &b) {
  TruncatedSeries out(std::min(a.precision_, b.precision_));
  const std::size_t len = out.coeffs_.size();
  for (std::size_t i = 0; i < len; ++i) {
    if (a.coeffs_[i] == 0)
      continue;
    for (std::size_t j = 0; i + j < len; ++j)
      out.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return out;
}

TruncatedSeries operator*(const mpq_class &c, const TruncatedSeries &a) {
  TruncatedSeries out = a;
  for (auto &x : out.coeffs_)
    x *= c;
  return out;
}

TruncatedSeries TruncatedSeries::pow(std::uint64_t m) const {
  TruncatedSeries result = constant(1, precision_);
  TruncatedSeries base = *this;
  while (m > 0) {
    if (m & 1U)
      result = result * base;
    m >>= 1U;
    if (m > 0)
      base = base * base;
  }
  return result;
}

bool TruncatedSeries::agrees_with(const TruncatedSeries &other) const {
  const auto len = static_cast<std::size_t>(std::min(precision_, other.precision_)) + 1;
  return std::equal(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(len), other.coeffs_.begin());
}

std::string TruncatedSeries::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0)
      continue;
    if (!first)
      os << " + ";
    first = false;
    os << coeffs_[i].get_str();
    if (i > 0)
      os << "*t^" << i;
  }
  if (first)
    os << "0";
  os << " + O(t^" << precision_ + 1 << ")";
  return os.str();
}

TruncatedSeries series_add(const TruncatedSeries &a, const TruncatedSeries &b) { return a + b; }
TruncatedSeries series_mul(const TruncatedSeries &a, const TruncatedSeries &b) { return a * b; }

TruncatedSeries series_compose(const TruncatedSeries &outer, const TruncatedSeries &inner) {
  if (inner.coeff(0) != 0)
    throw Error(ErrorCode::ComposeNonzeroConstant, "inner series of a composition must vanish at t = 0");
  const std::int64_t precision = std::min(outer.precision(), inner.precision());
  // Horner in the inner series: outer_0 + inner*(outer_1 + inner*(...)).
  TruncatedSeries acc(precision);
  for (std::int64_t i = precision; i >= 0; --i)
    acc = acc * inner.truncated(precision) + TruncatedSeries::constant(outer.coeff(i), precision);
  return acc;
}

TruncatedSeries series_divide(const TruncatedSeries &dividend, const TruncatedSeries &divisor) {
  if (divisor.known_zero())
    throw Error(ErrorCode::NotInImage, "division by a series that vanishes through its truncation");
  const std::int64_t d = divisor.order();
  const std::int64_t precision = std::min(dividend.precision(), divisor.precision()) - d;
  if (precision < 0)
    throw Error(ErrorCode::PrecisionExhausted, "divisor order exceeds the available precision");
  for (std::int64_t i = 0; i < d; ++i)
    if (dividend.coeff(i) != 0)
      throw Error(ErrorCode::NotInImage,
                  "dividend has a nonzero coefficient at t^" + std::to_string(i) + " below the divisor order");
  TruncatedSeries q(precision);
  const mpq_class &lead = divisor.coeff(d);
  for (std::int64_t i = 0; i <= precision; ++i) {
    mpq_class acc = dividend.coeff(i + d);
    for (std::int64_t m = 1; m <= i; ++m)
      acc -= divisor.coeff(d + m) * q.coeff(i - m);
    q.set_coeff(i, acc / lead);
  }
  return q;
}

mpq_class parse_rational(std::string_view text) {
  std::string s(text);
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }), s.end());
  if (!s.empty() && s[0] == '+')
    s.erase(0, 1);
  const auto slash = s.find('/');
  auto digits = [](std::string_view part, bool allow_sign) {
    std::size_t i = (allow_sign && !part.empty() && part[0] == '-') ? 1 : 0;
    if (i >= part.size())
      return false;
    for (; i < part.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(part[i])))
        return false;
    return true;
  };
  const bool ok = slash == std::string::npos
                      ? digits(s, true)
                      : digits(std::string_view(s).substr(0, slash), true) &&
                            digits(std::string_view(s).substr(slash + 1), false);
  if (!ok)
    throw Error(ErrorCode::ParseError, "'" + std::string(text) + "' is not a rational number");
  mpq_class q(s, 10);
  if (q.get_den() == 0)
    throw Error(ErrorCode::ParseError, "'" + std::string(text) + "' has a zero denominator");
  q.canonicalize();
  return q;
}

} // namespace jetbeta
