#include "jetbeta/poly.hpp"

#include <numeric>
#include <sstream>

#include "jetbeta/error.hpp"

namespace jetbeta {

std::string Degree::to_string() const {
  return is_minus_infinity() ? std::string("-inf") : std::to_string(*value_);
}

Fraction Fraction::make(std::int64_t num, std::int64_t den) {
  if (den == 0)
    throw Error(ErrorCode::InvalidArgument, "fraction with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  return Fraction{num, den};
}

std::strong_ordering operator<=>(const Fraction &a, const Fraction &b) {
  const __int128 lhs = static_cast<__int128>(a.num) * b.den;
  const __int128 rhs = static_cast<__int128>(b.num) * a.den;
  return lhs <=> rhs;
}

std::string Fraction::to_string() const {
  return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
}

bool degree_less(const Degree &d, const Fraction &bound) {
  if (d.is_minus_infinity())
    return true;
  return Fraction{d.value(), 1} < bound;
}

bool degree_at_least(const Degree &d, const Fraction &bound) { return !degree_less(d, bound); }

Poly::Poly(std::vector<mpz_class> coeffs) : coeffs_(std::move(coeffs)) { normalize(); }

Poly::Poly(std::initializer_list<long> coeffs) {
  coeffs_.reserve(coeffs.size());
  for (long c : coeffs)
    coeffs_.emplace_back(c);
  normalize();
}

Poly Poly::constant(const mpz_class &c) { return Poly(std::vector<mpz_class>{c}); }

Poly Poly::monomial(std::size_t degree, const mpz_class &c) {
  std::vector<mpz_class> v(degree + 1);
  v[degree] = c;
  return Poly(std::move(v));
}

void Poly::normalize() {
  while (!coeffs_.empty() && coeffs_.back() == 0)
    coeffs_.pop_back();
}

mpz_class Poly::coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : mpz_class(0); }

Degree Poly::degree() const {
  if (coeffs_.empty())
    return Degree::minus_infinity();
  return Degree::finite(static_cast<std::int64_t>(coeffs_.size()) - 1);
}

const mpz_class &Poly::leading() const {
  if (coeffs_.empty())
    throw Error(ErrorCode::LeadingOfZero, "leading coefficient of the zero polynomial");
  return coeffs_.back();
}

mpz_class Poly::eval(const mpz_class &x) const {
  mpz_class acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
    acc = acc * x + *it;
  return acc;
}

Poly &Poly::operator+=(const Poly &other) {
  if (other.coeffs_.size() > coeffs_.size())
    coeffs_.resize(other.coeffs_.size());
  for (std::size_t i = 0; i < other.coeffs_.size(); ++i)
    coeffs_[i] += other.coeffs_[i];
  normalize();
  return *this;
}

Poly &Poly::operator-=(const Poly &other) {
  if (other.coeffs_.size() > coeffs_.size())
    coeffs_.resize(other.coeffs_.size());
  for (std::size_t i = 0; i < other.coeffs_.size(); ++i)
    coeffs_[i] -= other.coeffs_[i];
  normalize();
  return *this;
}

Poly &Poly::operator*=(const Poly &other) {
  *this = *this * other;
  return *this;
}

Poly operator*(const Poly &a, const Poly &b) {
  if (a.is_zero() || b.is_zero())
    return Poly();
  std::vector<mpz_class> out(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i] == 0)
      continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
      out[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return Poly(std::move(out));
}

Poly operator-(Poly a) {
  for (auto &c : a.coeffs_)
    c = -c;
  return a;
}

Poly Poly::pow(std::uint64_t m) const {
  Poly result = Poly::constant(1);
  Poly base = *this;
  while (m > 0) {
    if (m & 1U)
      result *= base;
    m >>= 1U;
    if (m > 0)
      base *= base;
  }
  return result;
}

std::string Poly::to_string() const {
  if (is_zero())
    return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t idx = coeffs_.size(); idx-- > 0;) {
    const mpz_class &c = coeffs_[idx];
    if (c == 0)
      continue;
    mpz_class mag = abs(c);
    if (first) {
      if (c < 0)
        os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (idx == 0) {
      os << mag.get_str();
      continue;
    }
    if (mag != 1)
      os << mag.get_str() << "*";
    os << "u";
    if (idx > 1)
      os << "^" << idx;
  }
  return os.str();
}

Poly poly_add(const Poly &a, const Poly &b) { return a + b; }
Poly poly_mul(const Poly &a, const Poly &b) { return a * b; }
Poly poly_pow(const Poly &a, std::uint64_t m) { return a.pow(m); }
Degree poly_degree(const Poly &a) { return a.degree(); }
mpz_class poly_leading(const Poly &a) { return a.leading(); }
mpz_class poly_eval(const Poly &a, const mpz_class &x) { return a.eval(x); }

nlohmann::ordered_json poly_to_json(const Poly &p) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto &c : p.coeffs())
    arr.push_back(c.get_str());
  return arr;
}

namespace {
bool is_decimal_integer(const std::string &s) {
  std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
  if (i >= s.size())
    return false;
  for (; i < s.size(); ++i)
    if (s[i] < '0' || s[i] > '9')
      return false;
  return true;
}
} // namespace

Poly poly_from_json(const nlohmann::ordered_json &j) {
  if (!j.is_array())
    throw Error(ErrorCode::ParseError, "polynomial must be a JSON array of decimal strings");
  std::vector<mpz_class> coeffs;
  coeffs.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    const auto &item = j[i];
    if (!item.is_string() || !is_decimal_integer(item.get<std::string>()))
      throw Error(ErrorCode::ParseError,
                  "polynomial coefficient " + std::to_string(i) + " is not a decimal integer string");
    std::string text = item.get<std::string>();
    if (text[0] == '+')
      text.erase(0, 1);
    coeffs.emplace_back(text, 10);
  }
  return Poly(std::move(coeffs));
}

} // namespace jetbeta
