// Scalar types shared by the whole library: an exact GMP-backed rational and
// plain double, plus parsing/formatting of the "p/q" interchange form.
#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cctype>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>

namespace atsp {

// Expression templates are switched off so arithmetic results are plain
// values, which keeps the type usable in generic code and std containers.
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using BigInt = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                             boost::multiprecision::et_off>;

// Per-scalar policy: exact mode carries no tolerances at all.
template <class S>
struct scalar_traits;

template <>
struct scalar_traits<Rational> {
  static constexpr bool is_exact = true;
  static Rational feasibility_tolerance() { return Rational(0); }
  static Rational pivot_warning_threshold() { return Rational(0); }
};

template <>
struct scalar_traits<double> {
  static constexpr bool is_exact = false;
  static double feasibility_tolerance() { return 1e-9; }
  static double pivot_warning_threshold() { return 1e-10; }
};

template <class S>
S abs_value(const S& v) {
  return v < S(0) ? S(-v) : v;
}

inline double to_double(const Rational& v) { return v.template convert_to<double>(); }
inline double to_double(double v) { return v; }

namespace detail {

inline bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

// Signed decimal integer string -> BigInt. Throws std::invalid_argument.
inline BigInt parse_bigint(const std::string& tok) {
  std::string body = tok;
  bool neg = false;
  if (!body.empty() && (body[0] == '-' || body[0] == '+')) {
    neg = body[0] == '-';
    body.erase(0, 1);
  }
  if (!all_digits(body)) throw std::invalid_argument("not an integer: '" + tok + "'");
  BigInt v(body);
  return neg ? BigInt(-v) : v;
}

}  // namespace detail

// Parses "p", "p/q" or a plain decimal such as "1.25" into an exact rational.
// Division canonicalizes, so never construct Rational from a raw "p/q" string.
inline Rational parse_rational(const std::string& tok) {
  auto slash = tok.find('/');
  if (slash != std::string::npos) {
    BigInt num = detail::parse_bigint(tok.substr(0, slash));
    BigInt den = detail::parse_bigint(tok.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator: '" + tok + "'");
    return Rational(num) / Rational(den);
  }
  auto dot = tok.find('.');
  if (dot != std::string::npos) {
    std::string digits = tok.substr(0, dot) + tok.substr(dot + 1);
    std::size_t frac_len = tok.size() - dot - 1;
    if (frac_len == 0) throw std::invalid_argument("malformed number: '" + tok + "'");
    BigInt num = detail::parse_bigint(digits);
    BigInt den(1);
    for (std::size_t i = 0; i < frac_len; ++i) den *= 10;
    return Rational(num) / Rational(den);
  }
  return Rational(detail::parse_bigint(tok));
}

// Canonical form: "p" when the denominator is 1, else "p/q".
inline std::string format_rational(const Rational& v) {
  BigInt num = numerator(v);
  BigInt den = denominator(v);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

// Scalar-generic parse/format so the TSPLIB and JSON layers work in both modes.
template <class S>
S parse_scalar(const std::string& tok);

template <>
inline Rational parse_scalar<Rational>(const std::string& tok) {
  return parse_rational(tok);
}

template <>
inline double parse_scalar<double>(const std::string& tok) {
  std::size_t pos = 0;
  double v = 0;
  try {
    v = std::stod(tok, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("not a number: '" + tok + "'");
  }
  if (pos != tok.size()) throw std::invalid_argument("not a number: '" + tok + "'");
  return v;
}

template <class S>
std::string format_scalar(const S& v);

template <>
inline std::string format_scalar<Rational>(const Rational& v) {
  return format_rational(v);
}

template <>
inline std::string format_scalar<double>(const double& v) {
  std::ostringstream os;
  os.precision(std::numeric_limits<double>::max_digits10);
  os << v;
  return os.str();
}

}  // namespace atsp
