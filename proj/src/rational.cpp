#include "heis/rational.hpp"

#include <cctype>
#include <limits>

#include "heis/error.hpp"

namespace heis {

namespace {

using boost::multiprecision::mpz_int;

mpz_int parse_integer(std::string_view text, std::string_view whole) {
  if (text.empty()) {
    throw Error(ErrorKind::Parse, "malformed rational '" + std::string(whole) + "'");
  }
  std::size_t start = (text[0] == '-' || text[0] == '+') ? 1 : 0;
  if (start == text.size()) {
    throw Error(ErrorKind::Parse, "malformed rational '" + std::string(whole) + "'");
  }
  for (std::size_t i = start; i < text.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i]))) {
      throw Error(ErrorKind::Parse, "malformed rational '" + std::string(whole) + "'");
    }
  }
  return mpz_int(std::string(text[0] == '+' ? text.substr(1) : text));
}

Integer to_integer(const mpz_int& z) {
  if (z > mpz_int(std::numeric_limits<Integer>::max()) ||
      z < mpz_int(std::numeric_limits<Integer>::min())) {
    throw Error(ErrorKind::InvalidArgument, "integer out of 64-bit range");
  }
  return z.convert_to<Integer>();
}

mpz_int pow10(long e) {
  mpz_int r = 1;
  for (long i = 0; i < e; ++i) r *= 10;
  return r;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view whole = text;
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    mpz_int num = parse_integer(text.substr(0, slash), whole);
    mpz_int den = parse_integer(text.substr(slash + 1), whole);
    if (den == 0) throw Error(ErrorKind::Parse, "zero denominator in '" + std::string(whole) + "'");
    return Rational(num, den);
  }

  long exponent = 0;
  if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    exponent = static_cast<long>(to_integer(parse_integer(text.substr(e + 1), whole)));
    text = text.substr(0, e);
  }
  Rational value;
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string digits(text.substr(0, dot));
    std::string frac(text.substr(dot + 1));
    bool negative = !digits.empty() && digits[0] == '-';
    if (digits.empty() || digits == "-" || digits == "+") digits += "0";
    if (frac.empty()) frac = "0";
    mpz_int ip = parse_integer(digits, whole);
    mpz_int fp = parse_integer(frac, whole);
    if (frac[0] == '-' || frac[0] == '+') throw Error(ErrorKind::Parse, "malformed rational");
    Rational f(fp, pow10(static_cast<long>(frac.size())));
    value = negative ? Rational(ip) - f : Rational(ip) + f;
  } else {
    value = Rational(parse_integer(text, whole));
  }
  if (exponent > 0) value *= Rational(pow10(exponent));
  if (exponent < 0) value /= Rational(pow10(-exponent));
  return value;
}

std::string to_string(const Rational& value) { return value.str(); }

double to_double(const Rational& value) { return value.convert_to<double>(); }

Integer floor_to_integer(const Rational& value) {
  mpz_int num = boost::multiprecision::numerator(value);
  mpz_int den = boost::multiprecision::denominator(value);
  mpz_int q = num / den;  // truncates toward zero
  if (num < 0 && q * den != num) q -= 1;
  return to_integer(q);
}

Integer ceil_to_integer(const Rational& value) { return -floor_to_integer(-value); }

Integer round_half_toward_zero(const Rational& value) {
  Rational a = value < 0 ? Rational(-value) : value;
  Integer f = floor_to_integer(a);
  Integer r = (a - Rational(f) > Rational(1, 2)) ? f + 1 : f;
  return value < 0 ? -r : r;
}

Integer isqrt_floor(const Rational& value) {
  if (value < 0) throw Error(ErrorKind::InvalidArgument, "isqrt of negative value");
  Integer n = floor_to_integer(value);
  mpz_int r = boost::multiprecision::sqrt(mpz_int(n));
  Integer k = to_integer(r);
  while (Rational(k + 1) * Rational(k + 1) <= value) ++k;
  while (k > 0 && Rational(k) * Rational(k) > value) --k;
  return k;
}

Rational sqrt_upper(const Rational& value, unsigned bits) {
  const Rational scale(mpz_int(1) << bits);
  const Rational scaled = value * scale * scale;
  Integer k = isqrt_floor(scaled);
  if (Rational(k) * Rational(k) < scaled) ++k;
  return Rational(k) / scale;
}

Rational fourth_root_upper(const Rational& value, unsigned bits) {
  if (value < 0) throw Error(ErrorKind::InvalidArgument, "fourth root of negative value");
  const mpz_int scale = mpz_int(1) << bits;
  auto fits = [&](const mpz_int& k) {
    Rational x(k, scale);
    Rational x2 = x * x;
    return x2 * x2 >= value;
  };
  mpz_int lo = 0;
  mpz_int hi = scale;
  while (!fits(hi)) hi *= 2;
  while (hi - lo > 1) {
    mpz_int mid = (lo + hi) / 2;
    if (fits(mid)) hi = mid; else lo = mid;
  }
  return fits(lo) ? Rational(lo, scale) : Rational(hi, scale);
}

}  // namespace heis
