#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Core>

namespace heis {

using Integer = std::int64_t;
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

template <typename Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using IntVec = Vec<Integer>;
using RatVec = Vec<Rational>;
using RatMat = Mat<Rational>;

/// Accepts "3", "-7/2", "0.125" and "1e-3".
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& value);
double to_double(const Rational& value);

Integer floor_to_integer(const Rational& value);
Integer ceil_to_integer(const Rational& value);
/// Nearest integer; exact halves go toward zero.
Integer round_half_toward_zero(const Rational& value);

/// Largest integer n with n * n <= value (value >= 0).
Integer isqrt_floor(const Rational& value);

/// Smallest k / 2^bits with (k / 2^bits)^2 >= value (value >= 0).
Rational sqrt_upper(const Rational& value, unsigned bits = 20);

/// Smallest k / 2^bits with (k / 2^bits)^4 >= value (value >= 0).
Rational fourth_root_upper(const Rational& value, unsigned bits = 40);

inline RatVec to_rational(const IntVec& v) {
  RatVec out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) out[i] = Rational(v[i]);
  return out;
}

inline Vec<double> to_double(const RatVec& v) {
  Vec<double> out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) out[i] = to_double(v[i]);
  return out;
}

}  // namespace heis
