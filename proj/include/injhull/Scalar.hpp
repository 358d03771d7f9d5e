#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Core>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace injhull {

/// Exact rational scalar. GMP-backed, always kept in canonical reduced form.
/// Expression templates are disabled so the type behaves well inside Eigen.
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;

using Index = Eigen::Index;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using RationalMatrix = Matrix<Rational>;
using RationalVector = Vector<Rational>;

/// Thrown when text cannot be read as an exact scalar.
class ScalarParseError : public std::runtime_error {
 public:
  explicit ScalarParseError(const std::string& what) : std::runtime_error(what) {}
};

/// Parses "p/q", "-p", "p" or an exact decimal literal such as "0.25" or "1e-3".
/// The result is reduced.
Rational parse_rational(std::string_view text);

/// Canonical text form: "p" for integers, "p/q" otherwise (q > 0, reduced).
std::string to_string(const Rational& value);

/// Exact value of a binary double, or nullopt for inf/nan.
std::optional<Rational> exact_from_double(double value);

/// Accepts a double only when its shortest decimal rendering denotes exactly the
/// same rational as its binary value (0.5 yes, 0.1 no).
std::optional<Rational> representable_from_double(double value);

/// Best rational approximation with denominator <= max_denominator, by
/// continued-fraction convergents and semiconvergents.
Rational rationalize(double value, std::int64_t max_denominator = 1'000'000);
Rational rationalize(const Rational& value, std::int64_t max_denominator = 1'000'000);

inline Rational abs(const Rational& x) { return x < 0 ? Rational(-x) : x; }

/// Least common multiple of all denominators in m.
Integer common_denominator(const RationalMatrix& m);

}  // namespace injhull
