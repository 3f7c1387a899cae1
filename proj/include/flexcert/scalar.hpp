#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace flexcert {

// Exact rational number; gmp keeps it in lowest terms with positive denominator.
using Scalar = mpq_class;

Scalar make_scalar(long numerator, long denominator = 1);

// Accepts "n" or "n/d" with an optional leading minus; throws std::invalid_argument.
Scalar parse_scalar(std::string_view text);

// Inverse of parse_scalar: "n" for integers, "n/d" otherwise.
std::string format_scalar(const Scalar& value);

}  // namespace flexcert
