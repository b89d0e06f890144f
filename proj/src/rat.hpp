#pragma once

#include <gmpxx.h>

#include <random>
#include <stdexcept>
#include <string>

namespace pibound {

// Exact arbitrary-precision scalar types. All decision logic in this
// project compares Rat values exactly; floating point never enters a
// comparison.
using Rat = mpq_class;
using Int = mpz_class;

/// Parses "p/q" or "p" (base 10). Throws std::invalid_argument on junk.
Rat rat_from_string(const std::string& s);

/// Canonical "p/q" form, or "p" when the denominator is 1.
std::string rat_to_string(const Rat& r);

/// Exact decimal rendering with `digits` places after the point,
/// rounded half away from zero.
std::string rat_to_decimal(const Rat& r, int digits);

/// |x - ref| <= tol * |ref|, evaluated exactly.
bool rel_close(const Rat& x, const Rat& ref, const Rat& tol);

Rat rat_pow(const Rat& base, unsigned long e);
Int int_pow(const Int& base, unsigned long e);
Int factorial(unsigned long m);

/// Uniform rational strictly inside (lo, hi): numerator drawn uniformly
/// over the lattice of denominator `den` restricted to the open interval.
/// Requires lo < hi and at least one lattice point in between (den is
/// grown automatically if the interval is too narrow).
Rat uniform_rational(std::mt19937_64& rng, const Rat& lo, const Rat& hi,
                     unsigned long den = 1000000);

/// Thrown when an enumeration or count would exceed its configured cap.
struct CapExceeded : std::runtime_error {
    explicit CapExceeded(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace pibound
