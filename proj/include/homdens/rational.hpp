#pragma once

#include <gmpxx.h>

#include <string>

namespace homdens {

// All counts are arbitrary-precision integers and all densities exact
// rationals; doubles appear only in rendered reports.
using Int = mpz_class;
using Rat = mpq_class;

Int int_pow(const Int& base, unsigned long exp);
Rat rat_pow(const Rat& base, unsigned long exp);

// Accepts "a/b", plain integers, and decimal literals ("0.25" -> 1/4).
Rat parse_rational(const std::string& text);

// Canonical "a/b" rendering ("3" stays "3/1" so reports are uniform).
std::string rat_str(const Rat& q);

double rat_double(const Rat& q);

// Falling factorial n (n-1) ... (n-k+1).
Int falling_factorial(long n, int k);

Int binomial(long n, int k);

// Number of surjections from a k-element set onto a j-element set.
Int surjection_count(int k, int j);

}  // namespace homdens
