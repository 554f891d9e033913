#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace etalg {

using Integer = mpz_class;
using Rational = mpq_class;

Rational make_rational(long num, long den = 1);

// "num/den" with den > 0 in lowest terms; integers are written without "/1".
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

// Accepts "a", "a/b", "-a/b". Throws Error(schema) on malformed input.
Rational parse_rational(std::string_view text);

double to_double(const Rational& q);

Rational rabs(const Rational& q);
Rational rmin(const Rational& a, const Rational& b);
Rational rmax(const Rational& a, const Rational& b);

// Smallest integer >= q, largest integer <= q.
Integer ceil_of(const Rational& q);
Integer floor_of(const Rational& q);

// Sorted, duplicates removed.
void sort_unique(std::vector<Rational>& xs);

}  // namespace etalg
