#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "qtop/errors.hpp"

namespace qtop {

using Rat = mpq_class;
using RatVec = std::vector<Rat>;

inline double to_double(const Rat& r) { return r.get_d(); }

/* Accepts "p/q", integer, or decimal/scientific literals. Decimal input is
   rationalized as round(x * 10^6) / 10^6; the denominator bound is part of
   the input contract and is reported by the parser on request. */
Rat parse_rational(const std::string& s, bool* rationalized = nullptr);

/* Nearest rational with denominator 10^6 (the documented input bound). */
Rat rationalize_double(double x);

/* Scale a rational vector to a primitive integer vector (clears
   denominators, divides by gcd, fixes sign of nothing -- direction kept). */
RatVec primitive_ray(const RatVec& v);

bool is_zero_vec(const RatVec& v);

Rat dot(const RatVec& a, const RatVec& b);

std::string rat_to_string(const Rat& r);

}  // namespace qtop
