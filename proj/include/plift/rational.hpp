#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace plift {

// Exact rational. mpq_class keeps values in lowest terms with a positive
// denominator as long as every construction path goes through canonicalize().
using Rat = mpq_class;
using Int = mpz_class;

// Accepts "p", "-p", "p/q", "+p/q" with arbitrary-size integers.
Rat parse_rat(std::string_view text);

// "p" when the denominator is 1, "p/q" otherwise.
std::string to_string(const Rat& r);

inline Rat rat(std::int64_t num, std::int64_t den = 1) {
  Rat r(Int(static_cast<long>(num)), Int(static_cast<long>(den)));
  r.canonicalize();
  return r;
}

inline Rat abs_rat(const Rat& r) { return r < 0 ? Rat(-r) : r; }

inline bool is_integer(const Rat& r) { return r.get_den() == 1; }

}  // namespace plift
