#ifndef DENDRO_RATIONAL_HPP
#define DENDRO_RATIONAL_HPP

#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "dendro/error.hpp"

namespace dendro {

using Rat = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Exact "p/q" wire format, q > 0 after normalization. Integers are written
// with an explicit denominator ("3/1", "0/1").
inline std::string rat_to_string(const Rat& r) {
  return numerator(r).str() + "/" + denominator(r).str();
}

inline Rat rat_from_string(const std::string& text) {
  auto slash = text.find('/');
  if (slash == std::string::npos || slash == 0 || slash + 1 == text.size()) {
    throw Error(ErrorKind::ParseError, "rational must be written as \"p/q\": " + text);
  }
  BigInt num, den;
  try {
    num = BigInt(text.substr(0, slash));
    den = BigInt(text.substr(slash + 1));
  } catch (const std::exception&) {
    throw Error(ErrorKind::ParseError, "bad rational literal: " + text);
  }
  if (den <= 0) {
    throw Error(ErrorKind::ParseError, "rational denominator must be positive: " + text);
  }
  return Rat(num, den);
}

inline double rat_to_double(const Rat& r) { return static_cast<double>(r); }

}  // namespace dendro

#endif
