#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "icsheaf/rational.hpp"

namespace icsheaf {

// Coefficient field: Q, or F_p with p < 2^31. F_p elements are stored as
// Rationals holding a canonical integer representative in [0, p).
class Field {
 public:
  static Field rationals() { return Field(0); }
  static Field prime(std::uint32_t p);
  // "q" or "fp:<p>".
  static Field parse(std::string_view text);

  bool is_rational() const { return p_ == 0; }
  std::uint32_t characteristic() const { return p_; }
  std::string name() const;

  // Image of an arbitrary rational in this field. Throws if the
  // denominator vanishes mod p.
  Rational from_rational(const Rational& r) const;

  Rational add(const Rational& a, const Rational& b) const;
  Rational sub(const Rational& a, const Rational& b) const;
  Rational mul(const Rational& a, const Rational& b) const;
  Rational div(const Rational& a, const Rational& b) const;
  Rational neg(const Rational& a) const;
  Rational inv(const Rational& a) const;
  // a - c*b, the workhorse of elimination.
  Rational sub_mul(const Rational& a, const Rational& c, const Rational& b) const;

  friend bool operator==(const Field& a, const Field& b) { return a.p_ == b.p_; }
  friend bool operator!=(const Field& a, const Field& b) { return a.p_ != b.p_; }

 private:
  explicit Field(std::uint32_t p) : p_(p) {}
  std::int64_t inv_mod(std::int64_t a) const;

  std::uint32_t p_;
};

}  // namespace icsheaf
