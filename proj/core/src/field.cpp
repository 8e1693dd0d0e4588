#include "icsheaf/field.hpp"

#include <charconv>
#include <stdexcept>

namespace icsheaf {

namespace {

bool is_prime(std::uint32_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

}  // namespace

Field Field::prime(std::uint32_t p) {
  if (p >= (1u << 31)) throw std::invalid_argument("prime field characteristic must be < 2^31");
  if (!is_prime(p)) throw std::invalid_argument("not a prime: " + std::to_string(p));
  return Field(p);
}

Field Field::parse(std::string_view text) {
  if (text == "q" || text == "Q") return rationals();
  if (text.substr(0, 3) == "fp:") {
    std::uint32_t p = 0;
    auto body = text.substr(3);
    auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), p);
    if (ec != std::errc() || ptr != body.data() + body.size()) {
      throw std::invalid_argument("bad field spec: " + std::string(text));
    }
    return prime(p);
  }
  throw std::invalid_argument("bad field spec (expected q or fp:<p>): " + std::string(text));
}

std::string Field::name() const { return p_ == 0 ? "q" : "fp:" + std::to_string(p_); }

std::int64_t Field::inv_mod(std::int64_t a) const {
  std::int64_t m = p_;
  std::int64_t g = m, x = 0, x1 = 1, r = a % m;
  if (r < 0) r += m;
  if (r == 0) throw std::domain_error("division by zero in " + name());
  // extended Euclid on (m, r)
  std::int64_t a0 = r;
  while (a0 != 0) {
    std::int64_t q = g / a0;
    std::int64_t t = g - q * a0;
    g = a0;
    a0 = t;
    t = x - q * x1;
    x = x1;
    x1 = t;
  }
  x %= m;
  if (x < 0) x += m;
  return x;
}

Rational Field::from_rational(const Rational& r) const {
  if (p_ == 0) return r;
  mpq_class q = r.to_mpq();
  mpz_class n = q.get_num() % p_;
  mpz_class d = q.get_den() % p_;
  if (d == 0) throw std::domain_error("denominator vanishes in " + name() + ": " + r.to_string());
  std::int64_t ni = n.get_si();
  if (ni < 0) ni += p_;
  std::int64_t v = (ni * inv_mod(d.get_si())) % p_;
  return Rational(v);
}

Rational Field::add(const Rational& a, const Rational& b) const {
  if (p_ == 0) return a + b;
  std::int64_t v = a.small_num() + b.small_num();
  if (v >= p_) v -= p_;
  return Rational(v);
}

Rational Field::sub(const Rational& a, const Rational& b) const {
  if (p_ == 0) return a - b;
  std::int64_t v = a.small_num() - b.small_num();
  if (v < 0) v += p_;
  return Rational(v);
}

Rational Field::mul(const Rational& a, const Rational& b) const {
  if (p_ == 0) return a * b;
  return Rational((a.small_num() * b.small_num()) % p_);
}

Rational Field::div(const Rational& a, const Rational& b) const {
  if (p_ == 0) return a / b;
  return Rational((a.small_num() * inv_mod(b.small_num())) % p_);
}

Rational Field::neg(const Rational& a) const {
  if (p_ == 0) return -a;
  return Rational(a.small_num() == 0 ? 0 : p_ - a.small_num());
}

Rational Field::inv(const Rational& a) const {
  if (p_ == 0) {
    if (a.is_zero()) throw std::domain_error("division by zero");
    return Rational(1) / a;
  }
  return Rational(inv_mod(a.small_num()));
}

Rational Field::sub_mul(const Rational& a, const Rational& c, const Rational& b) const {
  if (p_ == 0) return a - c * b;
  std::int64_t v = (a.small_num() - (c.small_num() * b.small_num()) % p_) % p_;
  if (v < 0) v += p_;
  return Rational(v);
}

}  // namespace icsheaf
