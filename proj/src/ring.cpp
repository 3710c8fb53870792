#include "grpd/ring.hpp"

#include <cctype>

namespace grpd {

namespace {

bool is_prime(std::int64_t p) {
  if (p < 2) return false;
  for (std::int64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

std::int64_t mod(std::int64_t a, std::int64_t p) { return ((a % p) + p) % p; }

std::int64_t mod_pow(std::int64_t b, std::int64_t e, std::int64_t p) {
  __int128 r = 1, x = mod(b, p);
  while (e > 0) {
    if (e & 1) r = (r * x) % p;
    x = (x * x) % p;
    e >>= 1;
  }
  return static_cast<std::int64_t>(r);
}

std::int64_t residue_of(const BigInt& v, std::int64_t p) {
  BigInt r = v % p;
  if (r < 0) r += p;
  return r.convert_to<std::int64_t>();
}

bool parse_integer(const std::string& s, BigInt& out) {
  std::size_t i = 0;
  if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
  if (i == s.size()) return false;
  for (std::size_t j = i; j < s.size(); ++j)
    if (!std::isdigit(static_cast<unsigned char>(s[j]))) return false;
  out = BigInt(s[0] == '+' ? s.substr(1) : s);
  return true;
}

}  // namespace

Ring Ring::prime_field(std::int64_t p) {
  if (!is_prime(p)) throw std::invalid_argument("F_p needs a prime p, got " + std::to_string(p));
  if (p > (std::int64_t{1} << 31)) throw std::invalid_argument("prime too large for F_p");
  return Ring(Kind::PrimeField, p);
}

Ring Ring::parse(const std::string& tag) {
  if (tag == "z" || tag == "Z") return integers();
  if (tag == "q" || tag == "Q") return rationals();
  std::string digits;
  if (tag.rfind("fp:", 0) == 0) digits = tag.substr(3);
  else if (tag.size() > 1 && (tag[0] == 'f' || tag[0] == 'F')) digits = tag.substr(1);
  BigInt p;
  if (!digits.empty() && parse_integer(digits, p) && p > 0 && p < BigInt(1) << 40)
    return prime_field(p.convert_to<std::int64_t>());
  throw std::invalid_argument("unknown ring '" + tag + "' (expected z, q or fp:<prime>)");
}

std::string Ring::tag() const {
  switch (kind_) {
    case Kind::Integers: return "z";
    case Kind::Rationals: return "q";
    case Kind::PrimeField: return "fp:" + std::to_string(p_);
  }
  return "?";
}

RingElement::RingElement(const Ring& ring, std::int64_t value) : ring_(ring) {
  if (ring.is_finite()) residue_ = mod(value, ring.characteristic());
  else q_ = value;
}

RingElement::RingElement(const Ring& ring, const Rational& value) : ring_(ring) {
  if (ring.kind() == Ring::Kind::Integers && denominator(value) != 1)
    throw std::invalid_argument("non-integral value in Z");
  if (ring.is_finite()) {
    const auto p = ring.characteristic();
    const auto den = residue_of(denominator(value), p);
    if (den == 0) throw std::invalid_argument("denominator divisible by the characteristic");
    residue_ = mod(static_cast<std::int64_t>(
                       (static_cast<__int128>(residue_of(numerator(value), p)) *
                        mod_pow(den, p - 2, p)) % p),
                   p);
  } else {
    q_ = value;
  }
}

RingElement RingElement::parse(const Ring& ring, const std::string& text) {
  auto slash = text.find('/');
  BigInt num, den = 1;
  const bool ok = slash == std::string::npos
                      ? parse_integer(text, num)
                      : parse_integer(text.substr(0, slash), num) &&
                            parse_integer(text.substr(slash + 1), den);
  if (!ok || den == 0) throw std::invalid_argument("malformed coefficient '" + text + "'");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  return RingElement(ring, Rational(num, den));
}

bool RingElement::is_zero() const { return ring_.is_finite() ? residue_ == 0 : q_ == 0; }
bool RingElement::is_one() const { return ring_.is_finite() ? residue_ == 1 : q_ == 1; }

Rational RingElement::value() const { return ring_.is_finite() ? Rational(residue_) : q_; }

void RingElement::check_same(const RingElement& o) const {
  if (!(ring_ == o.ring_))
    throw RingMismatch("ring mismatch: " + ring_.tag() + " vs " + o.ring_.tag());
}

RingElement RingElement::operator+(const RingElement& o) const {
  check_same(o);
  RingElement r(ring_, 0);
  if (ring_.is_finite()) r.residue_ = (residue_ + o.residue_) % ring_.characteristic();
  else r.q_ = q_ + o.q_;
  return r;
}

RingElement RingElement::operator-(const RingElement& o) const {
  check_same(o);
  RingElement r(ring_, 0);
  const auto p = ring_.characteristic();
  if (ring_.is_finite()) r.residue_ = (residue_ - o.residue_ + p) % p;
  else r.q_ = q_ - o.q_;
  return r;
}

RingElement RingElement::operator*(const RingElement& o) const {
  check_same(o);
  RingElement r(ring_, 0);
  if (ring_.is_finite())
    r.residue_ = static_cast<std::int64_t>(static_cast<__int128>(residue_) * o.residue_ %
                                           ring_.characteristic());
  else r.q_ = q_ * o.q_;
  return r;
}

RingElement RingElement::operator-() const {
  RingElement r(ring_, 0);
  if (ring_.is_finite()) r.residue_ = (ring_.characteristic() - residue_) % ring_.characteristic();
  else r.q_ = -q_;
  return r;
}

RingElement RingElement::operator/(const RingElement& o) const {
  check_same(o);
  if (!ring_is_unit(o)) throw NotAUnit("division by a non-unit");
  return *this * ring_unit_inverse(o);
}

bool RingElement::operator==(const RingElement& o) const {
  if (!(ring_ == o.ring_)) return false;
  return ring_.is_finite() ? residue_ == o.residue_ : q_ == o.q_;
}

std::string RingElement::to_string() const {
  if (ring_.is_finite()) return std::to_string(residue_);
  if (denominator(q_) == 1) return numerator(q_).str();
  return numerator(q_).str() + "/" + denominator(q_).str();
}

bool ring_is_unit(const RingElement& r) {
  switch (r.ring().kind()) {
    case Ring::Kind::Integers: return r.value() == 1 || r.value() == -1;
    case Ring::Kind::Rationals:
    case Ring::Kind::PrimeField: return !r.is_zero();
  }
  return false;
}

RingElement ring_unit_inverse(const RingElement& r) {
  if (!ring_is_unit(r)) throw NotAUnit(r.to_string() + " is not a unit in " + r.ring().tag());
  if (r.ring().is_finite()) {
    const auto p = r.ring().characteristic();
    return RingElement(r.ring(), mod_pow(r.residue(), p - 2, p));
  }
  return RingElement(r.ring(), Rational(1) / r.value());
}

}  // namespace grpd
