#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace grpd {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Exact coefficient domain: the integers, the rationals, or a prime field.
class Ring {
 public:
  enum class Kind { Integers, Rationals, PrimeField };

  Ring() = default;
  static Ring integers() { return Ring(Kind::Integers, 0); }
  static Ring rationals() { return Ring(Kind::Rationals, 0); }
  /// Throws std::invalid_argument unless p is prime.
  static Ring prime_field(std::int64_t p);
  /// Accepts "z", "q", "fp:<p>" and the shorthand "f<p>" (e.g. "f2").
  static Ring parse(const std::string& tag);

  Kind kind() const { return kind_; }
  std::int64_t characteristic() const { return p_; }
  bool is_field() const { return kind_ != Kind::Integers; }
  bool is_finite() const { return kind_ == Kind::PrimeField; }
  /// Canonical tag: "z", "q" or "fp:<p>".
  std::string tag() const;

  friend bool operator==(const Ring&, const Ring&) = default;

 private:
  Ring(Kind kind, std::int64_t p) : kind_(kind), p_(p) {}

  Kind kind_ = Kind::Rationals;
  std::int64_t p_ = 0;
};

class NotAUnit : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class RingMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Exact ring value tagged with its ring. Rationals are kept in lowest terms
/// with positive denominator; prime-field residues in [0, p).
class RingElement {
 public:
  RingElement() = default;
  RingElement(const Ring& ring, std::int64_t value);
  RingElement(const Ring& ring, const Rational& value);

  static RingElement zero(const Ring& ring) { return RingElement(ring, 0); }
  static RingElement one(const Ring& ring) { return RingElement(ring, 1); }
  /// Parses "a" or "a/b"; throws std::invalid_argument on malformed text or
  /// on a fraction that does not belong to the ring.
  static RingElement parse(const Ring& ring, const std::string& text);

  const Ring& ring() const { return ring_; }
  bool is_zero() const;
  bool is_one() const;
  /// Residue for prime fields; the rational value otherwise.
  Rational value() const;
  std::int64_t residue() const { return residue_; }

  RingElement operator+(const RingElement& o) const;
  RingElement operator-(const RingElement& o) const;
  RingElement operator*(const RingElement& o) const;
  RingElement operator-() const;
  RingElement& operator+=(const RingElement& o) { return *this = *this + o; }
  RingElement& operator-=(const RingElement& o) { return *this = *this - o; }
  RingElement& operator*=(const RingElement& o) { return *this = *this * o; }
  /// Division by a unit; throws NotAUnit otherwise.
  RingElement operator/(const RingElement& o) const;

  bool operator==(const RingElement& o) const;
  bool operator!=(const RingElement& o) const { return !(*this == o); }

  /// "3", "-1", "2/5".
  std::string to_string() const;

 private:
  void check_same(const RingElement& o) const;

  Ring ring_;
  std::int64_t residue_ = 0;
  Rational q_;
};

bool ring_is_unit(const RingElement& r);
/// Throws NotAUnit.
RingElement ring_unit_inverse(const RingElement& r);

}  // namespace grpd
