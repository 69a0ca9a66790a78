#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace gonality {

/// Description of F_{2^k} as F_2[t]/(modulus) for 1 <= k <= 8.
///
/// The moduli are fixed so that coordinates written in terms of the
/// generator t are reproducible:
///
///   k=1  t + 1
///   k=2  t^2 + t + 1
///   k=3  t^3 + t + 1
///   k=4  t^4 + t + 1
///   k=5  t^5 + t^2 + 1
///   k=6  t^6 + t + 1
///   k=7  t^7 + t + 1
///   k=8  t^8 + t^4 + t^3 + t^2 + 1
class FieldDesc {
 public:
  /// Shared descriptor for F_{2^k}; throws std::out_of_range outside 1..8.
  static const FieldDesc& get(int k);

  int degree() const { return k_; }
  std::uint32_t modulus() const { return modulus_; }
  std::uint32_t size() const { return 1u << k_; }

  std::uint8_t mul(std::uint8_t a, std::uint8_t b) const {
    return table_[(static_cast<std::size_t>(a) << k_) | b];
  }
  std::uint8_t square(std::uint8_t a) const { return mul(a, a); }
  std::uint8_t pow(std::uint8_t a, std::uint32_t e) const;

  /// Field tag used in serialized elements, e.g. "F16".
  std::string tag() const;

 private:
  FieldDesc(int k, std::uint32_t modulus);

  int k_;
  std::uint32_t modulus_;
  std::vector<std::uint8_t> table_;
};

/// True iff `poly` (bit i = coefficient of t^i) is irreducible over F_2.
/// Trial division by every polynomial of degree 1..deg/2.
bool is_irreducible_f2(std::uint32_t poly);

/// Carry-less product of two bit-packed F_2[t] polynomials.
std::uint32_t clmul(std::uint32_t a, std::uint32_t b);

/// Remainder of a modulo m in F_2[t].
std::uint32_t poly_mod_f2(std::uint32_t a, std::uint32_t m);

class FieldMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Element of F_{2^k} in the power basis 1, t, ..., t^{k-1}.
class FieldElem {
 public:
  FieldElem(const FieldDesc& field, std::uint32_t bits);

  static FieldElem zero(const FieldDesc& f) { return {f, 0}; }
  static FieldElem one(const FieldDesc& f) { return {f, 1}; }
  /// The generator t (equal to 1 when k = 1).
  static FieldElem gen(const FieldDesc& f) { return {f, f.degree() == 1 ? 1u : 2u}; }

  std::uint8_t bits() const { return bits_; }
  const FieldDesc& field() const { return *field_; }
  bool is_zero() const { return bits_ == 0; }

  FieldElem operator+(const FieldElem& o) const;
  FieldElem operator*(const FieldElem& o) const;
  FieldElem& operator+=(const FieldElem& o) { return *this = *this + o; }
  FieldElem& operator*=(const FieldElem& o) { return *this = *this * o; }

  FieldElem pow(std::uint32_t e) const { return {*field_, field_->pow(bits_, e)}; }
  /// Multiplicative inverse a^(2^k - 2); throws std::domain_error on zero.
  FieldElem inv() const;
  /// a -> a^2.
  FieldElem frobenius() const { return {*field_, field_->square(bits_)}; }

  bool operator==(const FieldElem& o) const {
    return field_ == o.field_ && bits_ == o.bits_;
  }

  /// "F16:0b" style rendering.
  std::string to_string() const;
  static FieldElem parse(std::string_view text);

 private:
  void check_same(const FieldElem& o) const;

  const FieldDesc* field_;
  std::uint8_t bits_;
};

FieldElem add(const FieldElem& a, const FieldElem& b);
FieldElem mul(const FieldElem& a, const FieldElem& b);
FieldElem inv(const FieldElem& a);
FieldElem frobenius(const FieldElem& a);

}  // namespace gonality
