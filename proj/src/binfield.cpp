#include "gonality/binfield.hpp"

#include <array>
#include <bit>
#include <charconv>
#include <cstdio>

namespace gonality {

namespace {

constexpr std::array<std::uint32_t, 9> kModuli = {
    0,       //
    0x3,     // t + 1
    0x7,     // t^2 + t + 1
    0xB,     // t^3 + t + 1
    0x13,    // t^4 + t + 1
    0x25,    // t^5 + t^2 + 1
    0x43,    // t^6 + t + 1
    0x83,    // t^7 + t + 1
    0x11D,   // t^8 + t^4 + t^3 + t^2 + 1
};

int poly_degree(std::uint32_t p) { return p == 0 ? -1 : 31 - std::countl_zero(p); }

}  // namespace

std::uint32_t clmul(std::uint32_t a, std::uint32_t b) {
  std::uint32_t r = 0;
  while (b) {
    if (b & 1) r ^= a;
    a <<= 1;
    b >>= 1;
  }
  return r;
}

std::uint32_t poly_mod_f2(std::uint32_t a, std::uint32_t m) {
  const int dm = poly_degree(m);
  for (int d = poly_degree(a); d >= dm; d = poly_degree(a)) a ^= m << (d - dm);
  return a;
}

bool is_irreducible_f2(std::uint32_t poly) {
  const int d = poly_degree(poly);
  if (d < 1) return false;
  for (std::uint32_t q = 2; poly_degree(q) <= d / 2; ++q) {
    if (poly_mod_f2(poly, q) == 0) return false;
  }
  return true;
}

FieldDesc::FieldDesc(int k, std::uint32_t modulus) : k_(k), modulus_(modulus) {
  if (!is_irreducible_f2(modulus) || poly_degree(modulus) != k)
    throw std::logic_error("reducible field modulus");
  const std::uint32_t q = size();
  table_.resize(static_cast<std::size_t>(q) * q);
  for (std::uint32_t a = 0; a < q; ++a)
    for (std::uint32_t b = 0; b < q; ++b)
      table_[(a << k) | b] = static_cast<std::uint8_t>(poly_mod_f2(clmul(a, b), modulus));
}

const FieldDesc& FieldDesc::get(int k) {
  static const std::array<FieldDesc, 8> fields = {
      FieldDesc(1, kModuli[1]), FieldDesc(2, kModuli[2]), FieldDesc(3, kModuli[3]),
      FieldDesc(4, kModuli[4]), FieldDesc(5, kModuli[5]), FieldDesc(6, kModuli[6]),
      FieldDesc(7, kModuli[7]), FieldDesc(8, kModuli[8])};
  if (k < 1 || k > 8) throw std::out_of_range("extension degree must be in 1..8");
  return fields[k - 1];
}

std::uint8_t FieldDesc::pow(std::uint8_t a, std::uint32_t e) const {
  std::uint8_t result = 1;
  std::uint8_t base = a;
  while (e) {
    if (e & 1) result = mul(result, base);
    base = mul(base, base);
    e >>= 1;
  }
  return result;
}

std::string FieldDesc::tag() const { return "F" + std::to_string(size()); }

FieldElem::FieldElem(const FieldDesc& field, std::uint32_t bits)
    : field_(&field), bits_(static_cast<std::uint8_t>(bits)) {
  if (bits >= field.size()) throw std::invalid_argument("field element out of range");
}

void FieldElem::check_same(const FieldElem& o) const {
  if (field_ != o.field_) throw FieldMismatch("field mismatch");
}

FieldElem FieldElem::operator+(const FieldElem& o) const {
  check_same(o);
  return {*field_, static_cast<std::uint32_t>(bits_ ^ o.bits_)};
}

FieldElem FieldElem::operator*(const FieldElem& o) const {
  check_same(o);
  return {*field_, field_->mul(bits_, o.bits_)};
}

FieldElem FieldElem::inv() const {
  if (bits_ == 0) throw std::domain_error("inverse of zero");
  return pow(field_->size() - 2);
}

std::string FieldElem::to_string() const {
  char buf[8];
  std::snprintf(buf, sizeof buf, "%02x", bits_);
  return field_->tag() + ":" + buf;
}

FieldElem FieldElem::parse(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos || text.size() < 3 || text[0] != 'F')
    throw std::invalid_argument("bad field element: " + std::string(text));
  unsigned size = 0;
  unsigned bits = 0;
  auto r1 = std::from_chars(text.data() + 1, text.data() + colon, size);
  auto r2 = std::from_chars(text.data() + colon + 1, text.data() + text.size(), bits, 16);
  if (r1.ec != std::errc{} || r2.ec != std::errc{} || r2.ptr != text.data() + text.size() ||
      !std::has_single_bit(size) || size < 2)
    throw std::invalid_argument("bad field element: " + std::string(text));
  return {FieldDesc::get(std::countr_zero(size)), bits};
}

FieldElem add(const FieldElem& a, const FieldElem& b) { return a + b; }
FieldElem mul(const FieldElem& a, const FieldElem& b) { return a * b; }
FieldElem inv(const FieldElem& a) { return a.inv(); }
FieldElem frobenius(const FieldElem& a) { return a.frobenius(); }

}  // namespace gonality
