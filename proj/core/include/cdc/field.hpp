#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace cdc {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid arguments: non-prime characteristic, shape mismatch, odd distance, ...
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// A configured size limit (field order, enumeration count, code size) would be exceeded.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

inline constexpr std::uint64_t kBaseFieldCap = std::uint64_t{1} << 16;
inline constexpr std::uint64_t kExtensionFieldCap = std::uint64_t{1} << 32;

bool is_prime(std::uint64_t n);

/// Finite field F_Q built as B[x]/(f) over a smaller field B, or as Z/pZ.
///
/// Elements are `std::uint32_t` reprs in [0, Q). A repr packs the polynomial
/// basis coordinates over B as base-|B| digits, coordinate 0 least significant.
/// Because every tower bottoms out in F_p, a repr is also the base-p packing of
/// the coordinates over the prime field, so addition is digit-wise mod p.
///
/// `Field` is a cheap handle onto immutable shared state and may be shared
/// freely between threads.
class Field {
 public:
  using Repr = std::uint32_t;

  /// F_{p^e} with the lexicographically smallest monic irreducible modulus.
  static Field create(std::uint32_t p, std::uint32_t e, std::uint64_t cap = kBaseFieldCap);
  static Field prime(std::uint32_t p) { return create(p, 1); }

  /// F_{Q^m} as a degree-m extension of `*this`, again with the smallest
  /// monic irreducible modulus over this field.
  Field extend(std::uint32_t m, std::uint64_t cap = kExtensionFieldCap) const;

  /// Smallest field of the given prime power order, built over its prime field.
  static Field of_order(std::uint64_t q, std::uint64_t cap = kBaseFieldCap);

  std::uint32_t characteristic() const;
  /// Extension degree over the immediate base (1 for prime fields).
  std::uint32_t degree() const;
  std::uint64_t order() const;
  bool is_prime_field() const;
  /// Immediate base field; the prime field returns itself.
  Field base() const;
  /// Modulus coefficients over the base, lowest degree first, monic (size degree()+1).
  /// For prime fields this is the polynomial x.
  std::span<const Repr> modulus() const;

  Repr zero() const { return 0; }
  Repr one() const { return 1; }

  Repr add(Repr a, Repr b) const;
  Repr sub(Repr a, Repr b) const;
  Repr neg(Repr a) const;
  Repr mul(Repr a, Repr b) const;
  /// Throws ParameterError on zero.
  Repr inv(Repr a) const;
  Repr pow(Repr a, std::uint64_t exponent) const;

  /// Coordinates over base(), lowest first (length degree()).
  std::vector<Repr> coordinates(Repr a) const;
  Repr from_coordinates(std::span<const Repr> coords) const;

  bool contains(Repr a) const { return a < order(); }

  std::string name() const;

  friend bool operator==(const Field& a, const Field& b);
  friend bool is_irreducible(const Field& base, std::span<const Repr> poly);

  struct Impl;

 private:
  explicit Field(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

/// A field extension together with its coordinate map over the base field.
struct Extension {
  Field base;
  Field field;
  std::uint32_t degree;

  std::vector<Field::Repr> coordinates(Field::Repr a) const { return field.coordinates(a); }
  Field::Repr element(std::span<const Field::Repr> coords) const {
    return field.from_coordinates(coords);
  }
};

Extension extension_embed(const Field& base, std::uint32_t m,
                          std::uint64_t cap = kExtensionFieldCap);

/// Field element bound to its field. Mixing elements of different fields throws.
class FieldElement {
 public:
  FieldElement(Field field, Field::Repr repr);

  const Field& field() const { return field_; }
  Field::Repr repr() const { return repr_; }
  bool is_zero() const { return repr_ == 0; }

  FieldElement inv() const;

  friend FieldElement operator+(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator-(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator*(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator/(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator-(const FieldElement& a);
  friend bool operator==(const FieldElement& a, const FieldElement& b);

 private:
  Field field_;
  Field::Repr repr_;
};

/// Monic irreducibility over `base` by trial division with every monic
/// polynomial of degree <= deg/2. Coefficients lowest first.
bool is_irreducible(const Field& base, std::span<const Field::Repr> poly);

}  // namespace cdc
