#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace clag {

/// Field elements are dense integers 0..q-1. The integer c_0 + c_1 p + ... +
/// c_{h-1} p^{h-1} encodes the polynomial c_0 + c_1 t + ... over GF(p) modulo
/// the field's defining polynomial. 0 and 1 are the additive and
/// multiplicative identities.
using Elem = std::uint32_t;

inline constexpr std::uint32_t kDefaultMaxOrder = 1u << 16;

/// Arithmetic in GF(p^h). Immutable after construction.
///
/// For h > 1 the defining polynomial is the least monic irreducible of degree
/// h, where polynomials x^h + c_{h-1} x^{h-1} + ... + c_0 are ordered by the
/// integer c_0 + c_1 p + ... + c_{h-1} p^{h-1}. Encodings are therefore stable
/// across runs and machines.
class FiniteField {
 public:
  static FiniteField make(std::uint32_t p, std::uint32_t h,
                          std::uint32_t max_order = kDefaultMaxOrder);

  std::uint32_t p() const noexcept { return p_; }
  std::uint32_t h() const noexcept { return h_; }
  std::uint32_t q() const noexcept { return q_; }

  /// Coefficients c_0..c_h of the defining polynomial (c_h = 1).
  const std::vector<std::uint32_t>& modulus() const noexcept { return modulus_; }

  Elem add(Elem a, Elem b) const;
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
  Elem neg(Elem a) const { return neg_[a]; }
  Elem mul(Elem a, Elem b) const;
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::uint64_t e) const;

  /// A generator of the multiplicative group.
  Elem primitive() const noexcept { return primitive_; }

  /// Exhaustive check of the field axioms; throws on the first violation.
  void verify_axioms() const;

  std::string describe() const;

 private:
  FiniteField() = default;

  Elem add_slow(Elem a, Elem b) const;

  std::uint32_t p_ = 0;
  std::uint32_t h_ = 0;
  std::uint32_t q_ = 0;
  std::vector<std::uint32_t> modulus_;
  Elem primitive_ = 1;
  std::vector<Elem> neg_;
  std::vector<Elem> inv_;
  std::vector<Elem> exp_;  // exp_[i] = primitive^i, length 2(q-1)
  std::vector<std::uint32_t> log_;
  std::vector<std::uint16_t> add_table_;  // dense when q <= kDenseTableOrder
  std::vector<std::uint16_t> mul_table_;

  static constexpr std::uint32_t kDenseTableOrder = 256;
};

bool is_prime(std::uint64_t n);

/// Splits q into (p, h) with q = p^h, or throws NotPrime.
std::pair<std::uint32_t, std::uint32_t> prime_power(std::uint64_t q);

/// Shared field of order q; repeated calls return the same instance.
std::shared_ptr<const FiniteField> field_of_order(std::uint32_t q);

}  // namespace clag
