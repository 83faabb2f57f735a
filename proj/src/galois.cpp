#include "clag/galois.hpp"

#include <map>
#include <mutex>
#include <sstream>

#include "clag/error.hpp"

namespace clag {

namespace {

using Poly = std::vector<std::uint32_t>;  // low degree first

std::vector<std::uint32_t> digits(std::uint64_t value, std::uint32_t p, std::uint32_t h) {
  std::vector<std::uint32_t> d(h, 0);
  for (std::uint32_t i = 0; i < h; ++i) {
    d[i] = static_cast<std::uint32_t>(value % p);
    value /= p;
  }
  return d;
}

std::uint32_t from_digits(const std::vector<std::uint32_t>& d, std::uint32_t p) {
  std::uint64_t v = 0;
  for (std::size_t i = d.size(); i-- > 0;) v = v * p + d[i];
  return static_cast<std::uint32_t>(v);
}

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
  // p is prime and small; Fermat.
  std::uint64_t result = 1, base = a % p;
  for (std::uint32_t e = p - 2; e; e >>= 1) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
  }
  return static_cast<std::uint32_t>(result);
}

// Remainder of a modulo the monic-or-not polynomial m over GF(p).
Poly poly_mod(Poly a, const Poly& m, std::uint32_t p) {
  trim(a);
  const std::size_t dm = m.size() - 1;
  const std::uint32_t lead_inv = inv_mod(m.back(), p);
  while (a.size() > dm) {
    const std::uint64_t factor = static_cast<std::uint64_t>(a.back()) * lead_inv % p;
    const std::size_t shift = a.size() - 1 - dm;
    for (std::size_t i = 0; i <= dm; ++i) {
      const std::uint64_t sub = factor * m[i] % p;
      a[i + shift] = static_cast<std::uint32_t>((a[i + shift] + p - sub) % p);
    }
    trim(a);
  }
  return a;
}

bool is_irreducible(const Poly& f, std::uint32_t p) {
  const std::uint32_t deg = static_cast<std::uint32_t>(f.size() - 1);
  for (std::uint32_t d = 1; d <= deg / 2; ++d) {
    std::uint64_t count = 1;
    for (std::uint32_t i = 0; i < d; ++i) count *= p;
    for (std::uint64_t c = 0; c < count; ++c) {
      Poly g = digits(c, p, d);
      g.push_back(1);
      if (poly_mod(f, g, p).empty()) return false;
    }
  }
  return true;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::pair<std::uint32_t, std::uint32_t> prime_power(std::uint64_t q) {
  if (q < 2) throw Error(ErrorCode::NotPrime, "order " + std::to_string(q) + " is not a prime power");
  std::uint64_t p = 2;
  while (q % p != 0) ++p;
  std::uint32_t h = 0;
  std::uint64_t rest = q;
  while (rest % p == 0) {
    rest /= p;
    ++h;
  }
  if (rest != 1) throw Error(ErrorCode::NotPrime, "order " + std::to_string(q) + " is not a prime power");
  return {static_cast<std::uint32_t>(p), h};
}

FiniteField FiniteField::make(std::uint32_t p, std::uint32_t h, std::uint32_t max_order) {
  if (!is_prime(p)) throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
  if (h < 1) throw Error(ErrorCode::DegreeOutOfRange, "extension degree must be >= 1");
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < h; ++i) {
    q *= p;
    if (q > max_order)
      throw Error(ErrorCode::DegreeOutOfRange,
                  std::to_string(p) + "^" + std::to_string(h) + " exceeds the order bound " +
                      std::to_string(max_order));
  }

  FiniteField f;
  f.p_ = p;
  f.h_ = h;
  f.q_ = static_cast<std::uint32_t>(q);

  if (h == 1) {
    f.modulus_ = {0, 1};
  } else {
    const std::uint64_t candidates = q;  // p^h choices of the lower coefficients
    for (std::uint64_t c = 0; c < candidates; ++c) {
      Poly m = digits(c, p, h);
      m.push_back(1);
      if (m[0] == 0) continue;  // divisible by x
      if (is_irreducible(m, p)) {
        f.modulus_ = m;
        break;
      }
    }
  }

  auto mul_poly = [&](Elem a, Elem b) -> Elem {
    if (h == 1) return static_cast<Elem>(static_cast<std::uint64_t>(a) * b % p);
    const auto da = digits(a, p, h), db = digits(b, p, h);
    Poly prod(2 * h - 1, 0);
    for (std::uint32_t i = 0; i < h; ++i)
      for (std::uint32_t j = 0; j < h; ++j)
        prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + static_cast<std::uint64_t>(da[i]) * db[j]) % p);
    Poly r = poly_mod(prod, f.modulus_, p);
    r.resize(h, 0);
    return from_digits(r, p);
  };

  // Primitive element: the smallest element of multiplicative order q-1.
  const std::uint32_t order = f.q_ - 1;
  f.exp_.assign(2 * static_cast<std::size_t>(order) + 1, 0);
  bool found = false;
  for (Elem g = (f.q_ == 2 ? 1 : 2); g < f.q_ && !found; ++g) {
    Elem x = 1;
    std::uint32_t i = 0;
    f.exp_[0] = 1;
    do {
      x = mul_poly(x, g);
      ++i;
      if (i < order) f.exp_[i] = x;
    } while (x != 1 && i <= order);
    if (i == order) {
      f.primitive_ = g;
      found = true;
    }
  }
  if (!found) throw Error(ErrorCode::InvalidInput, "no primitive element found");
  for (std::size_t i = order; i < f.exp_.size(); ++i) f.exp_[i] = f.exp_[i - order];
  f.log_.assign(f.q_, 0);
  for (std::uint32_t i = 0; i < order; ++i) f.log_[f.exp_[i]] = i;

  f.neg_.assign(f.q_, 0);
  for (Elem a = 0; a < f.q_; ++a) {
    auto d = digits(a, p, h);
    for (auto& c : d) c = (p - c) % p;
    f.neg_[a] = from_digits(d, p);
  }
  f.inv_.assign(f.q_, 0);
  for (Elem a = 1; a < f.q_; ++a) f.inv_[a] = f.exp_[(order - f.log_[a]) % order];

  if (f.q_ <= kDenseTableOrder) {
    const std::size_t qq = f.q_;
    f.add_table_.resize(qq * qq);
    f.mul_table_.resize(qq * qq);
    for (Elem a = 0; a < f.q_; ++a)
      for (Elem b = 0; b < f.q_; ++b) {
        f.add_table_[a * qq + b] = static_cast<std::uint16_t>(f.add_slow(a, b));
        f.mul_table_[a * qq + b] =
            static_cast<std::uint16_t>((a == 0 || b == 0) ? 0 : f.exp_[f.log_[a] + f.log_[b]]);
      }
  }

  if (f.q_ <= 16) f.verify_axioms();
  return f;
}

Elem FiniteField::add_slow(Elem a, Elem b) const {
  if (p_ == 2) return a ^ b;
  Elem result = 0, scale = 1;
  while (a || b) {
    result += ((a % p_ + b % p_) % p_) * scale;
    a /= p_;
    b /= p_;
    scale *= p_;
  }
  return result;
}

Elem FiniteField::add(Elem a, Elem b) const {
  if (!add_table_.empty()) return add_table_[static_cast<std::size_t>(a) * q_ + b];
  return add_slow(a, b);
}

Elem FiniteField::mul(Elem a, Elem b) const {
  if (!mul_table_.empty()) return mul_table_[static_cast<std::size_t>(a) * q_ + b];
  if (a == 0 || b == 0) return 0;
  return exp_[log_[a] + log_[b]];
}

Elem FiniteField::inv(Elem a) const {
  if (a == 0) throw Error(ErrorCode::DivisionByZero, "inverse of zero in " + describe());
  return inv_[a];
}

Elem FiniteField::pow(Elem a, std::uint64_t e) const {
  if (e == 0) return 1;
  if (a == 0) return 0;
  const std::uint64_t order = q_ - 1;
  return exp_[(static_cast<std::uint64_t>(log_[a]) * (e % order)) % order];
}

void FiniteField::verify_axioms() const {
  auto fail = [&](const std::string& what) {
    throw Error(ErrorCode::InvalidInput, describe() + " violates " + what);
  };
  for (Elem a = 0; a < q_; ++a) {
    if (add(a, 0) != a) fail("additive identity");
    if (mul(a, 1) != a) fail("multiplicative identity");
    if (add(a, neg(a)) != 0) fail("additive inverse");
    if (a != 0 && mul(a, inv(a)) != 1) fail("multiplicative inverse");
    for (Elem b = 0; b < q_; ++b) {
      if (add(a, b) != add(b, a)) fail("commutativity of +");
      if (mul(a, b) != mul(b, a)) fail("commutativity of *");
      for (Elem c = 0; c < q_; ++c) {
        if (add(add(a, b), c) != add(a, add(b, c))) fail("associativity of +");
        if (mul(mul(a, b), c) != mul(a, mul(b, c))) fail("associativity of *");
        if (mul(a, add(b, c)) != add(mul(a, b), mul(a, c))) fail("distributivity");
      }
    }
  }
}

std::string FiniteField::describe() const {
  std::ostringstream out;
  out << "GF(" << q_ << ")";
  if (h_ > 1) {
    out << " mod ";
    bool first = true;
    for (std::size_t i = modulus_.size(); i-- > 0;) {
      if (modulus_[i] == 0) continue;
      if (!first) out << " + ";
      first = false;
      if (modulus_[i] != 1 || i == 0) out << modulus_[i];
      if (i >= 1) out << "x";
      if (i > 1) out << "^" << i;
    }
  }
  return out.str();
}

std::shared_ptr<const FiniteField> field_of_order(std::uint32_t q) {
  static std::mutex mutex;
  static std::map<std::uint32_t, std::shared_ptr<const FiniteField>> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(q);
  if (it != cache.end()) return it->second;
  const auto [p, h] = prime_power(q);
  auto field = std::make_shared<const FiniteField>(FiniteField::make(p, h));
  cache.emplace(q, field);
  return field;
}

}  // namespace clag
