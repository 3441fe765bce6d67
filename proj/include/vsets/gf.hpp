#pragma once

// Arithmetic in F_q, q = p^r with p an odd prime.
//
// Elements are stored as a canonical code in [0, q): the coefficients
// c_0, ..., c_{r-1} of the polynomial-basis representation read as base-p
// digits, c_0 least significant. For r = 1 the code is the residue itself.
// Code order is the enumeration order of Field::elements().

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "vsets/error.hpp"

namespace vsets {

class Field;
class Element;

namespace detail {

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

inline std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

inline std::uint32_t reduce_signed(long long v, std::uint64_t p) {
  long long m = static_cast<long long>(p);
  long long r = v % m;
  if (r < 0) r += m;
  return static_cast<std::uint32_t>(r);
}

// Dense polynomials over F_p, little-endian, used only while building a field.
using Poly = std::vector<std::uint32_t>;

inline void trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

inline std::uint32_t inverse_mod(std::uint32_t x, std::uint64_t p) {
  // Fermat; p prime and x != 0.
  std::uint64_t result = 1, base = x % p, e = p - 2;
  while (e) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(result);
}

inline Poly poly_mod(Poly f, const Poly& g, std::uint64_t p) {
  trim(f);
  const std::size_t dg = g.size() - 1;
  const std::uint64_t lead_inv = inverse_mod(g.back(), p);
  while (f.size() >= g.size()) {
    const std::uint64_t factor = f.back() * lead_inv % p;
    const std::size_t shift = f.size() - g.size();
    for (std::size_t i = 0; i <= dg; ++i) {
      std::uint64_t sub = factor * g[i] % p;
      f[shift + i] = static_cast<std::uint32_t>((f[shift + i] + p - sub) % p);
    }
    trim(f);
  }
  return f;
}

// Trial division by every monic polynomial of degree 1..deg(f)/2.
inline bool is_irreducible(const Poly& f, std::uint64_t p) {
  const std::size_t deg = f.size() - 1;
  for (std::size_t d = 1; d <= deg / 2; ++d) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < d; ++i) count *= p;
    for (std::uint64_t code = 0; code < count; ++code) {
      Poly g(d + 1);
      std::uint64_t c = code;
      for (std::size_t i = 0; i < d; ++i) {
        g[i] = static_cast<std::uint32_t>(c % p);
        c /= p;
      }
      g[d] = 1;
      if (poly_mod(f, g, p).empty()) return false;
    }
  }
  return true;
}

struct FieldData : std::enable_shared_from_this<FieldData> {
  std::uint64_t p = 0;
  unsigned r = 1;
  std::uint64_t q = 0;
  Poly modulus;                            // degree r, monic; empty when r == 1
  std::vector<std::uint64_t> q1_primes;    // prime divisors of q - 1
  std::vector<std::uint32_t> exp_table;    // r > 1: powers of a primitive element
  std::vector<std::uint32_t> log_table;    // r > 1: discrete logs, index 0 unused

  bool same_as(const FieldData& other) const noexcept {
    return this == &other || (p == other.p && r == other.r && modulus == other.modulus);
  }

  std::uint32_t add(std::uint32_t x, std::uint32_t y) const noexcept {
    if (r == 1) {
      std::uint64_t s = std::uint64_t{x} + y;
      return static_cast<std::uint32_t>(s >= p ? s - p : s);
    }
    std::uint32_t out = 0, scale = 1;
    for (unsigned i = 0; i < r; ++i) {
      std::uint32_t d = (x % p + y % p) % p;
      out += d * scale;
      x /= static_cast<std::uint32_t>(p);
      y /= static_cast<std::uint32_t>(p);
      scale *= static_cast<std::uint32_t>(p);
    }
    return out;
  }

  std::uint32_t neg(std::uint32_t x) const noexcept {
    if (r == 1) return x == 0 ? 0 : static_cast<std::uint32_t>(p - x);
    std::uint32_t out = 0, scale = 1;
    for (unsigned i = 0; i < r; ++i) {
      std::uint32_t d = x % p;
      out += (d == 0 ? 0 : static_cast<std::uint32_t>(p - d)) * scale;
      x /= static_cast<std::uint32_t>(p);
      scale *= static_cast<std::uint32_t>(p);
    }
    return out;
  }

  std::uint32_t sub(std::uint32_t x, std::uint32_t y) const noexcept { return add(x, neg(y)); }

  std::uint32_t mul(std::uint32_t x, std::uint32_t y) const noexcept {
    if (r == 1) return static_cast<std::uint32_t>(std::uint64_t{x} * y % p);
    if (x == 0 || y == 0) return 0;
    std::uint64_t e = std::uint64_t{log_table[x]} + log_table[y];
    if (e >= q - 1) e -= q - 1;
    return exp_table[e];
  }

  std::vector<std::uint32_t> digits(std::uint32_t code) const {
    std::vector<std::uint32_t> out(r);
    for (unsigned i = 0; i < r; ++i) {
      out[i] = static_cast<std::uint32_t>(code % p);
      code = static_cast<std::uint32_t>(code / p);
    }
    return out;
  }

  std::uint32_t from_digits(const Poly& d) const {
    std::uint64_t code = 0, scale = 1;
    for (unsigned i = 0; i < r; ++i) {
      code += (i < d.size() ? d[i] : 0) * scale;
      scale *= p;
    }
    return static_cast<std::uint32_t>(code);
  }

  // Schoolbook product reduced by the modulus; only used to build the tables.
  std::uint32_t slow_mul(std::uint32_t x, std::uint32_t y) const {
    auto a = digits(x), b = digits(y);
    Poly prod(2 * r - 1, 0);
    for (unsigned i = 0; i < r; ++i)
      for (unsigned j = 0; j < r; ++j)
        prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + std::uint64_t{a[i]} * b[j]) % p);
    return from_digits(poly_mod(prod, modulus, p));
  }

  void build_tables() {
    const std::uint64_t n = q - 1;
    for (std::uint32_t g = 2; g < q; ++g) {
      auto slow_pow = [&](std::uint32_t base, std::uint64_t e) {
        std::uint32_t acc = 1;
        while (e) {
          if (e & 1) acc = slow_mul(acc, base);
          base = slow_mul(base, base);
          e >>= 1;
        }
        return acc;
      };
      bool primitive = true;
      for (auto l : q1_primes) {
        if (slow_pow(g, n / l) == 1) {
          primitive = false;
          break;
        }
      }
      if (!primitive) continue;
      exp_table.resize(n);
      log_table.assign(q, 0);
      std::uint32_t acc = 1;
      for (std::uint64_t k = 0; k < n; ++k) {
        exp_table[k] = acc;
        log_table[acc] = static_cast<std::uint32_t>(k);
        acc = slow_mul(acc, g);
      }
      return;
    }
  }
};

}  // namespace detail

/// A finite field element. Holds a non-owning pointer to its field's data, so
/// it must not outlive every Field handle that shares that data.
class Element {
 public:
  std::uint32_t code() const noexcept { return code_; }
  bool is_zero() const noexcept { return code_ == 0; }
  bool is_one() const noexcept { return code_ == 1; }

  inline Field field() const;

  /// Coefficients c_0..c_{r-1} in the polynomial basis.
  std::vector<std::uint32_t> coeffs() const { return data_->digits(code_); }

  Element operator+(const Element& o) const { return {data_, data_->add(code_, checked(o))}; }
  Element operator-(const Element& o) const { return {data_, data_->sub(code_, checked(o))}; }
  Element operator*(const Element& o) const { return {data_, data_->mul(code_, checked(o))}; }
  Element operator-() const { return {data_, data_->neg(code_)}; }
  Element operator/(const Element& o) const { return *this * o.inv(); }
  Element& operator+=(const Element& o) { return *this = *this + o; }
  Element& operator-=(const Element& o) { return *this = *this - o; }
  Element& operator*=(const Element& o) { return *this = *this * o; }
  Element& operator/=(const Element& o) { return *this = *this / o; }

  /// Square-and-multiply; pow(0) == 1 for every element including zero.
  Element pow(std::uint64_t e) const {
    Element acc{data_, 1};
    Element base = *this;
    while (e) {
      if (e & 1) acc *= base;
      base *= base;
      e >>= 1;
    }
    return acc;
  }

  /// x^(q-2): the inverse for x != 0 and 0 for x == 0. Never throws.
  Element pow_qm2() const { return pow(data_->q - 2); }

  Element inv() const {
    if (is_zero()) throw Error(ErrorCode::DivisionByZero, "zero has no inverse");
    if (data_->r == 1) return {data_, detail::inverse_mod(code_, data_->p)};
    auto l = data_->log_table[code_];
    return {data_, data_->exp_table[l == 0 ? 0 : data_->q - 1 - l]};
  }

  /// Multiplicative order; descends from q - 1 through its prime divisors.
  std::uint64_t order() const {
    if (is_zero()) throw Error(ErrorCode::ZeroHasNoOrder, "order of zero is undefined");
    std::uint64_t t = data_->q - 1;
    for (auto l : data_->q1_primes) {
      while (t % l == 0 && pow(t / l).is_one()) t /= l;
    }
    return t;
  }

  friend bool operator==(const Element& a, const Element& b) noexcept {
    return a.code_ == b.code_ && a.data_->same_as(*b.data_);
  }
  friend std::strong_ordering operator<=>(const Element& a, const Element& b) noexcept {
    return a.code_ <=> b.code_;
  }

  /// "7" for prime fields, "[c0,c1,...]" otherwise.
  std::string to_string() const {
    if (data_->r == 1) return std::to_string(code_);
    std::string s = "[";
    auto d = coeffs();
    for (std::size_t i = 0; i < d.size(); ++i) {
      if (i) s += ',';
      s += std::to_string(d[i]);
    }
    return s + "]";
  }

  friend std::ostream& operator<<(std::ostream& os, const Element& x) { return os << x.to_string(); }

 private:
  friend class Field;
  Element(const detail::FieldData* data, std::uint32_t code) : data_(data), code_(code) {}

  std::uint32_t checked(const Element& o) const {
    if (!data_->same_as(*o.data_)) throw Error(ErrorCode::MixedFields, "operands belong to different fields");
    return o.code_;
  }

  const detail::FieldData* data_;
  std::uint32_t code_;
};

inline Element pow_qm2(const Element& x) { return x.pow_qm2(); }
inline Element inv(const Element& x) { return x.inv(); }
inline Element div(const Element& x, const Element& y) { return x / y; }
inline std::uint64_t order(const Element& x) { return x.order(); }

/// Immutable, cheaply copyable handle to a field context.
class Field {
 public:
  /// `modulus`, when given for r > 1, lists c_0..c_r of a monic irreducible
  /// polynomial (c_r == 1). Without it the smallest monic irreducible in code
  /// order is used.
  explicit Field(std::uint64_t p, unsigned r = 1,
                 std::optional<std::vector<long long>> modulus = std::nullopt) {
    if (r == 0) throw Error(ErrorCode::InvalidModulus, "extension degree must be >= 1");
    if (!detail::is_prime(p)) throw Error(ErrorCode::NonPrimeCharacteristic, std::to_string(p) + " is not prime");
    if (p == 2) throw Error(ErrorCode::EvenCharacteristic, "characteristic 2 is not supported");
    long double qf = 1;
    for (unsigned i = 0; i < r; ++i) qf *= static_cast<long double>(p);
    if (qf < 5) throw Error(ErrorCode::FieldTooSmall, "q must be at least 5");
    if (r == 1 && qf > 4294967295.0L) throw Error(ErrorCode::FieldTooSmall, "prime fields are limited to p < 2^32");
    if (r > 1 && qf > static_cast<long double>(1u << 22))
      throw Error(ErrorCode::FieldTooSmall, "extension fields are limited to q <= 2^22");

    detail::Poly m;
    if (r > 1) {
      if (modulus) {
        if (modulus->size() != r + 1)
          throw Error(ErrorCode::InvalidModulus, "modulus must list r + 1 coefficients c_0..c_r");
        for (auto c : *modulus) m.push_back(detail::reduce_signed(c, p));
        if (m.back() != 1) throw Error(ErrorCode::InvalidModulus, "modulus must be monic");
        if (!detail::is_irreducible(m, p)) throw Error(ErrorCode::ReducibleModulus, "modulus is reducible over F_p");
      } else {
        m = smallest_irreducible(p, r);
      }
    } else if (modulus && !modulus->empty()) {
      throw Error(ErrorCode::InvalidModulus, "prime fields take no modulus");
    }

    // Contexts are interned for the life of the process.
    static std::mutex mu;
    static std::map<std::tuple<std::uint64_t, unsigned, detail::Poly>, std::shared_ptr<const detail::FieldData>> registry;
    std::lock_guard lock(mu);
    auto key = std::make_tuple(p, r, m);
    if (auto it = registry.find(key); it != registry.end()) {
      data_ = it->second;
      return;
    }

    auto d = std::make_shared<detail::FieldData>();
    d->p = p;
    d->r = r;
    d->q = static_cast<std::uint64_t>(qf);
    d->q1_primes = detail::prime_factors(d->q - 1);
    d->modulus = std::move(m);
    if (r > 1) d->build_tables();
    data_ = std::move(d);
    registry.emplace(std::move(key), data_);
  }

  std::uint64_t characteristic() const noexcept { return data_->p; }
  unsigned degree() const noexcept { return data_->r; }
  std::uint64_t size() const noexcept { return data_->q; }
  /// c_0..c_r of the modulus; empty for prime fields.
  const std::vector<std::uint32_t>& modulus() const noexcept { return data_->modulus; }

  Element zero() const { return {data_.get(), 0}; }
  Element one() const { return {data_.get(), 1}; }

  /// The image of an integer in the prime subfield; negatives are reduced.
  Element from_int(long long v) const { return {data_.get(), detail::reduce_signed(v, data_->p)}; }

  Element from_coeffs(std::span<const long long> coeffs) const {
    if (coeffs.size() > data_->r)
      throw Error(ErrorCode::ParseError, "element has more than r coefficients");
    detail::Poly digits;
    for (auto c : coeffs) digits.push_back(detail::reduce_signed(c, data_->p));
    return {data_.get(), data_->from_digits(digits)};
  }
  Element from_coeffs(std::initializer_list<long long> coeffs) const {
    return from_coeffs(std::span<const long long>(coeffs.begin(), coeffs.size()));
  }

  /// Element with the given code, 0 <= code < q.
  Element element(std::uint64_t code) const {
    if (code >= data_->q) throw Error(ErrorCode::ParseError, "element code out of range");
    return {data_.get(), static_cast<std::uint32_t>(code)};
  }

  std::vector<Element> elements() const {
    std::vector<Element> out;
    out.reserve(data_->q);
    for (std::uint64_t c = 0; c < data_->q; ++c) out.push_back({data_.get(), static_cast<std::uint32_t>(c)});
    return out;
  }

  friend bool operator==(const Field& a, const Field& b) noexcept { return a.data_->same_as(*b.data_); }

  /// "F_13" or "F_25[x]/(2,0,1)".
  std::string describe() const {
    std::string s = "F_" + std::to_string(data_->q);
    if (data_->r > 1) {
      s += "[x]/(";
      for (std::size_t i = 0; i < data_->modulus.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(data_->modulus[i]);
      }
      s += ")";
    }
    return s;
  }

 private:
  friend class Element;
  explicit Field(std::shared_ptr<const detail::FieldData> d) : data_(std::move(d)) {}

  static detail::Poly smallest_irreducible(std::uint64_t p, unsigned r) {
    std::uint64_t count = 1;
    for (unsigned i = 0; i < r; ++i) count *= p;
    for (std::uint64_t code = 0; code < count; ++code) {
      detail::Poly f(r + 1);
      std::uint64_t c = code;
      for (unsigned i = 0; i < r; ++i) {
        f[i] = static_cast<std::uint32_t>(c % p);
        c /= p;
      }
      f[r] = 1;
      if (f[0] != 0 && detail::is_irreducible(f, p)) return f;
    }
    throw Error(ErrorCode::ReducibleModulus, "no irreducible polynomial found");  // unreachable
  }

  std::shared_ptr<const detail::FieldData> data_;
};

inline Field Element::field() const { return Field(data_->shared_from_this()); }

}  // namespace vsets
