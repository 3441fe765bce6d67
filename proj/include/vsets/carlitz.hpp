#pragma once

// Carlitz chains P_n(c_0, ..., c_n; x) = (...((c_0 x)^{q-2} + c_1)^{q-2} ... + c_n)^{q-2},
// their alpha/beta recursion, pole sets, and the reconstruction of a chain
// from a linear map g(x) = ax + b together with its ordered pole set.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "vsets/error.hpp"
#include "vsets/gf.hpp"

namespace vsets {

/// g(x) = ax + b with a, b both nonzero.
class LinearMap {
 public:
  LinearMap(Element a, Element b) : a_(a), b_(b) {
    if (a_.is_zero() || b_.is_zero()) throw Error(ErrorCode::ZeroCoefficient, "g(x) = ax + b needs a != 0 and b != 0");
    (void)(a_ + b_);  // same-field check
  }

  const Element& a() const noexcept { return a_; }
  const Element& b() const noexcept { return b_; }
  Element operator()(const Element& x) const { return a_ * x + b_; }
  /// The root -b/a, which is where the last pole must sit.
  Element root() const { return -b_ / a_; }

  friend bool operator==(const LinearMap&, const LinearMap&) = default;

 private:
  Element a_;
  Element b_;
};

/// Ordered, pairwise distinct x_1, ..., x_n with x_1 = 0 and n >= 2.
class PoleSet {
 public:
  explicit PoleSet(std::vector<Element> x) : x_(std::move(x)) {
    if (x_.size() < 2) throw Error(ErrorCode::InvalidN, "a pole set needs at least two points");
    if (!x_.front().is_zero()) throw Error(ErrorCode::PoleAnchorMismatch, "x_1 must be 0");
    std::vector<std::uint32_t> codes;
    for (const auto& e : x_) {
      (void)(e + x_.front());  // same-field check
      codes.push_back(e.code());
    }
    std::sort(codes.begin(), codes.end());
    if (std::adjacent_find(codes.begin(), codes.end()) != codes.end())
      throw Error(ErrorCode::DuplicatePoles, "poles must be pairwise distinct");
  }

  std::size_t size() const noexcept { return x_.size(); }
  /// 1-based, matching x_1..x_n.
  const Element& at(std::size_t i) const { return x_.at(i - 1); }
  const Element& last() const noexcept { return x_.back(); }
  const std::vector<Element>& values() const noexcept { return x_; }
  bool contains(const Element& e) const { return std::find(x_.begin(), x_.end(), e) != x_.end(); }

  friend bool operator==(const PoleSet&, const PoleSet&) = default;

 private:
  std::vector<Element> x_;
};

/// Constants c_0..c_n (n >= 2), all nonzero.
class CarlitzChain {
 public:
  explicit CarlitzChain(std::vector<Element> c) : c_(std::move(c)) {
    if (c_.size() < 3) throw Error(ErrorCode::ChainTooShort, "a chain needs c_0..c_n with n >= 2");
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (c_[i].is_zero()) throw Error(ErrorCode::ZeroConstant, "c_i must be nonzero (c_" + std::to_string(i) + " = 0)");
      (void)(c_[0] + c_[i]);
    }
  }

  Field field() const { return c_.front().field(); }
  /// The chain length n: constants are c_0..c_n.
  std::size_t n() const noexcept { return c_.size() - 1; }
  const Element& operator[](std::size_t i) const { return c_.at(i); }
  const std::vector<Element>& constants() const noexcept { return c_; }

  friend bool operator==(const CarlitzChain&, const CarlitzChain&) = default;

 private:
  std::vector<Element> c_;
};

/// alpha_0..alpha_{n+1} and beta_0..beta_{n+1}.
struct RecursionTable {
  std::vector<Element> alpha;
  std::vector<Element> beta;
};

/// t_0 = c_0 * delta, t_i = t_{i-1}^{q-2} + c_i, result t_n^{q-2}.
inline Element eval_chain(const CarlitzChain& chain, const Element& delta) {
  const auto& c = chain.constants();
  Element t = c[0] * delta;
  for (std::size_t i = 1; i < c.size(); ++i) t = t.pow_qm2() + c[i];
  return t.pow_qm2();
}

/// The chain's values at every element, indexed by element code.
inline std::vector<Element> chain_table(const CarlitzChain& chain) {
  std::vector<Element> out;
  for (const auto& d : chain.field().elements()) out.push_back(eval_chain(chain, d));
  return out;
}

inline RecursionTable recursion_table(const CarlitzChain& chain) {
  const auto& c = chain.constants();
  const Field f = chain.field();
  RecursionTable t;
  t.alpha = {f.zero(), c[0]};
  t.beta = {f.one(), f.zero()};
  for (std::size_t k = 2; k <= chain.n() + 1; ++k) {
    t.alpha.push_back(c[k - 1] * t.alpha[k - 1] + t.alpha[k - 2]);
    t.beta.push_back(c[k - 1] * t.beta[k - 1] + t.beta[k - 2]);
  }
  return t;
}

struct ChainValidity {
  bool alpha_last_zero = false;  // alpha_{n+1} == 0
  bool alphas_nonzero = false;   // alpha_k != 0 for 1 <= k <= n
  bool poles_distinct = false;   // the n values -beta_i/alpha_i are distinct

  bool valid() const noexcept { return alpha_last_zero && alphas_nonzero && poles_distinct; }
};

inline ChainValidity validate_chain(const CarlitzChain& chain) {
  const auto t = recursion_table(chain);
  const std::size_t n = chain.n();
  ChainValidity v;
  v.alpha_last_zero = t.alpha[n + 1].is_zero();
  v.alphas_nonzero = true;
  for (std::size_t k = 1; k <= n; ++k) v.alphas_nonzero = v.alphas_nonzero && !t.alpha[k].is_zero();
  if (v.alphas_nonzero) {
    std::vector<std::uint32_t> codes;
    for (std::size_t i = 1; i <= n; ++i) codes.push_back((-t.beta[i] / t.alpha[i]).code());
    std::sort(codes.begin(), codes.end());
    v.poles_distinct = std::adjacent_find(codes.begin(), codes.end()) == codes.end();
  }
  return v;
}

/// x_i = -beta_i / alpha_i for i = 1..n.
inline PoleSet poles(const CarlitzChain& chain) {
  const auto t = recursion_table(chain);
  std::vector<Element> x;
  for (std::size_t i = 1; i <= chain.n(); ++i) {
    if (t.alpha[i].is_zero()) throw Error(ErrorCode::ZeroAlpha, "alpha_" + std::to_string(i) + " = 0");
    x.push_back(-t.beta[i] / t.alpha[i]);
  }
  return PoleSet(std::move(x));
}

/// a = alpha_n / beta_{n+1}, b = beta_n / beta_{n+1}.
inline LinearMap linear_part(const CarlitzChain& chain) {
  const auto t = recursion_table(chain);
  const std::size_t n = chain.n();
  if (t.beta[n + 1].is_zero()) throw Error(ErrorCode::ZeroBetaLast, "beta_{n+1} = 0");
  return LinearMap(t.alpha[n] / t.beta[n + 1], t.beta[n] / t.beta[n + 1]);
}

/// coeff * epsilon for a symbolic unit epsilon.
class EpsilonScalar {
 public:
  explicit EpsilonScalar(Element coeff) : coeff_(coeff) {}

  const Element& coeff() const noexcept { return coeff_; }
  Element at(const Element& epsilon) const { return coeff_ * epsilon; }

  EpsilonScalar operator+(const EpsilonScalar& o) const { return EpsilonScalar(coeff_ + o.coeff_); }
  EpsilonScalar operator-(const EpsilonScalar& o) const { return EpsilonScalar(coeff_ - o.coeff_); }
  friend EpsilonScalar operator*(const Element& s, const EpsilonScalar& e) { return EpsilonScalar(s * e.coeff_); }

  /// epsilon cancels in a ratio.
  Element operator/(const EpsilonScalar& o) const {
    if (o.coeff_.is_zero()) throw Error(ErrorCode::DegenerateDenominator, "zero denominator in epsilon ratio");
    return coeff_ / o.coeff_;
  }

  friend bool operator==(const EpsilonScalar&, const EpsilonScalar&) = default;

 private:
  Element coeff_;
};

/// Intermediate values of decompose(), in the order they are produced.
struct DecompositionTrace {
  std::vector<std::pair<std::size_t, Element>> upper;  // (i, c_i) for i = n down to 3
  Element epsilon;
  Element c2;
  Element c1;
  Element c0;
  // alpha_i, beta_i for i = 2..n+1 as multiples of epsilon; index 0 is i = 2.
  std::vector<EpsilonScalar> alpha_eps;
  std::vector<EpsilonScalar> beta_eps;
};

struct Decomposition {
  CarlitzChain chain;
  DecompositionTrace trace;
};

/// Reconstructs the chain whose permutation modifies `g` at `poles`.
inline Decomposition decompose_traced(const LinearMap& g, const PoleSet& x) {
  const std::size_t n = x.size();
  if (x.last() != g.root())
    throw Error(ErrorCode::InvalidPoleSet, "x_n = " + x.last().to_string() + " but -b/a = " + g.root().to_string());
  const Field f = g.a().field();
  (void)(g.a() + x.last());

  // Indices 0..n+1; entries below 2 stay unset.
  std::vector<std::optional<EpsilonScalar>> alpha(n + 2), beta(n + 2);
  alpha[n + 1] = EpsilonScalar(f.zero());
  beta[n + 1] = EpsilonScalar(f.one());
  alpha[n] = EpsilonScalar(g.a());
  beta[n] = EpsilonScalar(g.b());

  std::vector<Element> c(n + 1, f.zero());
  std::vector<std::pair<std::size_t, Element>> upper;
  for (std::size_t i = n; i >= 3; --i) {
    const Element& xp = x.at(i - 1);
    c[i] = (*beta[i + 1] + xp * *alpha[i + 1]) / (*beta[i] + xp * *alpha[i]);
    if (c[i].is_zero()) throw Error(ErrorCode::DegenerateDenominator, "c_" + std::to_string(i) + " = 0");
    upper.emplace_back(i, c[i]);
    alpha[i - 1] = *alpha[i + 1] - c[i] * *alpha[i];
    beta[i - 1] = *beta[i + 1] - c[i] * *beta[i];
  }

  // beta_2 = 1 fixes epsilon.
  if (beta[2]->coeff().is_zero()) throw Error(ErrorCode::DegenerateDenominator, "beta_2 vanishes identically");
  const Element eps = beta[2]->coeff().inv();
  c[2] = beta[3]->at(eps);
  const Element alpha1 = alpha[3]->at(eps) - c[2] * alpha[2]->at(eps);
  if (alpha1.is_zero()) throw Error(ErrorCode::DegenerateDenominator, "alpha_1 = 0");
  c[1] = alpha[2]->at(eps) / alpha1;
  c[0] = alpha1;
  if (c[2].is_zero() || c[1].is_zero()) throw Error(ErrorCode::DegenerateDenominator, "zero chain constant");

  DecompositionTrace trace{std::move(upper), eps, c[2], c[1], c[0], {}, {}};
  for (std::size_t i = 2; i <= n + 1; ++i) {
    trace.alpha_eps.push_back(*alpha[i]);
    trace.beta_eps.push_back(*beta[i]);
  }
  return {CarlitzChain(std::move(c)), std::move(trace)};
}

inline CarlitzChain decompose(const LinearMap& g, const PoleSet& x) { return decompose_traced(g, x).chain; }

/// Convenience overload taking raw pole values; pole-set violations surface
/// as InvalidPoleSet.
inline CarlitzChain decompose(const LinearMap& g, std::vector<Element> x) {
  std::optional<PoleSet> ps;
  try {
    ps.emplace(std::move(x));
  } catch (const Error& e) {
    throw Error(ErrorCode::InvalidPoleSet, e.what());
  }
  return decompose(g, *ps);
}

}  // namespace vsets
