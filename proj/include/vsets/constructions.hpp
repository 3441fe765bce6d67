#pragma once

// Explicit instance families with predicted value profiles, and a brute-force
// verifier comparing each prediction against the observed profile.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "vsets/carlitz.hpp"
#include "vsets/error.hpp"
#include "vsets/family.hpp"
#include "vsets/gf.hpp"

namespace vsets {

enum class Family { Cor3i, Cor3ii, Cor5i, Cor5ii, Cor5iii, Cor6, Thm7i, Thm7ii, Thm7iii, Thm7iv, Coset };

inline constexpr Family kAllFamilies[] = {Family::Cor3i,  Family::Cor3ii, Family::Cor5i,   Family::Cor5ii,
                                          Family::Cor5iii, Family::Cor6,   Family::Thm7i,   Family::Thm7ii,
                                          Family::Thm7iii, Family::Thm7iv, Family::Coset};

constexpr std::string_view family_name(Family f) noexcept {
  switch (f) {
    case Family::Cor3i: return "cor3i";
    case Family::Cor3ii: return "cor3ii";
    case Family::Cor5i: return "cor5i";
    case Family::Cor5ii: return "cor5ii";
    case Family::Cor5iii: return "cor5iii";
    case Family::Cor6: return "cor6";
    case Family::Thm7i: return "thm7i";
    case Family::Thm7ii: return "thm7ii";
    case Family::Thm7iii: return "thm7iii";
    case Family::Thm7iv: return "thm7iv";
    case Family::Coset: return "coset";
  }
  return "?";
}

inline std::optional<Family> parse_family(std::string_view name) {
  for (auto f : kAllFamilies)
    if (family_name(f) == name) return f;
  return std::nullopt;
}

/// Parameters shared by all generators; each family reads the ones it needs.
struct ConstructionParams {
  std::optional<std::size_t> n;
  std::optional<Element> a, b, c, d, alpha;
};

/// Exact and bound-type predictions. Absent fields are not checked.
struct PredictedProfile {
  std::optional<std::vector<Element>> value_set;  // V_F exactly
  std::optional<std::vector<Element>> missing;    // V_F = F_q minus these
  std::vector<std::pair<Element, std::size_t>> mult;
  std::optional<std::size_t> other_mult;          // every value not listed in `mult`
  std::optional<std::vector<std::pair<std::size_t, std::size_t>>> counts;  // (i, v_i); unlisted v_i = 0
  std::optional<std::size_t> size;
  std::optional<std::size_t> min_size;
  std::optional<std::size_t> max_count;
  std::optional<std::size_t> max_count_at_most;
  std::optional<bool> complete_mapping;
  std::string source;
};

struct Construction {
  Family family;
  Field field;
  ConstructionParams params;
  std::optional<CarlitzChain> chain;  // families stated as chains
  std::optional<LinearMap> g;         // families stated as (g, poles)
  std::optional<PoleSet> poles;
  PredictedProfile predicted;
};

namespace detail {

inline void require_nonzero(const Element& e, const char* what) {
  if (e.is_zero()) throw Error(ErrorCode::ZeroParameter, std::string(what) + " must be nonzero");
}

inline const Element& need(const std::optional<Element>& e, const char* what) {
  if (!e) throw Error(ErrorCode::BadParameter, std::string("missing parameter ") + what);
  return *e;
}

inline std::size_t need_n(const ConstructionParams& p) {
  if (!p.n) throw Error(ErrorCode::InvalidN, "missing parameter n");
  if (*p.n < 2) throw Error(ErrorCode::InvalidN, "n must be at least 2");
  return *p.n;
}

inline std::vector<Element> roots_of(const Field& f, auto&& pred) {
  std::vector<Element> out;
  for (const auto& e : f.elements())
    if (pred(e)) out.push_back(e);
  return out;
}

inline Element pick_root(const Field& f, const std::optional<Element>& d, auto&& pred, const char* what) {
  if (d) {
    if (!pred(*d)) throw Error(ErrorCode::BadParameter, std::string("d does not satisfy ") + what);
    return *d;
  }
  auto roots = roots_of(f, pred);
  if (roots.empty()) throw Error(ErrorCode::NoSuchRoot, std::string("no d with ") + what + " in " + f.describe());
  return roots.front();
}

inline std::vector<std::pair<std::size_t, std::size_t>> counts_from_mult(
    std::uint64_t q, const std::vector<std::pair<Element, std::size_t>>& mult) {
  std::map<std::size_t, std::size_t> v;
  v[0] = static_cast<std::size_t>(q - mult.size());
  for (const auto& [e, m] : mult) ++v[m];
  return {v.begin(), v.end()};
}

// Merges repeated elements by adding their multiplicities.
inline std::vector<std::pair<Element, std::size_t>> merge_mult(std::vector<std::pair<Element, std::size_t>> in) {
  std::vector<std::pair<Element, std::size_t>> out;
  for (auto& [e, m] : in) {
    auto it = std::find_if(out.begin(), out.end(), [&](const auto& x) { return x.first == e; });
    if (it == out.end())
      out.emplace_back(e, m);
    else
      it->second += m;
  }
  return out;
}

// Poles x_i = b * sum_{j=0}^{n-i} w^{j+1}, w = -1/a.
inline PoleSet geometric_poles(const Element& a, const Element& b, std::size_t n) {
  const Element w = -a.inv();
  std::vector<Element> x;
  for (std::size_t i = 1; i <= n; ++i) {
    Element s = a.field().zero(), wp = w;
    for (std::size_t j = 0; j <= n - i; ++j) {
      s += wp;
      wp *= w;
    }
    x.push_back(b * s);
  }
  return PoleSet(std::move(x));
}

inline Construction chain_construction(Family fam, const Field& f, ConstructionParams params,
                                       std::vector<Element> c, PredictedProfile pred) {
  return {fam, f, std::move(params), CarlitzChain(std::move(c)), std::nullopt, std::nullopt, std::move(pred)};
}

inline Construction pair_construction(Family fam, const Field& f, ConstructionParams params, LinearMap g,
                                      PoleSet poles, PredictedProfile pred) {
  return {fam, f, std::move(params), std::nullopt, std::move(g), std::move(poles), std::move(pred)};
}

}  // namespace detail

// n = 2, a = -1: V_F = {0, -c, -2c}.
inline Construction cor3_i(const Field& f, const Element& c) {
  detail::require_nonzero(c, "c");
  const std::uint64_t q = f.size();
  PredictedProfile p;
  p.value_set = std::vector<Element>{f.zero(), -c, -(c + c)};
  p.mult = {{-c, q - 2}, {f.zero(), 1}, {-(c + c), 1}};
  p.counts = {{{0, q - 3}, {1, 2}, {q - 2, 1}}};
  p.size = 3;
  p.source = "cor3i";
  ConstructionParams params;
  params.c = c;
  return detail::chain_construction(Family::Cor3i, f, params, {(c * c).inv(), c, -c.inv()}, std::move(p));
}

// n = 2, a = 1: V_F = F_q minus {c, -c}.
inline Construction cor3_ii(const Field& f, const Element& c) {
  detail::require_nonzero(c, "c");
  const std::uint64_t q = f.size();
  PredictedProfile p;
  p.missing = std::vector<Element>{c, -c};
  p.counts = {{{0, 2}, {1, q - 3}, {3, 1}}};
  p.size = q - 2;
  p.max_count = 3;
  p.source = "cor3ii";
  ConstructionParams params;
  params.c = c;
  return detail::chain_construction(Family::Cor3ii, f, params, {-(c * c).inv(), c, -c.inv()}, std::move(p));
}

namespace detail {

// Chains (c0, c, d/c, -c/(d+1)) shared by the n = 3 corollaries.
inline std::vector<Element> n3_chain(const Element& c0, const Element& c, const Element& d) {
  const Element one = c.field().one();
  return {c0, c, d / c, -c / (d + one)};
}

inline bool is_cube_root_of_unity(const Element& d) { return (d * d + d + d.field().one()).is_zero(); }
inline bool is_cor5ii_root(const Element& d) {
  const Element s = d + d.field().one();
  return (s * s + d.field().one()).is_zero();
}

}  // namespace detail

// q = 1 mod 3, d^2 + d + 1 = 0: F is a permutation and f a complete mapping.
inline Construction cor5_i(const Field& f, const Element& c, const std::optional<Element>& d_in = std::nullopt) {
  if (f.size() % 3 != 1) throw Error(ErrorCode::CongruenceViolation, "needs q = 1 mod 3");
  detail::require_nonzero(c, "c");
  const Element d = detail::pick_root(f, d_in, detail::is_cube_root_of_unity, "d^2 + d + 1 = 0");
  const std::uint64_t q = f.size();
  PredictedProfile p;
  p.size = q;
  p.counts = {{{0, 0}, {1, q}}};
  p.max_count = 1;
  p.complete_mapping = true;
  p.source = "cor5i";
  ConstructionParams params;
  params.c = c;
  params.d = d;
  const Element one = f.one();
  return detail::chain_construction(Family::Cor5i, f, params, detail::n3_chain(-(d + one).inv(), c, d), std::move(p));
}

// q = 5 mod 12, (d+1)^2 = -1: V_F = F_q minus {d/c, (-d-2)/c}, m(-1/c) = 3.
inline Construction cor5_ii(const Field& f, const Element& c, const std::optional<Element>& d_in = std::nullopt) {
  if (f.size() % 12 != 5) throw Error(ErrorCode::CongruenceViolation, "needs q = 5 mod 12");
  detail::require_nonzero(c, "c");
  const Element d = detail::pick_root(f, d_in, detail::is_cor5ii_root, "(d+1)^2 = -1");
  const std::uint64_t q = f.size();
  const Element one = f.one(), two = f.from_int(2);
  PredictedProfile p;
  p.missing = std::vector<Element>{d / c, (-d - two) / c};
  p.mult = {{-c.inv(), 3}};
  p.other_mult = 1;
  p.counts = {{{0, 2}, {1, q - 3}, {3, 1}}};
  p.size = q - 2;
  p.max_count = 3;
  p.source = "cor5ii";
  ConstructionParams params;
  params.c = c;
  params.d = d;
  return detail::chain_construction(Family::Cor5ii, f, params, detail::n3_chain(-(d + one).inv(), c, d), std::move(p));
}

// q = 11 mod 12, d not in {-1, -1/2, 0}: V_F = F_q minus three listed values.
inline Construction cor5_iii(const Field& f, const Element& c, const Element& d) {
  if (f.size() % 12 != 11) throw Error(ErrorCode::CongruenceViolation, "needs q = 11 mod 12");
  detail::require_nonzero(c, "c");
  const Element one = f.one(), two = f.from_int(2);
  if (d.is_zero() || (d + one).is_zero() || (two * d + one).is_zero())
    throw Error(ErrorCode::BadParameter, "d must avoid {-1, -1/2, 0}");
  const std::uint64_t q = f.size();
  PredictedProfile p;
  p.missing = std::vector<Element>{d * (d + one) / c, -(d + one) * (d + one) / c, -(d * d) / c};
  p.mult = {{f.zero(), 3}, {(-(d * d) - d - one) / c, 2}};
  p.other_mult = 1;
  p.counts = {{{0, 3}, {1, q - 5}, {2, 1}, {3, 1}}};
  p.size = q - 3;
  p.max_count = 3;
  p.source = "cor5iii";
  ConstructionParams params;
  params.c = c;
  params.d = d;
  return detail::chain_construction(Family::Cor5iii, f, params, detail::n3_chain((d * (d + one)).inv(), c, d),
                                    std::move(p));
}

// n = 3, a = -1: |V_F| = 4.
inline Construction cor_small_n3(const Field& f, const Element& c, const Element& d) {
  detail::require_nonzero(c, "c");
  const Element one = f.one(), two = f.from_int(2);
  if (d.is_zero() || (d - one).is_zero() || (d + one).is_zero() || (d + two).is_zero() ||
      (two * d + one).is_zero())
    throw Error(ErrorCode::BadParameter, "d must avoid {-2, -1, -1/2, 0, 1}");
  const std::uint64_t q = f.size();
  PredictedProfile p;
  p.value_set = std::vector<Element>{f.zero(), (d * d - one) / c, (d + one) * d / c, (d + one) * (two * d + one) / c};
  p.counts = {{{0, q - 4}, {1, 3}, {q - 3, 1}}};
  p.size = 4;
  p.source = "cor6";
  ConstructionParams params;
  params.c = c;
  params.d = d;
  return detail::chain_construction(Family::Cor6, f, params,
                                    detail::n3_chain(-((d + one) * (d + one)).inv(), c, d), std::move(p));
}

// a = -1, b = n(n-1)/2, x_i = x_{i-1} + (i - 1): |V_F| = n + 1.
inline Construction thm7_i(const Field& f, std::size_t n) {
  if (n < 2) throw Error(ErrorCode::InvalidN, "n must be at least 2");
  const std::uint64_t p = f.characteristic(), q = f.size();
  if (p <= n * (n + 1)) throw Error(ErrorCode::CharacteristicTooSmall, "needs p > n(n+1)");
  const Element b = f.from_int(static_cast<long long>(n * (n - 1) / 2));
  std::vector<Element> x{f.zero()};
  for (std::size_t i = 2; i <= n; ++i) x.push_back(x.back() + f.from_int(static_cast<long long>(i - 1)));
  PredictedProfile pr;
  std::vector<Element> vs{f.zero()};
  for (std::size_t i = 0; i < n; ++i) vs.push_back(b + f.from_int(static_cast<long long>(i)));
  pr.value_set = vs;
  pr.mult = {{b, q - n}};
  pr.other_mult = 1;
  pr.counts = {{{0, q - n - 1}, {1, n}, {q - n, 1}}};
  pr.size = n + 1;
  pr.source = "thm7i";
  ConstructionParams params;
  params.n = n;
  return detail::pair_construction(Family::Thm7i, f, params, LinearMap(-f.one(), b), PoleSet(std::move(x)),
                                   std::move(pr));
}

// q = 1 mod n, ord(-a) = n: |V_F| = q - n, zero has multiplicity n + 1, all others 1.
inline Construction thm7_ii(const Field& f, std::size_t n, const Element& a, const Element& b) {
  if (n < 2) throw Error(ErrorCode::InvalidN, "n must be at least 2");
  const std::uint64_t q = f.size();
  if ((q - 1) % n != 0) throw Error(ErrorCode::CongruenceViolation, "needs q = 1 mod n");
  detail::require_nonzero(a, "a");
  detail::require_nonzero(b, "b");
  if ((-a).order() != n) throw Error(ErrorCode::OrderMismatch, "needs ord(-a) = n");
  PredictedProfile pr;
  pr.mult = {{f.zero(), n + 1}};
  pr.other_mult = 1;
  pr.counts = {{{0, n}, {1, q - n - 1}, {n + 1, 1}}};
  pr.size = q - n;
  pr.max_count = n + 1;
  pr.source = "thm7ii";
  ConstructionParams params;
  params.n = n;
  params.a = a;
  params.b = b;
  return detail::pair_construction(Family::Thm7ii, f, params, LinearMap(a, b), detail::geometric_poles(a, b, n),
                                   std::move(pr));
}

// q = 1 mod 2n, ord(a) = 2n, x_i = (b a^{i-1} - b)/(a + 1): |V_F| >= q - n, M <= 2.
inline Construction thm7_iii(const Field& f, std::size_t n, const Element& a, const Element& b) {
  if (n < 2) throw Error(ErrorCode::InvalidN, "n must be at least 2");
  const std::uint64_t q = f.size();
  if ((q - 1) % (2 * n) != 0) throw Error(ErrorCode::CongruenceViolation, "needs q = 1 mod 2n");
  detail::require_nonzero(a, "a");
  detail::require_nonzero(b, "b");
  if (a.order() != 2 * n) throw Error(ErrorCode::OrderMismatch, "needs ord(a) = 2n");
  const Element denom = (a + f.one()).inv();
  std::vector<Element> x;
  Element z = b;
  for (std::size_t i = 1; i <= n; ++i) {
    x.push_back((z - b) * denom);
    z *= a;
  }
  PredictedProfile pr;
  pr.min_size = q - n;
  pr.max_count_at_most = 2;
  pr.source = "thm7iii";
  ConstructionParams params;
  params.n = n;
  params.a = a;
  params.b = b;
  return detail::pair_construction(Family::Thm7iii, f, params, LinearMap(a, b), PoleSet(std::move(x)), std::move(pr));
}

// a = -1, x_i = (1 - i) b for i < n, x_n = b: V_F = {0, b, nb}.
inline Construction thm7_iv(const Field& f, std::size_t n, const Element& b) {
  if (n < 2) throw Error(ErrorCode::InvalidN, "n must be at least 2");
  const std::uint64_t p = f.characteristic(), q = f.size();
  // The n poles are distinct multiples of b only when p >= n.
  if (p < n) throw Error(ErrorCode::CharacteristicTooSmall, "needs p >= n");
  if (n > q - 1) throw Error(ErrorCode::InvalidN, "n must be at most q - 1");
  detail::require_nonzero(b, "b");
  std::vector<Element> x;
  for (std::size_t i = 1; i < n; ++i) x.push_back(f.from_int(1 - static_cast<long long>(i)) * b);
  x.push_back(b);
  const Element nb = f.from_int(static_cast<long long>(n)) * b;
  PredictedProfile pr;
  pr.mult = detail::merge_mult({{f.zero(), n - 1}, {b, q - n}, {nb, 1}});
  std::vector<Element> vs;
  for (const auto& [e, m] : pr.mult) vs.push_back(e);
  pr.value_set = vs;
  pr.size = vs.size();
  pr.counts = detail::counts_from_mult(q, pr.mult);
  pr.source = "thm7iv";
  ConstructionParams params;
  params.n = n;
  params.b = b;
  return detail::pair_construction(Family::Thm7iv, f, params, LinearMap(-f.one(), b), PoleSet(std::move(x)),
                                   std::move(pr));
}

// U = <alpha>, a = -1/alpha, b = -ac: V_F = F_q minus cU.
inline Construction thm8_coset(const Field& f, const Element& alpha, const Element& c) {
  if (alpha.is_zero() || alpha.is_one()) throw Error(ErrorCode::NotAGenerator, "alpha must generate a subgroup of order >= 2");
  if (c.is_zero() || c.is_one()) throw Error(ErrorCode::BadCosetRep, "c must avoid {0, 1}");
  const std::size_t n = alpha.order();
  const Element a = -alpha.inv();
  const Element b = -a * c;
  std::vector<Element> coset;
  Element u = f.one();
  for (std::size_t i = 0; i < n; ++i) {
    coset.push_back(c * u);
    u *= alpha;
  }
  PredictedProfile pr;
  pr.missing = coset;
  pr.size = f.size() - n;
  pr.source = "coset";
  ConstructionParams params;
  params.n = n;
  params.alpha = alpha;
  params.c = c;
  return detail::pair_construction(Family::Coset, f, params, LinearMap(a, b), detail::geometric_poles(a, b, n),
                                   std::move(pr));
}

/// Builds one construction from named parameters. Cube roots and the
/// (d+1)^2 = -1 roots are found by scanning F_q when d is omitted.
inline Construction construct(Family fam, const Field& f, const ConstructionParams& p) {
  using detail::need;
  switch (fam) {
    case Family::Cor3i: return cor3_i(f, need(p.c, "c"));
    case Family::Cor3ii: return cor3_ii(f, need(p.c, "c"));
    case Family::Cor5i: return cor5_i(f, need(p.c, "c"), p.d);
    case Family::Cor5ii: return cor5_ii(f, need(p.c, "c"), p.d);
    case Family::Cor5iii: return cor5_iii(f, need(p.c, "c"), need(p.d, "d"));
    case Family::Cor6: return cor_small_n3(f, need(p.c, "c"), need(p.d, "d"));
    case Family::Thm7i: return thm7_i(f, detail::need_n(p));
    case Family::Thm7ii: return thm7_ii(f, detail::need_n(p), need(p.a, "a"), need(p.b, "b"));
    case Family::Thm7iii: return thm7_iii(f, detail::need_n(p), need(p.a, "a"), need(p.b, "b"));
    case Family::Thm7iv: return thm7_iv(f, detail::need_n(p), need(p.b, "b"));
    case Family::Coset: return thm8_coset(f, need(p.alpha, "alpha"), need(p.c, "c"));
  }
  throw Error(ErrorCode::BadParameter, "unknown family");
}

/// Every admissible parameter point over `f`, with parameters present in
/// `fixed` held constant. For the coset family a fixed n restricts the
/// subgroup order. Points are produced in ascending parameter order.
inline std::vector<Construction> sweep(Family fam, const Field& f, const ConstructionParams& fixed = {}) {
  const auto elems = f.elements();
  const std::uint64_t q = f.size(), p = f.characteristic();
  std::vector<Element> nonzero(elems.begin() + 1, elems.end());
  auto over = [&](const std::optional<Element>& v, const std::vector<Element>& all) {
    return v ? std::vector<Element>{*v} : all;
  };
  auto ns = [&](auto&& admissible) {
    std::vector<std::size_t> out;
    if (fixed.n) {
      out.push_back(*fixed.n);
    } else {
      for (std::size_t n = 2; n <= q - 1; ++n)
        if (admissible(n)) out.push_back(n);
    }
    return out;
  };
  std::vector<Construction> out;
  const Element one = f.one(), two = f.from_int(2);

  switch (fam) {
    case Family::Cor3i:
    case Family::Cor3ii:
      for (const auto& c : over(fixed.c, nonzero)) out.push_back(construct(fam, f, {std::nullopt, {}, {}, c, {}, {}}));
      break;
    case Family::Cor5i:
    case Family::Cor5ii: {
      if (fam == Family::Cor5i && q % 3 != 1) throw Error(ErrorCode::CongruenceViolation, "needs q = 1 mod 3");
      if (fam == Family::Cor5ii && q % 12 != 5) throw Error(ErrorCode::CongruenceViolation, "needs q = 5 mod 12");
      auto ds = fixed.d ? std::vector<Element>{*fixed.d}
                        : detail::roots_of(f, fam == Family::Cor5i ? detail::is_cube_root_of_unity : detail::is_cor5ii_root);
      if (ds.empty()) throw Error(ErrorCode::NoSuchRoot, "no admissible d in " + f.describe());
      for (const auto& d : ds)
        for (const auto& c : over(fixed.c, nonzero)) out.push_back(construct(fam, f, {std::nullopt, {}, {}, c, d, {}}));
      break;
    }
    case Family::Cor5iii:
    case Family::Cor6: {
      if (fam == Family::Cor5iii && q % 12 != 11) throw Error(ErrorCode::CongruenceViolation, "needs q = 11 mod 12");
      std::vector<Element> ds;
      for (const auto& d : elems) {
        bool bad = d.is_zero() || (d + one).is_zero() || (two * d + one).is_zero();
        if (fam == Family::Cor6) bad = bad || (d - one).is_zero() || (d + two).is_zero();
        if (!bad) ds.push_back(d);
      }
      for (const auto& d : over(fixed.d, ds))
        for (const auto& c : over(fixed.c, nonzero)) out.push_back(construct(fam, f, {std::nullopt, {}, {}, c, d, {}}));
      break;
    }
    case Family::Thm7i:
      for (auto n : ns([&](std::size_t n) { return p > n * (n + 1); })) out.push_back(thm7_i(f, n));
      break;
    case Family::Thm7ii:
      for (auto n : ns([&](std::size_t n) { return (q - 1) % n == 0; }))
        for (const auto& a : over(fixed.a, nonzero)) {
          if (!fixed.a && (-a).order() != n) continue;
          for (const auto& b : over(fixed.b, nonzero)) out.push_back(thm7_ii(f, n, a, b));
        }
      break;
    case Family::Thm7iii:
      for (auto n : ns([&](std::size_t n) { return (q - 1) % (2 * n) == 0; }))
        for (const auto& a : over(fixed.a, nonzero)) {
          if (!fixed.a && a.order() != 2 * n) continue;
          for (const auto& b : over(fixed.b, nonzero)) out.push_back(thm7_iii(f, n, a, b));
        }
      break;
    case Family::Thm7iv:
      for (auto n : ns([&](std::size_t n) { return p >= n; }))
        for (const auto& b : over(fixed.b, nonzero)) out.push_back(thm7_iv(f, n, b));
      break;
    case Family::Coset:
      for (const auto& alpha : over(fixed.alpha, nonzero)) {
        if (!fixed.alpha && (alpha.is_one() || (fixed.n && alpha.order() != *fixed.n))) continue;
        for (const auto& c : over(fixed.c, nonzero)) {
          if (!fixed.c && c.is_one()) continue;
          out.push_back(thm8_coset(f, alpha, c));
        }
      }
      break;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Verification

struct ConstructionReport {
  Construction construction;
  CarlitzChain chain;  // normalized: given, or decomposed from (g, poles)
  LinearMap g;
  PoleSet poles;
  ChainValidity validity;
  ValueProfile observed;
  bool observed_complete_mapping = false;
  bool match = false;
  std::vector<std::string> mismatches;
};

namespace detail {

inline std::string set_string(std::vector<Element> v) {
  std::sort(v.begin(), v.end());
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << '}';
  return os.str();
}

inline std::vector<Element> sorted_unique(std::vector<Element> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace detail

/// Compares a prediction field by field against a profile and the
/// complete-mapping flag; returns one message per disagreement.
inline std::vector<std::string> compare_profile(const Field& field, const PredictedProfile& pred,
                                                const ValueProfile& obs, bool complete_mapping) {
  std::vector<std::string> out;
  const std::uint64_t q = field.size();
  if (pred.value_set) {
    auto want = detail::sorted_unique(*pred.value_set);
    if (want != obs.values)
      out.push_back("value_set: predicted " + detail::set_string(want) + " observed " + detail::set_string(obs.values));
  }
  if (pred.missing) {
    auto want = detail::sorted_unique(*pred.missing);
    std::vector<Element> got;
    for (const auto& e : field.elements())
      if (!std::binary_search(obs.values.begin(), obs.values.end(), e)) got.push_back(e);
    if (want != got) out.push_back("missing: predicted " + detail::set_string(want) + " observed " + detail::set_string(got));
  }
  for (const auto& [e, m] : pred.mult) {
    if (obs.multiplicity(e) != m)
      out.push_back("m(" + e.to_string() + "): predicted " + std::to_string(m) + " observed " +
                    std::to_string(obs.multiplicity(e)));
  }
  if (pred.other_mult) {
    for (const auto& [e, m] : obs.mult) {
      bool listed = std::any_of(pred.mult.begin(), pred.mult.end(), [&](const auto& x) { return x.first == e; });
      if (!listed && m != *pred.other_mult) {
        out.push_back("m(" + e.to_string() + "): predicted " + std::to_string(*pred.other_mult) + " observed " +
                      std::to_string(m));
      }
    }
  }
  if (pred.counts) {
    std::vector<std::size_t> want(q + 1, 0), got(q + 1, 0);
    for (const auto& [i, v] : *pred.counts)
      if (i <= q) want[i] = v;
    for (std::size_t i = 0; i < obs.counts.size(); ++i) got[i] = obs.counts[i];
    if (want != got) {
      std::ostringstream os;
      os << "counts: predicted";
      for (const auto& [i, v] : *pred.counts) os << " v" << i << "=" << v;
      os << " observed";
      for (const auto& [i, v] : obs.sparse_counts()) os << " v" << i << "=" << v;
      out.push_back(os.str());
    }
  }
  if (pred.size && obs.size() != *pred.size)
    out.push_back("size: predicted " + std::to_string(*pred.size) + " observed " + std::to_string(obs.size()));
  if (pred.min_size && obs.size() < *pred.min_size)
    out.push_back("size: predicted >= " + std::to_string(*pred.min_size) + " observed " + std::to_string(obs.size()));
  if (pred.max_count && obs.max_count != *pred.max_count)
    out.push_back("max_count: predicted " + std::to_string(*pred.max_count) + " observed " +
                  std::to_string(obs.max_count));
  if (pred.max_count_at_most && obs.max_count > *pred.max_count_at_most)
    out.push_back("max_count: predicted <= " + std::to_string(*pred.max_count_at_most) + " observed " +
                  std::to_string(obs.max_count));
  if (pred.complete_mapping && complete_mapping != *pred.complete_mapping)
    out.push_back(std::string("complete_mapping: predicted ") + (*pred.complete_mapping ? "true" : "false") +
                  " observed " + (complete_mapping ? "true" : "false"));
  return out;
}

/// Normalizes the construction through the chain/pole correspondence, builds
/// the instance, and checks the prediction against brute force.
inline ConstructionReport verify(const Construction& con) {
  std::vector<std::string> structural;
  std::optional<CarlitzChain> chain;
  std::optional<LinearMap> g;
  std::optional<PoleSet> x;
  if (con.chain) {
    chain = con.chain;
    g = linear_part(*chain);
    x = poles(*chain);
  } else {
    g = con.g;
    x = con.poles;
    chain = decompose(*g, *x);
  }
  const ChainValidity validity = validate_chain(*chain);
  if (!validity.valid()) structural.push_back("chain is not family-valid");
  const FamilyInstance inst = build_instance(*g, *x);
  if (chain_table(*chain) != inst.f) structural.push_back("chain evaluation differs from the modified linear map");
  if (con.g && (linear_part(*chain) != *con.g || poles(*chain) != *con.poles))
    structural.push_back("decomposed chain does not recover (g, poles)");

  const ValueProfile observed = value_profile(inst.F);
  const bool complete = is_complete_mapping(inst);
  auto mismatches = compare_profile(con.field, con.predicted, observed, complete);
  mismatches.insert(mismatches.begin(), structural.begin(), structural.end());
  const bool ok = mismatches.empty();
  return {con, *chain, *g, *x, validity, observed, complete, ok, std::move(mismatches)};
}

}  // namespace vsets
