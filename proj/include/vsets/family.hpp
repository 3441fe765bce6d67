#pragma once

// Instances F(x) = f(x) + x where f agrees with g(x) = ax + b off the pole
// set, f(x_i) = g(x_{i-1}) for i >= 2 and f(x_1) = 0. Value profiles,
// permutation checks and spectrum enumeration over all such instances.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <span>
#include <thread>
#include <utility>
#include <vector>

#include "vsets/carlitz.hpp"
#include "vsets/error.hpp"
#include "vsets/gf.hpp"

namespace vsets {

/// A total map on F_q, indexed by element code.
using Table = std::vector<Element>;

struct FamilyInstance {
  Field field;
  LinearMap g;
  PoleSet poles;
  Table f;
  Table F;
};

namespace detail {

// Writes f and F = f + id for (g, poles) into preallocated tables.
inline void fill_tables(const LinearMap& g, std::span<const Element> x, const std::vector<Element>& elems, Table& f,
                        Table& F) {
  for (std::size_t d = 0; d < elems.size(); ++d) f[d] = g(elems[d]);
  const std::size_t n = x.size();
  for (std::size_t i = n; i >= 2; --i) f[x[i - 1].code()] = g(x[i - 2]);
  f[x[0].code()] = elems[0];
  for (std::size_t d = 0; d < elems.size(); ++d) F[d] = f[d] + elems[d];
}

}  // namespace detail

inline FamilyInstance build_instance(const LinearMap& g, const PoleSet& poles) {
  const Field field = g.a().field();
  if (poles.last() != g.root())
    throw Error(ErrorCode::PoleAnchorMismatch,
                "x_n = " + poles.last().to_string() + " but -b/a = " + g.root().to_string());
  if (poles.size() > field.size() - 1) throw Error(ErrorCode::InvalidN, "at most q - 1 poles");
  const auto elems = field.elements();
  Table f(elems.size(), field.zero()), F(elems.size(), field.zero());
  detail::fill_tables(g, poles.values(), elems, f, F);
  return {field, g, poles, std::move(f), std::move(F)};
}

/// Value set, multiplicities and the value set count (v_0, ..., v_M).
struct ValueProfile {
  std::vector<Element> values;                        // ascending code
  std::vector<std::pair<Element, std::size_t>> mult;  // one entry per value
  std::vector<std::size_t> counts;                    // v_0..v_M, full length M + 1
  std::size_t max_count = 0;

  std::size_t size() const noexcept { return values.size(); }

  std::size_t multiplicity(const Element& e) const {
    for (const auto& [v, m] : mult)
      if (v == e) return m;
    return 0;
  }

  std::size_t count(std::size_t i) const noexcept { return i < counts.size() ? counts[i] : 0; }

  /// (i, v_i) with interior zero runs dropped: indices 0 and 1 always kept,
  /// any other index only when v_i != 0.
  std::vector<std::pair<std::size_t, std::size_t>> sparse_counts() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t i = 0; i < counts.size(); ++i)
      if (i <= 1 || counts[i] != 0) out.emplace_back(i, counts[i]);
    return out;
  }
};

inline ValueProfile value_profile(std::span<const Element> table) {
  ValueProfile prof;
  if (table.empty()) return prof;
  const Field field = table.front().field();
  std::vector<std::size_t> m(field.size(), 0);
  for (const auto& v : table) ++m[v.code()];
  for (std::size_t c = 0; c < m.size(); ++c) prof.max_count = std::max(prof.max_count, m[c]);
  prof.counts.assign(prof.max_count + 1, 0);
  for (std::size_t c = 0; c < m.size(); ++c) {
    ++prof.counts[m[c]];
    if (m[c] > 0) {
      prof.values.push_back(field.element(c));
      prof.mult.emplace_back(field.element(c), m[c]);
    }
  }
  return prof;
}

inline bool is_permutation(std::span<const Element> table) {
  if (table.empty()) return true;
  const std::uint64_t q = table.front().field().size();
  if (table.size() != q) return false;
  std::vector<bool> seen(q, false);
  for (const auto& v : table) {
    if (seen[v.code()]) return false;
    seen[v.code()] = true;
  }
  return true;
}

/// Both f and F = f + id are bijections.
inline bool is_complete_mapping(const FamilyInstance& inst) { return is_permutation(inst.f) && is_permutation(inst.F); }

inline Element sum_of_values(std::span<const Element> table) {
  if (table.empty()) throw Error(ErrorCode::InvalidN, "empty table");
  Element s = table.front().field().zero();
  for (const auto& v : table) s += v;
  return s;
}

/// Coefficients (constant term first, trailing zeros trimmed) of the unique
/// polynomial of degree <= q - 1 taking the tabulated values. Uses
/// f(x) = sum_c f(c) (1 - (x - c)^{q-1}), whose x^k coefficient is f(0) for
/// k = 0 and -sum_c f(c) c^{q-1-k} for k >= 1.
inline std::vector<Element> interpolate(std::span<const Element> table) {
  if (table.empty()) throw Error(ErrorCode::InvalidN, "empty table");
  const Field field = table.front().field();
  const std::uint64_t q = field.size();
  if (table.size() != q) throw Error(ErrorCode::InvalidN, "table must cover all of F_q");
  const auto elems = field.elements();
  std::vector<Element> coeffs(q, field.zero());
  coeffs[0] = table[0];
  for (std::uint64_t k = 1; k < q; ++k) {
    Element acc = field.zero();
    for (std::uint64_t c = 0; c < q; ++c) {
      if (table[c].is_zero()) continue;
      acc += table[c] * elems[c].pow(q - 1 - k);
    }
    coeffs[k] = -acc;
  }
  while (coeffs.size() > 1 && coeffs.back().is_zero()) coeffs.pop_back();
  return coeffs;
}

// ---------------------------------------------------------------------------
// Spectrum enumeration

enum class SpectrumMode { Exhaustive, Sample };

struct SpectrumOptions {
  SpectrumMode mode = SpectrumMode::Exhaustive;
  std::uint64_t samples = 0;                 // sample mode only
  std::uint64_t seed = 0;
  std::uint64_t budget = 100'000'000;        // max table evaluations (instances * q)
  unsigned workers = 1;
};

struct SpectrumWitness {
  LinearMap g;
  PoleSet poles;
  CarlitzChain chain;
};

struct SpectrumEntry {
  std::size_t size;
  SpectrumWitness witness;
  std::optional<std::uint64_t> count;  // exhaustive mode only
};

struct SpectrumReport {
  Field field;
  std::size_t n;
  SpectrumOptions options;
  std::vector<SpectrumEntry> entries;  // ascending size
  std::uint64_t instances = 0;
  std::uint64_t nonzero_sums = 0;           // instances with sum_c F(c) != 0
  std::uint64_t dichotomy_violations = 0;   // a = -1 but |V_F| > n + 1, or a != -1 but |V_F| < q - n

  std::set<std::size_t> sizes() const {
    std::set<std::size_t> s;
    for (const auto& e : entries) s.insert(e.size);
    return s;
  }
  bool attains(std::size_t size) const { return sizes().count(size) != 0; }
};

/// (q-1)^2 (q-2)!/(q-n)!: choices of a, b and the ordered interior poles.
inline std::uint64_t exhaustive_instance_count(std::uint64_t q, std::size_t n) {
  long double total = static_cast<long double>(q - 1) * static_cast<long double>(q - 1);
  for (std::size_t k = 0; k + 2 < n; ++k) total *= static_cast<long double>(q - 2 - k);
  return total > 1.8e19L ? UINT64_MAX : static_cast<std::uint64_t>(total);
}

namespace detail {

// Enumeration key: a, b, then the interior poles x_2..x_{n-1}, all as codes.
using SpectrumKey = std::vector<std::uint32_t>;

struct PartialSpectrum {
  std::map<std::size_t, std::pair<std::uint64_t, SpectrumKey>> by_size;  // size -> (count, least key)
  std::uint64_t instances = 0;
  std::uint64_t nonzero_sums = 0;
  std::uint64_t dichotomy_violations = 0;

  void merge(const PartialSpectrum& o) {
    for (const auto& [size, entry] : o.by_size) {
      auto it = by_size.find(size);
      if (it == by_size.end()) {
        by_size.emplace(size, entry);
      } else {
        it->second.first += entry.first;
        it->second.second = std::min(it->second.second, entry.second);
      }
    }
    instances += o.instances;
    nonzero_sums += o.nonzero_sums;
    dichotomy_violations += o.dichotomy_violations;
  }
};

// Scores one instance and folds it into `acc`.
class InstanceScorer {
 public:
  InstanceScorer(const Field& field, std::size_t n)
      : field_(field), n_(n), elems_(field.elements()), f_(elems_.size(), field.zero()),
        F_(elems_.size(), field.zero()), stamp_(elems_.size(), 0) {}

  void score(const LinearMap& g, std::span<const Element> x, SpectrumKey key, PartialSpectrum& acc) {
    fill_tables(g, x, elems_, f_, F_);
    ++epoch_;
    std::size_t distinct = 0;
    Element sum = field_.zero();
    for (const auto& v : F_) {
      if (stamp_[v.code()] != epoch_) {
        stamp_[v.code()] = epoch_;
        ++distinct;
      }
      sum += v;
    }
    ++acc.instances;
    if (!sum.is_zero()) ++acc.nonzero_sums;
    const std::uint64_t q = field_.size();
    const bool small = distinct >= 2 && distinct <= n_ + 1;
    const bool large = distinct + n_ >= q && distinct <= q;
    if ((g.a() == -field_.one()) ? !small : !large) ++acc.dichotomy_violations;
    auto it = acc.by_size.find(distinct);
    if (it == acc.by_size.end()) {
      acc.by_size.emplace(distinct, std::make_pair(std::uint64_t{1}, std::move(key)));
    } else {
      ++it->second.first;
      if (key < it->second.second) it->second.second = std::move(key);
    }
  }

  const std::vector<Element>& elements() const noexcept { return elems_; }

 private:
  Field field_;
  std::size_t n_;
  std::vector<Element> elems_;
  Table f_, F_;
  std::vector<std::uint64_t> stamp_;
  std::uint64_t epoch_ = 0;
};

inline void enumerate_ab(const Field& field, std::size_t n, std::uint32_t a_code, std::uint32_t b_code,
                         InstanceScorer& scorer, PartialSpectrum& acc) {
  const auto& elems = scorer.elements();
  const LinearMap g(elems[a_code], elems[b_code]);
  const Element root = g.root();
  std::vector<Element> candidates;
  for (const auto& e : elems)
    if (!e.is_zero() && e != root) candidates.push_back(e);

  const std::size_t slots = n - 2;
  std::vector<Element> x(n, field.zero());
  x[n - 1] = root;
  std::vector<std::size_t> pick(slots, 0);
  std::vector<bool> used(candidates.size(), false);

  // Depth-first over ordered tuples of distinct candidates, lexicographic in code.
  auto emit = [&] {
    SpectrumKey key{a_code, b_code};
    for (std::size_t s = 0; s < slots; ++s) key.push_back(x[s + 1].code());
    scorer.score(g, x, std::move(key), acc);
  };
  if (slots == 0) {
    emit();
    return;
  }
  std::size_t depth = 0;
  pick[0] = 0;
  while (true) {
    if (pick[depth] >= candidates.size()) {
      if (depth == 0) return;
      --depth;
      used[pick[depth]] = false;
      ++pick[depth];
      continue;
    }
    if (used[pick[depth]]) {
      ++pick[depth];
      continue;
    }
    x[depth + 1] = candidates[pick[depth]];
    if (depth + 1 == slots) {
      emit();
      ++pick[depth];
      continue;
    }
    used[pick[depth]] = true;
    ++depth;
    pick[depth] = 0;
  }
}

}  // namespace detail

/// Attained |V_F| over the instances with n poles, each with its least
/// witness in enumeration order (a, then b, then interior poles).
inline SpectrumReport enumerate_spectrum(const Field& field, std::size_t n, const SpectrumOptions& opts = {}) {
  const std::uint64_t q = field.size();
  if (n < 2 || n > q - 1) throw Error(ErrorCode::InvalidN, "need 2 <= n <= q - 1");

  detail::PartialSpectrum total;
  if (opts.mode == SpectrumMode::Exhaustive) {
    const std::uint64_t count = exhaustive_instance_count(q, n);
    const long double evals = static_cast<long double>(count) * static_cast<long double>(q);
    if (evals > static_cast<long double>(opts.budget))
      throw Error(ErrorCode::BudgetExceeded, std::to_string(count) + " instances exceed the evaluation budget of " +
                                                 std::to_string(opts.budget) + "; use sample mode");
    const unsigned workers = std::max(1u, opts.workers);
    std::vector<detail::PartialSpectrum> parts(workers);
    auto work = [&](unsigned w) {
      detail::InstanceScorer scorer(field, n);
      std::uint64_t k = 0;
      for (std::uint32_t a = 1; a < q; ++a)
        for (std::uint32_t b = 1; b < q; ++b, ++k)
          if (k % workers == w) detail::enumerate_ab(field, n, a, b, scorer, parts[w]);
    };
    if (workers == 1) {
      work(0);
    } else {
      std::vector<std::thread> threads;
      for (unsigned w = 0; w < workers; ++w) threads.emplace_back(work, w);
      for (auto& t : threads) t.join();
    }
    for (const auto& p : parts) total.merge(p);
  } else {
    const long double evals = static_cast<long double>(opts.samples) * static_cast<long double>(q);
    if (evals > static_cast<long double>(opts.budget))
      throw Error(ErrorCode::BudgetExceeded, "sample count exceeds the evaluation budget");
    std::mt19937_64 rng(opts.seed);
    std::uniform_int_distribution<std::uint32_t> nonzero(1, static_cast<std::uint32_t>(q - 1));
    detail::InstanceScorer scorer(field, n);
    const auto& elems = scorer.elements();
    for (std::uint64_t s = 0; s < opts.samples; ++s) {
      const LinearMap g(elems[nonzero(rng)], elems[nonzero(rng)]);
      const Element root = g.root();
      std::vector<Element> candidates;
      for (const auto& e : elems)
        if (!e.is_zero() && e != root) candidates.push_back(e);
      std::vector<Element> x{field.zero()};
      for (std::size_t k = 0; k + 2 < n; ++k) {
        std::uniform_int_distribution<std::size_t> pick(k, candidates.size() - 1);
        std::swap(candidates[k], candidates[pick(rng)]);
        x.push_back(candidates[k]);
      }
      x.push_back(root);
      detail::SpectrumKey key{g.a().code(), g.b().code()};
      for (std::size_t i = 1; i + 1 < n; ++i) key.push_back(x[i].code());
      scorer.score(g, x, std::move(key), total);
    }
  }

  SpectrumReport report{field, n, opts, {}, total.instances, total.nonzero_sums, total.dichotomy_violations};
  const auto elems = field.elements();
  for (const auto& [size, entry] : total.by_size) {
    const auto& key = entry.second;
    const LinearMap g(elems[key[0]], elems[key[1]]);
    std::vector<Element> x{field.zero()};
    for (std::size_t i = 2; i < key.size(); ++i) x.push_back(elems[key[i]]);
    x.push_back(g.root());
    PoleSet ps(std::move(x));
    CarlitzChain chain = decompose(g, ps);
    std::optional<std::uint64_t> count;
    if (opts.mode == SpectrumMode::Exhaustive) count = entry.first;
    report.entries.push_back({size, {g, std::move(ps), std::move(chain)}, count});
  }
  return report;
}

}  // namespace vsets
