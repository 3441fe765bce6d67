#include <gtest/gtest.h>

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "vsets/family.hpp"

using namespace vsets;

namespace {

std::vector<Element> els(const Field& f, std::initializer_list<long long> v) {
  std::vector<Element> out;
  for (auto x : v) out.push_back(f.from_int(x));
  return out;
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no exception";
  return ErrorCode::ParseError;
}

Table identity(const Field& f) { return f.elements(); }

// Horner evaluation of sum_k coeffs[k] x^k.
Element horner(const std::vector<Element>& coeffs, const Element& x) {
  Element acc = x.field().zero();
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
  return acc;
}

// Attained |V_F| by brute force over integers mod p: every (a, b, ordered
// interior poles), F built from the definition, distinct values counted with a set.
std::set<std::size_t> brute_spectrum(long long p, std::size_t n, std::map<std::size_t, std::uint64_t>* counts = nullptr) {
  std::set<std::size_t> sizes;
  auto md = [p](long long v) { return ((v % p) + p) % p; };
  for (long long a = 1; a < p; ++a)
    for (long long b = 1; b < p; ++b) {
      long long ainv = 1;
      while (a * ainv % p != 1) ++ainv;
      const long long root = md(-b * ainv);
      std::vector<long long> cand;
      for (long long e = 1; e < p; ++e)
        if (e != root) cand.push_back(e);
      // all ordered (n-2)-tuples of distinct candidates
      std::function<void(std::size_t, std::vector<long long>&)> rec = [&](std::size_t depth, std::vector<long long>& x) {
        if (depth == n - 2) {
          std::vector<long long> poles{0};
          poles.insert(poles.end(), x.begin(), x.end());
          poles.push_back(root);
          std::set<long long> vals;
          long long sum = 0;
          for (long long d = 0; d < p; ++d) {
            auto it = std::find(poles.begin(), poles.end(), d);
            long long f;
            if (it == poles.end())
              f = md(a * d + b);
            else if (it == poles.begin())
              f = 0;
            else
              f = md(a * *(it - 1) + b);
            vals.insert(md(f + d));
            sum += f + d;
          }
          EXPECT_EQ(md(sum), 0);
          sizes.insert(vals.size());
          if (counts) ++(*counts)[vals.size()];
          return;
        }
        for (long long c : cand) {
          if (std::find(x.begin(), x.end(), c) != x.end()) continue;
          x.push_back(c);
          rec(depth + 1, x);
          x.pop_back();
        }
      };
      std::vector<long long> x;
      rec(0, x);
    }
  return sizes;
}

}  // namespace

TEST(BuildInstance, ThreePointExample) {
  Field f(13);
  const auto inst = build_instance(LinearMap(f.from_int(12), f.from_int(2)), PoleSet(els(f, {0, 11, 9, 2})));
  EXPECT_EQ(inst.f[0], f.zero());
  EXPECT_EQ(inst.f[11], f.from_int(2));
  EXPECT_EQ(inst.f[9], f.from_int(4));
  EXPECT_EQ(inst.f[2], f.from_int(6));
  for (long long d : {1, 3, 4, 5, 6, 7, 8, 10, 12}) EXPECT_EQ(inst.f[d], f.from_int(-d + 2)) << d;
  for (const auto& d : f.elements()) EXPECT_EQ(inst.F[d.code()], inst.f[d.code()] + d);
}

TEST(BuildInstance, MatchesChainEvaluation) {
  Field f(13);
  const auto inst = build_instance(LinearMap(f.from_int(5), f.from_int(3)), PoleSet(els(f, {0, 12, 1, 8, 6, 2})));
  EXPECT_EQ(inst.f, chain_table(CarlitzChain(els(f, {7, 2, 3, 6, 10, 5, 2}))));
}

TEST(BuildInstance, Errors) {
  Field f(5);
  EXPECT_EQ(code_of([&] { build_instance(LinearMap(f.one(), f.one()), PoleSet(els(f, {0, 3}))); }),
            ErrorCode::PoleAnchorMismatch);
}

TEST(ValueProfile, ThreeValueExample) {
  Field f(13);
  const auto inst = build_instance(LinearMap(f.from_int(12), f.from_int(2)), PoleSet(els(f, {0, 11, 9, 2})));
  const auto prof = value_profile(inst.F);
  EXPECT_EQ(prof.values, els(f, {0, 2, 8}));
  EXPECT_EQ(prof.multiplicity(f.zero()), 3u);
  EXPECT_EQ(prof.multiplicity(f.from_int(2)), 9u);
  EXPECT_EQ(prof.multiplicity(f.from_int(8)), 1u);
  EXPECT_EQ(prof.multiplicity(f.from_int(5)), 0u);
  EXPECT_EQ(prof.max_count, 9u);
  EXPECT_EQ(prof.counts, (std::vector<std::size_t>{10, 1, 0, 1, 0, 0, 0, 0, 0, 1}));
  using SC = std::vector<std::pair<std::size_t, std::size_t>>;
  EXPECT_EQ(prof.sparse_counts(), (SC{{0, 10}, {1, 1}, {3, 1}, {9, 1}}));
}

TEST(ValueProfile, Identity) {
  Field f(11);
  const auto prof = value_profile(identity(f));
  EXPECT_EQ(prof.size(), 11u);
  EXPECT_EQ(prof.counts, (std::vector<std::size_t>{0, 11}));
  EXPECT_EQ(prof.max_count, 1u);
}

TEST(ValueProfile, TwoPoleTypeOneCounts) {
  // chain (1/c^2, c, -1/c) over F_13
  Field f(13);
  for (const auto& c : f.elements()) {
    if (c.is_zero()) continue;
    const CarlitzChain chain({(c * c).inv(), c, -c.inv()});
    Table F;
    for (const auto& d : f.elements()) F.push_back(eval_chain(chain, d) + d);
    const auto prof = value_profile(F);
    EXPECT_EQ(prof.count(0), 10u);
    EXPECT_EQ(prof.count(1), 2u);
    EXPECT_EQ(prof.count(11), 1u);
    EXPECT_EQ(prof.size(), 3u);
  }
}

TEST(ValueProfile, CountsAgreeWithDirectTally) {
  std::mt19937_64 rng(11);
  for (long long p : {5, 7, 11, 13, 17}) {
    Field f(p);
    std::uniform_int_distribution<std::uint64_t> pick(0, p - 1);
    for (int trial = 0; trial < 50; ++trial) {
      Table t;
      for (long long i = 0; i < p; ++i) t.push_back(f.element(pick(rng)));
      const auto prof = value_profile(t);
      std::map<std::uint32_t, std::size_t> m;
      for (const auto& v : t) ++m[v.code()];
      EXPECT_EQ(prof.size(), m.size());
      std::size_t total = 0;
      for (std::size_t i = 0; i < prof.counts.size(); ++i) total += prof.counts[i];
      EXPECT_EQ(total, std::size_t(p));
      std::size_t weighted = 0;
      for (std::size_t i = 0; i < prof.counts.size(); ++i) weighted += i * prof.counts[i];
      EXPECT_EQ(weighted, std::size_t(p));
      for (const auto& [code, k] : m) EXPECT_EQ(prof.multiplicity(f.element(code)), k);
    }
  }
}

TEST(Permutation, Examples) {
  Field f(13);
  EXPECT_TRUE(is_permutation(identity(f)));
  Table sq;
  for (const auto& x : f.elements()) sq.push_back(x * x);
  EXPECT_FALSE(is_permutation(sq));
  const auto inst = build_instance(LinearMap(f.from_int(12), f.from_int(2)), PoleSet(els(f, {0, 11, 9, 2})));
  EXPECT_TRUE(is_permutation(inst.f));
  EXPECT_FALSE(is_complete_mapping(inst));
}

TEST(Permutation, LinearCompleteMapping) {
  Field f(11);
  auto inst = build_instance(LinearMap(f.one(), f.one()), PoleSet(els(f, {0, 10})));
  inst.f = identity(f);
  inst.F.clear();
  for (const auto& x : f.elements()) inst.F.push_back(x + x);
  EXPECT_TRUE(is_complete_mapping(inst));
}

TEST(SumOfValues, Examples) {
  Field f(13);
  EXPECT_EQ(sum_of_values(identity(f)), f.zero());
  EXPECT_EQ(sum_of_values(Table(13, f.from_int(7))), f.zero());
  std::mt19937_64 rng(1);
  for (int t = 0; t < 100; ++t) {
    const auto all = f.elements();
    std::vector<Element> pool(all.begin() + 1, all.end());
    const Element a = pool[rng() % 12], b = pool[rng() % 12];
    const Element root = -b / a;
    std::erase(pool, root);
    std::shuffle(pool.begin(), pool.end(), rng);
    std::vector<Element> x{f.zero(), pool[0], pool[1], root};
    const auto inst = build_instance(LinearMap(a, b), PoleSet(x));
    EXPECT_EQ(sum_of_values(inst.F), f.zero());
  }
}

TEST(Interpolate, ReproducesTableByHorner) {
  std::mt19937_64 rng(99);
  for (const auto& f : {Field(5), Field(7), Field(13), Field(3, 2), Field(5, 2)}) {
    SCOPED_TRACE(f.describe());
    std::uniform_int_distribution<std::uint64_t> pick(0, f.size() - 1);
    for (int trial = 0; trial < 20; ++trial) {
      Table t;
      for (std::uint64_t i = 0; i < f.size(); ++i) t.push_back(f.element(pick(rng)));
      const auto coeffs = interpolate(t);
      EXPECT_LE(coeffs.size(), f.size());
      ASSERT_FALSE(coeffs.empty());
      if (coeffs.size() > 1) {
        EXPECT_FALSE(coeffs.back().is_zero());
      }
      for (const auto& x : f.elements()) EXPECT_EQ(horner(coeffs, x), t[x.code()]);
    }
  }
}

TEST(Interpolate, KnownPolynomials) {
  Field f(7);
  EXPECT_EQ(interpolate(identity(f)), els(f, {0, 1}));
  Table inv;
  for (const auto& x : f.elements()) inv.push_back(x.pow_qm2());
  EXPECT_EQ(interpolate(inv), els(f, {0, 0, 0, 0, 0, 1}));
  EXPECT_EQ(interpolate(Table(7, f.zero())), els(f, {0}));
}

TEST(Spectrum, InstanceCount) {
  EXPECT_EQ(exhaustive_instance_count(13, 2), 144u);
  EXPECT_EQ(exhaustive_instance_count(13, 6), 144u * 11 * 10 * 9 * 8);
}

TEST(Spectrum, TwoPolesExact) {
  for (const auto& f : {Field(5), Field(7), Field(3, 2), Field(11), Field(13)}) {
    const auto q = f.size();
    const auto rep = enumerate_spectrum(f, 2);
    EXPECT_EQ(rep.sizes(), (std::set<std::size_t>{3, q - 2})) << f.describe();
    EXPECT_EQ(rep.instances, (q - 1) * (q - 1));
  }
}

TEST(Spectrum, MatchesBruteForceWithCounts) {
  for (long long p : {5, 7, 11}) {
    for (std::size_t n : {2u, 3u, 4u}) {
      std::map<std::size_t, std::uint64_t> counts;
      const auto expect = brute_spectrum(p, n, &counts);
      const auto rep = enumerate_spectrum(Field(p), n);
      EXPECT_EQ(rep.sizes(), expect) << p << " " << n;
      EXPECT_EQ(rep.nonzero_sums, 0u);
      EXPECT_EQ(rep.dichotomy_violations, 0u);
      for (const auto& e : rep.entries) {
        ASSERT_TRUE(e.count.has_value());
        EXPECT_EQ(*e.count, counts[e.size]);
      }
    }
  }
}

TEST(Spectrum, WitnessesReproduceTheirSize) {
  Field f(13);
  const auto rep = enumerate_spectrum(f, 4);
  for (const auto& e : rep.entries) {
    const auto inst = build_instance(e.witness.g, e.witness.poles);
    EXPECT_EQ(value_profile(inst.F).size(), e.size);
    EXPECT_EQ(chain_table(e.witness.chain), inst.f);
  }
}

TEST(Spectrum, SizesRespectDichotomy) {
  for (const auto& [q, n] : std::vector<std::pair<long long, std::size_t>>{{7, 3}, {11, 3}, {13, 3}, {13, 4}}) {
    const auto rep = enumerate_spectrum(Field(q), n);
    for (auto s : rep.sizes()) {
      const bool small = s >= 2 && s <= n + 1;
      const bool large = s + n >= std::size_t(q) && s <= std::size_t(q) - 2;
      EXPECT_TRUE(small || large || s == std::size_t(q)) << q << " " << n << " " << s;
      EXPECT_NE(s, std::size_t(q) - 1);
    }
  }
}

TEST(Spectrum, WorkersDoNotChangeResult) {
  Field f(11);
  SpectrumOptions one, four;
  four.workers = 4;
  const auto a = enumerate_spectrum(f, 4, one), b = enumerate_spectrum(f, 4, four);
  ASSERT_EQ(a.entries.size(), b.entries.size());
  for (std::size_t i = 0; i < a.entries.size(); ++i) {
    EXPECT_EQ(a.entries[i].size, b.entries[i].size);
    EXPECT_EQ(a.entries[i].count, b.entries[i].count);
    EXPECT_EQ(a.entries[i].witness.g, b.entries[i].witness.g);
    EXPECT_EQ(a.entries[i].witness.poles, b.entries[i].witness.poles);
  }
  EXPECT_EQ(a.instances, b.instances);
}

TEST(Spectrum, SampleModeIsSeeded) {
  Field f(17);
  SpectrumOptions opts;
  opts.mode = SpectrumMode::Sample;
  opts.samples = 3000;
  opts.seed = 5;
  const auto a = enumerate_spectrum(f, 5, opts), b = enumerate_spectrum(f, 5, opts);
  EXPECT_EQ(a.sizes(), b.sizes());
  EXPECT_EQ(a.instances, 3000u);
  for (std::size_t i = 0; i < a.entries.size(); ++i) {
    EXPECT_EQ(a.entries[i].witness.poles, b.entries[i].witness.poles);
    EXPECT_FALSE(a.entries[i].count.has_value());
  }
  // Every sampled size is attainable.
  const auto full = enumerate_spectrum(f, 5, SpectrumOptions{.budget = 1'000'000'000});
  for (auto s : a.sizes()) EXPECT_TRUE(full.attains(s)) << s;
}

TEST(Spectrum, Errors) {
  Field f(13);
  EXPECT_EQ(code_of([&] { enumerate_spectrum(f, 1); }), ErrorCode::InvalidN);
  EXPECT_EQ(code_of([&] { enumerate_spectrum(f, 13); }), ErrorCode::InvalidN);
  EXPECT_EQ(code_of([&] { enumerate_spectrum(f, 6, SpectrumOptions{.budget = 1000}); }), ErrorCode::BudgetExceeded);
  EXPECT_EQ(code_of([&] { enumerate_spectrum(f, 3, SpectrumOptions{.mode = SpectrumMode::Sample, .samples = 1000, .budget = 100}); }),
            ErrorCode::BudgetExceeded);
}
