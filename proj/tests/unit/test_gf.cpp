#include <gtest/gtest.h>

#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "vsets/gf.hpp"

using namespace vsets;

namespace {

// Exponentiation by repeated multiplication, independent of Element::pow.
Element naive_pow(const Element& x, std::uint64_t e) {
  Element acc = x.field().one();
  for (std::uint64_t i = 0; i < e; ++i) acc = acc * x;
  return acc;
}

std::vector<Field> small_fields() {
  return {Field(5), Field(7), Field(11), Field(13), Field(17), Field(19), Field(23), Field(29), Field(31),
          Field(37), Field(41), Field(43), Field(47), Field(3, 2), Field(5, 2), Field(3, 3), Field(7, 2)};
}

}  // namespace

TEST(Field, PrimeFieldBasics) {
  Field f(13);
  EXPECT_EQ(f.characteristic(), 13u);
  EXPECT_EQ(f.degree(), 1u);
  EXPECT_EQ(f.size(), 13u);
  EXPECT_EQ(f.describe(), "F_13");
  EXPECT_EQ(f.elements().size(), 13u);
}

TEST(Field, DefaultModulusIsSmallestIrreducible) {
  Field f(5, 2);
  EXPECT_EQ(f.modulus(), (std::vector<std::uint32_t>{2, 0, 1}));
  EXPECT_EQ(f.describe(), "F_25[x]/(2,0,1)");
  // Oracle: the first monic quadratic x^2 + c1 x + c0 in code order with no root in F_5.
  std::vector<std::uint32_t> expect;
  for (int code = 0; code < 25 && expect.empty(); ++code) {
    int c0 = code % 5, c1 = code / 5;
    bool root = false;
    for (int x = 0; x < 5; ++x) root = root || (x * x + c1 * x + c0) % 5 == 0;
    if (!root) expect = {std::uint32_t(c0), std::uint32_t(c1), 1};
  }
  EXPECT_EQ(f.modulus(), expect);
}

TEST(Field, ElementReduction) {
  Field f(13);
  EXPECT_EQ(f.from_int(14), f.one());
  EXPECT_EQ(f.from_int(-1).code(), 12u);
  EXPECT_EQ(f.from_int(-27).code(), 12u);
}

TEST(Field, ConstructionErrors) {
  auto code_of = [](auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::ParseError;
  };
  EXPECT_EQ(code_of([] { Field(15); }), ErrorCode::NonPrimeCharacteristic);
  EXPECT_EQ(code_of([] { Field(2, 3); }), ErrorCode::EvenCharacteristic);
  EXPECT_EQ(code_of([] { Field(3); }), ErrorCode::FieldTooSmall);
  EXPECT_EQ(code_of([] { Field(5, 2, std::vector<long long>{1, 0, 1}); }), ErrorCode::ReducibleModulus);  // x^2+1 = (x-2)(x-3)
  EXPECT_EQ(code_of([] { Field(5, 2, std::vector<long long>{2, 0, 3}); }), ErrorCode::InvalidModulus);
  EXPECT_EQ(code_of([] { Field(5, 2, std::vector<long long>{2, 1}); }), ErrorCode::InvalidModulus);
  EXPECT_EQ(code_of([] { Field(13).element(13); }), ErrorCode::ParseError);
}

TEST(Field, CustomModulusAccepted) {
  Field f(5, 2, std::vector<long long>{3, 0, 1});  // x^2 + 3 has no root mod 5
  Element x = f.from_coeffs({0, 1});
  EXPECT_EQ(x * x, f.from_int(-3));
  EXPECT_FALSE(f == Field(5, 2));
}

TEST(Field, ElementsOrderAndCoefficients) {
  Field f5(5);
  std::vector<std::uint32_t> codes;
  for (const auto& e : f5.elements()) codes.push_back(e.code());
  EXPECT_EQ(codes, (std::vector<std::uint32_t>{0, 1, 2, 3, 4}));

  Field f25(5, 2);
  auto elems = f25.elements();
  ASSERT_EQ(elems.size(), 25u);
  std::set<std::uint32_t> distinct;
  for (const auto& e : elems) {
    EXPECT_EQ(e.coeffs().size(), 2u);
    distinct.insert(e.code());
  }
  EXPECT_EQ(distinct.size(), 25u);
  EXPECT_EQ(elems[7].coeffs(), (std::vector<std::uint32_t>{2, 1}));
  EXPECT_EQ(elems[7].to_string(), "[2,1]");
}

TEST(Arithmetic, SpecExamples) {
  Field f(13);
  EXPECT_EQ(f.from_int(7) * f.from_int(2), f.one());
  EXPECT_EQ(f.from_int(12) * f.from_int(9) + f.from_int(7), f.from_int(11));
  EXPECT_EQ(f.from_int(5) + f.zero(), f.from_int(5));
}

TEST(Arithmetic, MixedFieldsRejected) {
  Field a(13), b(11);
  try {
    (void)(a.one() + b.one());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::MixedFields);
  }
  // Two handles to the same field mix freely.
  EXPECT_EQ(Field(13).one() + Field(13).one(), a.from_int(2));
}

TEST(PowQm2, Examples) {
  Field f(13);
  EXPECT_EQ(pow_qm2(f.zero()), f.zero());
  EXPECT_EQ(pow_qm2(f.from_int(4)), f.from_int(10));
  EXPECT_EQ(pow_qm2(f.from_int(9)), f.from_int(3));
}

TEST(InvDiv, Examples) {
  Field f(13);
  EXPECT_EQ(inv(f.one()), f.one());
  EXPECT_EQ(div(f.from_int(11), f.from_int(2)), f.from_int(12));
  EXPECT_EQ(div(f.from_int(4), f.from_int(2)), f.from_int(2));
  try {
    (void)inv(f.zero());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DivisionByZero);
  }
  EXPECT_THROW((void)div(f.one(), f.zero()), Error);
}

TEST(Order, Examples) {
  Field f(13);
  EXPECT_EQ(order(f.one()), 1u);
  EXPECT_EQ(order(f.from_int(3)), 3u);
  EXPECT_EQ(order(f.from_int(5)), 4u);
  try {
    (void)order(f.zero());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ZeroHasNoOrder);
  }
}

// Exhaustive field axioms for every q <= 49.
TEST(FieldProperties, ExhaustiveAxiomsSmallFields) {
  for (const auto& f : small_fields()) {
    SCOPED_TRACE(f.describe());
    const auto q = f.size();
    const auto el = f.elements();
    for (const auto& x : el) {
      EXPECT_EQ(x + f.zero(), x);
      EXPECT_EQ(x * f.one(), x);
      EXPECT_EQ(x + (-x), f.zero());
      EXPECT_EQ(naive_pow(x, q), x);
      EXPECT_EQ(pow_qm2(x) * x, x.is_zero() ? f.zero() : f.one());
      EXPECT_EQ(pow_qm2(x), naive_pow(x, q - 2));
      if (!x.is_zero()) {
        const auto t = order(x);
        EXPECT_EQ((q - 1) % t, 0u);
        EXPECT_TRUE(naive_pow(x, t).is_one());
        for (std::uint64_t s = 1; s < t; ++s) EXPECT_FALSE(naive_pow(x, s).is_one());
      }
    }
    for (const auto& x : el)
      for (const auto& y : el) {
        EXPECT_EQ(x + y, y + x);
        EXPECT_EQ(x * y, y * x);
        EXPECT_EQ((x - y) + y, x);
        if (!y.is_zero()) {
          EXPECT_EQ(div(x, y) * y, x);
        }
      }
  }
}

TEST(FieldProperties, RandomTriples) {
  std::mt19937_64 rng(20240601);
  for (const auto& f : small_fields()) {
    SCOPED_TRACE(f.describe());
    std::uniform_int_distribution<std::uint64_t> pick(0, f.size() - 1);
    for (int i = 0; i < 2000; ++i) {
      const Element x = f.element(pick(rng)), y = f.element(pick(rng)), z = f.element(pick(rng));
      EXPECT_EQ((x + y) * z, x * z + y * z);
      EXPECT_EQ((x * y) * z, x * (y * z));
      EXPECT_EQ((x + y) + z, x + (y + z));
    }
  }
}

// Extension-field multiplication agrees with schoolbook polynomial product
// reduced by the modulus.
TEST(FieldProperties, ExtensionMulMatchesPolynomialOracle) {
  for (const auto& f : {Field(3, 2), Field(5, 2), Field(3, 3), Field(7, 2), Field(5, 3)}) {
    SCOPED_TRACE(f.describe());
    const auto p = f.characteristic();
    const auto r = f.degree();
    const auto& m = f.modulus();
    auto oracle = [&](const Element& x, const Element& y) {
      auto a = x.coeffs(), b = y.coeffs();
      std::vector<std::uint64_t> prod(2 * r - 1, 0);
      for (unsigned i = 0; i < r; ++i)
        for (unsigned j = 0; j < r; ++j) prod[i + j] = (prod[i + j] + std::uint64_t(a[i]) * b[j]) % p;
      for (std::size_t k = prod.size(); k-- > r;) {
        const auto lead = prod[k];
        for (unsigned i = 0; i <= r; ++i) prod[k - r + i] = (prod[k - r + i] + (p - lead) * m[i]) % p;
      }
      std::vector<long long> out(prod.begin(), prod.begin() + r);
      return f.from_coeffs(std::span<const long long>(out));
    };
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<std::uint64_t> pick(0, f.size() - 1);
    for (int i = 0; i < 3000; ++i) {
      const Element x = f.element(pick(rng)), y = f.element(pick(rng));
      EXPECT_EQ(x * y, oracle(x, y));
    }
  }
}
