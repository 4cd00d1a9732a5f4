#include <gtest/gtest.h>

#include <vector>

#include "cdc/field.hpp"

using cdc::Field;
using cdc::FieldElement;

namespace {

// Polynomial arithmetic over F_p on digit vectors, reduced by a given monic modulus.
std::vector<int> digits(std::uint32_t a, int p, int e) {
  std::vector<int> d(e);
  for (int i = 0; i < e; ++i) {
    d[i] = static_cast<int>(a % p);
    a /= p;
  }
  return d;
}

std::uint32_t pack(const std::vector<int>& d, int p) {
  std::uint32_t a = 0;
  for (auto it = d.rbegin(); it != d.rend(); ++it) a = a * p + *it;
  return a;
}

std::uint32_t slow_mul(std::uint32_t a, std::uint32_t b, int p, const std::vector<int>& modulus) {
  const int e = static_cast<int>(modulus.size()) - 1;
  auto x = digits(a, p, e), y = digits(b, p, e);
  std::vector<int> prod(2 * e, 0);
  for (int i = 0; i < e; ++i)
    for (int j = 0; j < e; ++j) prod[i + j] = (prod[i + j] + x[i] * y[j]) % p;
  for (int deg = 2 * e - 1; deg >= e; --deg) {
    const int c = prod[deg];
    if (!c) continue;
    for (int i = 0; i <= e; ++i) prod[deg - e + i] = ((prod[deg - e + i] - c * modulus[i]) % p + p) % p;
  }
  prod.resize(e);
  return pack(prod, p);
}

bool has_root_or_factor(const std::vector<int>& f, int p) {
  // brute force: try every monic divisor of degree 1..deg/2
  const int n = static_cast<int>(f.size()) - 1;
  for (int deg = 1; deg <= n / 2; ++deg) {
    std::uint32_t count = 1;
    for (int i = 0; i < deg; ++i) count *= p;
    for (std::uint32_t c = 0; c < count; ++c) {
      std::vector<int> g = digits(c, p, deg);
      g.push_back(1);
      std::vector<int> r = f;
      for (int top = n; top >= deg; --top) {
        const int k = r[top];
        if (!k) continue;
        for (int i = 0; i <= deg; ++i) r[top - deg + i] = ((r[top - deg + i] - k * g[i]) % p + p) % p;
      }
      bool zero = true;
      for (int i = 0; i < deg; ++i) zero = zero && r[i] == 0;
      if (zero) return true;
    }
  }
  return false;
}

struct Case {
  int p;
  int e;
};

class FieldAxioms : public ::testing::TestWithParam<Case> {};

TEST_P(FieldAxioms, MatchesSlowPolynomialArithmetic) {
  const auto [p, e] = GetParam();
  const Field f = Field::create(p, e);
  ASSERT_EQ(f.characteristic(), static_cast<std::uint64_t>(p));
  ASSERT_EQ(f.degree(), static_cast<std::uint32_t>(e));
  const auto mod_span = f.modulus();
  std::vector<int> modulus(mod_span.begin(), mod_span.end());
  ASSERT_EQ(static_cast<int>(modulus.size()), e + 1);
  if (e > 1) EXPECT_FALSE(has_root_or_factor(modulus, p));
  for (std::uint32_t a = 0; a < f.order(); ++a) {
    for (std::uint32_t b = 0; b < f.order(); ++b) {
      auto da = digits(a, p, e), db = digits(b, p, e);
      std::vector<int> sum(e);
      for (int i = 0; i < e; ++i) sum[i] = (da[i] + db[i]) % p;
      ASSERT_EQ(f.add(a, b), pack(sum, p));
      ASSERT_EQ(f.mul(a, b), e == 1 ? (a * b) % p : slow_mul(a, b, p, modulus)) << a << "*" << b;
      ASSERT_EQ(f.add(f.sub(a, b), b), a);
    }
    if (a) ASSERT_EQ(f.mul(a, f.inv(a)), 1u);
  }
}

INSTANTIATE_TEST_SUITE_P(SmallFields, FieldAxioms,
                         ::testing::Values(Case{2, 1}, Case{3, 1}, Case{5, 1}, Case{7, 1}, Case{2, 2},
                                           Case{2, 3}, Case{2, 4}, Case{3, 2}, Case{5, 2}, Case{3, 3}));

TEST(Field, ModulusIsSmallestIrreducible) {
  // x^3 + x + 1 over F_2, x^2 + x + 1, x^4 + x + 1, x^2 + 1 over F_3
  EXPECT_EQ(std::vector<std::uint32_t>(Field::create(2, 3).modulus().begin(), Field::create(2, 3).modulus().end()),
            (std::vector<std::uint32_t>{1, 1, 0, 1}));
  auto m4 = Field::create(2, 2).modulus();
  EXPECT_EQ(std::vector<std::uint32_t>(m4.begin(), m4.end()), (std::vector<std::uint32_t>{1, 1, 1}));
  auto m16 = Field::create(2, 4).modulus();
  EXPECT_EQ(std::vector<std::uint32_t>(m16.begin(), m16.end()), (std::vector<std::uint32_t>{1, 1, 0, 0, 1}));
  auto m9 = Field::create(3, 2).modulus();
  EXPECT_EQ(std::vector<std::uint32_t>(m9.begin(), m9.end()), (std::vector<std::uint32_t>{1, 0, 1}));
}

TEST(Field, Gf4Table) {
  const Field f = Field::of_order(4);
  // x * x = x + 1, x * (x + 1) = 1, (x + 1)^2 = x
  EXPECT_EQ(f.mul(2, 2), 3u);
  EXPECT_EQ(f.mul(2, 3), 1u);
  EXPECT_EQ(f.mul(3, 3), 2u);
  EXPECT_EQ(f.add(2, 3), 1u);
}

TEST(Field, MultiplicativeGroupIsCyclic) {
  for (std::uint64_t q : {4u, 8u, 9u, 16u, 25u, 27u, 32u, 49u, 64u, 81u, 128u, 256u}) {
    const Field f = Field::of_order(q);
    bool found = false;
    for (std::uint32_t g = 2; g < q && !found; ++g) {
      std::uint32_t x = 1, order = 0;
      do {
        x = f.mul(x, g);
        ++order;
      } while (x != 1);
      found = order == q - 1;
    }
    EXPECT_TRUE(found) << q;
  }
}

TEST(Field, FrobeniusFixesBaseField) {
  const Field f = Field::of_order(64);
  std::size_t fixed = 0;
  for (std::uint32_t a = 0; a < 64; ++a) {
    EXPECT_EQ(f.pow(a, 64), a);
    if (f.pow(a, 2) == a) ++fixed;
  }
  EXPECT_EQ(fixed, 2u);
}

TEST(Field, TowerCoordinatesRoundTrip) {
  const Field base = Field::of_order(4);
  const cdc::Extension ext = cdc::extension_embed(base, 3);
  EXPECT_EQ(ext.field.order(), 64u);
  for (std::uint32_t a = 0; a < 64; ++a) {
    const auto c = ext.coordinates(a);
    ASSERT_EQ(c.size(), 3u);
    for (auto x : c) EXPECT_LT(x, 4u);
    EXPECT_EQ(ext.element(c), a);
  }
  // base field addition agrees with digit-wise extension addition
  for (std::uint32_t a = 0; a < 64; ++a)
    for (std::uint32_t b = 0; b < 64; ++b) {
      auto ca = ext.coordinates(a), cb = ext.coordinates(b), cs = ext.coordinates(ext.field.add(a, b));
      for (int i = 0; i < 3; ++i) ASSERT_EQ(cs[i], base.add(ca[i], cb[i]));
    }
}

TEST(Field, LargeExtensionWithoutTables) {
  const Field big = Field::create(2, 20, cdc::kExtensionFieldCap);
  const Field::Repr a = 0x5a5a5, b = 0x12345;
  EXPECT_EQ(big.mul(a, big.inv(a)), 1u);
  EXPECT_EQ(big.mul(big.mul(a, b), big.inv(b)), a);
  EXPECT_EQ(big.pow(a, big.order() - 1), 1u);
}

TEST(Field, Errors) {
  EXPECT_THROW(Field::create(4, 1), cdc::ParameterError);
  EXPECT_THROW(Field::create(2, 0), cdc::ParameterError);
  EXPECT_THROW(Field::of_order(6), cdc::ParameterError);
  EXPECT_THROW(Field::of_order(1 << 17), cdc::CapExceeded);
  EXPECT_THROW(Field::prime(5).inv(0), cdc::Error);
}

TEST(FieldElement, OperatorsAndMismatch) {
  const Field f = Field::of_order(8);
  FieldElement a(f, 3), b(f, 5);
  EXPECT_EQ((a * b) / b, a);
  EXPECT_EQ(a + a, FieldElement(f, 0));
  EXPECT_EQ(-a + a, FieldElement(f, 0));
  EXPECT_THROW(a + FieldElement(Field::of_order(4), 1), cdc::ParameterError);
}

}  // namespace
