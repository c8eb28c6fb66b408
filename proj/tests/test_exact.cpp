#include <doctest.h>

#include <random>

#include "hw/errors.hpp"
#include "hw/exact.hpp"

using namespace hw;

namespace {

RationalFunctionD rf(std::vector<long> num, std::vector<long> den) {
  std::vector<BigInt> n(num.begin(), num.end()), m(den.begin(), den.end());
  return {IntPoly(n), IntPoly(m)};
}

}  // namespace

TEST_CASE("rational function arithmetic is exact and reduced") {
  auto a = rf({1}, {-1, 1});  // 1/(d-1)
  auto b = rf({1}, {1, 1});   // 1/(d+1)
  CHECK(a + b == rf({0, 2}, {-1, 0, 1}));
  CHECK(rf({-1, 0, 1}, {-1, 1}) == rf({1, 1}, {1}));
  CHECK(RationalFunctionD::d_power(-1) * RationalFunctionD::d_power(-1) == RationalFunctionD::d_power(-2));
  CHECK((a - a).is_zero());
  CHECK_THROWS_AS(a / RationalFunctionD(0L), DivisionByZeroError);
  // Sign normalization: the denominator leading coefficient is positive.
  CHECK(rf({1}, {0, -1}) == rf({-1}, {0, 1}));
  CHECK(rf({2}, {0, 4}) == rf({1}, {0, 2}));
}

TEST_CASE("evaluation at integers") {
  CHECK(rf({-1}, {0, -1, 0, 1}).evaluate(BigInt(3)) == BigRational(-1, 24));
  CHECK(rf({1}, {-1, 0, 1}).evaluate(BigInt(2)) == BigRational(1, 3));
  CHECK(rf({0, 1}, {1}).evaluate(BigInt(7)) == BigRational(7));
  CHECK_THROWS_AS(rf({1}, {-1, 0, 1}).evaluate(BigInt(1)), PoleError);
}

TEST_CASE("Laurent expansion at infinity") {
  auto s = laurent_expand(rf({1}, {-1, 0, 1}), 6);
  for (int k = 0; k <= 6; ++k) CHECK(s.coefficient(k) == (k >= 2 && k % 2 == 0 ? 1 : 0));
  auto t = laurent_expand(rf({-1}, {0, -1, 0, 1}), 7);
  for (int k = 0; k <= 7; ++k) CHECK(t.coefficient(k) == (k >= 3 && k % 2 == 1 ? -1 : 0));
  auto u = laurent_expand(rf({1}, {0, 1}), 3);
  CHECK(u.coefficient(1) == 1);
  CHECK(u.coefficient(2) == 0);
  CHECK_THROWS_AS(laurent_expand(rf({0, 0, 1}, {0, 1}), 3), PreconditionError);
}

TEST_CASE("random round trips") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> c(-4, 4);
  auto random_poly = [&](int deg) {
    std::vector<BigInt> v;
    for (int i = 0; i <= deg; ++i) v.emplace_back(c(rng));
    if (v.back() == 0) v.back() = 1;
    return IntPoly(v);
  };
  for (int trial = 0; trial < 40; ++trial) {
    RationalFunctionD a(random_poly(2), random_poly(3));
    RationalFunctionD b(random_poly(1), random_poly(2));
    if (a.den().is_zero() || b.den().is_zero()) continue;
    CHECK((a + b) - b == a);
    if (!b.is_zero()) CHECK((a * b) / b == a);
    // Truncated series versus the exact value at d = 1000.
    const int order = 8;
    auto s = laurent_expand(a, order);
    const double exact = a.evaluate(1000.0);
    CHECK(std::abs(s.evaluate(1000.0) - exact) <= 1e-20 * 1e3 + std::abs(exact) * 1e-12 + 1e-24 * 1e6);
    CHECK(RationalFunctionD::from_json(a.to_json()) == a);
  }
}

TEST_CASE("rendering") {
  CHECK(RationalFunctionD::d_power(-2).to_string() == "d^-2");
  CHECK(rf({1}, {0, 0, 2}).to_string() == "1/2*d^-2");
  CHECK(rf({-4, 0, 3}, {0, 0, -1, 0, 1}).to_string() == "(3*d^2 - 4)/(d^4 - d^2)");
  CHECK(parse_rational("-3/6") == BigRational(-1, 2));
  CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
  CHECK_THROWS_AS(parse_rational("abc"), ParseError);
}
