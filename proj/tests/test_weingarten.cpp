#include <doctest.h>

#include <cstdio>
#include <functional>

#include "hw/characters.hpp"
#include "hw/errors.hpp"
#include "hw/weingarten.hpp"

using namespace hw;

namespace {

RationalFunctionD poly(std::vector<long> c) { return {IntPoly(std::vector<BigInt>(c.begin(), c.end())), IntPoly(1)}; }
RationalFunctionD inv(const RationalFunctionD& f) { return RationalFunctionD(1L) / f; }
IntegerPartition ip(std::vector<int> p) { return IntegerPartition(std::move(p)); }

// Brute force over tuples of non-identity permutations: returns the signed count of
// sigma sigma_1 ... sigma_k = e with total norm l; when `connect` is given, only
// tuples whose orbits join with it to 1_q are kept.
BigInt brute_tuples(const Permutation& sigma, int l, const SetPartition* connect) {
  const int q = sigma.degree();
  const auto all = all_permutations(q);
  BigInt total = 0;
  std::function<void(const Permutation&, int, int, SetPartition)> rec = [&](const Permutation& prod, int used, int k,
                                                                           SetPartition j) {
    if (used == l && prod.is_identity() && (!connect || j == SetPartition::coarsest(q))) total += (k % 2 ? -1 : 1);
    for (const auto& t : all) {
      if (t.is_identity() || used + t.norm() > l) continue;
      rec(prod * t, used + t.norm(), k + 1, join(j, orbit_partition(t)));
    }
  };
  rec(sigma, 0, 0, connect ? *connect : SetPartition::finest(q));
  return total;
}

}  // namespace

TEST_CASE("Weingarten table for q <= 3") {
  const auto d = poly({0, 1});
  const auto d2m1 = poly({-1, 0, 1});
  const auto d2m4 = poly({-4, 0, 1});
  CHECK(wg_ratfun(ip({1})) == inv(d));
  CHECK(wg_ratfun(ip({2})) == RationalFunctionD(-1L) / (d * d2m1));
  CHECK(wg_ratfun(ip({1, 1})) == inv(d2m1));
  CHECK(wg_ratfun(ip({3})) == RationalFunctionD(2L) / (d2m1 * d2m4 * d));
  CHECK(wg_ratfun(ip({2, 1})) == RationalFunctionD(-1L) / (d2m1 * d2m4));
  CHECK(wg_ratfun(ip({1, 1, 1})) == poly({-2, 0, 1}) / (d2m1 * d2m4 * d));
}

TEST_CASE("exact values and the stable range") {
  CHECK(wg(Permutation::identity(1), 5) == BigRational(1, 5));
  CHECK(wg(Permutation::parse("(1 2)", 2), 3) == BigRational(-1, 24));
  CHECK(wg(Permutation::identity(2), 2) == BigRational(1, 3));
  CHECK_THROWS_AS(wg(Permutation::identity(3), 2), StableRangeError);
  for (int q = 1; q <= 5; ++q)
    for (const auto& mu : partitions_of(q))
      for (long dd = q; dd <= q + 3; ++dd) {
        CHECK(wg(mu, dd) == wg_ratfun(mu).evaluate(BigInt(dd)));
        CHECK(wg_any_dimension(mu, dd) == wg(mu, dd));
      }
}

TEST_CASE("below the stable range the restricted sum still integrates monomials") {
  // At d = 1 every |U_11|^{2q} is 1, and the monomial integral is q! sum_rho Wg(rho).
  for (int q = 1; q <= 5; ++q) {
    BigRational s = 0;
    for (const auto& mu : partitions_of(q)) s += BigRational(class_size(mu)) * wg_any_dimension(mu, 1);
    CHECK(s * BigRational(factorial(q)) == 1);
  }
  // At d = 2, E|U_11|^{2q} = 1/(q+1).
  for (int q = 1; q <= 5; ++q) {
    BigRational s = 0;
    for (const auto& mu : partitions_of(q)) s += BigRational(class_size(mu)) * wg_any_dimension(mu, 2);
    CHECK(s * BigRational(factorial(q)) == BigRational(1, q + 1));
  }
}

TEST_CASE("full cycles") {
  for (int q = 1; q <= 6; ++q) {
    RationalFunctionD den(1L);
    for (int j = -q + 1; j <= q - 1; ++j) den *= poly({-j, 1});
    BigInt c = catalan(q - 1);
    if (q % 2 == 0) c = -c;
    CHECK(wg_ratfun(Permutation::full_cycle(q)) == RationalFunctionD(BigRational(c)) / den);
  }
}

TEST_CASE("Gram inversion") {
  for (int q = 1; q <= 4; ++q) {
    const auto all = all_permutations(q);
    for (long dd = q; dd <= q + 2; ++dd)
      for (const auto& s : all) {
        BigRational acc = 0;
        for (const auto& t : all) {
          BigInt pw;
          mpz_ui_pow_ui(pw.get_mpz_t(), static_cast<unsigned long>(dd), static_cast<unsigned long>((s * t.inverse()).cycle_count()));
          acc += BigRational(pw) * wg(t, dd);
        }
        CHECK(acc == (s.is_identity() ? 1 : 0));
      }
  }
}

TEST_CASE("parity, degree and leading order") {
  for (int q = 1; q <= 5; ++q)
    for (const auto& mu : partitions_of(q)) {
      auto f = wg_ratfun(mu) * RationalFunctionD::d_power(q + mu.norm());
      CHECK(f.is_even());
      CHECK(f.degree() <= 0);
      const auto s = Permutation::representative(mu);
      CHECK(laurent_coefficient(s, mu.norm(), LaurentMethod::expansion) == BigRational(moeb_perm(s)));
    }
}

TEST_CASE("factorization counts against brute force and expansion") {
  CHECK(laurent_coefficient(Permutation::identity(3), 0, LaurentMethod::enumeration) == 1);
  CHECK(laurent_coefficient(Permutation::parse("(1 2)", 2), 1, LaurentMethod::enumeration) == -1);
  for (int q = 1; q <= 3; ++q)
    for (const auto& s : all_permutations(q))
      for (int l = 0; l <= 4; ++l) CHECK(factorization_count(s, l).signed_total == brute_tuples(s, l, nullptr));
  for (int q = 1; q <= 4; ++q)
    for (const auto& mu : partitions_of(q)) {
      const auto s = Permutation::representative(mu);
      for (int l = 0; l <= 6; ++l)
        CHECK(laurent_coefficient(s, l, LaurentMethod::enumeration) == laurent_coefficient(s, l, LaurentMethod::expansion));
    }
  auto fc = factorization_count(Permutation::parse("(1 2)", 2), 3);
  CHECK(fc.per_k.size() == 4);
  CHECK(fc.per_k[3] == 1);
  CHECK(fc.per_k[1] == 0);
  CHECK_THROWS_AS(factorization_count(Permutation::identity(7), 2), CostGuardError);
  CHECK_THROWS_AS(factorization_count(Permutation::identity(3), 9), CostGuardError);
}

TEST_CASE("relative cumulants of Wg") {
  const auto e2 = Permutation::identity(2);
  CHECK(relative_cumulant_wg(SetPartition::coarsest(2), e2) == wg_ratfun(e2));
  auto c = relative_cumulant_wg(SetPartition::finest(2), e2);
  CHECK(c == inv(poly({0, 0, -1, 0, 1})));
  CHECK(c.degree() == -4);
  CHECK_THROWS_AS(relative_cumulant_wg(SetPartition::finest(2), Permutation::parse("(1 2)", 2)), PreconditionError);
}

TEST_CASE("transitive counts") {
  CHECK(gamma_transitive(Permutation::identity(1), SetPartition::coarsest(1), 0) == 1);
  for (int l = 1; l <= 4; ++l) CHECK(gamma_transitive(Permutation::identity(1), SetPartition::coarsest(1), l) == 0);
  CHECK(gamma_transitive(Permutation::parse("(1 2)", 2), SetPartition::coarsest(2), 1) == -1);
  for (int q = 1; q <= 3; ++q)
    for (const auto& s : all_permutations(q))
      for (const auto& pi : all_set_partitions(q)) {
        if (!orbit_partition(s).refines(pi)) continue;
        for (int l = 0; l <= 4; ++l) CHECK(gamma_transitive(s, pi, l) == brute_tuples(s, l, &pi));
      }
  for (int q = 1; q <= 3; ++q)
    for (const auto& s : all_permutations(q))
      for (const auto& pi : all_set_partitions(q)) {
        if (!orbit_partition(s).refines(pi)) continue;
        const auto series = laurent_expand(relative_cumulant_wg(pi, s), q + 8);
        for (int l = 0; l <= 8; ++l) CHECK(series.coefficient(q + l) == BigRational(gamma_transitive(s, pi, l)));
      }
}

TEST_CASE("closed-form leading orders") {
  CHECK(schaeffer_leading(Permutation::identity(2), SetPartition::finest(2)) == 1);
  // The third classical cumulant of the diagonal entries starts at 8 d^-7.
  CHECK(schaeffer_leading(Permutation::identity(3), SetPartition::finest(3)) == 8);
  CHECK(schaeffer_leading(Permutation::full_cycle(3), SetPartition::coarsest(3)) == 2);
  CHECK(schaeffer_leading(Permutation::parse("(1 2)", 2), SetPartition::coarsest(2)) == -1);
  for (int q = 1; q <= 4; ++q)
    for (const auto& s : all_permutations(q))
      for (const auto& pi : all_set_partitions(q)) {
        if (!orbit_partition(s).refines(pi)) continue;
        const int l = leading_order(s, pi);
        for (int below = 0; below < l; ++below) CHECK(gamma_transitive(s, pi, below) == 0);
        CHECK(BigRational(gamma_transitive(s, pi, l)) == schaeffer_leading(s, pi));
      }
}

TEST_CASE("cache file round trip") {
  for (int q = 1; q <= 4; ++q)
    for (const auto& mu : partitions_of(q)) wg_ratfun(mu);
  const std::string path = "hw_wg_cache_test.bin";
  CHECK(save_wg_cache(path));
  CHECK(load_wg_cache(path));
  {
    std::FILE* f = std::fopen(path.c_str(), "r+b");
    REQUIRE(f);
    std::fseek(f, 4, SEEK_SET);
    const unsigned char bad[4] = {99, 0, 0, 0};
    std::fwrite(bad, 1, 4, f);
    std::fclose(f);
  }
  CHECK_FALSE(load_wg_cache(path));
  std::remove(path.c_str());
  CHECK_FALSE(load_wg_cache(path));
}
