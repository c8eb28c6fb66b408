#include <doctest.h>

#include <random>
#include <set>

#include "hw/free_probability.hpp"
#include "hw/polynomial.hpp"

using namespace hw;

namespace {

SetPartition sp(const std::string& s, int q) { return SetPartition::parse(s, q); }

std::vector<BigRational> random_moments(int n, std::mt19937& rng) {
  std::uniform_int_distribution<int> dist(-6, 6);
  std::vector<BigRational> m;
  for (int k = 0; k < n; ++k) {
    m.emplace_back(dist(rng), 1 + (dist(rng) + 6) % 3);
    m.back().canonicalize();
  }
  return m;
}

}  // namespace

TEST_CASE("noncrossing partitions") {
  CHECK(enumerate_nc(1).size() == 1);
  CHECK(enumerate_nc(3).size() == 5);
  CHECK(enumerate_nc(4).size() == 14);
  for (int q = 1; q <= 10; ++q) {
    const auto nc = enumerate_nc(q);
    CHECK(BigInt(static_cast<long>(nc.size())) == catalan(q));
    CHECK(std::set<SetPartition>(nc.begin(), nc.end()).size() == nc.size());
  }
  for (int q = 1; q <= 6; ++q) {
    std::size_t count = 0;
    for (const auto& p : all_set_partitions(q)) count += is_noncrossing(p);
    CHECK(count == enumerate_nc(q).size());
  }
  CHECK_FALSE(is_noncrossing(sp("1 3|2 4", 4)));
  CHECK_THROWS_AS(enumerate_nc(13), CostGuardError);
}

TEST_CASE("geodesic permutations") {
  CHECK(geodesic_permutation(SetPartition::finest(4)).is_identity());
  CHECK(geodesic_permutation(SetPartition::coarsest(5)) == Permutation::full_cycle(5));
  CHECK(geodesic_permutation(sp("1 3|2", 3)) == Permutation::parse("(1 3)", 3));
  CHECK_THROWS_AS(geodesic_permutation(sp("1 3|2 4", 4)), PreconditionError);
  for (int q = 1; q <= 6; ++q) {
    const auto z = Permutation::full_cycle(q);
    std::set<Permutation> geodesics, images;
    for (const auto& t : all_permutations(q))
      if (t.norm() + (z * t.inverse()).norm() == q - 1) geodesics.insert(t);
    for (const auto& v : enumerate_nc(q)) {
      const auto r = geodesic_permutation(v);
      CHECK(orbit_partition(r) == v);
      images.insert(r);
    }
    CHECK(geodesics == images);
  }
}

TEST_CASE("Kreweras complement") {
  CHECK(kreweras(SetPartition::finest(4)) == SetPartition::coarsest(4));
  CHECK(kreweras(SetPartition::coarsest(4)) == SetPartition::finest(4));
  CHECK(kreweras(sp("1 2|3 4", 4)) == sp("1|2 4|3", 4));
  for (int q = 1; q <= 7; ++q) {
    const auto nc = enumerate_nc(q);
    std::set<SetPartition> seen;
    for (const auto& p : nc) {
      const auto k = kreweras(p);
      CHECK(is_noncrossing(k));
      CHECK(p.block_count() + k.block_count() == q + 1);
      seen.insert(k);
      for (const auto& o : nc)
        if (p.refines(o)) CHECK(kreweras(o).refines(k));
    }
    CHECK(seen.size() == nc.size());
  }
}

TEST_CASE("free cumulants") {
  const BigRational a(3, 2), b(5), c(-7, 3);
  const std::vector<BigRational> m = {a, b, c};
  for (auto route : {CumulantRoute::poset_moebius, CumulantRoute::kreweras}) {
    CHECK(free_cumulant(1, m, route) == a);
    CHECK(free_cumulant(2, m, route) == b - a * a);
    CHECK(free_cumulant(3, m, route) == c - 3 * a * b + 2 * a * a * a);
  }
  CHECK_THROWS_AS(free_cumulant(4, m), PreconditionError);

  std::mt19937 rng(3);
  for (int trial = 0; trial < 3; ++trial) {
    const auto mm = random_moments(8, rng);
    CHECK(r_transform_coefficients(mm, 8, CumulantRoute::poset_moebius) == r_transform_coefficients(mm, 8));
    CHECK(moments_from_cumulants(r_transform_coefficients(mm, 8), 8) == mm);
  }

  // Point mass: only k_1 survives. Semicircle: only k_2.
  std::vector<BigRational> point, semi;
  for (int k = 1; k <= 8; ++k) {
    point.push_back(BigRational(2) * BigRational(k == 1 ? 1 : 1 << (k - 1)));
    semi.push_back(k % 2 ? BigRational(0) : BigRational(catalan(k / 2)));
  }
  const auto kp = r_transform_coefficients(point, 8);
  const auto ks = r_transform_coefficients(semi, 8);
  for (int q = 1; q <= 8; ++q) {
    CHECK(kp[static_cast<std::size_t>(q - 1)] == (q == 1 ? 2 : 0));
    CHECK(ks[static_cast<std::size_t>(q - 1)] == (q == 2 ? 1 : 0));
  }
}

TEST_CASE("free additivity through the moment side") {
  // Moments of X + Y for free X, Y: sum over NC(n) of products of k_X + k_Y.
  std::mt19937 rng(8);
  const auto kx = random_moments(5, rng), ky = random_moments(5, rng);
  std::vector<BigRational> ksum;
  for (std::size_t k = 0; k < 5; ++k) ksum.push_back(kx[k] + ky[k]);
  const auto m = moments_from_cumulants(ksum, 5);
  const auto back = r_transform_coefficients(m, 5);
  for (std::size_t k = 0; k < 5; ++k) CHECK(back[k] == kx[k] + ky[k]);
}

TEST_CASE("symbolic moments") {
  std::vector<MomentPolynomial> y;
  for (int k = 1; k <= 4; ++k) y.push_back(y_symbol(k));
  const auto k3 = free_cumulant(3, y);
  CHECK(k3 == y[2] - MomentPolynomial(3L) * y[0] * y[1] + MomentPolynomial(2L) * y[0] * y[0] * y[0]);
  CHECK(free_cumulant(4, y, CumulantRoute::poset_moebius) == free_cumulant(4, y));
}
