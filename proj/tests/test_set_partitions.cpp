#include <doctest.h>

#include <random>

#include "hw/errors.hpp"
#include "hw/set_partition.hpp"

using namespace hw;

namespace {

SetPartition sp(const std::string& s, int q) { return SetPartition::parse(s, q); }

// Moebius function of the partition lattice from its recursive definition.
long poset_moebius(const SetPartition& a, const SetPartition& b) {
  if (a == b) return 1;
  long s = 0;
  for (const auto& c : interval(a, b))
    if (c != b) s -= poset_moebius(a, c);
  return s;
}

}  // namespace

TEST_CASE("join, meet and orbits") {
  CHECK(join(SetPartition::finest(3), sp("1 2|3", 3)) == sp("1 2|3", 3));
  CHECK(join(sp("1 2|3", 3), sp("1|2 3", 3)) == SetPartition::coarsest(3));
  CHECK(meet(sp("1 2|3 4", 4), sp("1 3|2 4", 4)) == SetPartition::finest(4));
  CHECK(orbit_partition(Permutation::identity(4)) == SetPartition::finest(4));
  CHECK(orbit_partition(Permutation::full_cycle(4)) == SetPartition::coarsest(4));
  CHECK(orbit_partition(Permutation::parse("(1 3)", 3)) == sp("1 3|2", 3));
  CHECK(sp("3 1|4 2", 4).to_string() == "1 3|2 4");
  CHECK_THROWS_AS(sp("1 2|2 3", 3), ParseError);
  CHECK_THROWS_AS(sp("1 2", 3), ParseError);
  CHECK_THROWS_AS(join(SetPartition::finest(2), SetPartition::finest(3)), DegreeMismatchError);
}

TEST_CASE("lattice laws and enumeration") {
  const std::size_t bell[] = {1, 1, 2, 5, 15, 52};
  for (int q = 1; q <= 5; ++q) {
    auto all = all_set_partitions(q);
    CHECK(all.size() == bell[q]);
    CHECK(std::is_sorted(all.begin(), all.end()));
    for (const auto& a : all)
      for (const auto& b : all) {
        CHECK(join(a, b) == join(b, a));
        CHECK(meet(a, b) == meet(b, a));
        CHECK(join(a, meet(a, b)) == a);
        CHECK(meet(a, join(a, b)) == a);
        CHECK(a.refines(join(a, b)));
        CHECK(meet(a, b).refines(a));
        CHECK(a.refines(b) == (join(a, b) == b));
      }
    if (q <= 4)
      for (const auto& a : all)
        for (const auto& b : all)
          for (const auto& c : all) {
            CHECK(join(join(a, b), c) == join(a, join(b, c)));
            CHECK(meet(meet(a, b), c) == meet(a, meet(b, c)));
          }
  }
}

TEST_CASE("Moebius function") {
  CHECK(moebius(sp("1 2", 2), sp("1 2", 2)) == 1);
  CHECK(moebius(SetPartition::finest(2), SetPartition::coarsest(2)) == -1);
  CHECK(moebius(SetPartition::finest(3), SetPartition::coarsest(3)) == 2);
  CHECK_THROWS_AS(moebius(sp("1 2|3", 3), sp("1|2 3", 3)), PreconditionError);
  for (int q = 1; q <= 5; ++q) {
    auto all = all_set_partitions(q);
    for (const auto& a : all)
      for (const auto& b : all)
        if (a.refines(b)) CHECK(moebius(a, b) == poset_moebius(a, b));
    if (q >= 2) {
      long s = 0;
      for (const auto& a : all) s += moebius(a, SetPartition::coarsest(q));
      CHECK(s == 0);
    }
  }
}

TEST_CASE("cumulants") {
  // One variable A with E(A) = a, E(A^2) = b, E(A^3) = c.
  const BigRational a(2), b(7), c(-5);
  MomentAssignment<BigRational> same = [&](Block v) {
    switch (popcount(v)) {
      case 1: return a;
      case 2: return b;
      default: return c;
    }
  };
  CHECK(classical_cumulant(SetPartition::coarsest(1), same) == a);
  CHECK(classical_cumulant(SetPartition::coarsest(2), same) == b - a * a);
  CHECK(classical_cumulant(SetPartition::coarsest(3), same) == c - 3 * b * a + 2 * a * a * a);
  CHECK(e_pi(SetPartition::finest(2), same) == a * a);
  CHECK(relative_cumulant(SetPartition::coarsest(3), SetPartition::coarsest(3), same) == c);

  std::mt19937 rng(5);
  std::uniform_int_distribution<int> dist(-9, 9);
  for (int q = 1; q <= 5; ++q) {
    std::vector<BigRational> table(1U << q);
    for (auto& v : table) v = dist(rng);
    MomentAssignment<BigRational> m = [&](Block v) { return table[v]; };
    auto all = all_set_partitions(q);
    for (const auto& p1 : all)
      for (const auto& p2 : all) {
        if (!p1.refines(p2)) continue;
        BigRational s = 0;
        for (const auto& p : interval(p1, p2)) s += relative_cumulant(p1, p, m);
        CHECK(s == e_pi(p2, m));
      }
  }
}
