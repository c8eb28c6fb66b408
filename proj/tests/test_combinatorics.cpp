#include <doctest.h>

#include <map>
#include <queue>

#include "hw/characters.hpp"
#include "hw/errors.hpp"
#include "hw/permutation.hpp"

using namespace hw;

namespace {

// Distance from the identity in the Cayley graph generated by transpositions.
std::map<Permutation, int> cayley_distances(int q) {
  std::vector<Permutation> transpositions;
  for (int a = 1; a <= q; ++a)
    for (int b = a + 1; b <= q; ++b) transpositions.push_back(Permutation::from_cycles(q, {{a, b}}));
  std::map<Permutation, int> dist{{Permutation::identity(q), 0}};
  std::queue<Permutation> todo;
  todo.push(Permutation::identity(q));
  while (!todo.empty()) {
    auto p = todo.front();
    todo.pop();
    for (const auto& t : transpositions) {
      auto n = p * t;
      if (dist.emplace(n, dist[p] + 1).second) todo.push(n);
    }
  }
  return dist;
}

}  // namespace

TEST_CASE("cycle types, norms and class sizes") {
  CHECK(cycle_type(Permutation::identity(3)) == IntegerPartition({1, 1, 1}));
  CHECK(cycle_type(Permutation::parse("(1 2)", 2)) == IntegerPartition({2}));
  CHECK(cycle_type(Permutation::parse("(1 2 3)(4 5)", 5)) == IntegerPartition({3, 2}));
  CHECK(norm(Permutation::identity(4)) == 0);
  CHECK(norm(Permutation::parse("(1 2)", 2)) == 1);
  CHECK(norm(Permutation::parse("(1 2 3)", 3)) == 2);
  CHECK(class_size(IntegerPartition({1, 1})) == 1);
  CHECK(class_size(IntegerPartition({2})) == 1);
  CHECK(class_size(IntegerPartition({2, 1})) == 3);
}

TEST_CASE("norm is the transposition distance") {
  for (int q = 1; q <= 5; ++q)
    for (const auto& [p, dist] : cayley_distances(q)) CHECK(p.norm() == dist);
}

TEST_CASE("permutation text round trip and composition") {
  auto p = Permutation::parse("(1 3)(2 4)", 5);
  CHECK(p.to_string() == "(1 3)(2 4)");
  CHECK(Permutation::parse("()", 3).is_identity());
  CHECK(Permutation::parse("", 3).is_identity());
  CHECK_THROWS_AS(Permutation::parse("(1 2", 3), ParseError);
  CHECK_THROWS_AS(Permutation::parse("(1 4)", 3), ParseError);
  CHECK_THROWS_AS(Permutation::parse("(1 2)(2 3)", 3), ParseError);
  // (a*b)(i) = a(b(i)): (1 2)*(2 3) sends 3 -> 2 -> 1.
  auto c = Permutation::parse("(1 2)", 3) * Permutation::parse("(2 3)", 3);
  CHECK(c(2) == 0);
  for (int q = 1; q <= 4; ++q) {
    auto all = all_permutations(q);
    for (std::size_t r = 0; r < all.size(); ++r) {
      CHECK(permutation_rank(all[r].images()) == r);
      CHECK(permutation_unrank(r, q) == all[r].images());
    }
  }
}

TEST_CASE("partitions") {
  CHECK(partitions_of(4).size() == 5);
  CHECK(partitions_of(4).front() == IntegerPartition({4}));
  CHECK(partitions_of(4).back() == IntegerPartition({1, 1, 1, 1}));
  CHECK(IntegerPartition::parse("(3,2,1)") == IntegerPartition({3, 2, 1}));
  CHECK(IntegerPartition({3, 1}).conjugate() == IntegerPartition({2, 1, 1}));
  CHECK_THROWS_AS(IntegerPartition::parse("3,-1"), ParseError);
}

TEST_CASE("characters") {
  CHECK(character(IntegerPartition({3}), IntegerPartition({2, 1})) == 1);
  CHECK(character(IntegerPartition({2, 1}), IntegerPartition({1, 1, 1})) == 2);
  CHECK(character(IntegerPartition({2, 1}), IntegerPartition({3})) == -1);
  CHECK_THROWS_AS(character(IntegerPartition({2, 1}), IntegerPartition({2})), DegreeMismatchError);
  for (int q = 1; q <= 6; ++q) {
    const auto& t = character_table(q);
    const auto n = t.partitions().size();
    const auto id_col = t.index_of(IntegerPartition(std::vector<int>(static_cast<std::size_t>(q), 1)));
    for (std::size_t a = 0; a < n; ++a) {
      CHECK(BigInt(t(a, id_col)) == hook_length_dimension(t.partitions()[a]));
      // Sign representation.
      if (t.partitions()[a] == IntegerPartition(std::vector<int>(static_cast<std::size_t>(q), 1)))
        for (std::size_t m = 0; m < n; ++m) CHECK(t(a, m) == (t.partitions()[m].norm() % 2 ? -1 : 1));
      for (std::size_t b = 0; b < n; ++b) {
        BigInt s = 0;
        for (std::size_t m = 0; m < n; ++m) s += t.class_sizes()[m] * t(a, m) * t(b, m);
        CHECK(s == (a == b ? factorial(q) : BigInt(0)));
      }
    }
  }
}

TEST_CASE("Schur dimensions two ways") {
  CHECK(schur_dimension(IntegerPartition({1})) == RationalFunctionD(IntPoly({0, 1}), IntPoly(1)));
  CHECK(schur_dimension(IntegerPartition({2})) == RationalFunctionD(IntPoly({0, 1, 1}), IntPoly(2)));
  CHECK(schur_dimension(IntegerPartition({1, 1})) == RationalFunctionD(IntPoly({0, -1, 1}), IntPoly(2)));
  for (int q = 1; q <= 6; ++q)
    for (const auto& l : partitions_of(q)) {
      CHECK(schur_dimension(l) == schur_dimension_hook_content(l));
      for (long d = 1; d <= 7; ++d) CHECK(schur_dimension(l).evaluate(BigInt(d)) == BigRational(schur_dimension_at(l, d)));
    }
}

TEST_CASE("Catalan numbers and Moeb") {
  CHECK(catalan(0) == 1);
  CHECK(catalan(4) == 14);
  CHECK(catalan(8) == 1430);
  for (int n = 1; n <= 10; ++n) {
    BigInt s = 0;
    for (int i = 0; i < n; ++i) s += catalan(i) * catalan(n - 1 - i);
    CHECK(s == catalan(n));
  }
  CHECK(moeb_perm(Permutation::identity(4)) == 1);
  CHECK(moeb_perm(Permutation::parse("(1 2)", 3)) == -1);
  CHECK(moeb_perm(Permutation::parse("(1 2 3)", 3)) == 2);
  for (int q = 1; q <= 5; ++q) {
    std::map<IntegerPartition, BigInt> by_class;
    for (const auto& p : all_permutations(q)) {
      auto [it, fresh] = by_class.emplace(cycle_type(p), moeb_perm(p));
      if (!fresh) CHECK(it->second == moeb_perm(p));
    }
  }
}
