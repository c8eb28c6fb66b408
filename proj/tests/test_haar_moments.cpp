#include <doctest.h>

#include <functional>
#include <random>

#include "hw/errors.hpp"
#include "hw/haar_moments.hpp"

using namespace hw;

namespace {

RationalFunctionD poly(std::vector<long> c) { return {IntPoly(std::vector<BigInt>(c.begin(), c.end())), IntPoly(1)}; }

RationalFunctionD ratfun(const std::string& w) { return word_expectation_ratfun(Word::parse(w)); }

RationalMatrix random_matrix(long d, std::mt19937& rng) {
  std::uniform_int_distribution<int> dist(-3, 3);
  RationalMatrix m = RationalMatrix::identity(d);
  for (auto& x : m.a) {
    x = BigRational(dist(rng), 1 + (dist(rng) + 3) % 2);
    x.canonicalize();
  }
  return m;
}

// Sum over all index assignments of the word, each unitary integrated
// independently with the monomial formula.
BigRational index_sum_oracle(const Word& w, const ConstantMatrices& cm, long d) {
  const auto traces = w.traces();
  std::size_t n = 0;
  for (const auto& t : traces) n += t.size();
  std::vector<int> idx(n, 0);
  BigRational total = 0;
  std::function<void(std::size_t)> rec = [&](std::size_t pos) {
    if (pos < n) {
      for (int v = 0; v < d; ++v) {
        idx[pos] = v;
        rec(pos + 1);
      }
      return;
    }
    BigRational val = 1;
    std::map<std::string, MonomialSpec> specs;
    std::size_t base = 0;
    for (const auto& t : traces) {
      for (std::size_t k = 0; k < t.size(); ++k) {
        const int a = idx[base + k], b = idx[base + (k + 1) % t.size()];
        const Letter& l = t[k];
        if (l.kind == Letter::Kind::constant) {
          RationalMatrix m = cm.at(l.name);
          if (l.centered) {
            const BigRational t = m.trace();
            for (long k = 0; k < d; ++k) m(k, k) -= t;
          }
          val *= l.adjoint ? m(b, a) : m(a, b);
        } else {
          auto& s = specs[l.name];
          s.d = d;
          if (l.exponent > 0) {
            s.i.push_back(a + 1);
            s.j.push_back(b + 1);
          } else {
            s.ip.push_back(b + 1);
            s.jp.push_back(a + 1);
          }
        }
        if (val == 0) return;
      }
      base += t.size();
    }
    for (const auto& [name, s] : specs) {
      val *= monomial_integral(s);
      if (val == 0) return;
    }
    total += val;
  };
  rec(0);
  for (std::size_t t = 0; t < traces.size(); ++t) total /= BigRational(d);
  return total;
}

}  // namespace

TEST_CASE("monomial integrals") {
  CHECK(monomial_integral({{1}, {1}, {1}, {1}, 4}) == BigRational(1, 4));
  CHECK(monomial_integral({{1, 2}, {1, 2}, {1, 2}, {1, 2}, 4}) == BigRational(1, 15));
  CHECK(monomial_integral({{1, 1}, {1, 2}, {1, 1}, {1, 2}, 2}) == BigRational(1, 6));
  CHECK(monomial_integral({{1}, {1}, {2}, {1}, 3}) == 0);
  CHECK(monomial_integral({{1, 1}, {1, 1}, {1}, {1}, 3}) == 0);
  CHECK_THROWS_AS(monomial_integral({{1, 1, 1}, {1, 1, 1}, {1, 1, 1}, {1, 1, 1}, 2}), StableRangeError);
  CHECK_THROWS_AS(monomial_integral({{5}, {1}, {1}, {1}, 3}), PreconditionError);
  // Row sums of |U_1j|^2 and orthogonality of rows.
  for (long d = 2; d <= 4; ++d) {
    BigRational s = 0;
    for (int j = 1; j <= d; ++j) s += monomial_integral({{1}, {j}, {1}, {j}, d});
    CHECK(s == 1);
    BigRational s2 = 0;
    for (int j = 1; j <= d; ++j)
      for (int k = 1; k <= d; ++k) s2 += monomial_integral({{1, 1}, {j, k}, {1, 1}, {j, k}, d});
    CHECK(s2 == 1);
  }
}

TEST_CASE("word parsing") {
  auto w = Word::parse("U^2 V U*^2 V*");
  CHECK(w.letters().size() == 6);
  CHECK(w.to_string() == "U U V U* U* V*");
  CHECK(w.balanced());
  CHECK_FALSE(Word::parse("U U V*").balanced());
  auto m = Word::parse("(U A U*) (U B~ U*)");
  CHECK(m.traces().size() == 2);
  CHECK(m.to_string() == "(U A U*) (U B~ U*)");
  CHECK_THROWS_AS(Word::parse(""), ParseError);
  CHECK_THROWS_AS(Word::parse("U (A)"), ParseError);
  CHECK_THROWS_AS(Word::parse("U ( A"), ParseError);
  CHECK_THROWS_AS(Word::parse("U~ U*"), ParseError);
  CHECK_THROWS_AS(Word::parse("U $"), ParseError);
}

TEST_CASE("commutator words") {
  const auto d = poly({0, 1});
  const auto d2 = d * d;
  const auto d2m1 = poly({-1, 0, 1});
  CHECK(ratfun("U V U* V*") == RationalFunctionD(1L) / d2);
  CHECK(ratfun("U^2 V U*^2 V*") == RationalFunctionD(2L) / d2);
  CHECK(ratfun("U V U V U* V* U* V*") == RationalFunctionD(2L) / d2);
  CHECK(ratfun("U^2 V^2 U*^2 V*^2") == poly({-4, 0, 3}) / (d2 * d2m1));
  CHECK(ratfun("U^3 V U*^3 V*") == RationalFunctionD(3L) / d2);
  CHECK(ratfun("U V U* V* U V U* V*") == RationalFunctionD(-4L) / (d2 * d2m1));
  CHECK(ratfun("U U*") == RationalFunctionD(1L));
  CHECK(word_expectation(Word::parse("U V U*")).vanishes);
}

TEST_CASE("symbolic brackets") {
  // E tr(U A U* B) = tr(A) tr(B).
  auto r = word_expectation(Word::parse("U A U* B"));
  CHECK(r.value == TracePolynomial::monomial(SymbolMonomial{{"tr(A)", "tr(B)"}}));
  // Centered letters conjugated by independent unitaries are asymptotically free.
  auto f = freeness_defect(Word::parse("U A~ U* B~ U A~ U* B~"));
  CHECK(max_degree(f) <= -1);
  CHECK_FALSE(f.is_zero());
  auto c = exact_covariance(Word::parse("U A U*"), Word::parse("U B U*"));
  CHECK(max_degree(c) <= -2);
  CHECK(word_expectation(Word::parse("U I~ U* B")).value.is_zero());
}

TEST_CASE("words against the index-sum oracle") {
  std::mt19937 rng(11);
  const std::vector<std::string> words = {
      "U A U* B",          "U A U B U* C U* D", "U A~ U* B~",     "(U A U*) (U B U*)", "U V A U* V* B",
      "U A U* V B V*",     "U^2 A U*^2 B",      "A U B* U* C",    "U A U* B U C U* D", "(U A) (U* B)",
      "U V U* V*",         "U A~ U* A~ U A U*", "(A B*) (U C U*)",
  };
  for (const auto& text : words) {
    const Word w = Word::parse(text);
    for (long d = 2; d <= 3; ++d) {
      int most = 0;
      std::map<std::string, int> per;
      for (const auto& l : w.letters())
        if (l.kind == Letter::Kind::unitary && l.exponent > 0) most = std::max(most, ++per[l.name]);
      if (most > d) continue;
      ConstantMatrices cm;
      for (const char* name : {"A", "B", "C", "D"}) cm[name] = random_matrix(d, rng);
      INFO(text, " d=", d);
      const BigRational oracle = index_sum_oracle(w, cm, d);
      CHECK(word_expectation_at(w, cm, d) == oracle);
      CHECK(evaluate_trace_polynomial(word_expectation(w).value, cm, d) == oracle);
    }
  }
}

TEST_CASE("relabelling and below the stable range") {
  CHECK(ratfun("U1 V2 U1* V2*") == ratfun("V U U* V*") + ratfun("U V U* V*") - RationalFunctionD(1L));
  CHECK(ratfun("U^2 V U*^2 V*") == ratfun("V^2 U V*^2 U*"));
  // d = 1: every unitary is a phase and every word is 1.
  CHECK(word_expectation_at(Word::parse("U^3 V U*^3 V*"), {}, 1) == 1);
  CHECK(word_expectation_at(Word::parse("U^2 U*^2"), {}, 1) == 1);
  CHECK_THROWS_AS(word_expectation_at(Word::parse("U A U*"), {}, 2), PreconditionError);
  CHECK_THROWS_AS(word_expectation_ratfun(Word::parse("U A U*")), PreconditionError);
}
