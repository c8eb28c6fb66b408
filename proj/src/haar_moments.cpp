#include "hw/haar_moments.hpp"

#include <algorithm>
#include <climits>
#include <functional>
#include <numeric>
#include <regex>
#include <set>
#include <sstream>

#include "hw/errors.hpp"
#include "hw/weingarten.hpp"

namespace hw {

// ------------------------------------------------------------ monomials

BigRational monomial_integral(const MonomialSpec& s) {
  if (s.i.size() != s.j.size() || s.ip.size() != s.jp.size())
    throw PreconditionError("row and column index sequences must have equal lengths");
  for (const auto* v : {&s.i, &s.j, &s.ip, &s.jp})
    for (int x : *v)
      if (x < 1 || x > s.d) throw PreconditionError("index " + std::to_string(x) + " outside 1.." + std::to_string(s.d));
  if (s.i.size() != s.ip.size()) return 0;
  const int q = static_cast<int>(s.i.size());
  if (s.d < q) throw StableRangeError("monomial integral needs d >= q");
  std::vector<Permutation> rows, cols;
  for (const auto& p : all_permutations(q)) {
    bool r = true, c = true;
    for (int k = 0; k < q; ++k) {
      const auto uk = static_cast<std::size_t>(k), pk = static_cast<std::size_t>(p(k));
      r = r && s.i[uk] == s.ip[pk];
      c = c && s.j[uk] == s.jp[pk];
    }
    if (r) rows.push_back(p);
    if (c) cols.push_back(p);
  }
  BigRational acc = 0;
  for (const auto& sg : rows)
    for (const auto& t : cols) acc += wg(sg * t.inverse(), s.d);
  return acc;
}

// ----------------------------------------------------------------- words

std::string Letter::to_string() const {
  std::string s = name;
  if (kind == Kind::unitary ? exponent < 0 : adjoint) s += "*";
  if (centered) s += "~";
  return s;
}

Word::Word(std::vector<Letter> letters, Permutation alpha) : letters_(std::move(letters)), alpha_(std::move(alpha)) {
  if (static_cast<int>(letters_.size()) != alpha_.degree())
    throw DegreeMismatchError("trace pattern and word have different lengths");
  if (letters_.empty()) throw PreconditionError("empty word");
}

namespace {

bool is_unitary_name(const std::string& n) { return std::regex_match(n, std::regex("[UV][0-9]*")); }

std::vector<Letter> parse_token(const std::string& tok) {
  static const std::regex re(R"(^([A-Za-z][A-Za-z0-9_']*)(\*?)(~?)(?:\^([0-9]+))?$)");
  std::smatch m;
  if (!std::regex_match(tok, m, re)) throw ParseError("invalid letter '" + tok + "'");
  Letter l;
  l.name = m[1];
  const bool star = m[2].length() > 0;
  l.centered = m[3].length() > 0;
  const int power = m[4].matched ? std::stoi(m[4]) : 1;
  if (power < 1 || power > 64) throw ParseError("invalid power in '" + tok + "'");
  if (is_unitary_name(l.name)) {
    if (l.centered) throw ParseError("unitary letters are already centered: '" + tok + "'");
    l.kind = Letter::Kind::unitary;
    l.exponent = star ? -1 : 1;
  } else {
    l.adjoint = star;
  }
  return std::vector<Letter>(static_cast<std::size_t>(power), l);
}

}  // namespace

Word Word::parse(const std::string& text) {
  std::string spaced;
  for (char c : text) {
    if (c == '(' || c == ')') spaced += std::string(" ") + c + " ";
    else spaced += c;
  }
  std::istringstream is(spaced);
  std::vector<std::vector<Letter>> groups;
  std::vector<Letter> loose;
  bool in_group = false;
  std::string tok;
  while (is >> tok) {
    if (tok == "(") {
      if (in_group) throw ParseError("nested parentheses in '" + text + "'");
      in_group = true;
      groups.emplace_back();
    } else if (tok == ")") {
      if (!in_group) throw ParseError("unbalanced ')' in '" + text + "'");
      if (groups.back().empty()) throw ParseError("empty trace in '" + text + "'");
      in_group = false;
    } else {
      auto ls = parse_token(tok);
      auto& target = in_group ? groups.back() : loose;
      target.insert(target.end(), ls.begin(), ls.end());
    }
  }
  if (in_group) throw ParseError("unbalanced '(' in '" + text + "'");
  if (!groups.empty() && !loose.empty()) throw ParseError("letters outside parentheses in multi-trace word '" + text + "'");
  if (groups.empty()) {
    if (loose.empty()) throw ParseError("empty word");
    groups.push_back(std::move(loose));
  }
  std::vector<Letter> letters;
  std::vector<int> images;
  for (const auto& g : groups) {
    const int start = static_cast<int>(letters.size());
    const int len = static_cast<int>(g.size());
    for (int k = 0; k < len; ++k) images.push_back(start + (k + 1) % len);
    letters.insert(letters.end(), g.begin(), g.end());
  }
  return Word(std::move(letters), Permutation(std::move(images)));
}

std::vector<std::vector<Letter>> Word::traces() const {
  std::vector<std::vector<Letter>> out;
  for (const auto& c : alpha_.cycles()) {
    std::vector<Letter> t;
    for (int p : c) t.push_back(letters_[static_cast<std::size_t>(p)]);
    out.push_back(std::move(t));
  }
  return out;
}

bool Word::balanced() const {
  std::map<std::string, int> net;
  for (const auto& l : letters_)
    if (l.kind == Letter::Kind::unitary) net[l.name] += l.exponent;
  return std::all_of(net.begin(), net.end(), [](const auto& p) { return p.second == 0; });
}

bool Word::has_constants() const {
  return std::any_of(letters_.begin(), letters_.end(), [](const Letter& l) { return l.kind == Letter::Kind::constant; });
}

Word operator*(const Word& a, const Word& b) {
  std::vector<Letter> letters = a.letters_;
  letters.insert(letters.end(), b.letters_.begin(), b.letters_.end());
  std::vector<int> images = a.alpha_.images();
  for (int x : b.alpha_.images()) images.push_back(x + a.alpha_.degree());
  return Word(std::move(letters), Permutation(std::move(images)));
}

std::string Word::to_string() const {
  auto ts = traces();
  std::string s;
  for (std::size_t t = 0; t < ts.size(); ++t) {
    std::string body;
    for (std::size_t k = 0; k < ts[t].size(); ++k) body += (k ? " " : "") + ts[t][k].to_string();
    s += ts.size() > 1 ? (t ? " (" : "(") + body + ")" : body;
  }
  return s;
}

// ------------------------------------------------------------- matrices

RationalMatrix RationalMatrix::identity(long n) {
  RationalMatrix m{n, std::vector<BigRational>(static_cast<std::size_t>(n * n), 0)};
  for (long k = 0; k < n; ++k) m(k, k) = 1;
  return m;
}

RationalMatrix RationalMatrix::diagonal(const std::vector<BigRational>& diag) {
  auto m = identity(static_cast<long>(diag.size()));
  for (std::size_t k = 0; k < diag.size(); ++k) m(static_cast<long>(k), static_cast<long>(k)) = diag[k];
  return m;
}

RationalMatrix operator*(const RationalMatrix& x, const RationalMatrix& y) {
  if (x.n != y.n) throw DegreeMismatchError("matrix sizes differ");
  RationalMatrix r{x.n, std::vector<BigRational>(x.a.size(), 0)};
  for (long i = 0; i < x.n; ++i)
    for (long k = 0; k < x.n; ++k) {
      if (x(i, k) == 0) continue;
      for (long j = 0; j < x.n; ++j) r(i, j) += x(i, k) * y(k, j);
    }
  return r;
}

RationalMatrix RationalMatrix::transpose() const {
  RationalMatrix r = *this;
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j) r(i, j) = (*this)(j, i);
  return r;
}

BigRational RationalMatrix::trace() const {
  BigRational t = 0;
  for (long k = 0; k < n; ++k) t += (*this)(k, k);
  return t / BigRational(n);
}

BigRational bracket_eval(const std::vector<RationalMatrix>& matrices, const Permutation& alpha) {
  if (static_cast<int>(matrices.size()) != alpha.degree()) throw DegreeMismatchError("one matrix per position is needed");
  for (const auto& m : matrices)
    if (m.n != matrices.front().n) throw DegreeMismatchError("matrices of different sizes");
  BigRational r = 1;
  for (const auto& c : alpha.cycles()) {
    RationalMatrix p = matrices[static_cast<std::size_t>(c.front())];
    for (std::size_t k = 1; k < c.size(); ++k) p = p * matrices[static_cast<std::size_t>(c[k])];
    r *= p.trace();
  }
  return r;
}

// --------------------------------------------------------- word expansion

namespace {

struct Slot {
  std::string unitary;
  int eps = 1;
  std::vector<Letter> consts;  // the constants multiplying the unitary from the left
};

struct Expansion {
  std::vector<Slot> slots;
  Permutation alpha;                             // on slots
  std::vector<std::vector<Letter>> fixed;        // traces without unitaries
  // (beta on slots, Wg cycle types) -> multiplicity
  std::map<std::pair<std::vector<int>, std::vector<IntegerPartition>>, long> terms;
};

Expansion expand(const Word& w) {
  Expansion ex;
  std::vector<int> alpha_images;
  for (const auto& t : w.traces()) {
    std::vector<std::size_t> upos;
    for (std::size_t k = 0; k < t.size(); ++k)
      if (t[k].kind == Letter::Kind::unitary) upos.push_back(k);
    if (upos.empty()) {
      ex.fixed.push_back(t);
      continue;
    }
    // Rotate so the trace ends with a unitary; then every unitary closes one slot.
    const std::size_t start = (upos.back() + 1) % t.size();
    const int first = static_cast<int>(ex.slots.size());
    Slot cur;
    for (std::size_t k = 0; k < t.size(); ++k) {
      const Letter& l = t[(start + k) % t.size()];
      if (l.kind == Letter::Kind::constant) {
        cur.consts.push_back(l);
        continue;
      }
      cur.unitary = l.name;
      cur.eps = l.exponent;
      ex.slots.push_back(std::move(cur));
      cur = Slot{};
    }
    const int count = static_cast<int>(ex.slots.size()) - first;
    for (int k = 0; k < count; ++k) alpha_images.push_back(first + (k + 1) % count);
  }
  const int n = static_cast<int>(ex.slots.size());
  ex.alpha = Permutation(alpha_images);
  if (n == 0) {
    ex.terms[{{}, {}}] = 1;
    return ex;
  }

  std::map<std::string, std::pair<std::vector<int>, std::vector<int>>> sides;  // name -> (plus, minus)
  for (int s = 0; s < n; ++s) {
    auto& side = sides[ex.slots[static_cast<std::size_t>(s)].unitary];
    (ex.slots[static_cast<std::size_t>(s)].eps > 0 ? side.first : side.second).push_back(s);
  }
  std::vector<std::pair<std::vector<int>, std::vector<int>>> groups;
  for (auto& [name, side] : sides) groups.push_back(side);

  std::vector<int> xi(static_cast<std::size_t>(n));
  std::iota(xi.begin(), xi.end(), 0);
  std::vector<IntegerPartition> types;
  std::function<void(std::size_t)> rec = [&](std::size_t g) {
    if (g == groups.size()) {
      std::vector<int> beta(static_cast<std::size_t>(n));
      for (int s = 0; s < n; ++s) beta[static_cast<std::size_t>(s)] = ex.alpha(xi[static_cast<std::size_t>(s)]);
      auto sorted = types;
      std::sort(sorted.begin(), sorted.end());
      ++ex.terms[{beta, sorted}];
      return;
    }
    const auto& [plus, minus] = groups[g];
    const std::size_t m = plus.size();
    std::vector<int> f(m), h(m);
    std::iota(f.begin(), f.end(), 0);
    do {
      std::iota(h.begin(), h.end(), 0);
      do {
        for (std::size_t a = 0; a < m; ++a) {
          xi[static_cast<std::size_t>(plus[a])] = minus[static_cast<std::size_t>(f[a])];
          xi[static_cast<std::size_t>(minus[a])] = plus[static_cast<std::size_t>(h[a])];
        }
        std::vector<int> sq(m);
        for (std::size_t a = 0; a < m; ++a) sq[a] = h[static_cast<std::size_t>(f[a])];
        types.push_back(cycle_type(Permutation(sq)));
        rec(g + 1);
        types.pop_back();
      } while (std::next_permutation(h.begin(), h.end()));
    } while (std::next_permutation(f.begin(), f.end()));
  };
  rec(0);
  return ex;
}

std::string canonical_trace_symbol(const std::vector<std::string>& names) {
  if (names.empty()) return "";
  std::vector<std::string> best = names;
  for (std::size_t r = 1; r < names.size(); ++r) {
    std::vector<std::string> rot(names.begin() + static_cast<long>(r), names.end());
    rot.insert(rot.end(), names.begin(), names.begin() + static_cast<long>(r));
    best = std::min(best, rot);
  }
  std::string s = "tr(";
  for (std::size_t k = 0; k < best.size(); ++k) s += (k ? " " : "") + best[k];
  return s + ")";
}

// Normalized trace of a cyclic product of constants, centered letters expanded.
TracePolynomial trace_polynomial(const std::vector<Letter>& word) {
  for (std::size_t k = 0; k < word.size(); ++k) {
    if (!word[k].centered) continue;
    Letter plain = word[k];
    plain.centered = false;
    std::vector<Letter> with = word, without = word;
    with[k] = plain;
    without.erase(without.begin() + static_cast<long>(k));
    return trace_polynomial(with) - trace_polynomial({plain}) * trace_polynomial(without);
  }
  std::vector<std::string> names;
  for (const auto& l : word)
    if (l.name != "I") names.push_back(l.to_string());
  const std::string sym = canonical_trace_symbol(names);
  if (sym.empty()) return TracePolynomial(1L);
  return TracePolynomial::monomial(SymbolMonomial{{sym}});
}

std::vector<std::vector<Letter>> beta_words(const Expansion& ex, const std::vector<int>& beta) {
  std::vector<std::vector<Letter>> out;
  if (beta.empty()) return out;
  for (const auto& c : Permutation(beta).cycles()) {
    std::vector<Letter> w;
    for (int s : c) {
      const auto& cs = ex.slots[static_cast<std::size_t>(s)].consts;
      w.insert(w.end(), cs.begin(), cs.end());
    }
    out.push_back(std::move(w));
  }
  return out;
}

int perm_norm(const std::vector<int>& images) { return images.empty() ? 0 : Permutation(images).norm(); }

RationalMatrix letter_matrix(const Letter& l, const ConstantMatrices& constants, long d) {
  RationalMatrix m;
  if (l.name == "I") {
    m = RationalMatrix::identity(d);
  } else {
    auto it = constants.find(l.name);
    if (it == constants.end()) throw PreconditionError("no matrix given for constant '" + l.name + "'");
    m = it->second;
    if (m.n != d) throw DegreeMismatchError("constant '" + l.name + "' is not " + std::to_string(d) + "x" + std::to_string(d));
    if (l.adjoint) m = m.transpose();
  }
  if (l.centered) {
    const BigRational t = m.trace();
    for (long k = 0; k < d; ++k) m(k, k) -= t;
  }
  return m;
}

BigRational concrete_trace(const std::vector<Letter>& word, const ConstantMatrices& constants, long d) {
  RationalMatrix p = RationalMatrix::identity(d);
  for (const auto& l : word) p = p * letter_matrix(l, constants, d);
  return p.trace();
}

}  // namespace

WordResult word_expectation(const Word& w) {
  WordResult r;
  if (!w.balanced()) {
    r.vanishes = true;
    return r;
  }
  const Expansion ex = expand(w);
  const int alpha_norm = perm_norm(ex.alpha.images());
  TracePolynomial fixed(1L);
  for (const auto& t : ex.fixed) fixed *= trace_polynomial(t);
  std::map<std::vector<int>, RationalFunctionD> by_beta;
  for (const auto& [key, count] : ex.terms) {
    RationalFunctionD c = RationalFunctionD::d_power(alpha_norm - perm_norm(key.first)) * RationalFunctionD(count);
    for (const auto& mu : key.second) c *= wg_ratfun(mu);
    by_beta[key.first] += c;
  }
  for (const auto& [beta, c] : by_beta) {
    if (c.is_zero()) continue;
    TracePolynomial b(1L);
    for (const auto& t : beta_words(ex, beta)) b *= trace_polynomial(t);
    r.value += b * c;
  }
  r.value *= fixed;
  return r;
}

RationalFunctionD word_expectation_ratfun(const Word& w) {
  if (w.has_constants()) throw PreconditionError("word has constant letters; evaluate it symbolically or with matrices");
  return word_expectation(w).value.constant_term();
}

BigRational word_expectation_at(const Word& w, const ConstantMatrices& constants, long d) {
  if (d < 1) throw PreconditionError("dimension must be positive");
  if (!w.balanced()) return 0;
  const Expansion ex = expand(w);
  const int alpha_norm = perm_norm(ex.alpha.images());
  BigRational fixed = 1;
  for (const auto& t : ex.fixed) fixed *= concrete_trace(t, constants, d);
  std::map<std::vector<int>, BigRational> by_beta;
  for (const auto& [key, count] : ex.terms) {
    BigRational c = count;
    const int e = alpha_norm - perm_norm(key.first);
    BigInt dp;
    mpz_ui_pow_ui(dp.get_mpz_t(), static_cast<unsigned long>(d), static_cast<unsigned long>(std::abs(e)));
    c *= e >= 0 ? BigRational(dp) : BigRational(1) / BigRational(dp);
    for (const auto& mu : key.second) c *= wg_any_dimension(mu, d);
    by_beta[key.first] += c;
  }
  BigRational acc = 0;
  for (const auto& [beta, c] : by_beta) {
    if (c == 0) continue;
    BigRational b = 1;
    for (const auto& t : beta_words(ex, beta)) b *= concrete_trace(t, constants, d);
    acc += b * c;
  }
  return acc * fixed;
}

TracePolynomial exact_covariance(const Word& w1, const Word& w2) {
  auto e12 = word_expectation(w1 * w2).value;
  auto e1 = word_expectation(w1).value;
  auto e2 = word_expectation(w2).value;
  return e12 - e1 * e2;
}

TracePolynomial freeness_defect(const Word& w) { return word_expectation(w).value; }

int max_degree(const TracePolynomial& p) {
  int m = INT_MIN;
  for (const auto& [mono, c] : p.terms()) m = std::max(m, c.degree());
  return m;
}

BigRational evaluate_trace_polynomial(const TracePolynomial& p, const ConstantMatrices& constants, long d) {
  BigRational acc = 0;
  for (const auto& [mono, c] : p.terms()) {
    BigRational v = c.evaluate(BigInt(d));
    for (const auto& sym : mono.factors) {
      std::istringstream is(sym.substr(3, sym.size() - 4));
      std::vector<Letter> word;
      std::string tok;
      while (is >> tok) {
        Letter l;
        l.adjoint = tok.back() == '*';
        l.name = l.adjoint ? tok.substr(0, tok.size() - 1) : tok;
        word.push_back(l);
      }
      v *= concrete_trace(word, constants, d);
    }
    acc += v;
  }
  return acc;
}

}  // namespace hw
