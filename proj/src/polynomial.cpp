#include "hw/polynomial.hpp"

#include <cctype>

#include "hw/errors.hpp"

namespace hw {

namespace {

template <class T>
std::vector<T> merged(const std::vector<T>& a, const std::vector<T>& b) {
  std::vector<T> out;
  out.reserve(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

void append_powers(std::string& s, char var, const std::vector<int>& idx) {
  for (std::size_t i = 0; i < idx.size();) {
    std::size_t j = i;
    while (j < idx.size() && idx[j] == idx[i]) ++j;
    if (!s.empty()) s += "*";
    s += var + std::to_string(idx[i]);
    if (j - i > 1) s += "^" + std::to_string(j - i);
    i = j;
  }
}

}  // namespace

XYMonomial operator*(const XYMonomial& a, const XYMonomial& b) { return {merged(a.x, b.x), merged(a.y, b.y)}; }

std::string XYMonomial::to_string() const {
  std::string s;
  append_powers(s, 'x', x);
  append_powers(s, 'y', y);
  return s.empty() ? "1" : s;
}

SymbolMonomial operator*(const SymbolMonomial& a, const SymbolMonomial& b) { return {merged(a.factors, b.factors)}; }

std::string SymbolMonomial::to_string() const {
  if (factors.empty()) return "1";
  std::string s;
  for (std::size_t i = 0; i < factors.size(); ++i) s += (i ? "*" : "") + factors[i];
  return s;
}

XYMonomial xy_monomial(std::vector<int> x, std::vector<int> y) {
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  return {std::move(x), std::move(y)};
}

MomentPolynomial x_symbol(int k) { return MomentPolynomial::monomial(xy_monomial({k}, {})); }
MomentPolynomial y_symbol(int k) { return MomentPolynomial::monomial(xy_monomial({}, {k})); }

MomentPolynomial centered(const MomentPolynomial& p) {
  MomentPolynomial r;
  for (const auto& [m, c] : p.terms()) {
    bool has_first = std::find(m.x.begin(), m.x.end(), 1) != m.x.end() || std::find(m.y.begin(), m.y.end(), 1) != m.y.end();
    if (!has_first) r.add_term(m, c);
  }
  return r;
}

MomentPolynomial swap_xy(const MomentPolynomial& p) {
  MomentPolynomial r;
  for (const auto& [m, c] : p.terms()) r.add_term(m.swapped(), c);
  return r;
}

nlohmann::json to_json(const MomentPolynomial& p) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [m, c] : p.terms()) terms.push_back({{"coeff", to_string(c)}, {"x", m.x}, {"y", m.y}});
  return {{"terms", terms}};
}

MomentPolynomial moment_polynomial_from_json(const nlohmann::json& j) {
  MomentPolynomial p;
  for (const auto& t : j.at("terms"))
    p.add_term(xy_monomial(t.at("x").get<std::vector<int>>(), t.at("y").get<std::vector<int>>()),
               parse_rational(t.at("coeff").get<std::string>()));
  return p;
}

MomentPolynomial parse_moment_polynomial(const std::string& text) {
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  auto number = [&] {
    std::size_t j = i;
    while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
    if (j == i) throw ParseError("expected a number in '" + text + "'");
    long v = std::stol(text.substr(i, j - i));
    i = j;
    return v;
  };
  MomentPolynomial p;
  skip();
  if (i == text.size()) throw ParseError("empty polynomial");
  bool first = true;
  while (i < text.size()) {
    int sign = 1;
    skip();
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
      sign = text[i] == '-' ? -1 : 1;
      ++i;
      skip();
    } else if (!first) {
      throw ParseError("expected '+' or '-' in '" + text + "'");
    }
    first = false;
    BigRational coeff = sign;
    std::vector<int> xs, ys;
    bool any_factor = false;
    for (;;) {
      skip();
      if (i >= text.size()) break;
      char c = text[i];
      if (std::isdigit(static_cast<unsigned char>(c))) {
        BigRational v = number();
        if (i < text.size() && text[i] == '/') {
          ++i;
          long den = number();
          if (den == 0) throw ParseError("zero denominator in '" + text + "'");
          v /= den;
        }
        coeff *= v;
      } else if (c == 'x' || c == 'y') {
        ++i;
        int k = static_cast<int>(number());
        long power = 1;
        if (i < text.size() && text[i] == '^') {
          ++i;
          power = number();
        }
        for (long r = 0; r < power; ++r) (c == 'x' ? xs : ys).push_back(k);
      } else {
        throw ParseError("unexpected character '" + std::string(1, c) + "' in '" + text + "'");
      }
      any_factor = true;
      skip();
      if (i < text.size() && text[i] == '*') {
        ++i;
        continue;
      }
      break;
    }
    if (!any_factor) throw ParseError("dangling sign in '" + text + "'");
    p.add_term(xy_monomial(xs, ys), coeff);
  }
  return p;
}

}  // namespace hw
