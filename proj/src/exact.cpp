#include "hw/exact.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

#include "hw/errors.hpp"

namespace hw {

std::string to_string(const BigInt& v) { return v.get_str(); }

std::string to_string(const BigRational& v) { return v.get_str(); }

BigRational parse_rational(const std::string& text) {
  auto trim = [](std::string s) {
    s.erase(0, s.find_first_not_of(" \t"));
    s.erase(s.find_last_not_of(" \t") + 1);
    return s;
  };
  std::string t = trim(text);
  auto valid_int = [](const std::string& s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    return std::all_of(s.begin() + static_cast<long>(i), s.end(), [](char c) { return c >= '0' && c <= '9'; });
  };
  auto slash = t.find('/');
  std::string n = slash == std::string::npos ? t : trim(t.substr(0, slash));
  std::string dd = slash == std::string::npos ? "1" : trim(t.substr(slash + 1));
  if (!valid_int(n) || !valid_int(dd)) throw ParseError("invalid rational: '" + text + "'");
  if (n[0] == '+') n.erase(0, 1);
  if (dd[0] == '+') dd.erase(0, 1);
  BigInt num(n), den(dd);
  if (den == 0) throw ParseError("zero denominator in rational: '" + text + "'");
  BigRational r(num, den);
  r.canonicalize();
  return r;
}

// ---------------------------------------------------------------- IntPoly

IntPoly::IntPoly(std::vector<BigInt> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

IntPoly::IntPoly(long c) {
  if (c != 0) coeffs_.emplace_back(c);
}

IntPoly IntPoly::monomial(const BigInt& c, int power) {
  if (c == 0) return {};
  std::vector<BigInt> v(static_cast<std::size_t>(power) + 1);
  v.back() = c;
  return IntPoly(std::move(v));
}

IntPoly IntPoly::from_roots(const std::vector<long>& roots) {
  IntPoly p(1);
  for (long r : roots) p = p * IntPoly(std::vector<BigInt>{BigInt(-r), BigInt(1)});
  return p;
}

void IntPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

BigInt IntPoly::coeff(int power) const {
  if (power < 0 || power > degree()) return 0;
  return coeffs_[static_cast<std::size_t>(power)];
}

int IntPoly::valuation() const {
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    if (coeffs_[i] != 0) return static_cast<int>(i);
  return -1;
}

BigInt IntPoly::content() const {
  BigInt g = 0;
  for (const auto& c : coeffs_) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

IntPoly IntPoly::operator-() const {
  IntPoly r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

IntPoly& IntPoly::operator+=(const IntPoly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  trim();
  return *this;
}

IntPoly& IntPoly::operator-=(const IntPoly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  trim();
  return *this;
}

IntPoly& IntPoly::operator*=(const BigInt& c) {
  if (c == 0) {
    coeffs_.clear();
    return *this;
  }
  for (auto& x : coeffs_) x *= c;
  return *this;
}

IntPoly operator*(const IntPoly& a, const IntPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<BigInt> r(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
      mpz_addmul(r[i + j].get_mpz_t(), a.coeffs_[i].get_mpz_t(), b.coeffs_[j].get_mpz_t());
  }
  return IntPoly(std::move(r));
}

IntPoly IntPoly::divexact(const BigInt& c) const {
  IntPoly r = *this;
  for (auto& x : r.coeffs_) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), c.get_mpz_t());
  return r;
}

IntPoly IntPoly::shifted(int k) const {
  if (is_zero() || k == 0) return *this;
  std::vector<BigInt> v(static_cast<std::size_t>(k));
  v.insert(v.end(), coeffs_.begin(), coeffs_.end());
  return IntPoly(std::move(v));
}

IntPoly IntPoly::reflected() const {
  IntPoly r = *this;
  for (std::size_t i = 1; i < r.coeffs_.size(); i += 2) r.coeffs_[i] = -r.coeffs_[i];
  return r;
}

BigInt IntPoly::evaluate(const BigInt& d) const {
  BigInt acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * d + *it;
  return acc;
}

BigRational IntPoly::evaluate(const BigRational& d) const {
  BigRational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * d + BigRational(*it);
  return acc;
}

double IntPoly::evaluate(double d) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * d + it->get_d();
  return acc;
}

std::string IntPoly::to_string(const char* var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int p = degree(); p >= 0; --p) {
    BigInt c = coeffs_[static_cast<std::size_t>(p)];
    if (c == 0) continue;
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    BigInt a = abs(c);
    if (p == 0) {
      os << a.get_str();
    } else {
      if (a != 1) os << a.get_str() << "*";
      os << var;
      if (p != 1) os << "^" << p;
    }
    first = false;
  }
  return os.str();
}

namespace {

IntPoly primitive_part(const IntPoly& p) {
  if (p.is_zero()) return p;
  BigInt c = p.content();
  if (p.leading() < 0) c = -c;
  return p.divexact(c);
}

// lc(b)^(deg a - deg b + 1) * a mod b, computed in Z[x].
IntPoly pseudo_remainder(IntPoly a, const IntPoly& b) {
  const int db = b.degree();
  const BigInt& lb = b.leading();
  std::vector<BigInt> r = a.coeffs();
  int dr = a.degree();
  while (dr >= db && dr >= 0) {
    BigInt lr = r[static_cast<std::size_t>(dr)];
    for (auto& x : r) x *= lb;
    for (int i = 0; i <= db; ++i)
      r[static_cast<std::size_t>(dr - db + i)] -= lr * b.coeffs()[static_cast<std::size_t>(i)];
    while (dr >= 0 && r[static_cast<std::size_t>(dr)] == 0) --dr;
    r.resize(static_cast<std::size_t>(dr + 1));
  }
  return IntPoly(std::move(r));
}

}  // namespace

IntPoly gcd(const IntPoly& a, const IntPoly& b) {
  if (a.is_zero()) return primitive_part(b);
  if (b.is_zero()) return primitive_part(a);
  IntPoly x = primitive_part(a), y = primitive_part(b);
  if (x.degree() < y.degree()) std::swap(x, y);
  while (!y.is_zero()) {
    if (y.degree() == 0) return IntPoly(1);
    IntPoly r = pseudo_remainder(x, y);
    x = std::move(y);
    y = primitive_part(r);
  }
  return x;
}

IntPoly divexact(const IntPoly& a, const IntPoly& b) {
  if (b.is_zero()) throw DivisionByZeroError("polynomial division by zero");
  if (a.is_zero()) return {};
  const int db = b.degree();
  std::vector<BigInt> r = a.coeffs();
  const int dq = a.degree() - db;
  if (dq < 0) throw DomainError("divexact: divisor has larger degree");
  std::vector<BigInt> q(static_cast<std::size_t>(dq) + 1);
  for (int i = dq; i >= 0; --i) {
    BigInt& top = r[static_cast<std::size_t>(i + db)];
    if (!mpz_divisible_p(top.get_mpz_t(), b.leading().get_mpz_t()))
      throw DomainError("divexact: non-integral quotient");
    BigInt c;
    mpz_divexact(c.get_mpz_t(), top.get_mpz_t(), b.leading().get_mpz_t());
    for (int j = 0; j <= db; ++j) r[static_cast<std::size_t>(i + j)] -= c * b.coeffs()[static_cast<std::size_t>(j)];
    q[static_cast<std::size_t>(i)] = c;
  }
  for (const auto& x : r)
    if (x != 0) throw DomainError("divexact: nonzero remainder");
  return IntPoly(std::move(q));
}

// ------------------------------------------------------- RationalFunctionD

RationalFunctionD::RationalFunctionD(const BigRational& c)
    : num_(std::vector<BigInt>{c.get_num()}), den_(std::vector<BigInt>{c.get_den()}) {}

RationalFunctionD::RationalFunctionD(IntPoly num, IntPoly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw DivisionByZeroError("rational function with zero denominator");
  canonicalize();
}

RationalFunctionD RationalFunctionD::d_power(int k) {
  if (k >= 0) return {IntPoly::monomial(1, k), IntPoly(1)};
  return {IntPoly(1), IntPoly::monomial(1, -k)};
}

void RationalFunctionD::canonicalize() {
  if (num_.is_zero()) {
    den_ = IntPoly(1);
    return;
  }
  if (den_.degree() > 0 && num_.degree() > 0) {
    IntPoly g = gcd(num_, den_);
    if (g.degree() > 0) {
      num_ = hw::divexact(num_, g);
      den_ = hw::divexact(den_, g);
    }
  }
  BigInt c = num_.content();
  BigInt cd = den_.content();
  mpz_gcd(c.get_mpz_t(), c.get_mpz_t(), cd.get_mpz_t());
  if (den_.leading() < 0) c = -c;
  if (c != 1) {
    num_ = num_.divexact(c);
    den_ = den_.divexact(c);
  }
}

int RationalFunctionD::degree() const {
  if (is_zero()) return INT_MIN;
  return num_.degree() - den_.degree();
}

bool RationalFunctionD::is_even() const {
  // Canonical forms are unique up to the sign convention, so compare f(-d) structurally.
  RationalFunctionD r(num_.reflected(), den_.reflected());
  return r == *this;
}

RationalFunctionD RationalFunctionD::operator-() const {
  RationalFunctionD r = *this;
  r.num_ = -r.num_;
  return r;
}

RationalFunctionD& RationalFunctionD::operator+=(const RationalFunctionD& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  if (den_ == o.den_) {
    num_ += o.num_;
  } else {
    IntPoly g = gcd(den_, o.den_);
    if (g.degree() > 0) {
      IntPoly a = hw::divexact(den_, g), b = hw::divexact(o.den_, g);
      num_ = num_ * b + o.num_ * a;
      den_ = den_ * b;
    } else {
      num_ = num_ * o.den_ + o.num_ * den_;
      den_ = den_ * o.den_;
    }
  }
  canonicalize();
  return *this;
}

RationalFunctionD& RationalFunctionD::operator-=(const RationalFunctionD& o) { return *this += -o; }

RationalFunctionD& RationalFunctionD::operator*=(const RationalFunctionD& o) {
  if (is_zero() || o.is_zero()) return *this = RationalFunctionD();
  num_ = num_ * o.num_;
  den_ = den_ * o.den_;
  canonicalize();
  return *this;
}

RationalFunctionD& RationalFunctionD::operator/=(const RationalFunctionD& o) {
  if (o.is_zero()) throw DivisionByZeroError("division by the zero rational function");
  num_ = num_ * o.den_;
  den_ = den_ * o.num_;
  canonicalize();
  return *this;
}

BigRational RationalFunctionD::evaluate(const BigInt& d) const {
  BigInt dv = den_.evaluate(d);
  if (dv == 0) throw PoleError("rational function has a pole at d = " + d.get_str());
  BigRational r(num_.evaluate(d), dv);
  r.canonicalize();
  return r;
}

double RationalFunctionD::evaluate(double d) const { return num_.evaluate(d) / den_.evaluate(d); }

std::string RationalFunctionD::to_string() const {
  if (is_zero()) return "0";
  // Monomial denominator c*d^k: print as a Laurent polynomial.
  int v = den_.valuation();
  if (den_.degree() == v) {
    std::ostringstream os;
    bool first = true;
    for (int p = num_.degree(); p >= 0; --p) {
      BigRational c(num_.coeff(p), den_.leading());
      c.canonicalize();
      if (c == 0) continue;
      if (first) {
        if (c < 0) os << "-";
      } else {
        os << (c < 0 ? " - " : " + ");
      }
      BigRational a = abs(c);
      int e = p - v;
      if (e == 0) {
        os << a.get_str();
      } else {
        if (a != 1) os << a.get_str() << "*";
        os << "d";
        if (e != 1) os << "^" << e;
      }
      first = false;
    }
    return os.str();
  }
  std::string n = num_.to_string();
  if (num_.degree() > 0 && num_.valuation() != num_.degree()) n = "(" + n + ")";
  std::string dd = den_.to_string();
  if (den_.degree() > 0 && den_.valuation() != den_.degree()) dd = "(" + dd + ")";
  return n + "/" + dd;
}

nlohmann::json RationalFunctionD::to_json() const {
  // Machine-size coefficients as JSON numbers, larger ones as decimal strings.
  auto entry = [](const BigInt& c) { return c.fits_slong_p() ? nlohmann::json(c.get_si()) : nlohmann::json(c.get_str()); };
  nlohmann::json num = nlohmann::json::array(), den = nlohmann::json::array();
  if (num_.is_zero()) num.push_back(0);
  for (const auto& c : num_.coeffs()) num.push_back(entry(c));
  for (const auto& c : den_.coeffs()) den.push_back(entry(c));
  return {{"num", num}, {"den", den}};
}

RationalFunctionD RationalFunctionD::from_json(const nlohmann::json& j) {
  auto read = [](const nlohmann::json& arr) {
    std::vector<BigInt> v;
    for (const auto& e : arr) {
      std::string s = e.is_string() ? e.get<std::string>() : e.dump();
      BigRational r = parse_rational(s);
      if (r.get_den() != 1) throw ParseError("non-integer polynomial coefficient: " + s);
      v.push_back(r.get_num());
    }
    return IntPoly(std::move(v));
  };
  if (!j.is_object() || !j.contains("num") || !j.contains("den"))
    throw ParseError("rational function JSON needs 'num' and 'den'");
  return {read(j.at("num")), read(j.at("den"))};
}

// ------------------------------------------------------------ LaurentSeries

BigRational LaurentSeries::coefficient(int k) const {
  int idx = k - leading_exponent;
  if (idx < 0 || idx >= static_cast<int>(coefficients.size())) return 0;
  return coefficients[static_cast<std::size_t>(idx)];
}

double LaurentSeries::evaluate(double d) const {
  double acc = 0.0;
  for (std::size_t i = 0; i < coefficients.size(); ++i)
    acc += coefficients[i].get_d() * std::pow(d, -(leading_exponent + static_cast<int>(i)));
  return acc;
}

LaurentSeries laurent_expand(const RationalFunctionD& f, int order) {
  LaurentSeries s;
  s.truncation_order = order;
  if (f.is_zero()) {
    s.leading_exponent = order + 1;
    return s;
  }
  if (f.degree() > 0) throw PreconditionError("Laurent expansion at infinity needs degree <= 0, got " +
                                              std::to_string(f.degree()));
  // With t = 1/d: f = t^(m-n) * N(t)/D(t), N and D the coefficient-reversed polynomials.
  const int n = f.num().degree(), m = f.den().degree();
  s.leading_exponent = m - n;
  const int terms = order - s.leading_exponent + 1;
  if (terms <= 0) return s;
  auto rev = [](const IntPoly& p, int i) { return BigRational(p.coeff(p.degree() - i)); };
  std::vector<BigRational> c(static_cast<std::size_t>(terms));
  const BigRational d0 = rev(f.den(), 0);
  for (int k = 0; k < terms; ++k) {
    BigRational acc = rev(f.num(), k);
    for (int j = 1; j <= std::min(k, m); ++j) acc -= rev(f.den(), j) * c[static_cast<std::size_t>(k - j)];
    c[static_cast<std::size_t>(k)] = acc / d0;
  }
  s.coefficients = std::move(c);
  return s;
}

}  // namespace hw
