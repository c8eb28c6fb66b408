#include "hw/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "hw/errors.hpp"
#include "hw/free_probability.hpp"
#include "hw/haar_moments.hpp"
#include "hw/iz.hpp"
#include "hw/monte_carlo.hpp"
#include "hw/weingarten.hpp"

namespace hw {

namespace {

using json = nlohmann::json;

struct Output {
  std::ostream& out;
  std::string format = "json";

  void emit(const json& j, const std::string& text) const {
    if (format == "text") out << text << "\n";
    else out << j.dump(2) << "\n";
  }
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) parts.push_back(cur);
  return parts;
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return "";
  return s.substr(a, s.find_last_not_of(" \t") - a + 1);
}

std::vector<int> int_list(const std::string& s) {
  std::vector<int> v;
  for (const auto& p : split(s, ',')) {
    const auto r = parse_rational(trim(p));
    if (r.get_den() != 1 || !r.get_num().fits_sint_p()) throw ParseError("expected an integer, got '" + p + "'");
    v.push_back(static_cast<int>(r.get_num().get_si()));
  }
  if (v.empty()) throw ParseError("empty list");
  return v;
}

std::vector<BigRational> rational_list(const std::string& s) {
  std::vector<BigRational> v;
  for (const auto& p : split(s, ',')) v.push_back(parse_rational(trim(p)));
  if (v.empty()) throw ParseError("empty list");
  return v;
}

// "W=1,2;3,4"
std::pair<std::string, RationalMatrix> parse_matrix(const std::string& s) {
  const auto eq = s.find('=');
  if (eq == std::string::npos || eq == 0) throw ParseError("matrix must look like NAME=a,b;c,d");
  const std::string name = trim(s.substr(0, eq));
  const auto rows = split(s.substr(eq + 1), ';');
  const long n = static_cast<long>(rows.size());
  RationalMatrix m{n, {}};
  for (const auto& r : rows) {
    const auto entries = rational_list(r);
    if (static_cast<long>(entries.size()) != n) throw ParseError("matrix " + name + " is not square");
    m.a.insert(m.a.end(), entries.begin(), entries.end());
  }
  return {name, m};
}

ConstantMatrices matrices_from(const std::vector<std::string>& specs) {
  ConstantMatrices cm;
  for (const auto& s : specs) cm.insert(parse_matrix(s));
  return cm;
}

std::string double_string(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

json trace_polynomial_json(const TracePolynomial& p) {
  json terms = json::array();
  for (const auto& [mono, c] : p.terms()) terms.push_back({{"coeff", c.to_json()}, {"coeff_text", c.to_string()}, {"traces", mono.factors}});
  return {{"terms", terms}, {"text", p.to_string()}};
}

json ratfun_poly_json(const MomentRatfunPolynomial& p) {
  json terms = json::array();
  for (const auto& [mono, c] : p.terms()) terms.push_back({{"coeff", c.to_json()}, {"coeff_text", c.to_string()}, {"x", mono.x}, {"y", mono.y}});
  return {{"terms", terms}};
}

json report_json(const EstimateReport& r) {
  json j = {{"mean", {{"re", r.mean.real()}, {"im", r.mean.imag()}}}, {"std_error", r.std_error}, {"samples", r.samples}};
  if (r.exact) j["exact"] = *r.exact;
  if (r.z_score) j["z_score"] = *r.z_score;
  return j;
}

std::string report_text(const EstimateReport& r) {
  std::ostringstream os;
  os << "mean " << double_string(r.mean.real()) << " + " << double_string(r.mean.imag()) << "i, std error "
     << double_string(r.std_error);
  if (r.exact) os << ", exact " << double_string(*r.exact) << ", z " << double_string(*r.z_score);
  return os.str();
}

const std::vector<std::string> word_table = {
    "U V U* V*",     "U^2 V U*^2 V*", "U V U V U* V* U* V*", "U^2 V^2 U*^2 V*^2",
    "U^3 V U*^3 V*", "U V U* V* U V U* V*",
};

MomentPolynomial iz_table_entry(int q, int threads) {
  const auto lim = iz_cumulant_limit(q, q <= 6 ? GammaSource::enumeration : GammaSource::closed_form, threads);
  return centered(lim) * (BigRational(1) / BigRational(factorial(q - 1)));
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact and Monte Carlo integration over Haar unitary matrices", "hw"};
  app.require_subcommand(1);
  app.fallthrough();
  Output o{out};
  int threads = 1;
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--threads", threads, "Worker threads")->check(CLI::Range(1, 256));

  // wg
  auto* wg_cmd = app.add_subcommand("wg", "Weingarten function of a cycle type");
  std::string cycle_type;
  long dim = 0;
  bool symbolic = false, any_dim = false;
  wg_cmd->add_option("--cycle-type", cycle_type, "e.g. 2,1")->required();
  auto* wg_d = wg_cmd->add_option("--d", dim, "Dimension")->check(CLI::PositiveNumber);
  wg_cmd->add_flag("--symbolic", symbolic, "Rational function of d");
  wg_cmd->add_flag("--any-dimension", any_dim, "Allow d < q (restricted character sum)");

  // wg-expand
  auto* exp_cmd = app.add_subcommand("wg-expand", "Laurent coefficients of Wg at d = infinity");
  int order = 6;
  std::string method = "expansion";
  exp_cmd->add_option("--cycle-type", cycle_type, "e.g. 2,1")->required();
  exp_cmd->add_option("--order", order, "Largest l (coefficient of d^(-q-l))")->check(CLI::Range(0, 64));
  exp_cmd->add_option("--method", method)->check(CLI::IsMember({"expansion", "enumeration", "both"}));

  // integrate
  auto* int_cmd = app.add_subcommand("integrate", "Integral of a monomial in the entries of U and conj(U)");
  std::string si, sj, sip, sjp;
  int_cmd->add_option("--i", si, "Row indices of U entries")->required();
  int_cmd->add_option("--j", sj, "Column indices of U entries")->required();
  int_cmd->add_option("--ip", sip, "Row indices of conj(U) entries")->required();
  int_cmd->add_option("--jp", sjp, "Column indices of conj(U) entries")->required();
  int_cmd->add_option("--d", dim, "Dimension")->required()->check(CLI::PositiveNumber);

  // word
  auto* word_cmd = app.add_subcommand("word", "Expectation of a trace word");
  std::string word_text, word2_text;
  std::vector<std::string> matrix_specs;
  word_cmd->add_option("word", word_text, "e.g. \"U1 V1 U1* V1*\"")->required();
  auto* word_d = word_cmd->add_option("--d", dim, "Dimension (exact value)")->check(CLI::PositiveNumber);
  word_cmd->add_flag("--symbolic", symbolic, "Result as a function of d");
  word_cmd->add_option("--matrix", matrix_specs, "NAME=a,b;c,d");

  // covariance
  auto* cov_cmd = app.add_subcommand("covariance", "E(w1 w2) - E(w1) E(w2)");
  cov_cmd->add_option("w1", word_text)->required();
  cov_cmd->add_option("w2", word2_text)->required();

  // nc
  auto* nc_cmd = app.add_subcommand("nc", "Noncrossing partitions and Kreweras complements");
  int q = 0;
  std::string partition_text;
  nc_cmd->add_option("--q", q)->required()->check(CLI::Range(1, 12));
  nc_cmd->add_option("--kreweras", partition_text, "e.g. \"1 2|3 4\"");

  // free-cumulant
  auto* fc_cmd = app.add_subcommand("free-cumulant", "Free cumulants k_1..k_q from moments");
  std::string moments_text;
  fc_cmd->add_option("--q", q)->required()->check(CLI::Range(1, 12));
  fc_cmd->add_option("--moments", moments_text, "m_1,...,m_q");
  fc_cmd->add_flag("--symbolic", symbolic, "Moments are the symbols y1..yq");

  // iz-limit
  auto* izl_cmd = app.add_subcommand("iz-limit", "Large-d limit of d^-2 C_q");
  bool centered_flag = false, table_flag = false, check_flag = false;
  std::string gamma = "enumeration";
  izl_cmd->add_option("--q", q)->required()->check(CLI::Range(1, 7));
  izl_cmd->add_flag("--centered", centered_flag, "Set x1 = y1 = 0");
  izl_cmd->add_flag("--table", table_flag, "Divide by (q-1)!");
  izl_cmd->add_option("--gamma", gamma)->check(CLI::IsMember({"enumeration", "closed-form"}));
  izl_cmd->add_flag("--check", check_flag, "Also compare with the constant term of the exact cumulant");

  // iz-exact
  auto* ize_cmd = app.add_subcommand("iz-exact", "d^-2 C_q exactly, symbolic or at concrete spectra");
  std::string xs_text, ys_text;
  ize_cmd->add_option("--q", q)->required()->check(CLI::Range(1, 7));
  auto* ize_d = ize_cmd->add_option("--d", dim)->check(CLI::PositiveNumber);
  ize_cmd->add_option("--x", xs_text, "Spectrum of X");
  ize_cmd->add_option("--y", ys_text, "Spectrum of Y");

  // hciz
  auto* hc_cmd = app.add_subcommand("hciz", "Harish-Chandra determinant and the cumulant series");
  double z_re = 0, z_im = 0;
  int series_order = 3;
  hc_cmd->add_option("--x", xs_text)->required();
  hc_cmd->add_option("--y", ys_text)->required();
  hc_cmd->add_option("--z", z_re, "Real part of z")->required();
  hc_cmd->add_option("--z-imag", z_im, "Imaginary part of z");
  hc_cmd->add_option("--order", series_order)->check(CLI::Range(1, 5));

  // mc-verify
  auto* mc_cmd = app.add_subcommand("mc-verify", "Monte Carlo estimate against the exact value");
  long samples = 20000;
  std::uint64_t seed = 1;
  mc_cmd->add_option("--word", word_text, "Trace word");
  mc_cmd->add_option("--cycle-type", cycle_type, "Estimate Wg of this cycle type instead");
  mc_cmd->add_option("--d", dim)->required()->check(CLI::PositiveNumber);
  mc_cmd->add_option("--n", samples)->check(CLI::PositiveNumber);
  mc_cmd->add_option("--seed", seed);
  mc_cmd->add_option("--matrix", matrix_specs, "NAME=a,b;c,d");

  // tables
  auto* tab_cmd = app.add_subcommand("tables", "Reproduce the Wg, word and IZ tables");
  std::string section = "all";
  tab_cmd->add_option("--section", section)->check(CLI::IsMember({"all", "wg", "words", "iz"}));

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  std::string cache_path;
  if (const char* dir = std::getenv("HW_CACHE_DIR"); dir && *dir) {
    cache_path = (std::filesystem::path(dir) / "wg_cache.bin").string();
    load_wg_cache(cache_path);
  }

  try {
    if (wg_cmd->parsed()) {
      const auto mu = IntegerPartition::parse(cycle_type);
      if (symbolic || wg_d->count() == 0) {
        const auto f = wg_ratfun(mu);
        o.emit(f.to_json(), f.to_string());
      } else {
        const auto v = any_dim ? wg_any_dimension(mu, dim) : wg(mu, dim);
        o.emit({{"cycle_type", mu.parts()}, {"d", dim}, {"value", to_string(v)}}, to_string(v));
      }
    } else if (exp_cmd->parsed()) {
      const auto mu = IntegerPartition::parse(cycle_type);
      const auto sigma = Permutation::representative(mu);
      json rows = json::array();
      std::string text;
      for (int l = 0; l <= order; ++l) {
        json row = {{"l", l}, {"exponent", -mu.weight() - l}};
        if (method != "enumeration") row["expansion"] = to_string(laurent_coefficient(sigma, l, LaurentMethod::expansion));
        if (method != "expansion") row["enumeration"] = to_string(laurent_coefficient(sigma, l, LaurentMethod::enumeration));
        text += "d^" + std::to_string(-mu.weight() - l) + ": " +
                row.value(method == "enumeration" ? "enumeration" : "expansion", std::string()) + "\n";
        rows.push_back(row);
      }
      text.pop_back();
      o.emit({{"cycle_type", mu.parts()}, {"coefficients", rows}}, text);
    } else if (int_cmd->parsed()) {
      MonomialSpec s{int_list(si), int_list(sj), int_list(sip), int_list(sjp), dim};
      const auto v = monomial_integral(s);
      o.emit({{"value", to_string(v)}}, to_string(v));
    } else if (word_cmd->parsed()) {
      const auto w = Word::parse(word_text);
      if (word_d->count() && !symbolic) {
        const auto v = word_expectation_at(w, matrices_from(matrix_specs), dim);
        o.emit({{"word", w.to_string()}, {"d", dim}, {"value", to_string(v)}}, to_string(v));
      } else {
        const auto r = word_expectation(w);
        json j = {{"word", w.to_string()}, {"vanishes", r.vanishes}};
        std::string text;
        if (!w.has_constants()) {
          const auto f = r.value.constant_term();
          j["value"] = f.to_string();
          j["ratfun"] = f.to_json();
          text = f.to_string();
        } else {
          j["value"] = trace_polynomial_json(r.value);
          text = r.value.to_string();
        }
        o.emit(j, text);
      }
    } else if (cov_cmd->parsed()) {
      const auto c = exact_covariance(Word::parse(word_text), Word::parse(word2_text));
      const int deg = max_degree(c);
      json j = {{"covariance", trace_polynomial_json(c)}, {"degree", c.is_zero() ? json(nullptr) : json(deg)}};
      o.emit(j, c.to_string() + (c.is_zero() ? "" : "\ndegree " + std::to_string(deg)));
    } else if (nc_cmd->parsed()) {
      if (!partition_text.empty()) {
        const auto p = SetPartition::parse(partition_text, q);
        const auto k = kreweras(p);
        o.emit({{"partition", p.to_string()}, {"kreweras", k.to_string()}}, k.to_string());
      } else {
        json list = json::array();
        std::string text;
        for (const auto& p : enumerate_nc(q)) {
          list.push_back(p.to_string());
          text += p.to_string() + "\n";
        }
        text.pop_back();
        o.emit({{"q", q}, {"count", list.size()}, {"partitions", list}}, text);
      }
    } else if (fc_cmd->parsed()) {
      json ks = json::array();
      std::string text;
      if (symbolic) {
        std::vector<MomentPolynomial> y;
        for (int k = 1; k <= q; ++k) y.push_back(y_symbol(k));
        for (const auto& k : r_transform_coefficients(y, q)) {
          ks.push_back(to_json(k));
          text += k.to_string() + "\n";
        }
      } else {
        if (moments_text.empty()) throw ParseError("give --moments or --symbolic");
        for (const auto& k : r_transform_coefficients(rational_list(moments_text), q)) {
          ks.push_back(to_string(k));
          text += to_string(k) + "\n";
        }
      }
      text.pop_back();
      o.emit({{"q", q}, {"cumulants", ks}}, text);
    } else if (izl_cmd->parsed()) {
      auto lim = iz_cumulant_limit(q, gamma == "enumeration" ? GammaSource::enumeration : GammaSource::closed_form, threads);
      if (check_flag) {
        const bool same = lim == limit_at_infinity(iz_cumulant_exact(q, threads));
        if (!same) throw DomainError("the two computation paths disagree");
      }
      if (centered_flag) lim = centered(lim);
      if (table_flag) lim = lim * (BigRational(1) / BigRational(factorial(q - 1)));
      o.emit(to_json(lim), lim.to_string());
    } else if (ize_cmd->parsed()) {
      if (xs_text.empty() != ys_text.empty()) throw ParseError("give both --x and --y");
      if (xs_text.empty()) {
        const auto c = iz_cumulant_exact(q, threads);
        if (ize_d->count()) {
          MomentPolynomial at;
          for (const auto& [mono, coeff] : c.terms()) at.add_term(mono, coeff.evaluate(BigInt(dim)));
          o.emit(to_json(at), at.to_string());
        } else {
          o.emit(ratfun_poly_json(c), c.to_string());
        }
      } else {
        const auto x = rational_list(xs_text), y = rational_list(ys_text);
        if (ize_d->count() && dim != static_cast<long>(x.size()))
          throw DegreeMismatchError("--d must equal the length of the spectra");
        const long d = static_cast<long>(x.size());
        const BigRational v = iz_cumulant_at(q, x, y, threads) / BigRational(d * d);
        o.emit({{"q", q}, {"d", d}, {"value", to_string(v)}, {"approx", v.get_d()}}, to_string(v));
      }
    } else if (hc_cmd->parsed()) {
      const auto x = rational_list(xs_text), y = rational_list(ys_text);
      std::vector<long double> xl, yl;
      for (const auto& v : x) xl.push_back(v.get_d());
      for (const auto& v : y) yl.push_back(v.get_d());
      const auto h = hciz_determinant(xl, yl, {z_re, z_im});
      json j = {{"value", {{"re", static_cast<double>(h.real())}, {"im", static_cast<double>(h.imag())}}}};
      std::string text = double_string(static_cast<double>(h.real())) + " + " + double_string(static_cast<double>(h.imag())) + "i";
      if (z_im == 0) {
        const auto rep = iz_series_vs_determinant(x, y, {static_cast<long double>(z_re)}, series_order);
        json cs = json::array();
        for (const auto& c : rep.cumulants) cs.push_back(to_string(c));
        j["cumulants"] = cs;
        j["residual"] = static_cast<double>(rep.points.front().residual);
        text += "\nresidual " + double_string(static_cast<double>(rep.points.front().residual));
      }
      o.emit(j, text);
    } else if (mc_cmd->parsed()) {
      SamplerConfig cfg{dim, seed, samples, threads};
      EstimateReport r;
      if (!cycle_type.empty()) {
        r = estimate_monomial(wg_monomial(IntegerPartition::parse(cycle_type), dim), cfg);
      } else {
        if (word_text.empty()) throw ParseError("give --word or --cycle-type");
        r = estimate_word(Word::parse(word_text), matrices_from(matrix_specs), cfg);
      }
      o.emit(report_json(r), report_text(r));
    } else if (tab_cmd->parsed()) {
      json j = json::object();
      std::string text;
      if (section == "all" || section == "wg") {
        json rows = json::array();
        for (int k = 1; k <= 3; ++k)
          for (const auto& mu : partitions_of(k)) {
            const auto f = wg_ratfun(mu);
            rows.push_back({{"cycle_type", mu.parts()}, {"value", f.to_string()}, {"ratfun", f.to_json()}});
            text += "Wg(" + mu.to_string() + ") = " + f.to_string() + "\n";
          }
        j["wg"] = rows;
      }
      if (section == "all" || section == "words") {
        json rows = json::array();
        for (const auto& w : word_table) {
          const auto f = word_expectation_ratfun(Word::parse(w));
          rows.push_back({{"word", w}, {"value", f.to_string()}});
          text += "E tr(" + w + ") = " + f.to_string() + "\n";
        }
        j["words"] = rows;
      }
      if (section == "all" || section == "iz") {
        json rows = json::array();
        for (int k = 2; k <= 6; ++k) {
          const auto p = iz_table_entry(k, threads);
          rows.push_back({{"q", k}, {"polynomial", to_json(p)}, {"text", p.to_string()}});
          text += "q = " + std::to_string(k) + ": " + p.to_string() + "\n";
        }
        j["iz"] = rows;
      }
      text.pop_back();
      o.emit(j, text);
    }
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  if (!cache_path.empty()) save_wg_cache(cache_path);
  return 0;
}

}  // namespace hw
