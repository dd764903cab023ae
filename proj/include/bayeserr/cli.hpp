#pragma once

// Command implementations behind the `bayeserr` executable. Each command
// returns a report value and has a writer for text or CSV output, so the
// commands can be exercised without spawning a process.
//
// Exit-code contract (see CliError): 0 success, 1 parse error,
// 2 unsupported family/generator combination, 3 I/O error.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "bayeserr/bounds.hpp"
#include "bayeserr/distributions.hpp"
#include "bayeserr/error.hpp"
#include "bayeserr/exact.hpp"
#include "bayeserr/means.hpp"
#include "bayeserr/montecarlo.hpp"

namespace bayeserr::cli {

using json = nlohmann::json;

class CliError : public std::runtime_error {
 public:
  CliError(int exit_code, const std::string& what) : std::runtime_error(what), exit_code_(exit_code) {}
  int exit_code() const { return exit_code_; }

 private:
  int exit_code_;
};

inline CliError parse_error(const std::string& what) { return CliError(1, "parse error: " + what); }
inline CliError unsupported(const std::string& what) { return CliError(2, "unsupported: " + what); }
inline CliError io_error(const std::string& what) { return CliError(3, "i/o error: " + what); }

enum class Format { Text, Csv };

struct Scenario {
  Distribution p1;
  Distribution p2;
  double w1 = 0.5;
  double w2 = 0.5;
  CostModel cost = CostModel::probability_of_error();
};

// ---------------------------------------------------------------------------
// Scenario JSON

namespace detail {

inline double number_field(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number()) {
    throw parse_error(std::string("missing numeric field '") + key + "'");
  }
  return j.at(key).get<double>();
}

// Row-major matrix: either nested rows or a flat array of d*d numbers.
inline SymMatrix matrix_field(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_array() || j.at(key).empty()) {
    throw parse_error(std::string("missing matrix field '") + key + "'");
  }
  const json& m = j.at(key);
  std::vector<double> flat;
  std::size_t d = 0;
  if (m.front().is_array()) {
    d = m.size();
    for (const auto& row : m) {
      if (!row.is_array() || row.size() != d) throw parse_error(std::string("'") + key + "' is not square");
      for (const auto& v : row) {
        if (!v.is_number()) throw parse_error(std::string("non-numeric entry in '") + key + "'");
        flat.push_back(v.get<double>());
      }
    }
  } else {
    for (const auto& v : m) {
      if (!v.is_number()) throw parse_error(std::string("non-numeric entry in '") + key + "'");
      flat.push_back(v.get<double>());
    }
    d = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(flat.size()))));
    if (d * d != flat.size()) throw parse_error(std::string("'") + key + "' is not a square matrix");
  }
  Eigen::MatrixXd out(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t k = 0; k < d; ++k) out(i, k) = flat[i * d + k];
  return SymMatrix(out);
}

inline Vector vector_field(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_array() || j.at(key).empty()) {
    throw parse_error(std::string("missing vector field '") + key + "'");
  }
  const json& a = j.at(key);
  Vector v(static_cast<Eigen::Index>(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i].is_number()) throw parse_error(std::string("non-numeric entry in '") + key + "'");
    v(static_cast<Eigen::Index>(i)) = a[i].get<double>();
  }
  return v;
}

}  // namespace detail

// {"family": "gaussian1d", "mu": 0, "sigma": 1}
// {"family": "cauchy", "s": 10}
// {"family": "mvn", "mu": [0, 0], "sigma": [[1, 0], [0, 1]]}
// {"family": "pearson7", "lambda": 2, "sigma": [[1, 0], [0, 1]]}
// {"family": "mvt", "nu": 6, "sigma": [[1, 0], [0, 1]]}
inline Distribution parse_distribution(const json& j) {
  if (!j.is_object() || !j.contains("family") || !j.at("family").is_string()) {
    throw parse_error("distribution needs a string 'family'");
  }
  const std::string family = j.at("family").get<std::string>();
  try {
    if (family == "gaussian1d") {
      return UnivariateGaussian(detail::number_field(j, "mu"), detail::number_field(j, "sigma"));
    }
    if (family == "cauchy") return CauchyScale(detail::number_field(j, "s"));
    if (family == "mvn") {
      return MultivariateGaussian(detail::vector_field(j, "mu"), detail::matrix_field(j, "sigma"));
    }
    if (family == "pearson7") {
      return PearsonVII(detail::number_field(j, "lambda"), detail::matrix_field(j, "sigma"));
    }
    if (family == "mvt") return MultivariateT(detail::number_field(j, "nu"), detail::matrix_field(j, "sigma"));
  } catch (const Error& e) {
    throw parse_error(family + ": " + e.what());
  }
  throw parse_error("unknown family '" + family + "'");
}

inline Scenario parse_scenario(const json& j) {
  if (!j.is_object() || !j.contains("p1") || !j.contains("p2")) {
    throw parse_error("scenario needs 'p1' and 'p2'");
  }
  Scenario sc{parse_distribution(j.at("p1")), parse_distribution(j.at("p2"))};
  if (dim(sc.p1) != dim(sc.p2)) throw parse_error("p1 and p2 have different dimensions");
  if (j.contains("priors")) {
    const json& p = j.at("priors");
    if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number()) {
      throw parse_error("'priors' must be [w1, w2]");
    }
    sc.w1 = p[0].get<double>();
    sc.w2 = p[1].get<double>();
    if (!(sc.w1 > 0.0) || !(sc.w2 > 0.0) || std::abs(sc.w1 + sc.w2 - 1.0) > 1e-12) {
      throw parse_error("priors must be positive and sum to 1");
    }
  }
  sc.cost = CostModel::probability_of_error(sc.w1, sc.w2);
  if (j.contains("cost")) {
    const json& c = j.at("cost");
    if (!c.is_array() || c.size() != 2 || !c[0].is_array() || !c[1].is_array() || c[0].size() != 2 ||
        c[1].size() != 2) {
      throw parse_error("'cost' must be a 2x2 matrix");
    }
    try {
      sc.cost.c11 = c[0][0].get<double>();
      sc.cost.c12 = c[0][1].get<double>();
      sc.cost.c21 = c[1][0].get<double>();
      sc.cost.c22 = c[1][1].get<double>();
      sc.cost.validate();
    } catch (const json::exception& e) {
      throw parse_error(std::string("'cost': ") + e.what());
    } catch (const Error& e) {
      throw parse_error(e.what());
    }
  }
  return sc;
}

inline Scenario parse_scenario_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw parse_error(e.what());
  }
  return parse_scenario(j);
}

inline Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot read scenario file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_scenario_text(buf.str());
}

// "arithmetic" | "geometric" | "harmonic" | "power:<p>"
inline MeanGenerator parse_generator(const std::string& s) {
  if (s == "arithmetic") return MeanGenerator::arithmetic();
  if (s == "geometric") return MeanGenerator::geometric();
  if (s == "harmonic") return MeanGenerator::harmonic();
  if (s.rfind("power:", 0) == 0) {
    try {
      std::size_t used = 0;
      const double p = std::stod(s.substr(6), &used);
      if (used != s.size() - 6) throw std::invalid_argument(s);
      return MeanGenerator::power(p);
    } catch (const std::exception&) {
      throw parse_error("bad generator '" + s + "'");
    }
  }
  throw parse_error("unknown generator '" + s + "'");
}

// The generator each family's closed form is built on.
inline MeanGenerator default_generator(const Distribution& d) {
  return std::visit(
      [](const auto& dist) -> MeanGenerator {
        using T = std::decay_t<decltype(dist)>;
        if constexpr (std::is_same_v<T, CauchyScale>) {
          return MeanGenerator::harmonic();
        } else if constexpr (std::is_same_v<T, PearsonVII>) {
          return MeanGenerator::power(-1.0 / dist.lambda());
        } else if constexpr (std::is_same_v<T, MultivariateT>) {
          return MeanGenerator::power(1.0 / dist.t());
        } else {
          return MeanGenerator::geometric();
        }
      },
      d);
}

// ---------------------------------------------------------------------------
// Output helpers

inline std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

inline void write_fields(std::ostream& os, Format format,
                         const std::vector<std::pair<std::string, std::string>>& fields) {
  if (format == Format::Csv) {
    for (std::size_t i = 0; i < fields.size(); ++i) os << (i ? "," : "") << fields[i].first;
    os << '\n';
    for (std::size_t i = 0; i < fields.size(); ++i) os << (i ? "," : "") << fields[i].second;
    os << '\n';
    return;
  }
  std::size_t width = 0;
  for (const auto& f : fields) width = std::max(width, f.first.size());
  for (const auto& f : fields) os << std::left << std::setw(static_cast<int>(width + 2)) << f.first << f.second << '\n';
}

// ---------------------------------------------------------------------------
// bound

struct BoundOptions {
  std::string alpha = "bhattacharyya";  // "<x>" | "chernoff" | "bhattacharyya"
  bool numeric = false;
  std::optional<MeanGenerator> generator;
  NumericConfig numeric_config{};
  ChernoffOptions chernoff{};
  ChernoffOptions numeric_chernoff{41, 1e-6};
};

struct BoundReport {
  bool optimized = false;
  std::string generator;
  bool numeric = false;
  double alpha = 0.0;
  double rho = 0.0;
  double pe_bound = 0.0;
  double divergence = 0.0;
};

namespace detail {

inline bool equal_priors(const Scenario& sc) { return sc.w1 == sc.w2; }

// Closed-form objective alpha -> AffinityResult for the scenario's family.
inline std::function<AffinityResult(double)> closed_form(const Scenario& sc) {
  const auto& p1 = sc.p1;
  const auto& p2 = sc.p2;
  if (p1.index() != p2.index()) {
    throw unsupported("no closed form for mixed families " + family_name(p1) + "/" + family_name(p2) +
                      " (use --numeric)");
  }
  const Priors priors{sc.w1, sc.w2};
  if (const auto* g1 = std::get_if<UnivariateGaussian>(&p1)) {
    const auto g2 = std::get<UnivariateGaussian>(p2);
    const auto a = as_mvn(*g1), b = as_mvn(g2);
    return [a, b, priors](double alpha) { return rho_alpha_mvn(a, b, alpha, priors); };
  }
  if (const auto* m1 = std::get_if<MultivariateGaussian>(&p1)) {
    const auto a = *m1, b = std::get<MultivariateGaussian>(p2);
    return [a, b, priors](double alpha) { return rho_alpha_mvn(a, b, alpha, priors); };
  }
  if (!equal_priors(sc)) {
    throw unsupported("the " + family_name(p1) + " closed form needs equal priors (use --numeric)");
  }
  if (const auto* c1 = std::get_if<CauchyScale>(&p1)) {
    const double s1 = c1->s(), s2 = std::get<CauchyScale>(p2).s();
    return [s1, s2](double alpha) { return cauchy_pe_bound(s1, s2, alpha); };
  }
  if (const auto* q1 = std::get_if<PearsonVII>(&p1)) {
    const auto a = *q1, b = std::get<PearsonVII>(p2);
    if (a.dim() != b.dim() || a.lambda() != b.lambda()) {
      throw unsupported("pearson7 closed form needs equal d and lambda");
    }
    return [a, b](double alpha) { return pearson7_pe_bound(a, b, alpha); };
  }
  const auto a = std::get<MultivariateT>(p1), b = std::get<MultivariateT>(p2);
  if (a.dim() != b.dim() || a.nu() != b.nu()) throw unsupported("mvt closed form needs equal d and nu");
  return [a, b](double alpha) { return mvt_rho_alpha(a, b, alpha); };
}

inline double parse_alpha(const std::string& s) {
  try {
    std::size_t used = 0;
    const double a = std::stod(s, &used);
    if (used != s.size() || !(a >= 0.0 && a <= 1.0)) throw std::invalid_argument(s);
    return a;
  } catch (const std::exception&) {
    throw parse_error("--alpha must be a number in [0,1], 'chernoff' or 'bhattacharyya'");
  }
}

}  // namespace detail

inline BoundReport cmd_bound(const Scenario& sc, const BoundOptions& opt) {
  const MeanGenerator family_default = default_generator(sc.p1);
  const MeanGenerator g = opt.generator.value_or(family_default);
  BoundReport report;
  report.generator = g.name();
  report.numeric = opt.numeric;
  const bool chernoff = opt.alpha == "chernoff";
  const double fixed_alpha =
      chernoff ? 0.0 : (opt.alpha == "bhattacharyya" ? 0.5 : detail::parse_alpha(opt.alpha));

  std::function<AffinityResult(double)> objective;
  if (opt.numeric) {
    const auto& p1 = sc.p1;
    const auto& p2 = sc.p2;
    const double w1 = sc.w1, w2 = sc.w2;
    const NumericConfig cfg = opt.numeric_config;
    objective = [&p1, &p2, w1, w2, g, cfg](double alpha) -> AffinityResult {
      const double bound = rho_numeric(p1, p2, w1, w2, g, alpha, cfg).value;
      return {alpha, std::nan(""), bound};
    };
  } else {
    if (g.exponent() != family_default.exponent()) {
      throw unsupported("closed form for " + family_name(sc.p1) + " uses the " + family_default.name() +
                        " generator; pass --numeric for " + g.name());
    }
    try {
      objective = detail::closed_form(sc);
    } catch (const MismatchedFamily& e) {
      throw unsupported(e.what());
    }
  }

  AffinityResult at{};
  if (chernoff) {
    const ChernoffResult c = chernoff_optimize(objective, opt.numeric ? opt.numeric_chernoff : opt.chernoff);
    report.optimized = true;
    at = {c.alpha_star, c.rho_star, c.pe_bound};
  } else {
    at = objective(fixed_alpha);
  }
  report.alpha = at.alpha;
  report.pe_bound = at.pe_bound;
  report.rho = opt.numeric
                   ? rho_numeric(sc.p1, sc.p2, 1.0, 1.0, g, at.alpha, opt.numeric_config).value
                   : at.rho;
  report.divergence = -std::log(report.rho);
  return report;
}

inline void write_bound(std::ostream& os, const BoundReport& r, Format format) {
  std::vector<std::pair<std::string, std::string>> fields{
      {r.optimized ? "alpha_star" : "alpha", fmt(r.alpha)},
      {r.optimized ? "rho_star" : "rho", fmt(r.rho)},
      {"pe_bound", fmt(r.pe_bound)}};
  if (r.optimized) fields.emplace_back("divergence", fmt(r.divergence));
  fields.emplace_back("generator", r.generator);
  fields.emplace_back("method", r.numeric ? "numeric" : "closed_form");
  write_fields(os, format, fields);
}

// ---------------------------------------------------------------------------
// exact

inline ExactResult cmd_exact(const Scenario& sc) {
  try {
    return exact_bayes_error(sc.cost, sc.p1, sc.p2);
  } catch (const Unsupported& e) {
    throw unsupported(std::string(e.what()) + " (try the 'estimate' command)");
  } catch (const DimensionMismatch& e) {
    throw parse_error(e.what());
  }
}

inline void write_exact(std::ostream& os, const ExactResult& r, Format format) {
  write_fields(os, format,
               {{"tv", fmt(r.tv)},
                {"tv_scaled", fmt(r.tv_scaled)},
                {"bayes_error", fmt(r.bayes_error)},
                {"prob_error", fmt(r.prob_error)}});
}

// ---------------------------------------------------------------------------
// estimate

struct EstimateReport {
  Estimate tv;
  Estimate pe;
};

inline EstimateReport cmd_estimate(const Scenario& sc, std::size_t n, std::uint64_t seed) {
  if (n < 2) throw parse_error("--n must be at least 2");
  return {estimate_tv(sc.p1, sc.p2, n, seed), estimate_pe(sc.p1, sc.p2, sc.w1, sc.w2, n, seed)};
}

inline void write_estimate(std::ostream& os, const EstimateReport& r, Format format) {
  write_fields(os, format,
               {{"n", std::to_string(r.tv.n)},
                {"seed", std::to_string(r.tv.seed)},
                {"tv", fmt(r.tv.value)},
                {"tv_std_error", fmt(r.tv.std_error)},
                {"tv_ci_low", fmt(r.tv.ci_low)},
                {"tv_ci_high", fmt(r.tv.ci_high)},
                {"pe", fmt(r.pe.value)},
                {"pe_std_error", fmt(r.pe.std_error)},
                {"pe_ci_low", fmt(r.pe.ci_low)},
                {"pe_ci_high", fmt(r.pe.ci_high)}});
}

inline void write_convergence_csv(std::ostream& os,
                                  const std::vector<std::pair<std::size_t, Estimate>>& rows) {
  os << "n,tv,std_error,ci_low,ci_high\n";
  for (const auto& [n, e] : rows) {
    os << n << ',' << fmt(e.value) << ',' << fmt(e.std_error) << ',' << fmt(e.ci_low) << ','
       << fmt(e.ci_high) << '\n';
  }
}

inline std::vector<std::size_t> parse_n_list(const std::string& s) {
  std::vector<std::size_t> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const long long v = std::stoll(item, &used);
      if (used != item.size() || v < 2) throw std::invalid_argument(item);
      out.push_back(static_cast<std::size_t>(v));
    } catch (const std::exception&) {
      throw parse_error("--convergence expects a comma-separated list of integers >= 2");
    }
  }
  if (out.empty()) throw parse_error("--convergence list is empty");
  for (std::size_t i = 1; i < out.size(); ++i) {
    if (out[i] <= out[i - 1]) throw parse_error("--convergence list must be increasing");
  }
  return out;
}

// ---------------------------------------------------------------------------
// table1: central MVT pairs, nu = 6, Sigma1 = I, Sigma2 = (d + 1) I

struct Table1Row {
  int d;
  double lambda;
  double pe_hat;
  double chernoff_bound;
  double alpha_star;
  double bhattacharyya_bound;
};

inline constexpr int kTable1Dims[] = {2, 3, 5, 10, 15, 20};

inline Table1Row table1_row(int d, std::size_t n, std::uint64_t seed) {
  const double lambda = d + 1.0;
  const MultivariateT p1(6.0, SymMatrix::identity(d));
  const MultivariateT p2(6.0, SymMatrix::scaled_identity(d, lambda));
  const ChernoffResult c = chernoff_optimize([&](double a) { return mvt_rho_alpha(p1, p2, a); });
  const double bhat = mvt_rho_alpha(p1, p2, 0.5).pe_bound;
  const Estimate pe = estimate_pe(p1, p2, 0.5, 0.5, n, seed);
  return {d, lambda, pe.value, c.pe_bound, c.alpha_star, bhat};
}

inline std::vector<Table1Row> cmd_table1(std::size_t n, std::uint64_t seed) {
  if (n < 2) throw parse_error("--n must be at least 2");
  std::vector<Table1Row> rows;
  for (int d : kTable1Dims) rows.push_back(table1_row(d, n, seed));
  return rows;
}

inline void write_table1_csv(std::ostream& os, const std::vector<Table1Row>& rows) {
  os << "d,lambda,pe_hat,chernoff_bound,alpha_star,bhattacharyya_bound\n";
  for (const auto& r : rows) {
    os << r.d << ',' << fmt(r.lambda) << ',' << fmt(r.pe_hat) << ',' << fmt(r.chernoff_bound) << ','
       << fmt(r.alpha_star) << ',' << fmt(r.bhattacharyya_bound) << '\n';
  }
}

// ---------------------------------------------------------------------------
// gap: Cauchy Bhattacharyya bound versus exact P_e over lambda = s2/s1

struct GapRow {
  bool maximizer;
  double lambda;
  double pe;
  double bhattacharyya;
  double gap;
};

inline GapRow gap_row(double lambda, bool maximizer) {
  return {maximizer, lambda, cauchy_pe(lambda), cauchy_pe_bound(1.0, lambda, 0.5).pe_bound,
          cauchy_gap(lambda)};
}

inline std::vector<GapRow> cmd_gap(double lambda_max, int steps) {
  if (!(lambda_max > 1.0)) throw parse_error("--lambda-max must be > 1");
  if (steps < 1) throw parse_error("--steps must be >= 1");
  std::vector<GapRow> rows;
  for (int i = 0; i <= steps; ++i) {
    rows.push_back(gap_row(1.0 + (lambda_max - 1.0) * i / steps, false));
  }
  rows.push_back(gap_row(cauchy_gap_maximizer().lambda, true));
  return rows;
}

inline void write_gap_csv(std::ostream& os, const std::vector<GapRow>& rows) {
  os << "kind,lambda,pe,bhattacharyya,gap\n";
  for (const auto& r : rows) {
    os << (r.maximizer ? "maximizer" : "sample") << ',' << fmt(r.lambda) << ',' << fmt(r.pe) << ','
       << fmt(r.bhattacharyya) << ',' << fmt(r.gap) << '\n';
  }
}

// Writes through `write` to `path`, or to `fallback` when path is empty.
template <class Writer>
void write_output(const std::string& path, std::ostream& fallback, Writer&& write) {
  if (path.empty()) {
    write(fallback);
    return;
  }
  std::ofstream out(path);
  if (!out) throw io_error("cannot open '" + path + "' for writing");
  write(out);
  out.flush();
  if (!out) throw io_error("failed writing '" + path + "'");
}

}  // namespace bayeserr::cli
