#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <map>
#include <memory>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "dzeros/errors.hpp"
#include "dzeros/expansion.hpp"
#include "dzeros/expected_zeros.hpp"
#include "dzeros/general_dirichlet.hpp"
#include "dzeros/simulator.hpp"

namespace dzeros::cli {

using json = nlohmann::ordered_json;

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string format_number(double x) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

double parse_bound(const std::string& text) {
  double x = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  if (!text.empty() && text.front() == '+') ++first;
  const auto r = std::from_chars(first, last, x);
  if (r.ec != std::errc() || r.ptr != last) throw UsageError("not a number: " + text);
  return x;
}

// JSON cannot carry inf or nan; they are written as strings.
json number(double x) {
  if (std::isfinite(x)) return x;
  return format_number(x);
}

std::string iso8601_timestamp() {
  std::time_t now = std::time(nullptr);
  if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH"); epoch != nullptr && *epoch != '\0') {
    now = static_cast<std::time_t>(std::strtoll(epoch, nullptr, 10));
  }
  std::tm utc{};
  gmtime_r(&now, &utc);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &utc);
  return buf;
}

struct Manifest {
  std::string subcommand;
  json parameters = json::object();
  std::uint64_t seed = 0;

  json without_timestamp() const {
    return json{{"subcommand", subcommand},
                {"parameters", parameters},
                {"seed", seed},
                {"artifact_version", DZEROS_VERSION}};
  }
  json full() const {
    json j = without_timestamp();
    j["timestamp"] = iso8601_timestamp();
    return j;
  }
};

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> columns) : columns_(std::move(columns)) {}

  void add_row(std::vector<std::string> cells) { rows_.push_back(std::move(cells)); }
  std::size_t rows() const { return rows_.size(); }

  std::string body() const {
    std::string s;
    append_line(s, columns_);
    for (const auto& row : rows_) append_line(s, row);
    return s;
  }

  // Manifest comment, content hash over everything but the timestamp, then the table.
  void write(const std::string& path, const Manifest& manifest) const {
    const std::string data = body();
    const std::uint64_t hash = fnv1a64(manifest.without_timestamp().dump() + "\n" + data);
    std::ofstream f(path, std::ios::binary);
    if (!f) throw DomainError("cannot write " + path);
    char hex[17];
    std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(hash));
    f << "# manifest: " << manifest.full().dump() << "\n";
    f << "# content-fnv1a64: " << hex << "\n";
    f << data;
    if (!f) throw DomainError("short write to " + path);
  }

 private:
  static void append_line(std::string& s, const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i > 0) s += ',';
      s += cells[i];
    }
    s += '\n';
  }

  std::vector<std::string> columns_;
  std::vector<std::vector<std::string>> rows_;
};

std::string cell(double x) { return format_number(x); }
std::string cell(std::size_t x) { return std::to_string(x); }

// Every option of a subcommand, given or defaulted, as strings keyed by long name.
json collect_parameters(const CLI::App& sub) {
  json params = json::object();
  for (const CLI::Option* opt : sub.get_options()) {
    if (opt->get_lnames().empty()) continue;
    const std::string& name = opt->get_lnames().front();
    if (name == "help" || name == "out") continue;
    if (opt->count() > 0) {
      std::string joined;
      for (const auto& r : opt->results()) {
        if (!joined.empty()) joined += ',';
        joined += r;
      }
      params[name] = joined;
    } else if (!opt->get_default_str().empty()) {
      params[name] = opt->get_default_str();
    }
  }
  return params;
}

TailModel parse_tail(const std::string& name) {
  if (name == "exact") return TailModel::exact;
  if (name == "none") return TailModel::none;
  throw UsageError("--tail must be exact or none");
}

FrequencySet parse_set(const std::string& set_name, std::optional<double> alpha) {
  const auto check_alpha = [&](const FrequencySet& set) {
    if (alpha && *alpha != set.alpha()) {
      throw DomainError("--alpha " + format_number(*alpha) + " contradicts the set's exponent " +
                        format_number(set.alpha()));
    }
    return set;
  };
  if (set_name == "integers") return check_alpha(FrequencySet::integers());
  if (set_name == "primes") return check_alpha(FrequencySet::primes());
  if (set_name == "tau-weighted") return check_alpha(FrequencySet::tau_weighted());
  if (set_name.rfind("divisor:", 0) == 0) {
    return check_alpha(FrequencySet::divisor_weighted(static_cast<int>(parse_bound(set_name.substr(8)))));
  }
  if (set_name.rfind("generator:", 0) == 0) return check_alpha(FrequencySet::generator(parse_bound(set_name.substr(10))));
  if (set_name.rfind("file:", 0) == 0) {
    if (!alpha) throw UsageError("--set file:PATH needs --alpha");
    return FrequencySet::from_file(set_name.substr(5), *alpha);
  }
  throw UsageError("unknown --set " + set_name);
}

json estimate_json(const Estimate& e) { return json{{"value", number(e.value)}, {"se", number(e.standard_error)}}; }

// Geometric grid t = from, from/factor, ... down to `to`; empty when from < to.
std::vector<double> geometric_grid(double from, double to, double factor) {
  if (!(from > 0.0) || !(to > 0.0) || !(factor > 1.0)) {
    throw DomainError("sweep needs from > 0, to > 0, factor > 1");
  }
  std::vector<double> grid;
  for (int i = 0;; ++i) {
    const double t = from / std::pow(factor, i);
    if (t < to * (1.0 - 1e-9)) break;
    grid.push_back(t);
    if (grid.size() > 10000) throw DomainError("sweep grid exceeds 10000 points");
  }
  return grid;
}

struct Context {
  std::ostream& out;
  Manifest manifest;
  std::string csv_path;

  void emit(json summary) const {
    json j;
    j["manifest"] = manifest.full();
    for (auto& [k, v] : summary.items()) j[k] = v;
    out << j.dump(2) << "\n";
  }
  void maybe_write(const CsvTable& table) const {
    if (!csv_path.empty()) table.write(csv_path, manifest);
  }
};

// ---------------------------------------------------------------------------

struct ExpectedArgs {
  double T = 0.0;
  std::string U = "inf";
  double tol = kDefaultQuadratureTol;
  std::string method = "quadrature";
};

void run_expected(const ExpectedArgs& a, const Context& ctx) {
  const RealInterval interval{a.T, parse_bound(a.U)};
  interval.validate();
  json j;
  j["T"] = a.T;
  j["U"] = number(interval.U);
  j["method"] = a.method;
  if (a.method == "quadrature") {
    const QuadratureResult r = expected_zero_count(interval, a.tol);
    j["value"] = r.value;
    j["err"] = r.abs_err_estimate;
    j["subdivisions"] = r.subdivisions;
  } else {
    if (!interval.unbounded()) throw DomainError("the expansion evaluates [T, inf) only");
    const ExpansionCoefficients& coeffs = calibrated_expansion_coefficients();
    j["value"] = expected_zero_count_expansion(a.T, coeffs);
    // Largest expansion-vs-quadrature gap accepted when the radius was validated.
    j["err"] = 1e-6;
    j["validated_radius"] = kExpansionRadius;
    j["c0"] = *coeffs.c0;
  }
  ctx.emit(j);
}

void run_coeffs(int order, const Context& ctx) {
  if (order < 2 || order > 20) throw DomainError("--order must lie in [2, 20]");
  ExpansionCoefficients coeffs = default_expansion_coefficients(order);
  const C0Calibration cal = calibrate_c0();
  json list = json::array();
  CsvTable table({"n", "value", "symbolic"});
  for (int n = 2; n <= order; ++n) {
    const std::string form = coeffs.symbolic_form(n);
    list.push_back(json{{"n", n}, {"value", coeffs.c[static_cast<std::size_t>(n)]}, {"symbolic", form}});
    table.add_row({std::to_string(n), cell(coeffs.c[static_cast<std::size_t>(n)]), "\"" + form + "\""});
  }
  json anchors = json::array();
  for (std::size_t i = 0; i < cal.anchors.size(); ++i) {
    anchors.push_back(json{{"t", cal.anchors[i]}, {"c0", cal.estimates[i]}});
  }
  ctx.emit(json{{"order", order},
                {"c0", {{"value", cal.c0}, {"spread", cal.spread}, {"anchors", anchors}}},
                {"c1", 0.0},
                {"coefficients", list}});
  ctx.maybe_write(table);
}

struct SimulateArgs {
  double T = 0.6;
  double U = 1.0;
  std::size_t trials = 1000;
  std::uint64_t seed = 0;
  std::size_t grid = 0;
  std::size_t truncation = 0;
  double bisection_tol = 1e-10;
  std::string tail = "exact";
  std::vector<int> moment_k{1, 2, 3};
  std::vector<double> lambda{1.0, 2.0, 3.0};
};

void run_simulate(const SimulateArgs& a, const Context& ctx) {
  SimulationConfig config;
  config.interval = {a.T, a.U};
  config.trials = a.trials;
  config.seed = a.seed;
  config.grid_points = a.grid;
  config.truncation = a.truncation;
  config.bisection_tol = a.bisection_tol;
  config.tail = parse_tail(a.tail);
  config.validate();
  const SimulationSummary s = simulate(config);
  const QuadratureResult q = expected_zero_count(config.interval);

  json moments = json::array();
  for (int k : a.moment_k) {
    if (k < 1) throw DomainError("--moment-k entries must be >= 1");
    json m = estimate_json(estimate_moments(s.samples, k));
    m["k"] = k;
    moments.push_back(m);
  }
  json tails = json::array();
  for (double lambda : a.lambda) {
    if (!(lambda > 0.0)) throw DomainError("--lambda entries must be > 0");
    json t = estimate_json(tail_probability(s.samples, lambda, a.T));
    t["lambda"] = lambda;
    tails.push_back(t);
  }
  CsvTable table({"trial", "count", "refined_count", "suspect"});
  for (std::size_t i = 0; i < s.samples.size(); ++i) {
    const auto& z = s.samples[i];
    table.add_row({cell(i), cell(z.count), cell(z.refined_count), z.suspect ? "1" : "0"});
  }
  ctx.emit(json{{"T", a.T},
                {"U", a.U},
                {"trials", a.trials},
                {"truncation", s.truncation},
                {"tail", a.tail},
                {"grid_points", s.grid_points},
                {"interpolation_nodes", s.nodes},
                {"mean", s.mean},
                {"se", s.standard_error},
                {"quadrature", q.value},
                {"z_score", s.standard_error > 0 ? number((s.mean - q.value) / s.standard_error) : json(nullptr)},
                {"suspect_rate", s.suspect_rate},
                {"moments", moments},
                {"tail_probs", tails}});
  ctx.maybe_write(table);
}

struct AlphaArgs {
  std::string set = "integers";
  std::optional<double> alpha;
  double T = 0.0;
  std::string U = "inf";
  double tol = kDefaultQuadratureTol;
};

void run_alpha(const AlphaArgs& a, const Context& ctx) {
  const FrequencySet set = parse_set(a.set, a.alpha);
  const RealInterval interval{a.T, parse_bound(a.U)};
  const QuadratureResult r = expected_zero_count_alpha(interval, set, a.tol);
  const RegimePrediction p = regime_prediction(set.alpha());
  json j;
  j["set"] = set.name();
  j["kind"] = to_string(set.kind());
  j["alpha"] = set.alpha();
  j["T"] = a.T;
  j["U"] = number(interval.U);
  j["value"] = r.value;
  j["err"] = r.abs_err_estimate;
  j["regime"] = json{{"regime", to_string(p.regime)},
                     {"leading_form", p.leading_form},
                     {"leading_constant", p.leading_constant ? json(*p.leading_constant) : json("unknown")}};
  const double t = a.T - 0.5;
  json diag;
  diag["t"] = t;
  if (!p.leading_form.empty() && t < 0.5) {
    const double log_inv = std::log(1.0 / t);
    const double form = p.regime == Regime::critical ? std::sqrt(log_inv) : log_inv;
    diag["leading_form_value"] = form;
    diag["ratio_to_leading_form"] = r.value / form;
    diag["ratio_over_constant"] = r.value / form / *p.leading_constant;
  }
  j["diagnostics"] = diag;
  if (const auto fit = set.counting_fit()) {
    j["counting_fit"] = json{{"scale", fit->scale},
                             {"rms_relative_deviation", fit->rms_relative_deviation},
                             {"points", fit->points}};
  }
  ctx.emit(j);
}

struct CorrelationArgs {
  std::optional<double> sigma_k;
  std::optional<double> sigma_l;
  std::optional<double> rho;
  std::optional<int> dyadic;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
};

void run_correlation(const CorrelationArgs& a, const Context& ctx) {
  const int modes = (a.sigma_k || a.sigma_l ? 1 : 0) + (a.rho ? 1 : 0) + (a.dyadic ? 1 : 0);
  if (modes != 1) throw UsageError("give exactly one of --sigma-k/--sigma-l, --rho, --dyadic");
  if (a.rho) {
    json j{{"rho", *a.rho}, {"exact", orthant_indicator_correlation(*a.rho)}};
    if (a.trials > 0) j["monte_carlo"] = estimate_json(monte_carlo_orthant_correlation(*a.rho, a.trials, a.seed));
    ctx.emit(j);
    return;
  }
  if (a.dyadic) {
    const int R = *a.dyadic;
    if (R < 1 || R > 48) throw DomainError("--dyadic must lie in [1, 48]");
    CsvTable table({"k", "l", "abs_corr", "scaled"});
    double worst = 0.0;
    for (int k = 1; k <= R; ++k) {
      for (int l = 1; l <= R; ++l) {
        const double c = std::abs(series_correlation(0.5 + std::ldexp(1.0, -k), 0.5 + std::ldexp(1.0, -l)));
        const double scaled = c * std::pow(std::sqrt(2.0), std::abs(k - l));
        worst = std::max(worst, scaled);
        table.add_row({std::to_string(k), std::to_string(l), cell(c), cell(scaled)});
      }
    }
    ctx.emit(json{{"R", R}, {"fitted_C", worst}, {"bound_C", 3.0}, {"within_bound", worst <= 3.0}});
    ctx.maybe_write(table);
    return;
  }
  if (!a.sigma_k || !a.sigma_l) throw UsageError("--sigma-k and --sigma-l go together");
  json j{{"sigma_k", *a.sigma_k}, {"sigma_l", *a.sigma_l}, {"exact", series_correlation(*a.sigma_k, *a.sigma_l)}};
  if (a.trials > 0) {
    j["monte_carlo"] = estimate_json(monte_carlo_series_correlation(*a.sigma_k, *a.sigma_l, a.trials, a.seed));
  }
  ctx.emit(j);
}

struct SignArgs {
  int R = 20;
  std::size_t trials = 1000;
  std::uint64_t seed = 0;
  std::size_t head = kDefaultExactHead;
  std::string tail = "exact";
};

void run_sign_stats(const SignArgs& a, const Context& ctx) {
  const SignStatisticsSummary s = simulate_sign_statistics(a.R, a.trials, a.seed, a.head, parse_tail(a.tail));
  CsvTable table({"trial", "positive", "negative", "suspect"});
  std::size_t suspect = 0;
  for (std::size_t i = 0; i < s.per_trial.size(); ++i) {
    const auto& t = s.per_trial[i];
    suspect += static_cast<std::size_t>(t.suspect);
    table.add_row({cell(i), std::to_string(t.positive), std::to_string(t.negative), std::to_string(t.suspect)});
  }
  const Estimate& f = s.positive_fraction;
  ctx.emit(json{{"R", a.R},
                {"trials", a.trials},
                {"positive_fraction", estimate_json(f)},
                {"z_score_vs_half", f.standard_error > 0 ? number((f.value - 0.5) / f.standard_error) : json(nullptr)},
                {"suspect_points", suspect}});
  ctx.maybe_write(table);
}

struct SweepArgs {
  double from = 1e-2;
  double to = 1e-8;
  double factor = 10.0;
  double tol = kDefaultQuadratureTol;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  double mc_U = 1.0;
};

void run_sweep(const SweepArgs& a, const Context& ctx) {
  const std::vector<double> grid = geometric_grid(a.from, a.to, a.factor);
  std::vector<std::string> columns{"t", "T", "quadrature", "quadrature_err", "expansion", "ratio", "diff"};
  if (a.trials > 0) {
    for (const char* c : {"mc_U", "quadrature_to_U", "mc_mean", "mc_se"}) columns.emplace_back(c);
  }
  CsvTable table(columns);
  const ExpansionCoefficients* coeffs = grid.empty() ? nullptr : &calibrated_expansion_coefficients();
  json rows = json::array();
  for (double nominal : grid) {
    const double T = 0.5 + nominal;
    const double t = T - 0.5;
    const QuadratureResult q = expected_zero_count({T}, a.tol);
    const double ratio = q.value / std::log(1.0 / t);
    std::optional<double> expansion;
    if (t <= kExpansionRadius) expansion = expected_zero_count_expansion(T, *coeffs);
    std::vector<std::string> row{cell(t), cell(T), cell(q.value), cell(q.abs_err_estimate),
                                 expansion ? cell(*expansion) : "", cell(ratio),
                                 expansion ? cell(*expansion - q.value) : ""};
    json r{{"t", t}, {"quadrature", q.value}, {"ratio", ratio}};
    if (expansion) r["diff"] = *expansion - q.value;
    if (a.trials > 0) {
      SimulationConfig config;
      config.interval = {T, a.mc_U};
      config.trials = a.trials;
      config.seed = a.seed;
      config.validate();
      const SimulationSummary s = simulate(config);
      const QuadratureResult finite = expected_zero_count(config.interval, a.tol);
      for (const double v : {a.mc_U, finite.value, s.mean, s.standard_error}) row.push_back(cell(v));
      r["mc_mean"] = s.mean;
      r["mc_se"] = s.standard_error;
    }
    table.add_row(std::move(row));
    rows.push_back(r);
  }
  ctx.emit(json{{"rows", rows.size()}, {"leading_constant", 0.5 / std::numbers::pi}, {"table", rows}});
  ctx.maybe_write(table);
}

std::vector<std::string> replay_args(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw DomainError("cannot open " + path);
  std::string line;
  const std::string prefix = "# manifest: ";
  while (std::getline(f, line)) {
    if (line.rfind(prefix, 0) != 0) continue;
    const json m = json::parse(line.substr(prefix.size()));
    std::vector<std::string> args{m.at("subcommand").get<std::string>()};
    for (const auto& [k, v] : m.at("parameters").items()) {
      args.push_back("--" + k);
      args.push_back(v.get<std::string>());
    }
    return args;
  }
  throw DomainError(path + " carries no manifest");
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    return dispatch(args, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const PrecisionError& e) {
    err << "precision error: " << e.what() << "\n";
    return kPrecision;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << "\n";
    return kDomain;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternal;
  }
}

namespace {

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Expected real zeros of Gaussian random Dirichlet series"};
  app.name("dzeros");
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default();
  std::string csv_path;
  const auto add_out = [&](CLI::App* sub) { sub->add_option("--out", csv_path, "CSV output path"); };

  ExpectedArgs ea;
  CLI::App* expected = app.add_subcommand("expected", "E N(T, U) by quadrature or the log expansion");
  expected->add_option("--T", ea.T, "Left end, > 1/2")->required();
  expected->add_option("--U", ea.U, "Right end or inf");
  expected->add_option("--tol", ea.tol, "Absolute quadrature tolerance");
  expected->add_option("--method", ea.method)->check(CLI::IsMember({"quadrature", "expansion"}));

  int order = kDefaultExpansionOrder;
  CLI::App* coeffs = app.add_subcommand("coeffs", "Expansion coefficients c_2..c_M");
  coeffs->add_option("--order", order, "Highest coefficient index M");
  add_out(coeffs);

  SimulateArgs sa;
  CLI::App* sim = app.add_subcommand("simulate", "Monte Carlo zero counts on [T, U]");
  sim->add_option("--T", sa.T);
  sim->add_option("--U", sa.U);
  sim->add_option("--trials", sa.trials);
  sim->add_option("--seed", sa.seed);
  sim->add_option("--grid", sa.grid, "Scan points; 0 = 2000 per unit of log(1/(sigma-1/2))");
  sim->add_option("--truncation", sa.truncation, "Explicit terms N; 0 = automatic");
  sim->add_option("--bisection-tol", sa.bisection_tol);
  sim->add_option("--tail", sa.tail, "exact or none");
  sim->add_option("--moment-k", sa.moment_k)->delimiter(',')->default_str("1,2,3");
  sim->add_option("--lambda", sa.lambda)->delimiter(',')->default_str("1,2,3");
  add_out(sim);

  AlphaArgs aa;
  CLI::App* alpha = app.add_subcommand("alpha", "Expected zeros for a general frequency set");
  alpha->add_option("--set", aa.set, "integers, primes, tau-weighted, divisor:K, generator:BETA, file:PATH");
  alpha->add_option("--alpha", aa.alpha, "Counting exponent (required for file sets)");
  alpha->add_option("--T", aa.T)->required();
  alpha->add_option("--U", aa.U);
  alpha->add_option("--tol", aa.tol);

  CorrelationArgs ca;
  CLI::App* corr = app.add_subcommand("correlation", "Series and orthant correlations");
  corr->add_option("--sigma-k", ca.sigma_k);
  corr->add_option("--sigma-l", ca.sigma_l);
  corr->add_option("--rho", ca.rho);
  corr->add_option("--dyadic", ca.dyadic, "Tabulate |corr| along sigma_n = 1/2 + 2^-n, n <= R");
  corr->add_option("--trials", ca.trials, "Monte Carlo paths or pairs; 0 skips");
  corr->add_option("--seed", ca.seed);
  add_out(corr);

  SignArgs ga;
  CLI::App* sign = app.add_subcommand("sign-stats", "S+(R), S-(R) along sigma_n = 1/2 + 2^-n");
  sign->add_option("--R", ga.R);
  sign->add_option("--trials", ga.trials);
  sign->add_option("--seed", ga.seed);
  sign->add_option("--head", ga.head);
  sign->add_option("--tail", ga.tail);
  add_out(sign);

  SweepArgs wa;
  CLI::App* sweep = app.add_subcommand("sweep", "Quadrature vs expansion on a geometric grid of T - 1/2");
  sweep->add_option("--from", wa.from, "Largest T - 1/2");
  sweep->add_option("--to", wa.to, "Smallest T - 1/2");
  sweep->add_option("--factor", wa.factor);
  sweep->add_option("--tol", wa.tol);
  sweep->add_option("--trials", wa.trials, "Monte Carlo trials per row on [T, mc-U]; 0 skips");
  sweep->add_option("--seed", wa.seed);
  sweep->add_option("--mc-U", wa.mc_U);
  add_out(sweep);

  std::string replay_path;
  CLI::App* replay = app.add_subcommand("replay", "Re-run the command recorded in a CSV manifest");
  replay->add_option("manifest", replay_path, "CSV written with --out")->required();
  add_out(replay);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  if (replay->parsed()) {
    std::vector<std::string> again = replay_args(replay_path);
    if (!csv_path.empty()) {
      again.push_back("--out");
      again.push_back(csv_path);
    }
    return dispatch(again, out, err);
  }

  CLI::App* chosen = app.get_subcommands().front();
  Context ctx{out, Manifest{chosen->get_name(), collect_parameters(*chosen), 0}, csv_path};
  if (chosen == sim) ctx.manifest.seed = sa.seed;
  if (chosen == corr) ctx.manifest.seed = ca.seed;
  if (chosen == sign) ctx.manifest.seed = ga.seed;
  if (chosen == sweep) ctx.manifest.seed = wa.seed;

  if (chosen == expected) run_expected(ea, ctx);
  if (chosen == coeffs) run_coeffs(order, ctx);
  if (chosen == sim) run_simulate(sa, ctx);
  if (chosen == alpha) run_alpha(aa, ctx);
  if (chosen == corr) run_correlation(ca, ctx);
  if (chosen == sign) run_sign_stats(ga, ctx);
  if (chosen == sweep) run_sweep(wa, ctx);
  return kOk;
}

}  // namespace

}  // namespace dzeros::cli
