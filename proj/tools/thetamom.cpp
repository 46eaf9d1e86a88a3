// thetamom command-line driver.

#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "thetamom/char_core.hpp"
#include "thetamom/csv.hpp"
#include "thetamom/divisor.hpp"
#include "thetamom/error.hpp"
#include "thetamom/fit.hpp"
#include "thetamom/moments.hpp"
#include "thetamom/sweep.hpp"
#include "thetamom/theta.hpp"
#include "thetamom/verify.hpp"
#include "thetamom/version.hpp"

namespace th = thetamom;

namespace {

constexpr int kOk = 0;
constexpr int kVerifyFailed = 1;
constexpr int kUsage = 2;
constexpr int kIo = 3;

std::string num(double v) { return th::format_double(v); }
std::string num(std::uint64_t v) { return std::to_string(v); }
std::string num(int v) { return std::to_string(v); }

int cmd_ctx(std::uint64_t p) {
  const th::PrimeContext ctx(p);
  std::cout << "p=" << ctx.modulus() << '\n'
            << "primitive_root=" << ctx.primitive_root() << '\n'
            << "characters=" << ctx.order() << '\n'
            << "even=" << (ctx.order() + 1) / 2 << '\n'
            << "odd=" << ctx.order() / 2 << '\n';
  return kOk;
}

struct ThetaArgs {
  std::uint64_t p = 0;
  int eta = 0;
  double x = 1.0;
  std::optional<std::uint64_t> character;
  bool all = false;
  std::optional<double> tail_eps;
};

int cmd_theta(const ThetaArgs& a) {
  const th::PrimeContext ctx(a.p);
  const auto request = th::ThetaRequest::make(a.p, a.eta, a.x, a.tail_eps.value_or(th::ThetaRequest::default_tail_eps(a.p)));
  std::cout << "j,re,im,abs,N_trunc\n";
  auto print = [&](std::uint64_t j, th::Complex v, std::uint64_t n) {
    std::cout << j << ',' << num(v.real()) << ',' << num(v.imag()) << ',' << num(std::abs(v)) << ',' << n << '\n';
  };
  if (a.all) {
    const auto table = th::theta_all_characters(ctx, request);
    for (std::uint64_t j = 0; j < ctx.order(); ++j) {
      if (th::CharacterId{j}.theta_weight() == a.eta) print(j, table.values[j], table.truncation);
    }
    return kOk;
  }
  const std::uint64_t j = a.character.value_or(a.eta);
  if (j >= ctx.order()) throw th::InvalidArgument("theta: --char must be below p-1");
  const auto n = th::truncation_length(a.p, a.eta, a.x, request.tail_eps);
  print(j, th::theta_naive(ctx, th::CharacterId{j}, a.eta, a.x, n), n);
  return kOk;
}

int cmd_moments(std::uint64_t p, const std::vector<int>& ks, const std::string& csv_path) {
  const th::PrimeContext ctx(p);
  const auto even = th::theta_all_characters(ctx, 0);
  const auto odd = th::theta_all_characters(ctx, 1);
  std::ostringstream out;
  out << th::csv_header(th::SweepKind::moments) << '\n';
  auto emit = [&](const th::MomentRecord& r, int eta, std::uint64_t n) {
    out << th::join({num(r.p), num(r.k), std::string(th::to_string(r.moment_class)), num(r.value),
                     num(r.normalizer), num(r.ratio), num(eta), num(n), std::string(th::kToolVersion)})
        << '\n';
  };
  for (int k : ks) {
    emit(th::moment_even(even, k, false), 0, even.truncation);
    emit(th::moment_even(even, k, true), 0, even.truncation);
    emit(th::moment_odd(odd, k), 1, odd.truncation);
  }
  if (csv_path.empty()) {
    std::cout << out.str();
  } else {
    th::write_text_atomic(csv_path, out.str());
  }
  return kOk;
}

int cmd_sweep(th::SweepConfig config) {
  config.validate();
  const auto result = th::run_sweep(config);
  std::cout << "csv=" << result.csv_path.string() << '\n'
            << "manifest=" << result.manifest_path.string() << '\n'
            << "planned=" << result.planned << " reused=" << result.reused << " computed=" << result.computed
            << " complete=" << (result.complete ? "yes" : "no") << '\n';
  return kOk;
}

int cmd_divisor(int k, double t, std::vector<double> gamma, const std::string& strategy) {
  if (gamma.empty()) gamma.assign(static_cast<std::size_t>(k), 1.0);
  th::DivisorSpec spec{k, t, gamma};
  spec.validate();
  auto s = th::CountStrategy::automatic;
  if (strategy == "enumerate") s = th::CountStrategy::enumeration;
  else if (strategy == "histogram") s = th::CountStrategy::histogram;
  else if (strategy != "auto") throw th::InvalidArgument("divisor-count: unknown strategy " + strategy);
  std::cout << th::restricted_divisor_count(spec, s).str() << '\n';
  return kOk;
}

struct FitArgs {
  std::string input;
  std::string model = "C*p^a*logp^b";
  std::optional<double> fix_a;
  std::optional<double> fix_b;
  std::string y;
  std::vector<std::string> where;
  bool cumulative = false;
};

// "C*X^a" or "C*X^a*logX^b": X names the abscissa column.
std::pair<std::string, bool> parse_model(const std::string& model) {
  const auto star = model.find('*');
  const auto caret = model.find('^');
  if (model.rfind("C*", 0) != 0 || star == std::string::npos || caret == std::string::npos || caret < star)
    throw th::InvalidArgument("fit: model must look like C*p^a or C*p^a*logp^b");
  const std::string col = model.substr(star + 1, caret - star - 1);
  const std::string rest = model.substr(caret);
  if (rest == "^a") return {col, false};
  if (rest == "^a*log" + col + "^b") return {col, true};
  throw th::InvalidArgument("fit: model must look like C*" + col + "^a or C*" + col + "^a*log" + col + "^b");
}

int cmd_fit(const FitArgs& a) {
  const auto [xcol, with_log] = parse_model(a.model);
  const auto table = th::read_csv(a.input);
  const int xi = table.column(xcol);
  std::string ycol = a.y;
  if (ycol.empty()) ycol = table.column("value") >= 0 ? "value" : "count";
  const int yi = table.column(ycol);
  if (xi < 0 || yi < 0) throw th::InvalidArgument("fit: missing column " + (xi < 0 ? xcol : ycol));

  std::vector<std::pair<int, std::string>> filters;
  for (const auto& w : a.where) {
    const auto eq = w.find('=');
    if (eq == std::string::npos) throw th::InvalidArgument("fit: --where expects key=value");
    const int c = table.column(w.substr(0, eq));
    if (c < 0) throw th::InvalidArgument("fit: missing column " + w.substr(0, eq));
    filters.emplace_back(c, w.substr(eq + 1));
  }

  std::vector<th::SeriesPoint> points;
  for (const auto& row : table.rows) {
    bool keep = true;
    for (const auto& [c, v] : filters) keep = keep && row.at(static_cast<std::size_t>(c)) == v;
    if (!keep) continue;
    points.push_back({std::stod(row.at(static_cast<std::size_t>(xi))), std::stod(row.at(static_cast<std::size_t>(yi)))});
  }
  if (a.cumulative) points = th::cumulative_series(points);

  std::vector<double> xs, ys;
  for (const auto& pt : points) {
    xs.push_back(pt.x);
    ys.push_back(pt.value);
  }
  th::PowerLogModel model;
  model.fixed_power = a.fix_a;
  model.fixed_log_power = with_log ? a.fix_b : std::optional<double>(0.0);
  const auto fit = th::fit_power_log(xs, ys, model);
  std::cout << "C=" << num(fit.constant) << '\n'
            << "a=" << num(fit.power) << '\n'
            << "b=" << num(fit.log_power) << '\n'
            << "rms_residual=" << num(fit.rms_residual) << '\n'
            << "n=" << fit.n_points << '\n';
  return kOk;
}

struct ExceptionArgs {
  std::string input;
  std::optional<std::uint64_t> min, max;
  unsigned per_octave = 0;
  unsigned jobs = 1;
  std::vector<double> deltas;
};

int cmd_exceptions(const ExceptionArgs& a) {
  const auto deltas = a.deltas.empty() ? th::default_exception_deltas() : a.deltas;
  if (!a.input.empty()) {
    const auto table = th::read_csv(a.input);
    const int pc = table.column("p"), kc = table.column("k"), cc = table.column("class"), vc = table.column("value");
    if (pc < 0 || kc < 0 || cc < 0 || vc < 0) throw th::InvalidArgument("exceptions: input is not a moments CSV");
    std::vector<th::MomentRecord> records;
    for (const auto& row : table.rows) {
      const auto c = th::parse_moment_class(row.at(static_cast<std::size_t>(cc)));
      if (!c) throw th::InvalidArgument("exceptions: unknown class " + row.at(static_cast<std::size_t>(cc)));
      th::MomentRecord r;
      r.p = std::stoull(row.at(static_cast<std::size_t>(pc)));
      r.k = std::stoi(row.at(static_cast<std::size_t>(kc)));
      r.moment_class = *c;
      r.value = std::stod(row.at(static_cast<std::size_t>(vc)));
      records.push_back(r);
    }
    std::cout << th::render_exceptions_csv(th::moment_exceptions(records, deltas));
    return kOk;
  }
  if (!a.min || !a.max) throw th::InvalidArgument("exceptions: give --input or both --min and --max");
  th::SweepConfig range;
  range.x_min = *a.min;
  range.x_max = *a.max;
  range.per_octave = a.per_octave;
  const auto primes = th::sweep_units(range);
  std::cout << th::render_exceptions_csv(th::individual_exceptions(primes, deltas, a.jobs));
  return kOk;
}

int cmd_verify(const std::string& suite, std::uint64_t seed) {
  std::vector<std::string> suites;
  if (suite == "all") suites = th::verify_suites();
  else suites.push_back(suite);
  bool ok = true;
  for (const auto& s : suites) {
    const auto report = th::run_verify(s, seed);
    for (const auto& c : report.checks) {
      std::cout << (c.pass ? "PASS " : "FAIL ") << report.suite << ": " << c.name << " measured=" << num(c.measured)
                << " tol=" << num(c.tolerance) << '\n';
    }
    ok = ok && report.pass();
  }
  std::cout << (ok ? "verify: all checks passed" : "verify: FAILED") << '\n';
  return ok ? kOk : kVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dirichlet-character theta functions, moments and sweeps"};
  app.set_version_flag("--version", std::string(th::kToolVersion));
  app.require_subcommand(1);

  std::uint64_t ctx_p = 0;
  auto* ctx = app.add_subcommand("ctx", "Print the prime context summary");
  ctx->add_option("P", ctx_p, "Odd prime")->required();

  ThetaArgs theta_args;
  auto* theta = app.add_subcommand("theta", "Print truncated theta values");
  theta->add_option("--p", theta_args.p, "Odd prime")->required();
  theta->add_option("--eta", theta_args.eta, "Weight exponent (0 or 1)")->required()->check(CLI::IsMember({0, 1}));
  theta->add_option("--x", theta_args.x, "Argument x > 0");
  auto* char_opt = theta->add_option("--char", theta_args.character, "Character index j");
  auto* all_opt = theta->add_flag("--all", theta_args.all, "All characters of matching parity (bulk)");
  char_opt->excludes(all_opt);
  theta->add_option("--tail-eps", theta_args.tail_eps, "Absolute tail bound");

  std::uint64_t mom_p = 0;
  std::vector<int> mom_k{1, 2};
  std::string mom_csv;
  auto* moments = app.add_subcommand("moments", "Moments S2k+, S2k-, T2k+ for one prime");
  moments->add_option("--p", mom_p, "Odd prime")->required();
  moments->add_option("--k", mom_k, "Moment orders")->delimiter(',');
  moments->add_option("--csv", mom_csv, "Write CSV here instead of stdout");

  std::string sweep_kind, config_file, out_dir;
  std::optional<std::uint64_t> sw_min, sw_max;
  std::optional<unsigned> sw_octave, sw_jobs;
  std::optional<std::size_t> sw_max_units;
  std::optional<double> sw_eps, sw_tau;
  std::optional<std::string> sw_xi;
  std::optional<std::uint64_t> sw_seed;
  std::vector<int> sw_k;
  auto* sweep = app.add_subcommand("sweep", "Resumable sweep over primes, dyadic windows or box sizes");
  sweep->add_option("--kind", sweep_kind, "moments|garaev|nonvanishing|mollifier|divisor");
  sweep->add_option("--min", sw_min, "Lower bound");
  sweep->add_option("--max", sw_max, "Upper bound");
  sweep->add_option("--per-octave", sw_octave, "Geometric samples per octave (0 = default sampling)");
  sweep->add_option("--k", sw_k, "Moment orders")->delimiter(',');
  sweep->add_option("--epsilon", sw_eps, "Mollifier length exponent");
  sweep->add_option("--tau", sw_tau, "Xi length exponent");
  sweep->add_option("--xi", sw_xi, "Xi coefficients (unit, one_plus_reciprocal)");
  sweep->add_option("--jobs", sw_jobs, "Worker threads");
  sweep->add_option("--seed", sw_seed, "Seed");
  sweep->add_option("--out", out_dir, "Output directory");
  sweep->add_option("--config", config_file, "key=value file; command-line options override it");
  sweep->add_option("--max-units", sw_max_units, "Stop after this many new units");

  int dc_k = 2;
  double dc_t = 2.0;
  std::vector<double> dc_gamma;
  std::string dc_strategy = "auto";
  auto* divisor = app.add_subcommand("divisor-count", "Exact restricted divisor correlation count");
  divisor->add_option("--k", dc_k, "Number of factors")->required();
  divisor->add_option("--T", dc_t, "Box size")->required();
  divisor->add_option("--gamma", dc_gamma, "Exponents, comma separated (default all 1)")->delimiter(',');
  divisor->add_option("--strategy", dc_strategy, "auto|enumerate|histogram");

  FitArgs fit_args;
  auto* fit = app.add_subcommand("fit", "Least-squares fit of C*x^a*(log x)^b to a CSV column");
  fit->add_option("--input", fit_args.input, "CSV file")->required();
  fit->add_option("--model", fit_args.model, "C*X^a or C*X^a*logX^b, X a column name");
  fit->add_option("--fix-a", fit_args.fix_a, "Fix the power");
  fit->add_option("--fix-b", fit_args.fix_b, "Fix the log power");
  fit->add_option("--y", fit_args.y, "Value column (default value, else count)");
  fit->add_option("--where", fit_args.where, "Row filter key=value (repeatable)");
  fit->add_flag("--cumulative", fit_args.cumulative, "Fit running sums instead of rows");

  ExceptionArgs exc_args;
  auto* exceptions = app.add_subcommand("exceptions", "Share of primes above the almost-all bounds");
  auto* exc_in = exceptions->add_option("--input", exc_args.input, "moments CSV (moment bounds)");
  auto* exc_min = exceptions->add_option("--min", exc_args.min, "Lower prime bound (individual theta bound)");
  exceptions->add_option("--max", exc_args.max, "Upper prime bound");
  exceptions->add_option("--per-octave", exc_args.per_octave, "Geometric samples per octave (0 = default sampling)");
  exceptions->add_option("--jobs", exc_args.jobs, "Worker threads")->check(CLI::PositiveNumber);
  exceptions->add_option("--delta", exc_args.deltas, "Exponent slack values")->delimiter(',');
  exc_in->excludes(exc_min);

  std::string suite;
  std::uint64_t verify_seed = 1;
  auto* verify = app.add_subcommand("verify", "Run an exact-identity suite");
  verify->add_option("--suite", suite, "Suite name or 'all'")->required();
  verify->add_option("--seed", verify_seed, "Seed for randomized checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*ctx) return cmd_ctx(ctx_p);
    if (*theta) return cmd_theta(theta_args);
    if (*moments) return cmd_moments(mom_p, mom_k, mom_csv);
    if (*divisor) return cmd_divisor(dc_k, dc_t, dc_gamma, dc_strategy);
    if (*fit) return cmd_fit(fit_args);
    if (*verify) return cmd_verify(suite, verify_seed);
    if (*exceptions) return cmd_exceptions(exc_args);
    if (*sweep) {
      std::map<std::string, std::string> kv;
      if (!config_file.empty()) kv = th::read_key_values(config_file);
      if (!sweep_kind.empty()) kv["kind"] = sweep_kind;
      if (sw_min) kv["min"] = std::to_string(*sw_min);
      if (sw_max) kv["max"] = std::to_string(*sw_max);
      if (sw_octave) kv["per_octave"] = std::to_string(*sw_octave);
      if (!sw_k.empty()) {
        std::vector<std::string> parts;
        for (int k : sw_k) parts.push_back(std::to_string(k));
        kv["k"] = th::join(parts);
      }
      if (sw_eps) kv["epsilon"] = num(*sw_eps);
      if (sw_tau) kv["tau"] = num(*sw_tau);
      if (sw_xi) kv["xi"] = *sw_xi;
      if (sw_jobs) kv["jobs"] = std::to_string(*sw_jobs);
      if (sw_seed) kv["seed"] = std::to_string(*sw_seed);
      if (!out_dir.empty()) kv["out"] = out_dir;
      if (sw_max_units) kv["max_units"] = std::to_string(*sw_max_units);
      if (!kv.contains("kind") || !kv.contains("out")) throw th::InvalidArgument("sweep: --kind and --out are required");
      return cmd_sweep(th::apply_config_values(th::SweepConfig{}, kv));
    }
  } catch (const th::IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIo;
  } catch (const th::InvalidArgument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const th::BudgetExceeded& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIo;
  }
  return kUsage;
}
