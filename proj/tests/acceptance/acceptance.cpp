// Acceptance suite: one PASS/FAIL line per criterion.
// Usage: thetamom_acceptance [criterion ...]   (default: all)

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "thetamom/charsum.hpp"
#include "thetamom/csv.hpp"
#include "thetamom/divisor.hpp"
#include "thetamom/fit.hpp"
#include "thetamom/moments.hpp"
#include "thetamom/primes.hpp"
#include "thetamom/sweep.hpp"
#include "thetamom/theta.hpp"
#include "thetamom/verify.hpp"

using namespace thetamom;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

unsigned jobs() { return std::max(1u, std::thread::hardware_concurrency()); }

Outcome suites(std::initializer_list<const char*> names) {
  Outcome o{true, {}};
  for (const char* name : names) {
    const auto r = run_verify(name, 1);
    double worst = 0.0;
    std::size_t failed = 0;
    for (const auto& c : r.checks) {
      if (c.tolerance > 0) worst = std::max(worst, c.measured / c.tolerance);
      failed += c.pass ? 0 : 1;
    }
    o.pass = o.pass && r.pass();
    o.detail += std::string(o.detail.empty() ? "" : "; ") + name + ": " + std::to_string(r.checks.size() - failed) + "/" +
                std::to_string(r.checks.size()) + " checks, worst error/tol " + fmt(worst);
  }
  return o;
}

// 20 primes spread over [0.98 c, 1.02 c].
std::vector<std::uint64_t> primes_near(double c) {
  const auto all = primes_in_range(static_cast<std::uint64_t>(0.98 * c), static_cast<std::uint64_t>(1.02 * c));
  std::vector<std::uint64_t> out;
  for (std::size_t i = 0; i < 20; ++i) out.push_back(all[i * (all.size() - 1) / 19]);
  return out;
}

Outcome holder_witness() {
  const auto primes = geometric_primes(1000, 50000, 9);
  std::size_t violations = 0;
  std::string detail = std::to_string(primes.size()) + " primes";
  bool decay_ok = true;
  for (int k : {2, 3}) {
    std::vector<double> normalized;
    for (auto p : primes) {
      const PrimeContext ctx(p);
      const auto theta = theta_all_characters(ctx, 0);
      const auto s = mollifier_sums(ctx, MollifierSpec::make(p, k, 0.3), &theta);
      if (std::pow(s.frak_s, k) > std::pow(s.sigma2, k - 1) * s.theta_moment * (1 + 1e-9)) ++violations;
      const double lp = std::log(static_cast<double>(p));
      normalized.push_back(s.holder_lower_bound /
                           (std::pow(static_cast<double>(p), 1.0 + k / 2.0) * std::pow(lp, (k - 1) * (k - 1))));
    }
    // Mean of the first and last three samples: p ~ 10^3 and p ~ 5 * 10^4.
    const double lo = (normalized[0] + normalized[1] + normalized[2]) / 3.0;
    const auto n = normalized.size();
    const double hi = (normalized[n - 1] + normalized[n - 2] + normalized[n - 3]) / 3.0;
    decay_ok = decay_ok && hi >= lo / 10.0;
    detail += "; k=" + std::to_string(k) + " normalized lb " + fmt(lo) + " -> " + fmt(hi);
  }
  detail += "; Hoelder violations " + std::to_string(violations);
  return {violations == 0 && decay_ok && primes.size() >= 50, detail};
}

Outcome second_moment() {
  auto mean_ratio = [](double c, bool odd) {
    double sum = 0.0;
    for (auto p : primes_near(c)) {
      const auto t = theta_all_characters(PrimeContext(p), odd ? 1 : 0);
      sum += odd ? moment_odd(t, 1).ratio : moment_even(t, 1, true).ratio;
    }
    return sum / 20.0;
  };
  bool pass = true;
  std::string detail;
  for (bool odd : {false, true}) {
    const double near3 = mean_ratio(1e3, odd), near5 = mean_ratio(1e5, odd);
    pass = pass && near5 >= 0.8 && near5 <= 1.2 && std::fabs(near5 - 1.0) < std::fabs(near3 - 1.0);
    detail += std::string(detail.empty() ? "" : "; ") + (odd ? "S2-" : "S2+") + " mean ratio " + fmt(near3) +
              " (1e3) -> " + fmt(near5) + " (1e5)";
  }
  return {pass, detail};
}

Outcome higher_moments() {
  const auto primes = geometric_primes(1000, 100000, 6);
  std::vector<MomentRecord> s4p, s4m, s6p, s8p, t4, t6;
  for (auto p : primes) {
    const PrimeContext ctx(p);
    const auto even = theta_all_characters(ctx, 0);
    const auto odd = theta_all_characters(ctx, 1);
    s4p.push_back(moment_even(even, 2, true));
    s4m.push_back(moment_odd(odd, 2));
    s6p.push_back(moment_even(even, 3, true));
    s8p.push_back(moment_even(even, 4, true));
    t4.push_back(moment_even(even, 2, false));
    t6.push_back(moment_even(even, 3, false));
  }
  const auto model = PowerLogModel::power_only();
  const double a4p = exponent_fit(s4p, model).power;
  const double a4m = exponent_fit(s4m, model).power;
  const double a6p = exponent_fit(s6p, model).power;
  const double a8p = exponent_fit(s8p, model).power;
  const auto ft4 = exponent_fit(t4, model);
  const auto ft6 = exponent_fit(t6, model);
  const bool pass = a4p >= 1.9 && a4p <= 2.3 && a4m >= 3.8 && a4m <= 4.3 && std::fabs(a6p - 3.0) <= 0.2 &&
                    std::fabs(a8p - 4.0) <= 0.2;
  return {pass, std::to_string(primes.size()) + " primes; alpha S4+ " + fmt(a4p) + ", S4- " + fmt(a4m) + ", S6+ " +
                    fmt(a6p) + ", S8+ " + fmt(a8p) + "; reported only: T4+ " + fmt(ft4.power) + " (rms " +
                    fmt(ft4.rms_residual) + "), T6+ " + fmt(ft6.power) + " (rms " + fmt(ft6.rms_residual) + ")"};
}

Outcome garaev() {
  std::vector<SeriesPoint> cs, t0, t1;
  for (std::uint64_t x = 512; x <= 8192; x *= 2) {
    const auto row = garaev_statistic(x, jobs());
    const double xd = static_cast<double>(x);
    cs.push_back({xd, row.sum_max8_charsum});
    t0.push_back({xd, row.sum_max8_theta_eta0});
    t1.push_back({xd, row.sum_max8_theta_eta1});
  }
  auto slope = [](const std::vector<SeriesPoint>& pts) {
    const auto cum = cumulative_series(pts);
    std::vector<double> x, y;
    for (const auto& p : cum) {
      x.push_back(p.x);
      y.push_back(p.value);
    }
    return fit_power_log(x, y, PowerLogModel::power_only()).power;
  };
  const double a = slope(cs), b = slope(t0), c = slope(t1);
  return {a <= 4.6 && b <= 4.6 && c <= 8.6,
          "slopes: charsum " + fmt(a) + " (<= 4.6), theta eta=0 " + fmt(b) + " (<= 4.6), theta eta=1 " + fmt(c) +
              " (<= 8.6)"};
}

Outcome divisor() {
  const bool six = restricted_divisor_count(DivisorSpec::uniform(2, 2.0)) == 6;
  std::mt19937_64 rng(8);
  int mismatch = 0;
  for (int i = 0; i < 20; ++i) {
    const int k = 1 + static_cast<int>(rng() % 3);
    std::vector<std::uint64_t> limits;
    for (int j = 0; j < k; ++j) limits.push_back(1 + rng() % (k == 1 ? 500 : k == 2 ? 60 : 15));
    mismatch += restricted_divisor_count(limits, CountStrategy::enumeration) ==
                        restricted_divisor_count(limits, CountStrategy::histogram)
                    ? 0
                    : 1;
  }
  std::vector<std::pair<double, double>> synthetic;
  for (double t = 250; t <= 4000; t *= std::sqrt(2.0)) synthetic.emplace_back(t, 0.6 * t * t * std::log(t));
  const double beta_syn = log_power_fit(synthetic, 2.0).log_power;
  std::vector<std::pair<double, double>> real;
  for (int i = 0; i <= 16; ++i) {
    const double t = std::round(250.0 * std::pow(2.0, i / 4.0));
    real.emplace_back(t, static_cast<double>(restricted_divisor_count(DivisorSpec::uniform(2, t))));
  }
  const double beta = log_power_fit(real, 2.0).log_power;
  return {six && mismatch == 0 && std::fabs(beta_syn - 1.0) <= 1e-6 && beta >= 0.7 && beta <= 1.3,
          std::string("count(2,2)=6 ") + (six ? "yes" : "no") + "; strategy mismatches " + std::to_string(mismatch) +
              "; synthetic |beta-1| " + fmt(std::fabs(beta_syn - 1.0)) + "; beta over T in [250,4000] " + fmt(beta)};
}

Outcome nonvanishing() {
  double smallest = 1e300;
  std::uint64_t where = 0, flagged = 0;
  for (auto p : primes_in_range(3, 2000)) {
    const PrimeContext ctx(p);
    for (int eta : {0, 1}) {
      const auto r = nonvanishing_scan(theta_all_characters(ctx, eta), eta == 0 ? Parity::even : Parity::odd);
      if (!r) continue;
      if (r->normalized <= 1e-6) ++flagged;
      if (r->normalized < smallest) {
        smallest = r->normalized;
        where = p;
      }
    }
  }
  return {flagged == 0, "smallest normalized |theta| " + fmt(smallest) + " at p=" + std::to_string(where) +
                            "; flagged " + std::to_string(flagged)};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Outcome determinism() {
  const fs::path root = fs::temp_directory_path() / ("thetamom-acceptance-" + std::to_string(std::random_device{}()));
  fs::create_directories(root);
  auto cfg = [&](const char* sub, unsigned j) {
    SweepConfig c;
    c.kind = SweepKind::moments;
    c.x_min = 3;
    c.x_max = 3000;
    c.jobs = j;
    c.out_dir = root / sub;
    return c;
  };
  run_sweep(cfg("j1", 1));
  run_sweep(cfg("j8", 8));
  auto interrupted = cfg("resume", 2);
  interrupted.max_units = 150;
  const auto part = run_sweep(interrupted);
  interrupted.max_units.reset();
  run_sweep(interrupted);
  const auto a = slurp(root / "j1" / "moments.csv");
  const bool same_jobs = a == slurp(root / "j8" / "moments.csv");
  const bool same_resume = a == slurp(root / "resume" / "moments.csv");
  std::error_code ec;
  fs::remove_all(root, ec);
  return {same_jobs && same_resume && !part.complete,
          std::string("jobs=1 vs jobs=8 ") + (same_jobs ? "identical" : "DIFFER") + "; interrupted after " +
              std::to_string(part.computed) + " primes and resumed: " + (same_resume ? "identical" : "DIFFER")};
}

struct Criterion {
  int id;
  const char* title;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all{
      {1, "exact identities", [] { return suites({"orthogonality", "gauss"}); }},
      {2, "bulk DFT equivalence", [] { return suites({"dft", "parseval"}); }},
      {3, "mollifier orthogonality identities", [] { return suites({"mollifier-identity"}); }},
      {4, "Hoelder witness", holder_witness},
      {5, "second-moment asymptotics", second_moment},
      {6, "higher moment exponent fits", higher_moments},
      {7, "dyadic max^8 sweeps", garaev},
      {8, "divisor oracle", divisor},
      {9, "nonvanishing scan", nonvanishing},
      {10, "large sieve", [] { return suites({"largesieve"}); }},
      {11, "determinism", determinism},
  };
  std::set<int> wanted;
  for (int i = 1; i < argc; ++i) wanted.insert(std::atoi(argv[i]));

  int failures = 0;
  for (const auto& c : all) {
    if (!wanted.empty() && !wanted.contains(c.id)) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failures += o.pass ? 0 : 1;
    std::printf("%s %2d %-36s %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", c.id, c.title, o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
