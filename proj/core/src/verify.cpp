#include "thetamom/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>

#include "thetamom/char_core.hpp"
#include "thetamom/charsum.hpp"
#include "thetamom/divisor.hpp"
#include "thetamom/error.hpp"
#include "thetamom/primes.hpp"
#include "thetamom/theta.hpp"

namespace thetamom {
namespace {

double rel_err(double a, double b) { return std::fabs(a - b) / std::max({std::fabs(a), std::fabs(b), 1e-300}); }

CheckResult check(std::string name, double measured, double tolerance) {
  return {std::move(name), measured, tolerance, measured <= tolerance};
}

std::vector<std::uint64_t> odd_primes_upto(std::uint64_t n) { return primes_in_range(3, n); }

VerifyReport orthogonality(std::uint64_t seed) {
  VerifyReport r{"orthogonality", {}};
  double full = 0.0, even = 0.0, period = 0.0, parity = 0.0, mult = 0.0, additive = 0.0, window = 0.0;
  std::mt19937_64 rng(seed);
  for (auto p : odd_primes_upto(101)) {
    const PrimeContext ctx(p);
    const auto ip = static_cast<long long>(p);
    for (long long a = 1; a < ip; ++a) {
      for (long long b = 1; b < ip; ++b) {
        const double want_full = a == b ? static_cast<double>(p - 1) : 0.0;
        full = std::max(full, std::abs(character_correlation(ctx, a, b) - want_full));
        const double want_even = (a == b || (a + b) % ip == 0) ? static_cast<double>(p - 1) / 2.0 : 0.0;
        even = std::max(even, std::abs(even_character_correlation(ctx, a, b) - want_even));
      }
    }
    for (std::uint64_t j = 0; j < ctx.order(); ++j) {
      const CharacterId chi{j};
      if (j != 0) {
        CompensatedComplexSum s;
        for (long long n = 1; n <= ip; ++n) s += ctx.character(chi, n);
        period = std::max(period, std::abs(s.value()));
      }
      const double sign = j % 2 == 0 ? 1.0 : -1.0;
      parity = std::max(parity, std::abs(ctx.character(chi, ip - 1) - sign));
      std::uniform_int_distribution<long long> dist(-5 * ip, 5 * ip);
      for (int i = 0; i < 20; ++i) {
        const long long m = dist(rng), n = dist(rng);
        mult = std::max(mult, std::abs(ctx.character(chi, m * n) - ctx.character(chi, m) * ctx.character(chi, n)));
      }
    }
  }
  for (long long q = 1; q <= 41; q += 2) {
    for (long long z = -2 * q; z <= 2 * q; ++z) {
      const double want = z % q == 0 ? static_cast<double>(q) : 0.0;
      additive = std::max(additive, std::abs(additive_orthogonality_sum(z, q) - want));
    }
  }
  std::uniform_int_distribution<long long> qd(2, 500);
  for (int i = 0; i < 2000; ++i) {
    const long long q = qd(rng);
    std::uniform_int_distribution<long long> bd(1, q / 2);
    std::uniform_int_distribution<long long> ud(-1000, 1000);
    std::uniform_int_distribution<long long> vd(1, 3 * q);
    const long long b = bd(rng) * (rng() % 2 == 0 ? 1 : -1);
    const long long u = ud(rng), v = vd(rng);
    window = std::max(window, std::abs(exp_window_sum(b, u, v, q)) - exp_window_bound(b, v, q));
  }
  r.checks.push_back(check("full-group orthogonality, p <= 101", full, 1e-9));
  r.checks.push_back(check("even-subgroup orthogonality, p <= 101", even, 1e-9));
  r.checks.push_back(check("full-period sums vanish", period, 1e-9));
  r.checks.push_back(check("chi_j(-1) = (-1)^j", parity, 1e-12));
  r.checks.push_back(check("complete multiplicativity", mult, 1e-12));
  r.checks.push_back(check("additive orthogonality, odd Q <= 41", additive, 1e-9));
  r.checks.push_back(check("window sum minus bound (<= 0)", window, 0.0));
  return r;
}

VerifyReport dft() {
  VerifyReport r{"dft", {}};
  for (std::uint64_t p : {101, 499, 1009, 2003}) {
    const PrimeContext ctx(p);
    for (int eta = 0; eta <= 1; ++eta) {
      const auto table = theta_all_characters(ctx, eta);
      double worst = 0.0, scale = 0.0;
      for (std::uint64_t j = 0; j < ctx.order(); ++j) {
        const Complex naive = theta_naive(ctx, CharacterId{j}, eta, 1.0, table.truncation);
        worst = std::max(worst, std::abs(naive - table.values[j]));
        scale = std::max(scale, std::abs(naive));
      }
      r.checks.push_back(check("bulk vs naive, p=" + std::to_string(p) + " eta=" + std::to_string(eta),
                               worst / scale, 1e-9));
    }
  }
  return r;
}

VerifyReport gauss(std::uint64_t seed) {
  VerifyReport r{"gauss", {}};
  double mag = 0.0, principal = 0.0;
  for (auto p : odd_primes_upto(211)) {
    const PrimeContext ctx(p);
    const double root = std::sqrt(static_cast<double>(p));
    principal = std::max(principal, std::abs(gauss_sum(ctx, CharacterId{0}) + 1.0));
    for (std::uint64_t j = 1; j < ctx.order(); ++j) {
      mag = std::max(mag, std::fabs(std::abs(gauss_sum(ctx, CharacterId{j})) - root));
    }
  }
  std::mt19937_64 rng(seed);
  const auto primes = odd_primes_upto(211);
  double twist = 0.0;
  for (int i = 0; i < 50; ++i) {
    const auto p = primes[rng() % primes.size()];
    const PrimeContext ctx(p);
    const CharacterId chi{1 + rng() % (p - 2)};
    const auto b = static_cast<long long>(1 + rng() % (p - 1));
    const Complex lhs = ctx.character(chi, b) * gauss_sum(ctx, ctx.conjugate(chi));
    const Complex rhs = twisted_gauss_sum(ctx, ctx.conjugate(chi), b);
    twist = std::max(twist, std::abs(lhs - rhs));
  }
  r.checks.push_back(check("||tau(chi)| - sqrt(p)|, nonprincipal, p <= 211", mag, 1e-8));
  r.checks.push_back(check("tau(chi_0) = -1", principal, 1e-8));
  r.checks.push_back(check("chi(b) tau(conj chi) = twisted sum, 50 triples", twist, 1e-8));
  return r;
}

VerifyReport parseval() {
  VerifyReport r{"parseval", {}};
  for (std::uint64_t p : {3, 101, 499, 1009, 2003}) {
    const PrimeContext ctx(p);
    for (int eta = 0; eta <= 1; ++eta) {
      const auto table = theta_all_characters(ctx, eta);
      CompensatedSum lhs, rhs;
      for (const auto& v : table.values) lhs += std::norm(v);
      for (double w : table.weights) rhs += w * w;
      const std::string tag = "p=" + std::to_string(p) + " eta=" + std::to_string(eta);
      r.checks.push_back(check("Parseval " + tag, rel_err(lhs.value(), static_cast<double>(p - 1) * rhs.value()), 1e-9));

      const auto doubled = theta_all_characters(ctx, table.request, 2 * table.truncation);
      double change = 0.0, scale = 0.0;
      for (std::size_t j = 0; j < table.values.size(); ++j) {
        change = std::max(change, std::abs(doubled.values[j] - table.values[j]));
        scale = std::max(scale, std::abs(table.values[j]));
      }
      r.checks.push_back(check("truncation doubling " + tag, change / scale, 1e-12));
    }
  }
  return r;
}

VerifyReport largesieve(std::uint64_t seed) {
  VerifyReport r{"largesieve", {}};
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  double worst = 0.0;
  int failures = 0;
  for (int i = 0; i < 100; ++i) {
    const std::size_t h = 1 + rng() % 64;
    const std::uint64_t rr = 1 + rng() % 32;
    std::vector<Complex> a(h);
    for (auto& z : a) z = {gauss(rng), gauss(rng)};
    const auto res = large_sieve_check(a, rr);
    worst = std::max(worst, res.lhs / res.rhs_bound);
    failures += res.pass ? 0 : 1;
  }
  r.checks.push_back(check("max lhs / (2 (R^2 + H) A), 100 instances", worst, 1.0));
  r.checks.push_back(check("failing instances", failures, 0.0));
  return r;
}

VerifyReport mollifier_identity() {
  VerifyReport r{"mollifier-identity", {}};
  for (std::uint64_t p : {101, 199, 499}) {
    const PrimeContext ctx(p);
    for (int k : {2, 3}) {
      for (std::uint64_t x_cut : {2, 8}) {
        for (const auto& xi : {Coefficients::unit(), Coefficients::one_plus_reciprocal()}) {
          MollifierSpec spec;
          spec.k = k;
          spec.x_cut = x_cut;
          spec.t_cut = static_cast<std::uint64_t>(std::floor(std::sqrt(static_cast<double>(p))));
          spec.xi = xi;
          const auto sums = mollifier_sums(ctx, spec);
          const double half = static_cast<double>(p - 1) / 2.0;
          const double s2 = half * congruence_count(p, k, x_cut);
          const double a0 = static_cast<double>(x_cut);
          const double xi0 = std::norm(dirichlet_poly(ctx, CharacterId{0}, spec));
          const double s1 = half * congruence_count(p, k, x_cut, spec.t_cut, xi) - xi0 * std::pow(a0, 2 * k - 2);
          const std::string tag = "p=" + std::to_string(p) + " k=" + std::to_string(k) +
                                  " x=" + std::to_string(x_cut) + " xi=" + xi.name();
          r.checks.push_back(check("Sigma2 " + tag, rel_err(sums.sigma2, s2), 1e-9));
          r.checks.push_back(check("Sigma1 " + tag, rel_err(sums.sigma1, s1), 1e-9));
        }
      }
    }
  }
  return r;
}

VerifyReport divisor_oracle(std::uint64_t seed) {
  VerifyReport r{"divisor-oracle", {}};
  const auto six = restricted_divisor_count(DivisorSpec::uniform(2, 2.0));
  r.checks.push_back(check("count(k=2, T=2) - 6", std::fabs(static_cast<double>(six) - 6.0), 0.0));

  std::mt19937_64 rng(seed);
  int mismatches = 0;
  for (int i = 0; i < 20; ++i) {
    const int k = 1 + static_cast<int>(rng() % 3);
    std::vector<std::uint64_t> limits;
    for (int j = 0; j < k; ++j) limits.push_back(1 + rng() % (k == 1 ? 200 : k == 2 ? 40 : 12));
    const auto e = restricted_divisor_count(limits, CountStrategy::enumeration);
    const auto h = restricted_divisor_count(limits, CountStrategy::histogram);
    mismatches += e == h ? 0 : 1;
  }
  r.checks.push_back(check("enumeration vs histogram mismatches, 20 instances", mismatches, 0.0));

  int cong = 0;
  for (int k = 1; k <= 3; ++k) {
    for (std::uint64_t x = 1; x <= 5; ++x) {
      std::uint64_t vol = 1;
      for (int i = 0; i < k; ++i) vol *= x;
      const std::uint64_t p = nearest_prime(static_cast<double>(vol * vol + 2));
      const auto p_big = p > vol * vol ? p : nearest_prime(static_cast<double>(2 * vol * vol + 3));
      const std::vector<std::uint64_t> limits(static_cast<std::size_t>(k), x);
      const auto exact = restricted_divisor_count(limits);
      cong += static_cast<double>(exact) == congruence_count(p_big, k, x) ? 0 : 1;
    }
  }
  r.checks.push_back(check("congruence count equals exact count for p > (box volume)^2", cong, 0.0));

  std::vector<std::pair<double, double>> synthetic;
  for (double t = 100.0; t <= 1e5; t *= 2.0) synthetic.emplace_back(t, 3.0 * t * t * std::log(t));
  const auto fit = log_power_fit(synthetic, 2.0);
  r.checks.push_back(check("synthetic fit |beta - 1|", std::fabs(fit.log_power - 1.0), 1e-6));
  r.checks.push_back(check("synthetic fit |C - 3| / 3", std::fabs(fit.constant - 3.0) / 3.0, 1e-6));
  return r;
}

}  // namespace

bool VerifyReport::pass() const noexcept {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

const std::vector<std::string>& verify_suites() {
  static const std::vector<std::string> names{"orthogonality", "dft",         "gauss",         "parseval",
                                              "largesieve",    "mollifier-identity", "divisor-oracle"};
  return names;
}

VerifyReport run_verify(std::string_view suite, std::uint64_t seed) {
  if (suite == "orthogonality") return orthogonality(seed);
  if (suite == "dft") return dft();
  if (suite == "gauss") return gauss(seed);
  if (suite == "parseval") return parseval();
  if (suite == "largesieve") return largesieve(seed);
  if (suite == "mollifier-identity") return mollifier_identity();
  if (suite == "divisor-oracle") return divisor_oracle(seed);
  throw InvalidArgument("verify: unknown suite '" + std::string(suite) + "'");
}

}  // namespace thetamom
