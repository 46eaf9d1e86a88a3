#include "thetamom/charsum.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "thetamom/error.hpp"
#include "thetamom/moments.hpp"
#include "thetamom/parallel.hpp"
#include "thetamom/primes.hpp"

namespace thetamom {
namespace {

double ipow(double base, int e) {
  double r = 1.0;
  while (e > 0) {
    if (e & 1) r *= base;
    base *= base;
    e >>= 1;
  }
  return r;
}

// Running prefix sums S(chi_j; t) for j = 1..(p-1)/2, t = 1..Q. Characters
// j and p-1-j give conjugate sums (the root table is exactly symmetric), so
// the lower half already attains every maximum at its smallest index.
// visit(j, t, |S|^2) is called for each pair, t ascending in the outer loop.
template <class Visit>
void scan_prefix_sums(const PrimeContext& ctx, std::uint64_t q, Visit&& visit) {
  const std::uint64_t m = ctx.order();
  const std::uint64_t half = m / 2;
  const auto roots = ctx.roots();
  const auto ind = ctx.index_table();
  std::vector<double> re(half + 1, 0.0);
  std::vector<double> im(half + 1, 0.0);
  for (std::uint64_t t = 1; t <= q; ++t) {
    const std::uint64_t d = ind[t - 1];
    std::uint64_t idx = 0;
    for (std::uint64_t j = 1; j <= half; ++j) {
      idx += d;
      if (idx >= m) idx -= m;
      re[j] += roots[idx].real();
      im[j] += roots[idx].imag();
      visit(j, t, re[j] * re[j] + im[j] * im[j]);
    }
  }
}

constexpr double kTieTolerance = 1e-12;

}  // namespace

MollifierSpec MollifierSpec::make(std::uint64_t p, int k, double epsilon, double tau, Coefficients xi) {
  if (k < 2) throw InvalidArgument("MollifierSpec: k must be >= 2");
  if (!(epsilon > 0.0 && epsilon < 1.0 / k)) throw InvalidArgument("MollifierSpec: epsilon must lie in (0, 1/k)");
  if (!(tau > 0.0 && tau < 1.0)) throw InvalidArgument("MollifierSpec: tau must lie in (0, 1)");
  if (!(xi.minimum() > 0.0)) throw InvalidArgument("MollifierSpec: xi_min must be positive");
  const double pd = static_cast<double>(p);
  MollifierSpec s;
  s.k = k;
  s.epsilon = epsilon;
  s.tau = tau;
  s.x_cut = std::max<std::uint64_t>(2, static_cast<std::uint64_t>(std::floor(std::pow(pd, epsilon) * (1.0 + 1e-12))));
  s.t_cut = std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::floor(std::pow(pd, tau) * (1.0 + 1e-12))));
  s.xi = std::move(xi);
  if (s.x_cut >= p || s.t_cut >= p) throw InvalidArgument("MollifierSpec: cutoffs must stay below p");
  return s;
}

bool MollifierSpec::diagonal_regime(std::uint64_t p) const noexcept {
  double v = 1.0;
  for (int i = 0; i < k; ++i) v *= static_cast<double>(x_cut);
  return v < static_cast<double>(p);
}

PrefixMax prefix_max(const PrimeContext& ctx, std::uint64_t q) {
  if (q < 1 || q >= ctx.modulus()) throw InvalidArgument("prefix_max: need 1 <= Q < p");
  double best = -1.0;
  PrefixMax out;
  scan_prefix_sums(ctx, q, [&](std::uint64_t j, std::uint64_t t, double norm) {
    if (norm > best * (1.0 + kTieTolerance) ||
        (norm >= best * (1.0 - kTieTolerance) && j < out.character)) {
      best = std::max(best, norm);
      out.character = j;
      out.length = t;
    }
  });
  out.value = std::sqrt(best);
  return out;
}

double grh_shape_report(const PrimeContext& ctx, std::uint64_t q) {
  if (q < 1 || q >= ctx.modulus()) throw InvalidArgument("grh_shape_report: need 1 <= Q < p");
  double best = 0.0;
  scan_prefix_sums(ctx, q, [&](std::uint64_t, std::uint64_t t, double norm) {
    best = std::max(best, norm / static_cast<double>(t));
  });
  return std::sqrt(best);
}

Complex dirichlet_poly(const PrimeContext& ctx, CharacterId chi, std::uint64_t t, const Coefficients& xi) {
  CompensatedComplexSum s;
  for (std::uint64_t n = 1; n <= t; ++n) {
    s += ctx.character(chi, static_cast<long long>(n)) * xi(n);
  }
  return s.value();
}

MollifierSums mollifier_sums(const PrimeContext& ctx, const MollifierSpec& spec, const ThetaTable* theta) {
  const std::uint64_t p = ctx.modulus();
  if (spec.x_cut >= p) throw InvalidArgument("mollifier_sums: x_cut must be below p");
  if (spec.t_cut >= p) throw InvalidArgument("mollifier_sums: t_cut must be below p");
  if (spec.k < 2) throw InvalidArgument("mollifier_sums: k must be >= 2");
  if (theta != nullptr &&
      (theta->modulus() != p || theta->eta() != 0 || theta->request.x != 1.0)) {
    throw InvalidArgument("mollifier_sums: theta table must be eta = 0, x = 1 for the same prime");
  }

  const int k = spec.k;
  CompensatedSum sigma1;
  CompensatedSum sigma2;
  CompensatedSum frak_s;
  CompensatedSum xi_moment;
  for (std::uint64_t j = 0; j < ctx.order(); j += 2) {
    const CharacterId chi{j};
    const double a2 = std::norm(dirichlet_poly(ctx, chi, spec.x_cut, Coefficients::unit()));
    sigma2 += ipow(a2, k);
    if (j == 0) continue;
    const double a2k1 = ipow(a2, k - 1);
    const double xi2 = std::norm(dirichlet_poly(ctx, chi, spec.t_cut, spec.xi));
    sigma1 += xi2 * a2k1;
    xi_moment += ipow(xi2, k);
    if (theta != nullptr) frak_s += std::norm(theta->values[j]) * a2k1;
  }

  MollifierSums out;
  out.sigma1 = sigma1.value();
  out.sigma2 = sigma2.value();
  out.xi_moment = xi_moment.value();
  if (theta != nullptr) {
    out.has_theta = true;
    out.frak_s = frak_s.value();
    out.theta_moment = moment_even(*theta, k, false).value;
    out.holder_lower_bound = out.sigma2 > 0.0 ? std::pow(out.frak_s, k) / std::pow(out.sigma2, k - 1) : 0.0;
  }
  return out;
}

LargeSieveResult large_sieve_check(std::span<const Complex> a, std::uint64_t r_max) {
  if (a.empty() || r_max < 1) throw InvalidArgument("large_sieve_check: need H >= 1 and R >= 1");
  CompensatedSum mass;
  for (const auto& z : a) mass += std::norm(z);
  CompensatedSum lhs;
  for (std::uint64_t r = 1; r <= r_max; ++r) {
    for (std::uint64_t v = 1; v <= r; ++v) {
      if (std::gcd(v, r) != 1) continue;
      CompensatedComplexSum t;
      for (std::uint64_t h = 1; h <= a.size(); ++h) {
        t += a[h - 1] * unit_exp_ratio(static_cast<long long>(h * v % r), static_cast<long long>(r));
      }
      lhs += std::norm(t.value());
    }
  }
  LargeSieveResult out;
  out.lhs = lhs.value();
  const double rr = static_cast<double>(r_max);
  out.rhs_bound = 2.0 * (rr * rr + static_cast<double>(a.size())) * mass.value();
  out.pass = out.lhs <= out.rhs_bound;
  return out;
}

std::uint64_t garaev_window(std::uint64_t x) {
  const double xd = static_cast<double>(x);
  return static_cast<std::uint64_t>(std::ceil(2.0 * std::sqrt(xd * std::log(xd))));
}

GaraevPrime garaev_prime(std::uint64_t p, std::uint64_t q) {
  const PrimeContext ctx(p);
  GaraevPrime out;
  out.p = p;
  out.max_charsum = prefix_max(ctx, q).value;
  for (int eta = 0; eta <= 1; ++eta) {
    const auto table = theta_all_characters(ctx, eta);
    double best = 0.0;
    for (std::uint64_t j = 1; j < table.values.size(); ++j) best = std::max(best, std::abs(table.values[j]));
    (eta == 0 ? out.max_theta_eta0 : out.max_theta_eta1) = best;
  }
  return out;
}

GaraevRow garaev_statistic(std::uint64_t x, unsigned jobs) {
  if (x < 16) throw InvalidArgument("garaev_statistic: X must be >= 16");
  const auto primes = primes_in_range(x, 2 * x);
  GaraevRow row;
  row.x = x;
  row.q = garaev_window(x);
  row.n_primes = primes.size();
  const auto per_prime = parallel_map<GaraevPrime>(primes.size(), jobs, [&](std::size_t i) {
    return garaev_prime(primes[i], row.q);
  });
  CompensatedSum cs;
  CompensatedSum t0;
  CompensatedSum t1;
  for (const auto& g : per_prime) {
    cs += ipow(g.max_charsum, 8);
    t0 += ipow(g.max_theta_eta0, 8);
    t1 += ipow(g.max_theta_eta1, 8);
  }
  row.sum_max8_charsum = cs.value();
  row.sum_max8_theta_eta0 = t0.value();
  row.sum_max8_theta_eta1 = t1.value();
  return row;
}

}  // namespace thetamom
