#include "thetamom/theta.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "thetamom/dft.hpp"
#include "thetamom/error.hpp"

namespace thetamom {

double ThetaRequest::default_tail_eps(std::uint64_t p) {
  return 1e-15 * std::max(1.0, std::sqrt(static_cast<double>(p)));
}

ThetaRequest ThetaRequest::make(std::uint64_t p, int eta, double x, std::optional<double> tail_eps) {
  ThetaRequest r{p, eta, x, tail_eps.value_or(default_tail_eps(p))};
  r.validate();
  return r;
}

void ThetaRequest::validate() const {
  if (eta != 0 && eta != 1) throw InvalidArgument("theta: eta must be 0 or 1");
  if (!(x > 0.0) || !std::isfinite(x)) throw InvalidArgument("theta: x must be a positive real");
  if (!(tail_eps > 0.0 && tail_eps < 1.0)) throw InvalidArgument("theta: tail_eps must lie in (0, 1)");
}

double tail_majorant(std::uint64_t p, int eta, double x, std::uint64_t n) {
  const double c = std::numbers::pi * x / static_cast<double>(p);
  const double t = static_cast<double>(n);
  const double sc = std::sqrt(c);
  // int_N^inf exp(-c t^2) dt = sqrt(pi/c)/2 * erfc(N sqrt(c))
  const double gauss = 0.5 * std::sqrt(std::numbers::pi / c) * std::erfc(t * sc);
  if (eta == 0) return 2.0 * gauss;
  // int_N^inf t exp(-c t^2) dt = exp(-c N^2) / (2c)
  return std::exp(-c * t * t) / (2.0 * c) + gauss;
}

std::uint64_t truncation_length(std::uint64_t p, int eta, double x, double tail_eps) {
  if (!(tail_eps > 0.0)) throw InvalidArgument("truncation_length: tail_eps must be positive");
  ThetaRequest{p, eta, x, std::min(tail_eps, 0.5)}.validate();

  std::uint64_t floor_n = 1;
  if (eta == 1) {
    // t exp(-c t^2) decreases for t >= 1/sqrt(2c).
    const double c = std::numbers::pi * x / static_cast<double>(p);
    floor_n = std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::ceil(1.0 / std::sqrt(2.0 * c))));
  }
  if (tail_majorant(p, eta, x, floor_n) < tail_eps) return floor_n;

  std::uint64_t lo = floor_n;  // majorant(lo) >= eps
  std::uint64_t hi = floor_n * 2;
  while (!(tail_majorant(p, eta, x, hi) < tail_eps)) {
    lo = hi;
    hi *= 2;
  }
  while (hi - lo > 1) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    if (tail_majorant(p, eta, x, mid) < tail_eps) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

Complex theta_naive(const PrimeContext& ctx, CharacterId chi, int eta, double x, std::uint64_t n_terms) {
  const double c = std::numbers::pi * x / static_cast<double>(ctx.modulus());
  CompensatedComplexSum s;
  for (std::uint64_t n = 1; n <= n_terms; ++n) {
    const double nd = static_cast<double>(n);
    const double weight = (eta == 1 ? nd : 1.0) * std::exp(-c * nd * nd);
    s += ctx.character(chi, static_cast<long long>(n)) * weight;
  }
  return s.value();
}

ThetaTable theta_all_characters(const PrimeContext& ctx, const ThetaRequest& request,
                                std::optional<std::uint64_t> truncation_override) {
  request.validate();
  if (request.p != ctx.modulus()) throw InvalidArgument("theta_all_characters: modulus mismatch");

  ThetaTable table;
  table.request = request;
  table.truncation = truncation_override.value_or(
      truncation_length(request.p, request.eta, request.x, request.tail_eps));
  table.tail_bound = tail_majorant(request.p, request.eta, request.x, table.truncation);

  const std::uint64_t p = ctx.modulus();
  const std::uint64_t m = ctx.order();
  const auto ind = ctx.index_table();
  const double c = std::numbers::pi * request.x / static_cast<double>(p);

  std::vector<CompensatedSum> buckets(m);
  for (std::uint64_t n = 1; n <= table.truncation; ++n) {
    const std::uint64_t r = n % p;
    if (r == 0) continue;
    const double nd = static_cast<double>(n);
    const double term = (request.eta == 1 ? nd : 1.0) * std::exp(-c * nd * nd);
    if (term == 0.0) break;
    buckets[ind[r - 1]] += term;
  }
  table.weights.resize(m);
  std::vector<Complex> w(m);
  for (std::uint64_t a = 0; a < m; ++a) {
    table.weights[a] = buckets[a].value();
    w[a] = table.weights[a];
  }

  table.values.resize(m);
  BluesteinDft(m).transform(w, table.values);

  // Real coefficients: values[m - j] = conj(values[j]). Impose it exactly.
  table.values[0] = {table.values[0].real(), 0.0};
  for (std::uint64_t j = 1; 2 * j <= m; ++j) {
    const Complex v = 0.5 * (table.values[j] + std::conj(table.values[m - j]));
    if (2 * j == m) {
      table.values[j] = {v.real(), 0.0};
    } else {
      table.values[j] = v;
      table.values[m - j] = std::conj(v);
    }
  }
  return table;
}

}  // namespace thetamom
