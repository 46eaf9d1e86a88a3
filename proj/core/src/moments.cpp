#include "thetamom/moments.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numbers>
#include <vector>

#include "thetamom/error.hpp"
#include "thetamom/numeric.hpp"
#include "thetamom/parallel.hpp"

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

// Sum of |v|^{2k} over the selected indices, largest terms first.
double power_sum(const std::vector<Complex>& values, std::uint64_t first, std::uint64_t step, int k) {
  std::vector<double> terms;
  terms.reserve(values.size() / step + 1);
  for (std::uint64_t j = first; j < values.size(); j += step) {
    terms.push_back(ipow(std::norm(values[j]), k));
  }
  std::sort(terms.begin(), terms.end(), std::greater<>());
  CompensatedSum s;
  for (double t : terms) s += t;
  return s.value();
}

MomentRecord make_record(std::uint64_t p, int k, MomentClass c, double value) {
  MomentRecord r{p, k, c, value, moment_normalizer(p, k, c), 0.0};
  r.ratio = r.value / r.normalizer;
  return r;
}

}  // namespace

std::string_view to_string(MomentClass c) noexcept {
  switch (c) {
    case MomentClass::even_nontrivial: return "even_nontrivial";
    case MomentClass::even_all: return "even_all";
    case MomentClass::odd: return "odd";
  }
  return "?";
}

std::optional<MomentClass> parse_moment_class(std::string_view s) noexcept {
  if (s == "even_nontrivial") return MomentClass::even_nontrivial;
  if (s == "even_all") return MomentClass::even_all;
  if (s == "odd") return MomentClass::odd;
  return std::nullopt;
}

double moment_normalizer(std::uint64_t p, int k, MomentClass c) {
  using std::numbers::pi;
  const double pd = static_cast<double>(p);
  const double lp = std::log(pd);
  const double sqrt2 = std::numbers::sqrt2;
  const double logs = std::pow(lp, static_cast<double>((k - 1) * (k - 1)));
  switch (c) {
    case MomentClass::even_all:
      if (k == 1) return std::pow(pd, 1.5) / (4.0 * sqrt2);
      if (k == 2) return 3.0 * pd * pd * lp / (16.0 * pi);
      return std::pow(pd, k);
    case MomentClass::even_nontrivial:
      if (k == 1) return std::pow(pd, 1.5) / (4.0 * sqrt2);
      if (k == 2) return 3.0 * pd * pd * lp / (16.0 * pi);
      return std::pow(pd, 0.5 * k + 1.0) * logs;
    case MomentClass::odd:
      if (k == 1) return std::pow(pd, 2.5) / (16.0 * pi * sqrt2);
      if (k == 2) return 3.0 * std::pow(pd, 4.0) * lp / (512.0 * pi * pi * pi);
      return std::pow(pd, 1.5 * k + 1.0) * logs;
  }
  return 1.0;
}

MomentRecord moment_even(const ThetaTable& table, int k, bool include_principal) {
  if (k < 1) throw InvalidArgument("moment_even: k must be >= 1");
  if (table.eta() != 0) throw InvalidArgument("moment_even: table must be computed with eta = 0");
  const double v = power_sum(table.values, include_principal ? 0 : 2, 2, k);
  return make_record(table.modulus(), k, include_principal ? MomentClass::even_all : MomentClass::even_nontrivial, v);
}

MomentRecord moment_odd(const ThetaTable& table, int k) {
  if (k < 1) throw InvalidArgument("moment_odd: k must be >= 1");
  if (table.eta() != 1) throw InvalidArgument("moment_odd: table must be computed with eta = 1");
  return make_record(table.modulus(), k, MomentClass::odd, power_sum(table.values, 1, 2, k));
}

FitResult exponent_fit(std::span<const MomentRecord> records, const PowerLogModel& model) {
  if (records.empty()) throw InvalidArgument("exponent_fit: no records");
  std::vector<double> xs;
  std::vector<double> ys;
  for (const auto& r : records) {
    if (r.k != records.front().k || r.moment_class != records.front().moment_class) {
      throw InvalidArgument("exponent_fit: records mix moment orders or classes");
    }
    xs.push_back(static_cast<double>(r.p));
    ys.push_back(r.value);
  }
  auto sorted = xs;
  std::sort(sorted.begin(), sorted.end());
  if (std::unique(sorted.begin(), sorted.end()) - sorted.begin() < 3) {
    throw InvalidArgument("exponent_fit: need at least 3 distinct primes");
  }
  return fit_power_log(xs, ys, model);
}

std::optional<NonvanishingResult> nonvanishing_scan(const ThetaTable& table, Parity parity) {
  const int eta = parity == Parity::even ? 0 : 1;
  if (table.eta() != eta) throw InvalidArgument("nonvanishing_scan: table eta does not match parity");
  if (table.request.x != 1.0) throw InvalidArgument("nonvanishing_scan: table must use x = 1");

  std::optional<NonvanishingResult> best;
  const std::uint64_t first = parity == Parity::even ? 2 : 1;
  for (std::uint64_t j = first; j < table.values.size(); j += 2) {
    const double a = std::abs(table.values[j]);
    if (!best || a < best->min_abs) best = NonvanishingResult{a, j, 0.0};
  }
  if (best) best->normalized = best->min_abs / std::pow(static_cast<double>(table.modulus()), 0.5 * eta);
  return best;
}

std::vector<double> default_exception_deltas() { return {0.0, 0.05, 0.1, 0.25}; }

std::vector<ExceptionalFraction> moment_exceptions(std::span<const MomentRecord> records,
                                                   std::span<const double> deltas) {
  // (k, class) -> records, ordered for stable output.
  std::map<std::pair<int, int>, std::vector<const MomentRecord*>> groups;
  for (const auto& r : records) {
    if (r.moment_class == MomentClass::even_all) continue;
    groups[{r.k, r.moment_class == MomentClass::odd ? 1 : 0}].push_back(&r);
  }
  std::vector<ExceptionalFraction> out;
  for (const auto& [key, group] : groups) {
    const auto [k, odd] = key;
    const double exponent = odd ? 1.75 * k + 0.5 : 0.75 * k + 0.5;
    for (double delta : deltas) {
      ExceptionalFraction e{odd ? "S2k_minus" : "T2k_plus", k, odd, exponent, delta, group.size(), 0, 0.0};
      for (const auto* r : group) {
        if (r->value > std::pow(static_cast<double>(r->p), exponent + delta)) ++e.n_exceeding;
      }
      e.fraction = static_cast<double>(e.n_exceeding) / static_cast<double>(e.n_primes);
      out.push_back(e);
    }
  }
  return out;
}

std::vector<ExceptionalFraction> individual_exceptions(std::span<const std::uint64_t> primes,
                                                       std::span<const double> deltas, unsigned jobs) {
  const auto maxima = parallel_map<std::array<double, 2>>(primes.size(), jobs, [&](std::size_t i) {
    const PrimeContext ctx(primes[i]);
    std::array<double, 2> m{0.0, 0.0};
    for (int eta : {0, 1}) {
      const auto table = theta_all_characters(ctx, eta);
      for (std::size_t j = 1; j < table.values.size(); ++j) m[eta] = std::max(m[eta], std::abs(table.values[j]));
    }
    return m;
  });
  std::vector<ExceptionalFraction> out;
  for (int eta : {0, 1}) {
    const double exponent = 0.5 * eta + 0.375;
    for (double delta : deltas) {
      ExceptionalFraction e{"max_theta", 0, eta, exponent, delta, primes.size(), 0, 0.0};
      for (std::size_t i = 0; i < primes.size(); ++i) {
        if (maxima[i][eta] > std::pow(static_cast<double>(primes[i]), exponent + delta)) ++e.n_exceeding;
      }
      e.fraction = primes.empty() ? 0.0 : static_cast<double>(e.n_exceeding) / static_cast<double>(e.n_primes);
      out.push_back(e);
    }
  }
  return out;
}

}  // namespace thetamom
