#include "thetamom/divisor.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <thread>

#include "thetamom/error.hpp"
#include "thetamom/numeric.hpp"
#include "thetamom/primes.hpp"

namespace thetamom {
namespace {

using u64 = std::uint64_t;
__extension__ using u128 = unsigned __int128;

ExactCount to_exact(u128 v) {
  ExactCount hi = static_cast<u64>(v >> 64U);
  ExactCount lo = static_cast<u64>(v);
  return (hi << 64) + lo;
}

// Product of the limits, or nullopt on 64-bit overflow.
std::optional<u64> box_volume(std::span<const u64> limits) {
  u64 v = 1;
  for (u64 l : limits) {
    if (l != 0 && v > std::numeric_limits<u64>::max() / l) return std::nullopt;
    v *= l;
  }
  return v;
}

// Calls f(product) for every tuple in the box with a_0 restricted to [lo0, hi0].
template <class F>
void for_each_product(std::span<const u64> limits, u64 lo0, u64 hi0, F&& f) {
  const std::size_t k = limits.size();
  std::function<void(std::size_t, u64)> rec = [&](std::size_t i, u64 acc) {
    if (i == k) {
      f(acc);
      return;
    }
    const u64 lo = i == 0 ? lo0 : 1;
    const u64 hi = i == 0 ? hi0 : limits[i];
    for (u64 a = lo; a <= hi; ++a) rec(i + 1, acc * a);
  };
  rec(0, 1);
}

ExactCount count_enumeration(std::span<const u64> limits) {
  std::vector<u64> prods;
  for_each_product(limits, 1, limits.empty() ? 0 : limits[0], [&](u64 m) { prods.push_back(m); });
  if (limits.empty()) prods.push_back(1);
  u128 total = 0;
  for (u64 a : prods) {
    for (u64 b : prods) total += (a == b) ? 1U : 0U;
  }
  return to_exact(total);
}

template <class Counter>
u128 dense_histogram_sum(std::span<const u64> limits, u64 max_product, unsigned jobs) {
  const u64 first = limits[0];
  jobs = static_cast<unsigned>(std::max<u64>(1, std::min<u64>(jobs, first)));
  std::vector<std::vector<Counter>> partial(jobs);
  std::vector<std::thread> workers;
  for (unsigned w = 0; w < jobs; ++w) {
    const u64 lo = 1 + first * w / jobs;
    const u64 hi = first * (w + 1) / jobs;
    auto run = [&, w, lo, hi] {
      auto& hist = partial[w];
      hist.assign(max_product + 1, 0);
      for_each_product(limits, lo, hi, [&](u64 m) { ++hist[m]; });
    };
    if (jobs == 1) {
      run();
    } else {
      workers.emplace_back(run);
    }
  }
  for (auto& t : workers) t.join();
  u128 total = 0;
  for (u64 m = 1; m <= max_product; ++m) {
    u128 r = 0;
    for (const auto& h : partial) r += h[m];
    total += r * r;
  }
  return total;
}

u128 sorted_histogram_sum(std::span<const u64> limits) {
  std::vector<u64> prods;
  for_each_product(limits, 1, limits[0], [&](u64 m) { prods.push_back(m); });
  std::sort(prods.begin(), prods.end());
  u128 total = 0;
  for (std::size_t i = 0; i < prods.size();) {
    std::size_t j = i;
    while (j < prods.size() && prods[j] == prods[i]) ++j;
    const u128 run = j - i;
    total += run * run;
    i = j;
  }
  return total;
}

ExactCount count_histogram(std::span<const u64> limits, u64 volume, const CountBudget& budget) {
  if (limits.empty()) return 1;
  const auto max_product = box_volume(limits);  // largest product equals the volume
  const u64 counter_bytes = volume <= std::numeric_limits<std::uint32_t>::max() ? 4 : 8;
  const unsigned jobs = std::max(1U, budget.jobs);

  if (max_product && *max_product < budget.memory_bytes / counter_bytes) {
    // Dense map from product to multiplicity.
    const unsigned fit_jobs = static_cast<unsigned>(std::max<u64>(
        1, std::min<u64>(jobs, budget.memory_bytes / ((*max_product + 1) * counter_bytes))));
    if (counter_bytes == 4) return to_exact(dense_histogram_sum<std::uint32_t>(limits, *max_product, fit_jobs));
    return to_exact(dense_histogram_sum<u64>(limits, *max_product, fit_jobs));
  }
  if (volume < budget.memory_bytes / sizeof(u64)) return to_exact(sorted_histogram_sum(limits));
  throw BudgetExceeded("restricted_divisor_count: histogram needs more than the memory budget");
}

}  // namespace

void DivisorSpec::validate() const {
  if (k < 1) throw InvalidArgument("DivisorSpec: k must be >= 1");
  if (!(T >= 1.0) || !std::isfinite(T)) throw InvalidArgument("DivisorSpec: T must be >= 1");
  if (gamma.size() != static_cast<std::size_t>(k)) throw InvalidArgument("DivisorSpec: gamma must have k entries");
  for (double g : gamma) {
    if (!(g > 0.0 && g <= 1.0)) throw InvalidArgument("DivisorSpec: gamma_i must lie in (0, 1]");
  }
}

std::vector<std::uint64_t> DivisorSpec::limits() const {
  validate();
  std::vector<std::uint64_t> out;
  for (double g : gamma) {
    // Relative nudge: 100^0.5 must land on 10, not 9.999...
    const double v = g == 1.0 ? std::floor(T) : std::floor(std::pow(T, g) * (1.0 + 1e-12));
    out.push_back(std::max<std::uint64_t>(1, static_cast<std::uint64_t>(v)));
  }
  return out;
}

ExactCount restricted_divisor_count(const DivisorSpec& spec, CountStrategy strategy, const CountBudget& budget) {
  const auto limits = spec.limits();
  return restricted_divisor_count(limits, strategy, budget);
}

ExactCount restricted_divisor_count(std::span<const std::uint64_t> limits, CountStrategy strategy,
                                    const CountBudget& budget) {
  for (auto l : limits) {
    if (l < 1) throw InvalidArgument("restricted_divisor_count: box limits must be >= 1");
  }
  const auto volume = box_volume(limits);
  if (!volume) throw BudgetExceeded("restricted_divisor_count: box volume overflows 64 bits");
  const u128 pairs = static_cast<u128>(*volume) * *volume;
  const bool enumerable = pairs <= budget.enumeration_pairs;

  switch (strategy) {
    case CountStrategy::enumeration:
      if (!enumerable) throw BudgetExceeded("restricted_divisor_count: enumeration exceeds budget");
      return count_enumeration(limits);
    case CountStrategy::histogram:
      return count_histogram(limits, *volume, budget);
    case CountStrategy::automatic:
      return enumerable ? count_enumeration(limits) : count_histogram(limits, *volume, budget);
  }
  return 0;
}

namespace {

// h[r] = total weight of tuples (a, a_1..a_{k-1}) with product = r (mod p);
// built by k multiplicative convolutions over the residues.
template <class W>
std::vector<W> residue_histogram(u64 p, int k, u64 x_cut, u64 first_cut, const std::function<W(u64)>& first_weight) {
  std::vector<W> h(p, W{});
  for (u64 a = 1; a <= first_cut; ++a) h[a % p] += first_weight(a);
  for (int i = 1; i < k; ++i) {
    std::vector<W> next(p, W{});
    for (u64 r = 1; r < p; ++r) {
      if (h[r] == W{}) continue;
      for (u64 a = 1; a <= x_cut; ++a) next[r * a % p] += h[r];
    }
    h = std::move(next);
  }
  return h;
}

}  // namespace

double congruence_count(std::uint64_t p, int k, std::uint64_t x_cut, std::optional<std::uint64_t> t_cut,
                        const Coefficients& xi) {
  if (p < 3 || !is_prime(p)) throw InvalidArgument("congruence_count: p must be an odd prime");
  if (k < 1) throw InvalidArgument("congruence_count: k must be >= 1");
  if (x_cut < 1 || x_cut >= p) throw InvalidArgument("congruence_count: need 1 <= x_cut < p");
  if (t_cut && (*t_cut < 1 || *t_cut >= p)) throw InvalidArgument("congruence_count: need 1 <= t_cut < p");
  const u64 first_cut = t_cut.value_or(x_cut);
  if (static_cast<double>(p) * static_cast<double>(x_cut) * k > 4e10) {
    throw BudgetExceeded("congruence_count: residue convolution exceeds budget");
  }

  if (!t_cut || xi.is_unit()) {
    const auto h = residue_histogram<u64>(p, k, x_cut, first_cut, [](u64) { return u64{1}; });
    u128 total = 0;
    for (u64 r = 1; r < p; ++r) total += static_cast<u128>(h[r]) * (h[r] + h[p - r]);
    return static_cast<double>(total);
  }
  const auto h = residue_histogram<double>(p, k, x_cut, first_cut, [&](u64 a) { return xi(a); });
  CompensatedSum total;
  for (u64 r = 1; r < p; ++r) total += h[r] * (h[r] + h[p - r]);
  return total.value();
}

FitResult log_power_fit(std::span<const std::pair<double, double>> samples, std::optional<double> gamma) {
  if (samples.size() < 4) throw InvalidArgument("log_power_fit: need at least 4 samples");
  std::vector<double> ts;
  std::vector<double> counts;
  for (const auto& [t, c] : samples) {
    ts.push_back(t);
    counts.push_back(c);
  }
  const auto [lo, hi] = std::minmax_element(ts.begin(), ts.end());
  if (!(*lo > 1.0) || *hi < 4.0 * *lo) throw InvalidArgument("log_power_fit: samples must span at least two octaves of T > 1");
  PowerLogModel model{gamma, std::nullopt};
  return fit_power_log(ts, counts, model);
}

}  // namespace thetamom
