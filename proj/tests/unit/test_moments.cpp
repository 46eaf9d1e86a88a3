#include <doctest.h>

#include <numbers>

#include "oracle.hpp"
#include "thetamom/error.hpp"
#include "thetamom/moments.hpp"
#include "thetamom/primes.hpp"

using namespace thetamom;

TEST_SUITE("moments") {
  TEST_CASE("frozen mpmath values") {
    const auto t11 = theta_all_characters(PrimeContext(11), 0);
    CHECK(moment_even(t11, 2, false).value == doctest::Approx(1.140958485380224006).epsilon(1e-13));
    const auto t3 = theta_all_characters(PrimeContext(3), 1);
    CHECK(moment_odd(t3, 1).value == doctest::Approx(0.10277844755729818944).epsilon(1e-13));
  }

  TEST_CASE("p = 3 has no even nonprincipal character") {
    const auto t3 = theta_all_characters(PrimeContext(3), 0);
    CHECK(moment_even(t3, 1, false).value == 0.0);
    CHECK(moment_even(t3, 1, true).value > 0.0);
    CHECK_FALSE(nonvanishing_scan(t3, Parity::even).has_value());
  }

  TEST_CASE("moments agree with oracle theta sums") {
    for (std::uint64_t p : {7, 31, 97}) {
      const PrimeContext ctx(p);
      const oracle::Characters ref(p);
      const auto even = theta_all_characters(ctx, 0);
      const auto odd = theta_all_characters(ctx, 1);
      for (int k = 1; k <= 3; ++k) {
        double t = 0.0, s_plus = 0.0, s_minus = 0.0;
        for (std::uint64_t j = 0; j < p - 1; ++j) {
          if (j % 2 == 0) {
            const double v = std::pow(std::abs(oracle::theta(ref, j, 0, 1.0, even.truncation)), 2 * k);
            s_plus += v;
            if (j != 0) t += v;
          } else {
            s_minus += std::pow(std::abs(oracle::theta(ref, j, 1, 1.0, odd.truncation)), 2 * k);
          }
        }
        CHECK(moment_even(even, k, false).value == doctest::Approx(t).epsilon(1e-12));
        CHECK(moment_even(even, k, true).value == doctest::Approx(s_plus).epsilon(1e-12));
        CHECK(moment_odd(odd, k).value == doctest::Approx(s_minus).epsilon(1e-12));
      }
    }
  }

  TEST_CASE("record fields") {
    const auto odd = theta_all_characters(PrimeContext(101), 1);
    const auto r = moment_odd(odd, 2);
    CHECK(r.p == 101);
    CHECK(r.k == 2);
    CHECK(r.moment_class == MomentClass::odd);
    CHECK(r.ratio == doctest::Approx(r.value / r.normalizer));
    CHECK_THROWS_AS((void)moment_odd(theta_all_characters(PrimeContext(101), 0), 1), InvalidArgument);
    CHECK_THROWS_AS((void)moment_even(odd, 1, true), InvalidArgument);
  }

  TEST_CASE("normalizers") {
    const double p = 1009.0, lp = std::log(p), pi = std::numbers::pi;
    CHECK(moment_normalizer(1009, 1, MomentClass::even_all) == doctest::Approx(std::pow(p, 1.5) / (4 * std::sqrt(2.0))));
    CHECK(moment_normalizer(1009, 2, MomentClass::even_all) == doctest::Approx(3 * p * p * lp / (16 * pi)));
    CHECK(moment_normalizer(1009, 1, MomentClass::odd) == doctest::Approx(std::pow(p, 2.5) / (16 * pi * std::sqrt(2.0))));
    CHECK(moment_normalizer(1009, 2, MomentClass::odd) == doctest::Approx(3 * std::pow(p, 4) * lp / (512 * pi * pi * pi)));
    CHECK(moment_normalizer(1009, 3, MomentClass::even_all) == doctest::Approx(p * p * p));
    CHECK(moment_normalizer(1009, 3, MomentClass::even_nontrivial) == doctest::Approx(std::pow(p, 2.5) * lp * lp * lp * lp));
    CHECK(moment_normalizer(1009, 3, MomentClass::odd) == doctest::Approx(std::pow(p, 5.5) * std::pow(lp, 4)));
  }

  TEST_CASE("class names round-trip") {
    for (auto c : {MomentClass::even_nontrivial, MomentClass::even_all, MomentClass::odd})
      CHECK(parse_moment_class(to_string(c)) == c);
    CHECK_FALSE(parse_moment_class("even").has_value());
  }

  TEST_CASE("exponent fit") {
    std::vector<MomentRecord> records;
    for (std::uint64_t p : {101, 211, 401, 809}) {
      const auto t = theta_all_characters(PrimeContext(p), 1);
      records.push_back(moment_odd(t, 1));
    }
    const auto fit = exponent_fit(records, PowerLogModel::power_only());
    CHECK(fit.power == doctest::Approx(2.5).epsilon(0.02));
    CHECK(fit.n_points == 4);
    records.push_back(moment_odd(theta_all_characters(PrimeContext(97), 1), 2));
    CHECK_THROWS_AS((void)exponent_fit(records, PowerLogModel::power_only()), InvalidArgument);
    records.resize(2);
    CHECK_THROWS_AS((void)exponent_fit(records, PowerLogModel::power_only()), InvalidArgument);
  }

  TEST_CASE("nonvanishing scan") {
    const PrimeContext ctx(211);
    const oracle::Characters ref(211);
    for (int eta : {0, 1}) {
      const auto table = theta_all_characters(ctx, eta);
      const auto r = nonvanishing_scan(table, eta == 0 ? Parity::even : Parity::odd);
      REQUIRE(r.has_value());
      double best = 1e300;
      std::uint64_t arg = 0;
      for (std::uint64_t j = 1; j < 210; ++j) {
        if (static_cast<int>(j % 2) != eta) continue;
        const double v = std::abs(oracle::theta(ref, j, eta, 1.0, table.truncation));
        if (v < best - 1e-12) {
          best = v;
          arg = j;
        }
      }
      CHECK(r->min_abs == doctest::Approx(best).epsilon(1e-12));
      CHECK(r->argmin == arg);
      CHECK(r->normalized == doctest::Approx(best / std::pow(211.0, eta / 2.0)));
    }
    CHECK_THROWS_AS((void)nonvanishing_scan(theta_all_characters(ctx, 0), Parity::odd), InvalidArgument);
  }

  TEST_CASE("exceptional fractions") {
    std::vector<MomentRecord> records{
        {101, 2, MomentClass::even_nontrivial, std::pow(101.0, 2.02), 1.0, 0.0},
        {103, 2, MomentClass::even_nontrivial, std::pow(103.0, 1.9), 1.0, 0.0},
        {101, 2, MomentClass::even_all, 1e30, 1.0, 0.0},
        {101, 2, MomentClass::odd, std::pow(101.0, 4.2), 1.0, 0.0},
    };
    const std::vector<double> deltas{0.0, 0.1};
    const auto e = moment_exceptions(records, deltas);
    REQUIRE(e.size() == 4);
    CHECK(e[0].statistic == "T2k_plus");
    CHECK(e[0].exponent == 2.0);
    CHECK(e[0].n_primes == 2);
    CHECK(e[0].n_exceeding == 1);
    CHECK(e[0].fraction == 0.5);
    CHECK(e[1].n_exceeding == 0);
    CHECK(e[2].statistic == "S2k_minus");
    CHECK(e[2].exponent == 4.0);
    CHECK(e[2].n_exceeding == 1);
    CHECK(e[3].n_exceeding == 1);

    const std::vector<std::uint64_t> primes{101, 211};
    const auto ind = individual_exceptions(primes, deltas, 2);
    REQUIRE(ind.size() == 4);
    for (int eta : {0, 1}) {
      std::size_t over = 0;
      for (auto p : primes) {
        const oracle::Characters ref(p);
        double m = 0.0;
        for (std::uint64_t j = 1; j < p - 1; ++j) m = std::max(m, std::abs(oracle::theta(ref, j, eta, 1.0, 200)));
        over += m > std::pow(static_cast<double>(p), 0.5 * eta + 0.375) ? 1 : 0;
      }
      CHECK(ind[static_cast<std::size_t>(2 * eta)].n_exceeding == over);
      CHECK(ind[static_cast<std::size_t>(2 * eta)].eta == eta);
    }
  }
}
