#include <doctest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "json.hpp"
#include "thetamom/csv.hpp"
#include "thetamom/error.hpp"
#include "thetamom/fit.hpp"
#include "thetamom/primes.hpp"
#include "thetamom/sweep.hpp"

using namespace thetamom;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    std::random_device rd;
    path = fs::temp_directory_path() / ("thetamom-test-" + std::to_string(rd()) + std::to_string(rd()));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

SweepConfig moments_config(const fs::path& out, std::uint64_t hi, unsigned jobs) {
  SweepConfig c;
  c.kind = SweepKind::moments;
  c.x_min = 3;
  c.x_max = hi;
  c.jobs = jobs;
  c.out_dir = out;
  return c;
}

}  // namespace

TEST_SUITE("sweep_cli") {
  TEST_CASE("shortest round-trip doubles") {
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(1.0) == "1");
    CHECK(format_double(-2.5e-300) == "-2.5e-300");
    CHECK(format_double(1.0 / 0.0) == "inf");
    std::mt19937_64 rng(5);
    for (int i = 0; i < 1000; ++i) {
      const double v = std::ldexp(static_cast<double>(rng() >> 11), static_cast<int>(rng() % 200) - 150);
      REQUIRE(std::stod(format_double(v)) == v);
    }
  }

  TEST_CASE("csv helpers") {
    CHECK(join({"a", "b", "c"}) == "a,b,c");
    CHECK(split("1,,x") == std::vector<std::string>{"1", "", "x"});
    TempDir dir;
    write_text_atomic(dir.path / "t.csv", "p,v\n3,0.5\n5,1\n");
    const auto t = read_csv(dir.path / "t.csv");
    CHECK(t.column("v") == 1);
    CHECK(t.column("w") == -1);
    CHECK(t.rows.size() == 2);
    CHECK_THROWS_AS((void)read_csv(dir.path / "missing.csv"), IoError);
  }

  TEST_CASE("sha256") {
    CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  }

  TEST_CASE("config parsing and validation") {
    TempDir dir;
    std::ofstream(dir.path / "c.conf") << "# comment\nkind = garaev\nmin=512 # inline\nmax=4096\njobs=2\n\n";
    const auto kv = read_key_values(dir.path / "c.conf");
    CHECK(kv.size() == 4);
    const auto c = apply_config_values(SweepConfig{}, kv);
    CHECK(c.kind == SweepKind::garaev);
    CHECK(c.x_min == 512);
    CHECK(sweep_units(c) == std::vector<std::uint64_t>{512, 1024, 2048, 4096});
    CHECK_THROWS_AS((void)apply_config_values(SweepConfig{}, {{"colour", "red"}}), InvalidArgument);
    CHECK_THROWS_AS((void)apply_config_values(SweepConfig{}, {{"min", "x"}}), InvalidArgument);
    SweepConfig bad;
    bad.x_min = 2;
    CHECK_THROWS_AS(bad.validate(), InvalidArgument);
    bad.x_min = 50;
    bad.x_max = 10;
    CHECK_THROWS_AS(bad.validate(), InvalidArgument);
    bad.x_max = 100;
    bad.jobs = 0;
    CHECK_THROWS_AS(bad.validate(), InvalidArgument);
    CHECK(parse_sweep_kind("divisor") == SweepKind::divisor);
    CHECK_FALSE(parse_sweep_kind("sieve").has_value());
  }

  TEST_CASE("default sampling") {
    SweepConfig c;
    c.x_min = 3;
    c.x_max = 40000;
    const auto units = sweep_units(c);
    const auto below = primes_in_range(3, 9999);
    CHECK(std::equal(below.begin(), below.end(), units.begin()));
    CHECK(units.size() > below.size() + 40);
    CHECK(units.size() < below.size() + 52);
    CHECK(std::is_sorted(units.begin(), units.end()));
  }

  TEST_CASE("moments sweep over [3, 101]") {
    TempDir dir;
    const auto r = run_sweep(moments_config(dir.path, 101, 1));
    CHECK(r.complete);
    CHECK(r.planned == 25);
    const auto t = read_csv(r.csv_path);
    CHECK(t.header == split(csv_header(SweepKind::moments)));
    CHECK(t.rows.size() == 25 * 2 * 3);
    CHECK(t.rows[0][0] == "3");
    CHECK(t.rows[0][2] == "even_nontrivial");
    CHECK(t.rows[0][3] == "0");
    const auto m = nlohmann::json::parse(slurp(r.manifest_path));
    CHECK(m["completed"].size() == 25);
    CHECK(m["files"]["moments.csv"] == sha256_hex(slurp(r.csv_path)));
  }

  TEST_CASE("jobs do not change the bytes") {
    TempDir a, b;
    run_sweep(moments_config(a.path, 600, 1));
    run_sweep(moments_config(b.path, 600, 4));
    CHECK(slurp(a.path / "moments.csv") == slurp(b.path / "moments.csv"));
  }

  TEST_CASE("resume recomputes exactly the missing prime") {
    TempDir dir;
    const auto cfg = moments_config(dir.path, 211, 2);
    const auto first = run_sweep(cfg);
    const std::string original = slurp(first.csv_path);

    auto m = nlohmann::json::parse(slurp(first.manifest_path));
    auto completed = m["completed"].get<std::vector<std::uint64_t>>();
    const auto last = completed.back();
    completed.pop_back();
    m["completed"] = completed;
    std::ofstream(first.manifest_path) << m.dump(2);

    const auto second = run_sweep(cfg);
    CHECK(second.computed == 1);
    CHECK(second.computed_units == std::vector<std::uint64_t>{last});
    CHECK(slurp(second.csv_path) == original);

    const auto third = run_sweep(cfg);
    CHECK(third.computed == 0);
    CHECK(third.reused == third.planned);
  }

  TEST_CASE("interrupt and resume") {
    TempDir a, b;
    run_sweep(moments_config(a.path, 400, 1));
    auto cfg = moments_config(b.path, 400, 1);
    cfg.max_units = 30;
    const auto part = run_sweep(cfg);
    CHECK_FALSE(part.complete);
    CHECK(part.computed == 30);
    cfg.max_units.reset();
    CHECK_FALSE(fs::exists(b.path / "moments.exceptions.csv"));
    const auto rest = run_sweep(cfg);
    CHECK(rest.complete);
    CHECK(slurp(a.path / "moments.exceptions.csv") == slurp(b.path / "moments.exceptions.csv"));
    const auto m = nlohmann::json::parse(slurp(rest.manifest_path));
    CHECK(m["files"]["moments.exceptions.csv"] == sha256_hex(slurp(b.path / "moments.exceptions.csv")));
    const auto ex = read_csv(b.path / "moments.exceptions.csv");
    CHECK(ex.rows.size() == 2 * 2 * default_exception_deltas().size());
    CHECK(rest.reused == 30);
    CHECK(slurp(a.path / "moments.csv") == slurp(b.path / "moments.csv"));
  }

  TEST_CASE("config change invalidates the manifest") {
    TempDir dir;
    auto cfg = moments_config(dir.path, 101, 1);
    run_sweep(cfg);
    cfg.k_list = {1, 2, 3};
    const auto r = run_sweep(cfg);
    CHECK(r.reused == 0);
    CHECK(read_csv(r.csv_path).rows.size() == 25 * 3 * 3);
  }

  TEST_CASE("unwritable output is an I/O error") {
    TempDir dir;
    std::ofstream(dir.path / "file") << "x";
    CHECK_THROWS_AS((void)run_sweep(moments_config(dir.path / "file", 50, 1)), IoError);
  }

  TEST_CASE("other sweep kinds") {
    TempDir dir;
    SweepConfig c;
    c.out_dir = dir.path;
    c.kind = SweepKind::nonvanishing;
    c.x_max = 50;
    run_sweep(c);
    const auto nv = read_csv(dir.path / "nonvanishing.csv");
    CHECK(nv.rows.size() == 14 * 2);
    CHECK(nv.rows[0][2] == "inf");

    c.kind = SweepKind::mollifier;
    c.x_min = 101;
    c.x_max = 200;
    c.k_list = {2, 3};
    run_sweep(c);
    CHECK(read_csv(dir.path / "mollifier.csv").rows.size() == 21 * 2);

    c.kind = SweepKind::divisor;
    c.x_min = 10;
    c.x_max = 80;
    c.k_list = {2};
    run_sweep(c);
    const auto dv = read_csv(dir.path / "divisor.csv");
    REQUIRE(dv.rows.size() == 4);
    CHECK(dv.rows[0] == std::vector<std::string>{"2", "10", "1;1", "278", dv.rows[0][4]});

    c.kind = SweepKind::garaev;
    c.x_min = 16;
    c.x_max = 64;
    run_sweep(c);
    CHECK(read_csv(dir.path / "garaev.csv").rows.size() == 3);
  }

  TEST_CASE("cumulative series") {
    const std::vector<SeriesPoint> one{{5.0, 2.5}};
    CHECK(cumulative_series(one)[0].value == 2.5);
    const std::vector<SeriesPoint> pts{{3, 1}, {5, 2}, {7, 4}};
    const auto c = cumulative_series(pts);
    CHECK(c[2].value == 7.0);
    CHECK(c[1].x == 5.0);
    const std::vector<SeriesPoint> unsorted{{5, 1}, {3, 2}};
    CHECK_THROWS_AS((void)cumulative_series(unsorted), InvalidArgument);
  }

  TEST_CASE("power-law fit") {
    std::vector<double> x, y;
    for (double v = 10; v < 1e5; v *= 3) {
      x.push_back(v);
      y.push_back(2.0 * std::pow(v, 1.5) * std::log(v));
    }
    const auto both = fit_power_log(x, y, PowerLogModel::free_both());
    CHECK(both.power == doctest::Approx(1.5).epsilon(1e-9));
    CHECK(both.log_power == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(both.constant == doctest::Approx(2.0).epsilon(1e-9));
    const auto fixed = fit_power_log(x, y, PowerLogModel::fixed_power_free_log(1.5));
    CHECK(fixed.log_power == doctest::Approx(1.0).epsilon(1e-9));
    const std::vector<double> two{1, 2};
    CHECK_THROWS_AS((void)fit_power_log(two, two, PowerLogModel::power_only()), InvalidArgument);
  }
}
