#include "thetamom/sweep.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "thetamom/char_core.hpp"
#include "thetamom/charsum.hpp"
#include "thetamom/csv.hpp"
#include "thetamom/divisor.hpp"
#include "thetamom/error.hpp"
#include "thetamom/moments.hpp"
#include "thetamom/parallel.hpp"
#include "thetamom/primes.hpp"
#include "thetamom/theta.hpp"
#include "thetamom/version.hpp"

namespace thetamom {
namespace {

using Rows = std::vector<std::string>;
using nlohmann::json;

constexpr std::uint64_t kFullEnumerationBelow = 10'000;
constexpr unsigned kDefaultPerOctave = 24;

std::string version() { return std::string(kToolVersion); }

std::string utc_now() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

std::string num(std::uint64_t v) { return std::to_string(v); }
std::string num(int v) { return std::to_string(v); }
std::string num(double v) { return format_double(v); }

std::uint64_t parse_u64(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const auto r = std::stoull(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return r;
  } catch (const std::exception&) {
    throw InvalidArgument("config: '" + key + "' expects a non-negative integer, got '" + v + "'");
  }
}

double parse_double(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const double r = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return r;
  } catch (const std::exception&) {
    throw InvalidArgument("config: '" + key + "' expects a real number, got '" + v + "'");
  }
}

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string k_list_text(const std::vector<int>& ks) {
  std::vector<std::string> parts;
  for (int k : ks) parts.push_back(num(k));
  return join(parts);
}

Rows moment_rows(const SweepConfig& config, std::uint64_t p) {
  const PrimeContext ctx(p);
  const auto even = theta_all_characters(ctx, 0);
  const auto odd = theta_all_characters(ctx, 1);
  Rows rows;
  auto emit = [&](const MomentRecord& r, int eta, std::uint64_t n) {
    rows.push_back(join({num(r.p), num(r.k), std::string(to_string(r.moment_class)), num(r.value),
                         num(r.normalizer), num(r.ratio), num(eta), num(n), version()}));
  };
  for (int k : config.k_list) {
    emit(moment_even(even, k, false), 0, even.truncation);
    emit(moment_even(even, k, true), 0, even.truncation);
    emit(moment_odd(odd, k), 1, odd.truncation);
  }
  return rows;
}

Rows nonvanishing_rows(std::uint64_t p) {
  const PrimeContext ctx(p);
  Rows rows;
  for (Parity parity : {Parity::even, Parity::odd}) {
    const auto table = theta_all_characters(ctx, parity == Parity::even ? 0 : 1);
    const auto r = nonvanishing_scan(table, parity);
    const std::string name = parity == Parity::even ? "even" : "odd";
    if (r) {
      rows.push_back(join({num(p), name, num(r->min_abs), num(r->argmin), num(r->normalized), version()}));
    } else {
      const double inf = std::numeric_limits<double>::infinity();
      rows.push_back(join({num(p), name, num(inf), "-1", num(inf), version()}));
    }
  }
  return rows;
}

Rows mollifier_rows(const SweepConfig& config, std::uint64_t p) {
  const PrimeContext ctx(p);
  const auto theta = theta_all_characters(ctx, 0);
  Rows rows;
  for (int k : config.k_list) {
    const auto spec = MollifierSpec::make(p, k, config.epsilon, config.tau, Coefficients::parse(config.xi));
    const auto s = mollifier_sums(ctx, spec, &theta);
    rows.push_back(join({num(p), num(k), num(spec.epsilon), num(spec.x_cut), num(spec.tau), num(spec.t_cut),
                         num(s.sigma1), num(s.sigma2), num(s.frak_s), num(s.holder_lower_bound),
                         num(s.theta_moment), version()}));
  }
  return rows;
}

Rows garaev_rows(const SweepConfig& config, std::uint64_t x) {
  const auto g = garaev_statistic(x, config.jobs);
  return {join({num(g.x), num(g.q), num(g.n_primes), num(g.sum_max8_charsum), num(g.sum_max8_theta_eta0),
                num(g.sum_max8_theta_eta1), version()})};
}

Rows divisor_rows(const SweepConfig& config, std::uint64_t t) {
  Rows rows;
  for (int k : config.k_list) {
    const auto spec = DivisorSpec::uniform(k, static_cast<double>(t));
    std::vector<std::string> gamma;
    for (double g : spec.gamma) gamma.push_back(num(g));
    const auto count = restricted_divisor_count(spec);
    rows.push_back(join({num(k), num(t), join(gamma, ';'), count.str(), version()}));
  }
  return rows;
}

Rows compute_unit(const SweepConfig& config, std::uint64_t unit) {
  switch (config.kind) {
    case SweepKind::moments: return moment_rows(config, unit);
    case SweepKind::nonvanishing: return nonvanishing_rows(unit);
    case SweepKind::mollifier: return mollifier_rows(config, unit);
    case SweepKind::garaev: return garaev_rows(config, unit);
    case SweepKind::divisor: return divisor_rows(config, unit);
  }
  return {};
}

int key_column(SweepKind kind) { return kind == SweepKind::divisor ? 1 : 0; }

std::string render_csv(SweepKind kind, const std::map<std::uint64_t, Rows>& done) {
  std::string out = csv_header(kind) + "\n";
  for (const auto& [unit, rows] : done) {
    for (const auto& r : rows) {
      out += r;
      out += '\n';
    }
  }
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

// Rows of a previous run that the manifest vouches for.
std::map<std::uint64_t, Rows> load_previous(const SweepConfig& config, const std::filesystem::path& csv_path,
                                            const std::filesystem::path& manifest_path,
                                            const std::set<std::uint64_t>& planned, std::string& created) {
  std::map<std::uint64_t, Rows> done;
  if (!std::filesystem::exists(manifest_path) || !std::filesystem::exists(csv_path)) return done;

  json manifest;
  try {
    manifest = json::parse(read_file(manifest_path));
  } catch (const json::exception& e) {
    std::cerr << "warning: ignoring unreadable manifest " << manifest_path << ": " << e.what() << "\n";
    return done;
  }
  if (manifest.value("config", std::string()) != config.canonical() ||
      manifest.value("tool_version", std::string()) != version()) {
    std::cerr << "note: configuration changed; manifest " << manifest_path << " invalidated\n";
    return done;
  }
  created = manifest.value("created", created);

  std::set<std::uint64_t> completed;
  for (const auto& u : manifest.at("completed")) completed.insert(u.get<std::uint64_t>());

  const std::string text = read_file(csv_path);
  const std::string digest = manifest["files"].value(csv_path.filename().string(), std::string());
  if (digest != sha256_hex(text)) {
    std::cerr << "note: " << csv_path << " differs from its manifest digest; keeping only vouched units\n";
  }

  std::istringstream lines(text);
  std::string line;
  if (!std::getline(lines, line) || line != csv_header(config.kind)) return {};
  const int key = key_column(config.kind);
  while (std::getline(lines, line)) {
    if (line.empty()) continue;
    const auto fields = split(line);
    if (fields.size() <= static_cast<std::size_t>(key)) continue;
    std::uint64_t unit = 0;
    try {
      unit = std::stoull(fields[static_cast<std::size_t>(key)]);
    } catch (const std::exception&) {
      continue;
    }
    if (completed.contains(unit) && planned.contains(unit)) done[unit].push_back(line);
  }
  return done;
}

std::filesystem::path exceptions_path(const std::filesystem::path& csv_path) {
  auto p = csv_path;
  return p.replace_extension(".exceptions.csv");
}

std::vector<MomentRecord> parse_moment_rows(const std::map<std::uint64_t, Rows>& done) {
  std::vector<MomentRecord> out;
  for (const auto& [p, rows] : done) {
    for (const auto& line : rows) {
      const auto f = split(line);
      const auto c = parse_moment_class(f.at(2));
      if (!c) throw InvalidArgument("moments row with unknown class: " + line);
      out.push_back({p, std::stoi(f.at(1)), *c, std::stod(f.at(3)), std::stod(f.at(4)), std::stod(f.at(5))});
    }
  }
  return out;
}

void write_state(const SweepConfig& config, const std::filesystem::path& csv_path,
                 const std::filesystem::path& manifest_path, const std::map<std::uint64_t, Rows>& done,
                 const std::string& created, bool complete) {
  const std::string csv = render_csv(config.kind, done);
  write_text_atomic(csv_path, csv);
  std::string exceptions;
  if (complete && config.kind == SweepKind::moments) {
    exceptions = render_exceptions_csv(moment_exceptions(parse_moment_rows(done), default_exception_deltas()));
    write_text_atomic(exceptions_path(csv_path), exceptions);
  }

  json manifest;
  manifest["tool_version"] = version();
  manifest["kind"] = to_string(config.kind);
  manifest["config"] = config.canonical();
  std::vector<std::uint64_t> units;
  for (const auto& [u, rows] : done) units.push_back(u);
  manifest["completed"] = units;
  manifest["complete"] = complete;
  manifest["files"] = {{csv_path.filename().string(), sha256_hex(csv)}};
  if (!exceptions.empty()) manifest["files"][exceptions_path(csv_path).filename().string()] = sha256_hex(exceptions);
  manifest["created"] = created;
  manifest["updated"] = utc_now();
  write_text_atomic(manifest_path, manifest.dump(2) + "\n");
}

}  // namespace

std::string to_string(SweepKind kind) {
  switch (kind) {
    case SweepKind::moments: return "moments";
    case SweepKind::garaev: return "garaev";
    case SweepKind::nonvanishing: return "nonvanishing";
    case SweepKind::mollifier: return "mollifier";
    case SweepKind::divisor: return "divisor";
  }
  return "?";
}

std::optional<SweepKind> parse_sweep_kind(std::string_view s) {
  for (auto k : {SweepKind::moments, SweepKind::garaev, SweepKind::nonvanishing, SweepKind::mollifier,
                 SweepKind::divisor}) {
    if (s == to_string(k)) return k;
  }
  return std::nullopt;
}

void SweepConfig::validate() const {
  if (x_min < 3) throw InvalidArgument("sweep: min must be >= 3");
  if (x_max < x_min) throw InvalidArgument("sweep: max must be >= min");
  if (jobs < 1) throw InvalidArgument("sweep: jobs must be >= 1");
  if (k_list.empty()) throw InvalidArgument("sweep: k list is empty");
  for (int k : k_list) {
    if (k < 1) throw InvalidArgument("sweep: moment orders must be >= 1");
    if (kind == SweepKind::mollifier && k < 2) throw InvalidArgument("sweep: mollifier needs k >= 2");
    if (kind == SweepKind::mollifier && !(epsilon > 0.0 && epsilon < 1.0 / k)) {
      throw InvalidArgument("sweep: epsilon must lie in (0, 1/k) for every k");
    }
  }
  if (kind == SweepKind::mollifier && !(tau > 0.0 && tau < 1.0)) throw InvalidArgument("sweep: tau must lie in (0, 1)");
  if (kind == SweepKind::garaev && x_min < 16) throw InvalidArgument("sweep: garaev needs min >= 16");
  (void)Coefficients::parse(xi);
}

std::string SweepConfig::canonical() const {
  std::ostringstream os;
  os << "kind=" << to_string(kind) << "\n"
     << "min=" << x_min << "\n"
     << "max=" << x_max << "\n"
     << "per_octave=" << per_octave << "\n"
     << "k=" << k_list_text(k_list) << "\n";
  if (kind == SweepKind::mollifier) {
    os << "epsilon=" << format_double(epsilon) << "\n"
       << "tau=" << format_double(tau) << "\n"
       << "xi=" << xi << "\n";
  }
  os << "seed=" << seed << "\n";
  return os.str();
}

SweepConfig apply_config_values(SweepConfig c, const std::map<std::string, std::string>& kv) {
  for (const auto& [key, value] : kv) {
    if (key == "kind") {
      const auto k = parse_sweep_kind(value);
      if (!k) throw InvalidArgument("config: unknown kind '" + value + "'");
      c.kind = *k;
    } else if (key == "min") {
      c.x_min = parse_u64(key, value);
    } else if (key == "max") {
      c.x_max = parse_u64(key, value);
    } else if (key == "per_octave") {
      c.per_octave = static_cast<unsigned>(parse_u64(key, value));
    } else if (key == "k") {
      c.k_list.clear();
      for (const auto& part : split(value)) c.k_list.push_back(static_cast<int>(parse_u64(key, trim(part))));
    } else if (key == "epsilon") {
      c.epsilon = parse_double(key, value);
    } else if (key == "tau") {
      c.tau = parse_double(key, value);
    } else if (key == "xi") {
      c.xi = value;
    } else if (key == "jobs") {
      c.jobs = static_cast<unsigned>(parse_u64(key, value));
    } else if (key == "out") {
      c.out_dir = value;
    } else if (key == "seed") {
      c.seed = parse_u64(key, value);
    } else if (key == "max_units") {
      c.max_units = parse_u64(key, value);
    } else {
      throw InvalidArgument("config: unknown key '" + key + "'");
    }
  }
  return c;
}

std::map<std::string, std::string> read_key_values(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config " + path.string());
  std::map<std::string, std::string> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw InvalidArgument(path.string() + ":" + std::to_string(lineno) + ": expected key=value");
    }
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return kv;
}

std::vector<std::uint64_t> sweep_units(const SweepConfig& config) {
  config.validate();
  std::vector<std::uint64_t> units;
  switch (config.kind) {
    case SweepKind::garaev:
      for (std::uint64_t x = config.x_min; x <= config.x_max; x *= 2) units.push_back(x);
      break;
    case SweepKind::divisor: {
      const unsigned per = config.per_octave == 0 ? 1 : config.per_octave;
      for (std::uint64_t i = 0;; ++i) {
        const double t = static_cast<double>(config.x_min) * std::pow(2.0, static_cast<double>(i) / per);
        const auto ti = static_cast<std::uint64_t>(std::llround(t));
        if (ti > config.x_max) break;
        if (units.empty() || units.back() != ti) units.push_back(ti);
      }
      break;
    }
    default:
      if (config.per_octave != 0) {
        units = geometric_primes(config.x_min, config.x_max, config.per_octave);
      } else {
        units = primes_in_range(config.x_min, std::min(config.x_max, kFullEnumerationBelow - 1));
        if (config.x_max >= kFullEnumerationBelow) {
          for (auto p : geometric_primes(std::max(config.x_min, kFullEnumerationBelow), config.x_max,
                                         kDefaultPerOctave)) {
            units.push_back(p);
          }
        }
      }
      units.erase(std::remove(units.begin(), units.end(), std::uint64_t{2}), units.end());
      break;
  }
  return units;
}

std::string csv_header(SweepKind kind) {
  switch (kind) {
    case SweepKind::moments: return "p,k,class,value,normalizer,ratio,eta,N_trunc,tool_version";
    case SweepKind::garaev:
      return "X,Q,n_primes,sum_max8_charsum,sum_max8_theta_eta0,sum_max8_theta_eta1,tool_version";
    case SweepKind::nonvanishing: return "p,parity,min_abs_theta,argmin_j,normalized_min,tool_version";
    case SweepKind::mollifier:
      return "p,k,epsilon,x_cut,tau,t_cut,sigma1,sigma2,frak_s,holder_lb,T2k_plus,tool_version";
    case SweepKind::divisor: return "k,T,gamma,count,tool_version";
  }
  return "";
}

SweepResult run_sweep(const SweepConfig& config) {
  const auto units = sweep_units(config);
  std::error_code ec;
  std::filesystem::create_directories(config.out_dir, ec);
  if (ec) throw IoError("cannot create output directory " + config.out_dir.string() + ": " + ec.message());

  SweepResult result;
  result.csv_path = config.out_dir / (to_string(config.kind) + ".csv");
  result.manifest_path = config.out_dir / (to_string(config.kind) + ".manifest.json");
  result.planned = units.size();

  std::string created = utc_now();
  const std::set<std::uint64_t> planned(units.begin(), units.end());
  auto done = load_previous(config, result.csv_path, result.manifest_path, planned, created);
  result.reused = done.size();

  std::vector<std::uint64_t> pending;
  for (auto u : units) {
    if (!done.contains(u)) pending.push_back(u);
  }
  if (config.max_units && pending.size() > *config.max_units) pending.resize(*config.max_units);

  // Garaev parallelizes inside each dyadic block; other kinds across units.
  const bool across_units = config.kind != SweepKind::garaev;
  const std::size_t batch = across_units ? std::max<std::size_t>(1, 4 * config.jobs) : 1;
  for (std::size_t start = 0; start < pending.size(); start += batch) {
    const std::size_t n = std::min(batch, pending.size() - start);
    std::vector<Rows> rows;
    try {
      rows = parallel_map<Rows>(n, across_units ? config.jobs : 1,
                                [&](std::size_t i) { return compute_unit(config, pending[start + i]); });
    } catch (const IoError& e) {
      write_state(config, result.csv_path, result.manifest_path, done, created, false);
      throw IoError("sweep failed at unit " + std::to_string(pending[start]) + ": " + e.what());
    } catch (const std::exception& e) {
      write_state(config, result.csv_path, result.manifest_path, done, created, false);
      throw std::runtime_error("sweep failed at unit " + std::to_string(pending[start]) + ": " + e.what());
    }
    for (std::size_t i = 0; i < n; ++i) {
      done[pending[start + i]] = std::move(rows[i]);
      result.computed_units.push_back(pending[start + i]);
    }
    result.computed += n;
    write_state(config, result.csv_path, result.manifest_path, done, created, done.size() == units.size());
  }
  result.complete = done.size() == units.size();
  if (pending.empty()) write_state(config, result.csv_path, result.manifest_path, done, created, result.complete);
  return result;
}

std::string render_exceptions_csv(std::span<const ExceptionalFraction> rows) {
  std::string out = "statistic,k,eta,exponent,delta,n_primes,n_exceeding,fraction,tool_version\n";
  for (const auto& e : rows) {
    out += join({e.statistic, num(e.k), num(e.eta), num(e.exponent), num(e.delta), num(std::uint64_t{e.n_primes}),
                 num(std::uint64_t{e.n_exceeding}), num(e.fraction), version()});
    out += '\n';
  }
  return out;
}

std::vector<SeriesPoint> cumulative_series(std::span<const SeriesPoint> records) {
  std::vector<SeriesPoint> out;
  out.reserve(records.size());
  CompensatedSum running;
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (i > 0 && !(records[i].x > records[i - 1].x)) {
      throw InvalidArgument("cumulative_series: records must be strictly increasing in x");
    }
    running += records[i].value;
    out.push_back({records[i].x, running.value()});
  }
  return out;
}

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw IoError("sha256 failed");
  }
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
  return os.str();
}

}  // namespace thetamom
