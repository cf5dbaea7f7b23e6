// SPDX-License-Identifier: Apache-2.0

#include "misr/io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "misr/errors.hpp"

namespace misr::io {

std::string format_sig9(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

double round_sig9(double v) { return std::strtod(format_sig9(v).c_str(), nullptr); }

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

[[noreturn]] void fail(const std::string& context, const std::string& what) {
  throw config_error(context + ": " + what);
}

double parse_double(std::string_view v, const std::string& context) {
  try {
    std::size_t used = 0;
    const double d = std::stod(std::string(v), &used);
    if (used != v.size()) throw std::invalid_argument("trailing characters");
    return d;
  } catch (const std::exception&) {
    fail(context, "expected a number, got '" + std::string(v) + "'");
  }
}

long parse_long(std::string_view v, const std::string& context) {
  long out = 0;
  const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
  if (res.ec != std::errc{} || res.ptr != v.data() + v.size())
    fail(context, "expected an integer, got '" + std::string(v) + "'");
  return out;
}

std::uint64_t parse_u64(std::string_view v, const std::string& context) {
  std::uint64_t out = 0;
  const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
  if (res.ec != std::errc{} || res.ptr != v.data() + v.size())
    fail(context, "expected an unsigned integer, got '" + std::string(v) + "'");
  return out;
}

bool parse_bool(std::string_view v, const std::string& context) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  fail(context, "expected a boolean, got '" + std::string(v) + "'");
}

void parse_scheme(simkernel::Scenario& s, std::string_view v,
                  const std::string& context) {
  const auto colon = v.find(':');
  const std::string_view head = colon == std::string_view::npos ? v : v.substr(0, colon);
  const std::string_view arg =
      colon == std::string_view::npos ? std::string_view{} : v.substr(colon + 1);
  if (head == "baseline") {
    s.scheme = {simkernel::SchemeKind::baseline, 0};
  } else if (head == "silence") {
    if (arg.empty()) fail(context, "silence needs a count, e.g. silence:1");
    s.scheme = {simkernel::SchemeKind::silence,
                static_cast<int>(parse_long(arg, context))};
  } else if (head == "worstcase") {
    s.scheme = {simkernel::SchemeKind::worstcase, 1};
  } else if (head == "worstcase_coop" || head == "coop") {
    if (arg.empty()) fail(context, "coop needs a set size, e.g. coop:3");
    s.scheme = {simkernel::SchemeKind::worstcase_coop,
                static_cast<int>(parse_long(arg, context))};
  } else {
    fail(context, "unknown scheme '" + std::string(v) +
                      "' (baseline, silence:n, worstcase, worstcase_coop:n)");
  }
}

void parse_fading(simkernel::Scenario& s, std::string_view v,
                  const std::string& context) {
  const auto colon = v.find(':');
  const std::string_view head = colon == std::string_view::npos ? v : v.substr(0, colon);
  if (head == "none") {
    s.fading = fading::FadingModel::none();
  } else if (head == "rayleigh") {
    s.fading = fading::FadingModel::rayleigh();
  } else if (head == "nakagami") {
    if (colon == std::string_view::npos)
      fail(context, "nakagami needs a shape, e.g. nakagami:2");
    s.fading = fading::FadingModel::nakagami(
        parse_double(v.substr(colon + 1), context));
  } else {
    fail(context, "unknown fading model '" + std::string(v) +
                      "' (none, rayleigh, nakagami:m)");
  }
}

void parse_deployment(simkernel::Scenario& s, std::string_view v,
                      const std::string& context) {
  if (v == "ppp") {
    s.deployment.kind = simkernel::DeploymentKind::ppp;
  } else if (v == "hip") {
    s.deployment.kind = simkernel::DeploymentKind::hip;
  } else if (v == "square" || v == "square_lattice") {
    s.deployment.kind = simkernel::DeploymentKind::square_lattice;
  } else if (v == "triangular" || v == "triangular_lattice") {
    s.deployment.kind = simkernel::DeploymentKind::triangular_lattice;
  } else {
    fail(context, "unknown deployment '" + std::string(v) +
                      "' (ppp, hip, square, triangular)");
  }
}

void parse_tiers(simkernel::Scenario& s, std::string_view v,
                 const std::string& context) {
  s.deployment.tiers.clear();
  std::string_view rest = v;
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    std::string_view item = trim(rest.substr(0, comma));
    rest = comma == std::string_view::npos ? std::string_view{}
                                           : rest.substr(comma + 1);
    if (item.empty()) continue;
    const auto colon = item.find(':');
    if (colon == std::string_view::npos)
      fail(context, "tier entries are intensity:power pairs, e.g. 0.9:1");
    pointfields::TierSpec t{};
    t.intensity = parse_double(trim(item.substr(0, colon)), context);
    t.power = parse_double(trim(item.substr(colon + 1)), context);
    s.deployment.tiers.push_back(t);
  }
  if (s.deployment.tiers.empty())
    fail(context, "tiers needs at least one intensity:power pair");
}

}  // namespace

void set_scenario_field(simkernel::Scenario& s, std::string_view key,
                        std::string_view value, const std::string& context) {
  if (key == "deployment") {
    parse_deployment(s, value, context);
  } else if (key == "intensity") {
    s.deployment.intensity = parse_double(value, context);
  } else if (key == "tiers") {
    parse_tiers(s, value, context);
  } else if (key == "alpha") {
    s.alpha = parse_double(value, context);
  } else if (key == "scheme") {
    parse_scheme(s, value, context);
  } else if (key == "fading") {
    parse_fading(s, value, context);
  } else if (key == "window_points") {
    s.window_points = parse_long(value, context);
  } else if (key == "realizations") {
    s.realizations = parse_long(value, context);
  } else if (key == "seed") {
    s.master_seed = parse_u64(value, context);
  } else if (key == "interferer_fading") {
    s.interferer_fading = parse_bool(value, context);
  } else {
    fail(context, "unknown key '" + std::string(key) + "'");
  }
}

ConfigFile parse_config_text(std::string_view text, std::string_view name) {
  ConfigFile cfg;
  simkernel::Scenario* current = nullptr;
  std::string section;
  std::vector<std::string> seen_keys;
  int lineno = 0;

  std::string_view rest = text;
  while (!rest.empty() || lineno == 0) {
    const auto nl = rest.find('\n');
    std::string_view line = rest.substr(0, nl);
    rest = nl == std::string_view::npos ? std::string_view{} : rest.substr(nl + 1);
    ++lineno;
    line = trim(line);
    if (line.empty() || line.front() == '#') {
      if (rest.empty()) break;
      continue;
    }
    const std::string context =
        std::string(name) + ":" + std::to_string(lineno);
    if (line.front() == '[') {
      if (line.back() != ']') fail(context, "unterminated section header");
      const std::string_view sec = trim(line.substr(1, line.size() - 2));
      if (sec == "scenario") {
        current = &cfg.scenario;
      } else if (sec == "reference") {
        cfg.reference.emplace();
        current = &*cfg.reference;
      } else {
        fail(context, "unknown section [" + std::string(sec) +
                          "] (expected [scenario] or [reference])");
      }
      section = std::string(sec);
      seen_keys.clear();
    } else {
      const auto eq = line.find('=');
      if (eq == std::string_view::npos)
        fail(context, "expected key = value");
      const std::string key{trim(line.substr(0, eq))};
      const std::string_view value = trim(line.substr(eq + 1));
      if (!current)
        fail(context, "key outside a section; start with [scenario]");
      if (std::find(seen_keys.begin(), seen_keys.end(), key) != seen_keys.end())
        fail(context, "duplicate key '" + key + "' in [" + section + "]");
      seen_keys.push_back(key);
      set_scenario_field(*current, key, value, context);
    }
    if (rest.empty()) break;
  }

  auto check = [&](const simkernel::Scenario& s, const std::string& which) {
    if (s.deployment.kind != simkernel::DeploymentKind::hip &&
        !s.deployment.tiers.empty())
      throw config_error(std::string(name) + ": [" + which +
                         "] sets tiers but deployment is not hip");
    if (s.deployment.kind == simkernel::DeploymentKind::hip &&
        s.deployment.tiers.empty())
      throw config_error(std::string(name) + ": [" + which +
                         "] deployment hip needs a tiers key");
  };
  check(cfg.scenario, "scenario");
  if (cfg.reference) check(*cfg.reference, "reference");
  return cfg;
}

ConfigFile load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error(path + ": cannot open config file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str(), path);
}

void write_ccdf_csv(const distribution::EmpiricalCcdf& ccdf, std::ostream& os) {
  os << "# n_samples=" << ccdf.n_samples << "\n";
  os << "theta_db,theta_linear,ccdf,stderr\n";
  for (std::size_t i = 0; i < ccdf.theta_db.size(); ++i) {
    os << format_sig9(ccdf.theta_db[i]) << ',' << format_sig9(ccdf.theta_lin[i])
       << ',' << format_sig9(ccdf.probs[i]) << ','
       << format_sig9(ccdf.stderr_at(i)) << "\n";
  }
}

std::string ccdf_csv_string(const distribution::EmpiricalCcdf& ccdf) {
  std::ostringstream ss;
  write_ccdf_csv(ccdf, ss);
  return ss.str();
}

distribution::EmpiricalCcdf read_ccdf_csv(std::istream& is) {
  distribution::EmpiricalCcdf out;
  std::string line;
  long n_samples = -1;
  bool header_seen = false;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    std::string_view v = trim(line);
    if (v.empty()) continue;
    if (v.front() == '#') {
      const auto pos = v.find("n_samples=");
      if (pos != std::string_view::npos)
        n_samples = parse_long(trim(v.substr(pos + 10)), "csv:" + std::to_string(lineno));
      continue;
    }
    if (!header_seen) {
      if (v != "theta_db,theta_linear,ccdf,stderr")
        throw config_error("csv:" + std::to_string(lineno) +
                           ": unexpected header '" + std::string(v) + "'");
      header_seen = true;
      continue;
    }
    const std::string context = "csv:" + std::to_string(lineno);
    std::array<std::string_view, 4> fields;
    std::size_t count = 0;
    std::string_view rest = v;
    while (count < 4) {
      const auto comma = rest.find(',');
      fields[count++] = trim(rest.substr(0, comma));
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
    }
    if (count != 4) fail(context, "expected 4 comma-separated fields");
    const double db = parse_double(fields[0], context);
    const double prob = parse_double(fields[2], context);
    out.theta_db.push_back(db);
    out.theta_lin.push_back(std::pow(10.0, db / 10.0));
    out.probs.push_back(prob);
  }
  if (!header_seen) throw config_error("csv: missing header row");
  if (n_samples < 0) throw config_error("csv: missing '# n_samples=' line");
  out.n_samples = n_samples;
  if (n_samples > 0) {
    out.exceed.reserve(out.probs.size());
    for (double& p : out.probs) {
      const long k = std::lround(p * static_cast<double>(n_samples));
      out.exceed.push_back(k);
      p = static_cast<double>(k) / static_cast<double>(n_samples);
    }
  }
  return out;
}

distribution::EmpiricalCcdf load_ccdf_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error(path + ": cannot open csv file");
  return read_ccdf_csv(in);
}

std::string misr_estimate_json(const simkernel::Scenario& s,
                               const simkernel::MisrEstimate& e, double m) {
  nlohmann::ordered_json j;
  j["scenario"] = s.canonical();
  j["fingerprint"] = s.fingerprint();
  j["moment"] = round_sig9(m);
  j["mean"] = round_sig9(e.mean);
  j["stderr"] = round_sig9(e.stderr_);
  j["n"] = e.n;
  j["tail_share"] = round_sig9(e.tail_share);
  j["heavy_tail"] = e.heavy_tail();
  return j.dump(2) + "\n";
}

}  // namespace misr::io
