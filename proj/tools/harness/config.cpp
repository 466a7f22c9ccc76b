#include "harness/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "narses/error.hpp"

namespace narses::harness {

namespace {

[[noreturn]] void bad_line(std::size_t line, const std::string& what) {
  fail(Errc::ParseError, "config line " + std::to_string(line) + ": " + what);
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos)
    return {};
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::uint64_t parse_u64(const std::string& v, std::size_t line, const std::string& key) {
  try {
    std::size_t used = 0;
    if (!v.empty() && v[0] == '-')
      bad_line(line, key + " must be non-negative, got '" + v + "'");
    std::uint64_t out = std::stoull(v, &used);
    if (used != v.size())
      bad_line(line, key + " is not an integer: '" + v + "'");
    return out;
  } catch (const Error&) {
    throw;
  } catch (const std::exception&) {
    bad_line(line, key + " is not an integer: '" + v + "'");
  }
}

double parse_double(const std::string& v, std::size_t line, const std::string& key) {
  try {
    std::size_t used = 0;
    double out = std::stod(v, &used);
    if (used != v.size() || !std::isfinite(out))
      bad_line(line, key + " is not a finite number: '" + v + "'");
    return out;
  } catch (const Error&) {
    throw;
  } catch (const std::exception&) {
    bad_line(line, key + " is not a finite number: '" + v + "'");
  }
}

std::vector<double> parse_size_list(const std::string& v, std::size_t line) {
  std::vector<double> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty())
      bad_line(line, "empty entry in flow_size list");
    out.push_back(parse_double(item, line, "flow_size"));
  }
  if (out.empty())
    bad_line(line, "flow_size needs at least one value");
  return out;
}

} // namespace

void ScenarioConfig::validate() const {
  if (flow_sizes.empty())
    fail(Errc::InvalidParams, "config: flow_size is required");
  for (double s : flow_sizes)
    if (!(s > 0.0) || !std::isfinite(s))
      fail(Errc::InvalidParams, "config: flow sizes must be positive");
  if (arrival == ArrivalKind::AllAtOnce) {
    if (flow_count < 1)
      fail(Errc::InvalidParams, "config: flow_count must be at least 1");
  } else {
    if (!(poisson_rate_per_s > 0.0))
      fail(Errc::InvalidParams, "config: poisson_rate must be positive");
    if (!(poisson_horizon_s > 0.0))
      fail(Errc::InvalidParams, "config: poisson_horizon must be positive");
  }
  if (!(setup_delay_s >= 0.0) || !std::isfinite(setup_delay_s))
    fail(Errc::InvalidParams, "config: setup_delay must be finite and non-negative");
  if (!topology_file.empty() && topo_params_set)
    fail(Errc::InvalidParams, "config: topology_file and topo_* keys are mutually exclusive");
  if (topology_file.empty())
    topo_params.validate();
}

ScenarioConfig parse_config_text(const std::string& text) {
  ScenarioConfig cfg;
  std::istringstream in(text);
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (auto hash = raw.find('#'); hash != std::string::npos)
      raw.erase(hash);
    std::string s = trim(raw);
    if (s.empty())
      continue;
    auto eq = s.find('=');
    if (eq == std::string::npos)
      bad_line(line, "expected 'key = value'");
    std::string key = trim(s.substr(0, eq));
    std::string val = trim(s.substr(eq + 1));
    if (key.empty())
      bad_line(line, "missing key before '='");
    if (val.empty())
      bad_line(line, "missing value for '" + key + "'");

    if (key == "model") {
      if (val == "naive")
        cfg.model = flow::ModelKind::Naive;
      else if (val == "bandwidth-share")
        cfg.model = flow::ModelKind::BandwidthShare;
      else
        bad_line(line, "model must be 'naive' or 'bandwidth-share', got '" + val + "'");
    } else if (key == "seed") {
      cfg.seed = parse_u64(val, line, key);
    } else if (key == "flow_count") {
      cfg.flow_count = static_cast<std::size_t>(parse_u64(val, line, key));
    } else if (key == "flow_size") {
      cfg.flow_sizes = parse_size_list(val, line);
    } else if (key == "arrival") {
      if (val == "all-at-once")
        cfg.arrival = ArrivalKind::AllAtOnce;
      else if (val == "poisson")
        cfg.arrival = ArrivalKind::Poisson;
      else
        bad_line(line, "arrival must be 'all-at-once' or 'poisson', got '" + val + "'");
    } else if (key == "poisson_rate") {
      cfg.poisson_rate_per_s = parse_double(val, line, key);
    } else if (key == "poisson_horizon") {
      cfg.poisson_horizon_s = parse_double(val, line, key);
    } else if (key == "setup_delay") {
      cfg.setup_delay_s = parse_double(val, line, key);
    } else if (key == "topology_file") {
      cfg.topology_file = val;
    } else if (key == "topo_transit") {
      cfg.topo_params.transit_domains = static_cast<int>(parse_u64(val, line, key));
      cfg.topo_params_set = true;
    } else if (key == "topo_transit_nodes") {
      cfg.topo_params.transit_nodes_per_domain = static_cast<int>(parse_u64(val, line, key));
      cfg.topo_params_set = true;
    } else if (key == "topo_stubs") {
      cfg.topo_params.stub_domains_per_transit_node = static_cast<int>(parse_u64(val, line, key));
      cfg.topo_params_set = true;
    } else if (key == "topo_stub_routers") {
      cfg.topo_params.stub_routers_per_stub = static_cast<int>(parse_u64(val, line, key));
      cfg.topo_params_set = true;
    } else if (key == "topo_hosts") {
      cfg.topo_params.hosts_per_stub_router = static_cast<int>(parse_u64(val, line, key));
      cfg.topo_params_set = true;
    } else if (key == "topo_seed") {
      cfg.topo_seed = parse_u64(val, line, key);
      cfg.topo_seed_set = true;
    } else if (key == "output_dir") {
      cfg.output_dir = val;
    } else {
      bad_line(line, "unknown key '" + key + "'");
    }
  }
  return cfg;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    fail(Errc::IoError, "cannot open config file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

} // namespace narses::harness
