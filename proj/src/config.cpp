#include "circdfm/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

namespace circdfm {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

struct ConfigEntry {
  std::string section;
  std::string key;
  std::string value;
  std::size_t line = 0;
};

std::vector<ConfigEntry> read_entries(const std::filesystem::path& path,
                                      std::string& raw_text) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open config file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  raw_text = buf.str();

  std::vector<ConfigEntry> entries;
  std::istringstream ss(raw_text);
  std::string line;
  std::string section;
  std::size_t line_no = 0;
  while (std::getline(ss, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw ValidationError("config line " + std::to_string(line_no) +
                              ": unterminated section header");
      }
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ValidationError("config line " + std::to_string(line_no) +
                            ": expected key = value");
    }
    entries.push_back(ConfigEntry{section, trim(line.substr(0, eq)),
                                  trim(line.substr(eq + 1)), line_no});
  }
  return entries;
}

double to_double(const ConfigEntry& e) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(e.value, &pos);
    if (pos != e.value.size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    throw ValidationError("config line " + std::to_string(e.line) + ": '" +
                          e.value + "' is not a number");
  }
}

long long to_int(const ConfigEntry& e) {
  long long v = 0;
  const char* b = e.value.data();
  auto res = std::from_chars(b, b + e.value.size(), v);
  if (res.ec != std::errc{} || res.ptr != b + e.value.size()) {
    throw ValidationError("config line " + std::to_string(e.line) + ": '" +
                          e.value + "' is not an integer");
  }
  return v;
}

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

void require_positive(double v, const std::string& name) {
  if (!(v > 0.0)) {
    throw ValidationError("config: " + name + " must be strictly positive");
  }
}

AnchorConstraint parse_anchor(const ConfigEntry& e) {
  std::vector<std::string> parts;
  std::string field;
  std::istringstream ss(e.value);
  while (std::getline(ss, field, ',')) parts.push_back(trim(field));
  if (parts.size() != 4) {
    throw ValidationError("config line " + std::to_string(e.line) +
                          ": anchor needs unit,from,to,sign");
  }
  AnchorConstraint a;
  a.unit = parts[0];
  a.period_lo = parts[1];
  a.period_hi = parts[2];
  if (parts[3] == "positive") {
    a.positive = true;
  } else if (parts[3] == "negative") {
    a.positive = false;
  } else {
    throw ValidationError("config line " + std::to_string(e.line) +
                          ": anchor sign must be positive or negative");
  }
  return a;
}

void apply_alternative_preset(HyperPriorConfig& h) {
  h.mu_mean = 0.0;
  h.mu_sd = 1.4;
  h.rho_sd = 0.04;
  h.tau2_mean = 0.1;
  h.varsigma_var = 0.5;
}

}  // namespace

RunConfig load_config(const std::filesystem::path& path) {
  RunConfig cfg;
  std::string raw;
  const auto entries = read_entries(path, raw);
  {
    std::ostringstream h;
    h << std::hex << fnv1a(raw);
    cfg.config_hash = h.str();
  }

  // preset first so explicit keys override it regardless of file order
  for (const auto& e : entries) {
    if (e.section == "hyperprior" && e.key == "preset") {
      if (e.value == "alternative") {
        apply_alternative_preset(cfg.hyper);
      } else if (e.value != "default") {
        throw ValidationError("config line " + std::to_string(e.line) +
                              ": unknown preset '" + e.value + "'");
      }
    }
  }

  for (const auto& e : entries) {
    if (e.section.empty() || e.section == "seed") {
      if (e.key == "seed" || e.key == "value") {
        cfg.seed = static_cast<std::uint64_t>(to_int(e));
      } else {
        cfg.warnings.push_back("unknown config key '" + e.key + "'");
      }
    } else if (e.section == "hyperprior") {
      if (e.key == "preset") continue;
      if (e.key == "mu_mean") cfg.hyper.mu_mean = to_double(e);
      else if (e.key == "mu_sd") cfg.hyper.mu_sd = to_double(e);
      else if (e.key == "rho_mean") cfg.hyper.rho_mean = to_double(e);
      else if (e.key == "rho_sd") cfg.hyper.rho_sd = to_double(e);
      else if (e.key == "tau2_mean") cfg.hyper.tau2_mean = to_double(e);
      else if (e.key == "varsigma_mean") cfg.hyper.varsigma_mean = to_double(e);
      else if (e.key == "varsigma_var") cfg.hyper.varsigma_var = to_double(e);
      else if (e.key == "lambda_inv_mean") cfg.hyper.lambda_inv_mean = to_double(e);
      else cfg.warnings.push_back("unknown config key 'hyperprior." + e.key + "'");
    } else if (e.section == "sampler") {
      if (e.key == "iterations") cfg.sampler.iterations = static_cast<int>(to_int(e));
      else if (e.key == "burnin") cfg.sampler.burnin = static_cast<int>(to_int(e));
      else if (e.key == "thin") cfg.sampler.thin = static_cast<int>(to_int(e));
      else if (e.key == "hmc_step") cfg.sampler.hmc_step = to_double(e);
      else if (e.key == "hmc_leapfrog") cfg.sampler.hmc_leapfrog = static_cast<int>(to_int(e));
      else if (e.key == "hmc_c1") cfg.sampler.hmc_c1 = to_double(e);
      else if (e.key == "hmc_c2") cfg.sampler.hmc_c2 = to_double(e);
      else if (e.key == "kappa_step") cfg.sampler.kappa_step = to_double(e);
      else if (e.key == "hyper_step") cfg.sampler.hyper_step = to_double(e);
      else if (e.key == "target_kappa_accept") cfg.sampler.target_kappa_accept = to_double(e);
      else if (e.key == "target_hyper_accept") cfg.sampler.target_hyper_accept = to_double(e);
      else if (e.key == "target_hmc_accept") cfg.sampler.target_hmc_accept = to_double(e);
      else if (e.key == "chains") cfg.sampler.chains = static_cast<int>(to_int(e));
      else cfg.warnings.push_back("unknown config key 'sampler." + e.key + "'");
    } else if (e.section == "anchors") {
      if (e.key == "anchor") cfg.anchors.push_back(parse_anchor(e));
      else cfg.warnings.push_back("unknown config key 'anchors." + e.key + "'");
    } else if (e.section == "prior_sim") {
      if (e.key == "mu") cfg.prior_sim.mu = to_double(e);
      else if (e.key == "rho") cfg.prior_sim.rho = to_double(e);
      else if (e.key == "tau_v") cfg.prior_sim.tau_v = to_double(e);
      else if (e.key == "tau_w") cfg.prior_sim.tau_w = to_double(e);
      else cfg.warnings.push_back("unknown config key 'prior_sim." + e.key + "'");
    } else if (e.section == "synth") {
      if (e.key == "units") cfg.synth.units = static_cast<int>(to_int(e));
      else if (e.key == "periods") cfg.synth.periods = static_cast<int>(to_int(e));
      else if (e.key == "items_per_period") cfg.synth.items_per_period = static_cast<int>(to_int(e));
      else if (e.key == "mu") cfg.synth.mu = to_double(e);
      else if (e.key == "rho") cfg.synth.rho = to_double(e);
      else if (e.key == "tau2") cfg.synth.tau2 = to_double(e);
      else if (e.key == "varsigma") cfg.synth.varsigma = to_double(e);
      else if (e.key == "kappa_mean") cfg.synth.kappa_mean = to_double(e);
      else if (e.key == "missing_rate") cfg.synth.missing_rate = to_double(e);
      else cfg.warnings.push_back("unknown config key 'synth." + e.key + "'");
    } else {
      cfg.warnings.push_back("unknown config section '" + e.section + "'");
    }
  }

  // invariants
  if (cfg.sampler.burnin >= cfg.sampler.iterations) {
    throw ValidationError("config: burnin must be smaller than iterations");
  }
  if (cfg.sampler.burnin < 0) throw ValidationError("config: burnin must be >= 0");
  if (cfg.sampler.thin < 1) throw ValidationError("config: thin must be >= 1");
  if (cfg.sampler.chains < 1) throw ValidationError("config: chains must be >= 1");
  if (cfg.sampler.hmc_leapfrog < 0) {
    throw ValidationError("config: hmc_leapfrog must be >= 0");
  }
  require_positive(cfg.hyper.mu_sd, "hyperprior.mu_sd");
  require_positive(cfg.hyper.rho_sd, "hyperprior.rho_sd");
  require_positive(cfg.hyper.tau2_mean, "hyperprior.tau2_mean");
  require_positive(cfg.hyper.varsigma_mean, "hyperprior.varsigma_mean");
  require_positive(cfg.hyper.varsigma_var, "hyperprior.varsigma_var");
  require_positive(cfg.hyper.lambda_inv_mean, "hyperprior.lambda_inv_mean");
  require_positive(cfg.sampler.hmc_step, "sampler.hmc_step");
  require_positive(cfg.sampler.hmc_c1, "sampler.hmc_c1");
  require_positive(cfg.sampler.hmc_c2, "sampler.hmc_c2");
  require_positive(cfg.sampler.kappa_step, "sampler.kappa_step");
  require_positive(cfg.sampler.hyper_step, "sampler.hyper_step");
  require_positive(cfg.prior_sim.tau_v, "prior_sim.tau_v");
  require_positive(cfg.prior_sim.tau_w, "prior_sim.tau_w");
  if (!(cfg.prior_sim.rho > -1.0 && cfg.prior_sim.rho < 1.0)) {
    throw ValidationError("config: prior_sim.rho must be in (-1, 1)");
  }
  require_positive(cfg.synth.tau2, "synth.tau2");
  require_positive(cfg.synth.varsigma, "synth.varsigma");
  require_positive(cfg.synth.kappa_mean, "synth.kappa_mean");
  if (!(cfg.synth.rho > 0.0 && cfg.synth.rho < 1.0)) {
    throw ValidationError("config: synth.rho must be in (0, 1)");
  }
  if (cfg.synth.units < 1 || cfg.synth.periods < 1 ||
      cfg.synth.items_per_period < 1) {
    throw ValidationError("config: synth dimensions must be positive");
  }
  if (cfg.synth.missing_rate < 0.0 || cfg.synth.missing_rate >= 1.0) {
    throw ValidationError("config: synth.missing_rate must be in [0, 1)");
  }
  return cfg;
}

std::vector<ResolvedAnchor> resolve_anchors(
    const std::vector<AnchorConstraint>& anchors, const VoteDataset& data) {
  std::vector<ResolvedAnchor> out;
  std::vector<int> owner(data.n_periods(), -1);
  for (std::size_t k = 0; k < anchors.size(); ++k) {
    const AnchorConstraint& a = anchors[k];
    const auto unit = data.unit_index(a.unit);
    if (!unit) throw ValidationError("anchor unit '" + a.unit + "' not in dataset");
    const auto lo = data.period_index(a.period_lo);
    const auto hi = data.period_index(a.period_hi);
    if (!lo || !hi) {
      throw ValidationError("anchor period range [" + a.period_lo + ", " +
                            a.period_hi + "] not in dataset");
    }
    if (*lo > *hi) {
      throw ValidationError("anchor period range [" + a.period_lo + ", " +
                            a.period_hi + "] is empty");
    }
    const ServiceRange sr = data.service(*unit);
    if (*lo < sr.lo || *hi > sr.hi) {
      throw ValidationError("anchor on '" + a.unit +
                            "' lies outside the unit's service range");
    }
    for (int t = *lo; t <= *hi; ++t) {
      if (owner[t] >= 0) {
        throw ValidationError("period " + data.periods()[t] +
                              " is covered by more than one anchor");
      }
      owner[t] = static_cast<int>(k);
    }
    out.push_back(ResolvedAnchor{*unit, *lo, *hi, a.positive});
  }
  return out;
}

}  // namespace circdfm
