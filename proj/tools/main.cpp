#include <CLI11.hpp>
#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>
#include <thread>

#include "circdfm/diagnostics.hpp"
#include "circdfm/draws_io.hpp"
#include "circdfm/identify.hpp"
#include "circdfm/mcmc.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace circdfm;

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void print_warnings(const std::vector<std::string>& warnings) {
  for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
}

int max_workers() {
  if (const char* env = std::getenv("CIRC_DFM_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc > 0 ? static_cast<int>(hc) : 1;
}

void run_fit(const std::string& votes_path, const std::string& config_path,
             const std::string& out_dir, int chains_override) {
  const RunConfig config = load_config(config_path);
  print_warnings(config.warnings);
  const VoteDataset data = parse_votes(votes_path);
  print_warnings(data.warnings());
  resolve_anchors(config.anchors, data);  // fail fast on bad anchors

  const int n_chains =
      chains_override > 0 ? chains_override : config.sampler.chains;
  if (n_chains == 1) {
    ChainOutput out = run_chain(data, config, 0);
    write_draws(out, out_dir);
    if (out.n_draws() == 0) {
      std::cerr << "warning: 0 retained draws (iterations == burnin?)\n";
    }
    return;
  }

  std::vector<ChainOutput> outputs(n_chains);
  std::vector<std::exception_ptr> errors(n_chains);
  const int workers = std::min(n_chains, max_workers());
  std::vector<std::thread> pool;
  std::atomic<int> next{0};
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&]() {
      for (;;) {
        const int k = next.fetch_add(1);
        if (k >= n_chains) return;
        try {
          outputs[k] = run_chain(data, config, k);
        } catch (...) {
          errors[k] = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  for (int k = 0; k < n_chains; ++k) {
    write_draws(outputs[k], fs::path(out_dir) / ("chain_" + std::to_string(k)));
  }
}

void run_prior_sim(const std::string& config_path, int n,
                   const std::string& out_path) {
  const RunConfig config = load_config(config_path);
  print_warnings(config.warnings);
  const PriorSimConfig& ps = config.prior_sim;
  ProcessHyper hyper;
  hyper.mu = ps.mu;
  hyper.rho = ps.rho;
  hyper.tau2 = ps.tau_v * ps.tau_v;
  hyper.varsigma = (ps.tau_w * ps.tau_w) / (ps.tau_v * ps.tau_v);
  RngStream rng(config.seed);
  const std::vector<double> betas = simulate_prior_betas(hyper, 1, n, rng);
  std::ofstream out(out_path);
  if (!out) throw std::runtime_error("cannot write " + out_path);
  out << "beta\n";
  for (double b : betas) out << fmt17(b) << "\n";
}

void run_waic(const std::string& draws_dir, const std::string& votes_path,
              const std::string& out_path) {
  const ChainOutput draws = read_draws(draws_dir);
  const VoteDataset data = parse_votes(votes_path);
  print_warnings(data.warnings());
  if (draws.units != data.units() || draws.periods != data.periods()) {
    throw ValidationError("draws and votes describe different datasets");
  }
  std::ofstream out(out_path);
  if (!out) throw std::runtime_error("cannot write " + out_path);
  out << "period,waic,lppd,penalty\n";
  for (int t = 0; t < data.n_periods(); ++t) {
    const WaicResult w = waic_period(draws, data, t);
    if (!w.has_votes) {
      std::cerr << "warning: period " << data.periods()[t]
                << " has no observed votes; WAIC set to 0\n";
    }
    out << data.periods()[t] << ',' << fmt17(w.waic) << ',' << fmt17(w.lppd)
        << ',' << fmt17(w.penalty) << "\n";
  }
}

void write_summaries(const ChainOutput& draws, std::ostream& out) {
  const std::vector<PathSummary> summaries = summarize_paths(draws);
  out << "unit,period,mean,lo95,hi95,defined\n";
  for (const PathSummary& s : summaries) {
    out << draws.units[s.unit] << ',' << draws.periods[s.period] << ','
        << fmt17(s.mean) << ',' << fmt17(s.lo) << ',' << fmt17(s.hi) << ','
        << (s.defined ? 1 : 0) << "\n";
  }
}

void run_postprocess(const std::string& draws_dir,
                     const std::string& config_path,
                     const std::string& out_dir) {
  const RunConfig config = load_config(config_path);
  print_warnings(config.warnings);
  ChainOutput draws = read_draws(draws_dir);

  // anchors are declared on labels; resolve them against the draw metadata
  std::vector<ResolvedAnchor> anchors;
  std::vector<int> owner(draws.periods.size(), -1);
  for (std::size_t k = 0; k < config.anchors.size(); ++k) {
    const AnchorConstraint& a = config.anchors[k];
    const auto u = std::find(draws.units.begin(), draws.units.end(), a.unit);
    if (u == draws.units.end()) {
      throw ValidationError("anchor unit '" + a.unit + "' not in draws");
    }
    const auto lo =
        std::find(draws.periods.begin(), draws.periods.end(), a.period_lo);
    const auto hi =
        std::find(draws.periods.begin(), draws.periods.end(), a.period_hi);
    if (lo == draws.periods.end() || hi == draws.periods.end() || lo > hi) {
      throw ValidationError("anchor period range [" + a.period_lo + ", " +
                            a.period_hi + "] not valid for these draws");
    }
    ResolvedAnchor r;
    r.unit = static_cast<int>(u - draws.units.begin());
    r.period_lo = static_cast<int>(lo - draws.periods.begin());
    r.period_hi = static_cast<int>(hi - draws.periods.begin());
    r.positive = a.positive;
    for (int t = r.period_lo; t <= r.period_hi; ++t) {
      if (draws.beta_col(r.unit, t) < 0) {
        throw ValidationError("anchor on '" + a.unit +
                              "' lies outside the unit's served periods");
      }
      if (owner[t] >= 0) {
        throw ValidationError("period " + draws.periods[t] +
                              " is covered by more than one anchor");
      }
      owner[t] = static_cast<int>(k);
    }
    anchors.push_back(r);
  }

  apply_identification(draws, anchors);
  write_draws(draws, out_dir);
  std::ofstream sf(fs::path(out_dir) / "summaries.csv");
  if (!sf) throw std::runtime_error("cannot write summaries.csv");
  write_summaries(draws, sf);
}

void run_cluster(const std::string& summaries_path, const std::string& period,
                 std::uint64_t seed) {
  std::ifstream in(summaries_path);
  if (!in) throw ValidationError("cannot open " + summaries_path);
  std::string line;
  if (!std::getline(in, line) ||
      line.rfind("unit,period,mean", 0) != 0) {
    throw ValidationError("summaries file must start with unit,period,mean,...");
  }
  std::vector<double> angles;
  std::vector<std::string> units;
  bool period_seen = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string unit, per, mean, lo, hi, defined;
    std::getline(ss, unit, ',');
    std::getline(ss, per, ',');
    std::getline(ss, mean, ',');
    std::getline(ss, lo, ',');
    std::getline(ss, hi, ',');
    std::getline(ss, defined, ',');
    if (per != period) continue;
    period_seen = true;
    if (defined == "0") continue;  // undefined means cannot be clustered
    units.push_back(unit);
    angles.push_back(std::strtod(mean.c_str(), nullptr));
  }
  if (!period_seen) {
    throw ValidationError("period '" + period + "' not present in summaries");
  }
  if (angles.size() < 2) {
    throw ValidationError("period '" + period +
                          "' has fewer than 2 defined circular means");
  }
  RngStream rng(seed);
  const ClusterResult res = bic_select(angles, 2, 5, rng);
  for (const auto& w : res.warnings) std::cerr << "warning: " << w << "\n";

  json out;
  out["period"] = period;
  out["n"] = angles.size();
  out["chosen_k"] = res.k;
  json bics = json::object();
  for (std::size_t i = 0; i < res.bic.size(); ++i) {
    bics[std::to_string(res.k_min + static_cast<int>(i))] = res.bic[i];
  }
  out["bic"] = bics;
  json comps = json::array();
  for (int c = 0; c < res.k; ++c) {
    comps.push_back({{"mean", res.fit.means[c]},
                     {"concentration", res.fit.concentrations[c]},
                     {"weight", res.fit.weights[c]}});
  }
  out["components"] = comps;
  json assign = json::array();
  for (std::size_t i = 0; i < units.size(); ++i) {
    json probs = json::array();
    for (int c = 0; c < res.k; ++c) {
      probs.push_back(res.responsibilities(static_cast<Eigen::Index>(i), c));
    }
    assign.push_back({{"unit", units[i]}, {"probs", probs}});
  }
  out["assignments"] = assign;
  std::cout << out.dump(2) << "\n";
}

void run_summarize(const std::string& draws_dir, const std::string& out_path) {
  const ChainOutput draws = read_draws(draws_dir);
  if (!draws.identified) {
    std::cerr << "warning: draws are not identified; summaries may mix "
                 "reflections\n";
  }
  if (out_path.empty()) {
    write_summaries(draws, std::cout);
  } else {
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write " + out_path);
    write_summaries(draws, out);
  }
}

void run_synth(const std::string& spec_path, const std::string& out_path,
               std::uint64_t seed) {
  const RunConfig config = load_config(spec_path);
  print_warnings(config.warnings);
  RngStream rng(seed);
  auto [data, truth] = generate_synthetic(config.synth, rng);
  write_votes(data, out_path);

  json t;
  t["units"] = truth.units;
  t["periods"] = truth.periods;
  t["items"] = truth.item_labels;
  t["beta"] = truth.beta;
  t["psi"] = truth.psi;
  t["zeta"] = truth.zeta;
  t["kappa"] = truth.kappa;
  t["hyper"] = {{"mu", truth.hyper.mu},
                {"rho", truth.hyper.rho},
                {"tau2", truth.hyper.tau2},
                {"varsigma", truth.hyper.varsigma}};
  t["lambda"] = truth.lambda;
  const std::string truth_path = out_path + ".truth.json";
  std::ofstream tf(truth_path);
  if (!tf) throw std::runtime_error("cannot write " + truth_path);
  tf << t.dump(2) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"circdfm: dynamic factor models for binary votes on the circle"};
  app.require_subcommand(1);

  std::string votes_path, config_path, out_path, draws_dir, summaries_path,
      period;
  int chains = 0;
  int n_sim = 10000;
  std::uint64_t seed = 0;

  auto* fit = app.add_subcommand("fit", "run the MCMC sampler");
  fit->add_option("--votes", votes_path, "votes CSV")->required();
  fit->add_option("--config", config_path, "config file")->required();
  fit->add_option("--out", out_path, "output directory")->required();
  fit->add_option("--chains", chains, "number of parallel chains");

  auto* prior_sim = app.add_subcommand("prior-sim",
                                       "sample the prior ideal-point marginal");
  prior_sim->add_option("--config", config_path, "config file")->required();
  prior_sim->add_option("--n", n_sim, "number of draws");
  prior_sim->add_option("--out", out_path, "output file")->required();

  auto* waic = app.add_subcommand("waic", "per-period WAIC table");
  waic->add_option("--draws", draws_dir, "draws directory")->required();
  waic->add_option("--votes", votes_path, "votes CSV")->required();
  waic->add_option("--out", out_path, "output CSV")->required();

  auto* post = app.add_subcommand("postprocess",
                                  "wrap, reflect and summarize draws");
  post->add_option("--draws", draws_dir, "draws directory")->required();
  post->add_option("--config", config_path, "config file with anchors")
      ->required();
  post->add_option("--out", out_path, "output directory")->required();

  auto* cluster = app.add_subcommand("cluster",
                                     "von Mises mixture clustering of means");
  cluster->add_option("--summaries", summaries_path, "summaries CSV")
      ->required();
  cluster->add_option("--period", period, "period label")->required();
  cluster->add_option("--seed", seed, "EM restart seed");

  auto* summarize = app.add_subcommand("summarize", "per-unit path summaries");
  summarize->add_option("--draws", draws_dir, "draws directory")->required();
  summarize->add_option("--out", out_path, "output CSV (default stdout)");

  auto* synth = app.add_subcommand("synth", "generate synthetic votes");
  synth->add_option("--spec", config_path, "spec config file")->required();
  synth->add_option("--out", out_path, "output votes CSV")->required();
  synth->add_option("--seed", seed, "generator seed")->required();

  if (argc <= 1) {
    std::cerr << app.help() << "\n";
    return 1;
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    std::cout << app.help() << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n" << app.help() << "\n";
    return 1;
  }

  try {
    if (*fit) {
      run_fit(votes_path, config_path, out_path, chains);
    } else if (*prior_sim) {
      run_prior_sim(config_path, n_sim, out_path);
    } else if (*waic) {
      run_waic(draws_dir, votes_path, out_path);
    } else if (*post) {
      run_postprocess(draws_dir, config_path, out_path);
    } else if (*cluster) {
      run_cluster(summaries_path, period, seed);
    } else if (*summarize) {
      run_summarize(draws_dir, out_path);
    } else if (*synth) {
      run_synth(config_path, out_path, seed);
    }
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
