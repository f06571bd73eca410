#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <string>

#include "circdfm/config.hpp"
#include "circdfm/votes_io.hpp"

using namespace circdfm;
namespace fs = std::filesystem;

namespace {

fs::path write_temp(const std::string& name, const std::string& content) {
  const fs::path p = fs::temp_directory_path() / name;
  std::ofstream out(p);
  out << content;
  return p;
}

}  // namespace

TEST_CASE("empty hyperprior block fills the default constants") {
  const auto p = write_temp("cfg_defaults.ini",
                            "[seed]\nvalue = 7\n[sampler]\niterations = 100\n"
                            "burnin = 10\n");
  const RunConfig cfg = load_config(p);
  CHECK(cfg.seed == 7);
  CHECK(cfg.hyper.mu_mean == doctest::Approx(3.073));
  CHECK(cfg.hyper.mu_sd == doctest::Approx(1.588));
  CHECK(cfg.hyper.tau2_mean == doctest::Approx(2.473));
  CHECK(cfg.hyper.rho_mean == doctest::Approx(0.9));
  CHECK(cfg.hyper.rho_sd == doctest::Approx(0.03));
  CHECK(cfg.hyper.varsigma_mean == doctest::Approx(1.0));
  CHECK(cfg.hyper.varsigma_var == doctest::Approx(0.299));
  CHECK(cfg.hyper.lambda_inv_mean == doctest::Approx(25.0));
  CHECK(cfg.warnings.empty());
}

TEST_CASE("alternative preset applies the sensitivity priors") {
  const auto p = write_temp("cfg_alt.ini",
                            "[hyperprior]\npreset = alternative\n");
  const RunConfig cfg = load_config(p);
  CHECK(cfg.hyper.rho_sd == doctest::Approx(0.04));
  CHECK(cfg.hyper.mu_mean == doctest::Approx(0.0));
  CHECK(cfg.hyper.mu_sd == doctest::Approx(1.4));
  CHECK(cfg.hyper.tau2_mean == doctest::Approx(0.1));
  CHECK(cfg.hyper.varsigma_var == doctest::Approx(0.5));
  // unchanged pieces
  CHECK(cfg.hyper.rho_mean == doctest::Approx(0.9));
  CHECK(cfg.hyper.varsigma_mean == doctest::Approx(1.0));
  CHECK(cfg.hyper.lambda_inv_mean == doctest::Approx(25.0));
}

TEST_CASE("explicit keys override the preset regardless of order") {
  const auto p = write_temp("cfg_alt2.ini",
                            "[hyperprior]\ntau2_mean = 9.9\npreset = alternative\n");
  const RunConfig cfg = load_config(p);
  CHECK(cfg.hyper.tau2_mean == doctest::Approx(9.9));
  CHECK(cfg.hyper.mu_sd == doctest::Approx(1.4));  // from preset
}

TEST_CASE("burnin >= iterations is rejected") {
  const auto p = write_temp("cfg_bad.ini",
                            "[sampler]\niterations = 100\nburnin = 200\n");
  CHECK_THROWS_AS(load_config(p), ValidationError);
}

TEST_CASE("non-positive scale is rejected; unknown key warns") {
  const auto bad = write_temp("cfg_scale.ini", "[hyperprior]\nmu_sd = 0\n");
  CHECK_THROWS_AS(load_config(bad), ValidationError);
  const auto warn = write_temp("cfg_warn.ini", "[sampler]\nbogus_key = 3\n");
  const RunConfig cfg = load_config(warn);
  REQUIRE(cfg.warnings.size() == 1);
  CHECK(cfg.warnings[0].find("bogus_key") != std::string::npos);
}

TEST_CASE("anchors parse and resolve against a dataset") {
  const auto p = write_temp("cfg_anchor.ini",
                            "[anchors]\n"
                            "anchor = a, 1, 2, negative\n"
                            "anchor = b, 3, 3, positive\n");
  const RunConfig cfg = load_config(p);
  REQUIRE(cfg.anchors.size() == 2);
  CHECK(cfg.anchors[0].unit == "a");
  CHECK_FALSE(cfg.anchors[0].positive);
  CHECK(cfg.anchors[1].positive);

  const auto votes = write_temp("cfg_anchor_votes.csv",
                                "unit_id,period,item_id,vote\n"
                                "a,1,c,1\nb,1,c,0\n"
                                "a,2,c,1\nb,2,c,0\n"
                                "a,3,c,1\nb,3,c,0\n");
  const VoteDataset ds = parse_votes(votes);
  const auto resolved = resolve_anchors(cfg.anchors, ds);
  REQUIRE(resolved.size() == 2);
  CHECK(resolved[0].period_lo == 0);
  CHECK(resolved[0].period_hi == 1);
  CHECK(resolved[1].period_lo == 2);

  // overlapping anchors on one period
  const auto bad = write_temp("cfg_anchor_bad.ini",
                              "[anchors]\n"
                              "anchor = a, 1, 2, negative\n"
                              "anchor = b, 2, 3, positive\n");
  const RunConfig cfg_bad = load_config(bad);
  CHECK_THROWS_AS(resolve_anchors(cfg_bad.anchors, ds), ValidationError);

  // period outside the dataset
  const auto out = write_temp("cfg_anchor_out.ini",
                              "[anchors]\nanchor = a, 1, 9, negative\n");
  CHECK_THROWS_AS(resolve_anchors(load_config(out).anchors, ds),
                  ValidationError);
}

TEST_CASE("prior_sim and synth sections") {
  const auto p = write_temp("cfg_ps.ini",
                            "[prior_sim]\nmu = 10\nrho = 0.95\n"
                            "tau_v = 8\ntau_w = 0.5\n"
                            "[synth]\nunits = 4\nperiods = 3\n"
                            "items_per_period = 5\nkappa_mean = 12\n");
  const RunConfig cfg = load_config(p);
  CHECK(cfg.prior_sim.mu == doctest::Approx(10.0));
  CHECK(cfg.prior_sim.tau_w == doctest::Approx(0.5));
  CHECK(cfg.synth.units == 4);
  CHECK(cfg.synth.kappa_mean == doctest::Approx(12.0));
  CHECK_FALSE(cfg.config_hash.empty());
}
