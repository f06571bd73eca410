#include "circdfm/draws_io.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "circdfm/errors.hpp"

namespace circdfm {

namespace {

using nlohmann::json;

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_matrix(const Eigen::MatrixXd& m,
                  const std::vector<std::string>& headers,
                  const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  for (std::size_t c = 0; c < headers.size(); ++c) {
    out << (c ? "," : "") << headers[c];
  }
  out << '\n';
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      out << (c ? "," : "") << fmt17(m(r, c));
    }
    out << '\n';
  }
  if (!out) throw std::runtime_error("failed while writing " + path.string());
}

Eigen::MatrixXd read_matrix(const std::filesystem::path& path,
                            Eigen::Index expected_cols) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line)) {
    throw ValidationError(path.string() + ": missing header");
  }
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::istringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) {
      row.push_back(std::strtod(field.c_str(), nullptr));
    }
    if (static_cast<Eigen::Index>(row.size()) != expected_cols) {
      throw ValidationError(path.string() + ": row with " +
                            std::to_string(row.size()) + " fields, expected " +
                            std::to_string(expected_cols));
    }
    rows.push_back(std::move(row));
  }
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()), expected_cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (Eigen::Index c = 0; c < expected_cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

std::string sanitize(const std::string& s) {
  std::string out = s;
  for (char& c : out) {
    if (c == ',' || c == '\n' || c == '\r') c = '_';
  }
  return out;
}

}  // namespace

void write_draws(const ChainOutput& output, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) {
    throw std::runtime_error("cannot create output directory " + dir.string());
  }

  std::vector<std::string> beta_headers;
  for (const auto& [unit, period] : output.beta_cols) {
    beta_headers.push_back("beta_" + sanitize(output.units[unit]) + "_" +
                           sanitize(output.periods[period]));
  }
  std::vector<std::string> psi_headers, zeta_headers, kappa_headers;
  for (const auto& [t, j] : output.case_cols) {
    const std::string tag =
        sanitize(output.periods[t]) + "_" + sanitize(output.item_labels[t][j]);
    psi_headers.push_back("psi_" + tag);
    zeta_headers.push_back("zeta_" + tag);
    kappa_headers.push_back("kappa_" + tag);
  }
  write_matrix(output.beta, beta_headers, dir / "beta.csv");
  write_matrix(output.psi, psi_headers, dir / "psi.csv");
  write_matrix(output.zeta, zeta_headers, dir / "zeta.csv");
  write_matrix(output.kappa, kappa_headers, dir / "kappa.csv");
  const char* hyper_names[5] = {"mu", "rho", "tau2", "varsigma", "lambda"};
  for (int c = 0; c < 5; ++c) {
    write_matrix(output.hyper.col(c), {hyper_names[c]},
                 dir / (std::string(hyper_names[c]) + ".csv"));
  }

  json manifest;
  manifest["seed"] = output.seed;
  manifest["chain"] = output.chain;
  manifest["iterations"] = output.iterations;
  manifest["burnin"] = output.burnin;
  manifest["thin"] = output.thin;
  manifest["draws"] = output.n_draws();
  manifest["identified"] = output.identified;
  manifest["config_hash"] = output.config_hash;
  manifest["elapsed_seconds"] = output.elapsed_seconds;
  manifest["acceptance"] = {{"hmc", output.acceptance.hmc},
                            {"kappa", output.acceptance.kappa},
                            {"hyper", output.acceptance.hyper},
                            {"rho", output.acceptance.rho},
                            {"ess_avg_shrinks", output.acceptance.ess_avg_shrinks}};
  manifest["units"] = output.units;
  manifest["periods"] = output.periods;
  manifest["items"] = output.item_labels;
  json bcols = json::array();
  for (const auto& [u, t] : output.beta_cols) bcols.push_back({u, t});
  manifest["beta_cols"] = bcols;
  json ccols = json::array();
  for (const auto& [t, j] : output.case_cols) ccols.push_back({t, j});
  manifest["case_cols"] = ccols;

  std::ofstream mf(dir / "manifest.json");
  if (!mf) throw std::runtime_error("cannot write manifest in " + dir.string());
  mf << manifest.dump(2) << '\n';
  if (!mf) throw std::runtime_error("failed while writing manifest");
}

ChainOutput read_draws(const std::filesystem::path& dir) {
  std::ifstream mf(dir / "manifest.json");
  if (!mf) throw ValidationError("cannot open manifest in " + dir.string());
  json manifest;
  try {
    mf >> manifest;
  } catch (const std::exception& e) {
    throw ValidationError("malformed manifest.json: " + std::string(e.what()));
  }

  ChainOutput out;
  out.seed = manifest.at("seed").get<std::uint64_t>();
  out.chain = manifest.at("chain").get<int>();
  out.iterations = manifest.at("iterations").get<int>();
  out.burnin = manifest.at("burnin").get<int>();
  out.thin = manifest.at("thin").get<int>();
  out.identified = manifest.at("identified").get<bool>();
  out.config_hash = manifest.at("config_hash").get<std::string>();
  out.elapsed_seconds = manifest.value("elapsed_seconds", 0.0);
  const auto& acc = manifest.at("acceptance");
  out.acceptance.hmc = acc.value("hmc", 0.0);
  out.acceptance.kappa = acc.value("kappa", 0.0);
  out.acceptance.hyper = acc.value("hyper", 0.0);
  out.acceptance.rho = acc.value("rho", 0.0);
  out.acceptance.ess_avg_shrinks = acc.value("ess_avg_shrinks", 0.0);
  out.units = manifest.at("units").get<std::vector<std::string>>();
  out.periods = manifest.at("periods").get<std::vector<std::string>>();
  out.item_labels =
      manifest.at("items").get<std::vector<std::vector<std::string>>>();
  for (const auto& bc : manifest.at("beta_cols")) {
    out.beta_cols.emplace_back(bc.at(0).get<int>(), bc.at(1).get<int>());
  }
  for (const auto& cc : manifest.at("case_cols")) {
    out.case_cols.emplace_back(cc.at(0).get<int>(), cc.at(1).get<int>());
  }

  const int n_draws = manifest.at("draws").get<int>();
  out.beta = read_matrix(dir / "beta.csv",
                         static_cast<Eigen::Index>(out.beta_cols.size()));
  out.psi = read_matrix(dir / "psi.csv",
                        static_cast<Eigen::Index>(out.case_cols.size()));
  out.zeta = read_matrix(dir / "zeta.csv",
                         static_cast<Eigen::Index>(out.case_cols.size()));
  out.kappa = read_matrix(dir / "kappa.csv",
                          static_cast<Eigen::Index>(out.case_cols.size()));
  out.hyper.resize(n_draws, 5);
  const char* hyper_names[5] = {"mu", "rho", "tau2", "varsigma", "lambda"};
  for (int c = 0; c < 5; ++c) {
    const Eigen::MatrixXd col =
        read_matrix(dir / (std::string(hyper_names[c]) + ".csv"), 1);
    if (col.rows() != n_draws) {
      throw ValidationError("draw tables disagree on the number of rows");
    }
    out.hyper.col(c) = col.col(0);
  }
  if (out.beta.rows() != n_draws || out.psi.rows() != n_draws ||
      out.zeta.rows() != n_draws || out.kappa.rows() != n_draws) {
    throw ValidationError("draw tables disagree on the number of rows");
  }
  return out;
}

}  // namespace circdfm
