#ifndef CIRCDFM_DRAWS_IO_HPP_
#define CIRCDFM_DRAWS_IO_HPP_

#include <filesystem>

#include "circdfm/mcmc.hpp"

namespace circdfm {

// Writes one delimited table per parameter block (beta, psi, zeta, kappa,
// mu, rho, tau2, varsigma, lambda) plus manifest.json. Values round-trip
// bit-exactly through read_draws.
void write_draws(const ChainOutput& output, const std::filesystem::path& dir);

ChainOutput read_draws(const std::filesystem::path& dir);

}  // namespace circdfm

#endif  // CIRCDFM_DRAWS_IO_HPP_
