#pragma once

#include "aqec/numerics.hpp"

#include <cstdint>
#include <random>
#include <string_view>

namespace aqec {

// splitmix64 finalizer; used to derive independent child seeds.
std::uint64_t mix64(std::uint64_t x);

// Deterministic child seed for (master, label, point, restart).
std::uint64_t derive_seed(std::uint64_t master, std::string_view label, std::uint64_t point = 0,
                          std::uint64_t restart = 0);

using Rng = std::mt19937_64;

CVec random_complex_vector(Eigen::Index dim, Rng& rng);
CVec random_unit_vector(Eigen::Index dim, Rng& rng);
// Haar-distributed unitary from the QR decomposition of a Ginibre matrix.
CMat haar_unitary(Eigen::Index dim, Rng& rng);
// Random density matrix of the given rank (rank = dim gives a full-rank state).
CMat random_density_matrix(Eigen::Index dim, Eigen::Index rank, Rng& rng);

}  // namespace aqec
