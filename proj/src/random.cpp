#include "aqec/random.hpp"

namespace aqec {

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::string_view label, std::uint64_t point, std::uint64_t restart) {
  std::uint64_t h = mix64(master);
  for (unsigned char c : label) h = mix64(h ^ c);
  h = mix64(h ^ mix64(point + 0x51ed270b27a1ull));
  return mix64(h ^ mix64(restart + 0x2545f4914f6cdd1dull));
}

CVec random_complex_vector(Eigen::Index dim, Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  CVec v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    const double re = g(rng);
    const double im = g(rng);
    v[i] = cplx(re, im);
  }
  return v;
}

CVec random_unit_vector(Eigen::Index dim, Rng& rng) {
  CVec v = random_complex_vector(dim, rng);
  return v / v.norm();
}

CMat haar_unitary(Eigen::Index dim, Rng& rng) {
  CMat z(dim, dim);
  for (Eigen::Index j = 0; j < dim; ++j) z.col(j) = random_complex_vector(dim, rng);
  Eigen::HouseholderQR<CMat> qr(z);
  CMat q = qr.householderQ() * CMat::Identity(dim, dim);
  const CMat r = qr.matrixQR();
  for (Eigen::Index j = 0; j < dim; ++j) {
    const double a = std::abs(r(j, j));
    if (a > 0) q.col(j) *= r(j, j) / a;
  }
  return q;
}

CMat random_density_matrix(Eigen::Index dim, Eigen::Index rank, Rng& rng) {
  CMat g(dim, rank);
  for (Eigen::Index j = 0; j < rank; ++j) g.col(j) = random_complex_vector(dim, rng);
  CMat rho = g * g.adjoint();
  return rho / rho.trace().real();
}

}  // namespace aqec
