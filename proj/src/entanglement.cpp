#include "qtherm/entanglement.hpp"

#include <algorithm>
#include <cmath>

namespace qtherm {

namespace {

// Validates the density-matrix invariants and returns the eigensystem so
// concurrence can reuse it for the matrix square root.
EigenSystem<4> validated_eig(const DensityMatrix& rho) {
  if (!rho.rho.is_hermitian())
    throw InvalidInput("density matrix is not Hermitian within tolerance");
  if (std::abs(rho.rho.trace().real() - 1.0) > 1e-9)
    throw InvalidInput("density matrix trace differs from 1");
  const EigenSystem<4> eig = hermitian_eig(rho.rho);
  if (eig.values[0] < -1e-12)
    throw InvalidInput("density matrix has a negative eigenvalue beyond tolerance");
  return eig;
}

}  // namespace

double concurrence(const DensityMatrix& rho) {
  const EigenSystem<4> eig = validated_eig(rho);

  CMat4 sqrt_rho;
  for (int i = 0; i < 4; ++i) {
    const double root = std::sqrt(std::max(0.0, eig.values[static_cast<std::size_t>(i)]));
    if (root == 0.0) continue;
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c)
        sqrt_rho(r, c) += root * eig.vectors(r, i) * std::conj(eig.vectors(c, i));
  }

  const CMat4& yy = pauli_kron(2, 2);
  const CMat4 rho_tilde = yy * rho.rho.conjugate() * yy;

  // Same spectrum as rho * rho_tilde, but Hermitian and PSD, so the small
  // eigensolver applies and negative noise is detectable.
  const CMat4 core = sqrt_rho * rho_tilde * sqrt_rho;
  const EigenSystem<4> lam = hermitian_eig(0.5 * (core + core.adjoint()));

  std::array<double, 4> roots{};
  for (int i = 0; i < 4; ++i) {
    double v = lam.values[static_cast<std::size_t>(i)];
    if (v < -1e-12) throw ComputationError("concurrence: nonphysical eigenvalue of rho*rho_tilde");
    roots[static_cast<std::size_t>(i)] = std::sqrt(std::max(0.0, v));
  }
  std::sort(roots.begin(), roots.end(), std::greater<double>());
  return std::max(0.0, roots[0] - roots[1] - roots[2] - roots[3]);
}

CMat4 partial_transpose(const CMat4& m) {
  CMat4 out;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c)
        for (int d = 0; d < 2; ++d) out(2 * a + b, 2 * c + d) = m(2 * c + b, 2 * a + d);
  return out;
}

PTReport pt_report(const DensityMatrix& rho) {
  (void)validated_eig(rho);
  const CMat4 pt = partial_transpose(rho.rho);
  PTReport out;
  out.min_eigenvalue = hermitian_eig(pt).values[0];
  out.determinant = det4(pt).real();
  return out;
}

bool is_entangled(const DensityMatrix& rho, double tol) {
  if (!(tol > 0.0)) throw InvalidInput("is_entangled: tolerance must be positive");
  return pt_report(rho).min_eigenvalue < -tol;
}

}  // namespace qtherm
