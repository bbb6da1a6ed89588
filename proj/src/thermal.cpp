#include "qtherm/thermal.hpp"

#include <algorithm>
#include <cmath>

namespace qtherm {

std::array<double, 4> gibbs_weights(const std::array<double, 4>& energies, double t) {
  for (double e : energies)
    if (!std::isfinite(e)) throw InvalidInput("gibbs_weights: non-finite energy");
  if (std::isnan(t) || t < 0.0) throw InvalidInput("gibbs_weights: temperature must be >= 0");

  std::array<double, 4> w{};
  if (std::isinf(t)) {
    w.fill(0.25);
    return w;
  }

  const auto [lo, hi] = std::minmax_element(energies.begin(), energies.end());
  const double e_min = *lo;
  const double width = *hi - e_min;

  if (t < 1e-12) {
    int ground = 0;
    for (double e : energies)
      if (e - e_min <= 1e-10 * width) ++ground;
    for (int i = 0; i < 4; ++i)
      w[static_cast<std::size_t>(i)] =
          (energies[static_cast<std::size_t>(i)] - e_min <= 1e-10 * width) ? 1.0 / ground : 0.0;
    return w;
  }

  double z = 0.0;
  for (int i = 0; i < 4; ++i) {
    w[static_cast<std::size_t>(i)] = std::exp(-(energies[static_cast<std::size_t>(i)] - e_min) / t);
    z += w[static_cast<std::size_t>(i)];
  }
  for (double& v : w) v /= z;
  return w;
}

namespace {

// Eigensystem of h with the identity coefficient removed, so every caller
// shares the exact energy-shift invariance.
EigenSystem<4> shifted_eig(const PauliHamiltonian& h) {
  PauliHamiltonian copy = h;
  copy.c[0][0] = 0.0;
  return hermitian_eig(copy.matrix());
}

}  // namespace

DensityMatrix thermal_state(const PauliHamiltonian& h, double t) {
  const EigenSystem<4> eig = shifted_eig(h);
  const std::array<double, 4> w = gibbs_weights(eig.values, t);

  DensityMatrix out;
  for (int i = 0; i < 4; ++i) {
    if (w[static_cast<std::size_t>(i)] == 0.0) continue;
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c)
        out.rho(r, c) +=
            w[static_cast<std::size_t>(i)] * eig.vectors(r, i) * std::conj(eig.vectors(c, i));
  }
  return out;
}

Spectrum gibbs_spectrum(const PauliHamiltonian& h, double t) {
  const EigenSystem<4> eig = shifted_eig(h);
  Spectrum s;
  s.values = gibbs_weights(eig.values, t);
  std::sort(s.values.begin(), s.values.end(), std::greater<double>());
  return s;
}

bool majorizes(const Spectrum& p, const Spectrum& q) {
  auto check = [](const Spectrum& s) {
    double sum = 0.0;
    for (double v : s.values) sum += v;
    if (std::abs(sum - 1.0) > 1e-9) throw InvalidInput("majorizes: spectrum is not normalized");
  };
  check(p);
  check(q);

  std::array<double, 4> a = p.values, b = q.values;
  std::sort(a.begin(), a.end(), std::greater<double>());
  std::sort(b.begin(), b.end(), std::greater<double>());

  double pa = 0.0, pb = 0.0;
  for (int k = 0; k < 3; ++k) {
    pa += a[static_cast<std::size_t>(k)];
    pb += b[static_cast<std::size_t>(k)];
    if (pa < pb - 1e-12) return false;
  }
  return true;
}

}  // namespace qtherm
