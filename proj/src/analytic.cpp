#include "qmirror/analytic.hpp"

#include <cmath>
#include <stdexcept>

namespace qmirror {

cxd eta(double t) { return 1.0 - std::exp(cxd(0.0, -t)); }

ApproxState approx_state(double kn, double t, bool include_11) {
  if (kn < 0.0) throw std::invalid_argument("approx_state: kn must be >= 0");
  ApproxState s;
  s.kn = kn;
  s.t = t;
  s.include_11 = include_11;

  const cxd beta = kn * eta(t);
  s.global_phase = std::polar(1.0, 2.0 * kn * kn * (t - std::sin(t)));
  s.prefactor = std::exp(-std::norm(beta));
  s.amp00 = 1.0;
  s.amp01 = beta;
  s.amp10 = beta;
  s.amp11 = include_11 ? s.amp01 * s.amp10 : cxd(0.0);
  return s;
}

Eigen::Vector4cd ApproxState::amplitudes_ascending() const {
  const cxd scale = global_phase * prefactor;
  Eigen::Vector4cd v;
  v << scale * amp00, scale * amp01, scale * amp10, scale * amp11;
  return v;
}

double ApproxState::norm() const { return amplitudes_ascending().norm(); }

Vector ApproxState::pair_vector(int n_mirror, bool normalize) const {
  if (n_mirror < 2) throw std::invalid_argument("ApproxState: n_mirror must be >= 2");
  Vector v = Vector::Zero(static_cast<Eigen::Index>(n_mirror) * n_mirror);
  const Eigen::Vector4cd amps = amplitudes_ascending();
  v(0) = amps(0);
  v(1) = amps(1);
  v(n_mirror) = amps(2);
  v(n_mirror + 1) = amps(3);
  if (normalize) v /= v.norm();
  return v;
}

Eigen::Matrix4cd reduced_density_closed_form(double kn, double t) {
  if (kn < 0.0) throw std::invalid_argument("reduced_density_closed_form: kn must be >= 0");
  const cxd beta = kn * eta(t);
  const double x = std::norm(beta);
  const double w = std::exp(-2.0 * x);

  Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
  rho(1, 1) = x;
  rho(1, 2) = x;
  rho(1, 3) = beta;
  rho(2, 1) = x;
  rho(2, 2) = x;
  rho(2, 3) = beta;
  rho(3, 1) = std::conj(beta);
  rho(3, 2) = std::conj(beta);
  rho(3, 3) = 1.0;
  return w * rho;
}

double concurrence_closed_form(double kn, double t) {
  if (kn < 0.0) throw std::invalid_argument("concurrence_closed_form: kn must be >= 0");
  const double y = 4.0 * kn * kn * (1.0 - std::cos(t));  // 2|kn eta|^2
  return y * std::exp(-y);
}

}  // namespace qmirror
