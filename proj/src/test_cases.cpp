#include "spheresum/test_cases.hpp"

#include "spheresum/errors.hpp"

namespace spheresum {

void ForcingConfig::validate() const {
  if (k != 1 && k != 2) throw ConfigError("forcing wavenumber must be 1 or 2");
  if (!(tp_days > 0.0 && tp_days < tf_days / 2.0)) {
    throw ConfigError("forcing requires 0 < Tp < Tf/2");
  }
}

double rh4_vorticity(double lat, double lon) {
  const double st = std::sin(lat);
  const double ct = std::cos(lat);
  return 2.0 * M_PI / 7.0 * st + 30.0 * st * ct * ct * ct * ct * std::cos(4.0 * lon);
}

double rh_wave_speed(int k, double w) {
  const double kk = static_cast<double>(k);
  return (kk * (3.0 + kk) * w - 2.0 * kOmega) / ((1.0 + kk) * (2.0 + kk));
}

UnitVector3 gaussian_vortex_center() { return latlon_to_unit({M_PI / 20.0, 0.0}); }

std::vector<double> gaussian_vorticity(const std::vector<UnitVector3>& positions,
                                       const std::vector<double>& areas) {
  const UnitVector3 xc = gaussian_vortex_center();
  std::vector<double> zeta(positions.size());
  double weighted = 0.0;
  double total_area = 0.0;
  for (std::size_t i = 0; i < positions.size(); ++i) {
    const Vec3 d = positions[i] - xc;
    zeta[i] = 4.0 * M_PI * std::exp(-16.0 * dot(d, d));
    weighted += zeta[i] * areas[i];
    total_area += areas[i];
  }
  const double c = -weighted / total_area;
  for (double& z : zeta) z += c;
  return zeta;
}

double polar_vorticity(double lat) {
  constexpr double beta = 1.5;
  constexpr double theta0 = 15.0 * M_PI / 32.0;
  const double b2 = 2.0 * beta * beta;
  const double delta = theta0 - lat;
  return M_PI * std::exp(-b2 * (1.0 - std::cos(delta))) *
         (b2 * std::cos(lat) * std::sin(delta) + std::sin(lat));
}

double forcing_amplitude_A(double t, double tp, double tf) {
  if (t < tp) return (1.0 - std::cos(t / tp * M_PI)) / 2.0;
  if (t < tf - tp) return 1.0;
  if (t < tf) return (1.0 - std::cos(M_PI + (t - tf + tp) / tp * M_PI)) / 2.0;
  return 0.0;
}

double forcing_shape_B(double lat, double theta1) {
  if (lat <= 0.0) return 0.0;
  const double t1 = std::tan(theta1);
  const double t = std::tan(lat);
  const double u = (t1 * t1) / (t * t);
  return u * std::exp(1.0 - u);
}

double forcing_F(double lat, double lon, double t, const ForcingConfig& cfg) {
  const double kk = static_cast<double>(cfg.k);
  return 0.6 * kOmega * kk * kk * forcing_amplitude_A(t, cfg.tp_days, cfg.tf_days) *
         forcing_shape_B(lat, cfg.theta1) * std::cos(kk * lon);
}

}  // namespace spheresum
