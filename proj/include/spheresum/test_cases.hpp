#pragma once

#include <cmath>
#include <vector>

#include "spheresum/geometry.hpp"

namespace spheresum {

// Rotation rate of the Earth, per day. Time is measured in days throughout.
inline constexpr double kOmega = 2.0 * M_PI;

// Wavenumber-forced vorticity source mimicking stratospheric wave forcing.
struct ForcingConfig {
  int k = 1;                     // zonal wavenumber, 1 or 2
  double tp_days = 4.0;          // ramp-up time
  double tf_days = 15.0;         // shutoff time
  double theta1 = M_PI / 3.0;    // latitude of maximum forcing

  void validate() const;
};

// Stationary wavenumber-4 Rossby-Haurwitz vorticity.
double rh4_vorticity(double lat, double lon);

// Phase speed of a Rossby-Haurwitz wave of wavenumber k and strength w.
double rh_wave_speed(int k, double w);

// Gaussian vortex vorticity, offset by the constant that zeroes the total
// vorticity under the supplied quadrature.
std::vector<double> gaussian_vorticity(const std::vector<UnitVector3>& positions,
                                       const std::vector<double>& areas);
UnitVector3 gaussian_vortex_center();

// Zonally symmetric polar vortex vorticity.
double polar_vorticity(double lat);

// Temporal envelope of the forcing: cosine ramp up on [0,Tp), flat 1 on
// [Tp, Tf-Tp), cosine ramp down on [Tf-Tp, Tf), 0 afterwards.
double forcing_amplitude_A(double t, double tp, double tf);

// Latitudinal shape, peaking at 1 when lat == theta1; 0 in the southern
// hemisphere and at the equator.
double forcing_shape_B(double lat, double theta1);

// Full forcing F_R = (3/5) Omega k^2 A(t) B(lat) cos(k lon).
double forcing_F(double lat, double lon, double t, const ForcingConfig& cfg);

}  // namespace spheresum
