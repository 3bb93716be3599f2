#pragma once

#include <cmath>

#include "spheresum/errors.hpp"
#include "spheresum/geometry.hpp"
#include "spheresum/test_cases.hpp"

namespace spheresum {

// Denominator guard on 1 - x.y. Self-interactions are handled by index
// exclusion in the summation layer, not by softening.
inline constexpr double kSingularTol = 1e-14;

// Green's function of the spherical Laplacian, -(1/4pi) log(1 - x.y). The
// prefactor is part of this form.
inline double greens_log(const UnitVector3& x, const UnitVector3& y) {
  const double denom = 1.0 - dot(x, y);
  if (denom <= kSingularTol) throw SingularKernelError("log kernel evaluated at its singularity");
  return -std::log(denom) / (4.0 * M_PI);
}

// Raw Biot-Savart integrand (x X y)/(1 - x.y). The -1/(4pi) prefactor and the
// source strengths are applied by the summation layer.
inline Vec3 bve_velocity_kernel(const UnitVector3& x, const UnitVector3& y) {
  const double denom = 1.0 - dot(x, y);
  if (denom <= kSingularTol) {
    throw SingularKernelError("velocity kernel evaluated at its singularity");
  }
  return cross(x, y) * (1.0 / denom);
}

// Strength of source particle j in the Biot-Savart sum: (zeta_j - F_R) A_j,
// or zeta_j A_j with forcing disabled.
inline double effective_source_strength(double zeta, double area, const UnitVector3& pos,
                                        double t, const ForcingConfig* forcing) {
  if (forcing == nullptr) return zeta * area;
  const LatLon ll = unit_to_latlon(pos);
  return (zeta - forcing_F(ll.lat, ll.lon, t, *forcing)) * area;
}

// Kernel interface consumed by the summation layer: a compile-time output
// dimension, a component-wise eval, and a post-sum prefactor.
struct LogPotentialKernel {
  static constexpr int dim = 1;
  static double prefactor() { return 1.0; }
  static void eval(const UnitVector3& x, const UnitVector3& y, double* out) {
    out[0] = greens_log(x, y);
  }
};

struct BiotSavartKernel {
  static constexpr int dim = 3;
  static double prefactor() { return -1.0 / (4.0 * M_PI); }
  static void eval(const UnitVector3& x, const UnitVector3& y, double* out) {
    const Vec3 v = bve_velocity_kernel(x, y);
    out[0] = v.x;
    out[1] = v.y;
    out[2] = v.z;
  }
};

}  // namespace spheresum
