#pragma once

#include <array>
#include <memory>
#include <vector>

#include "spheresum/geometry.hpp"

namespace spheresum {

// Largest interpolation degree the fixed-size evaluation buffers support.
inline constexpr int kMaxSbbDegree = 20;

inline constexpr int sbb_basis_size(int degree) { return (degree + 1) * (degree + 2) / 2; }

// Spherical Bernstein-Bezier basis of one degree: B_ijk(b) = b1^i b2^j b3^k
// over the exponent triples i+j+k = d, in the fixed order (k ascending, then
// j ascending).
class SBBBasis {
 public:
  explicit SBBBasis(int degree);

  int degree() const { return degree_; }
  int size() const { return static_cast<int>(index_set_.size()); }
  const std::vector<std::array<int, 3>>& index_set() const { return index_set_; }

  // Writes size() basis values; 0^0 = 1.
  void eval(const BarycentricCoords& b, double* out) const;
  std::vector<double> eval(const BarycentricCoords& b) const;

 private:
  int degree_;
  std::vector<std::array<int, 3>> index_set_;
};

// Interpolation nodes inside one spherical triangle, with their barycentric
// coordinates.
struct ProxyPointSet {
  SphericalTriangle triangle;
  int degree;
  std::vector<UnitVector3> points;
  std::vector<BarycentricCoords> barycentric;
};

// Default construction: the uniform barycentric lattice (i/d, j/d, k/d)
// projected to the sphere. Kept separate from the general constructor below so
// tabulated point sets (e.g. approximate Fekete coordinates) can be swapped in.
ProxyPointSet proxy_points(const SphericalTriangle& t, int degree);
ProxyPointSet proxy_points_from_barycentric(const SphericalTriangle& t, int degree,
                                            std::vector<BarycentricCoords> bary);

// Pivoted LU of the square Vandermonde V[m][k] = B_k(b_m) for one barycentric
// point layout. The matrix depends only on the barycentric coordinates, so one
// factorization serves every triangle carrying the same layout; see
// lattice_fit(). Throws ConditioningError when the reciprocal condition
// estimate drops below 1e-12.
class ProxyFit {
 public:
  ProxyFit(const SBBBasis& basis, const std::vector<BarycentricCoords>& bary);
  ~ProxyFit();
  ProxyFit(ProxyFit&&) noexcept;
  ProxyFit& operator=(ProxyFit&&) noexcept;

  int size() const;
  double rcond() const;

  // Solves V x = rhs for `ncols` column-major right-hand sides.
  void solve(const double* rhs, double* out, int ncols) const;
  // Solves V^T x = rhs (the proxy-weight transform).
  void solve_transposed(const double* rhs, double* out, int ncols) const;
  // Max-abs residual of V x = rhs for a candidate solution.
  double residual(const double* rhs, const double* x) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Process-wide factorization for the lattice layout of one degree, built on
// first use. Immutable afterwards; safe to read concurrently.
const ProxyFit& lattice_fit(int degree);

// Degree-d coefficients fitted on one triangle's proxy points, possibly
// vector-valued (dim columns, column-major).
struct SBBInterpolant {
  SphericalTriangle triangle;
  int degree;
  int dim;
  std::vector<double> coefficients;  // sbb_basis_size(degree) x dim
};

SBBInterpolant fit_coefficients(const ProxyPointSet& pts, const std::vector<double>& values,
                                int dim = 1);

double interpolant_eval(const SBBInterpolant& f, const UnitVector3& p);
void interpolant_eval(const SBBInterpolant& f, const UnitVector3& p, double* out);

}  // namespace spheresum
