#include "spheresum/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace spheresum {

namespace {

double triple(const Vec3& a, const Vec3& b, const Vec3& c) { return dot(a, cross(b, c)); }

// Raw (unnormalized) solution of [v1 v2 v3] b = p via Cramer's rule.
// Returns false when the vertex matrix is numerically singular.
bool solve_vertex_basis(const SphericalTriangle& t, const UnitVector3& p, double out[3],
                        double* det_out) {
  const Vec3 v1 = t.v1.vec(), v2 = t.v2.vec(), v3 = t.v3.vec();
  const double det = triple(v1, v2, v3);
  if (det_out) *det_out = det;
  if (std::abs(det) < 1e-14) return false;
  const Vec3 pv = p.vec();
  out[0] = triple(pv, v2, v3) / det;
  out[1] = triple(v1, pv, v3) / det;
  out[2] = triple(v1, v2, pv) / det;
  return true;
}

}  // namespace

SphericalTriangle::SphericalTriangle(const UnitVector3& a, const UnitVector3& b,
                                     const UnitVector3& c)
    : v1(a), v2(b), v3(c) {
  if (great_circle_distance(a, b) <= 1e-12 || great_circle_distance(b, c) <= 1e-12 ||
      great_circle_distance(c, a) <= 1e-12) {
    throw GeometryError("spherical triangle has coincident vertices");
  }
  if (triple(a.vec(), b.vec(), c.vec()) <= 0.0) {
    throw GeometryError("spherical triangle vertices are not counterclockwise");
  }
}

UnitVector3 latlon_to_unit(const LatLon& p) {
  const double cl = std::cos(p.lat);
  return UnitVector3(cl * std::cos(p.lon), cl * std::sin(p.lon), std::sin(p.lat));
}

LatLon unit_to_latlon(const UnitVector3& v) {
  LatLon out;
  out.lat = std::asin(std::clamp(v.z, -1.0, 1.0));
  // atan2(0, 0) = 0 gives the lon = 0 pole convention for free.
  out.lon = std::atan2(v.y, v.x);
  if (out.lon >= M_PI) out.lon -= 2.0 * M_PI;
  return out;
}

double great_circle_distance(const UnitVector3& a, const UnitVector3& b) {
  return std::atan2(norm(cross(a, b)), dot(a, b));
}

BarycentricCoords spherical_barycentric(const SphericalTriangle& t, const UnitVector3& p) {
  double raw[3];
  if (!solve_vertex_basis(t, p, raw, nullptr)) {
    throw GeometryError("degenerate triangle in barycentric solve");
  }
  const double sum = raw[0] + raw[1] + raw[2];
  if (std::abs(sum) < 1e-14) {
    throw GeometryError("point has no radial projection onto the triangle plane");
  }
  return {raw[0] / sum, raw[1] / sum, raw[2] / sum};
}

UnitVector3 triangle_circumcenter(const SphericalTriangle& t) {
  const Vec3 n = cross(t.v2 - t.v1, t.v3 - t.v1);
  const double nn = norm(n);
  if (nn < 1e-14) throw GeometryError("degenerate triangle in circumcenter");
  UnitVector3 c(n);
  const Vec3 centroid = t.v1.vec() + t.v2.vec() + t.v3.vec();
  if (dot(c.vec(), centroid) < 0.0) c = UnitVector3(-n);
  return c;
}

double triangle_radius(const SphericalTriangle& t) {
  return great_circle_distance(triangle_circumcenter(t), t.v1);
}

bool triangle_contains(const SphericalTriangle& t, const UnitVector3& p) {
  double raw[3];
  if (!solve_vertex_basis(t, p, raw, nullptr)) return false;
  const double sum = raw[0] + raw[1] + raw[2];
  // sum <= 0 means p radially projects onto the plane from the far side.
  if (sum <= 1e-14) return false;
  return raw[0] / sum >= kContainTol && raw[1] / sum >= kContainTol && raw[2] / sum >= kContainTol;
}

double spherical_polygon_area(const std::vector<UnitVector3>& vs) {
  const std::size_t n = vs.size();
  if (n < 3) throw GeometryError("spherical polygon needs at least 3 vertices");
  double angle_sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const UnitVector3& prev = vs[(i + n - 1) % n];
    const UnitVector3& here = vs[i];
    const UnitVector3& next = vs[(i + 1) % n];
    // Tangent-plane directions toward the neighbors.
    const Vec3 tp = prev.vec() - dot(prev, here) * here.vec();
    const Vec3 tn = next.vec() - dot(next, here) * here.vec();
    angle_sum += std::atan2(norm(cross(tp, tn)), dot(tp, tn));
  }
  return angle_sum - (static_cast<double>(n) - 2.0) * M_PI;
}

double spherical_triangle_area(const SphericalTriangle& t) {
  return spherical_polygon_area({t.v1, t.v2, t.v3});
}

double barycentric_min_score(const UnitVector3& a, const UnitVector3& b, const UnitVector3& c,
                             const UnitVector3& p) {
  const Vec3 va = a.vec(), vb = b.vec(), vc = c.vec(), vp = p.vec();
  const double det = dot(va, cross(vb, vc));
  if (std::abs(det) < 1e-14) return -1e30;
  const double b1 = dot(vp, cross(vb, vc)) / det;
  const double b2 = dot(va, cross(vp, vc)) / det;
  const double b3 = dot(va, cross(vb, vp)) / det;
  const double sum = b1 + b2 + b3;
  if (sum <= 1e-14) return -1e30;
  return std::min({b1 / sum, b2 / sum, b3 / sum});
}

}  // namespace spheresum
