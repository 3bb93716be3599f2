#pragma once

#include <array>
#include <cmath>
#include <vector>

#include "spheresum/errors.hpp"

namespace spheresum {

// Free 3-vector used for intermediate arithmetic (cross products, midpoints,
// velocities). Not constrained to the sphere.
struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;

  Vec3& operator+=(const Vec3& o) {
    x += o.x;
    y += o.y;
    z += o.z;
    return *this;
  }
  Vec3& operator-=(const Vec3& o) {
    x -= o.x;
    y -= o.y;
    z -= o.z;
    return *this;
  }
  Vec3& operator*=(double s) {
    x *= s;
    y *= s;
    z *= s;
    return *this;
  }
};

inline Vec3 operator+(Vec3 a, const Vec3& b) { return a += b; }
inline Vec3 operator-(Vec3 a, const Vec3& b) { return a -= b; }
inline Vec3 operator*(Vec3 a, double s) { return a *= s; }
inline Vec3 operator*(double s, Vec3 a) { return a *= s; }
inline Vec3 operator-(const Vec3& a) { return {-a.x, -a.y, -a.z}; }

inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

// A point on the unit sphere. Every constructor renormalizes, so the unit
// invariant holds for all values of this type.
struct UnitVector3 {
  double x, y, z;

  UnitVector3() : x(1.0), y(0.0), z(0.0) {}

  UnitVector3(double xr, double yr, double zr) {
    const double n = std::sqrt(xr * xr + yr * yr + zr * zr);
    if (!(n > 1e-300)) throw GeometryError("cannot normalize a zero vector onto the sphere");
    x = xr / n;
    y = yr / n;
    z = zr / n;
  }

  explicit UnitVector3(const Vec3& v) : UnitVector3(v.x, v.y, v.z) {}

  Vec3 vec() const { return {x, y, z}; }
};

inline double dot(const UnitVector3& a, const UnitVector3& b) {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}
inline Vec3 cross(const UnitVector3& a, const UnitVector3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline Vec3 operator-(const UnitVector3& a, const UnitVector3& b) {
  return {a.x - b.x, a.y - b.y, a.z - b.z};
}

// Latitude/longitude in radians, lat in [-pi/2, pi/2], lon in [-pi, pi).
struct LatLon {
  double lat = 0.0;
  double lon = 0.0;
};

// Barycentric coordinates normalized to b1 + b2 + b3 = 1 (radial projection
// convention).
struct BarycentricCoords {
  double b1 = 0.0, b2 = 0.0, b3 = 0.0;
};

// Containment tolerance: boundary and shared-edge points count as inside.
inline constexpr double kContainTol = -1e-10;

// Spherical triangle with counterclockwise vertices (seen from outside the
// sphere), i.e. det[v1 v2 v3] > 0.
struct SphericalTriangle {
  UnitVector3 v1, v2, v3;

  SphericalTriangle(const UnitVector3& a, const UnitVector3& b, const UnitVector3& c);
};

UnitVector3 latlon_to_unit(const LatLon& p);
LatLon unit_to_latlon(const UnitVector3& v);

// Arc length in [0, pi], accurate near both endpoints.
double great_circle_distance(const UnitVector3& a, const UnitVector3& b);

// Coordinates of p in the vertex basis {v1,v2,v3}, rescaled to sum to 1.
// Throws GeometryError for degenerate triangles or p with no radial
// projection onto the vertex plane (coefficient sum ~ 0).
BarycentricCoords spherical_barycentric(const SphericalTriangle& t, const UnitVector3& p);

// Unit vector equidistant from the three vertices, on the triangle's side.
UnitVector3 triangle_circumcenter(const SphericalTriangle& t);

// Great-circle distance from the circumcenter to the vertices.
double triangle_radius(const SphericalTriangle& t);

// True iff p projects radially into the triangle with all barycentric
// coordinates >= kContainTol. Points on the far hemisphere never count.
bool triangle_contains(const SphericalTriangle& t, const UnitVector3& p);

// Area by spherical excess: sum of interior angles minus (n-2)*pi.
// Vertices must be counterclockwise and form a simple convex polygon.
double spherical_polygon_area(const std::vector<UnitVector3>& vs);
double spherical_triangle_area(const SphericalTriangle& t);

// Minimum normalized barycentric coordinate of p in triangle (a,b,c); a large
// negative value for degenerate or far-hemisphere configurations. Containment
// is score >= kContainTol. Never throws.
double barycentric_min_score(const UnitVector3& a, const UnitVector3& b, const UnitVector3& c,
                             const UnitVector3& p);

}  // namespace spheresum
