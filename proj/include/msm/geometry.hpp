#pragma once

#include <array>
#include <cmath>
#include <complex>

namespace msm {

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;

  friend Vec3 operator+(const Vec3& a, const Vec3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
  friend Vec3 operator-(const Vec3& a, const Vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
  friend Vec3 operator*(double s, const Vec3& v) { return {s * v.x, s * v.y, s * v.z}; }
  friend Vec3 operator*(const Vec3& v, double s) { return s * v; }
  Vec3 operator-() const { return {-x, -y, -z}; }
};

inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }
inline Vec3 normalized(const Vec3& v) {
  const double n = norm(v);
  return {v.x / n, v.y / n, v.z / n};
}

inline constexpr Vec3 kXAxis{1.0, 0.0, 0.0};
inline constexpr Vec3 kYAxis{0.0, 1.0, 0.0};
inline constexpr Vec3 kZAxis{0.0, 0.0, 1.0};

// Complex 3-vector. dot() is bilinear (no conjugation): null vectors with
// c . c = 0 are the whole point of the complex extension.
struct CVec3 {
  std::complex<double> x{0.0, 0.0}, y{0.0, 0.0}, z{0.0, 0.0};

  CVec3() = default;
  CVec3(std::complex<double> px, std::complex<double> py, std::complex<double> pz)
      : x(px), y(py), z(pz) {}
  explicit CVec3(const Vec3& v) : x(v.x), y(v.y), z(v.z) {}

  friend CVec3 operator+(const CVec3& a, const CVec3& b) {
    return {a.x + b.x, a.y + b.y, a.z + b.z};
  }
  friend CVec3 operator*(std::complex<double> s, const CVec3& v) {
    return {s * v.x, s * v.y, s * v.z};
  }
};

inline std::complex<double> dot(const CVec3& a, const CVec3& b) {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}

// Row-major 3x3 rotation matrix.
struct Mat3 {
  std::array<double, 9> m{1, 0, 0, 0, 1, 0, 0, 0, 1};

  Vec3 operator()(const Vec3& v) const {
    return {m[0] * v.x + m[1] * v.y + m[2] * v.z, m[3] * v.x + m[4] * v.y + m[5] * v.z,
            m[6] * v.x + m[7] * v.y + m[8] * v.z};
  }
};

// Rodrigues rotation by `angle` about the unit vector `axis`.
inline Mat3 rotation_about(const Vec3& axis, double angle) {
  const double c = std::cos(angle), s = std::sin(angle), t = 1.0 - c;
  const double x = axis.x, y = axis.y, z = axis.z;
  Mat3 r;
  r.m = {t * x * x + c,     t * x * y - s * z, t * x * z + s * y,
         t * x * y + s * z, t * y * y + c,     t * y * z - s * x,
         t * x * z - s * y, t * y * z + s * x, t * z * z + c};
  return r;
}

// Polar angles of a unit vector; phi = 0 at the poles.
inline double polar_theta(const Vec3& n) { return std::acos(std::clamp(n.z, -1.0, 1.0)); }
inline double polar_phi(const Vec3& n) {
  if (n.x == 0.0 && n.y == 0.0) return 0.0;
  return std::atan2(n.y, n.x);
}

inline Vec3 from_polar(double theta, double phi) {
  return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

// Angle between two unit vectors, accurate near 0 and pi (the acos form
// saturates at the sqrt(eps) noise floor for nearly aligned inputs).
inline double angle_between(const Vec3& a, const Vec3& b) {
  return std::atan2(norm(cross(a, b)), dot(a, b));
}

// Deterministic orthonormal completion: returns a unit vector perpendicular
// to the unit vector u.
inline Vec3 any_perpendicular(const Vec3& u) {
  const Vec3 seed = std::abs(u.z) < 0.9 ? kZAxis : kXAxis;
  return normalized(cross(u, seed));
}

}  // namespace msm
