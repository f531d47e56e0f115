#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>

namespace lorhelix {

/// A vector of Minkowski 3-space with signature (-,+,+).
///
/// Coordinates refer to the standard frame: e1 is timelike, e2 and e3 are
/// spacelike. Construction rejects NaN and infinite components, so every
/// value that exists is finite.
class LorentzVector {
 public:
  constexpr LorentzVector() noexcept = default;
  LorentzVector(double x1, double x2, double x3);

  static LorentzVector e1() { return {1.0, 0.0, 0.0}; }
  static LorentzVector e2() { return {0.0, 1.0, 0.0}; }
  static LorentzVector e3() { return {0.0, 0.0, 1.0}; }

  double x1() const noexcept { return c_[0]; }
  double x2() const noexcept { return c_[1]; }
  double x3() const noexcept { return c_[2]; }
  double operator[](std::size_t i) const noexcept { return c_[i]; }
  const std::array<double, 3>& components() const noexcept { return c_; }

  bool is_zero() const noexcept { return c_[0] == 0.0 && c_[1] == 0.0 && c_[2] == 0.0; }

  /// Euclidean length of the coordinate triple. Only used to scale tolerances.
  double coordinate_norm() const noexcept;

  LorentzVector operator-() const { return {-c_[0], -c_[1], -c_[2]}; }
  LorentzVector& operator+=(const LorentzVector& o);
  LorentzVector& operator-=(const LorentzVector& o);
  LorentzVector& operator*=(double k);

  friend bool operator==(const LorentzVector&, const LorentzVector&) = default;

 private:
  std::array<double, 3> c_{0.0, 0.0, 0.0};
};

LorentzVector operator+(LorentzVector a, const LorentzVector& b);
LorentzVector operator-(LorentzVector a, const LorentzVector& b);
LorentzVector operator*(double k, LorentzVector v);
LorentzVector operator*(LorentzVector v, double k);
LorentzVector operator/(LorentzVector v, double k);
std::ostream& operator<<(std::ostream& os, const LorentzVector& v);

inline constexpr double kDefaultCausalTolerance = 1e-9;

/// g(u, v) = -u1 v1 + u2 v2 + u3 v3.
double metric(const LorentzVector& u, const LorentzVector& v) noexcept;

/// sqrt(|g(v, v)|).
double pseudo_norm(const LorentzVector& v) noexcept;

/// Lorentzian vector product: the determinant with first row (i, -j, -k).
/// The result is g-orthogonal to both arguments and
/// g(u x v, u x v) = -gram_determinant(u, v).
LorentzVector lorentz_cross(const LorentzVector& u, const LorentzVector& v);

/// g(u,u) g(v,v) - g(u,v)^2. Negative iff span{u, v} is a timelike plane.
double gram_determinant(const LorentzVector& u, const LorentzVector& v) noexcept;

enum class Causal { Spacelike, Timelike, Null };

struct CausalCharacter {
  Causal tag;
  double q;  // g(v, v)
};

/// The zero vector is spacelike. Nonzero vectors with |g(v,v)| <= tol are null.
CausalCharacter causal_character(const LorentzVector& v, double tol = kDefaultCausalTolerance);

const char* to_string(Causal c) noexcept;

enum class AngleCase {
  SpacelikeSpan,              // two spacelike vectors spanning a spacelike plane
  TimelikeSpanSpacelikePair,  // two spacelike vectors spanning a timelike plane
  SpacelikeTimelikePair,      // one spacelike, one timelike
  TimelikePair,               // two timelike vectors of equal time orientation
};

const char* to_string(AngleCase c) noexcept;

struct LorentzAngle {
  double phi;
  AngleCase kind;
};

/// Lorentzian angle between two nonzero, non-null vectors.
///
/// SpacelikeSpan:              |g| = |X||Y| cos(phi), 0 <= phi <= pi/2
/// TimelikeSpanSpacelikePair:  |g| = |X||Y| cosh(phi)
/// SpacelikeTimelikePair:      |g| = |X||Y| sinh(phi)
/// TimelikePair:               -g  = |X||Y| cosh(phi)
///
/// Throws Error(NullInput) for zero or null vectors and
/// Error(InvalidArgument) for timelike vectors in opposite time cones.
LorentzAngle lorentz_angle(const LorentzVector& x, const LorentzVector& y,
                           double tol = kDefaultCausalTolerance);

}  // namespace lorhelix
