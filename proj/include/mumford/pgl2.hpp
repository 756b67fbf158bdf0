#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "mumford/padic.hpp"

namespace mumford {

/// Point of the projective line in homogeneous coordinates (x : y).
struct ProjPoint {
  PadicScalar x, y;
};
bool proj_equal(const ProjPoint& a, const ProjPoint& b);

/// Element of PGL_2(Q_p), carried by a 2x2 matrix with nonzero determinant.
class MoebiusElement {
 public:
  explicit MoebiusElement(PadicMatrix m);
  static MoebiusElement diag(long prime, const mpq_class& a, const mpq_class& b);

  const PadicMatrix& matrix() const { return m_; }
  long prime() const { return m_.prime(); }
  MoebiusElement inverse() const { return MoebiusElement(m_.inverse()); }
  MoebiusElement operator*(const MoebiusElement& o) const {
    return MoebiusElement(m_ * o.m_);
  }
  /// projective equality: equal up to a scalar factor
  bool proj_equals(const MoebiusElement& o) const;
  ProjPoint apply(const ProjPoint& pt) const;
  /// image of a finite point, undefined at the pole
  PadicScalar apply_affine(const PadicScalar& z) const;

 private:
  PadicMatrix m_;
};

enum class ElementClass { Hyperbolic, Parabolic, EllipticOrFiniteOrder };

struct Classification {
  ElementClass kind;
  long translation_length = 0;  // meaningful for Hyperbolic only
};

/// Hyperbolic iff the eigenvalue valuations differ, i.e. 2 v(tr) < v(det);
/// the translation length is |v(det) - 2 v(tr)|.
Classification classify(const MoebiusElement& g);

/// Attracting fixed point first (eigenvector of the larger-norm eigenvalue).
/// Requires rational eigenvalues; hyperbolic elements whose eigenvalues live
/// in a quadratic extension of Q are rejected with IrrationalFixedPoints.
std::pair<ProjPoint, ProjPoint> fixed_points(const MoebiusElement& g);

/// Tate generator diag(q, 1) for 0 < |q| < 1.
std::vector<MoebiusElement> tate_group(const PadicScalar& q);

/// Free generators s_1 s_0, ..., s_g s_0 of the Whittaker group attached to
/// g+1 involutions.
std::vector<MoebiusElement> whittaker_group(
    const std::vector<MoebiusElement>& involutions);

/// Disk region of P^1 with exact power-of-p radius:
///   complement = false: {z : |z - c| <= p^-radius_exp}  (closed = true)
///                       {z : |z - c| <  p^-radius_exp}  (closed = false)
///   complement = true:  {z : |z - c| >= p^-radius_exp} u {inf}   (closed)
///                       {z : |z - c| >  p^-radius_exp} u {inf}   (open)
/// File inputs always describe closed regions; open ones arise internally so
/// that complements and Moebius images stay exact.
struct PadicBall {
  PadicScalar center;
  long radius_exp = 0;
  bool complement = false;
  bool closed = true;
};

PadicBall ball_complement(const PadicBall& b);   // exact set complement in P^1
bool ball_member(const PadicBall& b, const PadicScalar& z);
bool ball_member_infinity(const PadicBall& b);
bool ball_subset(const PadicBall& a, const PadicBall& b);
bool ball_disjoint(const PadicBall& a, const PadicBall& b);

/// Exact image of a disk region under a Moebius map (total: Moebius maps
/// permute the disks of P^1).
PadicBall region_image(const MoebiusElement& g, const PadicBall& b);

/// Spec surface: image of an ordinary ball avoiding the pole of g.
/// Throws PoleInBall when the pole lies in b.
PadicBall ball_image(const MoebiusElement& g, const PadicBall& b);

struct SchottkyVerdict {
  bool good = false;
  std::string detail;  // empty for GoodPosition
};

/// Ping-pong sufficient condition: for every i, g_i maps the complement of
/// B_i^- into B_i^+ and g_i^-1 maps the complement of B_i^+ into B_i^-.
/// GoodPosition certifies the generated group free and discontinuous.
SchottkyVerdict schottky_ball_check(
    const std::vector<MoebiusElement>& generators,
    const std::vector<std::pair<PadicBall, PadicBall>>& domains);

}  // namespace mumford
