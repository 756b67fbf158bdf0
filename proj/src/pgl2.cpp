#include "mumford/pgl2.hpp"

#include <sstream>

namespace mumford {

bool proj_equal(const ProjPoint& a, const ProjPoint& b) {
  // (x1:y1) == (x2:y2)  iff  x1*y2 == x2*y1, with the all-zero pair excluded
  return (a.x * b.y) == (b.x * a.y);
}

MoebiusElement::MoebiusElement(PadicMatrix m) : m_(std::move(m)) {
  if (m_.rows() != 2 || m_.cols() != 2)
    throw DomainError("ShapeMismatch", "Moebius element needs a 2x2 matrix");
  if (m_.det() == 0)
    throw DomainError("Singular", "Moebius element must be invertible");
}

MoebiusElement MoebiusElement::diag(long prime, const mpq_class& a,
                                    const mpq_class& b) {
  return MoebiusElement(PadicMatrix::from_rows(prime, {{a, 0}, {0, b}}));
}

bool MoebiusElement::proj_equals(const MoebiusElement& o) const {
  // m = c * o.m for some scalar c: all 2x2 cross products vanish
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l)
          if (m_.at(i, j) * o.m_.at(k, l) != m_.at(k, l) * o.m_.at(i, j))
            return false;
  return true;
}

ProjPoint MoebiusElement::apply(const ProjPoint& pt) const {
  PadicScalar x = pt.x.prime() == prime()
                      ? pt.x
                      : throw DomainError("PrimeMismatch", "point vs element");
  PadicScalar nx = m_.scalar_at(0, 0) * x + m_.scalar_at(0, 1) * pt.y;
  PadicScalar ny = m_.scalar_at(1, 0) * x + m_.scalar_at(1, 1) * pt.y;
  return {nx, ny};
}

PadicScalar MoebiusElement::apply_affine(const PadicScalar& z) const {
  PadicScalar num = m_.scalar_at(0, 0) * z + m_.scalar_at(0, 1);
  PadicScalar den = m_.scalar_at(1, 0) * z + m_.scalar_at(1, 1);
  if (den.is_zero())
    throw DomainError("PoleInBall", "Moebius map evaluated at its pole");
  return num / den;
}

Classification classify(const MoebiusElement& g) {
  PadicScalar tr(g.prime(), g.matrix().trace());
  PadicScalar det(g.prime(), g.matrix().det());
  Valuation vt = tr.valuation();
  Valuation vd = det.valuation();
  if (vt.finite && 2 * vt.v < vd.v)
    return {ElementClass::Hyperbolic, vd.v - 2 * vt.v};
  // single eigenvalue iff tr^2 - 4 det = 0
  mpq_class disc = tr.value() * tr.value() - 4 * det.value();
  if (disc == 0) return {ElementClass::Parabolic, 0};
  return {ElementClass::EllipticOrFiniteOrder, 0};
}

// exact square root of a rational if it is one
static std::optional<mpq_class> rational_sqrt(const mpq_class& q) {
  if (q < 0) return std::nullopt;
  if (q == 0) return mpq_class(0);
  mpz_class num = q.get_num(), den = q.get_den();
  if (mpz_perfect_square_p(num.get_mpz_t()) == 0 ||
      mpz_perfect_square_p(den.get_mpz_t()) == 0)
    return std::nullopt;
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
  return mpq_class(rn) / mpq_class(rd);
}

std::pair<ProjPoint, ProjPoint> fixed_points(const MoebiusElement& g) {
  if (classify(g).kind != ElementClass::Hyperbolic)
    throw DomainError("NotHyperbolic", "fixed_points requires a hyperbolic element");
  long p = g.prime();
  mpq_class t = g.matrix().trace(), d = g.matrix().det();
  mpq_class disc = t * t - 4 * d;
  auto r = rational_sqrt(disc);
  if (!r)
    throw DomainError("IrrationalFixedPoints",
                      "eigenvalues lie in a quadratic extension of Q; "
                      "no exact projective fixed points over the base field");
  mpq_class l1 = (t + *r) / 2, l2 = (t - *r) / 2;
  // attracting eigenvector belongs to the larger-norm (smaller-valuation) one
  PadicScalar s1(p, l1), s2(p, l2);
  if (s2.valuation() < s1.valuation()) std::swap(l1, l2);
  auto eigvec = [&](const mpq_class& lam) -> ProjPoint {
    const PadicMatrix& m = g.matrix();
    if (m.at(0, 1) != 0)
      return {PadicScalar(p, m.at(0, 1)), PadicScalar(p, lam - m.at(0, 0))};
    if (m.at(1, 0) != 0)
      return {PadicScalar(p, lam - m.at(1, 1)), PadicScalar(p, m.at(1, 0))};
    // diagonal matrix
    if (lam == m.at(0, 0)) return {PadicScalar(p, 1), PadicScalar(p, 0)};
    return {PadicScalar(p, 0), PadicScalar(p, 1)};
  };
  return {eigvec(l1), eigvec(l2)};
}

std::vector<MoebiusElement> tate_group(const PadicScalar& q) {
  if (q.is_zero() || !(Valuation::of(1) <= q.valuation()))
    throw DomainError("BadMultiplier",
                      "Tate multiplier needs 0 < |q| < 1, got " + q.str());
  return {MoebiusElement::diag(q.prime(), q.value(), 1)};
}

std::vector<MoebiusElement> whittaker_group(
    const std::vector<MoebiusElement>& involutions) {
  if (involutions.size() < 2)
    throw DomainError("BadInput", "whittaker_group needs g+1 >= 2 involutions");
  for (const auto& s : involutions) {
    PadicMatrix sq = s.matrix() * s.matrix();
    if (!sq.is_scalar() || s.matrix().is_scalar())
      throw DomainError("NotInvolution",
                        "generator is not of order 2 in PGL2: " +
                            s.matrix().str());
  }
  std::vector<MoebiusElement> gens;
  for (size_t i = 1; i < involutions.size(); ++i)
    gens.push_back(involutions[i] * involutions[0]);
  return gens;
}

// ---------------------------------------------------------------------------
// disk regions

PadicBall ball_complement(const PadicBall& b) {
  //   comp {<= r} = {> r} u inf      comp {< r} = {>= r} u inf
  return {b.center, b.radius_exp, !b.complement, !b.closed};
}

bool ball_member(const PadicBall& b, const PadicScalar& z) {
  Valuation v = (z - b.center).valuation();
  long k = b.radius_exp;
  if (!b.complement)
    return b.closed ? v >= Valuation::of(k) : v >= Valuation::of(k + 1);
  return b.closed ? v <= Valuation::of(k) : v <= Valuation::of(k - 1);
}

bool ball_member_infinity(const PadicBall& b) { return b.complement; }

// ordinary-ball containment over C_p (value group dense, centers rational)
static bool ball_in_ball(const PadicBall& a, const PadicBall& b) {
  // radius condition
  if (a.closed && !b.closed) {
    if (!(a.radius_exp > b.radius_exp)) return false;
  } else {
    if (!(a.radius_exp >= b.radius_exp)) return false;
  }
  // center of a inside b
  Valuation d = (a.center - b.center).valuation();
  return b.closed ? d >= Valuation::of(b.radius_exp)
                  : d >= Valuation::of(b.radius_exp + 1);
}

static bool balls_disjoint_plain(const PadicBall& a, const PadicBall& b) {
  // two disks meet iff the smaller's center lies in the larger
  const PadicBall* big = &a;
  const PadicBall* small = &b;
  if (a.radius_exp > b.radius_exp ||
      (a.radius_exp == b.radius_exp && !a.closed && b.closed)) {
    big = &b;
    small = &a;
  }
  return !ball_member(*big, small->center);
}

bool ball_subset(const PadicBall& a, const PadicBall& b) {
  if (!a.complement && !b.complement) return ball_in_ball(a, b);
  if (!a.complement && b.complement)
    return ball_disjoint(a, ball_complement(b));
  if (a.complement && !b.complement) return false;  // inf in a only
  return ball_subset(ball_complement(b), ball_complement(a));
}

bool ball_disjoint(const PadicBall& a, const PadicBall& b) {
  if (!a.complement && !b.complement) return balls_disjoint_plain(a, b);
  if (!a.complement && b.complement)
    return ball_in_ball(a, ball_complement(b));
  if (a.complement && !b.complement) return ball_disjoint(b, a);
  return false;  // both contain inf
}

// image of an ordinary ball whose pole constraint is already resolved
static PadicBall image_ball_pole_outside(const MoebiusElement& g,
                                         const PadicBall& b) {
  long p = g.prime();
  const PadicMatrix& m = g.matrix();
  PadicScalar c2 = m.scalar_at(1, 0), d = m.scalar_at(1, 1);
  PadicScalar denom = c2 * b.center + d;  // c*z0 + d
  PadicScalar det(p, m.det());
  long exp = b.radius_exp + det.valuation().v - 2 * denom.valuation().v;
  return {g.apply_affine(b.center), exp, false, b.closed};
}

PadicBall region_image(const MoebiusElement& g, const PadicBall& b) {
  if (b.complement)
    return ball_complement(region_image(g, ball_complement(b)));
  const PadicMatrix& m = g.matrix();
  long p = g.prime();
  if (m.at(1, 0) == 0) return image_ball_pole_outside(g, b);  // affine map
  PadicScalar pole = PadicScalar(p, -m.at(1, 1)) / m.scalar_at(1, 0);
  if (!ball_member(b, pole)) return image_ball_pole_outside(g, b);
  // pole inside: P1 \ b is psi(ball at 0), push that through g*psi and
  // complement the result
  PadicBall wball{PadicScalar(p, 0), -b.radius_exp, false, !b.closed};
  PadicMatrix psi = PadicMatrix::from_rows(
      p, {{b.center.value(), 1}, {1, 0}});  // w -> center + 1/w
  PadicBall outside_image =
      image_ball_pole_outside(MoebiusElement(m * psi), wball);
  return ball_complement(outside_image);
}

PadicBall ball_image(const MoebiusElement& g, const PadicBall& b) {
  if (b.complement)
    throw DomainError("BadInput", "ball_image expects an ordinary ball");
  const PadicMatrix& m = g.matrix();
  if (m.at(1, 0) != 0) {
    PadicScalar pole =
        PadicScalar(g.prime(), -m.at(1, 1)) / m.scalar_at(1, 0);
    if (ball_member(b, pole))
      throw DomainError("PoleInBall", "pole of the map lies in the ball");
  }
  return region_image(g, b);
}

static std::string ball_str(const PadicBall& b) {
  std::ostringstream os;
  os << "{|z - (" << b.center.str() << ")| " << (b.complement ? ">" : "<")
     << (b.closed ? "= " : " ") << "p^" << -b.radius_exp << "}";
  return os.str();
}

SchottkyVerdict schottky_ball_check(
    const std::vector<MoebiusElement>& generators,
    const std::vector<std::pair<PadicBall, PadicBall>>& domains) {
  if (generators.size() != domains.size() || generators.empty())
    throw DomainError("ShapeMismatch",
                      "need one (B-, B+) pair per generator");
  std::vector<PadicBall> all;
  for (auto& [bm, bp] : domains) {
    all.push_back(bm);
    all.push_back(bp);
  }
  for (size_t i = 0; i < all.size(); ++i)
    for (size_t j = i + 1; j < all.size(); ++j)
      if (!ball_disjoint(all[i], all[j]))
        throw DomainError("BallsNotDisjoint",
                          ball_str(all[i]) + " meets " + ball_str(all[j]));
  for (size_t i = 0; i < generators.size(); ++i) {
    const auto& [bminus, bplus] = domains[i];
    PadicBall out_minus = region_image(generators[i], ball_complement(bminus));
    if (!ball_subset(out_minus, bplus)) {
      std::ostringstream os;
      os << "generator " << i << " maps the complement of B- to "
         << ball_str(out_minus) << ", not inside " << ball_str(bplus);
      return {false, os.str()};
    }
    PadicBall out_plus =
        region_image(generators[i].inverse(), ball_complement(bplus));
    if (!ball_subset(out_plus, bminus)) {
      std::ostringstream os;
      os << "generator " << i << " inverse maps the complement of B+ to "
         << ball_str(out_plus) << ", not inside " << ball_str(bminus);
      return {false, os.str()};
    }
  }
  return {true, ""};
}

}  // namespace mumford
