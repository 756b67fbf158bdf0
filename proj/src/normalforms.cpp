#include "mumford/normalforms.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace mumford {

bool InvariantFactors::operator==(const InvariantFactors& o) const {
  if (factors.size() != o.factors.size()) return false;
  for (size_t i = 0; i < factors.size(); ++i)
    if (!poly_eq(factors[i], o.factors[i])) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Smith normal form over Q[X] for the characteristic matrix XI - M

using PolyMat = std::vector<std::vector<RatPoly>>;

static bool poly_is_zero(const RatPoly& f) { return poly_degree(f) < 0; }

InvariantFactors invariant_factors(const PadicMatrix& m) {
  if (m.rows() != m.cols())
    throw DomainError("ShapeMismatch", "invariant factors of non-square");
  int n = m.rows();
  PolyMat a(n, std::vector<RatPoly>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      RatPoly f{mpq_class(-m.at(i, j))};
      if (i == j) f.push_back(1);
      poly_trim(f);
      a[i][j] = f;
    }
  for (int t = 0; t < n; ++t) {
    // move a minimal-degree nonzero entry of the trailing block to (t,t)
    auto pick_pivot = [&]() -> bool {
      int bi = -1, bj = -1, bd = -1;
      for (int i = t; i < n; ++i)
        for (int j = t; j < n; ++j) {
          int d = poly_degree(a[i][j]);
          if (d >= 0 && (bd < 0 || d < bd)) {
            bd = d;
            bi = i;
            bj = j;
          }
        }
      if (bi < 0) return false;
      std::swap(a[bi], a[t]);
      for (int i = 0; i < n; ++i) std::swap(a[i][bj], a[i][t]);
      return true;
    };
    if (!pick_pivot()) continue;  // trailing block zero
    bool dirty = true;
    while (dirty) {
      dirty = false;
      // clear column t
      for (int i = t + 1; i < n; ++i) {
        if (poly_is_zero(a[i][t])) continue;
        auto [q, r] = poly_divmod(a[i][t], a[t][t]);
        for (int j = t; j < n; ++j)
          a[i][j] = poly_sub(a[i][j], poly_mul(q, a[t][j]));
        if (!poly_is_zero(a[i][t])) {
          std::swap(a[i], a[t]);
          dirty = true;
        }
      }
      // clear row t
      for (int j = t + 1; j < n; ++j) {
        if (poly_is_zero(a[t][j])) continue;
        auto [q, r] = poly_divmod(a[t][j], a[t][t]);
        for (int i = t; i < n; ++i)
          a[i][j] = poly_sub(a[i][j], poly_mul(q, a[i][t]));
        if (!poly_is_zero(a[t][j])) {
          for (int i = 0; i < n; ++i) std::swap(a[i][j], a[i][t]);
          dirty = true;
        }
      }
      if (dirty) continue;
      // pivot must divide the whole trailing block
      for (int i = t + 1; i < n && !dirty; ++i)
        for (int j = t + 1; j < n && !dirty; ++j) {
          auto [q, r] = poly_divmod(a[i][j], a[t][t]);
          if (!poly_is_zero(r)) {
            for (int k = t; k < n; ++k)
              a[t][k] = poly_add(a[t][k], a[i][k]);
            dirty = true;
          }
        }
    }
  }
  InvariantFactors out;
  for (int i = 0; i < n; ++i) {
    if (poly_is_zero(a[i][i]))
      throw DomainError("Internal", "Smith form produced a zero diagonal");
    RatPoly f = poly_monic(a[i][i]);
    if (poly_degree(f) >= 1) out.factors.push_back(f);
  }
  // sanity: divisibility chain and char poly product
  RatPoly prod{mpq_class(1)};
  for (size_t i = 0; i < out.factors.size(); ++i) {
    if (i + 1 < out.factors.size()) {
      auto [q, r] = poly_divmod(out.factors[i + 1], out.factors[i]);
      if (!poly_is_zero(r))
        throw DomainError("Internal", "invariant factor chain broken");
    }
    prod = poly_mul(prod, out.factors[i]);
  }
  if (!poly_eq(prod, m.char_poly()))
    throw DomainError("Internal", "invariant factors do not multiply to the "
                                  "characteristic polynomial");
  return out;
}

PadicMatrix companion_matrix(long prime, const RatPoly& monic) {
  int d = poly_degree(monic);
  if (d < 1 || monic[d] != 1)
    throw DomainError("BadInput", "companion matrix needs a monic polynomial");
  PadicMatrix c(prime, d, d);
  for (int i = 1; i < d; ++i) c.at(i, i - 1) = 1;
  for (int i = 0; i < d; ++i) c.at(i, d - 1) = -monic[i];
  return c;
}

std::vector<PadicMatrix> intertwiner_space(const std::vector<PadicMatrix>& a,
                                           const std::vector<PadicMatrix>& b) {
  if (a.empty() || a.size() != b.size())
    throw DomainError("ShapeMismatch", "intertwiner_space needs matched lists");
  long p = a[0].prime();
  int ra = a[0].rows(), rb = b[0].rows();
  // unknown X is rb x ra; equations X A_i - B_i X = 0
  int unknowns = ra * rb;
  std::vector<std::vector<mpq_class>> rows;
  for (size_t k = 0; k < a.size(); ++k) {
    if (a[k].rows() != ra || b[k].rows() != rb)
      throw DomainError("ShapeMismatch", "inconsistent matrix sizes");
    for (int i = 0; i < rb; ++i)
      for (int j = 0; j < ra; ++j) {
        std::vector<mpq_class> row(unknowns, 0);
        // (X A_k)_{ij} = sum_l X_{il} (A_k)_{lj}
        for (int l = 0; l < ra; ++l) row[i * ra + l] += a[k].at(l, j);
        // (B_k X)_{ij} = sum_l (B_k)_{il} X_{lj}
        for (int l = 0; l < rb; ++l) row[l * ra + j] -= b[k].at(i, l);
        rows.push_back(std::move(row));
      }
  }
  // exact nullspace by Gauss-Jordan
  int nr = static_cast<int>(rows.size());
  std::vector<int> pivot_col;
  int rank = 0;
  for (int col = 0; col < unknowns && rank < nr; ++col) {
    int piv = -1;
    for (int r = rank; r < nr; ++r)
      if (rows[r][col] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    std::swap(rows[piv], rows[rank]);
    mpq_class inv = 1 / rows[rank][col];
    for (auto& x : rows[rank]) x *= inv;
    for (int r = 0; r < nr; ++r) {
      if (r == rank || rows[r][col] == 0) continue;
      mpq_class f = rows[r][col];
      for (int c = col; c < unknowns; ++c) rows[r][c] -= f * rows[rank][c];
    }
    pivot_col.push_back(col);
    ++rank;
  }
  std::vector<bool> is_pivot(unknowns, false);
  for (int c : pivot_col) is_pivot[c] = true;
  std::vector<PadicMatrix> basis;
  for (int free_col = 0; free_col < unknowns; ++free_col) {
    if (is_pivot[free_col]) continue;
    PadicMatrix x(p, rb, ra);
    x.at(free_col / ra, free_col % ra) = 1;
    for (int r = 0; r < rank; ++r) {
      mpq_class v = -rows[r][free_col];
      if (v != 0) x.at(pivot_col[r] / ra, pivot_col[r] % ra) = v;
    }
    basis.push_back(x);
  }
  return basis;
}

std::optional<PadicMatrix> find_invertible_combination(
    const std::vector<PadicMatrix>& space, int random_tries) {
  if (space.empty()) return std::nullopt;
  for (const auto& m : space)
    if (m.rows() == m.cols() && m.det() != 0) return m;
  for (size_t i = 0; i < space.size(); ++i)
    for (size_t j = i + 1; j < space.size(); ++j) {
      PadicMatrix c = space[i] + space[j];
      if (c.rows() == c.cols() && c.det() != 0) return c;
    }
  std::mt19937 rng(0x5eed);
  std::uniform_int_distribution<int> coeff(-4, 4);
  for (int t = 0; t < random_tries; ++t) {
    PadicMatrix c(space[0].prime(), space[0].rows(), space[0].cols());
    for (const auto& m : space) c = c + m * mpq_class(coeff(rng));
    if (c.rows() == c.cols() && c.det() != 0) return c;
  }
  return std::nullopt;
}

RcfResult rcf(const PadicMatrix& m) {
  if (m.rows() != m.cols()) throw DomainError("ShapeMismatch", "rcf of non-square");
  InvariantFactors inv = invariant_factors(m);
  long p = m.prime();
  int n = m.rows();
  PadicMatrix canonical(p, n, n);
  int off = 0;
  for (const RatPoly& q : inv.factors) {
    PadicMatrix c = companion_matrix(p, q);
    for (int i = 0; i < c.rows(); ++i)
      for (int j = 0; j < c.cols(); ++j) canonical.at(off + i, off + j) = c.at(i, j);
    off += c.rows();
  }
  auto space = intertwiner_space({m}, {canonical});
  auto found = find_invertible_combination(space);
  if (!found)
    throw DomainError("Internal", "no invertible conjugator found for the RCF");
  PadicMatrix conj = *found;
  if (!(conj * m * conj.inverse() == canonical))
    throw DomainError("Internal", "RCF conjugation identity failed");
  return {std::move(inv), std::move(canonical), std::move(conj)};
}

IntegralConjugacyResult integral_conjugacy(const PadicMatrix& m) {
  RatPoly cp = m.char_poly();
  long p = m.prime();
  for (int i = 0; i <= poly_degree(cp); ++i) {
    PadicScalar c(p, cp[i]);
    if (!c.is_integral()) {
      IntegralConjugacyResult out;
      out.yes = false;
      out.offending_index = i;
      out.offending_coeff = cp[i];
      return out;
    }
  }
  RcfResult r = rcf(m);
  IntegralConjugacyResult out;
  out.yes = true;
  if (!r.canonical.is_integral())
    throw DomainError("Internal",
                      "RCF of an integrally-conjugate matrix not integral");
  out.integral_conjugate = r.canonical;
  out.conjugator = r.conjugator;
  return out;
}

// ---------------------------------------------------------------------------
// 2x2 Jordan forms over Q_p

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

static ApproxScalar approx_of_rational(long p, const mpq_class& x, long N) {
  if (x == 0) throw DomainError("Internal", "cannot approximate zero");
  PadicScalar s(p, x);
  long v = s.valuation().v;
  mpq_class unit = x;
  if (v >= 0)
    unit /= mpq_class(pow_p(p, v));
  else
    unit *= mpq_class(pow_p(p, -v));
  return {p, v, reduce_mod(PadicScalar(p, unit), N), N};
}

std::pair<ApproxScalar, ApproxScalar> jordan_padic(const PadicMatrix& m,
                                                   long N) {
  if (m.rows() != 2 || m.cols() != 2)
    throw DomainError("ShapeMismatch", "jordan_padic handles 2x2 matrices");
  if (N < 1) throw DomainError("BadInput", "precision must be >= 1");
  long p = m.prime();
  mpq_class t = m.trace(), d = m.det();
  if (d == 0) throw DomainError("Singular", "jordan_padic needs det != 0");
  mpq_class disc = t * t - 4 * d;
  auto root = rational_sqrt(disc);
  if (root) {
    mpq_class l1 = (t + *root) / 2, l2 = (t - *root) / 2;
    if (l1 == l2) {
      // double eigenvalue: semisimple only for scalar matrices
      PadicMatrix diff = m - PadicMatrix::identity(p, 2) * l1;
      bool zero = true;
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
          if (diff.at(i, j) != 0) zero = false;
      if (!zero)
        throw DomainError("NotSemisimple",
                          "double eigenvalue with a nontrivial Jordan block");
      return {approx_of_rational(p, l1, N), approx_of_rational(p, l2, N)};
    }
    PadicScalar s1(p, l1), s2(p, l2);
    if (s2.valuation() < s1.valuation()) std::swap(l1, l2);
    return {approx_of_rational(p, l1, N), approx_of_rational(p, l2, N)};
  }
  // irrational roots: need distinct Newton slopes, then Hensel/Newton lifting
  PadicScalar ts(p, t), ds(p, d);
  Valuation vt = ts.valuation(), vd = ds.valuation();
  if (!vt.finite || !(2 * vt.v < vd.v))
    throw DomainError("NotSplitOverBase",
                      "equal Newton slopes and no rational eigenvalue");
  long s_small = vt.v, s_big = vd.v - vt.v;
  // Newton iteration from x = t targets the small-valuation root
  mpq_class x = t;
  long target = s_small + s_big + N;  // v(f(x)) >= target
  auto fval = [&](const mpq_class& z) -> mpq_class { return z * z - t * z + d; };
  int iterations = 0;
  while (true) {
    mpq_class f = fval(x);
    if (f == 0) break;  // exact root cannot happen here (irrational), safety
    if (PadicScalar(p, f).valuation() >= Valuation::of(target)) break;
    mpq_class fprime = 2 * x - t;
    x = x - f / fprime;
    if (++iterations > 200)
      throw DomainError("Internal", "Newton iteration failed to converge");
  }
  mpq_class other = d / x;  // full relative precision for the big-slope root
  return {approx_of_rational(p, x, N), approx_of_rational(p, other, N)};
}

// ---------------------------------------------------------------------------
// generic 2x2 pair classification

std::string ScalarValue::str() const {
  return exact ? rational.get_str() : approx.str();
}

namespace {

// arithmetic in Q(sqrt(D)) for a fixed non-square rational D
struct Quad {
  mpq_class a = 0, b = 0;  // a + b sqrt(D)
};

struct QuadField {
  mpq_class D;
  Quad make(const mpq_class& a, const mpq_class& b = 0) const { return {a, b}; }
  Quad add(const Quad& x, const Quad& y) const { return {x.a + y.a, x.b + y.b}; }
  Quad sub(const Quad& x, const Quad& y) const { return {x.a - y.a, x.b - y.b}; }
  Quad mul(const Quad& x, const Quad& y) const {
    return {x.a * y.a + D * x.b * y.b, x.a * y.b + x.b * y.a};
  }
  Quad inv(const Quad& x) const {
    mpq_class norm = x.a * x.a - D * x.b * x.b;
    if (norm == 0)
      throw DomainError("Internal", "non-invertible element of Q(sqrt D)");
    return {x.a / norm, -x.b / norm};
  }
  bool is_zero(const Quad& x) const { return x.a == 0 && x.b == 0; }
  bool eq(const Quad& x, const Quad& y) const {
    return x.a == y.a && x.b == y.b;
  }
};

using QuadMat = std::vector<std::vector<Quad>>;

QuadMat qmul(const QuadField& F, const QuadMat& x, const QuadMat& y) {
  QuadMat r(2, std::vector<Quad>(2));
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      Quad s = F.make(0);
      for (int k = 0; k < 2; ++k) s = F.add(s, F.mul(x[i][k], y[k][j]));
      r[i][j] = s;
    }
  return r;
}

QuadMat qinv(const QuadField& F, const QuadMat& x) {
  Quad det = F.sub(F.mul(x[0][0], x[1][1]), F.mul(x[0][1], x[1][0]));
  Quad di = F.inv(det);
  QuadMat r(2, std::vector<Quad>(2));
  r[0][0] = F.mul(x[1][1], di);
  r[0][1] = F.mul(F.sub(F.make(0), x[0][1]), di);
  r[1][0] = F.mul(F.sub(F.make(0), x[1][0]), di);
  r[1][1] = F.mul(x[0][0], di);
  return r;
}

bool qeq(const QuadField& F, const QuadMat& x, const QuadMat& y) {
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      if (!F.eq(x[i][j], y[i][j])) return false;
  return true;
}

}  // namespace

PairClassification pair_classify(const PadicMatrix& a, const PadicMatrix& b,
                                 long precision) {
  if (a.rows() != 2 || a.cols() != 2 || b.rows() != 2 || b.cols() != 2)
    throw DomainError("ShapeMismatch", "pair_classify handles 2x2 pairs");
  if (a.prime() != b.prime())
    throw DomainError("PrimeMismatch", "pair over different primes");
  long p = a.prime();
  PairClassification out;
  out.prime = p;
  out.precision = precision;
  out.shift_a = a.trace() / 2;
  out.shift_b = b.trace() / 2;
  PadicMatrix ap = a - PadicMatrix::identity(p, 2) * out.shift_a;
  PadicMatrix bp = b - PadicMatrix::identity(p, 2) * out.shift_b;

  out.t_squared = (ap * ap).trace() / 2;
  if (out.t_squared == 0)
    throw DomainError("DegenerateT", "tr A'^2 = 0: A has no split traceless part");
  mpq_class trab = (ap * bp).trace();
  mpq_class trbb = (bp * bp).trace();
  // s = tr(A'B') / (2t), so s^2 = tr(A'B')^2 / (4 t^2) is rational
  mpq_class s_squared = trab * trab / (4 * out.t_squared);
  out.c = trbb / 2 - s_squared;
  if (out.c == 0)
    throw DomainError("DegenerateC", "c = 0: the pair is not generic "
                                     "(e.g. commuting traceless parts)");

  auto troot = rational_sqrt(out.t_squared);
  if (troot) {
    mpq_class tval = *troot;  // positive rational root preferred
    out.t = {true, tval, {}};
    out.s = {true, trab / (2 * tval), {}};
    out.conjugator_exact = true;
  } else {
    // p-adic square root: canonical-sign Hensel lift of t^2
    PadicScalar tsq(p, out.t_squared);
    if (p == 2)
      throw DomainError("SqrtUnavailable",
                        "t^2 is not a rational square and p = 2 "
                        "square roots are unsupported");
    ApproxScalar ta;
    try {
      ta = hensel_sqrt(tsq, precision);
    } catch (const DomainError& e) {
      throw DomainError("SqrtUnavailable",
                        "t^2 = " + out.t_squared.get_str() +
                            " is not a square in Q nor in Q_p (" + e.code + ")");
    }
    out.t = {false, 0, ta};
    // s = tr(A'B') / (2t) = (tr(A'B') / (2 t^2)) * t: pure sqrt(D) part;
    // numerically s = coeff * t
    mpq_class coeff = trab / (2 * out.t_squared);
    if (coeff == 0) {
      out.s = {true, 0, {}};
    } else {
      // multiply the approximate t by the exact rational coefficient
      PadicScalar cs(p, coeff);
      long cv = cs.valuation().v;
      mpq_class cunit = coeff;
      if (cv >= 0)
        cunit /= mpq_class(pow_p(p, cv));
      else
        cunit *= mpq_class(pow_p(p, -cv));
      mpz_class prod =
          (reduce_mod(PadicScalar(p, cunit), precision) * ta.unit_residue) %
          pow_p(p, precision);
      out.s = {false, 0, ApproxScalar{p, ta.valuation + cv, prod, precision}};
    }
    out.conjugator_exact = false;
  }

  // conjugator over F = Q (exact t) or Q(sqrt(t^2)); verify the conjugation
  QuadField F{out.t_squared};
  Quad t_sym = troot ? F.make(*troot) : F.make(0, 1);
  Quad s_sym = F.mul(F.make(trab / (2 * out.t_squared)), t_sym);
  mpq_class alpha = ap.at(0, 0), beta = ap.at(0, 1), gamma = ap.at(1, 0);
  QuadMat Q(2, std::vector<Quad>(2));
  if (beta != 0) {
    Q[0][0] = F.make(beta);
    Q[0][1] = F.make(beta);
    Q[1][0] = F.sub(t_sym, F.make(alpha));
    Q[1][1] = F.sub(F.make(0), F.add(t_sym, F.make(alpha)));
  } else if (gamma != 0) {
    Q[0][0] = F.add(t_sym, F.make(alpha));
    Q[0][1] = F.sub(F.make(alpha), t_sym);
    Q[1][0] = F.make(gamma);
    Q[1][1] = F.make(gamma);
  } else {
    // diagonal traceless part: alpha = +-t, rational branch by construction
    if (!troot)
      throw DomainError("Internal", "diagonal A' must have rational t");
    bool plus_first = alpha == *troot;
    Q[0][0] = F.make(plus_first ? 1 : 0);
    Q[0][1] = F.make(plus_first ? 0 : 1);
    Q[1][0] = F.make(plus_first ? 0 : 1);
    Q[1][1] = F.make(plus_first ? 1 : 0);
  }
  QuadMat bq(2, std::vector<Quad>(2));
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) bq[i][j] = F.make(bp.at(i, j));
  QuadMat btilde = qmul(F, qmul(F, qinv(F, Q), bq), Q);
  Quad u = btilde[0][1];
  if (F.is_zero(u))
    throw DomainError("Internal", "vanishing off-diagonal with c != 0");
  // rescale the second eigenvector by 1/u so the (0,1) entry becomes 1
  Quad uinv = F.inv(u);
  QuadMat Q2 = Q;
  Q2[0][1] = F.mul(Q2[0][1], uinv);
  Q2[1][1] = F.mul(Q2[1][1], uinv);
  QuadMat P = qinv(F, Q2);

  QuadMat aq(2, std::vector<Quad>(2));
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) aq[i][j] = F.make(ap.at(i, j));
  QuadMat canon_a(2, std::vector<Quad>(2));
  canon_a[0][0] = t_sym;
  canon_a[0][1] = F.make(0);
  canon_a[1][0] = F.make(0);
  canon_a[1][1] = F.sub(F.make(0), t_sym);
  QuadMat canon_b(2, std::vector<Quad>(2));
  canon_b[0][0] = s_sym;
  canon_b[0][1] = F.make(1);
  canon_b[1][0] = F.make(out.c);
  canon_b[1][1] = F.sub(F.make(0), s_sym);
  QuadMat Pinv = qinv(F, P);
  if (!qeq(F, qmul(F, qmul(F, P, aq), Pinv), canon_a) ||
      !qeq(F, qmul(F, qmul(F, P, bq), Pinv), canon_b))
    throw DomainError("Internal", "pair conjugation identity failed");

  out.conjugator.assign(2, std::vector<QuadEntry>(2));
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out.conjugator[i][j] = {P[i][j].a, P[i][j].b};
  return out;
}

}  // namespace mumford
