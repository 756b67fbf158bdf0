#include "mumford/padic.hpp"

#include <algorithm>
#include <sstream>

namespace mumford {

long vp(const mpz_class& n, long p) {
  if (n == 0) throw DomainError("Internal", "vp of zero");
  mpz_class rem;
  return static_cast<long>(
      mpz_remove(rem.get_mpz_t(), n.get_mpz_t(), mpz_class(p).get_mpz_t()));
}

mpz_class pow_p(long p, long n) {
  if (n < 0) throw DomainError("Internal", "pow_p with negative exponent");
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p),
                static_cast<unsigned long>(n));
  return r;
}

static void check_prime(long p) {
  if (p < 2) throw DomainError("BadPrime", "prime must be >= 2");
}

static void check_same_prime(long a, long b) {
  if (a != b)
    throw DomainError("PrimeMismatch", "operands live over different primes");
}

PadicScalar::PadicScalar(long prime, mpq_class value) : p_(prime), q_(value) {
  check_prime(prime);
  q_.canonicalize();
}

Valuation PadicScalar::valuation() const {
  if (q_ == 0) return Valuation::inf();
  return Valuation::of(vp(q_.get_num(), p_) - vp(q_.get_den(), p_));
}

PadicScalar PadicScalar::operator+(const PadicScalar& o) const {
  check_same_prime(p_, o.p_);
  return {p_, mpq_class(q_ + o.q_)};
}
PadicScalar PadicScalar::operator-(const PadicScalar& o) const {
  check_same_prime(p_, o.p_);
  return {p_, mpq_class(q_ - o.q_)};
}
PadicScalar PadicScalar::operator*(const PadicScalar& o) const {
  check_same_prime(p_, o.p_);
  return {p_, mpq_class(q_ * o.q_)};
}
PadicScalar PadicScalar::operator/(const PadicScalar& o) const {
  check_same_prime(p_, o.p_);
  if (o.q_ == 0) throw DomainError("DivisionByZero", "scalar division by zero");
  return {p_, mpq_class(q_ / o.q_)};
}
bool PadicScalar::operator==(const PadicScalar& o) const {
  return p_ == o.p_ && q_ == o.q_;
}

std::pair<Valuation, PowerNorm> val_norm(const PadicScalar& x) {
  Valuation v = x.valuation();
  return {v, PowerNorm::from_valuation(v)};
}

mpz_class reduce_mod(const PadicScalar& x, long n) {
  if (n < 1) throw DomainError("BadInput", "reduce_mod needs n >= 1");
  if (!(x.valuation() >= Valuation::of(0)))
    throw DomainError("NotIntegral",
                      "reduce_mod: negative valuation at " + x.str());
  mpz_class pn = pow_p(x.prime(), n);
  mpz_class num = x.numerator() % pn;
  if (num < 0) num += pn;
  mpz_class den = x.denominator() % pn;
  mpz_class inv;
  if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), pn.get_mpz_t()) == 0)
    throw DomainError("Internal", "denominator not invertible mod p^n");
  mpz_class r = (num * inv) % pn;
  if (r < 0) r += pn;
  return r;
}

mpz_class ApproxScalar::residue_mod(long n) const {
  if (valuation < 0)
    throw DomainError("NotIntegral", "approx scalar has negative valuation");
  if (n < 0 || n > valuation + precision)
    throw DomainError("BadInput", "requested precision not available");
  mpz_class pn = pow_p(prime, n);
  mpz_class r = (pow_p(prime, valuation) * unit_residue) % pn;
  return r;
}

std::string ApproxScalar::str() const {
  std::ostringstream os;
  os << "p^" << valuation << "*" << unit_residue.get_str() << " (mod p^"
     << valuation + precision << ")";
  return os.str();
}

// square root of a quadratic residue mod an odd prime (Tonelli-Shanks)
static mpz_class sqrt_mod_p(const mpz_class& a, long p) {
  mpz_class P(p);
  mpz_class a0 = a % P;
  if (a0 < 0) a0 += P;
  if (a0 == 0) return 0;
  if (p % 4 == 3) {
    mpz_class r;
    mpz_class e = (P + 1) / 4;
    mpz_powm(r.get_mpz_t(), a0.get_mpz_t(), e.get_mpz_t(), P.get_mpz_t());
    return r;
  }
  // write p-1 = q * 2^s with q odd
  mpz_class q = P - 1;
  unsigned long s = 0;
  while (mpz_even_p(q.get_mpz_t())) {
    q >>= 1;
    ++s;
  }
  // find a non-residue z
  mpz_class z = 2;
  auto legendre = [&](const mpz_class& x) {
    mpz_class r, e = (P - 1) / 2;
    mpz_powm(r.get_mpz_t(), x.get_mpz_t(), e.get_mpz_t(), P.get_mpz_t());
    return r;
  };
  while (legendre(z) == 1) ++z;
  mpz_class m(s), c, t, r;
  mpz_powm(c.get_mpz_t(), z.get_mpz_t(), q.get_mpz_t(), P.get_mpz_t());
  mpz_powm(t.get_mpz_t(), a0.get_mpz_t(), q.get_mpz_t(), P.get_mpz_t());
  mpz_class e = (q + 1) / 2;
  mpz_powm(r.get_mpz_t(), a0.get_mpz_t(), e.get_mpz_t(), P.get_mpz_t());
  while (t != 1) {
    mpz_class tt = t;
    long i = 0;
    while (tt != 1) {
      mpz_powm_ui(tt.get_mpz_t(), tt.get_mpz_t(), 2, P.get_mpz_t());
      ++i;
    }
    mpz_class b = c;
    for (long j = 0; j < m.get_si() - i - 1; ++j)
      mpz_powm_ui(b.get_mpz_t(), b.get_mpz_t(), 2, P.get_mpz_t());
    m = i;
    c = (b * b) % P;
    t = (t * c) % P;
    r = (r * b) % P;
  }
  return r;
}

ApproxScalar hensel_sqrt(const PadicScalar& a, long N) {
  long p = a.prime();
  if (p == 2)
    throw DomainError("EvenPrimeUnsupported", "hensel_sqrt requires p odd");
  if (N < 1) throw DomainError("BadInput", "precision must be >= 1");
  if (a.is_zero()) throw DomainError("BadInput", "hensel_sqrt of zero");
  long v = a.valuation().v;
  if (v % 2 != 0)
    throw DomainError("OddValuation",
                      "valuation " + std::to_string(v) + " is odd");
  // unit part u = a / p^v, then its residue mod p^N
  mpq_class u = a.value();
  if (v >= 0)
    u /= mpq_class(pow_p(p, v));
  else
    u *= mpq_class(pow_p(p, -v));
  mpz_class uN = reduce_mod(PadicScalar(p, u), N);
  mpz_class u1 = uN % p;
  // Euler criterion on the unit residue
  mpz_class P(p), leg, e = (P - 1) / 2;
  mpz_powm(leg.get_mpz_t(), u1.get_mpz_t(), e.get_mpz_t(), P.get_mpz_t());
  if (leg != 1)
    throw DomainError("NonResidue",
                      "unit part " + u1.get_str() + " is not a square mod p");
  // root mod p, then Newton lifting with doubling precision
  mpz_class x = sqrt_mod_p(u1, p);
  long prec = 1;
  while (prec < N) {
    long next = std::min(2 * prec, N);
    mpz_class mod = pow_p(p, next);
    mpz_class ux = reduce_mod(PadicScalar(p, u), next);
    mpz_class inv2x;
    mpz_class twox = (2 * x) % mod;
    if (mpz_invert(inv2x.get_mpz_t(), twox.get_mpz_t(), mod.get_mpz_t()) == 0)
      throw DomainError("Internal", "hensel_sqrt: derivative not invertible");
    x = (x - (x * x - ux) * inv2x) % mod;
    if (x < 0) x += mod;
    prec = next;
  }
  // canonical sign: residue mod p in [1, (p-1)/2]
  mpz_class pN = pow_p(p, N);
  if (x % p > (p - 1) / 2) x = pN - x;
  return ApproxScalar{p, v / 2, x, N};
}

// ---------------------------------------------------------------------------
// polynomials

int poly_degree(const RatPoly& f) {
  for (int i = static_cast<int>(f.size()) - 1; i >= 0; --i)
    if (f[i] != 0) return i;
  return -1;
}

void poly_trim(RatPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

RatPoly poly_add(const RatPoly& a, const RatPoly& b) {
  RatPoly r(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  poly_trim(r);
  return r;
}

RatPoly poly_sub(const RatPoly& a, const RatPoly& b) {
  RatPoly r(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  poly_trim(r);
  return r;
}

RatPoly poly_mul(const RatPoly& a, const RatPoly& b) {
  if (poly_degree(a) < 0 || poly_degree(b) < 0) return {};
  RatPoly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  poly_trim(r);
  return r;
}

RatPoly poly_scale(const RatPoly& a, const mpq_class& c) {
  RatPoly r = a;
  for (auto& x : r) x *= c;
  poly_trim(r);
  return r;
}

std::pair<RatPoly, RatPoly> poly_divmod(const RatPoly& a, const RatPoly& b) {
  int db = poly_degree(b);
  if (db < 0) throw DomainError("DivisionByZero", "polynomial division by zero");
  RatPoly rem = a;
  poly_trim(rem);
  int da = poly_degree(rem);
  if (da < db) return {{}, rem};
  RatPoly quot(da - db + 1, 0);
  while ((da = poly_degree(rem)) >= db) {
    mpq_class c = rem[da] / b[db];
    quot[da - db] = c;
    for (int i = 0; i <= db; ++i) rem[da - db + i] -= c * b[i];
    poly_trim(rem);
  }
  return {quot, rem};
}

RatPoly poly_monic(const RatPoly& a) {
  int d = poly_degree(a);
  if (d < 0) return {};
  return poly_scale(a, 1 / mpq_class(a[d]));
}

RatPoly poly_gcd(const RatPoly& a, const RatPoly& b) {
  RatPoly x = a, y = b;
  poly_trim(x);
  poly_trim(y);
  while (poly_degree(y) >= 0) {
    auto [q, r] = poly_divmod(x, y);
    x = y;
    y = r;
  }
  return poly_monic(x);
}

bool poly_eq(const RatPoly& a, const RatPoly& b) {
  RatPoly x = a, y = b;
  poly_trim(x);
  poly_trim(y);
  return x == y;
}

std::string poly_str(const RatPoly& f, const std::string& var) {
  int d = poly_degree(f);
  if (d < 0) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = d; i >= 0; --i) {
    if (f[i] == 0) continue;
    mpq_class c = f[i];
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    mpq_class ac = abs(c);
    if (i == 0 || ac != 1) os << ac.get_str();
    if (i > 0) {
      if (ac != 1) os << "*";
      os << var;
      if (i > 1) os << "^" << i;
    }
    first = false;
  }
  return os.str();
}

NewtonSlopes newton_slopes(long p, const RatPoly& f) {
  int n = poly_degree(f);
  if (n < 1) throw DomainError("BadInput", "newton_slopes: degree must be >= 1");
  if (f[n] != 1) throw DomainError("BadInput", "newton_slopes: not monic");
  NewtonSlopes out;
  int lo = 0;
  while (f[lo] == 0) ++lo;
  out.zero_roots = lo;
  // lower convex hull of (i, v(f_i)) for lo <= i <= n, f_i != 0
  std::vector<std::pair<long, mpq_class>> pts;  // (index, valuation)
  for (int i = lo; i <= n; ++i) {
    if (f[i] == 0) continue;
    PadicScalar c(p, f[i]);
    pts.emplace_back(i, mpq_class(c.valuation().v));
  }
  std::vector<std::pair<long, mpq_class>> hull;
  for (auto& pt : pts) {
    while (hull.size() >= 2) {
      auto& a = hull[hull.size() - 2];
      auto& b = hull[hull.size() - 1];
      // keep b only if it lies strictly below segment a->pt
      mpq_class lhs = (b.second - a.second) * (pt.first - a.first);
      mpq_class rhs = (pt.second - a.second) * (b.first - a.first);
      if (lhs < rhs) break;
      hull.pop_back();
    }
    hull.push_back(pt);
  }
  for (size_t k = 0; k + 1 < hull.size(); ++k) {
    long run = hull[k + 1].first - hull[k].first;
    mpq_class slope = (hull[k].second - hull[k + 1].second) / run;
    for (long j = 0; j < run; ++j) out.slopes.push_back(slope);
  }
  std::sort(out.slopes.begin(), out.slopes.end());
  return out;
}

// ---------------------------------------------------------------------------
// matrices

PadicMatrix::PadicMatrix(long prime, int rows, int cols)
    : p_(prime), rows_(rows), cols_(cols), e_(rows * cols, 0) {
  check_prime(prime);
  if (rows < 1 || cols < 1)
    throw DomainError("BadInput", "matrix dimensions must be >= 1");
}

PadicMatrix PadicMatrix::identity(long prime, int n) {
  PadicMatrix m(prime, n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

PadicMatrix PadicMatrix::from_rows(
    long prime, const std::vector<std::vector<mpq_class>>& rows) {
  if (rows.empty() || rows[0].empty())
    throw DomainError("BadInput", "matrix dimensions must be >= 1");
  PadicMatrix m(prime, static_cast<int>(rows.size()),
                static_cast<int>(rows[0].size()));
  for (int i = 0; i < m.rows(); ++i) {
    if (static_cast<int>(rows[i].size()) != m.cols())
      throw DomainError("BadInput", "ragged matrix rows");
    for (int j = 0; j < m.cols(); ++j) m.at(i, j) = rows[i][j];
  }
  return m;
}

PadicMatrix PadicMatrix::operator+(const PadicMatrix& o) const {
  check_same_prime(p_, o.p_);
  if (rows_ != o.rows_ || cols_ != o.cols_)
    throw DomainError("ShapeMismatch", "matrix addition shapes differ");
  PadicMatrix r(p_, rows_, cols_);
  for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] + o.e_[i];
  return r;
}

PadicMatrix PadicMatrix::operator-(const PadicMatrix& o) const {
  check_same_prime(p_, o.p_);
  if (rows_ != o.rows_ || cols_ != o.cols_)
    throw DomainError("ShapeMismatch", "matrix subtraction shapes differ");
  PadicMatrix r(p_, rows_, cols_);
  for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] - o.e_[i];
  return r;
}

PadicMatrix PadicMatrix::operator*(const PadicMatrix& o) const {
  check_same_prime(p_, o.p_);
  if (cols_ != o.rows_)
    throw DomainError("ShapeMismatch", "matrix product shapes differ");
  PadicMatrix r(p_, rows_, o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const mpq_class& a = at(i, k);
      if (a == 0) continue;
      for (int j = 0; j < o.cols_; ++j) r.at(i, j) += a * o.at(k, j);
    }
  return r;
}

PadicMatrix PadicMatrix::operator*(const mpq_class& c) const {
  PadicMatrix r = *this;
  for (auto& x : r.e_) x *= c;
  return r;
}

bool PadicMatrix::operator==(const PadicMatrix& o) const {
  return p_ == o.p_ && rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
}

mpq_class PadicMatrix::trace() const {
  if (rows_ != cols_) throw DomainError("ShapeMismatch", "trace of non-square");
  mpq_class t = 0;
  for (int i = 0; i < rows_; ++i) t += at(i, i);
  return t;
}

mpq_class PadicMatrix::det() const {
  if (rows_ != cols_) throw DomainError("ShapeMismatch", "det of non-square");
  // Gaussian elimination over Q
  std::vector<mpq_class> a = e_;
  int n = rows_;
  mpq_class d = 1;
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int r = col; r < n; ++r)
      if (a[r * n + col] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) return 0;
    if (piv != col) {
      for (int j = 0; j < n; ++j) std::swap(a[piv * n + j], a[col * n + j]);
      d = -d;
    }
    d *= a[col * n + col];
    mpq_class inv = 1 / a[col * n + col];
    for (int r = col + 1; r < n; ++r) {
      mpq_class f = a[r * n + col] * inv;
      if (f == 0) continue;
      for (int j = col; j < n; ++j) a[r * n + j] -= f * a[col * n + j];
    }
  }
  return d;
}

PadicMatrix PadicMatrix::inverse() const {
  if (rows_ != cols_)
    throw DomainError("ShapeMismatch", "inverse of non-square");
  int n = rows_;
  std::vector<mpq_class> a = e_;
  PadicMatrix inv = identity(p_, n);
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int r = col; r < n; ++r)
      if (a[r * n + col] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) throw DomainError("Singular", "matrix is not invertible");
    if (piv != col)
      for (int j = 0; j < n; ++j) {
        std::swap(a[piv * n + j], a[col * n + j]);
        std::swap(inv.at(piv, j), inv.at(col, j));
      }
    mpq_class s = 1 / a[col * n + col];
    for (int j = 0; j < n; ++j) {
      a[col * n + j] *= s;
      inv.at(col, j) *= s;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col || a[r * n + col] == 0) continue;
      mpq_class f = a[r * n + col];
      for (int j = 0; j < n; ++j) {
        a[r * n + j] -= f * a[col * n + j];
        inv.at(r, j) -= f * inv.at(col, j);
      }
    }
  }
  return inv;
}

PadicMatrix PadicMatrix::transpose() const {
  PadicMatrix r(p_, cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
  return r;
}

PadicMatrix PadicMatrix::kronecker(const PadicMatrix& o) const {
  check_same_prime(p_, o.p_);
  PadicMatrix r(p_, rows_ * o.rows_, cols_ * o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) {
      if (at(i, j) == 0) continue;
      for (int k = 0; k < o.rows_; ++k)
        for (int l = 0; l < o.cols_; ++l)
          r.at(i * o.rows_ + k, j * o.cols_ + l) = at(i, j) * o.at(k, l);
    }
  return r;
}

PadicMatrix PadicMatrix::pow(long k) const {
  if (rows_ != cols_) throw DomainError("ShapeMismatch", "pow of non-square");
  PadicMatrix base = k >= 0 ? *this : inverse();
  unsigned long e = k >= 0 ? k : -k;
  PadicMatrix r = identity(p_, rows_);
  while (e) {
    if (e & 1) r = r * base;
    base = base * base;
    e >>= 1;
  }
  return r;
}

bool PadicMatrix::is_integral() const {
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j)
      if (!scalar_at(i, j).is_integral()) return false;
  return true;
}

bool PadicMatrix::is_scalar() const {
  if (rows_ != cols_) return false;
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j)
      if (i != j ? at(i, j) != 0 : at(i, j) != at(0, 0)) return false;
  return true;
}

RatPoly PadicMatrix::char_poly() const {
  if (rows_ != cols_)
    throw DomainError("ShapeMismatch", "char_poly of non-square");
  // Faddeev-LeVerrier: exact over Q
  int n = rows_;
  RatPoly c(n + 1, 0);
  c[n] = 1;
  PadicMatrix Mk = identity(p_, n);
  for (int k = 1; k <= n; ++k) {
    Mk = *this * Mk;
    mpq_class ck = -Mk.trace() / k;
    c[n - k] = ck;
    for (int i = 0; i < n; ++i) Mk.at(i, i) += ck;
  }
  return c;
}

std::string PadicMatrix::str() const {
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < rows_; ++i) {
    os << "[";
    for (int j = 0; j < cols_; ++j)
      os << at(i, j).get_str() << (j + 1 < cols_ ? ", " : "");
    os << "]" << (i + 1 < rows_ ? ", " : "");
  }
  os << "]";
  return os.str();
}

PowerNorm matrix_norm(const PadicMatrix& m) {
  return PowerNorm::from_valuation(matrix_min_valuation(m));
}

Valuation matrix_min_valuation(const PadicMatrix& m) {
  Valuation best = Valuation::inf();
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) {
      Valuation v = m.scalar_at(i, j).valuation();
      if (v < best) best = v;
    }
  return best;
}

}  // namespace mumford
