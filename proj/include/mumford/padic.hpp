#pragma once

#include <gmpxx.h>

#include <compare>
#include <stdexcept>
#include <string>
#include <vector>

namespace mumford {

/// Error with a stable machine-readable code (mirrored into CLI reports).
struct DomainError : std::runtime_error {
  std::string code;
  DomainError(std::string c, const std::string& what)
      : std::runtime_error(c + ": " + what), code(std::move(c)) {}
};

/// Guard exhausted (depth / group order); CLI maps these to exit 3.
struct GuardError : DomainError {
  long required;  // the bound that would have sufficed, 0 if unknown
  GuardError(std::string c, const std::string& what, long req = 0)
      : DomainError(std::move(c), what), required(req) {}
};

/// p-adic valuation with v(0) = +infinity.
struct Valuation {
  bool finite = true;
  long v = 0;

  static Valuation inf() { return {false, 0}; }
  static Valuation of(long k) { return {true, k}; }

  bool operator==(const Valuation& o) const {
    return finite == o.finite && (!finite || v == o.v);
  }
  // infinity compares greater than every finite valuation
  bool operator<(const Valuation& o) const {
    if (!finite) return false;
    if (!o.finite) return true;
    return v < o.v;
  }
  bool operator<=(const Valuation& o) const { return *this < o || *this == o; }
  bool operator>=(const Valuation& o) const { return o <= *this; }

  Valuation operator+(const Valuation& o) const {
    if (!finite || !o.finite) return inf();
    return of(v + o.v);
  }
  std::string str() const { return finite ? std::to_string(v) : "inf"; }
};

/// |x| as an exact power of p: zero ? 0 : p^exp.  Never floating point.
struct PowerNorm {
  bool zero = false;
  long exp = 0;

  bool operator==(const PowerNorm& o) const {
    return zero == o.zero && (zero || exp == o.exp);
  }
  bool operator<(const PowerNorm& o) const {
    if (zero) return !o.zero;
    if (o.zero) return false;
    return exp < o.exp;
  }
  bool operator<=(const PowerNorm& o) const { return *this < o || *this == o; }

  static PowerNorm from_valuation(const Valuation& val) {
    return val.finite ? PowerNorm{false, -val.v} : PowerNorm{true, 0};
  }
  std::string str() const {
    if (zero) return "0";
    return "p^" + std::to_string(exp);
  }
};

long vp(const mpz_class& n, long p);  // valuation of a nonzero integer

/// Exact rational carrier viewed inside Q_p: numerator/denominator plus the
/// ambient prime.  All arithmetic is exact; p enters only through valuations.
class PadicScalar {
 public:
  PadicScalar(long prime, mpq_class value);
  PadicScalar(long prime, long value) : PadicScalar(prime, mpq_class(value)) {}

  long prime() const { return p_; }
  const mpq_class& value() const { return q_; }
  const mpz_class numerator() const { return q_.get_num(); }
  const mpz_class denominator() const { return q_.get_den(); }

  bool is_zero() const { return q_ == 0; }
  Valuation valuation() const;
  PowerNorm norm() const { return PowerNorm::from_valuation(valuation()); }
  bool is_integral() const { return valuation() >= Valuation::of(0); }
  bool is_unit() const { return valuation() == Valuation::of(0); }

  PadicScalar operator+(const PadicScalar& o) const;
  PadicScalar operator-(const PadicScalar& o) const;
  PadicScalar operator*(const PadicScalar& o) const;
  PadicScalar operator/(const PadicScalar& o) const;  // o nonzero
  PadicScalar operator-() const { return {p_, mpq_class(-q_)}; }
  bool operator==(const PadicScalar& o) const;

  std::string str() const { return q_.get_str(); }

 private:
  long p_;
  mpq_class q_;
};

/// Finite-precision p-adic number p^valuation * unit_residue, the unit part
/// known modulo p^precision (so the value is known modulo p^(valuation+precision)).
struct ApproxScalar {
  long prime = 0;
  long valuation = 0;
  mpz_class unit_residue;  // in [1, p^precision), coprime to p
  long precision = 0;

  /// value modulo p^(valuation+n), for 0 <= n <= precision; requires valuation >= 0
  mpz_class residue_mod(long n) const;
  std::string str() const;
};

/// (v(x), |x|), the valuation/norm pair.
std::pair<Valuation, PowerNorm> val_norm(const PadicScalar& x);

/// Image of a p-integral rational in Z/p^n, as an integer in [0, p^n).
mpz_class reduce_mod(const PadicScalar& x, long n);  // throws NotIntegral

mpz_class pow_p(long p, long n);  // p^n as an integer, n >= 0

/// Canonical square root of a (p odd, v(a) even, unit part a residue):
/// the root whose unit residue mod p lies in [1, (p-1)/2].
/// Squares back to a modulo p^(v(a)+N).
ApproxScalar hensel_sqrt(const PadicScalar& a, long N);

/// Dense polynomial over Q, coefficients low degree first.
using RatPoly = std::vector<mpq_class>;

int poly_degree(const RatPoly& f);  // -1 for the zero polynomial
void poly_trim(RatPoly& f);
RatPoly poly_add(const RatPoly& a, const RatPoly& b);
RatPoly poly_sub(const RatPoly& a, const RatPoly& b);
RatPoly poly_mul(const RatPoly& a, const RatPoly& b);
RatPoly poly_scale(const RatPoly& a, const mpq_class& c);
/// division with remainder, b != 0
std::pair<RatPoly, RatPoly> poly_divmod(const RatPoly& a, const RatPoly& b);
RatPoly poly_monic(const RatPoly& a);
RatPoly poly_gcd(const RatPoly& a, const RatPoly& b);  // monic gcd
bool poly_eq(const RatPoly& a, const RatPoly& b);
std::string poly_str(const RatPoly& f, const std::string& var = "X");

/// Slopes of the lower Newton polygon of a monic polynomial, ascending with
/// multiplicity; a root of valuation s contributes the slope s.  Roots equal
/// to zero are counted separately (their slope is +infinity).
struct NewtonSlopes {
  std::vector<mpq_class> slopes;
  int zero_roots = 0;
};
NewtonSlopes newton_slopes(long p, const RatPoly& monic);

/// Matrix over Q with an ambient prime; norm is the max of the entry norms.
class PadicMatrix {
 public:
  PadicMatrix(long prime, int rows, int cols);
  static PadicMatrix identity(long prime, int n);
  static PadicMatrix from_rows(long prime,
                               const std::vector<std::vector<mpq_class>>& rows);

  long prime() const { return p_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const mpq_class& at(int i, int j) const { return e_[i * cols_ + j]; }
  mpq_class& at(int i, int j) { return e_[i * cols_ + j]; }
  PadicScalar scalar_at(int i, int j) const { return {p_, at(i, j)}; }

  PadicMatrix operator+(const PadicMatrix& o) const;
  PadicMatrix operator-(const PadicMatrix& o) const;
  PadicMatrix operator*(const PadicMatrix& o) const;
  PadicMatrix operator*(const mpq_class& c) const;
  bool operator==(const PadicMatrix& o) const;

  mpq_class trace() const;
  mpq_class det() const;            // exact, fraction-free for small sizes
  PadicMatrix inverse() const;      // throws Singular
  PadicMatrix transpose() const;
  PadicMatrix kronecker(const PadicMatrix& o) const;
  PadicMatrix pow(long k) const;    // k may be negative (inverts first)

  bool is_integral() const;
  bool is_scalar() const;           // c * identity
  RatPoly char_poly() const;        // monic, exact (Faddeev-LeVerrier)

  std::string str() const;

 private:
  long p_;
  int rows_, cols_;
  std::vector<mpq_class> e_;
};

/// max_{i,j} |m_ij|; rows, cols >= 1 enforced at construction.
PowerNorm matrix_norm(const PadicMatrix& m);

/// minimum entry valuation (the norm is p^-min)
Valuation matrix_min_valuation(const PadicMatrix& m);

}  // namespace mumford
