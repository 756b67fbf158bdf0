#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mumford/padic.hpp"

namespace mumford {

/// Monic invariant factors Q_1 | Q_2 | ... | Q_s; the last one is the minimal
/// polynomial and the product is the characteristic polynomial.
struct InvariantFactors {
  std::vector<RatPoly> factors;
  bool operator==(const InvariantFactors& o) const;
};

InvariantFactors invariant_factors(const PadicMatrix& m);

/// Companion matrix of a monic polynomial: subdiagonal ones, last column the
/// negated coefficients.
PadicMatrix companion_matrix(long prime, const RatPoly& monic);

struct RcfResult {
  InvariantFactors factors;
  PadicMatrix canonical;   // block diagonal companion matrices, Q_1 first
  PadicMatrix conjugator;  // P with P * M * P^-1 == canonical, exact
};
RcfResult rcf(const PadicMatrix& m);

struct IntegralConjugacyResult {
  bool yes = false;
  std::optional<PadicMatrix> integral_conjugate;  // the rational canonical form
  std::optional<PadicMatrix> conjugator;
  int offending_index = -1;       // coefficient index with negative valuation
  mpq_class offending_coeff = 0;  // its value
};
/// M is conjugate over the field to an integral matrix iff its characteristic
/// polynomial has integral coefficients; the witness is the RCF.
IntegralConjugacyResult integral_conjugacy(const PadicMatrix& m);

/// Diagonal entries of the p-adic Jordan form of an invertible 2x2 matrix with
/// split or slope-distinct spectrum, attracting (larger-norm) eigenvalue
/// first, to unit precision N.
std::pair<ApproxScalar, ApproxScalar> jordan_padic(const PadicMatrix& m, long N);

/// Exact rational or Hensel-lifted scalar, for classification outputs.
struct ScalarValue {
  bool exact = true;
  mpq_class rational = 0;
  ApproxScalar approx;
  std::string str() const;
};

/// Entry a + b * sqrt(disc) of the field the conjugator lives in; b = 0 in the
/// rational branch.
struct QuadEntry {
  mpq_class a = 0, b = 0;
};

/// Canonical pair (diag(t,-t), [[s,1],[c,-s]]) together with the trace shifts
/// and the (verified) conjugator of the traceless parts.
struct PairClassification {
  long prime = 0;
  long precision = 0;
  mpq_class shift_a = 0, shift_b = 0;  // tr A / 2, tr B / 2
  mpq_class t_squared = 0;             // always rational
  ScalarValue t, s;
  mpq_class c = 0;  // always rational
  bool conjugator_exact = true;        // false when t needed Hensel lifting
  std::vector<std::vector<QuadEntry>> conjugator;  // 2x2 over Q(sqrt t^2)
};

PairClassification pair_classify(const PadicMatrix& a, const PadicMatrix& b,
                                 long precision);

/// Solution space over Q of { X A_i = B_i X } as a basis of matrices.
std::vector<PadicMatrix> intertwiner_space(const std::vector<PadicMatrix>& a,
                                           const std::vector<PadicMatrix>& b);

/// Invertible element in the span of `space`: deterministic combinations
/// first, then seeded random ones.
std::optional<PadicMatrix> find_invertible_combination(
    const std::vector<PadicMatrix>& space, int random_tries = 256);

}  // namespace mumford
