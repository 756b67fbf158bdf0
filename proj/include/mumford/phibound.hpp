#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mumford/padic.hpp"
#include "mumford/redgraph.hpp"

namespace mumford {

/// rho: Gamma -> GL_r given by the images of the free_basis generators.
struct Representation {
  long prime = 0;
  int rank = 0;
  std::vector<PadicMatrix> images;

  int generators() const { return static_cast<int>(images.size()); }
  void validate() const;  // invertible images, matching prime/rank
  PadicMatrix evaluate(const FreeWord& w) const;  // exact product over Q
};

Representation trivial_representation(long prime, int rank, int generators);

/// Certificate for the norm-1 class: every generator image and its inverse
/// has norm <= 1, which forces |rho(gamma)| = 1 for the whole group.
struct IntegralCertificate {
  bool certified = false;
  std::string reason;  // offending entry or determinant when not applicable
};
IntegralCertificate integral_certificate(const Representation& rho);

/// m(w) = d_plus(w) * |rho(w^-1)| = p^exp_m(w), reported exactly.
struct ScanResult {
  long max_exp = 0;       // exp_m maximized over all words (identity included)
  FreeWord max_word;
  std::vector<FreeWord> level_set;  // words with exp_m >= -eps_exp (capped)
  long level_set_size = 0;          // true count
  bool finiteness_proven = false;
  long proof_bound_len = -1;  // L(eps) = n * eps_exp when certified
  long words_enumerated = 0;
};

/// Enumerates all reduced words of length <= depth and reports the exact
/// maximum of m(w) and the level set {w : m(w) >= p^-eps_exp}.  When the
/// integral certificate holds, the lemma bound l_plus >= l / n (n = longest
/// fundamental cycle) caps the geodesic length of level-set members by
/// L = n * eps_exp; a depth covering L proves the level set finite, a smaller
/// depth raises DepthInsufficient.  verify_norms forces the scan to compute
/// |rho(w^-1)| by exact matrix products even when the certificate pins it to 1.
ScanResult bounded_sup_scan(const Representation& rho, const ReductionGraph& g,
                            const FreeBasis& basis, long eps_exp, int depth,
                            bool verify_norms = false);

/// A word w with m(w^k) growing like p^(k*growth); growth = -sigma - delta
/// where p^-sigma is the maximal eigenvalue norm of rho(w^-1) and delta the
/// per-period positive-width displacement d_plus_exp(w^2) - d_plus_exp(w).
struct WitnessResult {
  FreeWord word;
  mpq_class growth_exp;  // > 0, typically an integer >= 1
};

/// Searches cyclically reduced words of length <= max_period and verifies a
/// candidate by direct computation of m(w^k) for k <= power_check.
std::optional<WitnessResult> periodic_witness(const Representation& rho,
                                              const ReductionGraph& g,
                                              const FreeBasis& basis,
                                              int max_period, int power_check);

struct PhiBudget {
  int scan_depth = 8;
  long eps_exp = 3;
  int witness_max_period = 4;
  int witness_power_check = 4;
};

struct PhiVerdict {
  enum class Kind { PhiBounded, NotPhiBounded, Unknown };
  Kind kind = Kind::Unknown;
  std::string certificate;               // "integral" for PhiBounded
  std::optional<WitnessResult> witness;  // for NotPhiBounded
  std::optional<ScanResult> scan;        // for Unknown
};

/// Dispatch: integral certificate, else periodic witness, else Unknown with
/// the bounded scan summary.
PhiVerdict classify_phi(const Representation& rho, const ReductionGraph& g,
                        const FreeBasis& basis, const PhiBudget& budget);

/// p^-s with s the minimal Newton slope of the characteristic polynomial:
/// the maximal eigenvalue norm.  Requires an invertible matrix.
mpq_class max_eigenvalue_norm_exp(const PadicMatrix& m);  // returns -s... exp e with norm p^e

}  // namespace mumford
