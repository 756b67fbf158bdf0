#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mumford/covers.hpp"
#include "mumford/normalforms.hpp"
#include "mumford/phibound.hpp"

namespace mumford {

Representation tensor_rep(const Representation& a, const Representation& b);
Representation dual_rep(const Representation& a);
Representation direct_sum_rep(const Representation& a, const Representation& b);

/// Mod-p^k levels 1..n_max of an integral representation with the factoring
/// quotient at each level; compatibility of consecutive levels is verified.
struct ReductionTower {
  long prime = 0;
  int rank = 0;
  long n_max = 0;
  std::vector<std::vector<std::vector<long>>> level_images;  // [k-1][gen] rows
  std::vector<long> quotient_orders;
};
ReductionTower reduction_tower(const Representation& rho, long n_max,
                               long order_guard = 1000000);

struct IsoResult {
  enum class Kind { Isomorphic, NotIsomorphic, Inconclusive };
  Kind kind = Kind::Inconclusive;
  std::optional<PadicMatrix> conjugator;  // X with X rho1 X^-1 = rho2
  std::string witness;                    // invariant mismatch for refutations
  long hom_dimension = -1;                // dim of the intertwiner space
};

/// Conjugacy test: trace and invariant-factor invariants of words up to
/// length 2 refute; an invertible intertwiner certifies; otherwise
/// Inconclusive (with the Hom-space dimension reported).
IsoResult iso_check(const Representation& rho1, const Representation& rho2);

}  // namespace mumford
