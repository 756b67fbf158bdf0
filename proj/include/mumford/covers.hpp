#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "mumford/phibound.hpp"
#include "mumford/redgraph.hpp"

namespace mumford {

/// Finite quotient Gamma/N carried by the image of rho mod p^n: elements are
/// canonical rank x rank matrix residues, closed under multiplication and
/// generated by the reduced generator images.
class FiniteQuotient {
 public:
  long prime() const { return p_; }
  long level() const { return n_; }
  int rank() const { return r_; }
  long order() const { return static_cast<long>(elements_.size()); }
  int identity() const { return 0; }
  const std::vector<int>& generator_elements() const { return gens_; }
  int generator_count() const { return static_cast<int>(gens_.size()); }

  /// index of the product element (matrix product of residues)
  int mul(int a, int b) const;
  int inverse(int a) const;
  /// right multiplication by generator i as a permutation of elements
  int act(int elem, int gen) const { return gen_action_[gen][elem]; }
  int act_inverse(int elem, int gen) const { return inv_action_[gen][elem]; }
  const std::vector<long>& element_entries(int i) const { return elements_[i]; }
  /// evaluate a free word, landing on an element index
  int evaluate_word(const FreeWord& w) const;

  GroupView view() const;

  friend FiniteQuotient image_group(const Representation& rho, long n,
                                    long order_guard);

 private:
  long p_ = 0, n_ = 0, pn_ = 0;
  int r_ = 0;
  std::vector<std::vector<long>> elements_;  // row-major entries in [0, p^n)
  std::unordered_map<std::string, int> index_;
  std::vector<int> gens_;
  std::vector<std::vector<int>> gen_action_, inv_action_;

  std::vector<long> mat_mul(const std::vector<long>& a,
                            const std::vector<long>& b) const;
  int lookup(const std::vector<long>& m) const;
};

/// Subgroup of GL_r(Z/p^n) generated by the reduced images of an integral
/// unit-determinant representation; closure by breadth-first products.
FiniteQuotient image_group(const Representation& rho, long n,
                           long order_guard = 1000000);

/// Schreier data for the kernel N = ker(rho_n): coset graph on the quotient
/// elements, BFS spanning tree, and one kernel generator per non-tree edge.
struct SchreierData {
  std::vector<FreeWord> coset_reps;          // per element, reduced
  std::vector<std::vector<bool>> tree_edge;  // [gen][elem]
  std::vector<FreeWord> kernel_basis;
  long group_order = 0;
  int generator_count = 0;
};
SchreierData schreier_basis(const FiniteQuotient& G);

struct RestrictCheck {
  bool trivial = true;
  std::optional<FreeWord> counterexample;
};
/// Evaluates rho modulo p^n on every kernel-basis word and checks it is the
/// identity; a consistency self-test when the data comes from ker(rho_n).
RestrictCheck restrict_check(const Representation& rho,
                             const SchreierData& data, long n);

/// Finite-level parallel transport: the invariants module
/// M = {f : G -> (Z/p^n)^r  with  f(g h) = rho_n(g) f(h)}
/// is free of rank r via evaluation at a base coset; the right-translation
/// action of G transported through that evaluation is compared entrywise
/// with rho_n.
struct TransportReport {
  long group_order = 0;
  long level = 0;
  int rank = 0;
  int basepoint = 0;
  std::vector<std::vector<long>> transported;  // per generator, row-major
  std::vector<std::vector<long>> rho_n;
  std::vector<bool> generator_equal;
  bool all_equal = false;
  /// conjugating element (basepoint residue); identity matrix when basepoint 0
  std::vector<long> conjugator;
  bool conjugacy_verified = false;  // transported == b rho_n b^-1 entrywise
};
TransportReport dw_transport(const Representation& rho, long n,
                             int basepoint = 0, long order_guard = 1000000);

/// (g-1) * index + 1
long cover_genus(long g, long index);

}  // namespace mumford
