#include "mumford/phibound.hpp"

#include <algorithm>

namespace mumford {

void Representation::validate() const {
  if (rank < 1) throw DomainError("BadInput", "rank must be >= 1");
  for (const auto& m : images) {
    if (m.prime() != prime)
      throw DomainError("PrimeMismatch", "generator image prime differs");
    if (m.rows() != rank || m.cols() != rank)
      throw DomainError("ShapeMismatch", "generator image is not rank x rank");
    if (m.det() == 0)
      throw DomainError("Singular", "generator image is not invertible");
  }
}

PadicMatrix Representation::evaluate(const FreeWord& w) const {
  PadicMatrix r = PadicMatrix::identity(prime, rank);
  for (auto [gen, exp] : w.letters()) {
    if (gen < 0 || gen >= generators())
      throw DomainError("BadInput", "word uses an unknown generator");
    r = r * (exp > 0 ? images[gen] : images[gen].inverse());
  }
  return r;
}

Representation trivial_representation(long prime, int rank, int generators) {
  Representation rho{prime, rank, {}};
  for (int i = 0; i < generators; ++i)
    rho.images.push_back(PadicMatrix::identity(prime, rank));
  return rho;
}

IntegralCertificate integral_certificate(const Representation& rho) {
  rho.validate();
  for (size_t i = 0; i < rho.images.size(); ++i) {
    const PadicMatrix& m = rho.images[i];
    if (!m.is_integral())
      return {false, "generator " + std::to_string(i) +
                         " has an entry of negative valuation (norm " +
                         matrix_norm(m).str() + ")"};
    PadicScalar det(rho.prime, m.det());
    if (!det.is_unit())
      return {false, "generator " + std::to_string(i) +
                         " has non-unit determinant of valuation " +
                         det.valuation().str()};
  }
  return {true, ""};
}

mpq_class max_eigenvalue_norm_exp(const PadicMatrix& m) {
  RatPoly cp = m.char_poly();
  NewtonSlopes ns = newton_slopes(m.prime(), cp);
  if (ns.zero_roots > 0)
    throw DomainError("Singular", "matrix has eigenvalue zero");
  return -ns.slopes.front();  // norm = p^(-min slope)
}

ScanResult bounded_sup_scan(const Representation& rho, const ReductionGraph& g,
                            const FreeBasis& basis, long eps_exp, int depth,
                            bool verify_norms) {
  rho.validate();
  if (rho.generators() != static_cast<int>(basis.generator_paths.size()))
    throw DomainError("ShapeMismatch",
                      "representation and basis generator counts differ");
  if (depth < 1) throw DomainError("BadInput", "depth must be >= 1");
  IntegralCertificate cert = integral_certificate(rho);
  long cycle_n = 0;
  for (const auto& path : basis.generator_paths)
    cycle_n = std::max(cycle_n, static_cast<long>(path.size()));

  ScanResult out;
  out.max_exp = 0;  // identity: d_plus = 1, |rho(1)| = 1
  out.max_word = FreeWord();
  if (eps_exp >= 0) {
    out.level_set.push_back(FreeWord());
    out.level_set_size = 1;
  }
  if (cert.certified) {
    out.proof_bound_len = cycle_n * std::max<long>(eps_exp, 0);
    if (depth < out.proof_bound_len)
      throw GuardError("DepthInsufficient",
                       "level-set completeness needs depth " +
                           std::to_string(out.proof_bound_len),
                       out.proof_bound_len);
    out.finiteness_proven = true;
  }

  const size_t level_set_cap = 512;
  bool track_norm = verify_norms || !cert.certified;
  std::vector<PadicMatrix> inv_stack;  // rho(w^-1) along the DFS branch
  if (track_norm) inv_stack.push_back(PadicMatrix::identity(rho.prime, rho.rank));
  std::vector<PadicMatrix> gen_inv;
  for (const auto& mimg : rho.images) gen_inv.push_back(mimg.inverse());

  std::vector<std::pair<int, int>> current;
  WordVisitor v;
  v.enter = [&](int gen, int exp, const DPlusReport& rep) {
    current.emplace_back(gen, exp);
    ++out.words_enumerated;
    long norm_exp = 0;
    if (track_norm) {
      // rho((w g^e)^-1) = rho(g)^-e * rho(w^-1)
      const PadicMatrix& step = exp > 0 ? gen_inv[gen] : rho.images[gen];
      inv_stack.push_back(step * inv_stack.back());
      Valuation mv = matrix_min_valuation(inv_stack.back());
      norm_exp = -mv.v;
      if (cert.certified && norm_exp != 0)
        throw DomainError("Internal",
                          "norm-1 certificate violated by enumeration");
    }
    // certified: norm pinned to 1 by the lemma, checked above when tracking
    long exp_m = -rep.d_plus_exp + norm_exp;
    if (exp_m > out.max_exp) {  // first maximum in DFS order
      out.max_exp = exp_m;
      out.max_word = FreeWord::from_letters(current);
    }
    if (exp_m >= -eps_exp) {
      ++out.level_set_size;
      if (out.level_set.size() < level_set_cap)
        out.level_set.push_back(FreeWord::from_letters(current));
    }
    if (cert.certified && cycle_n * rep.l_plus < rep.l)
      throw DomainError("ProofBoundViolated",
                        "l_plus >= l/n fails at " +
                            FreeWord::from_letters(current).str());
    return true;
  };
  v.leave = [&]() {
    current.pop_back();
    if (track_norm) inv_stack.pop_back();
  };
  walk_reduced_words(g, basis, depth, v);
  return out;
}

std::optional<WitnessResult> periodic_witness(const Representation& rho,
                                              const ReductionGraph& g,
                                              const FreeBasis& basis,
                                              int max_period, int power_check) {
  rho.validate();
  if (rho.generators() != static_cast<int>(basis.generator_paths.size()))
    throw DomainError("ShapeMismatch",
                      "representation and basis generator counts differ");
  // collect cyclically reduced candidates, shortest first
  std::vector<FreeWord> candidates;
  std::vector<std::pair<int, int>> current;
  WordVisitor v;
  v.enter = [&](int gen, int exp, const DPlusReport&) {
    current.emplace_back(gen, exp);
    FreeWord w = FreeWord::from_letters(current);
    if (w.cyclically_reduced()) candidates.push_back(w);
    return true;
  };
  v.leave = [&]() { current.pop_back(); };
  walk_reduced_words(g, basis, max_period, v);
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const FreeWord& a, const FreeWord& b) {
                     return a.length() < b.length();
                   });

  for (const FreeWord& w : candidates) {
    long e1 = d_plus(g, basis, w).d_plus_exp;
    long e2 = d_plus(g, basis, w.pow(2)).d_plus_exp;
    long delta = e2 - e1;
    PadicMatrix inv = rho.evaluate(w.inverse());
    mpq_class sigma = -max_eigenvalue_norm_exp(inv);  // min Newton slope
    mpq_class growth = -sigma - delta;
    if (growth <= 0) continue;
    // verify m(w^k) >= p^(ceil(k*growth)) for k <= power_check
    bool ok = true;
    for (int k = 1; k <= power_check && ok; ++k) {
      FreeWord wk = w.pow(k);
      long dk = d_plus(g, basis, wk).d_plus_exp;
      Valuation mv = matrix_min_valuation(rho.evaluate(wk.inverse()));
      long exp_m = -dk - mv.v;
      mpq_class need = k * growth;
      mpz_class need_ceil;
      mpz_cdiv_q(need_ceil.get_mpz_t(), need.get_num().get_mpz_t(),
                 need.get_den().get_mpz_t());
      if (mpq_class(exp_m) < mpq_class(need_ceil)) ok = false;
    }
    if (ok) return WitnessResult{w, growth};
  }
  return std::nullopt;
}

PhiVerdict classify_phi(const Representation& rho, const ReductionGraph& g,
                        const FreeBasis& basis, const PhiBudget& budget) {
  PhiVerdict verdict;
  IntegralCertificate cert = integral_certificate(rho);
  if (cert.certified) {
    verdict.kind = PhiVerdict::Kind::PhiBounded;
    verdict.certificate = "integral";
    return verdict;
  }
  auto witness = periodic_witness(rho, g, basis, budget.witness_max_period,
                                  budget.witness_power_check);
  if (witness) {
    verdict.kind = PhiVerdict::Kind::NotPhiBounded;
    verdict.witness = witness;
    return verdict;
  }
  verdict.kind = PhiVerdict::Kind::Unknown;
  verdict.scan =
      bounded_sup_scan(rho, g, basis, budget.eps_exp, budget.scan_depth);
  return verdict;
}

}  // namespace mumford
