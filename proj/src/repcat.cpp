#include "mumford/repcat.hpp"

#include <sstream>

namespace mumford {

static void check_compatible(const Representation& a, const Representation& b) {
  if (a.prime != b.prime)
    throw DomainError("PrimeMismatch", "representations over different primes");
  if (a.generators() != b.generators())
    throw DomainError("ShapeMismatch", "generator counts differ");
}

Representation tensor_rep(const Representation& a, const Representation& b) {
  a.validate();
  b.validate();
  check_compatible(a, b);
  Representation out{a.prime, a.rank * b.rank, {}};
  for (int i = 0; i < a.generators(); ++i)
    out.images.push_back(a.images[i].kronecker(b.images[i]));
  return out;
}

Representation dual_rep(const Representation& a) {
  a.validate();
  Representation out{a.prime, a.rank, {}};
  for (const auto& m : a.images)
    out.images.push_back(m.inverse().transpose());
  return out;
}

Representation direct_sum_rep(const Representation& a, const Representation& b) {
  a.validate();
  b.validate();
  check_compatible(a, b);
  Representation out{a.prime, a.rank + b.rank, {}};
  for (int i = 0; i < a.generators(); ++i) {
    PadicMatrix m(a.prime, out.rank, out.rank);
    for (int r = 0; r < a.rank; ++r)
      for (int c = 0; c < a.rank; ++c) m.at(r, c) = a.images[i].at(r, c);
    for (int r = 0; r < b.rank; ++r)
      for (int c = 0; c < b.rank; ++c)
        m.at(a.rank + r, a.rank + c) = b.images[i].at(r, c);
    out.images.push_back(m);
  }
  return out;
}

ReductionTower reduction_tower(const Representation& rho, long n_max,
                               long order_guard) {
  rho.validate();
  if (n_max < 1) throw DomainError("BadInput", "n_max must be >= 1");
  IntegralCertificate cert = integral_certificate(rho);
  if (!cert.certified) throw DomainError("NotIntegral", cert.reason);
  ReductionTower tower;
  tower.prime = rho.prime;
  tower.rank = rho.rank;
  tower.n_max = n_max;
  for (long k = 1; k <= n_max; ++k) {
    std::vector<std::vector<long>> level;
    for (const auto& img : rho.images) {
      std::vector<long> mat(rho.rank * rho.rank);
      for (int i = 0; i < rho.rank; ++i)
        for (int j = 0; j < rho.rank; ++j)
          mat[i * rho.rank + j] = reduce_mod(img.scalar_at(i, j), k).get_si();
      level.push_back(std::move(mat));
    }
    // compatibility: level k reduces to level k-1
    if (k > 1) {
      long pk1 = pow_p(rho.prime, k - 1).get_si();
      for (size_t g = 0; g < level.size(); ++g)
        for (size_t e = 0; e < level[g].size(); ++e)
          if (level[g][e] % pk1 != tower.level_images[k - 2][g][e])
            throw DomainError("Internal", "tower levels incompatible");
    }
    tower.level_images.push_back(std::move(level));
    tower.quotient_orders.push_back(image_group(rho, k, order_guard).order());
  }
  return tower;
}

IsoResult iso_check(const Representation& rho1, const Representation& rho2) {
  rho1.validate();
  rho2.validate();
  check_compatible(rho1, rho2);
  if (rho1.rank != rho2.rank)
    throw DomainError("ShapeMismatch", "ranks differ");
  IsoResult out;
  // identical images: the identity conjugates
  bool same = true;
  for (int i = 0; i < rho1.generators() && same; ++i)
    same = rho1.images[i] == rho2.images[i];
  if (same) {
    out.kind = IsoResult::Kind::Isomorphic;
    out.conjugator = PadicMatrix::identity(rho1.prime, rho1.rank);
    auto space = intertwiner_space(rho1.images, rho2.images);
    out.hom_dimension = static_cast<long>(space.size());
    return out;
  }
  // words of length <= 2: traces then invariant factors must match
  std::vector<FreeWord> words;
  int g = rho1.generators();
  for (int i = 0; i < g; ++i)
    for (int e : {1, -1}) words.push_back(FreeWord::generator(i, e));
  size_t singles = words.size();
  for (size_t x = 0; x < singles; ++x)
    for (size_t y = 0; y < singles; ++y) {
      FreeWord w = words[x] * words[y];
      if (w.length() == 2) words.push_back(w);
    }
  for (const FreeWord& w : words) {
    PadicMatrix m1 = rho1.evaluate(w), m2 = rho2.evaluate(w);
    if (m1.trace() != m2.trace()) {
      out.kind = IsoResult::Kind::NotIsomorphic;
      out.witness = "trace of " + w.str() + " differs: " +
                    m1.trace().get_str() + " vs " + m2.trace().get_str();
      return out;
    }
  }
  for (const FreeWord& w : words) {
    InvariantFactors f1 = invariant_factors(rho1.evaluate(w));
    InvariantFactors f2 = invariant_factors(rho2.evaluate(w));
    if (!(f1 == f2)) {
      out.kind = IsoResult::Kind::NotIsomorphic;
      out.witness = "invariant factors of " + w.str() + " differ";
      return out;
    }
  }
  auto space = intertwiner_space(rho1.images, rho2.images);
  out.hom_dimension = static_cast<long>(space.size());
  if (space.empty()) {
    out.kind = IsoResult::Kind::NotIsomorphic;
    out.witness = "intertwiner space is zero";
    return out;
  }
  auto found = find_invertible_combination(space);
  if (found) {
    // X rho1 X^-1 = rho2 exactly, by construction of the solution space
    out.kind = IsoResult::Kind::Isomorphic;
    out.conjugator = *found;
    return out;
  }
  out.kind = IsoResult::Kind::Inconclusive;
  return out;
}

}  // namespace mumford
