#pragma once

#include <random>

#include "mumford/padic.hpp"

namespace mumford::testutil {

/// small random rational with controlled p-content, for property suites
inline mpq_class random_rational(std::mt19937& rng, long p, int pexp_range = 2) {
  std::uniform_int_distribution<int> small(-9, 9);
  std::uniform_int_distribution<int> den(1, 9);
  std::uniform_int_distribution<int> pe(-pexp_range, pexp_range);
  mpq_class q(small(rng), den(rng));
  q.canonicalize();
  int e = pe(rng);
  mpz_class pw = pow_p(p, std::abs(e));
  if (e >= 0)
    q *= mpq_class(pw);
  else
    q /= mpq_class(pw);
  return q;
}

inline mpq_class random_nonzero_rational(std::mt19937& rng, long p,
                                         int pexp_range = 2) {
  mpq_class q = 0;
  while (q == 0) q = random_rational(rng, p, pexp_range);
  return q;
}

inline PadicMatrix random_matrix(std::mt19937& rng, long p, int n,
                                 int pexp_range = 1) {
  PadicMatrix m(p, n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m.at(i, j) = random_rational(rng, p, pexp_range);
  return m;
}

inline PadicMatrix random_invertible(std::mt19937& rng, long p, int n,
                                     int pexp_range = 1) {
  while (true) {
    PadicMatrix m = random_matrix(rng, p, n, pexp_range);
    if (m.det() != 0) return m;
  }
}

/// random integral matrix with unit determinant (the norm-1 class)
inline PadicMatrix random_integral_unit(std::mt19937& rng, long p, int n) {
  std::uniform_int_distribution<int> small(-4, 4);
  while (true) {
    PadicMatrix m(p, n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m.at(i, j) = small(rng);
    mpq_class d = m.det();
    if (d == 0) continue;
    if (PadicScalar(p, d).is_unit()) return m;
  }
}

}  // namespace mumford::testutil
