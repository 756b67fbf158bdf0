#include "mumford/covers.hpp"

#include <algorithm>
#include <queue>
#include <sstream>

namespace mumford {

static std::string key_of(const std::vector<long>& m) {
  std::string s;
  s.reserve(m.size() * sizeof(long));
  for (long x : m)
    s.append(reinterpret_cast<const char*>(&x), sizeof(long));
  return s;
}

std::vector<long> FiniteQuotient::mat_mul(const std::vector<long>& a,
                                          const std::vector<long>& b) const {
  std::vector<long> c(r_ * r_, 0);
  for (int i = 0; i < r_; ++i)
    for (int k = 0; k < r_; ++k) {
      if (a[i * r_ + k] == 0) continue;
      __int128 av = a[i * r_ + k];
      for (int j = 0; j < r_; ++j) {
        __int128 s = c[i * r_ + j] + av * b[k * r_ + j];
        c[i * r_ + j] = static_cast<long>(s % pn_);
      }
    }
  return c;
}

int FiniteQuotient::lookup(const std::vector<long>& m) const {
  auto it = index_.find(key_of(m));
  if (it == index_.end())
    throw DomainError("Internal", "element escaped the closed group");
  return it->second;
}

int FiniteQuotient::mul(int a, int b) const {
  return lookup(mat_mul(elements_[a], elements_[b]));
}

int FiniteQuotient::inverse(int a) const {
  // the group is finite: a^-1 = a^(ord-1); walk via the index instead of
  // computing a modular matrix inverse
  int x = a, prev = identity();
  while (x != identity()) {
    prev = x;
    x = mul(x, a);
    // cycle length divides the group order, so this terminates
  }
  // prev * a = identity only when a != identity; handle identity directly
  return a == identity() ? identity() : prev;
}

int FiniteQuotient::evaluate_word(const FreeWord& w) const {
  int x = identity();
  for (auto [gen, exp] : w.letters()) {
    if (gen < 0 || gen >= generator_count())
      throw DomainError("BadInput", "word uses an unknown generator");
    x = exp > 0 ? act(x, gen) : act_inverse(x, gen);
  }
  return x;
}

GroupView FiniteQuotient::view() const {
  return {order(), identity(), [this](int a, int b) { return mul(a, b); }};
}

FiniteQuotient image_group(const Representation& rho, long n,
                           long order_guard) {
  rho.validate();
  if (n < 1) throw DomainError("BadInput", "level must be >= 1");
  IntegralCertificate cert = integral_certificate(rho);
  if (!cert.certified) throw DomainError("NotIntegral", cert.reason);

  FiniteQuotient G;
  G.p_ = rho.prime;
  G.n_ = n;
  G.r_ = rho.rank;
  mpz_class pn = pow_p(rho.prime, n);
  if (!pn.fits_slong_p() || pn.get_si() > (1L << 31))
    throw DomainError("BadInput", "p^n too large for closure enumeration");
  G.pn_ = pn.get_si();

  auto reduce_matrix = [&](const PadicMatrix& m) {
    std::vector<long> out(G.r_ * G.r_);
    for (int i = 0; i < G.r_; ++i)
      for (int j = 0; j < G.r_; ++j)
        out[i * G.r_ + j] = reduce_mod(m.scalar_at(i, j), n).get_si();
    return out;
  };

  std::vector<long> id(G.r_ * G.r_, 0);
  for (int i = 0; i < G.r_; ++i) id[i * G.r_ + i] = 1 % G.pn_;
  G.elements_.push_back(id);
  G.index_[key_of(id)] = 0;

  std::vector<std::vector<long>> gen_mats;
  for (const auto& img : rho.images) gen_mats.push_back(reduce_matrix(img));

  // breadth-first closure under right multiplication by the generators
  std::queue<int> todo;
  todo.push(0);
  std::vector<std::vector<int>> action(gen_mats.size());
  while (!todo.empty()) {
    int idx = todo.front();
    todo.pop();
    for (size_t gi = 0; gi < gen_mats.size(); ++gi) {
      std::vector<long> prod = G.mat_mul(G.elements_[idx], gen_mats[gi]);
      std::string k = key_of(prod);
      auto it = G.index_.find(k);
      int target;
      if (it == G.index_.end()) {
        target = static_cast<int>(G.elements_.size());
        if (target >= order_guard)
          throw GuardError("OrderExceedsGuard",
                           "group closure exceeds " +
                               std::to_string(order_guard) + " elements",
                           order_guard);
        G.elements_.push_back(std::move(prod));
        G.index_.emplace(std::move(k), target);
        todo.push(target);
      } else {
        target = it->second;
      }
      if (action[gi].size() < G.elements_.size())
        action[gi].resize(G.elements_.size(), -1);
      action[gi][idx] = target;
    }
  }
  for (auto& a : action) a.resize(G.elements_.size(), -1);
  // fill any remaining action entries (vertices discovered late)
  for (size_t gi = 0; gi < gen_mats.size(); ++gi)
    for (size_t e = 0; e < G.elements_.size(); ++e)
      if (action[gi][e] < 0)
        action[gi][e] = G.lookup(G.mat_mul(G.elements_[e], gen_mats[gi]));
  G.gen_action_ = action;
  G.inv_action_.assign(gen_mats.size(), std::vector<int>(G.order(), -1));
  for (size_t gi = 0; gi < gen_mats.size(); ++gi)
    for (long e = 0; e < G.order(); ++e)
      G.inv_action_[gi][G.gen_action_[gi][e]] = static_cast<int>(e);
  for (size_t gi = 0; gi < gen_mats.size(); ++gi)
    G.gens_.push_back(G.lookup(gen_mats[gi]));
  return G;
}

SchreierData schreier_basis(const FiniteQuotient& G) {
  SchreierData data;
  long n = G.order();
  int g = G.generator_count();
  data.group_order = n;
  data.generator_count = g;
  data.coset_reps.assign(n, FreeWord());
  data.tree_edge.assign(g, std::vector<bool>(n, false));
  std::vector<bool> visited(n, false);
  visited[G.identity()] = true;
  std::queue<int> q;
  q.push(G.identity());
  while (!q.empty()) {
    int h = q.front();
    q.pop();
    for (int gi = 0; gi < g; ++gi) {
      // forward edge (h, gi): h -> h * gen_i
      int t = G.act(h, gi);
      if (!visited[t]) {
        visited[t] = true;
        data.tree_edge[gi][h] = true;
        data.coset_reps[t] = data.coset_reps[h] * FreeWord::generator(gi);
        q.push(t);
      }
      // backward traversal of the edge (s, gi) with s * gen_i = h
      int s = G.act_inverse(h, gi);
      if (!visited[s]) {
        visited[s] = true;
        data.tree_edge[gi][s] = true;
        data.coset_reps[s] =
            data.coset_reps[h] * FreeWord::generator(gi, -1);
        q.push(s);
      }
    }
  }
  for (int gi = 0; gi < g; ++gi)
    for (long h = 0; h < n; ++h) {
      if (data.tree_edge[gi][h]) continue;
      int t = G.act(static_cast<int>(h), gi);
      FreeWord w = data.coset_reps[h] * FreeWord::generator(gi) *
                   data.coset_reps[t].inverse();
      data.kernel_basis.push_back(w);
    }
  return data;
}

// modular matrix product over Z/p^n for rank r (entries fit in long)
static std::vector<long> mod_mat_mul(const std::vector<long>& a,
                                     const std::vector<long>& b, int r,
                                     long pn) {
  std::vector<long> c(r * r, 0);
  for (int i = 0; i < r; ++i)
    for (int k = 0; k < r; ++k) {
      if (a[i * r + k] == 0) continue;
      __int128 av = a[i * r + k];
      for (int j = 0; j < r; ++j) {
        __int128 s = c[i * r + j] + av * b[k * r + j];
        c[i * r + j] = static_cast<long>(s % pn);
      }
    }
  return c;
}

RestrictCheck restrict_check(const Representation& rho,
                             const SchreierData& data, long n) {
  rho.validate();
  if (rho.generators() != data.generator_count)
    throw DomainError("ShapeMismatch",
                      "Schreier data built for a different generator count");
  long pn_l = pow_p(rho.prime, n).get_si();
  int r = rho.rank;
  auto reduce_matrix = [&](const PadicMatrix& m) {
    std::vector<long> out(r * r);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j)
        out[i * r + j] = reduce_mod(m.scalar_at(i, j), n).get_si();
    return out;
  };
  std::vector<std::vector<long>> gens, gens_inv;
  for (const auto& img : rho.images) {
    gens.push_back(reduce_matrix(img));
    gens_inv.push_back(reduce_matrix(img.inverse()));
  }
  std::vector<long> id(r * r, 0);
  for (int i = 0; i < r; ++i) id[i * r + i] = 1 % pn_l;
  for (const FreeWord& w : data.kernel_basis) {
    std::vector<long> acc = id;
    for (auto [gen, exp] : w.letters())
      acc = mod_mat_mul(acc, exp > 0 ? gens[gen] : gens_inv[gen], r, pn_l);
    if (acc != id) return {false, w};
  }
  return {true, std::nullopt};
}

TransportReport dw_transport(const Representation& rho, long n, int basepoint,
                             long order_guard) {
  FiniteQuotient G = image_group(rho, n, order_guard);
  if (basepoint < 0 || basepoint >= G.order())
    throw DomainError("BadInput", "basepoint is not a group element");
  TransportReport rep;
  rep.group_order = G.order();
  rep.level = n;
  rep.rank = G.rank();
  rep.basepoint = basepoint;
  int r = G.rank();
  long pn = pow_p(G.prime(), n).get_si();

  // the equivariant function determined by its value x at the basepoint:
  //   f(h) = h * b^-1 * x
  // realized as a full table indexed by group elements.
  int binv = G.inverse(basepoint);
  const std::vector<long>& binv_mat = G.element_entries(binv);
  const std::vector<long>& b_mat = G.element_entries(basepoint);
  rep.conjugator = b_mat;

  rep.all_equal = true;
  rep.conjugacy_verified = true;
  for (int gi = 0; gi < G.generator_count(); ++gi) {
    int sigma = G.generator_elements()[gi];
    // transported matrix column j: start with f_j(.) whose basepoint value is
    // e_j, translate by sigma, evaluate at the basepoint.
    std::vector<long> transported(r * r, 0);
    for (int j = 0; j < r; ++j) {
      // f_j table: f_j(h) = (h * b^-1) column j
      std::vector<std::vector<long>> table(G.order(), std::vector<long>(r, 0));
      for (long h = 0; h < G.order(); ++h) {
        std::vector<long> hbinv =
            mod_mat_mul(G.element_entries(static_cast<int>(h)), binv_mat, r, pn);
        for (int i = 0; i < r; ++i) table[h][i] = hbinv[i * r + j];
      }
      // (sigma . f)(h) = f(h * sigma)
      std::vector<long> value = table[G.mul(basepoint, sigma)];
      for (int i = 0; i < r; ++i) transported[i * r + j] = value[i];
    }
    const std::vector<long>& rho_n_mat = G.element_entries(sigma);
    rep.transported.push_back(transported);
    rep.rho_n.push_back(rho_n_mat);
    bool eq = transported == rho_n_mat;
    rep.generator_equal.push_back(eq);
    if (!eq) rep.all_equal = false;
    // transported must equal b * rho_n(g) * b^-1 in all cases
    std::vector<long> conj =
        mod_mat_mul(mod_mat_mul(b_mat, rho_n_mat, r, pn), binv_mat, r, pn);
    if (conj != transported) rep.conjugacy_verified = false;
  }
  return rep;
}

long cover_genus(long g, long index) {
  if (g < 1) throw DomainError("BadInput", "base genus must be >= 1");
  if (index < 1) throw DomainError("BadInput", "index must be >= 1");
  return (g - 1) * index + 1;
}

}  // namespace mumford
