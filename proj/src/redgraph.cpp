#include "mumford/redgraph.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <sstream>

namespace mumford {

ReductionGraph::ReductionGraph(long prime, std::vector<std::string> vertices,
                               std::vector<GraphEdge> edges, int base_vertex)
    : prime_(prime),
      vertices_(std::move(vertices)),
      edges_(std::move(edges)),
      base_(base_vertex) {
  if (prime_ < 2) throw DomainError("BadPrime", "prime must be >= 2");
  if (vertices_.empty()) throw DomainError("BadInput", "graph needs vertices");
  if (base_ < 0 || base_ >= static_cast<int>(vertices_.size()))
    throw DomainError("BadInput", "base vertex out of range");
  std::set<std::string> vseen(vertices_.begin(), vertices_.end());
  if (vseen.size() != vertices_.size())
    throw DomainError("BadInput", "duplicate vertex labels");
  std::set<std::string> eseen;
  for (const auto& e : edges_) {
    if (!eseen.insert(e.id).second)
      throw DomainError("BadInput", "duplicate edge id " + e.id);
    if (e.from < 0 || e.from >= static_cast<int>(vertices_.size()) ||
        e.to < 0 || e.to >= static_cast<int>(vertices_.size()))
      throw DomainError("BadInput", "edge endpoint out of range: " + e.id);
    if (e.width_exp < 1)
      throw DomainError("BadInput", "edge width exponent must be >= 1: " + e.id);
  }
  // connectivity
  std::vector<bool> seen(vertices_.size(), false);
  std::queue<int> q;
  q.push(base_);
  seen[base_] = true;
  size_t count = 1;
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    for (const auto& e : edges_)
      for (int w : {e.from == v ? e.to : -1, e.to == v ? e.from : -1})
        if (w >= 0 && !seen[w]) {
          seen[w] = true;
          ++count;
          q.push(w);
        }
  }
  if (count != vertices_.size())
    throw DomainError("Disconnected", "graph is not connected");
}

int ReductionGraph::vertex_index(const std::string& label) const {
  for (size_t i = 0; i < vertices_.size(); ++i)
    if (vertices_[i] == label) return static_cast<int>(i);
  throw DomainError("BadInput", "unknown vertex label " + label);
}

ReductionGraph ReductionGraph::with_flipped(const std::vector<bool>& flip) const {
  std::vector<GraphEdge> es = edges_;
  for (size_t i = 0; i < es.size(); ++i)
    if (flip[i]) std::swap(es[i].from, es[i].to);
  return {prime_, vertices_, es, base_};
}

// ---------------------------------------------------------------------------
// free words

FreeWord FreeWord::from_letters(const std::vector<std::pair<int, int>>& letters) {
  FreeWord w;
  for (auto [g, e] : letters) {
    if (e != 1 && e != -1)
      throw DomainError("BadInput", "letter exponent must be +-1");
    if (!w.letters_.empty() && w.letters_.back().first == g &&
        w.letters_.back().second == -e)
      w.letters_.pop_back();
    else
      w.letters_.emplace_back(g, e);
  }
  return w;
}

FreeWord FreeWord::generator(int i, int exp) {
  std::vector<std::pair<int, int>> ls;
  for (int k = 0; k < std::abs(exp); ++k) ls.emplace_back(i, exp > 0 ? 1 : -1);
  return from_letters(ls);
}

FreeWord FreeWord::inverse() const {
  std::vector<std::pair<int, int>> ls;
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it)
    ls.emplace_back(it->first, -it->second);
  return from_letters(ls);
}

FreeWord FreeWord::operator*(const FreeWord& o) const {
  std::vector<std::pair<int, int>> ls = letters_;
  ls.insert(ls.end(), o.letters_.begin(), o.letters_.end());
  return from_letters(ls);
}

FreeWord FreeWord::pow(long k) const {
  FreeWord base = k >= 0 ? *this : inverse();
  FreeWord r;
  for (long i = 0; i < std::abs(k); ++i) r = r * base;
  return r;
}

bool FreeWord::cyclically_reduced() const {
  if (letters_.size() < 2) return true;
  return !(letters_.front().first == letters_.back().first &&
           letters_.front().second == -letters_.back().second);
}

std::string FreeWord::str() const {
  if (letters_.empty()) return "1";
  std::ostringstream os;
  size_t i = 0;
  bool first = true;
  while (i < letters_.size()) {
    size_t j = i;
    while (j < letters_.size() && letters_[j] == letters_[i]) ++j;
    long run = static_cast<long>(j - i) * letters_[i].second;
    if (!first) os << " ";
    os << "g" << letters_[i].first;
    if (run != 1) os << "^" << run;
    first = false;
    i = j;
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// spanning tree and fundamental cycles

FreeBasis free_basis(const ReductionGraph& g) {
  const auto& edges = g.edges();
  int nv = static_cast<int>(g.vertices().size());
  // edge scan order: lexicographic by id
  std::vector<int> order(edges.size());
  for (size_t i = 0; i < edges.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return edges[a].id < edges[b].id; });

  FreeBasis basis;
  basis.in_tree.assign(edges.size(), false);
  std::vector<int> parent(nv, -1);
  std::vector<Step> parent_step(nv);  // step from parent to the vertex
  std::vector<bool> visited(nv, false);
  visited[g.base_vertex()] = true;
  std::queue<int> q;
  q.push(g.base_vertex());
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    for (int ei : order) {
      const GraphEdge& e = edges[ei];
      int other = -1;
      bool fwd = true;
      if (e.from == v && !visited[e.to]) {
        other = e.to;
        fwd = true;
      } else if (e.to == v && !visited[e.from]) {
        other = e.from;
        fwd = false;
      }
      if (other < 0) continue;
      visited[other] = true;
      basis.in_tree[ei] = true;
      parent[other] = v;
      parent_step[other] = {ei, fwd};
      q.push(other);
    }
  }
  auto path_from_base = [&](int v) {
    std::vector<Step> path;
    while (v != g.base_vertex()) {
      path.push_back(parent_step[v]);
      int pv = parent[v];
      v = pv;
    }
    std::reverse(path.begin(), path.end());
    return path;
  };
  for (int ei : order) {
    if (basis.in_tree[ei]) continue;
    const GraphEdge& e = edges[ei];
    std::vector<Step> cycle = path_from_base(e.from);
    cycle.push_back({ei, true});
    std::vector<Step> back = path_from_base(e.to);
    for (auto it = back.rbegin(); it != back.rend(); ++it)
      cycle.push_back({it->edge, !it->forward});
    basis.chord_edges.push_back(ei);
    basis.generator_paths.push_back(std::move(cycle));
  }
  return basis;
}

// ---------------------------------------------------------------------------
// path stack

void PathStack::add_counters(const Step& s, int sign) {
  rep_.l += sign;
  if (s.forward) {
    rep_.l_plus += sign;
    rep_.d_plus_exp += sign * g_->edges()[s.edge].width_exp;
  }
}

void PathStack::push(Step s) {
  if (!stack_.empty() && stack_.back().edge == s.edge &&
      stack_.back().forward != s.forward) {
    add_counters(stack_.back(), -1);
    stack_.pop_back();
  } else {
    stack_.push_back(s);
    add_counters(s, +1);
  }
}

PathStack::Undo PathStack::push_path(const std::vector<Step>& steps,
                                     bool forward) {
  Undo u;
  auto apply = [&](Step s) {
    if (!stack_.empty() && stack_.back().edge == s.edge &&
        stack_.back().forward != s.forward) {
      u.ops.emplace_back(false, stack_.back());
      add_counters(stack_.back(), -1);
      stack_.pop_back();
    } else {
      u.ops.emplace_back(true, s);
      stack_.push_back(s);
      add_counters(s, +1);
    }
  };
  if (forward) {
    for (const Step& s : steps) apply(s);
  } else {
    for (auto it = steps.rbegin(); it != steps.rend(); ++it)
      apply({it->edge, !it->forward});
  }
  return u;
}

void PathStack::undo(const Undo& u) {
  for (auto it = u.ops.rbegin(); it != u.ops.rend(); ++it) {
    const auto& [was_push, s] = *it;
    if (was_push) {
      add_counters(stack_.back(), -1);
      stack_.pop_back();
    } else {
      stack_.push_back(s);
      add_counters(s, +1);
    }
  }
}

std::vector<Step> word_to_path(const ReductionGraph& g, const FreeBasis& basis,
                               const FreeWord& w) {
  PathStack ps(g);
  for (auto [gen, exp] : w.letters()) {
    if (gen < 0 || gen >= static_cast<int>(basis.generator_paths.size()))
      throw DomainError("BadInput", "generator index out of range");
    ps.push_path(basis.generator_paths[gen], exp > 0);
  }
  return ps.steps();
}

FreeWord path_to_word(const ReductionGraph& g, const FreeBasis& basis,
                      const std::vector<Step>& path) {
  std::vector<int> chord_gen(g.edges().size(), -1);
  for (size_t i = 0; i < basis.chord_edges.size(); ++i)
    chord_gen[basis.chord_edges[i]] = static_cast<int>(i);
  std::vector<std::pair<int, int>> letters;
  for (const Step& s : path) {
    int gen = chord_gen[s.edge];
    if (gen >= 0) letters.emplace_back(gen, s.forward ? 1 : -1);
  }
  return FreeWord::from_letters(letters);
}

DPlusReport d_plus(const ReductionGraph& g, const FreeBasis& basis,
                   const FreeWord& w) {
  PathStack ps(g);
  for (auto [gen, exp] : w.letters()) {
    if (gen < 0 || gen >= static_cast<int>(basis.generator_paths.size()))
      throw DomainError("BadInput", "generator index out of range");
    ps.push_path(basis.generator_paths[gen], exp > 0);
  }
  return ps.report();
}

void walk_reduced_words(const ReductionGraph& g, const FreeBasis& basis,
                        int max_len, WordVisitor& visitor) {
  int b1 = static_cast<int>(basis.generator_paths.size());
  if (b1 == 0 || max_len <= 0) return;
  PathStack ps(g);
  // iterative DFS over reduced words
  struct Frame {
    int gen, exp;
    PathStack::Undo undo;
  };
  std::vector<Frame> stack;
  auto descend = [&](int gen, int exp) -> bool {
    Frame f{gen, exp, ps.push_path(basis.generator_paths[gen], exp > 0)};
    if (!visitor.enter(gen, exp, ps.report())) {
      ps.undo(f.undo);
      return false;
    }
    stack.push_back(std::move(f));
    return true;
  };
  std::function<void()> recurse = [&]() {
    if (static_cast<int>(stack.size()) >= max_len) return;
    for (int gen = 0; gen < b1; ++gen)
      for (int exp : {1, -1}) {
        if (!stack.empty() && stack.back().gen == gen &&
            stack.back().exp == -exp)
          continue;  // not reduced
        if (descend(gen, exp)) {
          recurse();
          visitor.leave();
          ps.undo(stack.back().undo);
          stack.pop_back();
        }
      }
  };
  recurse();
}

// ---------------------------------------------------------------------------
// admissible orientation

ReductionGraph orient_admissible(const ReductionGraph& g, int check_depth) {
  const auto& edges = g.edges();
  for (const auto& e : edges)
    if (e.from == e.to)
      throw DomainError("CycleTooShort",
                        "self-loop " + e.id + " cannot carry a mixed cycle");
  // pass 1: spanning tree oriented away from the base
  FreeBasis b0 = free_basis(g);
  std::vector<bool> flip(edges.size(), false);
  {
    // walk the tree from the base; a tree edge must point parent -> child
    std::vector<bool> visited(g.vertices().size(), false);
    visited[g.base_vertex()] = true;
    std::queue<int> q;
    q.push(g.base_vertex());
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (size_t ei = 0; ei < edges.size(); ++ei) {
        if (!b0.in_tree[ei]) continue;
        const GraphEdge& e = edges[ei];
        if (e.from == v && !visited[e.to]) {
          visited[e.to] = true;
          q.push(e.to);
        } else if (e.to == v && !visited[e.from]) {
          flip[ei] = true;
          visited[e.from] = true;
          q.push(e.from);
        }
      }
    }
  }
  // pass 2: a chord whose head is the base would make an all-positive cycle
  for (int ei : b0.chord_edges) {
    const GraphEdge& e = edges[ei];
    int head = flip[ei] ? e.from : e.to;
    int tail = flip[ei] ? e.to : e.from;
    if (head == g.base_vertex() && tail != g.base_vertex()) flip[ei] = !flip[ei];
  }
  ReductionGraph out = g.with_flipped(flip);
  // verification by enumeration: d_plus(w) != 1 for all reduced w != 1
  FreeBasis basis = free_basis(out);
  std::string witness;
  WordVisitor v;
  std::vector<std::pair<int, int>> current;
  v.enter = [&](int gen, int exp, const DPlusReport& rep) {
    if (!witness.empty()) return false;
    current.emplace_back(gen, exp);
    if (rep.d_plus_exp < 1 || rep.l_plus < 1 || rep.l_plus > rep.l - 1) {
      witness = FreeWord::from_letters(current).str();
      current.pop_back();
      return false;
    }
    return true;
  };
  v.leave = [&]() { current.pop_back(); };
  walk_reduced_words(out, basis, check_depth, v);
  if (!witness.empty())
    throw DomainError("AdmissibilityUnverified",
                      "d_plus degenerates at word " + witness);
  return out;
}

ReductionGraph tate_cycle_graph(long prime, int m) {
  if (m < 2)
    throw DomainError("TooShort", "the cycle needs at least 2 edges");
  std::vector<std::string> vs;
  std::vector<GraphEdge> es;
  for (int i = 0; i < m; ++i) {
    vs.push_back("v" + std::to_string(i));
    es.push_back({"e" + std::to_string(i), i, (i + 1) % m, 1});
  }
  ReductionGraph g(prime, vs, es, 0);
  return orient_admissible(g, std::min(2 * m, 8));
}

// ---------------------------------------------------------------------------
// finite groups and voltage covers

GroupTable::GroupTable(int order, std::vector<int> mul_table)
    : n_(order), id_(-1), mul_(std::move(mul_table)) {
  if (n_ < 1 || static_cast<int>(mul_.size()) != n_ * n_)
    throw DomainError("NotAGroup", "multiplication table has wrong size");
  for (int x : mul_)
    if (x < 0 || x >= n_)
      throw DomainError("NotAGroup", "table entry out of range");
  // identity
  for (int e = 0; e < n_; ++e) {
    bool ok = true;
    for (int a = 0; a < n_ && ok; ++a)
      ok = mul(e, a) == a && mul(a, e) == a;
    if (ok) {
      id_ = e;
      break;
    }
  }
  if (id_ < 0) throw DomainError("NotAGroup", "no identity element");
  // inverses + cancellation (rows and columns are permutations)
  inv_.assign(n_, -1);
  for (int a = 0; a < n_; ++a) {
    std::vector<bool> row(n_, false), col(n_, false);
    for (int b = 0; b < n_; ++b) {
      row[mul(a, b)] = true;
      col[mul(b, a)] = true;
      if (mul(a, b) == id_ && mul(b, a) == id_) inv_[a] = b;
    }
    for (int x = 0; x < n_; ++x)
      if (!row[x] || !col[x])
        throw DomainError("NotAGroup", "table row/column is not a permutation");
    if (inv_[a] < 0) throw DomainError("NotAGroup", "missing inverse");
  }
  for (int a = 0; a < n_; ++a)
    for (int b = 0; b < n_; ++b)
      for (int c = 0; c < n_; ++c)
        if (mul(mul(a, b), c) != mul(a, mul(b, c)))
          throw DomainError("NotAGroup", "associativity fails");
}

GroupView group_view(const GroupTable& t) {
  return {t.order(), t.identity(), [&t](int a, int b) { return t.mul(a, b); }};
}

ReductionGraph voltage_cover(const ReductionGraph& g, const FreeBasis& basis,
                             const GroupView& gq,
                             const std::vector<int>& voltages) {
  if (voltages.size() != basis.chord_edges.size())
    throw DomainError("ShapeMismatch", "one voltage per non-tree edge");
  std::vector<int> edge_voltage(g.edges().size(), gq.identity);
  for (size_t i = 0; i < voltages.size(); ++i) {
    if (voltages[i] < 0 || voltages[i] >= gq.order)
      throw DomainError("BadInput", "voltage out of range");
    edge_voltage[basis.chord_edges[i]] = voltages[i];
  }
  long n = gq.order;
  std::vector<std::string> vs;
  vs.reserve(g.vertices().size() * n);
  for (const auto& label : g.vertices())
    for (long h = 0; h < n; ++h) vs.push_back(label + "@" + std::to_string(h));
  std::vector<GraphEdge> es;
  es.reserve(g.edges().size() * n);
  for (size_t ei = 0; ei < g.edges().size(); ++ei) {
    const GraphEdge& e = g.edges()[ei];
    for (long h = 0; h < n; ++h) {
      long ht = gq.mul(static_cast<int>(h), edge_voltage[ei]);
      es.push_back({e.id + "@" + std::to_string(h),
                    static_cast<int>(e.from * n + h),
                    static_cast<int>(e.to * n + ht), e.width_exp});
    }
  }
  int base = static_cast<int>(g.base_vertex() * n + gq.identity);
  return {g.prime(), vs, es, base};
}

}  // namespace mumford
