#pragma once

#include <functional>
#include <string>
#include <vector>

#include "mumford/padic.hpp"

namespace mumford {

struct GraphEdge {
  std::string id;
  int from = 0;
  int to = 0;
  long width_exp = 1;  // |pi_d| = p^-width_exp, width_exp >= 1
};

/// Finite connected oriented graph with edge widths; the orientation is the
/// from -> to direction of each edge.
class ReductionGraph {
 public:
  ReductionGraph(long prime, std::vector<std::string> vertices,
                 std::vector<GraphEdge> edges, int base_vertex);

  long prime() const { return prime_; }
  const std::vector<std::string>& vertices() const { return vertices_; }
  const std::vector<GraphEdge>& edges() const { return edges_; }
  int base_vertex() const { return base_; }
  int betti() const {
    return static_cast<int>(edges_.size()) -
           static_cast<int>(vertices_.size()) + 1;
  }
  int vertex_index(const std::string& label) const;

  /// same graph with one edge's direction swapped
  ReductionGraph with_flipped(const std::vector<bool>& flip) const;

 private:
  long prime_;
  std::vector<std::string> vertices_;
  std::vector<GraphEdge> edges_;
  int base_;
};

/// Reduced word in the free generators; letters are (generator, +-1).
class FreeWord {
 public:
  FreeWord() = default;
  /// frees-reduces the letter sequence
  static FreeWord from_letters(const std::vector<std::pair<int, int>>& letters);
  static FreeWord generator(int i, int exp = 1);

  const std::vector<std::pair<int, int>>& letters() const { return letters_; }
  bool identity() const { return letters_.empty(); }
  size_t length() const { return letters_.size(); }
  FreeWord inverse() const;
  FreeWord operator*(const FreeWord& o) const;
  FreeWord pow(long k) const;
  bool cyclically_reduced() const;
  bool operator==(const FreeWord& o) const { return letters_ == o.letters_; }
  std::string str() const;  // "g0 g1^-1 g0^2" style, "1" for the identity

 private:
  std::vector<std::pair<int, int>> letters_;
};

/// One traversal of an edge; forward means from -> to (positive orientation).
struct Step {
  int edge = 0;
  bool forward = true;
  bool operator==(const Step&) const = default;
};

/// Spanning tree plus one free generator per chord; generator i is the closed
/// reduced walk  base -> chord.from, chord, chord.to -> base.
struct FreeBasis {
  std::vector<bool> in_tree;                  // per edge
  std::vector<int> chord_edges;               // generator -> edge index
  std::vector<std::vector<Step>> generator_paths;
};

FreeBasis free_basis(const ReductionGraph& g);

/// l, l_plus and the positive-width exponent of a reduced edge path;
/// d_plus = p^-d_plus_exp.
struct DPlusReport {
  long l = 0;
  long l_plus = 0;
  long d_plus_exp = 0;
  bool operator==(const DPlusReport&) const = default;
};

/// Reduced-path accumulator: pushing a step cancels against an immediately
/// preceding inverse traversal, maintaining the geodesic from the base lift.
class PathStack {
 public:
  explicit PathStack(const ReductionGraph& g) : g_(&g) {}
  void push(Step s);
  /// journal tokens for undo: positive = pushed, ~popped step encoded
  struct Undo {
    std::vector<std::pair<bool, Step>> ops;  // (was_push, step)
  };
  Undo push_path(const std::vector<Step>& steps, bool forward);
  void undo(const Undo& u);
  const std::vector<Step>& steps() const { return stack_; }
  DPlusReport report() const { return rep_; }

 private:
  const ReductionGraph* g_;
  std::vector<Step> stack_;
  DPlusReport rep_;
  void add_counters(const Step& s, int sign);
};

/// Unique reduced edge path from the base lift L0 to w.L0 in the universal cover.
std::vector<Step> word_to_path(const ReductionGraph& g, const FreeBasis& basis,
                               const FreeWord& w);

/// Group element of a closed reduced walk at the base, written in `basis`
/// (chord crossings spell the word; tree edges are silent).
FreeWord path_to_word(const ReductionGraph& g, const FreeBasis& basis,
                      const std::vector<Step>& path);

DPlusReport d_plus(const ReductionGraph& g, const FreeBasis& basis,
                   const FreeWord& w);

/// Depth-first walk over all nonidentity reduced words of length <= max_len.
/// enter is called after extending the word by (gen, exp) with the geodesic
/// report for the extended word; returning false prunes the subtree.
struct WordVisitor {
  std::function<bool(int gen, int exp, const DPlusReport&)> enter;
  std::function<void()> leave;
};
void walk_reduced_words(const ReductionGraph& g, const FreeBasis& basis,
                        int max_len, WordVisitor& visitor);

/// Reorients edges so that every fundamental cycle is traversed both with and
/// against the orientation, then verifies d_plus(w) != 1 for all nonidentity
/// reduced words up to check_depth.
ReductionGraph orient_admissible(const ReductionGraph& g, int check_depth);

/// Cycle of m vertices and m edges of width 1, admissibly oriented.
ReductionGraph tate_cycle_graph(long prime, int m);

/// Finite group by multiplication table; construction validates the axioms.
class GroupTable {
 public:
  GroupTable(int order, std::vector<int> mul_table);  // throws NotAGroup
  int order() const { return n_; }
  int identity() const { return id_; }
  int mul(int a, int b) const { return mul_[a * n_ + b]; }
  int inverse(int a) const { return inv_[a]; }

 private:
  int n_;
  int id_;
  std::vector<int> mul_;
  std::vector<int> inv_;
};

/// Group access used by the voltage construction: order, identity, product.
struct GroupView {
  long order = 1;
  int identity = 0;
  std::function<int(int, int)> mul;
};
GroupView group_view(const GroupTable& t);

/// Covering graph with vertices V x G; the edge for (e, h) runs
/// (e.from, h) -> (e.to, h * voltage(e)); tree edges carry the identity and
/// chord i carries voltages[i].  Vertex labels become "label@h".
ReductionGraph voltage_cover(const ReductionGraph& g, const FreeBasis& basis,
                             const GroupView& gq,
                             const std::vector<int>& voltages);

}  // namespace mumford
