#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "rungs/family.hpp"

namespace rungs {

enum class EdgeKind { Rung, Horizontal, Chord };

/// One labelled edge of a finite window. `u`, `v` are dense vertex indices
/// into Segment::vertices; `pos` is the edge's index m in z_m, h_m, h_{i,m},
/// g_m and `row` is i for ladder horizontals (0 otherwise).
struct Edge {
  std::string label;
  EdgeKind kind = EdgeKind::Rung;
  int pos = 0;
  int row = 0;
  int u = 0;
  int v = 0;

  /// Exponents (a, b) such that weight = c^a d^b.
  int c_power() const { return kind == EdgeKind::Rung ? 1 : 0; }
  int d_power() const { return kind == EdgeKind::Chord ? 1 : 0; }
  double weight(const Weights& w) const;
};

/// Vertex label: (row, pos). Helix vertices have row 0.
struct VertexLabel {
  int row = 0;
  int pos = 0;
  std::string str(Family f) const;
};

/// Growable bitset over a segment's edge indices.
class EdgeSet {
 public:
  EdgeSet() = default;
  explicit EdgeSet(std::size_t n_edges) : words_((n_edges + 63) / 64, 0), n_(n_edges) {}

  static EdgeSet from_mask(std::size_t n_edges, std::uint64_t mask);
  static EdgeSet from_indices(std::size_t n_edges, const std::vector<int>& idx);

  void insert(int e) { words_[e >> 6] |= (std::uint64_t{1} << (e & 63)); }
  void erase(int e) { words_[e >> 6] &= ~(std::uint64_t{1} << (e & 63)); }
  bool contains(int e) const { return (words_[e >> 6] >> (e & 63)) & 1u; }
  std::size_t count() const;
  std::size_t universe() const { return n_; }
  std::vector<int> indices() const;

  bool operator==(const EdgeSet&) const = default;
  auto operator<=>(const EdgeSet& o) const { return words_ <=> o.words_; }

 private:
  std::vector<std::uint64_t> words_;
  std::size_t n_ = 0;
};

/// Induced finite window G_{lo,hi} of one of the four families.
struct Segment {
  GraphFamily family;
  int lo = 0;
  int hi = 0;
  std::vector<VertexLabel> vertices;
  std::vector<Edge> edges;
  /// Fewer vertices than the chord span needs for the window to be a
  /// genuine piece of the infinite graph.
  bool degenerate = false;

  std::size_t vertex_count() const { return vertices.size(); }
  std::size_t edge_count() const { return edges.size(); }
  int vertex_index(int row, int pos) const;
  /// Index of the edge with this label, or -1.
  int find_edge(const std::string& label) const;
  EdgeSet edge_set(const std::vector<std::string>& labels) const;
  std::vector<std::string> labels(const EdgeSet& s) const;
};

/// Builds the induced window [lo, hi]. Throws ValidationError if hi < lo.
/// Edge order is stable: by position, then z, h (row 0, row 1), g.
Segment build_segment(const GraphFamily& family, int lo, int hi);

/// Connected and acyclic on all of the segment's vertices.
bool is_spanning_tree(const Segment& segment, const EdgeSet& edges);

/// Acyclic (the edge set is a forest).
bool is_forest(const Segment& segment, const EdgeSet& edges);

nlohmann::json to_json(const Segment& segment);

/// Union-find with optional rollback (no path compression when rolling back).
class DisjointSets {
 public:
  explicit DisjointSets(int n);
  int find(int x) const;
  /// Returns false if already joined.
  bool unite(int a, int b);
  void rollback(std::size_t to);
  std::size_t history() const { return log_.size(); }
  int components() const { return components_; }

 private:
  std::vector<int> parent_;
  std::vector<int> size_;
  std::vector<int> log_;
  int components_;
};

}  // namespace rungs
