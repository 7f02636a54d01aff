#include "rungs/graph.hpp"

#include <bit>
#include <utility>

namespace rungs {

double Edge::weight(const Weights& w) const {
  switch (kind) {
    case EdgeKind::Rung: return w.c;
    case EdgeKind::Chord: return w.d;
    case EdgeKind::Horizontal: return 1.0;
  }
  return 1.0;
}

std::string VertexLabel::str(Family f) const {
  if (f == Family::Ladder) return "(" + std::to_string(row) + "," + std::to_string(pos) + ")";
  return std::to_string(pos);
}

EdgeSet EdgeSet::from_mask(std::size_t n_edges, std::uint64_t mask) {
  EdgeSet s(n_edges);
  if (!s.words_.empty()) s.words_[0] = mask;
  return s;
}

EdgeSet EdgeSet::from_indices(std::size_t n_edges, const std::vector<int>& idx) {
  EdgeSet s(n_edges);
  for (int e : idx) s.insert(e);
  return s;
}

std::size_t EdgeSet::count() const {
  std::size_t n = 0;
  for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

std::vector<int> EdgeSet::indices() const {
  std::vector<int> out;
  for (std::size_t e = 0; e < n_; ++e)
    if (contains(static_cast<int>(e))) out.push_back(static_cast<int>(e));
  return out;
}

int Segment::vertex_index(int row, int pos) const {
  if (pos < lo || pos > hi) return -1;
  if (family.kind == Family::Ladder) {
    if (row < 0 || row > 1) return -1;
    return 2 * (pos - lo) + row;
  }
  return row == 0 ? pos - lo : -1;
}

int Segment::find_edge(const std::string& label) const {
  for (std::size_t i = 0; i < edges.size(); ++i)
    if (edges[i].label == label) return static_cast<int>(i);
  return -1;
}

EdgeSet Segment::edge_set(const std::vector<std::string>& names) const {
  EdgeSet s(edges.size());
  for (const auto& n : names) {
    int e = find_edge(n);
    if (e < 0) throw ValidationError("edge '" + n + "' is not in the segment");
    s.insert(e);
  }
  return s;
}

std::vector<std::string> Segment::labels(const EdgeSet& s) const {
  std::vector<std::string> out;
  for (int e : s.indices()) out.push_back(edges[e].label);
  return out;
}

namespace {

void add_edge(Segment& s, EdgeKind kind, int pos, int row, int u, int v) {
  Edge e;
  e.kind = kind;
  e.pos = pos;
  e.row = row;
  e.u = u;
  e.v = v;
  switch (kind) {
    case EdgeKind::Rung: e.label = "z_" + std::to_string(pos); break;
    case EdgeKind::Chord: e.label = "g_" + std::to_string(pos); break;
    case EdgeKind::Horizontal:
      e.label = s.family.kind == Family::Ladder
                    ? "h_{" + std::to_string(row) + "," + std::to_string(pos) + "}"
                    : "h_" + std::to_string(pos);
      break;
  }
  s.edges.push_back(std::move(e));
}

}  // namespace

Segment build_segment(const GraphFamily& family, int lo, int hi) {
  if (hi < lo) throw ValidationError("segment window requires lo <= hi");
  if (family.is_numeric()) validate_weights(family.kind, *family.c, family.d.value_or(0.0));

  Segment s;
  s.family = family;
  s.lo = lo;
  s.hi = hi;

  if (family.kind == Family::Ladder) {
    for (int m = lo; m <= hi; ++m) {
      s.vertices.push_back({0, m});
      s.vertices.push_back({1, m});
    }
    for (int m = lo; m <= hi; ++m) {
      add_edge(s, EdgeKind::Rung, m, 0, s.vertex_index(0, m), s.vertex_index(1, m));
      if (m > lo) {
        add_edge(s, EdgeKind::Horizontal, m, 0, s.vertex_index(0, m - 1), s.vertex_index(0, m));
        add_edge(s, EdgeKind::Horizontal, m, 1, s.vertex_index(1, m - 1), s.vertex_index(1, m));
      }
    }
    return s;
  }

  const int span = chord_span(family.kind);
  for (int m = lo; m <= hi; ++m) s.vertices.push_back({0, m});
  for (int m = lo + 1; m <= hi; ++m) {
    add_edge(s, EdgeKind::Rung, m, 0, m - 1 - lo, m - lo);
    if (m - span >= lo) add_edge(s, EdgeKind::Horizontal, m, 0, m - span - lo, m - lo);
    if (family.kind == Family::EnhancedHelix3 && m - 2 >= lo)
      add_edge(s, EdgeKind::Chord, m, 0, m - 2 - lo, m - lo);
  }
  s.degenerate = (hi - lo) < span - 1;
  return s;
}

bool is_forest(const Segment& segment, const EdgeSet& edges) {
  DisjointSets ds(static_cast<int>(segment.vertex_count()));
  for (int e : edges.indices())
    if (!ds.unite(segment.edges[e].u, segment.edges[e].v)) return false;
  return true;
}

bool is_spanning_tree(const Segment& segment, const EdgeSet& edges) {
  if (edges.count() + 1 != segment.vertex_count()) return false;
  return is_forest(segment, edges);
}

nlohmann::json to_json(const Segment& s) {
  nlohmann::json j;
  j["family"] = to_string(s.family.kind);
  if (s.family.c) j["c"] = *s.family.c; else j["c"] = "c";
  if (s.family.kind == Family::EnhancedHelix3) {
    if (s.family.d) j["d"] = *s.family.d; else j["d"] = "d";
  } else {
    j["d"] = 0.0;
  }
  j["lo"] = s.lo;
  j["hi"] = s.hi;
  j["degenerate"] = s.degenerate;
  auto& vs = j["vertices"] = nlohmann::json::array();
  for (const auto& v : s.vertices) vs.push_back(v.str(s.family.kind));
  auto& es = j["edges"] = nlohmann::json::array();
  for (const auto& e : s.edges) {
    nlohmann::json je{{"label", e.label}, {"u", e.u}, {"v", e.v}};
    if (s.family.is_numeric()) {
      je["weight"] = e.weight(s.family.weights());
    } else {
      je["weight"] = e.kind == EdgeKind::Rung ? "c" : (e.kind == EdgeKind::Chord ? "d" : "1");
    }
    es.push_back(std::move(je));
  }
  return j;
}

DisjointSets::DisjointSets(int n) : parent_(n), size_(n, 1), components_(n) {
  for (int i = 0; i < n; ++i) parent_[i] = i;
}

int DisjointSets::find(int x) const {
  while (parent_[x] != x) x = parent_[x];
  return x;
}

bool DisjointSets::unite(int a, int b) {
  a = find(a);
  b = find(b);
  if (a == b) return false;
  if (size_[a] < size_[b]) std::swap(a, b);
  parent_[b] = a;
  size_[a] += size_[b];
  log_.push_back(b);
  --components_;
  return true;
}

void DisjointSets::rollback(std::size_t to) {
  while (log_.size() > to) {
    int b = log_.back();
    log_.pop_back();
    int a = parent_[b];
    size_[a] -= size_[b];
    parent_[b] = b;
    ++components_;
  }
}

}  // namespace rungs
