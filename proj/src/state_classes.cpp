#include "rungs/state_classes.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>

namespace rungs {

StateClassTable state_class_table(Family f) {
  StateClassTable t;
  t.family = f;
  t.s = class_count(f);
  if (f == Family::Ladder) {
    t.semantics = {"tree", "two components, (0,n) and (1,n) apart"};
  } else if (f == Family::Zigzag) {
    t.semantics = {"tree", "two components, n and n-1 apart"};
  } else {
    t.semantics = {"tree", "{n} | {n-1, n-2}", "{n-2} | {n, n-1}", "{n-1} | {n, n-2}",
                   "{n} | {n-1} | {n-2}"};
  }
  return t;
}

namespace {

std::vector<int> boundary(const Segment& s, bool right_side) {
  std::vector<int> b;
  if (s.family.kind == Family::Ladder) {
    int col = right_side ? s.lo : s.hi;
    b = {s.vertex_index(0, col), s.vertex_index(1, col)};
  } else {
    const int width = s.family.kind == Family::Zigzag ? 2 : 3;
    for (int k = 0; k < width; ++k) b.push_back(s.vertex_index(0, right_side ? s.lo + k : s.hi - k));
  }
  return b;
}

int classify(const Segment& s, const EdgeSet& t, bool right_side) {
  const int n = static_cast<int>(s.vertex_count());
  DisjointSets ds(n);
  for (int e : t.indices())
    if (!ds.unite(s.edges[e].u, s.edges[e].v)) return 0;
  auto b = boundary(s, right_side);
  if (std::any_of(b.begin(), b.end(), [](int v) { return v < 0; })) return 0;
  std::vector<char> touched(n, 0);
  for (int v : b) touched[ds.find(v)] = 1;
  for (int v = 0; v < n; ++v)
    if (!touched[ds.find(v)]) return 0;
  if (b.size() == 2) return ds.find(b[0]) == ds.find(b[1]) ? 1 : 2;
  const int r0 = ds.find(b[0]), r1 = ds.find(b[1]), r2 = ds.find(b[2]);
  if (r0 == r1 && r1 == r2) return 1;
  if (r1 == r2) return 2;
  if (r0 == r1) return 3;
  if (r0 == r2) return 4;
  return 5;
}

GraphFamily symbolic_family(Family f) { return GraphFamily::symbolic(f); }

WeightPoly subset_weight(const std::vector<const Edge*>& edges, std::uint32_t mask) {
  int a = 0, b = 0;
  for (std::size_t k = 0; k < edges.size(); ++k)
    if (mask >> k & 1u) {
      a += edges[k]->c_power();
      b += edges[k]->d_power();
    }
  return WeightPoly::monomial(a, b);
}

// Every classified forest of the window, grouped by class.
std::vector<std::vector<EdgeSet>> forests_by_class(const Segment& s, int classes, bool right_side) {
  std::vector<std::vector<EdgeSet>> out(classes);
  const std::size_t m = s.edge_count();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    EdgeSet t = EdgeSet::from_mask(m, mask);
    int c = classify(s, t, right_side);
    if (c > 0) out[c - 1].push_back(std::move(t));
  }
  return out;
}

// Up to `k` members spread across the class.
std::vector<const EdgeSet*> representatives(const std::vector<EdgeSet>& all, std::size_t k) {
  std::vector<const EdgeSet*> out;
  if (all.empty()) return out;
  const std::size_t step = std::max<std::size_t>(1, all.size() / k);
  for (std::size_t i = 0; i < all.size() && out.size() < k; i += step) out.push_back(&all[i]);
  if (out.back() != &all.back()) out.push_back(&all.back());
  return out;
}

}  // namespace

int left_class(const Segment& segment, const EdgeSet& t) { return classify(segment, t, false); }
int right_class(const Segment& segment, const EdgeSet& t) { return classify(segment, t, true); }

Regenerated regenerate_transfer(Family f, int width) {
  Regenerated r;
  r.family = f;
  r.s = class_count(f);
  const int s = r.s;
  const GraphFamily fam = symbolic_family(f);
  r.F.assign(s, std::vector<std::vector<std::uint32_t>>(s));
  r.B.assign(s, std::vector<std::vector<std::uint32_t>>(s));
  r.M.assign(s, std::vector<WeightPoly>(s));
  r.Mprime.assign(s, std::vector<WeightPoly>(s));
  r.N.assign(s, std::vector<WeightPoly>(s));

  // growth: window [0, width] extended to [0, width+1]
  const Segment base = build_segment(fam, 0, width);
  const Segment grown = build_segment(fam, 0, width + 1);
  std::vector<int> base_to_grown(base.edge_count());
  for (std::size_t e = 0; e < base.edge_count(); ++e)
    base_to_grown[e] = grown.find_edge(base.edges[e].label);
  std::vector<int> step_idx;
  std::vector<const Edge*> step;
  for (std::size_t e = 0; e < grown.edge_count(); ++e)
    if (base.find_edge(grown.edges[e].label) < 0) {
      step_idx.push_back(static_cast<int>(e));
      step.push_back(&grown.edges[e]);
      std::string rel = grown.edges[e].label;
      rel = rel.substr(0, rel.find('_'));
      if (f == Family::Ladder && grown.edges[e].kind == EdgeKind::Horizontal)
        rel += std::to_string(grown.edges[e].row);
      r.step_edges.push_back(rel);
    }
  const std::uint32_t nsub = 1u << step.size();

  auto left = forests_by_class(base, s, false);
  for (int i = 0; i < s; ++i) {
    bool first = true;
    std::vector<std::set<std::uint32_t>> seen(s);
    for (const auto& t : left[i]) {
      std::vector<std::set<std::uint32_t>> cur(s);
      for (std::uint32_t sub = 0; sub < nsub; ++sub) {
        EdgeSet g(grown.edge_count());
        for (int e : t.indices()) g.insert(base_to_grown[e]);
        for (std::size_t k = 0; k < step.size(); ++k)
          if (sub >> k & 1u) g.insert(step_idx[k]);
        int j = left_class(grown, g);
        if (j > 0) cur[j - 1].insert(sub);
      }
      if (first) {
        seen = cur;
        first = false;
      } else if (cur != seen) {
        r.consistent = false;
        r.diagnostic = "F set for class " + std::to_string(i + 1) + " depends on the forest";
      }
    }
    if (left[i].empty()) {
      r.consistent = false;
      r.diagnostic = "class " + std::to_string(i + 1) + " not realized on the window";
    }
    for (int j = 0; j < s; ++j) {
      r.F[i][j].assign(seen[j].begin(), seen[j].end());
      for (auto sub : r.F[i][j]) {
        WeightPoly w = subset_weight(step, sub);
        r.M[i][j] += w;
        for (std::size_t k = 0; k < step.size(); ++k)
          if ((sub >> k & 1u) && step[k]->kind == EdgeKind::Rung) r.Mprime[i][j] += w;
      }
    }
  }

  // bridges: left piece [-width, 0], right piece [0, width] (shared vertex)
  // or [1, width] for the ladder
  const int right_lo = f == Family::Ladder ? 1 : 0;
  const Segment lseg = build_segment(fam, -width, 0);
  const Segment rseg = build_segment(fam, right_lo, width);
  const Segment whole = build_segment(fam, -width, width);
  std::vector<int> lmap(lseg.edge_count()), rmap(rseg.edge_count());
  for (std::size_t e = 0; e < lseg.edge_count(); ++e) lmap[e] = whole.find_edge(lseg.edges[e].label);
  for (std::size_t e = 0; e < rseg.edge_count(); ++e) rmap[e] = whole.find_edge(rseg.edges[e].label);
  std::vector<int> bridge_idx;
  std::vector<const Edge*> bridges;
  for (std::size_t e = 0; e < whole.edge_count(); ++e) {
    const auto& lab = whole.edges[e].label;
    if (lseg.find_edge(lab) < 0 && rseg.find_edge(lab) < 0) {
      bridge_idx.push_back(static_cast<int>(e));
      bridges.push_back(&whole.edges[e]);
      r.bridge_edges.push_back(lab);
    }
  }
  const std::uint32_t nb = 1u << bridges.size();
  auto lforests = forests_by_class(lseg, s, false);
  auto rforests = forests_by_class(rseg, s, true);
  for (int i = 0; i < s; ++i) {
    for (int j = 0; j < s; ++j) {
      bool first = true;
      std::set<std::uint32_t> seen;
      for (const EdgeSet* tl : representatives(lforests[i], 10)) {
        for (const EdgeSet* tr : representatives(rforests[j], 10)) {
          std::set<std::uint32_t> cur;
          for (std::uint32_t sub = 0; sub < nb; ++sub) {
            EdgeSet g(whole.edge_count());
            for (int e : tl->indices()) g.insert(lmap[e]);
            for (int e : tr->indices()) g.insert(rmap[e]);
            for (std::size_t k = 0; k < bridges.size(); ++k)
              if (sub >> k & 1u) g.insert(bridge_idx[k]);
            if (is_spanning_tree(whole, g)) cur.insert(sub);
          }
          if (first) {
            seen = cur;
            first = false;
          } else if (cur != seen) {
            r.consistent = false;
            r.diagnostic = "bridge set (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                           ") depends on the forests";
          }
        }
      }
      r.B[i][j].assign(seen.begin(), seen.end());
      for (auto sub : r.B[i][j]) r.N[i][j] += subset_weight(bridges, sub);
    }
  }
  return r;
}

std::array<std::vector<std::array<int, 3>>, 5> derive_successors(const Regenerated& r) {
  if (r.s != 5) throw ValidationError("successor symbols are defined for the helix-3 classes");
  int zbit = -1, hbit = -1;
  for (std::size_t k = 0; k < r.step_edges.size(); ++k) {
    if (r.step_edges[k] == "z") zbit = static_cast<int>(k);
    if (r.step_edges[k] == "h") hbit = static_cast<int>(k);
  }
  std::array<std::vector<std::array<int, 3>>, 5> out;
  for (int i = 0; i < 5; ++i) {
    for (int j = 0; j < 5; ++j)
      for (auto sub : r.F[i][j]) {
        // chords are not part of the helix-3 alphabet
        if (sub & ~((1u << zbit) | (1u << hbit))) continue;
        out[i].push_back({static_cast<int>(sub >> hbit & 1u), static_cast<int>(sub >> zbit & 1u), j + 1});
      }
    std::sort(out[i].begin(), out[i].end());
  }
  return out;
}

}  // namespace rungs
