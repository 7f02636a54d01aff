#include "rungs/oracle.hpp"

#include <algorithm>
#include <map>

#include <Eigen/Dense>

namespace rungs {

namespace {

// Backtracking over edges in segment order. Besides acyclicity, each vertex
// is "closed" once all its incident edges are decided; a component with no
// open vertex that is not the whole graph can never be completed.
class TreeSearch {
 public:
  explicit TreeSearch(const Segment& s)
      : seg_(s),
        n_(static_cast<int>(s.vertex_count())),
        m_(static_cast<int>(s.edge_count())),
        parent_(n_),
        size_(n_, 1),
        open_(n_, 1),
        closes_at_(m_),
        chosen_(s.edge_count()) {
    for (int v = 0; v < n_; ++v) parent_[v] = v;
    std::vector<int> last(n_, -1);
    for (int e = 0; e < m_; ++e) {
      last[s.edges[e].u] = e;
      last[s.edges[e].v] = e;
    }
    for (int v = 0; v < n_; ++v) {
      if (last[v] >= 0) closes_at_[last[v]].push_back(v);
      else isolated_ = isolated_ || n_ > 1;
    }
  }

  int edges() const { return m_; }

  // Walks decisions from `start` onward; `emit` receives each completed tree.
  template <class Emit>
  void run(int start, Emit&& emit) {
    if (isolated_) return;
    if (start == m_) {
      if (n_ - 1 == picked_) emit(chosen_);
      return;
    }
    for (int take = 1; take >= 0; --take) {
      if (!apply(start, take != 0)) continue;
      run(start + 1, emit);
      undo(start, take != 0);
    }
  }

  // Collects viable prefixes of length `depth` (as include bitmasks).
  void prefixes(int start, int depth, std::uint64_t mask, std::vector<std::uint64_t>& out) {
    if (isolated_) return;
    if (start == depth) {
      out.push_back(mask);
      return;
    }
    for (int take = 1; take >= 0; --take) {
      if (!apply(start, take != 0)) continue;
      prefixes(start + 1, depth, take ? mask | (std::uint64_t{1} << start) : mask, out);
      undo(start, take != 0);
    }
  }

  bool replay(int depth, std::uint64_t mask) {
    for (int e = 0; e < depth; ++e)
      if (!apply(e, (mask >> e) & 1u)) return false;
    return true;
  }

 private:
  int find(int x) const {
    while (parent_[x] != x) x = parent_[x];
    return x;
  }

  // Returns false (with state unchanged) if the decision is not viable.
  bool apply(int e, bool take) {
    const int remaining = m_ - e - 1;
    if (take) {
      if (picked_ + 1 > n_ - 1) return false;
      int a = find(seg_.edges[e].u), b = find(seg_.edges[e].v);
      if (a == b) return false;
      if (size_[a] < size_[b]) std::swap(a, b);
      parent_[b] = a;
      size_[a] += size_[b];
      open_[a] += open_[b];
      merged_.push_back(b);
      chosen_.insert(e);
      ++picked_;
    } else if (picked_ + remaining < n_ - 1) {
      return false;
    }
    bool ok = true;
    for (int v : closes_at_[e]) {
      int r = find(v);
      if (--open_[r] == 0 && size_[r] < n_) ok = false;
    }
    if (!ok) {
      undo(e, take);
      return false;
    }
    return true;
  }

  void undo(int e, bool take) {
    for (auto it = closes_at_[e].rbegin(); it != closes_at_[e].rend(); ++it) ++open_[find(*it)];
    if (take) {
      int b = merged_.back();
      merged_.pop_back();
      int a = parent_[b];
      open_[a] -= open_[b];
      size_[a] -= size_[b];
      parent_[b] = b;
      chosen_.erase(e);
      --picked_;
    }
  }

  const Segment& seg_;
  int n_, m_;
  std::vector<int> parent_, size_, open_;
  std::vector<std::vector<int>> closes_at_;
  std::vector<int> merged_;
  EdgeSet chosen_;
  int picked_ = 0;
  bool isolated_ = false;
};

void check_cap(const Segment& s, std::size_t cap) {
  if (s.edge_count() > cap)
    throw CapExceeded("window has " + std::to_string(s.edge_count()) +
                      " edges, enumeration cap is " + std::to_string(cap) +
                      "; shrink the window");
}

WeightPoly monomial_of(const Segment& s, const EdgeSet& t) {
  int a = 0, b = 0;
  for (int e : t.indices()) {
    a += s.edges[e].c_power();
    b += s.edges[e].d_power();
  }
  return WeightPoly::monomial(a, b);
}

constexpr int kPrefixDepth = 10;

}  // namespace

void for_each_tree(const Segment& segment, const std::function<void(const EdgeSet&)>& visit,
                   std::size_t cap) {
  check_cap(segment, cap);
  TreeSearch(segment).run(0, visit);
}

std::vector<EdgeSet> enumerate_trees(const Segment& segment, std::size_t cap) {
  std::vector<EdgeSet> out;
  for_each_tree(segment, [&](const EdgeSet& t) { out.push_back(t); }, cap);
  return out;
}

std::vector<EdgeSet> enumerate_trees_parallel(const Segment& segment, std::size_t cap) {
  check_cap(segment, cap);
  const int depth = std::min<int>(kPrefixDepth, static_cast<int>(segment.edge_count()));
  std::vector<std::uint64_t> roots;
  TreeSearch(segment).prefixes(0, depth, 0, roots);
  const long long nroots = static_cast<long long>(roots.size());
  std::vector<std::vector<EdgeSet>> parts(roots.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (long long i = 0; i < nroots; ++i) {
    TreeSearch ts(segment);
    if (ts.replay(depth, roots[i]))
      ts.run(depth, [&](const EdgeSet& t) { parts[i].push_back(t); });
  }
  std::vector<EdgeSet> out;
  for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

WeightPoly weighted_count(const Segment& segment, std::size_t cap) {
  check_cap(segment, cap);
  std::map<std::pair<int, int>, long long> hist;
  TreeSearch(segment).run(0, [&](const EdgeSet& t) {
    int a = 0, b = 0;
    for (int e : t.indices()) {
      a += segment.edges[e].c_power();
      b += segment.edges[e].d_power();
    }
    ++hist[{a, b}];
  });
  WeightPoly p;
  for (const auto& [m, k] : hist) p += WeightPoly::monomial(m.first, m.second, k);
  return p;
}

WeightPoly weighted_count_parallel(const Segment& segment, std::size_t cap) {
  check_cap(segment, cap);
  const int depth = std::min<int>(kPrefixDepth, static_cast<int>(segment.edge_count()));
  std::vector<std::uint64_t> roots;
  TreeSearch(segment).prefixes(0, depth, 0, roots);
  const long long nroots = static_cast<long long>(roots.size());
  std::vector<WeightPoly> parts(roots.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (long long i = 0; i < nroots; ++i) {
    TreeSearch ts(segment);
    if (ts.replay(depth, roots[i]))
      ts.run(depth, [&](const EdgeSet& t) { parts[i] += monomial_of(segment, t); });
  }
  WeightPoly p;
  for (auto& q : parts) p += q;
  return p;
}

BigInt bareiss_determinant(std::vector<BigInt> a, std::size_t n) {
  if (n == 0) return 1;
  BigInt prev = 1;
  int sign = 1;
  auto at = [&](std::size_t i, std::size_t j) -> BigInt& { return a[i * n + j]; };
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (at(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && at(p, k) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(at(k, j), at(p, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j)
        at(i, j) = (at(i, j) * at(k, k) - at(i, k) * at(k, j)) / prev;
      at(i, k) = 0;
    }
    prev = at(k, k);
  }
  return sign * at(n - 1, n - 1);
}

Rational matrix_tree_count(const Segment& segment, const Rational& c, const Rational& d,
                           const EdgeSet* removed) {
  const std::size_t n = segment.vertex_count();
  if (n <= 1) return 1;
  // scale every weight by the common denominator so the Laplacian is integral
  BigInt den = boost::multiprecision::lcm(boost::multiprecision::denominator(c),
                                          boost::multiprecision::denominator(d));
  auto scaled = [&](const Edge& e) -> BigInt {
    Rational w = e.kind == EdgeKind::Rung ? c : (e.kind == EdgeKind::Chord ? d : Rational(1));
    Rational s = w * den;
    return boost::multiprecision::numerator(s);
  };
  const std::size_t m = n - 1;  // drop the last row and column
  std::vector<BigInt> lap(m * m, BigInt(0));
  for (std::size_t e = 0; e < segment.edge_count(); ++e) {
    if (removed && removed->contains(static_cast<int>(e))) continue;
    const Edge& ed = segment.edges[e];
    BigInt w = scaled(ed);
    if (w == 0) continue;
    auto u = static_cast<std::size_t>(ed.u), v = static_cast<std::size_t>(ed.v);
    if (u < m) lap[u * m + u] += w;
    if (v < m) lap[v * m + v] += w;
    if (u < m && v < m) {
      lap[u * m + v] -= w;
      lap[v * m + u] -= w;
    }
  }
  Rational det = bareiss_determinant(std::move(lap), m);
  Rational scale = 1;
  for (std::size_t i = 0; i < m; ++i) scale *= den;
  return det / scale;
}

Rational exact_edge_probability(const Segment& segment, const Rational& c, const Rational& d,
                                int edge) {
  Rational total = matrix_tree_count(segment, c, d);
  if (total == 0) throw ValidationError("segment is disconnected");
  EdgeSet rm(segment.edge_count());
  rm.insert(edge);
  return 1 - matrix_tree_count(segment, c, d, &rm) / total;
}

double edge_probability(const Segment& segment, const Weights& w, int edge) {
  const int n = static_cast<int>(segment.vertex_count());
  const Edge& target = segment.edges.at(edge);
  const double we = target.weight(w);
  if (we == 0.0) return 0.0;
  // ground the last vertex; solve L x = e_u - e_v
  const int m = n - 1;
  Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(m, m);
  for (const auto& e : segment.edges) {
    double x = e.weight(w);
    if (x == 0.0) continue;
    if (e.u < m) lap(e.u, e.u) += x;
    if (e.v < m) lap(e.v, e.v) += x;
    if (e.u < m && e.v < m) {
      lap(e.u, e.v) -= x;
      lap(e.v, e.u) -= x;
    }
  }
  Eigen::VectorXd b = Eigen::VectorXd::Zero(m);
  if (target.u < m) b(target.u) += 1.0;
  if (target.v < m) b(target.v) -= 1.0;
  Eigen::VectorXd x = lap.ldlt().solve(b);
  double pu = target.u < m ? x(target.u) : 0.0;
  double pv = target.v < m ? x(target.v) : 0.0;
  return we * (pu - pv);
}

EdgeSet wilson_sample(const Segment& segment, const Weights& w, Rng& rng) {
  const int n = static_cast<int>(segment.vertex_count());
  struct Arc {
    int to, edge;
    double weight;
  };
  std::vector<std::vector<Arc>> adj(n);
  std::vector<double> total(n, 0.0);
  for (int e = 0; e < static_cast<int>(segment.edge_count()); ++e) {
    const Edge& ed = segment.edges[e];
    double x = ed.weight(w);
    if (x <= 0.0) continue;
    adj[ed.u].push_back({ed.v, e, x});
    adj[ed.v].push_back({ed.u, e, x});
    total[ed.u] += x;
    total[ed.v] += x;
  }
  std::vector<char> in_tree(n, 0);
  std::vector<int> next(n, -1), via(n, -1);
  EdgeSet tree(segment.edge_count());
  if (n == 0) return tree;
  in_tree[0] = 1;
  for (int start = 1; start < n; ++start) {
    int v = start;
    while (!in_tree[v]) {
      if (adj[v].empty()) throw ValidationError("segment is disconnected");
      double r = rng.uniform() * total[v];
      std::size_t k = 0;
      while (k + 1 < adj[v].size() && r >= adj[v][k].weight) r -= adj[v][k++].weight;
      next[v] = adj[v][k].to;
      via[v] = adj[v][k].edge;
      v = next[v];
    }
    for (v = start; !in_tree[v]; v = next[v]) {
      in_tree[v] = 1;
      tree.insert(via[v]);
    }
  }
  return tree;
}

}  // namespace rungs
