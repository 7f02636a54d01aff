#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "rungs/graph.hpp"
#include "rungs/rng.hpp"
#include "rungs/weight_poly.hpp"

namespace rungs {

/// Enumeration refused because the window has more edges than the cap.
class CapExceeded : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

inline constexpr std::size_t kDefaultEdgeCap = 26;

/// All spanning trees, each once, in lexicographic order of their
/// include/exclude decisions along the segment's edge order.
std::vector<EdgeSet> enumerate_trees(const Segment& segment, std::size_t cap = kDefaultEdgeCap);

/// Same output, with the search split over a prefix frontier and run under
/// OpenMP. Result order is identical to enumerate_trees.
std::vector<EdgeSet> enumerate_trees_parallel(const Segment& segment,
                                              std::size_t cap = kDefaultEdgeCap);

/// Calls `visit` for every spanning tree without materializing the list.
void for_each_tree(const Segment& segment, const std::function<void(const EdgeSet&)>& visit,
                   std::size_t cap = kDefaultEdgeCap);

/// Exact sum over spanning trees of c^{#rungs} d^{#chords}.
WeightPoly weighted_count(const Segment& segment, std::size_t cap = kDefaultEdgeCap);
WeightPoly weighted_count_parallel(const Segment& segment, std::size_t cap = kDefaultEdgeCap);

/// Kirchhoff cofactor of the weighted Laplacian, exact. Edges in `removed`
/// are deleted first. Disconnected graphs give 0; a single vertex gives 1.
Rational matrix_tree_count(const Segment& segment, const Rational& c, const Rational& d,
                           const EdgeSet* removed = nullptr);

/// Fraction-free determinant of a square integer matrix (row-major, n x n).
BigInt bareiss_determinant(std::vector<BigInt> a, std::size_t n);

/// Exact P[e in T] = 1 - T(G - e)/T(G).
Rational exact_edge_probability(const Segment& segment, const Rational& c, const Rational& d,
                                int edge);

/// Floating P[e in T] = weight(e) * R_eff(u, v), from a Laplacian solve.
double edge_probability(const Segment& segment, const Weights& w, int edge);

/// Wilson's algorithm (loop-erased random walks toward vertex 0).
EdgeSet wilson_sample(const Segment& segment, const Weights& w, Rng& rng);

}  // namespace rungs
