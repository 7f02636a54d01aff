#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "rungs/graph.hpp"
#include "rungs/weight_poly.hpp"

namespace rungs {

using PolyMatrix = std::vector<std::vector<WeightPoly>>;

/// Boundary classes of one-sided spanning forests. Every component of such a
/// forest touches the boundary; the class records how the boundary vertices
/// are split among components.
struct StateClassTable {
  Family family;
  int s = 0;
  std::vector<std::string> semantics;
};

StateClassTable state_class_table(Family f);

/// Class (1-based) of `t` relative to the right boundary of the window
/// (hi, hi-1, hi-2 for helix-3; hi, hi-1 for the zigzag; both ladder
/// vertices of column hi), or 0 if `t` has a cycle or a component missing
/// the boundary.
int left_class(const Segment& segment, const EdgeSet& t);

/// Same, relative to the mirrored boundary (lo, lo+1, lo+2).
int right_class(const Segment& segment, const EdgeSet& t);

/// Step-edge subsets are bitmasks over `step_edges` (the edges added when the
/// window grows by one position, in segment order: z, h, g or z, h0, h1).
struct Regenerated {
  Family family;
  int s = 0;
  std::vector<std::string> step_edges;
  std::vector<std::string> bridge_edges;
  /// F[i][j]: step subsets taking class i+1 to class j+1.
  std::vector<std::vector<std::vector<std::uint32_t>>> F;
  /// B[i][j]: bridge subsets joining a left class i+1 and right class j+1
  /// into a spanning tree.
  std::vector<std::vector<std::vector<std::uint32_t>>> B;
  PolyMatrix M, Mprime, N;
  bool consistent = true;
  std::string diagnostic;
};

/// Rebuilds M, M', N from the class semantics by brute force on windows of
/// `width` positions. `consistent` is false if some F or B set depends on the
/// particular forest chosen within a class.
Regenerated regenerate_transfer(Family f, int width = 6);

/// Helix-3 successor symbols (h, z, class) per class, derived from F.
std::array<std::vector<std::array<int, 3>>, 5> derive_successors(const Regenerated& r);

}  // namespace rungs
