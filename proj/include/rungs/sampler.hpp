#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "rungs/graph.hpp"
#include "rungs/kernel.hpp"
#include "rungs/rng.hpp"

namespace rungs {

/// Rung indicators x_m, m in [lo, hi], with optional full-tree edge flags.
/// Ladder: h0[k], h1[k] flag h_{0,lo+k}, h_{1,lo+k}. Helix-3: h0[k] flags h_{lo+k}.
struct SamplePath {
  Family family = Family::Ladder;
  int lo = 0;
  int hi = -1;
  std::vector<std::uint8_t> x;
  std::vector<std::uint8_t> h0, h1;
  std::string sampler;
  std::uint64_t seed = 0;

  std::size_t size() const { return x.size(); }
  bool has_tree() const { return !h0.empty(); }
};

/// Window that carries every edge flagged in the path.
Segment tree_window(const SamplePath& path);
/// Flagged edges as an edge set on tree_window(path).
EdgeSet tree_edges(const SamplePath& path, const Segment& window);

/// Renewal construction of the ladder tree. Conditioned: z_0 in T. Otherwise
/// stationary: the interval covering lo is size-biased with uniform phase.
/// c = +inf gives x = 1 everywhere.
SamplePath ladder_renewal_sample(double c, int lo, int hi, std::uint64_t seed, bool conditioned);
SamplePath ladder_renewal_sample(double c, int lo, int hi, Rng& rng, bool conditioned);

/// Stationary rung process of the zigzag: the same renewal law with its own alpha.
SamplePath zigzag_renewal_sample(double c, int lo, int hi, Rng& rng);

/// Gaps between consecutive renewals of a conditioned ladder sample on [0, ...]
/// until `n_gaps` are collected.
std::vector<int> ladder_gaps(double c, std::size_t n_gaps, std::uint64_t seed);

/// Helix-3 at c = 1 driven by the maximal-entropy chain (stationary start).
SamplePath helix3_chain_sample(int lo, int hi, Rng& rng);

/// Keeps each 1 independently with probability p. Tree flags are dropped.
SamplePath thin(const SamplePath& path, double p, std::uint64_t seed);

/// Exact sample of the determinantal process on sites 0..n-1.
SamplePath dpp_window_sample(const KernelSpec& k, int n, std::uint64_t seed);
SamplePath dpp_window_sample(const KernelSpec& k, int n, Rng& rng);

/// Z_{2m} = Y_m, Z_{2m+1} = Y'_m with Y, Y' independent thinned renewal
/// processes of kernel ratio alpha. Window is [0, n).
SamplePath interlaced_reference(double alpha, double p, int n, std::uint64_t seed);

/// The family's own sampler: renewal (ladder, zigzag), chain (helix-3, c = 1).
/// Enhanced helix-3 has none and throws ValidationError.
SamplePath native_sample(Family f, double c, int n, Rng& rng);

using PathSampler = std::function<SamplePath(Rng&)>;

/// Counts of the 2^width patterns x_0..x_{width-1}; sample i uses
/// Rng::derived(seed, i), so the two versions agree exactly.
std::vector<std::uint64_t> atom_histogram(const PathSampler& s, int width, std::size_t n_samples,
                                          std::uint64_t seed);
std::vector<std::uint64_t> atom_histogram_parallel(const PathSampler& s, int width,
                                                   std::size_t n_samples, std::uint64_t seed);

/// Exact atom probabilities of the determinantal process by inclusion-exclusion.
std::vector<double> atom_probabilities(const KernelSpec& k, int width);

}  // namespace rungs
