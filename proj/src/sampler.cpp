#include "rungs/sampler.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include <Eigen/Dense>

#include "rungs/chain.hpp"
#include "rungs/transfer.hpp"

namespace rungs {

namespace {

int geometric(double alpha, Rng& rng) {
  if (alpha <= 0.0) return 0;
  return static_cast<int>(std::floor(std::log1p(-rng.uniform()) / std::log(alpha)));
}

/// P(G = m) proportional to m r_m, by inversion.
int size_biased_gap(double alpha, Rng& rng) {
  if (alpha <= 0.0) return 1;
  const double scale = (1.0 - alpha) * (1.0 - alpha) * (1.0 - alpha) / (1.0 + alpha);
  double u = rng.uniform();
  double am = 1.0;  // alpha^{m-1}
  for (int m = 1; m < 1000000; ++m) {
    const double pm = scale * m * m * am;
    if (u < pm) return m;
    u -= pm;
    am *= alpha;
  }
  return 1000000;
}

/// Renewal process with gap law delta_1 * geo * geo. Fills x and, when
/// `tree` is set, the horizontal flags of the ladder tree.
SamplePath renewal_path(Family fam, double alpha, int lo, int hi, Rng& rng, bool conditioned,
                        bool tree) {
  SamplePath s;
  s.family = fam;
  s.lo = lo;
  s.hi = hi;
  const std::size_t n = static_cast<std::size_t>(hi - lo + 1);
  s.x.assign(n, 0);
  if (tree) {
    s.h0.assign(n, 1);
    s.h1.assign(n, 1);
  }
  auto mark = [&](int m) {
    if (m >= lo && m <= hi) s.x[m - lo] = 1;
  };
  auto cut = [&](int row, int m) {
    if (!tree || m < lo || m > hi) return;
    (row == 0 ? s.h0 : s.h1)[m - lo] = 0;
  };
  auto forward = [&](int r) {
    while (r < hi) {
      const int y = geometric(alpha, rng), y2 = geometric(alpha, rng);
      const int w = rng.bernoulli(0.5) ? 1 : 0;
      cut(w, r + y + 1);
      r += 1 + y + y2;
      mark(r);
    }
  };
  if (conditioned) {
    mark(0);
    forward(0);
    int r = 0;
    while (r > lo) {
      const int y = geometric(alpha, rng), y2 = geometric(alpha, rng);
      const int w = rng.bernoulli(0.5) ? 1 : 0;
      const int g = 1 + y + y2;
      cut(w, r - g + y + 1);
      r -= g;
      mark(r);
    }
  } else {
    const int g = size_biased_gap(alpha, rng);
    const int r0 = lo - static_cast<int>(rng.below(static_cast<std::uint64_t>(g)));
    const int y = static_cast<int>(rng.below(static_cast<std::uint64_t>(g)));
    const int w = rng.bernoulli(0.5) ? 1 : 0;
    cut(w, r0 + y + 1);
    mark(r0);
    mark(r0 + g);
    forward(r0 + g);
  }
  return s;
}

const ChainSpec& cached_chain() {
  static const ChainSpec spec = build_chain();
  return spec;
}

}  // namespace

Segment tree_window(const SamplePath& p) {
  if (p.family == Family::Helix3) return build_segment(GraphFamily::numeric(Family::Helix3, 1.0), p.lo - 3, p.hi);
  return build_segment(GraphFamily::numeric(p.family, 1.0, 0.0), p.lo, p.hi);
}

EdgeSet tree_edges(const SamplePath& p, const Segment& window) {
  EdgeSet t(window.edge_count());
  auto add = [&](const std::string& label) {
    const int e = window.find_edge(label);
    if (e >= 0) t.insert(e);
  };
  for (std::size_t k = 0; k < p.size(); ++k) {
    const std::string m = std::to_string(p.lo + static_cast<int>(k));
    if (p.x[k]) add("z_" + m);
    if (!p.has_tree()) continue;
    if (p.family == Family::Ladder) {
      if (p.h0[k]) add("h_{0," + m + "}");
      if (p.h1[k]) add("h_{1," + m + "}");
    } else if (p.h0[k]) {
      add("h_" + m);
    }
  }
  return t;
}

SamplePath ladder_renewal_sample(double c, int lo, int hi, Rng& rng, bool conditioned) {
  if (hi < lo) throw ValidationError("window requires lo <= hi");
  if (!(c > 0.0)) throw ValidationError("ladder renewal sampling needs c > 0");
  const double alpha = std::isinf(c) ? 0.0 : ladder_alpha(c);
  SamplePath s = renewal_path(Family::Ladder, alpha, lo, hi, rng, conditioned, true);
  s.sampler = conditioned ? "ladder_renewal_conditioned" : "ladder_renewal";
  return s;
}

SamplePath ladder_renewal_sample(double c, int lo, int hi, std::uint64_t seed, bool conditioned) {
  Rng rng(seed);
  SamplePath s = ladder_renewal_sample(c, lo, hi, rng, conditioned);
  s.seed = seed;
  return s;
}

SamplePath zigzag_renewal_sample(double c, int lo, int hi, Rng& rng) {
  if (hi < lo) throw ValidationError("window requires lo <= hi");
  validate_weights(Family::Zigzag, c, 0.0);
  SamplePath s = renewal_path(Family::Zigzag, zigzag_alpha(c), lo, hi, rng, false, false);
  s.sampler = "zigzag_renewal";
  return s;
}

std::vector<int> ladder_gaps(double c, std::size_t n_gaps, std::uint64_t seed) {
  const double alpha = std::isinf(c) ? 0.0 : ladder_alpha(c);
  const double mean = (1.0 + alpha) / (1.0 - alpha);
  Rng rng(seed);
  const int len = static_cast<int>(static_cast<double>(n_gaps) * mean * 1.05) + 1000;
  std::vector<int> gaps;
  gaps.reserve(n_gaps);
  while (gaps.size() < n_gaps) {
    // another independent conditioned run if the window fell short
    const SamplePath s = renewal_path(Family::Ladder, alpha, 0, len, rng, true, false);
    int last = -1;
    for (std::size_t k = 0; k < s.size() && gaps.size() < n_gaps; ++k) {
      if (!s.x[k]) continue;
      if (last >= 0) gaps.push_back(static_cast<int>(k) - last);
      last = static_cast<int>(k);
    }
  }
  return gaps;
}

SamplePath helix3_chain_sample(int lo, int hi, Rng& rng) {
  if (hi < lo) throw ValidationError("window requires lo <= hi");
  const auto path = sample_path(cached_chain(), static_cast<std::size_t>(hi - lo + 1), rng);
  SamplePath s;
  s.family = Family::Helix3;
  s.lo = lo;
  s.hi = hi;
  s.sampler = "helix3_chain";
  for (int y : path) {
    s.x.push_back(static_cast<std::uint8_t>(kAlphabet[y].z));
    s.h0.push_back(static_cast<std::uint8_t>(kAlphabet[y].h));
  }
  return s;
}

SamplePath thin(const SamplePath& path, double p, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw ValidationError("thinning probability must lie in [0, 1]");
  Rng rng(seed);
  SamplePath s = path;
  s.h0.clear();
  s.h1.clear();
  s.sampler = path.sampler + "+thin";
  for (auto& v : s.x)
    if (v && !rng.bernoulli(p)) v = 0;
  return s;
}

SamplePath dpp_window_sample(const KernelSpec& k, int n, Rng& rng) {
  if (n < 1 || n > 200) throw ValidationError("DPP window size must be in 1..200");
  using Eigen::MatrixXcd;
  MatrixXcd K(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) K(i, j) = kernel_entry_complex(k, j - i);
  MatrixXcd C = K;
  std::vector<int> excluded(n, 0);
  SamplePath s;
  s.family = k.family;
  s.lo = 0;
  s.hi = n - 1;
  s.sampler = "dpp_window";
  s.x.assign(static_cast<std::size_t>(n), 0);
  for (int j = 0; j < n; ++j) {
    if (j > 0 && j % 32 == 0) {
      // rebuild the conditional kernel from the decisions so far
      MatrixXcd A = K.topLeftCorner(j, j);
      for (int i = 0; i < j; ++i) A(i, i) -= static_cast<double>(excluded[i]);
      const int r = n - j;
      C.bottomRightCorner(r, r) = K.bottomRightCorner(r, r) -
                                  K.bottomLeftCorner(r, j) * A.fullPivLu().solve(K.topRightCorner(j, r));
    }
    const double q = C(j, j).real();
    if (!(q >= -1e-9 && q <= 1.0 + 1e-9))
      throw NumericFailure("conditional probability " + std::to_string(q) + " at site " + std::to_string(j));
    const bool in = rng.uniform() < std::clamp(q, 0.0, 1.0);
    s.x[j] = in ? 1 : 0;
    excluded[j] = in ? 0 : 1;
    const std::complex<double> pivot = in ? C(j, j) : C(j, j) - 1.0;
    const int r = n - j - 1;
    if (r > 0 && std::abs(pivot) > 1e-300)
      C.bottomRightCorner(r, r) -= C.block(j + 1, j, r, 1) * C.block(j, j + 1, 1, r) / pivot;
  }
  return s;
}

SamplePath dpp_window_sample(const KernelSpec& k, int n, std::uint64_t seed) {
  Rng rng(seed);
  SamplePath s = dpp_window_sample(k, n, rng);
  s.seed = seed;
  return s;
}

SamplePath interlaced_reference(double alpha, double p, int n, std::uint64_t seed) {
  if (!(alpha >= 0.0 && alpha < 1.0)) throw ValidationError("alpha must lie in [0, 1)");
  if (!(p > 0.0 && p <= 1.0)) throw ValidationError("p must lie in (0, 1]");
  if (alpha == 0.0 && p == 1.0) throw ValidationError("alpha = 0 with p = 1 is a trivial (Bernoulli) process");
  if (n < 2) throw ValidationError("interlaced window needs n >= 2");
  Rng rng(seed);
  const int half = (n + 1) / 2;
  SamplePath a = renewal_path(Family::Ladder, alpha, 0, half - 1, rng, false, false);
  SamplePath b = renewal_path(Family::Ladder, alpha, 0, half - 1, rng, false, false);
  SamplePath s;
  s.family = Family::Ladder;
  s.lo = 0;
  s.hi = n - 1;
  s.seed = seed;
  s.sampler = "interlaced_reference";
  s.x.resize(static_cast<std::size_t>(n));
  for (int m = 0; m < n; ++m) {
    const std::uint8_t v = (m % 2 == 0 ? a : b).x[m / 2];
    s.x[m] = v && rng.bernoulli(p) ? 1 : 0;
  }
  return s;
}

SamplePath native_sample(Family f, double c, int n, Rng& rng) {
  switch (f) {
    case Family::Ladder: return ladder_renewal_sample(c, 0, n - 1, rng, false);
    case Family::Zigzag: return zigzag_renewal_sample(c, 0, n - 1, rng);
    case Family::Helix3:
      if (c != 1.0) throw ValidationError("the helix-3 chain sampler is defined at c = 1 only");
      return helix3_chain_sample(0, n - 1, rng);
    case Family::EnhancedHelix3: break;
  }
  throw ValidationError("no native sampler for the enhanced helix-3; use the DPP window sampler");
}

namespace {

std::size_t atom_of(const SamplePath& s, int width) {
  std::size_t a = 0;
  for (int b = 0; b < width; ++b)
    if (s.x[b]) a |= std::size_t{1} << b;
  return a;
}

}  // namespace

std::vector<std::uint64_t> atom_histogram(const PathSampler& sampler, int width, std::size_t n_samples,
                                          std::uint64_t seed) {
  std::vector<std::uint64_t> h(std::size_t{1} << width, 0);
  for (std::size_t i = 0; i < n_samples; ++i) {
    Rng rng = Rng::derived(seed, i);
    ++h[atom_of(sampler(rng), width)];
  }
  return h;
}

std::vector<std::uint64_t> atom_histogram_parallel(const PathSampler& sampler, int width,
                                                   std::size_t n_samples, std::uint64_t seed) {
  const std::size_t cells = std::size_t{1} << width;
  std::vector<std::uint64_t> h(cells, 0);
#pragma omp parallel
  {
    std::vector<std::uint64_t> local(cells, 0);
#pragma omp for schedule(static)
    for (long long i = 0; i < static_cast<long long>(n_samples); ++i) {
      Rng rng = Rng::derived(seed, static_cast<std::uint64_t>(i));
      ++local[atom_of(sampler(rng), width)];
    }
#pragma omp critical
    for (std::size_t c = 0; c < cells; ++c) h[c] += local[c];
  }
  return h;
}

std::vector<double> atom_probabilities(const KernelSpec& k, int width) {
  const std::size_t cells = std::size_t{1} << width;
  std::vector<double> det(cells);
  for (std::size_t t = 0; t < cells; ++t) {
    std::vector<int> sites;
    for (int b = 0; b < width; ++b)
      if (t >> b & 1) sites.push_back(b);
    det[t] = sites.empty() ? 1.0 : window_probability(k, sites);
  }
  std::vector<double> out(cells, 0.0);
  for (std::size_t s = 0; s < cells; ++s)
    for (std::size_t t = s; t < cells; t = (t + 1) | s) {
      const int extra = std::popcount(t ^ s);
      out[s] += (extra % 2 ? -1.0 : 1.0) * det[t];
    }
  return out;
}

}  // namespace rungs
