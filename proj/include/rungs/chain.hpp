#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "rungs/graph.hpp"
#include "rungs/rng.hpp"

namespace rungs {

/// Symbol (h, z, class): whether h_n and z_n are in the tree and the
/// boundary class of the tree restricted to {..., n-1, n}.
struct ChainSymbol {
  int h;
  int z;
  int cls;
};

/// delta_1 .. delta_11 (index 0 .. 10).
inline constexpr std::array<ChainSymbol, 11> kAlphabet = {{{0, 1, 1},
                                                           {1, 0, 1},
                                                           {1, 1, 1},
                                                           {0, 0, 2},
                                                           {1, 0, 2},
                                                           {0, 1, 3},
                                                           {1, 0, 3},
                                                           {1, 1, 3},
                                                           {1, 0, 4},
                                                           {0, 0, 5},
                                                           {1, 0, 5}}};

/// Allowed successor symbols (0-based) of a symbol in class i + 1.
const std::array<std::vector<int>, 5>& successor_table();

/// Symbol index (0-based) of (h, z, cls), or -1.
int symbol_index(int h, int z, int cls);

using Matrix5 = Eigen::Matrix<double, 5, 5>;
using Matrix11 = Eigen::Matrix<double, 11, 11>;
using Row5 = Eigen::Matrix<double, 1, 5>;
using Row11 = Eigen::Matrix<double, 1, 11>;

/// Order of the seven free parameters: R11, R21, R23, R24, R31, R43, R53.
using FreeParameters = std::array<double, 7>;

struct ChainSpec {
  /// Projected transition matrix (class to class).
  Matrix5 Rbar;
  /// Lifted 11 x 11 matrix.
  Matrix11 R;
  /// Invariant distributions from the Perron left eigenvector.
  Row11 pi_R;
  Row5 pi_Rbar;
  FreeParameters free{};
};

/// Rbar from the transfer eigen data, lifted through the symmetric template.
ChainSpec build_chain();

/// Any admissible parameter vector, lifted through the same template.
ChainSpec chain_from_parameters(const FreeParameters& free);

/// Rbar entries as closed forms in the golden ratio.
Matrix5 rbar_closed_form();
/// pi^R as closed forms.
Row11 pi_R_closed_form();
/// pi^Rbar as closed forms.
Row5 pi_Rbar_closed_form();
/// Rbar_{ij} = w_{1,i} M_{ij} (N w_1^T)_j / (lambda_1 w_{1,i} (N w_1^T)_i).
Matrix5 rbar_from_transfer();
/// pi^Rbar_i = w_{1,i} (N w_1^T)_i / (w_1 N w_1^T).
Row5 pi_Rbar_from_transfer();

/// -sum pi_i R_ij log R_ij.
double chain_entropy(const ChainSpec& spec);
/// Same value from Rbar: within-class successors split Rbar_{ij} evenly.
double chain_entropy_projected(const ChainSpec& spec);

/// Y_0 ~ pi^R (or the given start symbol), Y_{k+1} ~ R(Y_k, .). Symbols 0-based.
std::vector<int> sample_path(const ChainSpec& spec, std::size_t n, Rng& rng,
                             std::optional<int> start = std::nullopt);

struct DecodedPath {
  std::vector<int> h, z, cls;
};

/// Throws ValidationError naming the first position with a forbidden transition.
DecodedPath decode_path(const std::vector<int>& path);

/// Edge set of a decoded path on the helix-3 window [-3, n-1] (step k sets
/// h_k and z_k). A forest: the infinite tree restricted to a window.
EdgeSet decoded_edges(const DecodedPath& d, const Segment& window);
Segment decoded_window(std::size_t n);

/// Probability that z_0, ..., z_{L-1} match `pattern` (1, 0, or -1 for any).
double query_probability(const ChainSpec& spec, const std::vector<int>& pattern);
/// Parses "1,1,*,0".
std::vector<int> parse_pattern(const std::string& text);

struct SuccessorReport {
  bool match = false;
  std::array<std::vector<int>, 5> derived;
  std::string diagnostic;
};

/// Regenerates the successor table from brute-force class transitions.
SuccessorReport verify_successor_table();

}  // namespace rungs
