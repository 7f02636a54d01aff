#include "rungs/chain.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "rungs/state_classes.hpp"
#include "rungs/transfer.hpp"

namespace rungs {

const std::array<std::vector<int>, 5>& successor_table() {
  static const std::array<std::vector<int>, 5> table = {
      {{0, 1, 3}, {2, 5, 8, 9}, {2, 4}, {5, 6, 9}, {7, 10}}};
  return table;
}

int symbol_index(int h, int z, int cls) {
  for (int k = 0; k < 11; ++k)
    if (kAlphabet[k].h == h && kAlphabet[k].z == z && kAlphabet[k].cls == cls) return k;
  return -1;
}

namespace {

Row11 perron_left(const Matrix11& R) {
  // pi (R - I) = 0 with sum(pi) = 1: replace one equation by normalization
  Matrix11 A = (R - Matrix11::Identity()).transpose();
  A.row(10).setOnes();
  Eigen::Matrix<double, 11, 1> b = Eigen::Matrix<double, 11, 1>::Zero();
  b(10) = 1.0;
  return A.fullPivLu().solve(b).transpose();
}

Row5 perron_left(const Matrix5& R) {
  Matrix5 A = (R - Matrix5::Identity()).transpose();
  A.row(4).setOnes();
  Eigen::Matrix<double, 5, 1> b = Eigen::Matrix<double, 5, 1>::Zero();
  b(4) = 1.0;
  return A.fullPivLu().solve(b).transpose();
}

}  // namespace

ChainSpec chain_from_parameters(const FreeParameters& p) {
  const auto [r11, r21, r23, r24, r31, r43, r53] = p;
  ChainSpec s;
  s.free = p;
  s.Rbar.setZero();
  s.Rbar(0, 0) = r11;
  s.Rbar(0, 1) = 1.0 - r11;
  s.Rbar(1, 0) = r21;
  s.Rbar(1, 2) = r23;
  s.Rbar(1, 3) = r24;
  s.Rbar(1, 4) = 1.0 - r21 - r23 - r24;
  s.Rbar(2, 0) = r31;
  s.Rbar(2, 1) = 1.0 - r31;
  s.Rbar(3, 2) = r43;
  s.Rbar(3, 4) = 1.0 - r43;
  s.Rbar(4, 2) = r53;
  s.Rbar(4, 4) = 1.0 - r53;

  s.R.setZero();
  for (int i : {0, 1, 2}) {
    s.R(i, 0) = r11 / 2.0;
    s.R(i, 1) = r11 / 2.0;
    s.R(i, 3) = 1.0 - r11;
  }
  for (int i : {3, 4}) {
    s.R(i, 2) = r21;
    s.R(i, 5) = r23;
    s.R(i, 8) = r24;
    s.R(i, 9) = 1.0 - r21 - r23 - r24;
  }
  for (int i : {5, 6, 7}) {
    s.R(i, 2) = r31;
    s.R(i, 4) = 1.0 - r31;
  }
  s.R(8, 5) = r43 / 2.0;
  s.R(8, 6) = r43 / 2.0;
  s.R(8, 9) = 1.0 - r43;
  for (int i : {9, 10}) {
    s.R(i, 7) = r53;
    s.R(i, 10) = 1.0 - r53;
  }
  s.pi_R = perron_left(s.R);
  s.pi_Rbar = perron_left(s.Rbar);
  return s;
}

Matrix5 rbar_from_transfer() {
  const TransferSystem ts = build_transfer(GraphFamily::numeric(Family::Helix3, 1.0));
  const Eigen::RowVectorXd w = ts.w1();
  const Eigen::VectorXd nw = ts.N * w.transpose();
  Matrix5 out;
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) out(i, j) = w(i) * ts.M(i, j) * nw(j) / (ts.lambda1() * w(i) * nw(i));
  return out;
}

Row5 pi_Rbar_from_transfer() {
  const TransferSystem ts = build_transfer(GraphFamily::numeric(Family::Helix3, 1.0));
  const Eigen::RowVectorXd w = ts.w1();
  const Eigen::VectorXd nw = ts.N * w.transpose();
  Row5 out;
  for (int i = 0; i < 5; ++i) out(i) = w(i) * nw(i) / ts.normalizer();
  return out;
}

ChainSpec build_chain() {
  const Matrix5 rb = rbar_from_transfer();
  ChainSpec s = chain_from_parameters(
      {rb(0, 0), rb(1, 0), rb(1, 2), rb(1, 3), rb(2, 0), rb(3, 2), rb(4, 2)});
  s.Rbar = rb;
  return s;
}

Matrix5 rbar_closed_form() {
  const double g = kGamma, sg = std::sqrt(g), s5 = std::sqrt(5.0);
  Matrix5 r = Matrix5::Zero();
  r(0, 0) = 2.0 * (g - sg);
  r(0, 1) = 1.0 - 2.0 * (g - sg);
  r(1, 0) = sg / (2.0 + sg);
  r(1, 2) = (g - 1.0 / sg) / (2.0 + sg);
  r(1, 3) = (2.0 - sg) / (2.0 + sg);
  r(1, 4) = (sg + 1.0 / sg - g) / (2.0 + sg);
  r(2, 0) = (std::pow(g, 1.5) - 1.0) / 2.0;
  r(2, 1) = (3.0 - std::pow(g, 1.5)) / 2.0;
  r(3, 2) = (2.0 * s5 * g - 2.0 * std::pow(g, 2.5)) / (2.0 - sg);
  r(3, 4) = (2.0 - sg - 2.0 * s5 * g + 2.0 * std::pow(g, 2.5)) / (2.0 - sg);
  r(4, 2) = 1.0 - 1.0 / (g + sg);
  r(4, 4) = 1.0 / (g + sg);
  return r;
}

Row11 pi_R_closed_form() {
  const double g = kGamma, s5 = std::sqrt(5.0);
  auto gp = [g](double e) { return std::pow(g, e); };
  Row11 p;
  p << g, g, gp(1.5) - 1.0 / g, gp(1.5) - 1.0 / g, 3.0 / g - gp(0.5), 2.0 * g - 2.0 * gp(0.5),
      s5 - gp(1.5), s5 * gp(1.5) - gp(3), 2.0 / g - gp(-0.5), s5 * gp(1.5) - gp(3),
      gp(4) - 2.0 * gp(2.5);
  return p / (4.0 * s5);
}

Row5 pi_Rbar_closed_form() {
  const double g = kGamma, s5 = std::sqrt(5.0);
  Row5 p;
  p << g * g + std::pow(g, 1.5), std::pow(g, -0.5) + 2.0 / g, 2.0 / g, 2.0 / g - std::pow(g, -0.5),
      g * g - std::pow(g, 1.5);
  return p / (4.0 * s5);
}

double chain_entropy(const ChainSpec& s) {
  double h = 0.0;
  for (int i = 0; i < 11; ++i)
    for (int j = 0; j < 11; ++j)
      if (s.R(i, j) > 0.0) h -= s.pi_R(i) * s.R(i, j) * std::log(s.R(i, j));
  return h;
}

double chain_entropy_projected(const ChainSpec& s) {
  // number of successor symbols of class i that land in class j
  int split[5][5] = {};
  for (int i = 0; i < 5; ++i)
    for (int k : successor_table()[i]) ++split[i][kAlphabet[k].cls - 1];
  double h = 0.0;
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j)
      if (s.Rbar(i, j) > 0.0)
        h -= s.pi_Rbar(i) * s.Rbar(i, j) * std::log(s.Rbar(i, j) / split[i][j]);
  return h;
}

namespace {

int draw(const double* weights, int n, Rng& rng) {
  double u = rng.uniform();
  for (int k = 0; k < n - 1; ++k) {
    if (u < weights[k]) return k;
    u -= weights[k];
  }
  return n - 1;
}

}  // namespace

std::vector<int> sample_path(const ChainSpec& spec, std::size_t n, Rng& rng, std::optional<int> start) {
  if (n == 0) throw ValidationError("path length must be >= 1");
  // row-major copies so each draw scans contiguous memory
  std::array<std::array<double, 11>, 11> R{};
  for (int i = 0; i < 11; ++i)
    for (int j = 0; j < 11; ++j) R[i][j] = spec.R(i, j);
  std::array<double, 11> pi{};
  for (int i = 0; i < 11; ++i) pi[i] = spec.pi_R(i);
  std::vector<int> path(n);
  if (start) {
    if (*start < 0 || *start > 10) throw ValidationError("start symbol must be 1..11");
    path[0] = *start;
  } else {
    path[0] = draw(pi.data(), 11, rng);
  }
  for (std::size_t k = 1; k < n; ++k) path[k] = draw(R[path[k - 1]].data(), 11, rng);
  return path;
}

DecodedPath decode_path(const std::vector<int>& path) {
  DecodedPath d;
  for (std::size_t k = 0; k < path.size(); ++k) {
    const int y = path[k];
    if (y < 0 || y > 10) throw ValidationError("symbol out of range at position " + std::to_string(k));
    if (k > 0) {
      const auto& ok = successor_table()[kAlphabet[path[k - 1]].cls - 1];
      if (std::find(ok.begin(), ok.end(), y) == ok.end())
        throw ValidationError("forbidden transition delta_" + std::to_string(path[k - 1] + 1) +
                              " -> delta_" + std::to_string(y + 1) + " at position " +
                              std::to_string(k));
    }
    d.h.push_back(kAlphabet[y].h);
    d.z.push_back(kAlphabet[y].z);
    d.cls.push_back(kAlphabet[y].cls);
  }
  return d;
}

Segment decoded_window(std::size_t n) {
  return build_segment(GraphFamily::numeric(Family::Helix3, 1.0), -3, static_cast<int>(n) - 1);
}

EdgeSet decoded_edges(const DecodedPath& d, const Segment& window) {
  EdgeSet t(window.edge_count());
  for (std::size_t k = 0; k < d.h.size(); ++k) {
    if (d.z[k]) {
      int e = window.find_edge("z_" + std::to_string(k));
      if (e >= 0) t.insert(e);
    }
    if (d.h[k]) {
      int e = window.find_edge("h_" + std::to_string(k));
      if (e >= 0) t.insert(e);
    }
  }
  return t;
}

double query_probability(const ChainSpec& spec, const std::vector<int>& pattern) {
  if (pattern.empty()) return 1.0;
  for (int v : pattern)
    if (v != 0 && v != 1 && v != -1)
      throw ValidationError("pattern entries must be 0, 1 or * (rung constraints only)");
  auto allowed = [&](std::size_t pos, int sym) {
    return pattern[pos] < 0 || kAlphabet[sym].z == pattern[pos];
  };
  Row11 v;
  for (int i = 0; i < 11; ++i) v(i) = allowed(0, i) ? spec.pi_R(i) : 0.0;
  for (std::size_t pos = 1; pos < pattern.size(); ++pos) {
    Row11 next = v * spec.R;
    for (int i = 0; i < 11; ++i)
      if (!allowed(pos, i)) next(i) = 0.0;
    v = next;
  }
  return v.sum();
}

std::vector<int> parse_pattern(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok == "1") out.push_back(1);
    else if (tok == "0") out.push_back(0);
    else if (tok == "*") out.push_back(-1);
    else throw ValidationError("pattern token '" + tok + "' is not 0, 1 or *");
  }
  if (out.empty()) throw ValidationError("empty pattern");
  return out;
}

SuccessorReport verify_successor_table() {
  SuccessorReport rep;
  const Regenerated r = regenerate_transfer(Family::Helix3);
  if (!r.consistent) {
    rep.diagnostic = r.diagnostic;
    return rep;
  }
  const auto triples = derive_successors(r);
  rep.match = true;
  for (int i = 0; i < 5; ++i) {
    for (const auto& t : triples[i]) {
      int k = symbol_index(t[0], t[1], t[2]);
      if (k < 0) {
        rep.match = false;
        rep.diagnostic = "derived symbol outside the alphabet";
      } else {
        rep.derived[i].push_back(k);
      }
    }
    std::sort(rep.derived[i].begin(), rep.derived[i].end());
    if (rep.derived[i] != successor_table()[i]) {
      rep.match = false;
      rep.diagnostic = "class " + std::to_string(i + 1) + " successors differ";
    }
  }
  return rep;
}

}  // namespace rungs
