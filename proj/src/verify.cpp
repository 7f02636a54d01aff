#include "rungs/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <sstream>

#include "rungs/chain.hpp"
#include "rungs/electric.hpp"
#include "rungs/kernel.hpp"
#include "rungs/oracle.hpp"
#include "rungs/sampler.hpp"
#include "rungs/state_classes.hpp"
#include "rungs/stats.hpp"
#include "rungs/transfer.hpp"

namespace rungs {

namespace {

constexpr Family kFamilies[] = {Family::Ladder, Family::Zigzag, Family::Helix3, Family::EnhancedHelix3};

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

double family_d(Family f, double d) { return f == Family::EnhancedHelix3 ? d : 0.0; }

/// Smallest n whose standard window is not degenerate.
int first_window(Family f) { return f == Family::Ladder ? 1 : chord_span(f); }

int window_edges(Family f, int n) {
  return static_cast<int>(build_segment(GraphFamily::symbolic(f), 0, n - 1).edge_count());
}

Segment standard_window(Family f, int n) { return build_segment(GraphFamily::symbolic(f), 0, n - 1); }

}  // namespace

CheckResult check_count_tables() {
  CheckResult r{"count_tables", "ladder polynomial table; helix-3 counts 0,0,1,4,...,2544", true, ""};
  const char* ladder[] = {"c", "2c+2c^2", "3c+8c^2+4c^3", "4c+20c^2+24c^3+8c^4",
                          "5c+40c^2+84c^3+64c^4+16c^5", "6c+70c^2+224c^3+288c^4+160c^5+32c^6"};
  const long sigma[] = {1, 4, 15, 56, 209, 780};
  std::ostringstream d;
  for (int n = 1; n <= 6; ++n) {
    const WeightPoly p = count_segment(Family::Ladder, n);
    const WeightPoly o = weighted_count(standard_window(Family::Ladder, n));
    if (p.str() != ladder[n - 1] || p.at_one() != sigma[n - 1] || !(o == p)) {
      r.pass = false;
      d << "ladder n=" << n << " got " << p.str() << "; ";
    }
  }
  const long helix[] = {0, 0, 1, 4, 12, 36, 105, 304, 880, 2544};
  double worst = 0.0;
  for (int n = 1; n <= 10; ++n) {
    const BigInt want = helix[n - 1];
    const BigInt matrix = count_segment(Family::Helix3, n).at_one();
    const BigInt rec = scalar_recurrence(n);
    const double closed = count_closed_form(Family::Helix3, n, 1.0);
    worst = std::max(worst, std::abs(closed - static_cast<double>(helix[n - 1])));
    // windows with fewer than three vertices hold a (trivial) tree but count as 0
    const bool oracle_ok =
        n < first_window(Family::Helix3) || weighted_count(standard_window(Family::Helix3, n)).at_one() == want;
    if (matrix != want || rec != want || !oracle_ok) {
      r.pass = false;
      d << "helix3 n=" << n << " mismatch; ";
    }
  }
  if (worst > 1e-9) r.pass = false;
  d << "ladder n=1..6 and helix3 n=1..10 by matrix/recurrence/oracle; closed-form max err " << fmt(worst);
  r.detail = d.str();
  return r;
}

CheckResult check_oracle_equivalence() {
  CheckResult r{"oracle_equivalence", "enumeration = matrix-tree = transfer count, exact", true, ""};
  const double grid[] = {0.5, 1.0, 2.0};
  const double dgrid[] = {0.0, 1.0, 3.0};
  int instances = 0;
  std::ostringstream d;
  for (Family f : kFamilies) {
    for (int n = first_window(f); window_edges(f, n) <= 24; ++n) {
      const Segment seg = standard_window(f, n);
      const WeightPoly brute = weighted_count(seg);
      const WeightPoly transfer = count_segment(f, n);
      for (double c : grid)
        for (double dd : dgrid) {
          const Rational rc = to_rational(c), rd = to_rational(dd);
          const Rational a = brute.evaluate(rc, rd);
          const Rational b = matrix_tree_count(seg, rc, rd);
          const Rational t = transfer.evaluate(rc, rd);
          ++instances;
          if (a != b || a != t) {
            r.pass = false;
            d << to_string(f) << " n=" << n << " c=" << c << " d=" << dd << " differ; ";
          }
        }
    }
  }
  if (instances < 60) r.pass = false;
  d << instances << " instances";
  r.detail = d.str();
  return r;
}

CheckResult check_marginal_triple() {
  CheckResult r{"marginal_triple", "transfer = kernel hatf(0) = Kirchhoff r c; 1/sqrt5 and 0.460221", true, ""};
  double worst = 0.0;
  for (Family f : kFamilies)
    for (double c : {0.25, 0.5, 1.0, 2.0, 4.0})
      for (double d : {0.0, 1.0, 3.0}) {
        if (f != Family::EnhancedHelix3 && d != 0.0) continue;
        const double t = edge_marginal(build_transfer(GraphFamily::numeric(f, c, d)));
        const double k = kernel_entry(build_kernel(f, c, d), 0);
        worst = std::max(worst, std::abs(t - k));
        if (f == Family::Ladder || f == Family::Zigzag) {
          const double e = kirchhoff_marginal(effective_resistance(f, c));
          worst = std::max({worst, std::abs(t - e), std::abs(k - e)});
        }
      }
  const double zig = edge_marginal(build_transfer(GraphFamily::numeric(Family::Zigzag, 1.0)));
  const double hel = edge_marginal(build_transfer(GraphFamily::numeric(Family::Helix3, 1.0)));
  const double pin = std::max(std::abs(zig - 1.0 / std::sqrt(5.0)), std::abs(hel - 0.460221));
  r.pass = worst <= 1e-10 && pin <= 1e-6;
  r.detail = "max pairwise " + fmt(worst) + ", pinned err " + fmt(pin);
  return r;
}

CheckResult check_determinant_identity() {
  CheckResult r{"determinant_identity", "joint rung probability = det of kernel minor", true, ""};
  Rng rng(20240601);
  const double cs[] = {0.5, 1.0, 2.0};
  const double ds[] = {0.0, 1.0, 3.0};
  double worst = 0.0;
  int cases = 0;
  for (Family f : kFamilies) {
    for (int i = 0; i < 200; ++i) {
      const double c = cs[rng.below(3)];
      const double d = family_d(f, ds[rng.below(3)]);
      const int k = 1 + static_cast<int>(rng.below(4));
      std::vector<int> pool = {1, 2, 3, 4, 5, 6, 7, 8};
      for (int j = 7; j > 0; --j) std::swap(pool[j], pool[rng.below(static_cast<std::uint64_t>(j + 1))]);
      std::vector<int> offsets(pool.begin(), pool.begin() + (k - 1));
      std::sort(offsets.begin(), offsets.end());
      const TransferSystem ts = build_transfer(GraphFamily::numeric(f, c, d));
      const double jp = offsets.empty() ? edge_marginal(ts) : joint_probability(ts, offsets);
      std::vector<int> sites = {0};
      sites.insert(sites.end(), offsets.begin(), offsets.end());
      const double det = window_probability(build_kernel(f, c, d), sites);
      worst = std::max(worst, std::abs(jp - det));
      ++cases;
    }
  }
  r.pass = worst <= 1e-9;
  r.detail = std::to_string(cases) + " cases, max err " + fmt(worst);
  return r;
}

CheckResult check_fourier_consistency() {
  CheckResult r{"fourier_consistency", "residue entries = quadrature of density; |y|^2 = gamma - sqrt(gamma)", true, ""};
  struct Point {
    Family f;
    double c, d, p;
  };
  std::vector<Point> pts;
  for (double c : {0.3, 0.7, 1.0, 2.0, 5.0}) {
    pts.push_back({Family::Ladder, c, 0.0, 1.0});
    pts.push_back({Family::Zigzag, c, 0.0, 1.0});
    pts.push_back({Family::Helix3, c, 0.0, 1.0});
  }
  for (auto [c, d] : {std::pair{0.5, 0.5}, {1.0, 1.0}, {2.0, 0.0}, {1.0, 3.0}, {4.0, 2.0}})
    pts.push_back({Family::EnhancedHelix3, c, d, 1.0});
  double worst = 0.0;
  for (const auto& p : pts) {
    const KernelSpec k = build_kernel(p.f, p.c, p.d, p.p);
    for (int m = 0; m <= 30; ++m) worst = std::max(worst, std::abs(kernel_entry(k, m) - fourier_invert(k, m)));
  }
  double root = 0.0;
  for (const auto& t : build_kernel(Family::Helix3, 1.0).terms)
    root = std::max(root, std::abs(std::norm(t.x) - (kGamma - std::sqrt(kGamma))));
  r.pass = worst <= 1e-9 && root <= 1e-10;
  r.detail = std::to_string(pts.size()) + " parameter points, m<=30, max err " + fmt(worst) + "; root modulus err " +
             fmt(root);
  return r;
}

CheckResult check_regenerative_order() {
  CheckResult r{"regenerative_order", "order 1 (ladder, zigzag), 2 (helix-3, enhanced)", true, ""};
  struct Point {
    Family f;
    double c, d, p;
    int want;
  };
  const Point pts[] = {{Family::Ladder, 0.5, 0, 1.0, 1},        {Family::Ladder, 2.0, 0, 0.5, 1},
                       {Family::Ladder, 7.0, 0, 0.2, 1},        {Family::Zigzag, 0.5, 0, 1.0, 1},
                       {Family::Zigzag, 1.0, 0, 0.7, 1},        {Family::Zigzag, 3.0, 0, 0.3, 1},
                       {Family::Helix3, 1.0, 0, 1.0, 2},        {Family::Helix3, 0.5, 0, 0.6, 2},
                       {Family::Helix3, 2.0, 0, 0.9, 2},        {Family::EnhancedHelix3, 1.0, 1.0, 1.0, 2},
                       {Family::EnhancedHelix3, 0.3, 2.0, 0.5, 2}, {Family::EnhancedHelix3, 4.0, 0.5, 0.8, 2}};
  std::ostringstream d;
  double tail = 0.0;
  for (const auto& p : pts) {
    const RegenerativeOrder o = regenerative_order(build_kernel(p.f, p.c, p.d, p.p));
    for (std::size_t j = static_cast<std::size_t>(o.order) + 1; j < o.coefficients.size(); ++j)
      tail = std::max(tail, std::abs(o.coefficients[j] / o.coefficients[0]));
    if (o.order != p.want) {
      r.pass = false;
      d << to_string(p.f) << " c=" << p.c << " order " << o.order << "; ";
    }
  }
  if (tail > 1e-9) r.pass = false;
  d << "12 points, max relative tail coefficient " << fmt(tail);
  r.detail = d.str();
  return r;
}

CheckResult check_chain_fidelity() {
  CheckResult r{"chain_fidelity", "Rbar closed forms, pi^R, entropy log(gamma+sqrt gamma), rung probabilities", true, ""};
  const ChainSpec spec = build_chain();
  const double rbar = (rbar_from_transfer() - rbar_closed_form()).cwiseAbs().maxCoeff();
  const double printed[5][5] = {{0.6920287, 0.3079713, 0, 0, 0},
                                {0.3887567, 0, 0.2542413, 0.2224865, 0.1345154},
                                {0.5290855, 0.4709145, 0, 0, 0},
                                {0, 0, 0.7907997, 0, 0.2092003},
                                {0, 0, 0.6539857, 0, 0.3460143}};
  double rbar_print = 0.0;
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) rbar_print = std::max(rbar_print, std::abs(spec.Rbar(i, j) - printed[i][j]));
  const double pi_print[11] = {0.180902, 0.180902, 0.161012, 0.161012, 0.0650785, 0.0773725,
                               0.019890, 0.040929, 0.050302, 0.040929, 0.0216675};
  double pi_err = (spec.pi_R - pi_R_closed_form()).cwiseAbs().maxCoeff();
  std::string pi_miss;
  for (int i = 0; i < 11; ++i) {
    const double e = std::abs(spec.pi_R(i) - pi_print[i]);
    pi_err = std::max(pi_err, e);
    if (e > 1e-6) pi_miss += " " + std::to_string(i + 1) + ":" + fmt(spec.pi_R(i)) + "/" + fmt(pi_print[i]);
  }
  const double h = std::log(kGamma + std::sqrt(kGamma));
  const TransferSystem ts = build_transfer(GraphFamily::numeric(Family::Helix3, 1.0));
  const double ent = std::max({std::abs(chain_entropy(spec) - h), std::abs(std::log(ts.lambda1()) - h),
                               std::abs(chain_entropy_projected(spec) - h)});
  const KernelSpec k = build_kernel(Family::Helix3, 1.0);
  const double s5 = std::sqrt(5.0);
  double q = std::max(std::abs(query_probability(spec, {1}) - std::pow(kGamma, 1.5) / (2 * s5)),
                      std::abs(query_probability(spec, {1, 1}) - kGamma / (4 * s5)));
  for (int m = 0; m <= 6; ++m) {
    std::vector<int> pattern(static_cast<std::size_t>(m + 1), 1), offsets, sites;
    for (int j = 0; j <= m; ++j) sites.push_back(j);
    for (int j = 1; j <= m; ++j) offsets.push_back(j);
    const double closed = (kGamma * kGamma + std::pow(kGamma, 1.5)) / (4 * s5) *
                          std::pow(kGamma - std::sqrt(kGamma), m);
    const double chain = query_probability(spec, pattern);
    const double transfer = m == 0 ? edge_marginal(ts) : joint_probability(ts, offsets);
    const double kernel = window_probability(k, sites);
    if (m >= 1) q = std::max(q, std::abs(chain - closed));
    q = std::max({q, std::abs(chain - transfer), std::abs(chain - kernel)});
  }
  r.pass = rbar <= 1e-10 && rbar_print <= 1e-7 && pi_err <= 1e-6 && ent <= 1e-9 && q <= 1e-9;
  r.detail = "Rbar err " + fmt(rbar) + " (printed " + fmt(rbar_print) + "), pi^R err " + fmt(pi_err) +
             (pi_miss.empty() ? "" : " (computed/printed" + pi_miss + ")") +
             ", entropy err " + fmt(ent) + ", probabilities err " + fmt(q);
  return r;
}

CheckResult check_monte_carlo() {
  CheckResult r{"monte_carlo", "chain P[z0]; ladder gap law; Wilson uniform on Ladder(0,2)", true, ""};
  const auto t0 = std::chrono::steady_clock::now();
  Rng rng(777);
  const auto path = sample_path(build_chain(), 1000000, rng);
  double ones = 0.0;
  for (int y : path) ones += kAlphabet[y].z;
  const double pz = ones / 1e6;
  const bool chain_ok = std::abs(pz - 0.460221) <= 0.0015;

  const double c = 1.0;
  const auto gaps = ladder_gaps(c, 1000000, 4242);
  const KernelSpec lk = build_kernel(Family::Ladder, c);
  int top = *std::max_element(gaps.begin(), gaps.end());
  std::vector<double> emp(static_cast<std::size_t>(top) + 1, 0.0), law(static_cast<std::size_t>(top) + 1, 0.0);
  for (int g : gaps) emp[g] += 1.0 / static_cast<double>(gaps.size());
  for (int m = 1; m <= top; ++m) law[m] = renewal_distribution(lk, m);
  const double tv = tv_distance(emp, law);
  const bool gap_ok = tv < 0.002;

  const Segment seg = build_segment(GraphFamily::numeric(Family::Ladder, 1.0), 0, 2);
  const auto trees = enumerate_trees(seg);
  std::map<EdgeSet, std::size_t> index;
  for (std::size_t i = 0; i < trees.size(); ++i) index[trees[i]] = i;
  std::vector<std::uint64_t> counts(trees.size(), 0);
  Rng wr(99);
  const int draws = 45000;
  bool all_trees = true;
  for (int i = 0; i < draws; ++i) {
    auto it = index.find(wilson_sample(seg, {1.0, 0.0}, wr));
    if (it == index.end()) all_trees = false;
    else ++counts[it->second];
  }
  const ChiSquare chi = chi_square_test(counts, std::vector<double>(trees.size(), 1.0 / trees.size()));
  const bool wilson_ok = all_trees && trees.size() == 15 && chi.p_value > 0.001;
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  r.pass = chain_ok && gap_ok && wilson_ok && secs < 30.0;
  r.detail = "P[z0]=" + fmt(pz) + ", gap TV " + fmt(tv) + ", Wilson p " + fmt(chi.p_value) + " over " +
             std::to_string(trees.size()) + " trees, " + fmt(secs) + " s";
  return r;
}

CheckResult check_nonrealizability() {
  CheckResult r{"nonrealizability", "enhanced hatf(1) != 0; interlaced lag-1 correlation 0", true, ""};
  const auto scan = order2_nonrealizability_scan({0.1, 0.3, 1.0, 3.0, 10.0}, {0.0, 0.3, 1.0, 3.0, 10.0});
  double smallest = INFINITY;
  for (const auto& p : scan) {
    smallest = std::min(smallest, std::abs(p.hatf1));
    if (!(std::abs(p.hatf1) > 1e-12)) r.pass = false;
  }
  const int n = 1000000;
  const SamplePath z = interlaced_reference(ladder_alpha(1.0), 0.7, n, 31337);
  const double rho = lag_correlation(z.x, 1);
  const double sigma = 1.0 / std::sqrt(static_cast<double>(n - 1));
  if (std::abs(rho) > 3.0 * sigma || scan.size() != 25) r.pass = false;
  r.detail = std::to_string(scan.size()) + " points, min |hatf(1)| " + fmt(smallest) + "; interlaced lag-1 corr " +
             fmt(rho) + " (3 sigma " + fmt(3.0 * sigma) + ")";
  return r;
}

CheckResult check_renewal_round_trip() {
  CheckResult r{"renewal_round_trip", "classify(build_kernel(alpha, p)) = (alpha, p)", true, ""};
  double worst = 0.0;
  int points = 0;
  for (double a : {0.05, 0.2, 0.4, 0.6, 0.85})
    for (double p : {0.25, 0.5, 0.75, 1.0}) {
      const KernelSpec k = build_kernel(Family::Ladder, ladder_c_of_alpha(a), 0.0, p);
      const auto [c0, c1] = reciprocal_coefficients(k);
      const RenewalClass cls = classify_renewal_dpp(c0, c1);
      worst = std::max({worst, std::abs(cls.alpha - a), std::abs(cls.p - p)});
      ++points;
    }
  r.pass = worst <= 1e-10 && points == 20;
  r.detail = std::to_string(points) + " points, max err " + fmt(worst);
  return r;
}

CheckResult check_successor_table() {
  CheckResult r{"successor_table", "allowed symbol transitions per boundary class", true, ""};
  const SuccessorReport rep = verify_successor_table();
  r.pass = rep.match;
  std::ostringstream d;
  for (int i = 0; i < 5; ++i) {
    d << i + 1 << ":{";
    for (std::size_t j = 0; j < rep.derived[i].size(); ++j) d << (j ? "," : "") << rep.derived[i][j] + 1;
    d << "} ";
  }
  if (!rep.diagnostic.empty()) d << rep.diagnostic;
  r.detail = d.str();
  return r;
}

std::vector<CheckResult> acceptance_checks() {
  return {check_count_tables(),        check_oracle_equivalence(), check_marginal_triple(),
          check_determinant_identity(), check_fourier_consistency(), check_regenerative_order(),
          check_chain_fidelity(),       check_monte_carlo(),        check_nonrealizability(),
          check_renewal_round_trip(),   check_successor_table()};
}

std::vector<CheckResult> invariant_checks() {
  std::vector<CheckResult> out;

  {
    CheckResult r{"transfer_regeneration", "brute-force M, M', N equal the closed matrices", true, ""};
    for (Family f : kFamilies) {
      const Regenerated g = regenerate_transfer(f);
      if (!g.consistent || !(g.M == symbolic_M(f)) || !(g.Mprime == symbolic_Mprime(f)) ||
          !(g.N == symbolic_N(f))) {
        r.pass = false;
        r.detail += std::string(to_string(f)) + " differs; ";
      }
    }
    if (r.pass) r.detail = "4 families";
    out.push_back(r);
  }
  {
    CheckResult r{"two_point_expansion", "P[z0,zm] = sum rho lambda~^m", true, ""};
    double worst = 0.0;
    for (Family f : kFamilies) {
      const TransferSystem ts = build_transfer(GraphFamily::numeric(f, 1.3, family_d(f, 0.7)));
      const auto terms = two_point_expansion(ts);
      for (int m = 1; m <= 12; ++m) {
        cdouble s = 0.0;
        for (const auto& t : terms) s += t.rho * std::pow(t.lambda_tilde, m);
        worst = std::max(worst, std::abs(s.real() - joint_probability(ts, {m})));
      }
    }
    r.pass = worst <= 1e-10;
    r.detail = "max err " + fmt(worst);
    out.push_back(r);
  }
  {
    CheckResult r{"three_point_expansion", "P[z0,zk,z_{m+1}] = sum rho^(k) lambda~^m", true, ""};
    const TransferSystem ts = build_transfer(GraphFamily::numeric(Family::Helix3, 1.0));
    double worst = 0.0;
    for (int k = 1; k <= 3; ++k) {
      const auto terms = three_point_expansion(ts, k);
      for (int m = k; m <= k + 8; ++m) {
        cdouble s = 0.0;
        for (const auto& t : terms) s += t.rho * std::pow(t.lambda_tilde, m);
        worst = std::max(worst, std::abs(s.real() - joint_probability(ts, {k, m + 1})));
      }
    }
    r.pass = worst <= 1e-10;
    r.detail = "max err " + fmt(worst);
    out.push_back(r);
  }
  {
    CheckResult r{"gap_law", "transfer gap probability = r_m P[z0] (ladder, zigzag)", true, ""};
    double worst = 0.0;
    for (Family f : {Family::Ladder, Family::Zigzag})
      for (double c : {0.5, 1.0, 3.0}) {
        const TransferSystem ts = build_transfer(GraphFamily::numeric(f, c));
        const KernelSpec k = build_kernel(f, c);
        for (int m = 1; m <= 15; ++m)
          worst = std::max(worst, std::abs(gap_probability(ts, m) - renewal_distribution(k, m) * edge_marginal(ts)));
      }
    r.pass = worst <= 1e-12;
    r.detail = "max err " + fmt(worst);
    out.push_back(r);
  }
  {
    CheckResult r{"electric_network", "fixed point, finite-window limit, voltages give kernel entries", true, ""};
    double worst = 0.0;
    for (Family f : {Family::Ladder, Family::Zigzag})
      for (double c : {0.5, 1.0, 2.0}) {
        const ResistanceProfile p = effective_resistance(f, c);
        worst = std::max(worst, std::abs(fixed_point_residual(p)));
        worst = std::max(worst, std::abs(finite_window_resistance(f, c, 20) - p.r));
        const KernelSpec k = build_kernel(f, c);
        for (int m = 1; m <= 10; ++m)
          worst = std::max(worst, std::abs(std::abs(kernel_entry(k, m)) - std::abs(transfer_current(p, m))));
      }
    r.pass = worst <= 1e-9;
    r.detail = "max err " + fmt(worst);
    out.push_back(r);
  }
  {
    CheckResult r{"densities", "f(0), f(1/2) of helix-3 and ladder; resummed terms", true, ""};
    const KernelSpec h = build_kernel(Family::Helix3, 1.0), l = build_kernel(Family::Ladder, 1.0);
    double worst = std::max({std::abs(density(h, 0.0) - 0.1), std::abs(density(h, 0.5) - 0.5),
                             std::abs(density(l, 0.0) - 1.0)});
    for (Family f : kFamilies) {
      const KernelSpec k = build_kernel(f, 0.8, family_d(f, 1.5));
      for (int i = 0; i < 16; ++i)
        worst = std::max(worst, std::abs(density(k, i / 16.0) - density_from_terms(k, i / 16.0)));
    }
    r.pass = worst <= 1e-12;
    r.detail = "max err " + fmt(worst);
    out.push_back(r);
  }
  {
    CheckResult r{"enhanced_roots", "radical roots = companion-matrix roots", true, ""};
    double worst = 0.0;
    for (double c : {0.2, 1.0, 5.0})
      for (double d : {0.0, 1.0, 4.0}) {
        const auto a = enhanced_roots(c, d);
        const auto b = enhanced_roots_companion(c, d);
        for (const auto& x : a) {
          double best = INFINITY;
          for (const auto& y : b) best = std::min(best, std::abs(x - y));
          worst = std::max(worst, best);
        }
      }
    r.pass = worst <= 1e-9;
    r.detail = "max err " + fmt(worst);
    out.push_back(r);
  }
  {
    CheckResult r{"helix3_sign_recovery", "kernel rebuilt from transfer probabilities", true, ""};
    const TransferSystem ts = build_transfer(GraphFamily::numeric(Family::Helix3, 1.0));
    const KernelSpec k = build_kernel(Family::Helix3, 1.0);
    const int sign1 = kernel_entry(k, 1) >= 0 ? 1 : -1;
    const auto rec = helix3_sign_recovery(ts, 20, sign1);
    double worst = 0.0;
    for (int m = 0; m <= 20; ++m) worst = std::max(worst, std::abs(rec[m] - kernel_entry(k, m)));
    r.pass = worst <= 1e-9;
    r.detail = "m<=20, max err " + fmt(worst);
    out.push_back(r);
  }
  {
    CheckResult r{"thinning", "thinned kernel p A; empirical thinned marginal", true, ""};
    const KernelSpec k = build_kernel(Family::Ladder, 1.0, 0.0, 0.5);
    const double want = 0.5 / std::sqrt(3.0);
    const std::size_t n = 200000;
    const auto h = atom_histogram(
        [](Rng& g) { return thin(ladder_renewal_sample(1.0, 0, 0, g, false), 0.5, g.next()); }, 1, n, 5);
    const double emp = static_cast<double>(h[1]) / static_cast<double>(n);
    const bool ok = std::abs(kernel_entry(k, 0) - want) <= 1e-12 &&
                    std::abs(emp - want) <= 3.0 * binomial_sigma(want, static_cast<double>(n));
    r.pass = ok;
    r.detail = "hatf(0) " + fmt(kernel_entry(k, 0)) + ", empirical " + fmt(emp);
    out.push_back(r);
  }
  {
    CheckResult r{"sampler_agreement", "native and DPP samplers match exact window-4 atoms", true, ""};
    std::ostringstream d;
    for (Family f : kFamilies) {
      const double dd = family_d(f, 1.0);
      const KernelSpec k = build_kernel(f, 1.0, dd);
      const auto probs = atom_probabilities(k, 4);
      const auto hd = atom_histogram_parallel([&](Rng& g) { return dpp_window_sample(k, 4, g); }, 4, 100000, 17);
      double pmin = chi_square_test(hd, probs).p_value;
      if (f != Family::EnhancedHelix3) {
        const auto hn = atom_histogram_parallel([&](Rng& g) { return native_sample(f, 1.0, 4, g); }, 4, 100000, 18);
        pmin = std::min({pmin, chi_square_test(hn, probs).p_value, chi_square_two_sample(hn, hd).p_value});
      }
      if (pmin <= 0.001) r.pass = false;
      d << to_string(f) << " min p " << fmt(pmin) << "; ";
    }
    r.detail = d.str();
    out.push_back(r);
  }
  {
    CheckResult r{"tree_samples_acyclic", "ladder and helix-3 tree samples are forests", true, ""};
    Rng g(8);
    for (int i = 0; i < 50; ++i) {
      const SamplePath a = ladder_renewal_sample(0.7, -40, 40, g, i % 2 == 0);
      const Segment wa = tree_window(a);
      const SamplePath b = helix3_chain_sample(0, 60, g);
      const Segment wb = tree_window(b);
      if (!is_forest(wa, tree_edges(a, wa)) || !is_forest(wb, tree_edges(b, wb))) r.pass = false;
    }
    r.detail = "100 samples";
    out.push_back(r);
  }
  {
    CheckResult r{"seed_determinism", "same seed, same sample", true, ""};
    const KernelSpec k = build_kernel(Family::EnhancedHelix3, 1.0, 1.0);
    r.pass = dpp_window_sample(k, 30, std::uint64_t{3}).x == dpp_window_sample(k, 30, std::uint64_t{3}).x &&
             ladder_renewal_sample(1.0, 0, 99, std::uint64_t{4}, false).x ==
                 ladder_renewal_sample(1.0, 0, 99, std::uint64_t{4}, false).x &&
             interlaced_reference(0.3, 0.5, 100, 5).x == interlaced_reference(0.3, 0.5, 100, 5).x;
    const auto fn = [&](Rng& g) { return dpp_window_sample(k, 4, g); };
    r.pass = r.pass && atom_histogram(fn, 4, 2000, 9) == atom_histogram_parallel(fn, 4, 2000, 9);
    r.detail = r.pass ? "serial and parallel harnesses agree" : "mismatch";
    out.push_back(r);
  }
  return out;
}

std::vector<CheckResult> run_suite(std::string_view suite) {
  if (suite == "acceptance") return acceptance_checks();
  if (suite == "invariants") return invariant_checks();
  if (suite == "all") {
    auto a = acceptance_checks();
    auto b = invariant_checks();
    a.insert(a.end(), b.begin(), b.end());
    return a;
  }
  throw ValidationError("unknown suite '" + std::string(suite) + "' (acceptance, invariants, all)");
}

}  // namespace rungs
