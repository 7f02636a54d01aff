#include "rungs/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "rungs/chain.hpp"
#include "rungs/electric.hpp"
#include "rungs/kernel.hpp"
#include "rungs/oracle.hpp"
#include "rungs/sampler.hpp"
#include "rungs/transfer.hpp"
#include "rungs/verify.hpp"

namespace rungs::cli {

namespace {

using nlohmann::json;

struct Options {
  std::string family = "ladder";
  std::string c = "1";
  std::string d = "0";
  double p = 1.0;
  double phase = 0.0;
  int n = 1;
  int m = 1;
  int lo = 0;
  int hi = 2;
  int window = 8;
  int grid = 64;
  std::size_t n_samples = 1;
  std::size_t cap = kDefaultEdgeCap;
  std::optional<std::uint64_t> seed;
  std::string out_path;
  std::string format = "json";
  int precision = 12;
  std::string sites = "0";
  std::string pattern = "1";
  std::string suite = "all";
  std::string sampler = "native";
  double x = 0.0;
  double c0 = 0.0, c1 = 0.0;
  bool symbolic = false;
  bool conditioned = false;
  bool c_infinite = false;
};

/// Exact rational from "3", "0.1", "1/3" or "2.5e-1".
Rational parse_rational(const std::string& s) {
  try {
    const auto slash = s.find('/');
    if (slash != std::string::npos)
      return Rational(BigInt(s.substr(0, slash)), BigInt(s.substr(slash + 1)));
    std::string mant = s;
    int exp10 = 0;
    const auto e = s.find_first_of("eE");
    if (e != std::string::npos) {
      mant = s.substr(0, e);
      exp10 = std::stoi(s.substr(e + 1));
    }
    const auto dot = mant.find('.');
    if (dot != std::string::npos) {
      exp10 -= static_cast<int>(mant.size() - dot - 1);
      mant.erase(dot, 1);
    }
    if (mant.empty() || mant == "-" || mant == "+") throw std::invalid_argument(s);
    if (mant[0] == '+') mant.erase(0, 1);
    Rational r{BigInt(mant)};
    BigInt ten = 1;
    for (int i = 0; i < std::abs(exp10); ++i) ten *= 10;
    return exp10 >= 0 ? r * Rational(ten) : r / Rational(ten);
  } catch (const std::exception&) {
    throw ValidationError("'" + s + "' is not a number");
  }
}

double parse_double(const std::string& s) {
  if (s == "inf" || s == "infinity") return INFINITY;
  return static_cast<double>(parse_rational(s));
}

std::vector<int> parse_ints(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw ValidationError("'" + tok + "' is not an integer site");
    }
  }
  if (out.empty()) throw ValidationError("empty site list");
  return out;
}

class Emitter {
 public:
  Emitter(const Options& o, std::ostream& out) : o_(o), out_(out) {}

  json num(double v) const {
    if (!std::isfinite(v)) return std::isnan(v) ? json("nan") : json(v > 0 ? "inf" : "-inf");
    std::ostringstream os;
    os << std::setprecision(o_.precision) << v;
    return std::stod(os.str());
  }
  json cnum(cdouble v) const { return json{{"re", num(v.real())}, {"im", num(v.imag())}}; }

  void emit_json(json j) const {
    j["schema_version"] = kSchemaVersion;
    write(j.dump(2) + "\n");
  }
  void emit_text(const std::string& s) const { write(s); }

 private:
  void write(const std::string& s) const {
    if (o_.out_path.empty()) {
      out_ << s;
      return;
    }
    std::ofstream f(o_.out_path);
    if (!f) throw ValidationError("cannot write '" + o_.out_path + "'");
    f << s;
  }
  const Options& o_;
  std::ostream& out_;
};

GraphFamily numeric_family(const Options& o) {
  const Family f = parse_family(o.family);
  const double c = parse_double(o.c), d = parse_double(o.d);
  validate_weights(f, c, d);
  return GraphFamily::numeric(f, c, d);
}

KernelSpec kernel_of(const Options& o) {
  const Family f = parse_family(o.family);
  const double c = o.c_infinite ? INFINITY : parse_double(o.c);
  return build_kernel(f, c, parse_double(o.d), o.p, o.phase);
}

json params(const Options& o) {
  return json{{"family", o.family}, {"c", o.c}, {"d", o.d}};
}

std::uint64_t seed_of(const Options& o) {
  if (o.seed) return *o.seed;
  if (const char* env = std::getenv("SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw ValidationError("SEED must be a 64-bit unsigned integer");
    }
  }
  return 1;
}

json count_json(const Options& o) {
  const Family f = parse_family(o.family);
  if (o.n < 1 || o.n > 5000) throw ValidationError("--n must be in 1..5000");
  const WeightPoly poly = count_segment(f, o.n);
  json j{{"family", o.family}, {"n", o.n}, {"polynomial", to_json(poly)}, {"polynomial_text", poly.str()}};
  if (o.symbolic) {
    j["count"] = poly.str();
  } else {
    const Rational c = parse_rational(o.c), d = parse_rational(o.d);
    validate_weights(f, static_cast<double>(c), static_cast<double>(d));
    j["c"] = o.c;
    j["d"] = o.d;
    j["count"] = poly.evaluate(c, d).str();
  }
  return j;
}

void add_common(CLI::App* a, Options& o, bool weights = true) {
  a->add_option("--family", o.family, "ladder | zigzag | helix3 | enhanced");
  if (weights) {
    a->add_option("--c", o.c, "rung weight (decimal or a/b)");
    a->add_option("--d", o.d, "chord weight (enhanced only)");
  }
}

int print_checks(const std::vector<CheckResult>& rows, const Options& o, const Emitter& em) {
  bool ok = true;
  for (const auto& r : rows) ok = ok && r.pass;
  if (o.format == "json") {
    json arr = json::array();
    for (const auto& r : rows)
      arr.push_back({{"name", r.name}, {"anchor", r.anchor}, {"pass", r.pass}, {"detail", r.detail}});
    em.emit_json(json{{"checks", arr}, {"all_pass", ok}});
  } else {
    std::ostringstream os;
    for (const auto& r : rows)
      os << (r.pass ? "PASS " : "FAIL ") << std::left << std::setw(24) << r.name << " [" << r.anchor << "] "
         << r.detail << "\n";
    em.emit_text(os.str());
  }
  return ok ? 0 : 3;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Random spanning trees on ladder-like strips: counts, rung probabilities, kernels, samplers"};
  app.set_config("--config", "", "TOML/INI file with option values");
  app.require_subcommand(1);
  app.add_option("--seed", o.seed, "64-bit seed (falls back to $SEED, then 1)");
  app.add_option("--out", o.out_path, "write output to this file");
  app.add_option("--format", o.format, "json | csv | text")->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--precision", o.precision, "significant digits")->check(CLI::Range(1, 17));

  auto* count = app.add_subcommand("count", "weighted spanning-tree count a_{n;1}");
  add_common(count, o);
  count->add_option("--n", o.n, "window size")->required();
  count->add_flag("--symbolic", o.symbolic, "print the polynomial in c, d");

  auto* prob = app.add_subcommand("prob", "P[all listed rungs in T] by transfer and kernel");
  add_common(prob, o);
  prob->add_option("--sites", o.sites, "comma-separated rung sites, e.g. 0,2,5");

  auto* transfer = app.add_subcommand("transfer", "transfer-matrix counts and probabilities");
  transfer->require_subcommand(1);
  auto* tcount = transfer->add_subcommand("count", "same as `count`");
  add_common(tcount, o);
  tcount->add_option("--n", o.n, "window size")->required();
  tcount->add_flag("--symbolic", o.symbolic, "print the polynomial in c, d");
  auto* tprob = transfer->add_subcommand("prob", "joint rung probability with expansion");
  add_common(tprob, o);
  tprob->add_option("--edges,--sites", o.sites, "rung sites, e.g. 0,2,5");

  auto* kernel = app.add_subcommand("kernel", "Toeplitz kernel of the rung process");
  kernel->require_subcommand(1);
  auto kernel_opts = [&](CLI::App* a) {
    add_common(a, o);
    a->add_option("--p", o.p, "thinning probability");
    a->add_option("--phase", o.phase, "phase twist");
    a->add_flag("--c-infinite", o.c_infinite, "ladder with c = infinity");
  };
  auto* kentry = kernel->add_subcommand("entry", "hatf(m) by residues and by quadrature");
  kernel_opts(kentry);
  kentry->add_option("--m", o.m, "offset");
  auto* kwindow = kernel->add_subcommand("window", "det of the kernel minor");
  kernel_opts(kwindow);
  kwindow->add_option("--sites", o.sites, "comma-separated sites");
  auto* kdensity = kernel->add_subcommand("density", "f(x) at one point");
  kernel_opts(kdensity);
  kdensity->add_option("--x", o.x, "point in [0, 1)");
  auto* korder = kernel->add_subcommand("order", "regenerative order");
  kernel_opts(korder);
  auto* kclassify = kernel->add_subcommand("classify", "renewal class of an order-one kernel");
  kernel_opts(kclassify);

  auto* density_cmd = app.add_subcommand("density", "(x, f(x)) CSV on a uniform grid");
  add_common(density_cmd, o);
  density_cmd->add_option("--p", o.p, "thinning probability");
  density_cmd->add_option("--phase", o.phase, "phase twist");
  density_cmd->add_option("--grid", o.grid, "number of points (>= 16)");

  auto* electric = app.add_subcommand("electric", "resistor-network view (ladder, zigzag)");
  electric->require_subcommand(1);
  auto* eres = electric->add_subcommand("resistance", "r_plus, r and P[z0] = r c");
  add_common(eres, o, true);
  auto* ecur = electric->add_subcommand("current", "currents through rungs 0..m");
  add_common(ecur, o, true);
  ecur->add_option("--m", o.m, "largest offset");

  auto* chain = app.add_subcommand("chain", "maximal-entropy Markov chain of the helix-3 tree");
  chain->require_subcommand(1);
  auto* cinfo = chain->add_subcommand("info", "R, invariant laws, entropy");
  auto* csample = chain->add_subcommand("sample", "sample a symbol path");
  csample->add_option("--n", o.n, "steps");
  csample->add_option("--seed", o.seed, "seed");
  std::string chain_format = "symbols";
  csample->add_option("--format", chain_format, "symbols | edges | csv")
      ->check(CLI::IsMember({"symbols", "edges", "csv"}));
  auto* cprob = chain->add_subcommand("prob", "P[z_0..z_{L-1} match pattern]");
  cprob->add_option("--pattern", o.pattern, "e.g. 1,*,1");

  auto* sample = app.add_subcommand("sample", "rung-process samples as CSV");
  add_common(sample, o);
  sample->add_option("--p", o.p, "thinning probability");
  sample->add_option("--window", o.window, "window size");
  sample->add_option("--n-samples", o.n_samples, "number of samples");
  sample->add_option("--seed", o.seed, "seed");
  sample->add_option("--sampler", o.sampler, "native | dpp")->check(CLI::IsMember({"native", "dpp"}));
  sample->add_flag("--conditioned", o.conditioned, "ladder: condition on z_0 in T");

  auto* classify = app.add_subcommand("classify", "(alpha, p, c) of 1/f = c0 + c1 cos 2 pi (x + phase)");
  classify->add_option("--c0", o.c0, "constant coefficient")->required();
  classify->add_option("--c1", o.c1, "cosine coefficient")->required();
  classify->add_option("--phase", o.phase, "phase");

  auto* verify = app.add_subcommand("verify", "cross-validation checks");
  verify->add_option("--suite", o.suite, "acceptance | invariants | all");

  auto* oracle = app.add_subcommand("oracle", "brute-force enumeration on a finite window");
  oracle->require_subcommand(1);
  auto oracle_opts = [&](CLI::App* a) {
    add_common(a, o);
    a->add_option("--lo", o.lo, "window start");
    a->add_option("--hi", o.hi, "window end");
    a->add_option("--cap", o.cap, "edge cap");
  };
  auto* ocount = oracle->add_subcommand("count", "weighted count by enumeration and matrix-tree");
  oracle_opts(ocount);
  ocount->add_flag("--symbolic", o.symbolic, "polynomial only");
  auto* oenum = oracle->add_subcommand("enumerate", "list every spanning tree");
  oracle_opts(oenum);
  auto* osample = oracle->add_subcommand("sample", "Wilson samples");
  oracle_opts(osample);
  osample->add_option("--n-samples", o.n_samples, "number of samples");
  osample->add_option("--seed", o.seed, "seed");

  std::vector<std::string> argv_store = {"rungs"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 1;
  }

  const Emitter em(o, out);
  try {
    if (count->parsed() || tcount->parsed()) {
      em.emit_json(count_json(o));
    } else if (prob->parsed() || tprob->parsed()) {
      const GraphFamily g = numeric_family(o);
      const auto sites = parse_ints(o.sites);
      const TransferSystem ts = build_transfer(g);
      const double t = rung_set_probability(ts, sites);
      const KernelSpec k = build_kernel(g.kind, *g.c, g.d.value_or(0.0));
      json j = params(o);
      j["sites"] = sites;
      j["value"] = em.num(t);
      j["kernel_value"] = em.num(window_probability(k, sites));
      if (sites.size() == 2) {
        json ex = json::array();
        for (const auto& e : two_point_expansion(ts))
          ex.push_back({{"lambda_tilde", em.cnum(e.lambda_tilde)}, {"rho", em.cnum(e.rho)}});
        j["expansion"] = ex;
      }
      em.emit_json(j);
    } else if (kentry->parsed()) {
      const KernelSpec k = kernel_of(o);
      const cdouble e = kernel_entry_complex(k, o.m);
      json j = params(o);
      j["m"] = o.m;
      j["p"] = em.num(o.p);
      j["phase"] = em.num(o.phase);
      if (std::abs(e.imag()) > 1e-12) {
        j["entry"] = em.cnum(e);
        j["quadrature"] = em.cnum(fourier_invert_complex(k, o.m));
      } else {
        j["entry"] = em.num(e.real());
        j["quadrature"] = em.num(fourier_invert_complex(k, o.m).real());
      }
      em.emit_json(j);
    } else if (kwindow->parsed()) {
      const KernelSpec k = kernel_of(o);
      const auto sites = parse_ints(o.sites);
      json j = params(o);
      j["sites"] = sites;
      j["value"] = em.num(window_probability(k, sites));
      em.emit_json(j);
    } else if (kdensity->parsed()) {
      const KernelSpec k = kernel_of(o);
      json j = params(o);
      j["x"] = em.num(o.x);
      j["density"] = em.num(density(k, o.x));
      em.emit_json(j);
    } else if (korder->parsed()) {
      const RegenerativeOrder r = regenerative_order(kernel_of(o));
      json coef = json::array();
      for (double b : r.coefficients) coef.push_back(em.num(b));
      json j = params(o);
      j["order"] = r.order;
      j["reciprocal_coefficients"] = coef;
      em.emit_json(j);
    } else if (kclassify->parsed()) {
      const KernelSpec k = kernel_of(o);
      const auto [c0, c1] = reciprocal_coefficients(k);
      const RenewalClass r = classify_renewal_dpp(c0, c1, o.phase);
      em.emit_json(json{{"c0", em.num(c0)}, {"c1", em.num(c1)}, {"alpha", em.num(r.alpha)},
                        {"p", em.num(r.p)}, {"c", em.num(r.c)}, {"phase", em.num(r.phase)}});
    } else if (density_cmd->parsed()) {
      if (o.grid < 16) throw ValidationError("--grid must be >= 16");
      const KernelSpec k = kernel_of(o);
      std::ostringstream os;
      os << std::setprecision(o.precision) << "x,f\n";
      for (int i = 0; i < o.grid; ++i) {
        const double x = static_cast<double>(i) / o.grid;
        os << x << "," << density(k, x) << "\n";
      }
      em.emit_text(os.str());
    } else if (eres->parsed() || ecur->parsed()) {
      const Family f = parse_family(o.family);
      const ResistanceProfile r = effective_resistance(f, parse_double(o.c));
      json j = params(o);
      j["r_plus"] = em.num(r.r_plus);
      j["r0"] = em.num(r.r0);
      j["r"] = em.num(r.r);
      j["alpha"] = em.num(r.alpha);
      j["marginal"] = em.num(kirchhoff_marginal(r));
      if (ecur->parsed()) {
        if (o.m < 0 || o.m > 10000) throw ValidationError("--m must be in 0..10000");
        json cur = json::array();
        for (int m = 0; m <= o.m; ++m) cur.push_back(em.num(transfer_current(r, m)));
        j["currents"] = cur;
      }
      em.emit_json(j);
    } else if (cinfo->parsed()) {
      const ChainSpec s = build_chain();
      json R = json::array(), Rbar = json::array(), pi = json::array(), pib = json::array();
      for (int i = 0; i < 11; ++i) {
        json row = json::array();
        for (int k = 0; k < 11; ++k) row.push_back(em.num(s.R(i, k)));
        R.push_back(row);
        pi.push_back(em.num(s.pi_R(i)));
      }
      for (int i = 0; i < 5; ++i) {
        json row = json::array();
        for (int k = 0; k < 5; ++k) row.push_back(em.num(s.Rbar(i, k)));
        Rbar.push_back(row);
        pib.push_back(em.num(s.pi_Rbar(i)));
      }
      json alphabet = json::array();
      for (const auto& a : kAlphabet) alphabet.push_back({{"h", a.h}, {"z", a.z}, {"class", a.cls}});
      em.emit_json(json{{"alphabet", alphabet}, {"R", R}, {"Rbar", Rbar}, {"pi_R", pi}, {"pi_Rbar", pib},
                        {"entropy", em.num(chain_entropy(s))}});
    } else if (csample->parsed()) {
      if (o.n < 1 || o.n > 100000000) throw ValidationError("--n must be in 1..1e8");
      Rng rng(seed_of(o));
      const auto path = sample_path(build_chain(), static_cast<std::size_t>(o.n), rng);
      const DecodedPath d = decode_path(path);
      if (chain_format == "csv") {
        std::ostringstream os;
        os << "step,symbol,h,z,class\n";
        for (std::size_t k = 0; k < path.size(); ++k)
          os << k << "," << path[k] + 1 << "," << d.h[k] << "," << d.z[k] << "," << d.cls[k] << "\n";
        em.emit_text(os.str());
      } else if (chain_format == "edges") {
        const Segment w = decoded_window(path.size());
        em.emit_json(json{{"seed", seed_of(o)}, {"lo", w.lo}, {"hi", w.hi}, {"edges", w.labels(decoded_edges(d, w))}});
      } else {
        json sym = json::array();
        for (int y : path) sym.push_back(y + 1);
        em.emit_json(json{{"seed", seed_of(o)}, {"symbols", sym}});
      }
    } else if (cprob->parsed()) {
      const auto pat = parse_pattern(o.pattern);
      em.emit_json(json{{"pattern", o.pattern}, {"value", em.num(query_probability(build_chain(), pat))}});
    } else if (sample->parsed()) {
      const GraphFamily g = numeric_family(o);
      if (o.window < 1) throw ValidationError("--window must be >= 1");
      if (o.n_samples < 1 || o.n_samples > 100000000) throw ValidationError("--n-samples must be in 1..1e8");
      if (!(o.p >= 0.0 && o.p <= 1.0)) throw ValidationError("--p must lie in [0, 1]");
      const std::uint64_t seed = seed_of(o);
      const bool native = o.sampler == "native" && g.kind != Family::EnhancedHelix3;
      const KernelSpec k = build_kernel(g.kind, *g.c, g.d.value_or(0.0), o.p);
      std::ostringstream os;
      os << "sample_id,index,x,h0,h1\n";
      for (std::size_t i = 0; i < o.n_samples; ++i) {
        Rng rng = Rng::derived(seed, i);
        SamplePath s;
        if (native) {
          s = g.kind == Family::Ladder ? ladder_renewal_sample(*g.c, 0, o.window - 1, rng, o.conditioned)
                                       : native_sample(g.kind, *g.c, o.window, rng);
          if (o.p < 1.0) s = thin(s, o.p, rng.next());
        } else {
          s = dpp_window_sample(k, o.window, rng);
        }
        for (std::size_t m = 0; m < s.size(); ++m) {
          os << i << "," << s.lo + static_cast<int>(m) << "," << int(s.x[m]) << ",";
          if (s.has_tree()) os << int(s.h0[m]);
          os << ",";
          if (!s.h1.empty()) os << int(s.h1[m]);
          os << "\n";
        }
      }
      em.emit_text(os.str());
    } else if (classify->parsed()) {
      const RenewalClass r = classify_renewal_dpp(o.c0, o.c1, o.phase);
      em.emit_json(json{{"alpha", em.num(r.alpha)}, {"p", em.num(r.p)}, {"c", em.num(r.c)}, {"phase", em.num(r.phase)}});
    } else if (verify->parsed()) {
      Options vo = o;
      if (vo.format == "json" && !app.get_option("--format")->count()) vo.format = "text";
      return print_checks(run_suite(o.suite), vo, Emitter(vo, out));
    } else if (ocount->parsed() || oenum->parsed() || osample->parsed()) {
      const Family f = parse_family(o.family);
      const Segment sym = build_segment(GraphFamily::symbolic(f), o.lo, o.hi);
      if (sym.edge_count() > o.cap)
        throw CapExceeded("window has " + std::to_string(sym.edge_count()) + " edges, cap is " +
                          std::to_string(o.cap) + " (raise --cap)");
      if (ocount->parsed()) {
        const WeightPoly poly = weighted_count(sym, o.cap);
        json j{{"family", o.family}, {"lo", o.lo}, {"hi", o.hi}, {"degenerate", sym.degenerate},
               {"polynomial", to_json(poly)}, {"polynomial_text", poly.str()}};
        if (!o.symbolic) {
          const Rational c = parse_rational(o.c), d = parse_rational(o.d);
          validate_weights(f, static_cast<double>(c), static_cast<double>(d));
          j["count"] = poly.evaluate(c, d).str();
          j["matrix_tree_count"] = matrix_tree_count(sym, c, d).str();
        }
        em.emit_json(j);
      } else if (oenum->parsed()) {
        json trees = json::array();
        for (const auto& t : enumerate_trees(sym, o.cap)) trees.push_back(sym.labels(t));
        json j = to_json(sym);
        j["trees"] = trees;
        j["tree_count"] = trees.size();
        em.emit_json(j);
      } else {
        const Segment seg = build_segment(numeric_family(o), o.lo, o.hi);
        if (o.n_samples < 1 || o.n_samples > 10000000) throw ValidationError("--n-samples must be in 1..1e7");
        const std::uint64_t seed = seed_of(o);
        json trees = json::array();
        for (std::size_t i = 0; i < o.n_samples; ++i) {
          Rng rng = Rng::derived(seed, i);
          trees.push_back(seg.labels(wilson_sample(seg, seg.family.weights(), rng)));
        }
        em.emit_json(json{{"seed", seed}, {"samples", trees}});
      }
    }
  } catch (const NumericFailure& e) {
    err << "numeric failure: " << e.what() << "\n";
    return 2;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace rungs::cli
