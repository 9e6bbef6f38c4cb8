// capkit: command-line front end for the capacity toolkit.
//
// Subcommands: capacity, symbol, stability, verify, experiment.  Exit codes:
// 0 success, 2 input error, 3 non-convergence, 4 a non-conjecture inequality
// was violated (a theorem failed, i.e. an implementation bug).

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <functional>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "capkit/bipartite.hpp"
#include "capkit/capacity.hpp"
#include "capkit/combin_bounds.hpp"
#include "capkit/graph_json.hpp"
#include "capkit/linear_operator.hpp"
#include "capkit/matrix.hpp"
#include "capkit/operator_json.hpp"
#include "capkit/poly_json.hpp"
#include "capkit/preservation.hpp"
#include "capkit/preserver.hpp"
#include "capkit/random_instances.hpp"
#include "capkit/stability.hpp"
#include "capkit/transforms.hpp"

namespace {

using capkit::BoundReport;
using capkit::Json;
using capkit::ReportStatus;

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitNoConverge = 3;
constexpr int kExitViolated = 4;

std::string fmt(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_sci(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.6e", v);
  return buf;
}

int to_int(const std::string& s) {
  size_t pos = 0;
  int v = std::stoi(s, &pos);
  if (pos != s.size()) throw std::invalid_argument("bad integer: " + s);
  return v;
}

double to_real(const std::string& s) {
  size_t pos = 0;
  double v = std::stod(s, &pos);
  if (pos != s.size()) throw std::invalid_argument("bad number: " + s);
  return v;
}

// Comma-separated integers; an entry "a..b" expands to the inclusive range.
std::vector<int> parse_int_list(const std::string& spec) {
  std::vector<int> out;
  if (spec.empty()) return out;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto dots = item.find("..");
    if (dots == std::string::npos) {
      out.push_back(to_int(item));
      continue;
    }
    int a = to_int(item.substr(0, dots));
    int b = to_int(item.substr(dots + 2));
    if (b < a) throw std::invalid_argument("descending range: " + item);
    for (int v = a; v <= b; ++v) out.push_back(v);
  }
  return out;
}

std::vector<double> parse_real_list(const std::string& spec) {
  std::vector<double> out;
  if (spec.empty()) return out;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(to_real(item));
  return out;
}

Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  return Json::parse(in);
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    q += c;
    if (c == '"') q += '"';
  }
  return q + "\"";
}

// ---- worker pool -----------------------------------------------------

int thread_budget() {
  unsigned hw = std::thread::hardware_concurrency();
  int cap = hw ? static_cast<int>(hw) : 1;
  if (const char* env = std::getenv("CAPKIT_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end && *end == '\0' && v >= 1 && v < cap) cap = static_cast<int>(v);
  }
  return cap;
}

// Runs body(0..count-1) on the pool.  Each body writes only its own slot, so
// the caller can print results in index order regardless of scheduling.
template <class F>
void parallel_for(int count, F&& body) {
  int threads = std::min(thread_budget(), count);
  if (threads <= 1) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr err;
  std::mutex err_mu;
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (;;) {
        int i = next.fetch_add(1);
        if (i >= count) return;
        try {
          body(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(err_mu);
          if (!err) err = std::current_exception();
        }
      }
    });
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
}

// ---- capacity --------------------------------------------------------

struct CapacityCfg {
  std::string poly_file;
  std::string alpha_spec;
  std::string format = "json";
  double grad_tol = 1e-10;
  int max_iter = 200;
};

Json capacity_result_json(const capkit::CapacityResult& r) {
  Json j{{"value", r.value},
         {"status", capkit::region_name(r.region)},
         {"converged", r.converged},
         {"iterations", r.iterations}};
  if (!r.minimizer.empty()) j["minimizer_log"] = r.minimizer;
  if (std::isfinite(r.grad_norm)) j["grad_norm"] = r.grad_norm;
  if (!r.face.empty()) {
    Json f = Json::array();
    for (const auto& mu : r.face) f.push_back(mu);
    j["face"] = f;
  }
  return j;
}

int cmd_capacity(const CapacityCfg& cfg) {
  capkit::PolyD p = capkit::poly_as_float_from_json(load_json(cfg.poly_file));
  std::vector<double> alpha = parse_real_list(cfg.alpha_spec);
  capkit::CapacityOptions opts;
  opts.grad_tol = cfg.grad_tol;
  opts.max_iter = cfg.max_iter;
  capkit::CapacityResult r = capkit::capacity(p, alpha, opts);

  if (cfg.format == "json") {
    std::printf("%s\n", capacity_result_json(r).dump().c_str());
  } else if (cfg.format == "csv") {
    std::printf("value,status,converged,iterations\n%s,%s,%s,%d\n",
                fmt(r.value).c_str(), capkit::region_name(r.region),
                r.converged ? "true" : "false", r.iterations);
  } else {
    std::printf("value      = %s\n", fmt(r.value).c_str());
    std::printf("status     = %s\n", capkit::region_name(r.region));
    std::printf("converged  = %s\n", r.converged ? "yes" : "no");
    std::printf("iterations = %d\n", r.iterations);
    if (!r.face.empty())
      std::printf("face       = %zu supporting exponents\n", r.face.size());
  }
  return r.converged ? kExitOk : kExitNoConverge;
}

// ---- symbol ----------------------------------------------------------

struct SymbolCfg {
  std::string op_file;
  int order = -1;  // trans truncation; -1 means the operator's full table
  std::string format = "json";
};

int cmd_symbol(const SymbolCfg& cfg) {
  capkit::OperatorVariant t = capkit::operator_from_json(load_json(cfg.op_file));
  Json out;
  std::visit(
      [&](const auto& op) {
        if (op.bounded()) {
          out = Json{{"kind", "bounded"},
                     {"symbol", capkit::poly_to_json(capkit::symbol_bounded(op))}};
        } else {
          int order = cfg.order < 0 ? op.trunc_order : cfg.order;
          out = Json{{"kind", "trans"},
                     {"order", order},
                     {"symbol", capkit::poly_to_json(
                                    capkit::symbol_trans_truncated(op, order))}};
        }
      },
      t);
  if (cfg.format == "csv") {
    std::printf("exp,coef\n");
    for (const Json& term : out["symbol"]["terms"]) {
      std::string exp;
      for (const Json& e : term["exp"]) {
        if (!exp.empty()) exp += " ";
        exp += std::to_string(e.get<int>());
      }
      std::string coef = term["coef"].is_string()
                             ? term["coef"].get<std::string>()
                             : fmt(term["coef"].get<double>());
      std::printf("%s,%s\n", csv_quote(exp).c_str(), csv_quote(coef).c_str());
    }
  } else if (cfg.format == "human") {
    std::printf("kind: %s\n", out["kind"].get<std::string>().c_str());
    if (out.contains("order"))
      std::printf("order: %d\n", out["order"].get<int>());
    std::printf("terms: %zu\n", out["symbol"]["terms"].size());
    std::printf("%s\n", out["symbol"].dump().c_str());
  } else {
    std::printf("%s\n", out.dump().c_str());
  }
  return kExitOk;
}

// ---- stability -------------------------------------------------------

struct StabilityCfg {
  std::string poly_file;
  int trials = 200;
  std::uint64_t seed = 1;
  std::string format = "json";
};

int cmd_stability(const StabilityCfg& cfg) {
  capkit::PolyD p = capkit::poly_as_float_from_json(load_json(cfg.poly_file));
  capkit::StabilityVerdict v =
      capkit::probabilistic_stability_test(p, cfg.trials, cfg.seed);
  if (cfg.format == "human") {
    if (v.falsified) {
      std::printf("falsified after %d trials\n", v.trials);
      std::string line;
      for (double x : v.line_a) line += fmt(x) + " ";
      std::printf("line base: %s\n", line.c_str());
    } else {
      std::printf("no falsifying line in %d trials\n", v.trials);
    }
  } else {
    std::printf("%s\n", v.to_json().dump().c_str());
  }
  return kExitOk;
}

// ---- verify ----------------------------------------------------------

struct VerifyCfg {
  std::string suite;
  std::uint64_t seed = 1;
  double tol = 1e-7;
  int trials = -1;
  int max_vertices = 16;
  std::string lambda_spec, n_spec, d_spec;
  std::string matrix = "uniform";
  std::string graph_file;
  std::string format = "human";
  bool override_stability = false;
};

using ReportTask = std::function<std::vector<BoundReport>()>;

std::vector<BoundReport> run_report_tasks(const std::vector<ReportTask>& tasks) {
  std::vector<std::vector<BoundReport>> slots(tasks.size());
  parallel_for(static_cast<int>(tasks.size()),
               [&](int i) { slots[i] = tasks[i](); });
  std::vector<BoundReport> out;
  for (auto& s : slots)
    for (auto& r : s) out.push_back(std::move(r));
  return out;
}

capkit::VerifyOptions verify_options(const VerifyCfg& cfg) {
  capkit::VerifyOptions o;
  o.tol = cfg.tol;
  o.override_stability = cfg.override_stability;
  return o;
}

// One product of per-variable univariate affine factors; its support fills
// the whole box [0, factors]^n, so any alpha strictly inside the box is
// strictly inside the Newton polytope.
capkit::PolyD random_box_product(int arity, int factors, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> coef(0.2, 2.0);
  capkit::PolyD p = capkit::PolyD::constant(arity, 1.0);
  for (int k = 0; k < arity; ++k)
    for (int t = 0; t < factors; ++t) {
      capkit::PolyD f(arity);
      f.add_term(capkit::ExponentVec(arity, 0), coef(rng));
      capkit::ExponentVec e(arity, 0);
      e[k] = 1;
      f.add_term(std::move(e), coef(rng));
      p = p * f;
    }
  return p;
}

capkit::PolyD random_homogeneous_stable(int arity, int degree,
                                        std::mt19937_64& rng) {
  std::uniform_real_distribution<double> coef(0.2, 2.0);
  capkit::PolyD p = capkit::PolyD::constant(arity, 1.0);
  for (int t = 0; t < degree; ++t) {
    capkit::PolyD lin(arity);
    for (int k = 0; k < arity; ++k) {
      capkit::ExponentVec e(arity, 0);
      e[k] = 1;
      lin.add_term(std::move(e), coef(rng));
    }
    p = p * lin;
  }
  return p;
}

std::vector<ReportTask> suite_gurvits(const VerifyCfg& cfg) {
  std::vector<int> lambdas =
      parse_int_list(cfg.lambda_spec.empty() ? "2..6" : cfg.lambda_spec);
  for (int l : lambdas)
    if (l < 2) throw std::invalid_argument("gurvits: lambda must be >= 2");
  int trials = cfg.trials < 0 ? 20 : cfg.trials;
  capkit::VerifyOptions vopts = verify_options(cfg);

  std::vector<ReportTask> tasks;
  int index = 0;
  for (int l : lambdas)
    for (int t = 0; t < trials; ++t, ++index) {
      std::uint64_t sub = capkit::substream(cfg.seed, index);
      tasks.push_back([l, t, sub, vopts]() -> std::vector<BoundReport> {
        std::mt19937_64 rng(sub);
        int n = 1 + t % 2;
        capkit::PolyD p = capkit::random_affine_product(n, l, rng);
        std::vector<double> alpha =
            capkit::random_interior_alpha(n, 0.9 * (l - 1), rng);
        std::vector<double> beta(alpha.begin(), alpha.end() - 1);
        capkit::OperatorD op =
            capkit::derivative_at_zero_op<double>(p.degree_profile(), n - 1);
        return {capkit::verify_preservation(op, p, alpha, beta, vopts)};
      });
    }
  return tasks;
}

std::vector<ReportTask> suite_vdw(const VerifyCfg& cfg) {
  std::vector<int> ns = parse_int_list(cfg.n_spec.empty() ? "2..6" : cfg.n_spec);
  for (int n : ns)
    if (n < 1 || n > 9) throw std::invalid_argument("vdw: n must be in 1..9");
  double tol = cfg.tol;

  // A chain whose exact legs disagree is a bug even if the numeric bound
  // holds; surface that as a violated report rather than hiding it.
  auto chain_reports = [tol](const capkit::MatQ& m) -> std::vector<BoundReport> {
    capkit::VdwChainResult c = capkit::vdw_chain(m, tol);
    std::vector<BoundReport> out;
    out.push_back(capkit::make_identity_report(
        "vdw_operator_route",
        capkit::rat_to_double(c.permanent_operator),
        capkit::rat_to_double(c.permanent_ryser),
        c.operator_route_matches ? 1e-15 : -1));
    out.push_back(capkit::make_identity_report(
        "vdw_telescoped_factor", capkit::rat_to_double(c.bound_factor),
        capkit::rat_to_double(c.bound_factor),
        c.product_identity_exact ? 1e-15 : -1));
    out.push_back(c.bound);
    return out;
  };

  std::vector<ReportTask> tasks;
  if (cfg.matrix == "uniform") {
    for (int n : ns)
      tasks.push_back([n, chain_reports] {
        return chain_reports(capkit::MatQ::constant(n, n, capkit::Rat(1, n)));
      });
  } else if (cfg.matrix == "random") {
    int trials = cfg.trials < 0 ? 5 : cfg.trials;
    int index = 0;
    for (int n : ns)
      for (int t = 0; t < trials; ++t, ++index) {
        std::uint64_t sub = capkit::substream(cfg.seed, index);
        tasks.push_back([n, sub, chain_reports] {
          std::mt19937_64 rng(sub);
          capkit::MatQ m(n, n);
          for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
              m.at(i, j) = capkit::Rat(1 + static_cast<int>(rng() % 6),
                                       1 + static_cast<int>(rng() % 3));
          return chain_reports(m);
        });
      }
  } else {
    capkit::MatQ m = capkit::matrix_rational_from_json(load_json(cfg.matrix));
    tasks.push_back([m, chain_reports] { return chain_reports(m); });
  }
  return tasks;
}

std::vector<ReportTask> suite_csikvari(const VerifyCfg& cfg) {
  std::vector<ReportTask> tasks;
  double tol = cfg.tol;

  auto graph_reports = [tol](const capkit::BipartiteGraph& g, int k,
                             bool derivation) -> std::vector<BoundReport> {
    auto reg = g.biregular();
    if (!reg)
      throw std::invalid_argument("csikvari: graph is not biregular");
    capkit::Int mu = capkit::count_matchings(g, k);
    double bound =
        capkit::csikvari_bound(g.left, g.right, reg->first, reg->second, k);
    std::vector<BoundReport> out;
    out.push_back(capkit::make_inequality_report(
        "csikvari_bound", mu.convert_to<double>(), bound, tol));
    if (derivation && k >= 1) {
      auto chain = capkit::csikvari_derivation_check(g, k);
      out.insert(out.end(), chain.begin(), chain.end());
    }
    return out;
  };

  if (!cfg.graph_file.empty()) {
    capkit::BipartiteGraph g =
        capkit::graph_from_json(load_json(cfg.graph_file));
    if (g.left + g.right > std::min(cfg.max_vertices, 20))
      throw std::invalid_argument("csikvari: graph exceeds --max-vertices");
    for (int k = 0; k <= std::min(g.left, g.right); ++k)
      tasks.push_back([g, k, graph_reports] {
        return graph_reports(g, k, g.left + g.right <= 12);
      });
    return tasks;
  }

  int trials = cfg.trials < 0 ? 50 : cfg.trials;
  int budget = std::min(cfg.max_vertices, 20);
  if (budget < 4) throw std::invalid_argument("csikvari: --max-vertices < 4");
  for (int t = 0; t < trials; ++t) {
    std::uint64_t sub = capkit::substream(cfg.seed, t);
    tasks.push_back([sub, budget, graph_reports] {
      std::mt19937_64 rng(sub);
      int nmax = budget / 2;
      int n = 2 + static_cast<int>(rng() % (nmax - 1));
      int d = 1 + static_cast<int>(rng() % n);
      capkit::BipartiteGraph g = capkit::random_regular_bipartite(n, d, rng);
      int k = static_cast<int>(rng() % (n + 1));
      return graph_reports(g, k, 2 * n <= 12);
    });
  }
  return tasks;
}

std::vector<ReportTask> suite_schrijver(const VerifyCfg& cfg) {
  std::vector<int> ns = parse_int_list(cfg.n_spec.empty() ? "2..5" : cfg.n_spec);
  std::vector<int> ds = parse_int_list(cfg.d_spec.empty() ? "2..4" : cfg.d_spec);
  double tol = cfg.tol;
  int budget = std::min(cfg.max_vertices, 20);

  std::vector<ReportTask> tasks;
  int index = 0;
  for (int n : ns)
    for (int d : ds) {
      if (d < 2 || d > n) continue;  // no simple d-regular graph to test
      std::uint64_t sub = capkit::substream(cfg.seed, index++);
      tasks.push_back([n, d, sub, tol, budget]() -> std::vector<BoundReport> {
        std::vector<BoundReport> out;
        double via_matchings = capkit::csikvari_bound(n, n, d, d, n);
        double direct = capkit::schrijver_bound(n, d, n);
        out.push_back(capkit::make_identity_report("schrijver_route_match",
                                                   direct, via_matchings, 0));
        double closed = std::pow(
            std::pow(d - 1, d - 1) / std::pow(double(d), d - 2), n);
        out.push_back(capkit::make_identity_report("schrijver_closed_form",
                                                   direct, closed, 1e-12));
        if (2 * n <= budget) {
          std::mt19937_64 rng(sub);
          capkit::BipartiteGraph g = capkit::random_regular_bipartite(n, d, rng);
          capkit::Int pm = capkit::count_matchings(g, n);
          out.push_back(capkit::make_inequality_report(
              "schrijver_bound", pm.convert_to<double>(), direct, tol));
        }
        return out;
      });
    }
  return tasks;
}

std::vector<ReportTask> suite_innerprod(const VerifyCfg& cfg) {
  int trials = cfg.trials < 0 ? 30 : cfg.trials;
  capkit::VerifyOptions vopts = verify_options(cfg);

  std::vector<ReportTask> tasks;
  for (int t = 0; t < trials; ++t) {
    std::uint64_t sub = capkit::substream(cfg.seed, t);
    tasks.push_back([sub, vopts]() -> std::vector<BoundReport> {
      std::mt19937_64 rng(sub);
      int n = 1 + static_cast<int>(rng() % 3);
      int j = 1 + static_cast<int>(rng() % 3);
      capkit::PolyD p = random_box_product(n, j, rng);
      capkit::PolyD q = random_box_product(n, j, rng);
      capkit::DegreeProfile lambda = capkit::DegreeProfile::uniform(n, j);

      std::uniform_real_distribution<double> frac(0.1, 0.9);
      std::vector<double> alpha(n);
      for (double& a : alpha) a = frac(rng) * j;

      std::vector<BoundReport> out;
      out.push_back(
          capkit::verify_inner_product_bound(p, q, lambda, alpha, vopts));
      out.push_back(
          capkit::verify_inner_product_bound(p, q, std::nullopt, alpha, vopts));

      std::uniform_real_distribution<double> high(0.55, 0.95);
      std::vector<double> beta(n), gamma(n);
      for (int k = 0; k < n; ++k) {
        beta[k] = high(rng) * j;
        gamma[k] = high(rng) * j;
      }
      out.push_back(capkit::boxplus_corollary_check(p, q, lambda, beta, gamma,
                                                    vopts));
      return out;
    });
  }
  return tasks;
}

std::vector<ReportTask> suite_preserver(const VerifyCfg& cfg) {
  int trials = cfg.trials < 0 ? 10 : cfg.trials;
  double tol = cfg.tol;

  std::vector<ReportTask> tasks;
  for (int t = 0; t < trials; ++t) {
    std::uint64_t sub = capkit::substream(cfg.seed, t);
    tasks.push_back([sub, tol]() -> std::vector<BoundReport> {
      std::mt19937_64 rng(sub);
      int n = 1 + static_cast<int>(rng() % 2);
      std::uniform_real_distribution<double> weight(0.3, 1.5);
      std::uniform_real_distribution<double> pos(0.5, 2.0);

      capkit::PreserverInstance inst;
      inst.p = capkit::random_affine_product(n, 2, rng);
      inst.q = capkit::random_affine_product(n, 2, rng);
      inst.alpha = capkit::random_interior_alpha(n, 1.6, rng);
      inst.beta = capkit::random_interior_alpha(n, 1.6, rng);
      inst.b = weight(rng);
      inst.c = weight(rng);
      inst.field.resize(n);
      for (double& f : inst.field) f = pos(rng);
      inst.y = pos(rng);
      inst.lambda = inst.p.degree_profile();

      std::vector<BoundReport> out;
      for (capkit::PreserverId id : capkit::all_preserver_ids()) {
        if (id == capkit::PreserverId::SymmetricDiagonalization) {
          capkit::PreserverInstance sym;
          sym.p = capkit::symmetrize(inst.p);
          std::uniform_real_distribution<double> level(0.3, 0.5);
          sym.alpha.assign(n, level(rng));
          out.push_back(capkit::check_preserver_identity(id, sym, tol));
          continue;
        }
        out.push_back(capkit::check_preserver_identity(id, inst, tol));
      }
      return out;
    });
  }
  return tasks;
}

std::vector<ReportTask> suite_conjecture(const VerifyCfg& cfg) {
  int trials = cfg.trials < 0 ? 20 : cfg.trials;
  capkit::VerifyOptions vopts = verify_options(cfg);

  std::vector<ReportTask> tasks;
  for (int t = 0; t < trials; ++t) {
    std::uint64_t sub = capkit::substream(cfg.seed, t);
    tasks.push_back([sub, vopts]() -> std::vector<BoundReport> {
      std::mt19937_64 rng(sub);
      int n = 2 + static_cast<int>(rng() % 2);
      int d = 2 + static_cast<int>(rng() % 2);
      capkit::PolyD p = random_homogeneous_stable(n, d, rng);
      capkit::PolyD q = random_homogeneous_stable(n, d, rng);
      std::uniform_real_distribution<double> u(0.2, 1.0);
      std::vector<double> alpha(n);
      double sum = 0;
      for (double& a : alpha) sum += (a = u(rng));
      for (double& a : alpha) a *= d / sum;
      return {capkit::gurvits_conjecture_probe(p, q, alpha, vopts)};
    });
  }
  return tasks;
}

int cmd_verify(const VerifyCfg& cfg) {
  std::vector<ReportTask> tasks;
  if (cfg.suite == "gurvits")
    tasks = suite_gurvits(cfg);
  else if (cfg.suite == "vdw")
    tasks = suite_vdw(cfg);
  else if (cfg.suite == "csikvari")
    tasks = suite_csikvari(cfg);
  else if (cfg.suite == "schrijver")
    tasks = suite_schrijver(cfg);
  else if (cfg.suite == "innerprod")
    tasks = suite_innerprod(cfg);
  else if (cfg.suite == "preserver")
    tasks = suite_preserver(cfg);
  else if (cfg.suite == "conjecture")
    tasks = suite_conjecture(cfg);
  else
    throw std::invalid_argument("unknown suite: " + cfg.suite);

  std::vector<BoundReport> reports = run_report_tasks(tasks);

  int violations = 0;
  bool have_slack = false;
  double min_slack = 0;
  for (const BoundReport& r : reports) {
    if (r.status == ReportStatus::Violated) ++violations;
    if (r.status != ReportStatus::Trivial) {
      if (!have_slack || r.slack < min_slack) min_slack = r.slack;
      have_slack = true;
    }
  }

  if (cfg.format == "json") {
    Json rows = Json::array();
    for (const BoundReport& r : reports) rows.push_back(r.to_json());
    Json out{{"suite", cfg.suite},
             {"seed", cfg.seed},
             {"tolerance", cfg.tol},
             {"reports", rows},
             {"all_hold", violations == 0},
             {"violations", violations}};
    if (have_slack) out["min_slack"] = min_slack;
    std::printf("%s\n", out.dump().c_str());
  } else if (cfg.format == "csv") {
    std::printf("name,lhs,rhs,slack,tolerance,status,detail\n");
    for (const BoundReport& r : reports)
      std::printf("%s,%s,%s,%s,%s,%s,%s\n", csv_quote(r.name).c_str(),
                  fmt(r.lhs).c_str(), fmt(r.rhs).c_str(), fmt(r.slack).c_str(),
                  fmt(r.tolerance).c_str(),
                  capkit::report_status_name(r.status),
                  csv_quote(r.detail).c_str());
  } else {
    for (const BoundReport& r : reports) {
      std::printf("[%-8s] %-34s lhs=%s rhs=%s slack=%s (tol %g)%s%s\n",
                  capkit::report_status_name(r.status), r.name.c_str(),
                  fmt_sci(r.lhs).c_str(), fmt_sci(r.rhs).c_str(),
                  fmt_sci(r.slack).c_str(), r.tolerance,
                  r.detail.empty() ? "" : "  # ",
                  r.detail.c_str());
    }
    std::printf("suite %s: %zu reports, %d violated", cfg.suite.c_str(),
                reports.size(), violations);
    if (have_slack) std::printf(", min slack %s", fmt_sci(min_slack).c_str());
    std::printf("\n");
  }

  if (cfg.suite != "conjecture" && violations > 0) return kExitViolated;
  return kExitOk;
}

// ---- experiment ------------------------------------------------------

struct ExperimentCfg {
  std::string n_spec, d_spec, a_spec, b_spec, k_spec;
  std::uint64_t seed = 1;
  int max_vertices = 16;
};

int cmd_experiment(const ExperimentCfg& cfg) {
  std::printf("m,n,a,b,k,mu_k,csikvari_bound,ratio\n");

  bool any_axis = !cfg.n_spec.empty() || !cfg.d_spec.empty() ||
                  !cfg.a_spec.empty() || !cfg.b_spec.empty();
  if (!any_axis) return kExitOk;  // empty grid

  std::vector<int> ms = parse_int_list(cfg.n_spec);
  std::vector<int> ds = parse_int_list(cfg.d_spec);
  std::vector<int> as = parse_int_list(cfg.a_spec);
  std::vector<int> bs = parse_int_list(cfg.b_spec);
  if (!ds.empty() && (!as.empty() || !bs.empty()))
    throw std::invalid_argument("give either --d or --a/--b, not both");
  if (as.empty() != bs.empty())
    throw std::invalid_argument("--a and --b must be given together");
  if (ds.empty() && as.empty())
    throw std::invalid_argument("grid needs --d or --a/--b");

  std::vector<std::pair<int, int>> degs;
  if (!ds.empty())
    for (int d : ds) degs.emplace_back(d, d);
  else
    for (int a : as)
      for (int b : bs) degs.emplace_back(a, b);

  struct Cell {
    int m, n, a, b;
    std::vector<int> ks;
  };
  std::vector<Cell> cells;
  for (int m : ms)
    for (auto [a, b] : degs) {
      if (m < 1 || a < 1 || b < 1)
        throw std::invalid_argument("grid entries must be >= 1");
      if ((static_cast<long long>(m) * a) % b != 0)
        throw std::invalid_argument(
            "no biregular graph: m*a not divisible by b");
      int n = static_cast<int>(static_cast<long long>(m) * a / b);
      if (a > n || b > m)
        throw std::invalid_argument("degree exceeds the opposite side");
      Cell c{m, n, a, b, {}};
      std::vector<int> ks = parse_int_list(cfg.k_spec);
      if (ks.empty())
        for (int k = 0; k <= std::min(m, n); ++k) ks.push_back(k);
      for (int k : ks)
        if (k < 0 || k > std::min(m, n))
          throw std::invalid_argument("k outside 0..min(m,n)");
      c.ks = std::move(ks);
      cells.push_back(std::move(c));
    }

  int count_budget = std::min(cfg.max_vertices, 20);
  std::vector<std::string> rows(cells.size());
  parallel_for(static_cast<int>(cells.size()), [&](int i) {
    const Cell& c = cells[i];
    std::optional<std::vector<capkit::Int>> counts;
    if (c.m + c.n <= count_budget) {
      std::mt19937_64 rng(capkit::substream(cfg.seed, i));
      capkit::BipartiteGraph g =
          capkit::random_biregular(c.m, c.n, c.a, c.b, rng);
      counts = capkit::all_matching_counts(g);
    }
    std::string block;
    for (int k : c.ks) {
      double bound = capkit::csikvari_bound(c.m, c.n, c.a, c.b, k);
      std::string mu = "NA", ratio = "NA";
      if (counts) {
        capkit::Int v = (*counts)[k];
        mu = v.str();
        ratio = fmt(v.convert_to<double>() / bound);
      }
      block += std::to_string(c.m) + "," + std::to_string(c.n) + "," +
               std::to_string(c.a) + "," + std::to_string(c.b) + "," +
               std::to_string(k) + "," + mu + "," + fmt(bound) + "," + ratio +
               "\n";
    }
    rows[i] = std::move(block);
  });
  for (const std::string& block : rows) std::fputs(block.c_str(), stdout);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"polynomial capacity toolkit"};
  app.require_subcommand(1);

  CapacityCfg cap_cfg;
  auto* cap = app.add_subcommand("capacity",
                                 "capacity of a polynomial at a point alpha");
  cap->add_option("poly", cap_cfg.poly_file, "polynomial JSON file")
      ->required();
  cap->add_option("--alpha", cap_cfg.alpha_spec, "comma-separated exponents")
      ->required();
  cap->add_option("--format", cap_cfg.format, "json, csv, or human")
      ->check(CLI::IsMember({"json", "csv", "human"}));
  cap->add_option("--grad-tol", cap_cfg.grad_tol, "gradient tolerance");
  cap->add_option("--max-iter", cap_cfg.max_iter, "Newton iteration cap");

  SymbolCfg sym_cfg;
  auto* sym = app.add_subcommand("symbol", "symbol of a linear operator");
  sym->add_option("operator", sym_cfg.op_file, "operator JSON file")
      ->required();
  sym->add_option("--order", sym_cfg.order,
                  "truncation order for unbounded operators");
  sym->add_option("--format", sym_cfg.format, "json, csv, or human")
      ->check(CLI::IsMember({"json", "csv", "human"}));

  StabilityCfg stab_cfg;
  auto* stab = app.add_subcommand("stability",
                                  "random-line real-stability test");
  stab->add_option("poly", stab_cfg.poly_file, "polynomial JSON file")
      ->required();
  stab->add_option("--trials", stab_cfg.trials, "number of random lines");
  stab->add_option("--seed", stab_cfg.seed, "RNG seed");
  stab->add_option("--format", stab_cfg.format, "json or human")
      ->check(CLI::IsMember({"json", "human"}));

  VerifyCfg ver_cfg;
  auto* ver = app.add_subcommand("verify", "run a verification suite");
  ver->add_option("suite", ver_cfg.suite,
                  "gurvits, vdw, csikvari, schrijver, innerprod, preserver, "
                  "or conjecture")
      ->required();
  ver->add_option("--seed", ver_cfg.seed, "RNG seed");
  ver->add_option("--tol", ver_cfg.tol, "slack tolerance");
  ver->add_option("--trials", ver_cfg.trials, "instances per configuration");
  ver->add_option("--max-vertices", ver_cfg.max_vertices,
                  "largest graph enumerated exactly");
  ver->add_option("--lambda", ver_cfg.lambda_spec,
                  "degree list, e.g. 2,3 or 2..6");
  ver->add_option("--n", ver_cfg.n_spec, "size list, e.g. 2..5");
  ver->add_option("--d", ver_cfg.d_spec, "degree list for schrijver");
  ver->add_option("--matrix", ver_cfg.matrix,
                  "vdw matrix: uniform, random, or a JSON file");
  ver->add_option("--graph", ver_cfg.graph_file,
                  "csikvari: check one graph JSON file");
  ver->add_option("--format", ver_cfg.format, "json, csv, or human")
      ->check(CLI::IsMember({"json", "csv", "human"}));
  ver->add_flag("--override-stability", ver_cfg.override_stability,
                "admit inputs that fail the stability line test");

  ExperimentCfg exp_cfg;
  auto* exp = app.add_subcommand(
      "experiment", "matching-count vs bound grid, CSV on stdout");
  exp->add_option("--n", exp_cfg.n_spec, "left side sizes");
  exp->add_option("--d", exp_cfg.d_spec, "regular degrees");
  exp->add_option("--a", exp_cfg.a_spec, "left degrees");
  exp->add_option("--b", exp_cfg.b_spec, "right degrees");
  exp->add_option("--k", exp_cfg.k_spec, "matching sizes");
  exp->add_option("--seed", exp_cfg.seed, "RNG seed");
  exp->add_option("--max-vertices", exp_cfg.max_vertices,
                  "largest graph counted exactly; larger cells emit NA");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (cap->parsed()) return cmd_capacity(cap_cfg);
    if (sym->parsed()) return cmd_symbol(sym_cfg);
    if (stab->parsed()) return cmd_stability(stab_cfg);
    if (ver->parsed()) return cmd_verify(ver_cfg);
    if (exp->parsed()) return cmd_experiment(exp_cfg);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitInput;
  }
  return kExitInput;
}
