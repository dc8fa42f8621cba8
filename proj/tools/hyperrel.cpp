// Command-line front end for the hypergraph unreliability estimators.
//
// Subcommands:
//   exact     exact disconnection probability on small instances
//   mc        plain Monte Carlo sampling
//   alg1      recursive contraction with large-edge enumeration
//   alg2      recursive contraction with conditioned DNF sampling
//   gen       emit a generated instance in the text format
//   selftest  run the built-in invariant suite
//
// Exit codes: 0 success, 1 usage or input error, 2 estimation error.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "hyperrel/hyperrel.hpp"

namespace {

using namespace hyperrel;

struct CommonOpts {
  std::string input_path;
  std::string gen_spec;
  double p = 0.5;
  std::uint64_t seed = 1;
  std::string profile = "desk";
  bool json = false;
  std::string out_path;
};

void add_instance_opts(CLI::App* cmd, CommonOpts& opts) {
  auto* input = cmd->add_option("--input", opts.input_path, "instance file in the text format");
  auto* gen = cmd->add_option("--gen", opts.gen_spec,
                              "generator spec, e.g. complete-graph:4 or planted-cut:10,4,12,3");
  input->excludes(gen);
}

void add_run_opts(CLI::App* cmd, CommonOpts& opts, bool with_profile = true) {
  cmd->add_option("--seed", opts.seed, "random seed (HYPERREL_SEED overrides)");
  if (with_profile)
    cmd->add_option("--profile", opts.profile, "constant profile: paper or desk")
        ->check(CLI::IsMember({"paper", "desk"}));
  cmd->add_flag("--json", opts.json, "emit the run report as JSON");
  cmd->add_option("--out", opts.out_path, "write the report to a file instead of stdout");
}

Hypergraph load_instance(const CommonOpts& opts) {
  if (!opts.input_path.empty()) {
    std::ifstream in(opts.input_path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open input file '" + opts.input_path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_hypergraph(buf.str());
  }
  if (!opts.gen_spec.empty()) {
    InstanceSpec spec = parse_instance_spec(opts.gen_spec);
    if (spec.kind == InstanceSpec::Kind::FromFile) {
      CommonOpts redirected = opts;
      redirected.input_path = spec.path;
      redirected.gen_spec.clear();
      return load_instance(redirected);
    }
    return generate(spec, opts.seed);
  }
  throw std::invalid_argument("provide an instance via --input FILE or --gen SPEC");
}

void apply_seed_override(CommonOpts& opts) {
  const char* env = std::getenv("HYPERREL_SEED");
  if (!env || !*env) return;
  char* end = nullptr;
  unsigned long long value = std::strtoull(env, &end, 10);
  if (end == env || *end != '\0')
    throw std::invalid_argument("HYPERREL_SEED must be an unsigned integer");
  opts.seed = value;
}

void emit_report(const RunReport& report, const CommonOpts& opts) {
  std::string text;
  if (opts.json) {
    text = to_json(report) + "\n";
  } else {
    std::ostringstream human;
    human << "algorithm:       " << report.algorithm << "\n"
          << "estimate:        " << report.estimate << "\n"
          << "p:               " << report.p << "\n";
    if (report.delta) human << "delta:           " << *report.delta << "\n";
    if (report.epsilon) human << "epsilon:         " << *report.epsilon << "\n";
    human << "seed:            " << report.seed << "\n"
          << "profile:         " << report.profile << "\n"
          << "elapsed_ms:      " << report.elapsed_ms << "\n"
          << "recursion_calls: " << report.recursion_calls << "\n"
          << "samples_used:    " << report.samples_used << "\n";
    text = human.str();
  }
  if (opts.out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(opts.out_path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot open output file '" + opts.out_path + "'");
    out << text;
  }
}

struct Amplifier {
  std::optional<double> eps;
  std::uint32_t groups = 9;

  /// Total sample budget eta / eps^2 split over the groups, with eta the
  /// nominal relative variance bound of a single run.
  std::uint64_t group_size(double eta) const {
    double total = 6.0 * eta / (*eps * *eps);
    return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::ceil(total / groups)));
  }
};

int run_estimator(const std::string& name, const CommonOpts& opts, const Amplifier& amp,
                  std::optional<double> delta, std::uint64_t mc_trials) {
  Hypergraph g = load_instance(opts);
  RunReport report;
  report.algorithm = name;
  report.p = opts.p;
  report.delta = delta;
  report.epsilon = amp.eps;
  report.seed = opts.seed;
  report.profile = name == "exact" || name == "mc" ? "none" : opts.profile;

  Alg1Profile prof1 = opts.profile == "paper" ? Alg1Profile::paper() : Alg1Profile::desk();
  Alg2Profile prof2 = opts.profile == "paper" ? Alg2Profile::paper() : Alg2Profile::desk();

  auto started = std::chrono::steady_clock::now();

  auto single = [&](std::uint64_t seed) -> EstimatorRun {
    if (name == "mc") return monte_carlo_unreliability(g, opts.p, mc_trials, seed);
    if (name == "alg1") return estimate_alg1(g, opts.p, prof1, seed);
    return estimate_alg2(g, opts.p, *delta, prof2, seed);
  };

  if (name == "exact") {
    report.estimate = exact_unreliability(g, opts.p);
    report.samples_used = 1;
  } else if (!amp.eps || name == "mc") {
    EstimatorRun run = single(opts.seed);
    report.estimate = run.estimate;
    report.samples_used = run.samples_used;
    report.recursion_calls = run.recursion_calls;
  } else {
    const double eta_nominal = name == "alg1" ? 1.0 : 3.0;
    const std::uint64_t group_size = amp.group_size(eta_nominal);
    std::uint64_t samples = 0, calls = 0;
    auto source = [&](Rng& rng) {
      EstimatorRun run = single(rng());
      samples += run.samples_used;
      calls += run.recursion_calls;
      return run.estimate;
    };
    report.estimate = median_of_means(source, amp.groups, group_size, opts.seed);
    report.samples_used = samples;
    report.recursion_calls = calls;
  }

  report.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started)
          .count();
  emit_report(report, opts);
  return 0;
}

// ---------------------------------------------------------------------------
// selftest: one compact check per module-level invariant.

struct SelfTest {
  int failures = 0;

  void check(const std::string& name, bool ok) {
    std::cout << (ok ? "[ok]   " : "[FAIL] ") << name << "\n";
    if (!ok) ++failures;
  }
};

// Small random connected instances for the selftest.
Hypergraph testinstance(std::uint32_t n, Rng& rng) {
  std::vector<Hypergraph::Edge> edges;
  for (std::uint32_t v = 1; v < n; ++v) {
    std::uint32_t parent = static_cast<std::uint32_t>(uniform01(rng) * v);
    edges.push_back({parent, v});
  }
  std::size_t extra = 2 + static_cast<std::size_t>(uniform01(rng) * 4);
  for (std::size_t i = 0; i < extra; ++i) {
    std::uint32_t a = static_cast<std::uint32_t>(uniform01(rng) * n);
    std::uint32_t b = static_cast<std::uint32_t>(uniform01(rng) * n);
    if (a == b) continue;
    edges.push_back({std::min(a, b), std::max(a, b)});
  }
  return Hypergraph(n, std::move(edges));
}

Hypergraph largeinstance(std::uint32_t n, Rng& rng) {
  Hypergraph base = testinstance(n, rng);
  std::vector<Hypergraph::Edge> edges = base.edges();
  Hypergraph::Edge big;
  for (std::uint32_t v = 0; v <= n / 2; ++v) big.push_back(v);
  edges.push_back(std::move(big));
  return Hypergraph(n, std::move(edges));
}

int run_selftest() {
  SelfTest st;
  Rng rng = make_rng(20250809);

  {
    bool ok = true;
    for (int i = 0; i < 120 && ok; ++i) {
      std::uint32_t n = 2 + static_cast<std::uint32_t>(uniform01(rng) * 8);
      auto g = testinstance(n, rng);
      ok = min_cut_value(g) == brute_force_min_cut(g);
    }
    st.check("minimum cut matches brute force", ok);
  }
  {
    bool ok = true;
    for (int i = 0; i < 60 && ok; ++i) {
      auto g = testinstance(6, rng);
      std::uint32_t lambda = min_cut_value(g);
      std::vector<std::uint32_t> f;
      for (std::uint32_t e = 0; e < g.num_edges(); ++e)
        if (bernoulli(rng, 0.3)) f.push_back(e);
      ContractionResult cr = contract(g, f);
      if (cr.graph.num_vertices() >= 2) ok = min_cut_value(cr.graph) >= lambda;
    }
    st.check("contraction never lowers the minimum cut", ok);
  }
  {
    Hypergraph single(2, {{0, 1}});
    Hypergraph path(3, {{0, 1}, {1, 2}});
    Hypergraph tri(3, {{0, 1}, {1, 2}, {0, 2}});
    bool ok = std::abs(exact_unreliability(single, 0.3) - 0.3) < 1e-12 &&
              std::abs(exact_unreliability(path, 0.5) - 0.75) < 1e-12 &&
              std::abs(exact_unreliability(tri, 0.5) - 0.5) < 1e-12;
    st.check("exact oracle closed forms", ok);
  }
  {
    bool ok = true;
    for (int i = 0; i < 100 && ok; ++i) {
      auto g = testinstance(7, rng);
      std::uint32_t lambda = min_cut_value(g);
      for (double p : {0.1, 0.4}) {
        double u = exact_unreliability(g, p);
        double low = std::pow(p, lambda);
        ok = ok && u >= low - 1e-12 && u <= g.num_vertices() * g.num_vertices() * low + 1e-12;
      }
    }
    st.check("disconnection probability sandwich", ok);
  }
  {
    Hypergraph tri(3, {{0, 1}, {1, 2}, {0, 2}});
    double target = exact_unreliability(tri, 0.2);
    double sum = 0.0;
    const int draws = 40000;
    for (int i = 0; i < draws; ++i)
      sum += exact_unreliability(random_contract(tri, 0.5, rng).graph, 0.4);
    st.check("one contraction level is unbiased", std::abs(sum / draws - target) < 0.01);
  }
  {
    DnfFormula f;
    f.num_vars = 2;
    f.clauses = {{{0}, {}}, {{1}, {}}};
    double exact = exact_dnf_probability(f, 0.3);
    double sum = 0.0;
    const int shots = 30000;
    for (int i = 0; i < shots; ++i) sum += klm_unbiased_estimate(f, 0.3, 1, rng);
    st.check("single-shot DNF estimator is unbiased",
             std::abs(exact - 0.51) < 1e-12 && std::abs(sum / shots - exact) < 0.01);
  }
  {
    bool ok = true;
    for (int i = 0; i < 10 && ok; ++i) {
      auto g = largeinstance(6 + i % 3, rng);
      double p = 0.3;
      auto branches = large_edge_split(g, p);
      double combined = 0.0, weights = 0.0;
      for (const auto& b : branches) {
        combined += b.weight * exact_unreliability(b.graph, p);
        weights += b.weight;
      }
      ok = std::abs(weights - 1.0) < 1e-12 &&
           std::abs(combined - exact_unreliability(g, p)) < 1e-10;
    }
    st.check("large-edge decomposition identity", ok);
  }
  {
    Alg1Profile desk = Alg1Profile::desk();
    auto source = [&](Rng& r) {
      return estimate_alg1(Hypergraph(3, {{0, 1}, {1, 2}, {0, 2}}), 0.5, desk, r()).estimate;
    };
    double est = median_of_means(source, 9, 100, 7);
    st.check("amplified alg1 hits the triangle value", std::abs(est - 0.5) <= 0.05);
  }
  {
    Alg2Profile desk = Alg2Profile::desk();
    desk.reps_cap = 512;
    Hypergraph sun = generate(parse_instance_spec("sunflower:9"), 0);
    double target = exact_unreliability(sun, 0.45);
    auto source = [&](Rng& r) { return estimate_alg2(sun, 0.45, 1e-3, desk, r()).estimate; };
    double est = median_of_means(source, 9, 60, 8);
    st.check("amplified alg2 hits the sunflower value",
             std::abs(est - target) <= 0.15 * target + 1e-3);
  }
  {
    Hypergraph g(9, {{0, 1, 2, 3, 4}, {4, 5, 6, 7, 8}, {0, 8}, {1, 7}, {2, 6}, {3, 5}});
    EstimatorRun a = estimate_alg2(g, 0.2, 1e-3, Alg2Profile::desk(), 99);
    EstimatorRun b = estimate_alg2(g, 0.2, 1e-3, Alg2Profile::desk(), 99);
    EstimatorRun c = estimate_alg1(g, 0.2, Alg1Profile::desk(), 99);
    EstimatorRun d = estimate_alg1(g, 0.2, Alg1Profile::desk(), 99);
    st.check("fixed seeds reproduce estimates exactly",
             a.estimate == b.estimate && c.estimate == d.estimate);
  }
  {
    auto g = testinstance(8, rng);
    std::string text = serialize_hypergraph(g);
    st.check("serialize/parse round trip", parse_hypergraph(text) == g);
  }

  std::cout << (st.failures == 0 ? "selftest passed" : "selftest FAILED") << "\n";
  return st.failures == 0 ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hypergraph unreliability estimators"};
  app.require_subcommand(1);

  CommonOpts opts;
  Amplifier amp;
  double delta = 1e-3;
  std::uint64_t trials = 100000;

  auto* exact_cmd = app.add_subcommand("exact", "exact value on small instances");
  add_instance_opts(exact_cmd, opts);
  exact_cmd->add_option("--p", opts.p, "edge failure probability")->required();
  add_run_opts(exact_cmd, opts, false);

  auto* mc_cmd = app.add_subcommand("mc", "plain Monte Carlo estimate");
  add_instance_opts(mc_cmd, opts);
  mc_cmd->add_option("--p", opts.p, "edge failure probability")->required();
  mc_cmd->add_option("--trials", trials, "number of Monte Carlo trials");
  add_run_opts(mc_cmd, opts, false);

  auto* alg1_cmd = app.add_subcommand("alg1", "contraction + large-edge enumeration estimator");
  add_instance_opts(alg1_cmd, opts);
  alg1_cmd->add_option("--p", opts.p, "edge failure probability")->required();
  double eps_value = 0.0;
  auto* eps1 = alg1_cmd->add_option("--eps", eps_value, "amplify to a (1 +/- eps) answer")
                   ->check(CLI::PositiveNumber);
  add_run_opts(alg1_cmd, opts);

  auto* alg2_cmd = app.add_subcommand("alg2", "contraction + conditioned DNF sampling estimator");
  add_instance_opts(alg2_cmd, opts);
  alg2_cmd->add_option("--p", opts.p, "edge failure probability")->required();
  alg2_cmd->add_option("--delta", delta, "additive error budget");
  auto* eps2 = alg2_cmd->add_option("--eps", eps_value, "amplify to a (1 +/- eps, delta) answer")
                   ->check(CLI::PositiveNumber);
  add_run_opts(alg2_cmd, opts);

  auto* gen_cmd = app.add_subcommand("gen", "emit a generated instance");
  gen_cmd->add_option("--gen", opts.gen_spec, "generator spec")->required();
  gen_cmd->add_option("--seed", opts.seed, "generator seed (HYPERREL_SEED overrides)");
  gen_cmd->add_option("--out", opts.out_path, "write to a file instead of stdout");

  auto* selftest_cmd = app.add_subcommand("selftest", "run the built-in invariant suite");
  (void)selftest_cmd;

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    apply_seed_override(opts);
    if (*eps1 || *eps2) amp.eps = eps_value;

    if (exact_cmd->parsed()) return run_estimator("exact", opts, amp, std::nullopt, 0);
    if (mc_cmd->parsed()) return run_estimator("mc", opts, amp, std::nullopt, trials);
    if (alg1_cmd->parsed()) return run_estimator("alg1", opts, amp, std::nullopt, 0);
    if (alg2_cmd->parsed()) return run_estimator("alg2", opts, amp, delta, 0);
    if (gen_cmd->parsed()) {
      InstanceSpec spec = parse_instance_spec(opts.gen_spec);
      std::string text = serialize_hypergraph(generate(spec, opts.seed));
      if (opts.out_path.empty()) {
        std::cout << text;
      } else {
        std::ofstream out(opts.out_path, std::ios::binary);
        if (!out) throw std::invalid_argument("cannot open output file '" + opts.out_path + "'");
        out << text;
      }
      return 0;
    }
    return run_selftest();
  } catch (const hyperrel::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const hyperrel::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
