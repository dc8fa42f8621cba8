// Drives the command-line binary as a subprocess and checks the documented
// surface: flags, file format handling, report schema, seeding and exit
// codes. Invoked as: cli_driver <path-to-hyperrel-binary>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <regex>
#include <string>

#include "hyperrel/hyperrel.hpp"

namespace {

struct CommandResult {
  int exit_code = -1;
  std::string out;
};

CommandResult run(const std::string& command) {
  CommandResult result;
  FILE* pipe = popen((command + " 2>/dev/null").c_str(), "r");
  if (!pipe) throw std::runtime_error("popen failed");
  char buffer[4096];
  while (std::size_t got = fread(buffer, 1, sizeof(buffer), pipe)) result.out.append(buffer, got);
  int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::string strip_elapsed(std::string json) {
  static const std::regex elapsed("\"elapsed_ms\":[-+0-9.eE]+");
  return std::regex_replace(json, elapsed, "\"elapsed_ms\":0");
}

int failures = 0;

void check(const std::string& name, bool ok) {
  std::cout << (ok ? "[ok]   " : "[FAIL] ") << name << "\n";
  if (!ok) ++failures;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: cli_driver <hyperrel binary>\n";
    return 2;
  }
  const std::string cli = argv[1];

  {
    auto r = run(cli + " exact --gen complete-graph:3 --p 0.5 --json");
    bool ok = r.exit_code == 0;
    if (ok) {
      auto report = hyperrel::run_report_from_json(r.out);
      ok = std::abs(report.estimate - 0.5) < 1e-12 && report.algorithm == "exact" &&
           report.p == 0.5;
    }
    check("exact on the triangle reports 0.5", ok);
  }

  {
    auto a = run(cli + " alg1 --gen complete-graph:3 --p 0.5 --eps 0.1 --seed 7 --profile desk --json");
    auto b = run(cli + " alg1 --gen complete-graph:3 --p 0.5 --eps 0.1 --seed 7 --profile desk --json");
    bool ok = a.exit_code == 0 && b.exit_code == 0 &&
              strip_elapsed(a.out) == strip_elapsed(b.out);
    check("repeated amplified runs are byte-identical except elapsed time", ok);
  }

  {
    std::string path = "cli_driver_tmp.hgr";
    std::ofstream(path) << "3 4\n1 2\n2 3\n3 4\n";
    auto r = run(cli + " mc --input " + path + " --p 0 --trials 200 --json");
    bool ok = r.exit_code == 0 && hyperrel::run_report_from_json(r.out).estimate == 0.0;
    check("mc at p = 0 on a connected file instance reports 0", ok);
    std::remove(path.c_str());
  }

  {
    auto r = run(cli + " gen --gen sunflower:5 --seed 3");
    bool ok = r.exit_code == 0;
    if (ok) {
      hyperrel::Hypergraph g = hyperrel::parse_hypergraph(r.out);
      ok = g.num_vertices() == 5 && g.num_edges() == 5 && hyperrel::min_cut_value(g) == 4;
    }
    check("gen emits a parseable sunflower", ok);
  }

  {
    auto r = run(cli + " alg2 --gen sunflower:5 --p 0.2 --delta 0.001 --seed 5 --json");
    bool ok = r.exit_code == 0;
    if (ok) {
      auto report = hyperrel::run_report_from_json(r.out);
      hyperrel::Hypergraph sun =
          hyperrel::generate(hyperrel::parse_instance_spec("sunflower:5"), 5);
      ok = report.delta.has_value() && *report.delta == 0.001 &&
           std::abs(report.estimate - hyperrel::exact_unreliability(sun, 0.2)) < 1e-12;
    }
    check("alg2 report carries delta and the small-instance exact value", ok);
  }

  {
    setenv("HYPERREL_SEED", "998877", 1);
    auto r = run(cli + " mc --gen complete-graph:4 --p 0.3 --trials 100 --seed 1 --json");
    unsetenv("HYPERREL_SEED");
    bool ok = r.exit_code == 0 && hyperrel::run_report_from_json(r.out).seed == 998877ull;
    check("HYPERREL_SEED overrides --seed", ok);
  }

  {
    auto r = run(cli + " alg1 --gen complete-graph:3");
    check("missing --p is a usage error (exit 1)", r.exit_code == 1);
    r = run(cli + " mc --p 0.5 --trials 10");
    check("missing instance is a usage error (exit 1)", r.exit_code == 1);
    r = run(cli + " exact --gen complete-graph:8 --p 0.3");
    check("oversized exact request is an estimation error (exit 2)", r.exit_code == 2);
    std::string path = "cli_driver_bad.hgr";
    std::ofstream(path) << "1 2\n1 1\n";
    r = run(cli + " exact --input " + path + " --p 0.3");
    check("malformed input file is rejected (exit 1)", r.exit_code == 1);
    std::remove(path.c_str());
  }

  {
    auto r = run(cli + " alg2 --gen sunflower:4 --p 1.5 --delta 0.001");
    check("p outside (0,1) is rejected for estimators", r.exit_code == 1);
  }

  {
    std::string report_path = "cli_driver_report.json";
    auto r = run(cli + " exact --gen complete-graph:4 --p 0.4 --json --out " + report_path);
    bool ok = r.exit_code == 0 && r.out.empty();
    if (ok) {
      std::ifstream in(report_path);
      std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
      auto report = hyperrel::run_report_from_json(content);
      ok = report.algorithm == "exact" && report.p == 0.4;
    }
    check("--out redirects the report to a file", ok);
    std::remove(report_path.c_str());

    std::string inst_path = "cli_driver_gen.hgr";
    r = run(cli + " gen --gen complete-graph:4 --out " + inst_path);
    ok = r.exit_code == 0;
    if (ok) {
      std::ifstream in(inst_path);
      std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
      ok = hyperrel::parse_hypergraph(content).num_edges() == 6;
    }
    check("gen --out writes a parseable instance", ok);
    std::remove(inst_path.c_str());
  }

  std::cout << (failures == 0 ? "cli surface checks passed\n" : "cli surface checks FAILED\n");
  return failures == 0 ? 0 : 1;
}
