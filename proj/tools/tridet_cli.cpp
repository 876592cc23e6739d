// Command-line front end. Talks to the library only through the C API.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "tridet/tridet.h"

namespace {

constexpr int kExitErrorBase = 2;  // error exit codes are 2 + tdt_status (>= 3)

int report_failure(tdt_status status) {
  std::cerr << "tridet: " << tdt_status_name(status) << ": " << tdt_last_error() << '\n';
  return kExitErrorBase + static_cast<int>(status);
}

struct GraphHandle {
  tdt_graph* ptr = nullptr;
  ~GraphHandle() { tdt_graph_free(ptr); }
};

struct OwnedString {
  char* ptr = nullptr;
  ~OwnedString() { tdt_string_free(ptr); }
};

const char* classification_name(tdt_classification c) {
  switch (c) {
    case TDT_DETECTABLE: return "Detectable";
    case TDT_INDETERMINATE: return "Indeterminate";
    default: return "Undetectable";
  }
}

int run_assess(const std::string& path, const std::string& lambda1, bool json, int64_t nodes, unsigned workers) {
  GraphHandle g;
  if (auto st = tdt_graph_read_edge_list(path.c_str(), nodes, &g.ptr); st != TDT_OK) return report_failure(st);
  tdt_assess_options opts;
  tdt_assess_options_default(&opts);
  opts.lambda1 = lambda1 == "exact" ? TDT_LAMBDA1_POWER_ITERATION : TDT_LAMBDA1_CHUNG;
  opts.workers = workers;
  tdt_verdict verdict{};
  OwnedString doc;
  if (auto st = tdt_assess(g.ptr, &opts, &verdict, &doc.ptr); st != TDT_OK) return report_failure(st);

  if (json) {
    std::cout << doc.ptr << '\n';
  } else {
    tdt_graph_info info{};
    tdt_graph_get_info(g.ptr, &info);
    std::printf("nodes           %llu\n", static_cast<unsigned long long>(info.nodes));
    std::printf("edges           %llu\n", static_cast<unsigned long long>(info.edges));
    if (info.self_loops_dropped || info.duplicates_dropped)
      std::printf("dropped         %llu self-loops, %llu duplicates\n",
                  static_cast<unsigned long long>(info.self_loops_dropped),
                  static_cast<unsigned long long>(info.duplicates_dropped));
    std::printf("gcc             %.10g\n", verdict.gcc);
    std::printf("c_uc            %.10g\n", verdict.c_uc);
    std::printf("bound           %.10g  (lambda1 = %.6g, %s)\n", verdict.bound, verdict.lambda1_used,
                verdict.lambda1_source == TDT_LAMBDA1_POWER_ITERATION ? "power iteration" : "chung");
    std::printf("verdict         %s\n", classification_name(verdict.classification));
  }
  switch (verdict.classification) {
    case TDT_DETECTABLE: return 0;
    case TDT_INDETERMINATE: return 1;
    default: return 2;
  }
}

int run_gen(const std::string& model, const std::map<std::string, std::optional<double>>& flags, uint64_t seed,
            const std::string& out_path) {
  tdt_gen_params* params = nullptr;
  if (auto st = tdt_gen_params_create(model.c_str(), &params); st != TDT_OK) return report_failure(st);
  for (const auto& [name, value] : flags) {
    if (!value) continue;
    if (auto st = tdt_gen_params_set(params, name.c_str(), *value); st != TDT_OK) {
      tdt_gen_params_free(params);
      return report_failure(st);
    }
  }
  GraphHandle g;
  tdt_gen_report* report = nullptr;
  auto st = tdt_generate(params, seed, &g.ptr, &report);
  tdt_gen_params_free(params);
  if (st != TDT_OK) return report_failure(st);

  OwnedString json;
  st = tdt_graph_write_edge_list(g.ptr, out_path.c_str());
  if (st == TDT_OK) st = tdt_gen_report_write_membership(report, (out_path + ".membership").c_str());
  if (st == TDT_OK) st = tdt_gen_report_json(report, &json.ptr);
  tdt_gen_report_free(report);
  if (st != TDT_OK) return report_failure(st);
  std::ofstream rep(out_path + ".report.json");
  rep << json.ptr << '\n';
  if (!rep) {
    std::cerr << "tridet: cannot write " << out_path << ".report.json\n";
    return kExitErrorBase + TDT_E_IO;
  }
  return 0;
}

int run_sweep(const std::string& spec_path, const std::string& out_path, std::string format, unsigned threads) {
  std::ifstream in(spec_path);
  if (!in) {
    std::cerr << "tridet: cannot open " << spec_path << '\n';
    return kExitErrorBase + TDT_E_IO;
  }
  std::stringstream buf;
  buf << in.rdbuf();
  if (format.empty())
    format = out_path.size() >= 5 && out_path.substr(out_path.size() - 5) == ".json" ? "json" : "csv";
  OwnedString rendered;
  if (auto st = tdt_run_sweep(buf.str().c_str(), format.c_str(), threads, &rendered.ptr); st != TDT_OK)
    return report_failure(st);
  std::ofstream out(out_path, std::ios::binary);
  out << rendered.ptr;
  if (!out) {
    std::cerr << "tridet: cannot write " << out_path << '\n';
    return kExitErrorBase + TDT_E_IO;
  }
  return 0;
}

int run_oracle(const std::string& path, size_t dense_cap) {
  GraphHandle g;
  if (auto st = tdt_graph_read_edge_list(path.c_str(), -1, &g.ptr); st != TDT_OK) return report_failure(st);
  tdt_oracle_result r{};
  if (auto st = tdt_spectral_oracle(g.ptr, dense_cap, &r); st != TDT_OK) return report_failure(st);
  std::printf("gcc_triangles   %.17g\n", r.gcc_triangles);
  std::printf("gcc_trace       %.17g\n", r.gcc_trace);
  std::printf("trace_a3        %llu\n", static_cast<unsigned long long>(r.trace_a3));
  std::printf("residual        %.3g\n", r.residual);
  return r.residual <= 1e-10 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Community detectability from triangle counts and degree moments"};
  app.require_subcommand(1);
  app.set_version_flag("--version", tdt_version());

  std::string file, lambda1 = "chung";
  bool json = false;
  int64_t nodes = -1;
  unsigned workers = 1;
  auto* assess = app.add_subcommand("assess", "Assess an edge-list file (exit 0/1/2 = Detectable/Indeterminate/Undetectable)");
  assess->add_option("file", file, "Edge-list file")->required();
  assess->add_option("--lambda1", lambda1, "Largest-eigenvalue source")->check(CLI::IsMember({"chung", "exact"}));
  assess->add_flag("--json", json, "Print the full assessment as JSON");
  assess->add_option("--nodes", nodes, "Total node count, adding isolated nodes beyond the tokens seen");
  assess->add_option("--workers", workers, "Triangle counting threads")->check(CLI::PositiveNumber);

  std::string model, out_path;
  uint64_t seed = 0;
  std::map<std::string, std::optional<double>> gen_flags;
  auto* gen = app.add_subcommand("gen", "Generate a benchmark graph");
  gen->add_option("model", model, "er | ba | ws | ng | lfr")->required()->check(CLI::IsMember({"er", "ba", "ws", "ng", "lfr"}));
  gen->add_option("--seed", seed, "Random seed")->required();
  gen->add_option("-o,--output", out_path, "Edge-list output path")->required();
  const std::pair<const char*, const char*> params[] = {
      {"n", "Number of nodes"},
      {"mean_k", "Mean degree"},
      {"m", "BA edges per new node"},
      {"k", "WS lattice degree"},
      {"p", "WS rewiring probability"},
      {"communities", "NG number of blocks"},
      {"k_out", "NG mean inter-community degree"},
      {"k_out_fraction", "NG k_out / mean_k"},
      {"mu", "LFR mixing parameter"},
      {"k_max", "LFR maximum degree"},
      {"gamma", "LFR degree exponent"},
      {"gamma_c", "LFR community-size exponent"},
      {"min_community", "LFR minimum community size"},
      {"max_community", "LFR maximum community size"},
  };
  for (const auto& [name, help] : params) {
    std::string flag = std::string("--") + name;
    for (auto& c : flag)
      if (c == '_') c = '-';
    gen->add_option(flag, gen_flags[name], help);
  }

  std::string spec_path, sweep_out, format;
  unsigned threads = 0;
  auto* sweep = app.add_subcommand("sweep", "Run an ensemble sweep described by a JSON file");
  sweep->add_option("--spec", spec_path, "Sweep description (JSON)")->required();
  sweep->add_option("-o,--output", sweep_out, "Output path (.csv or .json)")->required();
  sweep->add_option("--format", format, "Force csv or json")->check(CLI::IsMember({"csv", "json"}));
  sweep->add_option("--threads", threads, "Worker threads (overrides the sweep file)");

  std::string oracle_file;
  size_t dense_cap = 0;
  auto* oracle = app.add_subcommand("oracle", "Check triangle-based clustering against trace(A^3)");
  oracle->add_option("file", oracle_file, "Edge-list file")->required();
  oracle->add_option("--dense-cap", dense_cap, "Maximum node count for the dense path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitErrorBase + TDT_E_INVALID_ARGUMENT;
  }

  if (assess->parsed()) return run_assess(file, lambda1, json, nodes, workers);
  if (gen->parsed()) return run_gen(model, gen_flags, seed, out_path);
  if (sweep->parsed()) return run_sweep(spec_path, sweep_out, format, threads);
  if (oracle->parsed()) return run_oracle(oracle_file, dense_cap);
  return kExitErrorBase + TDT_E_INVALID_ARGUMENT;
}
