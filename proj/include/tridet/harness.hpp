#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tridet/generators.hpp"
#include "tridet/verdict.hpp"

namespace tridet {

// Named generator parameters, e.g. {"n": 256, "k_out_fraction": 0.25}.
using ModelParams = std::map<std::string, double>;

// Defaults for "er", "ba", "ws", "ng", "lfr". Throws InvalidArgument for an
// unknown model.
ModelParams default_params(std::string_view model);

// Generates one graph. Unknown parameter names are rejected. For "ng",
// "k_out_fraction" (k_out / mean_k) takes precedence over "k_out".
Generated generate(std::string_view model, const ModelParams& params, std::uint64_t seed);

struct SweepSpec {
  std::string model;
  std::string parameter;  // empty: a single point with the fixed parameters
  std::vector<double> grid;
  std::uint64_t replicates = 100;
  std::uint64_t base_seed = 0;
  ModelParams fixed;
  AssessmentOptions options;
  bool bulk_third_moment = false;
  std::size_t n_isolated = 1;
  unsigned threads = 1;
};

// Reads the JSON sweep description:
// {"model":"ng","parameter":"k_out_fraction","grid":[0,0.25],"replicates":100,
//  "seed":1,"fixed":{"n":256},"lambda1":"chung"|"exact",
//  "bulk_third_moment":false,"n_isolated":1,"threads":1}
SweepSpec parse_sweep_spec(std::string_view json_text);

struct SweepRow {
  std::string model;
  std::string parameter;
  double parameter_value = 0.0;
  std::uint64_t replicate = 0;
  std::uint64_t seed = 0;
  std::optional<std::uint64_t> n, e;
  std::optional<double> mean_k, mean_k2;
  std::optional<std::uint64_t> k_max, triangles;
  std::optional<double> gcc, c_uc, bound_eq11, lambda1_chung;
  std::optional<double> lambda1_exact, bulk_third_moment;
  std::string verdict;  // classification name, or "error"
  std::vector<std::string> warnings;

  bool operator==(const SweepRow&) const = default;
};

// Seed of replicate `replicate` at grid point `point`.
std::uint64_t row_seed(std::uint64_t base_seed, std::uint64_t point, std::uint64_t replicate);

// One row per (grid point, replicate), ordered by grid index then replicate.
// Generation or assessment failures become rows with verdict "error".
std::vector<SweepRow> run_sweep(const SweepSpec& spec);

// Column names in output order.
std::span<const std::string_view> sweep_columns();

void emit_csv(std::span<const SweepRow> rows, std::ostream& out);
void emit_json(std::span<const SweepRow> rows, std::ostream& out);
// `format` is "csv" or "json". Throws IoError when `path` cannot be written.
void emit(std::span<const SweepRow> rows, std::string_view format, const std::string& path);

// Inverse of emit_csv.
std::vector<SweepRow> parse_csv_rows(std::string_view csv);

std::string assessment_to_json(const Assessment& a, const BuildReport* build = nullptr);
std::string gen_report_to_json(const GenReport& r);
void write_membership(const GenReport& r, std::ostream& out);

}  // namespace tridet
