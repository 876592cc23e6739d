#include "tridet/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <set>
#include <thread>

#include <json.hpp>

#include "tridet/baselines.hpp"
#include "tridet/error.hpp"
#include "tridet/rng.hpp"

namespace tridet {

namespace {

const std::map<std::string, ModelParams, std::less<>>& model_defaults() {
  static const std::map<std::string, ModelParams, std::less<>> table = {
      {"er", {{"n", 1000}, {"mean_k", 16}}},
      {"ba", {{"n", 1000}, {"m", 4}}},
      {"ws", {{"n", 500}, {"k", 10}, {"p", 0.5}}},
      {"ng", {{"n", 256}, {"communities", 4}, {"mean_k", 16}, {"k_out", 0}, {"k_out_fraction", NAN}}},
      {"lfr",
       {{"n", 1000},
        {"mean_k", 20},
        {"k_max", 50},
        {"gamma", 2},
        {"gamma_c", 1},
        {"min_community", 20},
        {"max_community", 100},
        {"mu", 0.1}}},
  };
  return table;
}

std::uint64_t as_count(const ModelParams& p, const std::string& name) {
  const double v = p.at(name);
  if (!(v >= 0.0) || v != std::floor(v) || v > 9.0e15)
    throw InvalidArgument("parameter '" + name + "' must be a non-negative integer");
  return static_cast<std::uint64_t>(v);
}

}  // namespace

ModelParams default_params(std::string_view model) {
  auto it = model_defaults().find(model);
  if (it == model_defaults().end()) throw InvalidArgument("unknown model '" + std::string(model) + "'");
  return it->second;
}

Generated generate(std::string_view model, const ModelParams& overrides, std::uint64_t seed) {
  ModelParams p = default_params(model);
  for (const auto& [name, value] : overrides) {
    if (!p.contains(name))
      throw InvalidArgument("model '" + std::string(model) + "' has no parameter '" + name + "'");
    p[name] = value;
  }

  Generated out;
  if (model == "er") {
    out.graph = gen_er(as_count(p, "n"), p.at("mean_k"), seed);
  } else if (model == "ba") {
    out.graph = gen_ba(as_count(p, "n"), as_count(p, "m"), seed);
  } else if (model == "ws") {
    out.graph = gen_ws(as_count(p, "n"), as_count(p, "k"), p.at("p"), seed);
  } else if (model == "ng") {
    NgSpec spec;
    spec.n = as_count(p, "n");
    spec.communities = static_cast<std::uint32_t>(as_count(p, "communities"));
    spec.mean_k = p.at("mean_k");
    spec.k_out = std::isnan(p.at("k_out_fraction")) ? p.at("k_out") : p.at("k_out_fraction") * spec.mean_k;
    spec.seed = seed;
    return gen_ng(spec);
  } else {
    LfrSpec spec;
    spec.n = as_count(p, "n");
    spec.mean_k = p.at("mean_k");
    spec.k_max = as_count(p, "k_max");
    spec.gamma = p.at("gamma");
    spec.gamma_c = p.at("gamma_c");
    spec.min_community = as_count(p, "min_community");
    spec.max_community = as_count(p, "max_community");
    spec.mu = p.at("mu");
    spec.seed = seed;
    return gen_lfr_like(spec);
  }
  out.report.model = std::string(model);
  out.report.seed = seed;
  if (out.graph.node_count() > 0) out.report.stats = degree_stats(out.graph);
  return out;
}

SweepSpec parse_sweep_spec(std::string_view json_text) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(0, std::string("sweep spec is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw InvalidArgument("sweep spec must be a JSON object");

  static const std::set<std::string> known = {"model", "parameter", "grid", "replicates", "seed", "fixed",
                                              "lambda1", "bulk_third_moment", "n_isolated", "threads"};
  for (const auto& [key, _] : doc.items())
    if (!known.contains(key)) throw InvalidArgument("unknown sweep spec field '" + key + "'");

  SweepSpec spec;
  try {
    spec.model = doc.at("model").get<std::string>();
    default_params(spec.model);
    spec.parameter = doc.value("parameter", std::string{});
    if (doc.contains("grid")) spec.grid = doc.at("grid").get<std::vector<double>>();
    spec.replicates = doc.value("replicates", std::uint64_t{100});
    spec.base_seed = doc.value("seed", std::uint64_t{0});
    if (doc.contains("fixed")) spec.fixed = doc.at("fixed").get<std::map<std::string, double>>();
    const std::string lambda1 = doc.value("lambda1", std::string{"chung"});
    if (lambda1 == "exact")
      spec.options.lambda1 = Lambda1Source::PowerIteration;
    else if (lambda1 != "chung")
      throw InvalidArgument("lambda1 must be 'chung' or 'exact'");
    spec.bulk_third_moment = doc.value("bulk_third_moment", false);
    spec.n_isolated = doc.value("n_isolated", std::size_t{1});
    spec.threads = doc.value("threads", 1u);
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("malformed sweep spec: ") + e.what());
  }

  if (spec.parameter.empty()) {
    if (!spec.grid.empty()) throw InvalidArgument("grid given without a parameter name");
    spec.grid = {0.0};
  } else {
    if (spec.grid.empty()) throw InvalidArgument("sweep grid must be non-empty");
    if (!default_params(spec.model).contains(spec.parameter))
      throw InvalidArgument("model '" + spec.model + "' has no parameter '" + spec.parameter + "'");
  }
  if (spec.replicates < 1) throw InvalidArgument("replicates must be at least 1");
  if (spec.threads < 1) spec.threads = 1;
  return spec;
}

std::uint64_t row_seed(std::uint64_t base_seed, std::uint64_t point, std::uint64_t replicate) {
  return derive_seed(base_seed, point, replicate);
}

namespace {

SweepRow run_one(const SweepSpec& spec, std::size_t point, std::uint64_t replicate) {
  SweepRow row;
  row.model = spec.model;
  row.parameter = spec.parameter;
  row.parameter_value = spec.parameter.empty() ? 0.0 : spec.grid[point];
  row.replicate = replicate;
  row.seed = row_seed(spec.base_seed, point, replicate);
  try {
    ModelParams params = spec.fixed;
    if (!spec.parameter.empty()) params[spec.parameter] = spec.grid[point];
    const Generated gen = generate(spec.model, params, row.seed);
    const Graph& g = gen.graph;
    const DegreeStats stats = degree_stats(g);
    row.n = stats.n;
    row.e = stats.e;
    row.mean_k = stats.mean_k;
    row.mean_k2 = stats.mean_k2;
    row.k_max = stats.k_max;

    AssessmentOptions opts = spec.options;
    if (spec.model == "ba") opts.ba_m = static_cast<std::uint64_t>(params.contains("m") ? params.at("m") : 4);
    const Assessment a = assess(g, opts);
    row.triangles = a.total_triangles;
    row.gcc = a.verdict.gcc;
    row.c_uc = a.verdict.c_uc;
    row.bound_eq11 = a.verdict.bound_eq11;
    row.lambda1_chung = a.baselines.lambda1_chung;
    row.lambda1_exact = a.baselines.lambda1_exact;
    if (spec.bulk_third_moment) row.bulk_third_moment = bulk_third_moment(g, spec.n_isolated);
    row.verdict = std::string(to_string(a.verdict.classification));
    const auto& as = a.assumptions;
    if (as.bipartite) row.warnings.emplace_back("bipartite");
    if (as.assumption3_holds == false) row.warnings.emplace_back("assumption3_violated");
    if (as.band_inverted) row.warnings.emplace_back("band_inverted");
    if (as.small_n_warning) row.warnings.emplace_back("small_n");
    if (as.density_warning) row.warnings.emplace_back("dense");
  } catch (const std::exception& e) {
    row.verdict = "error";
    std::string msg = e.what();
    std::replace(msg.begin(), msg.end(), ';', ',');  // ';' separates warnings
    row.warnings.push_back(std::move(msg));
  }
  return row;
}

}  // namespace

std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
  if (spec.grid.empty()) throw InvalidArgument("sweep grid must be non-empty");
  if (spec.replicates < 1) throw InvalidArgument("replicates must be at least 1");
  const std::size_t total = spec.grid.size() * spec.replicates;
  std::vector<SweepRow> rows(total);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < total; i = next++)
      rows[i] = run_one(spec, i / spec.replicates, i % spec.replicates);
  };
  const unsigned threads = std::max(1u, std::min<unsigned>(spec.threads, static_cast<unsigned>(total)));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return rows;
}

}  // namespace tridet
