#include "tridet/tridet.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <limits>
#include <memory>
#include <new>
#include <sstream>
#include <string>

#include "tridet/baselines.hpp"
#include "tridet/census.hpp"
#include "tridet/error.hpp"
#include "tridet/generators.hpp"
#include "tridet/graph.hpp"
#include "tridet/harness.hpp"
#include "tridet/verdict.hpp"

struct tdt_graph {
  tridet::Graph graph;
  tridet::BuildReport build;
};

struct tdt_gen_params {
  std::string model;
  tridet::ModelParams values;
};

struct tdt_gen_report {
  tridet::GenReport report;
};

namespace {

thread_local std::string g_last_error;

tdt_status fail(tdt_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

// Runs `body`, mapping library exceptions onto status codes.
template <class F>
tdt_status guarded(F&& body) noexcept {
  try {
    g_last_error.clear();
    body();
    return TDT_OK;
  } catch (const tridet::ParseError& e) {
    return fail(TDT_E_PARSE, e.what());
  } catch (const tridet::IoError& e) {
    return fail(TDT_E_IO, e.what());
  } catch (const tridet::UndefinedError& e) {
    return fail(TDT_E_UNDEFINED, e.what());
  } catch (const tridet::CapacityError& e) {
    return fail(TDT_E_CAPACITY, e.what());
  } catch (const tridet::ConvergenceError& e) {
    return fail(TDT_E_NO_CONVERGENCE, e.what());
  } catch (const tridet::GenerationError& e) {
    return fail(TDT_E_GENERATION, e.what());
  } catch (const tridet::InvalidArgument& e) {
    return fail(TDT_E_INVALID_ARGUMENT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(TDT_E_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(TDT_E_INTERNAL, e.what());
  } catch (...) {
    return fail(TDT_E_INTERNAL, "unknown error");
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw tridet::InvalidArgument(what);
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

std::optional<std::size_t> override_from(int64_t n) {
  if (n < 0) return std::nullopt;
  return static_cast<std::size_t>(n);
}

tridet::AssessmentOptions to_options(const tdt_assess_options* o) {
  tridet::AssessmentOptions opts;
  if (!o) return opts;
  opts.lambda1 = o->lambda1 == TDT_LAMBDA1_POWER_ITERATION ? tridet::Lambda1Source::PowerIteration
                                                            : tridet::Lambda1Source::Chung;
  opts.power.tol = o->power_tol;
  opts.power.max_iter = o->power_max_iter;
  opts.thresholds.small_n = o->small_n_threshold;
  opts.thresholds.density = o->density_threshold;
  opts.workers = o->workers == 0 ? 1 : o->workers;
  return opts;
}

}  // namespace

extern "C" {

const char* tdt_version(void) { return "1.0.0"; }

const char* tdt_last_error(void) { return g_last_error.c_str(); }

const char* tdt_status_name(tdt_status status) {
  switch (status) {
    case TDT_OK: return "ok";
    case TDT_E_INVALID_ARGUMENT: return "invalid argument";
    case TDT_E_PARSE: return "parse error";
    case TDT_E_IO: return "I/O error";
    case TDT_E_UNDEFINED: return "undefined statistic";
    case TDT_E_CAPACITY: return "capacity exceeded";
    case TDT_E_NO_CONVERGENCE: return "no convergence";
    case TDT_E_GENERATION: return "generation failed";
    case TDT_E_INTERNAL: return "internal error";
  }
  return "unknown status";
}

void tdt_string_free(char* s) { std::free(s); }

tdt_status tdt_graph_read_edge_list(const char* path, int64_t node_count_override, tdt_graph** out) {
  return guarded([&] {
    require(path && out, "null argument");
    auto list = tridet::read_edge_list_file(path);
    auto h = std::make_unique<tdt_graph>();
    h->graph = tridet::build_graph(list, &h->build, override_from(node_count_override));
    *out = h.release();
  });
}

tdt_status tdt_graph_parse_edge_list(const char* text, size_t length, int64_t node_count_override,
                                     tdt_graph** out) {
  return guarded([&] {
    require((text || length == 0) && out, "null argument");
    auto list = tridet::parse_edge_list(std::string_view(text ? text : "", length));
    auto h = std::make_unique<tdt_graph>();
    h->graph = tridet::build_graph(list, &h->build, override_from(node_count_override));
    *out = h.release();
  });
}

tdt_status tdt_graph_write_edge_list(const tdt_graph* graph, const char* path) {
  return guarded([&] {
    require(graph && path, "null argument");
    tridet::write_edge_list_file(graph->graph, path);
  });
}

tdt_status tdt_graph_get_info(const tdt_graph* graph, tdt_graph_info* out) {
  return guarded([&] {
    require(graph && out, "null argument");
    out->nodes = graph->graph.node_count();
    out->edges = graph->graph.edge_count();
    out->self_loops_dropped = graph->build.self_loops_dropped;
    out->duplicates_dropped = graph->build.duplicates_dropped;
  });
}

void tdt_graph_free(tdt_graph* graph) { delete graph; }

tdt_status tdt_triangle_census(const tdt_graph* graph, unsigned workers, tdt_census* out) {
  return guarded([&] {
    require(graph && out, "null argument");
    const auto c = tridet::triangle_census(graph->graph, workers == 0 ? 1 : workers);
    out->total_triangles = c.total_triangles;
    out->wedge_count = c.wedge_count;
    out->gcc = c.wedge_count ? tridet::global_clustering(c) : std::numeric_limits<double>::quiet_NaN();
    out->mean_local_clustering = graph->graph.node_count()
                                     ? tridet::mean_local_clustering(tridet::local_clustering(graph->graph, c))
                                     : std::numeric_limits<double>::quiet_NaN();
  });
}

tdt_status tdt_approx_triangle_count(const tdt_graph* graph, uint64_t sample_size, uint64_t seed,
                                     tdt_triangle_estimate* out) {
  return guarded([&] {
    require(graph && out, "null argument");
    const auto e = tridet::approx_triangle_count(graph->graph, sample_size, seed);
    out->estimate = e.estimate;
    out->standard_error = e.standard_error;
    out->closure_rate = e.closure_rate;
    out->samples = e.samples;
  });
}

tdt_status tdt_spectral_oracle(const tdt_graph* graph, size_t dense_cap, tdt_oracle_result* out) {
  return guarded([&] {
    require(graph && out, "null argument");
    const auto o = tridet::spectral_gcc_oracle(graph->graph, dense_cap == 0 ? tridet::kDefaultDenseCap : dense_cap);
    const auto c = tridet::triangle_census(graph->graph);
    out->gcc_trace = o.gcc;
    out->gcc_triangles = tridet::global_clustering(c);
    out->residual = std::abs(out->gcc_triangles - out->gcc_trace);
    out->trace_a3 = o.trace_a3;
  });
}

tdt_status tdt_lambda1_power_iteration(const tdt_graph* graph, double tol, uint64_t max_iter, double* out) {
  return guarded([&] {
    require(graph && out, "null argument");
    tridet::PowerIterationOptions opts;
    if (tol > 0.0) opts.tol = tol;
    if (max_iter > 0) opts.max_iter = max_iter;
    *out = tridet::lambda1_power_iteration(graph->graph, opts).lambda1;
  });
}

tdt_status tdt_bulk_third_moment(const tdt_graph* graph, size_t n_isolated, size_t dense_cap, double* out) {
  return guarded([&] {
    require(graph && out, "null argument");
    *out = tridet::bulk_third_moment(graph->graph, n_isolated, dense_cap == 0 ? tridet::kDefaultDenseCap : dense_cap);
  });
}

void tdt_assess_options_default(tdt_assess_options* options) {
  if (!options) return;
  const tridet::AssessmentOptions d;
  options->lambda1 = TDT_LAMBDA1_CHUNG;
  options->power_tol = d.power.tol;
  options->power_max_iter = d.power.max_iter;
  options->small_n_threshold = d.thresholds.small_n;
  options->density_threshold = d.thresholds.density;
  options->workers = 1;
}

tdt_status tdt_assess(const tdt_graph* graph, const tdt_assess_options* options, tdt_verdict* verdict,
                      char** assessment_json) {
  return guarded([&] {
    require(graph != nullptr, "null graph");
    const auto a = tridet::assess(graph->graph, to_options(options));
    if (verdict) {
      verdict->classification = static_cast<tdt_classification>(a.verdict.classification);
      verdict->gcc = a.verdict.gcc;
      verdict->c_uc = a.verdict.c_uc;
      verdict->bound = a.verdict.bound_eq11;
      verdict->lambda1_used = a.verdict.lambda1_used;
      verdict->lambda1_source = a.verdict.lambda1_source == tridet::Lambda1Source::PowerIteration
                                    ? TDT_LAMBDA1_POWER_ITERATION
                                    : TDT_LAMBDA1_CHUNG;
    }
    if (assessment_json) *assessment_json = copy_string(tridet::assessment_to_json(a, &graph->build));
  });
}

tdt_status tdt_verdict_from_values(double gcc, double c_uc, double bound, tdt_classification* out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    *out = static_cast<tdt_classification>(tridet::verdict_from_values(gcc, c_uc, bound).classification);
  });
}

tdt_status tdt_gen_params_create(const char* model, tdt_gen_params** out) {
  return guarded([&] {
    require(model && out, "null argument");
    tridet::default_params(model);  // validates the model name
    *out = new tdt_gen_params{model, {}};
  });
}

tdt_status tdt_gen_params_set(tdt_gen_params* params, const char* name, double value) {
  return guarded([&] {
    require(params && name, "null argument");
    if (!tridet::default_params(params->model).contains(name))
      throw tridet::InvalidArgument("model '" + params->model + "' has no parameter '" + name + "'");
    params->values[name] = value;
  });
}

void tdt_gen_params_free(tdt_gen_params* params) { delete params; }

tdt_status tdt_generate(const tdt_gen_params* params, uint64_t seed, tdt_graph** graph, tdt_gen_report** report) {
  return guarded([&] {
    require(params && graph, "null argument");
    auto gen = tridet::generate(params->model, params->values, seed);
    auto g = std::make_unique<tdt_graph>();
    g->graph = std::move(gen.graph);
    std::unique_ptr<tdt_gen_report> r;
    if (report) r = std::make_unique<tdt_gen_report>(tdt_gen_report{std::move(gen.report)});
    *graph = g.release();
    if (report) *report = r.release();
  });
}

tdt_status tdt_gen_report_json(const tdt_gen_report* report, char** json) {
  return guarded([&] {
    require(report && json, "null argument");
    *json = copy_string(tridet::gen_report_to_json(report->report));
  });
}

tdt_status tdt_gen_report_write_membership(const tdt_gen_report* report, const char* path) {
  return guarded([&] {
    require(report && path, "null argument");
    std::ofstream out(path);
    if (!out) throw tridet::IoError(std::string("cannot open ") + path + " for writing");
    tridet::write_membership(report->report, out);
    out.flush();
    if (!out) throw tridet::IoError(std::string("write failure on ") + path);
  });
}

void tdt_gen_report_free(tdt_gen_report* report) { delete report; }

tdt_status tdt_run_sweep(const char* spec_json, const char* format, unsigned threads, char** output) {
  return guarded([&] {
    require(spec_json && format && output, "null argument");
    auto spec = tridet::parse_sweep_spec(spec_json);
    if (threads > 0) spec.threads = threads;
    const std::string fmt = format;
    if (fmt != "csv" && fmt != "json") throw tridet::InvalidArgument("format must be csv or json");
    const auto rows = tridet::run_sweep(spec);
    std::ostringstream out;
    if (fmt == "csv")
      tridet::emit_csv(rows, out);
    else
      tridet::emit_json(rows, out);
    *output = copy_string(out.str());
  });
}

}  // extern "C"
