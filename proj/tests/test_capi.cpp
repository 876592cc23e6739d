#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstring>
#include <string>

#include "tridet/tridet.h"

namespace {

tdt_graph* parse(const char* text, int64_t override_nodes = -1) {
  tdt_graph* g = nullptr;
  REQUIRE(tdt_graph_parse_edge_list(text, std::strlen(text), override_nodes, &g) == TDT_OK);
  return g;
}

constexpr const char* kK4 = "0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n";

}  // namespace

TEST_CASE("capi: version and status names") {
  CHECK(std::string(tdt_version()) == "1.0.0");
  CHECK(std::string(tdt_status_name(TDT_E_PARSE)) == "parse error");
}

TEST_CASE("capi: parsing reports errors with a message") {
  tdt_graph* g = nullptr;
  const char* bad = "0 1\n0 1 2\n";
  CHECK(tdt_graph_parse_edge_list(bad, std::strlen(bad), -1, &g) == TDT_E_PARSE);
  CHECK(g == nullptr);
  CHECK(std::string(tdt_last_error()).find("line 2") != std::string::npos);
  CHECK(tdt_graph_read_edge_list("/nonexistent/file.txt", -1, &g) == TDT_E_IO);
  CHECK(tdt_graph_parse_edge_list(nullptr, 5, -1, &g) == TDT_E_INVALID_ARGUMENT);
}

TEST_CASE("capi: graph info and census") {
  tdt_graph* g = parse("0 1\n1 0\n2 2\n0 2\n1 2\n", 5);
  tdt_graph_info info{};
  REQUIRE(tdt_graph_get_info(g, &info) == TDT_OK);
  CHECK(info.nodes == 5);
  CHECK(info.edges == 3);
  CHECK(info.self_loops_dropped == 1);
  CHECK(info.duplicates_dropped == 1);
  tdt_census c{};
  REQUIRE(tdt_triangle_census(g, 2, &c) == TDT_OK);
  CHECK(c.total_triangles == 1);
  CHECK(c.wedge_count == 3);
  CHECK(c.gcc == 1.0);
  CHECK(c.mean_local_clustering == doctest::Approx(0.6));
  tdt_graph_free(g);
}

TEST_CASE("capi: oracle, power iteration and bulk moment on K4") {
  tdt_graph* g = parse(kK4);
  tdt_oracle_result o{};
  REQUIRE(tdt_spectral_oracle(g, 0, &o) == TDT_OK);
  CHECK(o.trace_a3 == 24);
  CHECK(o.residual <= 1e-12);
  CHECK(tdt_spectral_oracle(g, 3, &o) == TDT_E_CAPACITY);
  double lambda = 0.0;
  REQUIRE(tdt_lambda1_power_iteration(g, 1e-12, 10000, &lambda) == TDT_OK);
  CHECK(lambda == doctest::Approx(3.0));
  double bulk = 0.0;
  REQUIRE(tdt_bulk_third_moment(g, 1, 0, &bulk) == TDT_OK);
  CHECK(bulk == doctest::Approx(-0.75));
  tdt_triangle_estimate est{};
  REQUIRE(tdt_approx_triangle_count(g, 100, 9, &est) == TDT_OK);
  CHECK(est.estimate == doctest::Approx(4.0));
  tdt_graph_free(g);
}

TEST_CASE("capi: assess and verdict_from_values") {
  tdt_graph* g = parse(kK4);
  tdt_verdict v{};
  char* json = nullptr;
  REQUIRE(tdt_assess(g, nullptr, &v, &json) == TDT_OK);
  CHECK(v.classification == TDT_INDETERMINATE);
  CHECK(v.bound == doctest::Approx(1.125));
  REQUIRE(json != nullptr);
  CHECK(std::string(json).find("\"classification\"") != std::string::npos);
  tdt_string_free(json);

  tdt_assess_options opts;
  tdt_assess_options_default(&opts);
  opts.lambda1 = TDT_LAMBDA1_POWER_ITERATION;
  REQUIRE(tdt_assess(g, &opts, &v, nullptr) == TDT_OK);
  CHECK(v.lambda1_source == TDT_LAMBDA1_POWER_ITERATION);
  tdt_graph_free(g);

  tdt_graph* path = parse("0 1\n");
  CHECK(tdt_assess(path, nullptr, &v, nullptr) == TDT_E_UNDEFINED);
  tdt_graph_free(path);

  tdt_classification c{};
  REQUIRE(tdt_verdict_from_values(0.07, 0.0625, 0.075, &c) == TDT_OK);
  CHECK(c == TDT_INDETERMINATE);
  CHECK(tdt_verdict_from_values(NAN, 0.0625, 0.075, &c) == TDT_E_INVALID_ARGUMENT);
}

TEST_CASE("capi: generation, reports and files") {
  tdt_gen_params* p = nullptr;
  REQUIRE(tdt_gen_params_create("ng", &p) == TDT_OK);
  REQUIRE(tdt_gen_params_set(p, "k_out", 4.0) == TDT_OK);
  CHECK(tdt_gen_params_set(p, "nonsense", 1.0) == TDT_E_INVALID_ARGUMENT);
  tdt_graph* g = nullptr;
  tdt_gen_report* r = nullptr;
  REQUIRE(tdt_generate(p, 7, &g, &r) == TDT_OK);
  char* json = nullptr;
  REQUIRE(tdt_gen_report_json(r, &json) == TDT_OK);
  CHECK(std::string(json).find("\"ng\"") != std::string::npos);
  tdt_string_free(json);

  const std::string path = "capi_ng_graph.txt";
  REQUIRE(tdt_graph_write_edge_list(g, path.c_str()) == TDT_OK);
  REQUIRE(tdt_gen_report_write_membership(r, (path + ".membership").c_str()) == TDT_OK);
  tdt_graph* back = nullptr;
  REQUIRE(tdt_graph_read_edge_list(path.c_str(), -1, &back) == TDT_OK);
  tdt_graph_info a{}, b{};
  tdt_graph_get_info(g, &a);
  tdt_graph_get_info(back, &b);
  CHECK(a.nodes == b.nodes);
  CHECK(a.edges == b.edges);
  std::remove(path.c_str());
  std::remove((path + ".membership").c_str());

  tdt_graph_free(back);
  tdt_graph_free(g);
  tdt_gen_report_free(r);
  tdt_gen_params_free(p);

  CHECK(tdt_gen_params_create("smallworld", &p) == TDT_E_INVALID_ARGUMENT);
  REQUIRE(tdt_gen_params_create("ng", &p) == TDT_OK);
  tdt_gen_params_set(p, "k_out", 40.0);
  CHECK(tdt_generate(p, 1, &g, nullptr) == TDT_E_INVALID_ARGUMENT);
  tdt_gen_params_free(p);
}

TEST_CASE("capi: sweeps render csv and json identically across thread counts") {
  const char* spec = R"({"model":"er","parameter":"mean_k","grid":[4,8],"replicates":3,"seed":5,
                         "fixed":{"n":300}})";
  char* one = nullptr;
  char* four = nullptr;
  REQUIRE(tdt_run_sweep(spec, "csv", 1, &one) == TDT_OK);
  REQUIRE(tdt_run_sweep(spec, "csv", 4, &four) == TDT_OK);
  CHECK(std::string(one) == std::string(four));
  tdt_string_free(one);
  tdt_string_free(four);
  char* json = nullptr;
  REQUIRE(tdt_run_sweep(spec, "json", 0, &json) == TDT_OK);
  CHECK(json[0] == '[');
  tdt_string_free(json);
  CHECK(tdt_run_sweep(R"({"model":"er","bogus":1})", "csv", 1, &json) == TDT_E_INVALID_ARGUMENT);
}
