#include <array>
#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "tridet/error.hpp"
#include "tridet/harness.hpp"

namespace tridet {

namespace {

constexpr std::array<std::string_view, 19> kColumns = {
    "model",   "parameter", "parameter_value", "replicate",     "seed",          "n",
    "e",       "mean_k",    "mean_k2",         "k_max",         "triangles",     "gcc",
    "c_uc",    "bound_eq11", "lambda1_chung",  "lambda1_exact", "bulk_third_moment", "verdict",
    "warnings"};

std::string format_double(double x) {
  if (!std::isfinite(x)) return {};
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string join_warnings(const std::vector<std::string>& w) {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ';';
    out += w[i];
  }
  return out;
}

// Field values of one row in column order; nullopt marks an absent value.
std::vector<std::optional<std::string>> row_fields(const SweepRow& r) {
  auto u = [](const std::optional<std::uint64_t>& v) -> std::optional<std::string> {
    if (!v) return std::nullopt;
    return std::to_string(*v);
  };
  auto d = [](const std::optional<double>& v) -> std::optional<std::string> {
    if (!v || !std::isfinite(*v)) return std::nullopt;
    return format_double(*v);
  };
  return {r.model,
          r.parameter,
          format_double(r.parameter_value),
          std::to_string(r.replicate),
          std::to_string(r.seed),
          u(r.n),
          u(r.e),
          d(r.mean_k),
          d(r.mean_k2),
          u(r.k_max),
          u(r.triangles),
          d(r.gcc),
          d(r.c_uc),
          d(r.bound_eq11),
          d(r.lambda1_chung),
          d(r.lambda1_exact),
          d(r.bulk_third_moment),
          r.verdict,
          join_warnings(r.warnings)};
}

bool is_text_column(std::size_t i) { return i == 0 || i == 1 || i == 17 || i == 18; }

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string json_escape(const std::string& s) {
  std::string out;
  for (unsigned char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (c < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += static_cast<char>(c);
        }
    }
  }
  return out;
}

std::vector<std::vector<std::string>> split_csv(std::string_view text) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> rec;
  std::string field;
  bool quoted = false, any = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    if (c == '"') {
      quoted = true;
      any = true;
    } else if (c == ',') {
      rec.push_back(std::move(field));
      field.clear();
      any = true;
    } else if (c == '\n') {
      rec.push_back(std::move(field));
      field.clear();
      records.push_back(std::move(rec));
      rec.clear();
      any = false;
    } else if (c != '\r') {
      field += c;
      any = true;
    }
  }
  if (quoted) throw ParseError(records.size() + 1, "unterminated quoted CSV field");
  if (any) {
    rec.push_back(std::move(field));
    records.push_back(std::move(rec));
  }
  return records;
}

double parse_double(const std::string& s, std::size_t line) {
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || errno == ERANGE)
    throw ParseError(line, "bad number '" + s + "'");
  return v;
}

std::uint64_t parse_u64(const std::string& s, std::size_t line) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size())
    throw ParseError(line, "bad integer '" + s + "'");
  return v;
}

}  // namespace

std::span<const std::string_view> sweep_columns() { return kColumns; }

void emit_csv(std::span<const SweepRow> rows, std::ostream& out) {
  for (std::size_t i = 0; i < kColumns.size(); ++i) out << (i ? "," : "") << kColumns[i];
  out << '\n';
  for (const auto& r : rows) {
    const auto fields = row_fields(r);
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i) out << ',';
      if (fields[i]) out << csv_quote(*fields[i]);
    }
    out << '\n';
  }
}

void emit_json(std::span<const SweepRow> rows, std::ostream& out) {
  out << '[';
  for (std::size_t r = 0; r < rows.size(); ++r) {
    out << (r ? ",\n " : "\n ") << '{';
    const auto fields = row_fields(rows[r]);
    for (std::size_t i = 0; i < fields.size(); ++i) {
      out << (i ? ", " : "") << '"' << kColumns[i] << "\": ";
      if (i == 18) {
        out << '[';
        for (std::size_t w = 0; w < rows[r].warnings.size(); ++w)
          out << (w ? ", " : "") << '"' << json_escape(rows[r].warnings[w]) << '"';
        out << ']';
      } else if (!fields[i]) {
        out << "null";
      } else if (is_text_column(i)) {
        out << '"' << json_escape(*fields[i]) << '"';
      } else {
        out << *fields[i];
      }
    }
    out << '}';
  }
  out << (rows.empty() ? "]\n" : "\n]\n");
}

void emit(std::span<const SweepRow> rows, std::string_view format, const std::string& path) {
  if (format != "csv" && format != "json") throw InvalidArgument("output format must be csv or json");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  if (format == "csv")
    emit_csv(rows, out);
  else
    emit_json(rows, out);
  out.flush();
  if (!out) throw IoError("write failure on " + path);
}

std::vector<SweepRow> parse_csv_rows(std::string_view csv) {
  const auto records = split_csv(csv);
  if (records.empty()) throw ParseError(1, "missing CSV header");
  const auto& header = records.front();
  if (header.size() != kColumns.size()) throw ParseError(1, "unexpected CSV header");
  for (std::size_t i = 0; i < kColumns.size(); ++i)
    if (header[i] != kColumns[i]) throw ParseError(1, "unexpected CSV column '" + header[i] + "'");

  std::vector<SweepRow> rows;
  for (std::size_t li = 1; li < records.size(); ++li) {
    const auto& f = records[li];
    const std::size_t line = li + 1;
    if (f.size() != kColumns.size())
      throw ParseError(line, "expected " + std::to_string(kColumns.size()) + " fields");
    auto ou = [&](const std::string& s) -> std::optional<std::uint64_t> {
      if (s.empty()) return std::nullopt;
      return parse_u64(s, line);
    };
    auto od = [&](const std::string& s) -> std::optional<double> {
      if (s.empty()) return std::nullopt;
      return parse_double(s, line);
    };
    SweepRow r;
    r.model = f[0];
    r.parameter = f[1];
    r.parameter_value = parse_double(f[2], line);
    r.replicate = parse_u64(f[3], line);
    r.seed = parse_u64(f[4], line);
    r.n = ou(f[5]);
    r.e = ou(f[6]);
    r.mean_k = od(f[7]);
    r.mean_k2 = od(f[8]);
    r.k_max = ou(f[9]);
    r.triangles = ou(f[10]);
    r.gcc = od(f[11]);
    r.c_uc = od(f[12]);
    r.bound_eq11 = od(f[13]);
    r.lambda1_chung = od(f[14]);
    r.lambda1_exact = od(f[15]);
    r.bulk_third_moment = od(f[16]);
    r.verdict = f[17];
    std::string_view w = f[18];
    while (!w.empty()) {
      const auto cut = w.find(';');
      r.warnings.emplace_back(w.substr(0, cut));
      if (cut == std::string_view::npos) break;
      w.remove_prefix(cut + 1);
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

std::string assessment_to_json(const Assessment& a, const BuildReport* build) {
  using nlohmann::ordered_json;
  auto opt = [](const std::optional<double>& v) -> ordered_json {
    return v ? ordered_json(*v) : ordered_json(nullptr);
  };
  ordered_json doc;
  ordered_json graph = {{"n", a.n}, {"e", a.e}};
  if (build) {
    graph["self_loops_dropped"] = build->self_loops_dropped;
    graph["duplicates_dropped"] = build->duplicates_dropped;
  }
  doc["graph"] = graph;
  doc["degree_stats"] = {{"n", a.n}, {"e", a.e}, {"mean_k", a.mean_k}, {"mean_k2", a.mean_k2}, {"k_max", a.k_max}};
  doc["census"] = {{"total_triangles", a.total_triangles},
                   {"wedge_count", a.wedge_count},
                   {"mean_local_clustering", a.mean_local_clustering}};
  const auto& b = a.baselines;
  doc["baselines"] = {{"c_er", b.c_er},
                      {"c_uc", b.c_uc},
                      {"c_ba", opt(b.c_ba)},
                      {"lambda1_chung", b.lambda1_chung},
                      {"lambda1_exact", opt(b.lambda1_exact)},
                      {"gcc_bound_lambda1", opt(b.gcc_bound_lambda1)},
                      {"gcc_bound_chung", b.gcc_bound_chung}};
  const auto& v = a.verdict;
  doc["verdict"] = {{"classification", std::string(to_string(v.classification))},
                    {"gcc", v.gcc},
                    {"c_uc", v.c_uc},
                    {"bound_eq11", v.bound_eq11},
                    {"band_width", v.bound_eq11 - v.c_uc},
                    {"lambda1_used", v.lambda1_used},
                    {"lambda1_source", std::string(to_string(v.lambda1_source))}};
  const auto& s = a.assumptions;
  doc["assumptions"] = {
      {"bipartite", s.bipartite},
      {"assumption3_holds", s.assumption3_holds ? ordered_json(*s.assumption3_holds) : ordered_json(nullptr)},
      {"near_poisson", s.near_poisson},
      {"small_n_warning", s.small_n_warning},
      {"density_warning", s.density_warning},
      {"assortativity", opt(s.assortativity)},
      {"band_inverted", s.band_inverted}};
  doc["warnings"] = a.warnings;
  return doc.dump(2);
}

std::string gen_report_to_json(const GenReport& r) {
  using nlohmann::ordered_json;
  ordered_json doc;
  doc["model"] = r.model;
  doc["seed"] = r.seed;
  doc["stats"] = {{"n", r.stats.n},
                  {"e", r.stats.e},
                  {"mean_k", r.stats.mean_k},
                  {"mean_k2", r.stats.mean_k2},
                  {"k_max", r.stats.k_max}};
  doc["communities"] = r.community_sizes.size();
  doc["community_sizes"] = r.community_sizes;
  doc["requested_mixing"] = r.requested_mixing;
  doc["realized_mixing"] = r.realized_mixing;
  doc["rewiring_attempts"] = r.rewiring_attempts;
  doc["unresolved_stubs"] = r.unresolved_stubs;
  doc["k_min"] = r.k_min ? ordered_json(*r.k_min) : ordered_json(nullptr);
  doc["expected_mean_k"] = r.expected_mean_k ? ordered_json(*r.expected_mean_k) : ordered_json(nullptr);
  return doc.dump(2);
}

void write_membership(const GenReport& r, std::ostream& out) {
  for (std::size_t v = 0; v < r.membership.size(); ++v) out << v << ' ' << r.membership[v] << '\n';
}

}  // namespace tridet
