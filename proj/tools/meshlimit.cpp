// meshlimit: count permutations containing a mesh pattern, evaluate the
// closed-form families, verify them against the brute-force oracle, and
// probe the open limit statements.
//
// Exit codes: 0 success, 1 verification mismatch, 2 usage or parse error,
// 3 range guard.

#include <cstdlib>
#include <iostream>
#include <limits>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "meshlimit/meshlimit.hpp"

namespace ml = meshlimit;
using nlohmann::ordered_json;

namespace {

// A flat table: the csv and human renderings share it. JSON documents are
// built separately so nested report shapes stay intact.
struct Sheet {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += "\"\"";
    else out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string render_csv(const Sheet& sheet) {
  std::string out;
  auto line = [&out](const std::vector<std::string>& cells) {
    for (size_t t = 0; t < cells.size(); ++t) {
      if (t) out.push_back(',');
      out += csv_escape(cells[t]);
    }
    out.push_back('\n');
  };
  line(sheet.header);
  for (const auto& row : sheet.rows) line(row);
  return out;
}

std::string render_table(const Sheet& sheet) {
  std::vector<size_t> width(sheet.header.size());
  for (size_t t = 0; t < sheet.header.size(); ++t) width[t] = sheet.header[t].size();
  for (const auto& row : sheet.rows)
    for (size_t t = 0; t < row.size(); ++t) width[t] = std::max(width[t], row[t].size());
  std::string out;
  auto line = [&](const std::vector<std::string>& cells) {
    for (size_t t = 0; t < cells.size(); ++t) {
      if (t) out += "  ";
      out += cells[t];
      if (t + 1 < cells.size()) out.append(width[t] - cells[t].size(), ' ');
    }
    out.push_back('\n');
  };
  line(sheet.header);
  for (const auto& row : sheet.rows) line(row);
  return out;
}

std::string sig(double v) { return ml::detail::format_sig(v); }

enum class Format { table, csv, json };

Format parse_format(const std::string& name) {
  if (name == "table") return Format::table;
  if (name == "csv") return Format::csv;
  if (name == "json") return Format::json;
  throw std::invalid_argument("unknown format '" + name + "'");
}

void emit(Format format, const ordered_json& doc, const Sheet& sheet) {
  switch (format) {
    case Format::json: std::cout << doc.dump(2) << '\n'; break;
    case Format::csv: std::cout << render_csv(sheet); break;
    case Format::table: std::cout << render_table(sheet); break;
  }
}

int env_cap() {
  const char* env = std::getenv("MESHLIMIT_CAP");
  if (!env || !*env) return ml::kDefaultCap;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (*end != '\0' || v < 1 || v > std::numeric_limits<int>::max())
    throw std::invalid_argument("MESHLIMIT_CAP must be a positive integer");
  return static_cast<int>(v);
}

struct Options {
  Format format = Format::table;
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  bool force = false;
  std::optional<int> max_n;

  int cap() const {
    if (force) return std::numeric_limits<int>::max();
    if (max_n) return *max_n;
    return env_cap();
  }
  ml::CountOptions count_options() const { return {cap(), threads}; }
  ml::AnalysisOptions analysis_options() const { return {cap(), threads}; }
  // Range top for the report commands: the cap flag doubles as the range,
  // otherwise each command's own cheap default applies.
  int range_or(int fallback) const { return max_n ? *max_n : fallback; }
};

std::vector<std::string> count_columns(const ml::MeshPattern& p, const ml::CountRow& row) {
  return {ml::format_pattern(p), std::to_string(row.n), row.count.str(),
          row.total.str(),       row.ratio.str(),      sig(row.ratio.convert_to<double>())};
}

ordered_json count_json_row(const ml::CountRow& row) {
  return {{"n", row.n},
          {"count", row.count.str()},
          {"total", row.total.str()},
          {"ratio", static_cast<std::string>(row.ratio.str())},
          {"ratio_float", sig(row.ratio.convert_to<double>())}};
}

int run_count(const Options& opts, const std::string& pattern_text, int n) {
  const ml::MeshPattern p = ml::parse_pattern(pattern_text);
  ml::Int count = ml::count_containing(p, n, opts.count_options());
  ml::Int total = ml::factorial(n);
  ml::Rat ratio(count, total);
  const ml::CountRow row{n, std::move(count), std::move(total), std::move(ratio)};

  ordered_json doc{{"pattern", ml::format_pattern(p)}};
  doc.update(count_json_row(row));
  Sheet sheet{{"pattern", "n", "count", "total", "ratio", "ratio_float"},
              {count_columns(p, row)}};
  emit(opts.format, doc, sheet);
  return 0;
}

int run_table(const Options& opts, const std::string& pattern_text, int from, int to) {
  const ml::MeshPattern p = ml::parse_pattern(pattern_text);
  const ml::CountSeries series = ml::count_series(p, from, to, opts.count_options());

  ordered_json rows = ordered_json::array();
  Sheet sheet{{"pattern", "n", "count", "total", "ratio", "ratio_float"}, {}};
  for (const ml::CountRow& row : series.rows) {
    rows.push_back(count_json_row(row));
    sheet.rows.push_back(count_columns(p, row));
  }
  const ordered_json doc{{"pattern", ml::format_pattern(p)}, {"rows", std::move(rows)}};
  emit(opts.format, doc, sheet);
  return 0;
}

int run_formula(const Options& opts, const ml::FormulaId& id, int n) {
  const ml::ExactValue result = ml::evaluate(id, n);
  const std::string family(ml::family_name(id.family));
  const ordered_json doc{{"family", family},
                         {"k", id.k},
                         {"i", id.i},
                         {"j", id.j},
                         {"n", n},
                         {"value", result.value.str()},
                         {"ratio", static_cast<std::string>(result.ratio.str())},
                         {"ratio_float", sig(result.ratio.convert_to<double>())}};
  Sheet sheet{{"family", "k", "i", "j", "n", "value", "ratio", "ratio_float"},
              {{family, std::to_string(id.k), std::to_string(id.i), std::to_string(id.j),
                std::to_string(n), result.value.str(), result.ratio.str(),
                sig(result.ratio.convert_to<double>())}}};
  emit(opts.format, doc, sheet);
  return 0;
}

int run_ratio(const Options& opts, const ml::FormulaId& id, int n) {
  const double ratio = ml::ratio_at(id, n);
  const double limit = ml::family_limit(id);
  const std::string family(ml::family_name(id.family));
  const ordered_json doc{{"family", family},
                         {"k", id.k},
                         {"n", n},
                         {"ratio", sig(ratio)},
                         {"limit", sig(limit)},
                         {"delta", sig(limit - ratio)}};
  Sheet sheet{{"family", "k", "n", "ratio", "limit", "delta"},
              {{family, std::to_string(id.k), std::to_string(n), sig(ratio), sig(limit),
                sig(limit - ratio)}}};
  emit(opts.format, doc, sheet);
  return 0;
}

Sheet verification_sheet(const ml::VerificationReport& report) {
  Sheet sheet{{"theorem", "pattern", "n", "formula", "oracle", "match", "millis"}, {}};
  for (const ml::VerificationRow& row : report.rows)
    sheet.rows.push_back({row.theorem, row.pattern, std::to_string(row.n),
                          row.formula.str(), row.oracle.str(),
                          row.match ? "true" : "false",
                          ml::detail::format_millis(row.millis)});
  return sheet;
}

int emit_verification(const Options& opts, const ml::VerificationReport& report) {
  switch (opts.format) {
    case Format::json: std::cout << ml::to_json(report).dump(2) << '\n'; break;
    case Format::csv: std::cout << ml::to_csv(report); break;
    case Format::table:
      std::cout << render_table(verification_sheet(report))
                << "pass: " << (report.pass ? "true" : "false") << '\n';
      break;
  }
  return report.pass ? 0 : 1;
}

int run_verify(const Options& opts, const std::string& theorem, int k, int i, int j,
               const std::optional<ml::Permutation>& perm) {
  const ml::FormulaId id{ml::family_from_name(theorem), k, i, j};
  const auto report = ml::verify_theorem(id, opts.range_or(7), opts.analysis_options(), perm);
  return emit_verification(opts, report);
}

int run_fixtures(const Options& opts) {
  const auto report = ml::run_shading_fixtures(opts.range_or(7), opts.analysis_options());
  return emit_verification(opts, report);
}

int run_probe(const Options& opts, const std::string& conjecture,
              const std::optional<ml::Permutation>& perm) {
  const auto report = ml::probe_conjecture(ml::conjecture_from_name(conjecture), perm,
                                           opts.range_or(9), opts.analysis_options());
  switch (opts.format) {
    case Format::json: std::cout << ml::to_json(report).dump(2) << '\n'; break;
    case Format::csv: std::cout << ml::to_csv(report); break;
    case Format::table: {
      Sheet sheet{{"n", "count", "total", "ratio"}, {}};
      for (const ml::ProbeRow& row : report.rows)
        sheet.rows.push_back({std::to_string(row.n), row.count.str(), row.total.str(),
                              sig(row.ratio.convert_to<double>())});
      std::cout << "conjecture: " << report.conjecture << '\n'
                << "pattern:    " << report.pattern << '\n'
                << render_table(sheet) << "last ratio " << sig(report.last_ratio)
                << ", delta to 1/2 " << sig(report.last_delta) << ", "
                << (report.monotone ? "monotone" : "not monotone") << ", approaching from "
                << report.approaching
                << (report.sandwich_ok ? "" : ", sandwich bound violated") << '\n';
      break;
    }
  }
  return 0;
}

int run_symmetry(const Options& opts, const std::string& pattern_text) {
  const ml::MeshPattern p = ml::parse_pattern(pattern_text);
  std::vector<std::pair<std::string, ml::MeshPattern>> images;
  ml::MeshPattern rotated = p;
  images.emplace_back("identity", rotated);
  for (const char* name : {"rot90", "rot180", "rot270"}) {
    rotated = rotated.rotate90();
    images.emplace_back(name, rotated);
  }
  ml::MeshPattern mirrored = p.reverse();
  images.emplace_back("reverse", mirrored);
  for (const char* name : {"reverse_rot90", "reverse_rot180", "reverse_rot270"}) {
    mirrored = mirrored.rotate90();
    images.emplace_back(name, mirrored);
  }

  ordered_json rows = ordered_json::array();
  Sheet sheet{{"op", "pattern"}, {}};
  for (const auto& [op, image] : images) {
    rows.push_back({{"op", op}, {"pattern", ml::format_pattern(image)}});
    sheet.rows.push_back({op, ml::format_pattern(image)});
  }
  const ordered_json doc{{"pattern", ml::format_pattern(p)},
                         {"rows", std::move(rows)},
                         {"distinct", p.orbit().size()}};
  emit(opts.format, doc, sheet);
  return 0;
}

int run_classify(const Options& opts, const ml::Permutation& perm) {
  const std::string cls(ml::border_class_name(ml::classify_border(perm)));
  const std::string word = ml::format_perm(perm);
  if (opts.format == Format::table) {
    std::cout << cls << '\n';
    return 0;
  }
  emit(opts.format, ordered_json{{"perm", word}, {"class", cls}},
       Sheet{{"perm", "class"}, {{word, cls}}});
  return 0;
}

int run_occurrences(const Options& opts, const std::string& pattern_text,
                    const std::string& host_text) {
  const ml::MeshPattern p = ml::parse_pattern(pattern_text);
  const ml::Permutation host = ml::parse_perm(host_text);
  ml::ContainmentTester tester(p);

  std::vector<std::string> witnesses;
  tester.for_each_witness(host.letters(), [&](const std::vector<int>& positions) {
    std::string joined;
    for (size_t t = 0; t < positions.size(); ++t) {
      if (t) joined.push_back(' ');
      joined += std::to_string(positions[t]);
    }
    witnesses.push_back(std::move(joined));
    return true;
  });

  ordered_json rows = ordered_json::array();
  Sheet sheet{{"pattern", "host", "index", "positions"}, {}};
  for (size_t t = 0; t < witnesses.size(); ++t) {
    rows.push_back({{"index", t + 1}, {"positions", witnesses[t]}});
    sheet.rows.push_back({ml::format_pattern(p), ml::format_perm(host),
                          std::to_string(t + 1), witnesses[t]});
  }
  const ordered_json doc{{"pattern", ml::format_pattern(p)},
                         {"host", ml::format_perm(host)},
                         {"count", witnesses.size()},
                         {"rows", std::move(rows)}};
  emit(opts.format, doc, sheet);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mesh pattern containment toolkit"};
  app.require_subcommand(1);

  Options opts;
  std::string format_name = "table";
  int max_n_flag = 0;
  app.add_option("--format", format_name, "output format: table, csv, or json")
      ->check(CLI::IsMember({"table", "csv", "json"}));
  app.add_option("--threads", opts.threads, "worker threads for exhaustive counts");
  app.add_flag("--force", opts.force, "bypass the n cap entirely");
  auto* max_n_opt = app.add_option(
      "--max-n", max_n_flag,
      "n cap for exhaustive counts (default 12 or MESHLIMIT_CAP); "
      "also the range top for verify, fixtures, and probe");

  std::string pattern_text;
  std::string host_text;
  std::string name;
  std::string perm_text;
  int n = 0;
  int from = 1;
  int to = 7;
  int k = 4;
  int i = -1;
  int j = -1;

  auto* count_cmd =
      app.add_subcommand("count", "count permutations of S_n containing a pattern");
  count_cmd->add_option("-p,--pattern", pattern_text, "mesh pattern, e.g. \"2143:border\"")
      ->required();
  count_cmd->add_option("-n", n, "host length")->required();

  auto* table_cmd = app.add_subcommand("table", "containment counts over a range of n");
  table_cmd->add_option("-p,--pattern", pattern_text, "mesh pattern")->required();
  table_cmd->add_option("--from", from, "first n (default 1)");
  table_cmd->add_option("--to", to, "last n (default 7)");

  auto* formula_cmd = app.add_subcommand("formula", "evaluate a closed form exactly");
  formula_cmd->add_option("--name", name, "family name, e.g. border or sideshade")
      ->required();
  formula_cmd->add_option("-n", n, "host length")->required();
  formula_cmd->add_option("--k", k, "pattern length for row, col, row1 (default 4)");
  formula_cmd->add_option("--i", i, "row index (row, row1)");
  formula_cmd->add_option("--j", j, "column index (col, row1)");

  auto* ratio_cmd =
      app.add_subcommand("ratio", "containment ratio from the closed form at large n");
  ratio_cmd->add_option("--name", name, "family name")->required();
  ratio_cmd->add_option("-n", n, "host length")->required();
  ratio_cmd->add_option("--k", k, "pattern length for row and col (default 4)");

  auto* verify_cmd =
      app.add_subcommand("verify", "check a family against exhaustive counts");
  verify_cmd->add_option("--theorem", name, "family name")->required();
  verify_cmd->add_option("--k", k, "pattern length for row, col, row1 (default 4)");
  verify_cmd->add_option("--i", i, "row index; all free indices when unset");
  verify_cmd->add_option("--j", j, "column index");
  verify_cmd->add_option("--perm", perm_text, "pattern permutation override");

  auto* fixtures_cmd =
      app.add_subcommand("fixtures", "run the shading-robustness fixture suite");

  auto* probe_cmd = app.add_subcommand("probe", "numeric evidence for an open limit");
  probe_cmd->add_option("--conjecture", name, "topbottom_general or skewsum_half")
      ->required();
  probe_cmd->add_option("--perm", perm_text,
                        "probe permutation of length 3 or 5 (topbottom_general)");

  auto* symmetry_cmd = app.add_subcommand("symmetry", "dihedral images of a pattern");
  symmetry_cmd->add_option("-p,--pattern", pattern_text, "mesh pattern")->required();

  auto* classify_cmd =
      app.add_subcommand("classify", "limit class of a bordered length-4 pattern");
  classify_cmd->add_option("--perm", perm_text, "permutation of length 4")->required();

  auto* occurrences_cmd =
      app.add_subcommand("occurrences", "list pattern occurrences in one host");
  occurrences_cmd->add_option("-p,--pattern", pattern_text, "mesh pattern")->required();
  occurrences_cmd->add_option("--host", host_text, "host permutation")->required();

  for (CLI::App* sub : {count_cmd, table_cmd, formula_cmd, ratio_cmd, verify_cmd,
                        fixtures_cmd, probe_cmd, symmetry_cmd, classify_cmd,
                        occurrences_cmd})
    sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    opts.format = parse_format(format_name);
    if (*max_n_opt) {
      if (max_n_flag < 1) throw std::invalid_argument("--max-n must be positive");
      opts.max_n = max_n_flag;
    }
    if (opts.threads < 1) opts.threads = 1;

    std::optional<ml::Permutation> perm;
    if (!perm_text.empty()) perm = ml::parse_perm(perm_text);

    if (count_cmd->parsed()) return run_count(opts, pattern_text, n);
    if (table_cmd->parsed()) return run_table(opts, pattern_text, from, to);
    if (formula_cmd->parsed())
      return run_formula(opts, {ml::family_from_name(name), k, i, j}, n);
    if (ratio_cmd->parsed()) return run_ratio(opts, {ml::family_from_name(name), k, i, j}, n);
    if (verify_cmd->parsed()) return run_verify(opts, name, k, i, j, perm);
    if (fixtures_cmd->parsed()) return run_fixtures(opts);
    if (probe_cmd->parsed()) return run_probe(opts, name, perm);
    if (symmetry_cmd->parsed()) return run_symmetry(opts, pattern_text);
    if (classify_cmd->parsed()) {
      if (!perm) throw std::invalid_argument("classify: --perm is required");
      return run_classify(opts, *perm);
    }
    if (occurrences_cmd->parsed()) return run_occurrences(opts, pattern_text, host_text);
    return 2;
  } catch (const ml::RangeError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const ml::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
