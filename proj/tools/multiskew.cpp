// multiskew: command-line front end for the multiskew library.
//
//   multiskew third   --kind raw|central|standardized  DATA.csv
//   multiskew skew    --measure fisher|mardia|partial|directional|all  DATA.csv
//   multiskew maxskew --iterations N --components K  DATA.csv
//   multiskew minskew --dimension K  DATA.csv
//   multiskew boot    --measure M --replicates R --units U --seed S  DATA.csv
//
// Results go to --output-dir (or $MULTISKEW_OUTPUT_DIR); without either they
// are printed to stdout. Exit status: 0 ok, 2 usage error, 1 computation error.

#include <CLI11.hpp>

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "multiskew/multiskew.hpp"

namespace ms = multiskew;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct CommonOptions {
  std::string input;
  std::string columns;
  std::string rows;
  bool no_header = false;
  std::string output_dir;
  std::string format = "csv";
  int precision = 6;
};

void add_common(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("input", o.input, "CSV data file")->required();
  cmd->add_option("--columns,-c", o.columns, "columns to use: 1-based indices, ranges (1-4) or names");
  cmd->add_option("--rows,-r", o.rows, "rows to use: 1-based indices or ranges (1-50)");
  cmd->add_flag("--no-header", o.no_header, "the file has no header row");
  cmd->add_option("--output-dir,-o", o.output_dir,
                  "directory for result files (default: $MULTISKEW_OUTPUT_DIR, else stdout)");
  cmd->add_option("--format", o.format, "output format")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--precision", o.precision, "significant digits")->check(CLI::Range(1, 15));
}

ms::DataMatrix load(const CommonOptions& o) {
  std::optional<std::vector<ms::ColumnRef>> cols;
  if (!o.columns.empty()) cols = ms::parse_column_list(o.columns);
  auto data = ms::load_csv(o.input, cols, {.header = !o.no_header});
  if (!o.rows.empty()) {
    const auto rows = ms::parse_row_list(o.rows);
    data = data.select_rows(rows);
  }
  return data;
}

/// Collects named outputs and writes them to a directory or to stdout.
class Sink {
 public:
  explicit Sink(const CommonOptions& o) : precision_(o.precision) {
    if (!o.output_dir.empty()) {
      dir_ = o.output_dir;
    } else if (const char* env = std::getenv("MULTISKEW_OUTPUT_DIR"); env && *env) {
      dir_ = env;
    }
  }

  void add(std::string name, std::string contents) { files_.emplace_back(std::move(name), std::move(contents)); }

  void flush() const {
    if (dir_) {
      fs::create_directories(*dir_);
      for (const auto& [name, contents] : files_) {
        std::ofstream out(*dir_ / name, std::ios::binary);
        if (!out) throw ms::DataError("cannot write '" + (*dir_ / name).string() + "'");
        out << contents;
      }
      return;
    }
    for (const auto& [name, contents] : files_) {
      if (files_.size() > 1) std::cout << "# file=" << name << '\n';
      std::cout << contents;
    }
  }

  [[nodiscard]] std::string num(double v) const { return ms::format_number(v, precision_); }
  [[nodiscard]] int precision() const { return precision_; }

 private:
  int precision_;
  std::optional<fs::path> dir_;
  std::vector<std::pair<std::string, std::string>> files_;
};

std::string labelled_matrix_csv(const Sink& sink, const std::vector<std::string>& row_labels,
                                const ms::Matrix& m) {
  std::ostringstream os;
  os << "variable";
  for (ms::Index j = 0; j < m.cols(); ++j) os << ",P" << j + 1;
  os << '\n';
  for (ms::Index i = 0; i < m.rows(); ++i) {
    os << row_labels[static_cast<std::size_t>(i)];
    for (ms::Index j = 0; j < m.cols(); ++j) os << ',' << sink.num(m(i, j));
    os << '\n';
  }
  return os.str();
}

std::string scores_csv(const Sink& sink, const ms::Matrix& m, bool with_row_ids) {
  std::ostringstream os;
  if (with_row_ids) os << "row,";
  for (ms::Index j = 0; j < m.cols(); ++j) os << (j ? "," : "") << 'P' << j + 1;
  os << '\n';
  for (ms::Index i = 0; i < m.rows(); ++i) {
    if (with_row_ids) os << i + 1 << ',';
    for (ms::Index j = 0; j < m.cols(); ++j) os << (j ? "," : "") << sink.num(m(i, j));
    os << '\n';
  }
  return os.str();
}

json matrix_json(const ms::Matrix& m) {
  json rows = json::array();
  for (ms::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (ms::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

json vector_json(const ms::Vector& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

std::string dump(const json& j) { return j.dump(2) + "\n"; }

// ---------------------------------------------------------------------------

void run_third(const CommonOptions& o, const std::string& kind_name) {
  const auto kind = ms::parse_moment_kind(kind_name);
  const auto m3 = ms::third_moment(load(o), kind);
  Sink sink(o);
  if (o.format == "json") {
    sink.add("third_" + kind_name + ".json",
             dump({{"kind", kind_name}, {"dim", m3.dim()}, {"values", matrix_json(m3.values())}}));
  } else {
    std::ostringstream os;
    ms::write_csv(os, m3, o.precision);
    sink.add("third_" + kind_name + ".csv", os.str());
  }
  sink.flush();
}

void run_skew(const CommonOptions& o, const std::string& measure, int iterations) {
  const auto data = load(o);
  std::vector<ms::SkewnessReport> reports;
  auto want = [&](const char* m) { return measure == "all" || measure == m; };
  if (want("fisher")) reports.push_back(ms::fisher_report(data));
  if (want("mardia")) reports.push_back(ms::mardia_skewness(data));
  if (want("partial")) reports.push_back(ms::partial_skewness(data));
  if (want("directional") && (measure != "all" || data.cols() >= 2))
    reports.push_back(ms::directional_skewness(data, iterations));

  Sink sink(o);
  if (o.format == "json") {
    json out = json::array();
    for (const auto& r : reports) out.push_back(ms::to_json(r));
    sink.add("skewness.json", dump(reports.size() == 1 ? out[0] : out));
  } else {
    std::string text;
    for (std::size_t i = 0; i < reports.size(); ++i) {
      if (i) text += '\n';
      text += ms::to_key_value(reports[i], o.precision);
    }
    sink.add("skewness.txt", text);
  }
  sink.flush();
}

void run_maxskew(const CommonOptions& o, int iterations, int components) {
  const auto data = load(o);
  const auto basis = ms::max_skew(data, iterations, components);
  Sink sink(o);
  if (o.format == "json") {
    sink.add("maxskew.json", dump({{"names", data.names()},
                                   {"directions", matrix_json(basis.directions)},
                                   {"standardized_directions", matrix_json(basis.standardized_directions)},
                                   {"skewness", vector_json(basis.skewness)},
                                   {"projected", matrix_json(basis.projected)}}));
  } else {
    sink.add("directions.csv", labelled_matrix_csv(sink, data.names(), basis.directions));
    std::ostringstream sk;
    sk << "component,skewness\n";
    for (ms::Index j = 0; j < basis.skewness.size(); ++j) sk << 'P' << j + 1 << ',' << sink.num(basis.skewness(j)) << '\n';
    sink.add("skewness.csv", sk.str());
    sink.add("projected.csv", scores_csv(sink, basis.projected, false));
    sink.add("scatter.csv", scores_csv(sink, basis.projected, true));
  }
  sink.flush();
}

void run_minskew(const CommonOptions& o, int dimension) {
  const auto data = load(o);
  const auto basis = ms::min_skew(data, dimension);
  Sink sink(o);
  if (o.format == "json") {
    sink.add("minskew.json", dump({{"names", data.names()},
                                   {"linear", matrix_json(basis.directions)},
                                   {"singular_values", vector_json(basis.skewness)},
                                   {"projections", matrix_json(basis.projected)}}));
  } else {
    sink.add("linear.csv", labelled_matrix_csv(sink, data.names(), basis.directions));
    sink.add("projections.csv", scores_csv(sink, basis.projected, false));
  }
  sink.flush();
}

void run_boot(const CommonOptions& o, const std::string& measure_name, int replicates, int units,
              std::uint64_t seed) {
  const auto data = load(o);
  if (units == 0) units = static_cast<int>(data.rows());
  const auto measure = ms::parse_measure(measure_name);
  const auto result = ms::skew_boot(data, replicates, units, measure, seed);
  Sink sink(o);
  if (o.format == "json") {
    json hist = json::array();
    for (const auto& b : result.histogram) hist.push_back({{"lower", b.lower}, {"upper", b.upper}, {"count", b.count}});
    sink.add("boot.json", dump({{"measure", ms::to_string(measure)},
                                {"observed", result.observed},
                                {"pvalue", result.pvalue},
                                {"replicates", result.replicates},
                                {"units", result.units},
                                {"seed", result.seed},
                                {"histogram", hist}}));
  } else {
    std::ostringstream reps;
    reps << "replicate,statistic\n";
    for (std::size_t i = 0; i < result.replicates.size(); ++i) reps << i + 1 << ',' << sink.num(result.replicates[i]) << '\n';
    sink.add("replicates.csv", reps.str());

    std::ostringstream hist;
    hist << "lower,upper,count\n";
    for (const auto& b : result.histogram) hist << sink.num(b.lower) << ',' << sink.num(b.upper) << ',' << b.count << '\n';
    sink.add("histogram.csv", hist.str());

    std::ostringstream summary;
    summary << "measure=" << ms::to_string(measure) << '\n'
            << "observed=" << sink.num(result.observed) << '\n'
            << "pvalue=" << sink.num(result.pvalue) << '\n'
            << "replicates=" << replicates << '\n'
            << "units=" << units << '\n'
            << "seed=" << seed << '\n';
    sink.add("summary.txt", summary.str());
  }
  sink.flush();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Detect, measure and remove multivariate skewness"};
  app.require_subcommand(1);

  CommonOptions third_o, skew_o, max_o, min_o, boot_o;

  auto* third = app.add_subcommand("third", "third multivariate moment (d^2 x d)");
  add_common(third, third_o);
  std::string kind = "standardized";
  third->add_option("--kind,-k", kind, "moment kind")->check(CLI::IsMember({"raw", "central", "standardized"}));

  auto* skew = app.add_subcommand("skew", "skewness measures with parametric p-values");
  add_common(skew, skew_o);
  std::string skew_measure = "all";
  int skew_iterations = 50;
  skew->add_option("--measure,-m", skew_measure, "measure")
      ->check(CLI::IsMember({"fisher", "mardia", "partial", "directional", "all"}));
  skew->add_option("--iterations", skew_iterations, "iterations for the directional measure")
      ->check(CLI::PositiveNumber);

  auto* maxskew = app.add_subcommand("maxskew", "mutually uncorrelated projections of maximal skewness");
  add_common(maxskew, max_o);
  int max_iterations = 50;
  int components = 1;
  maxskew->add_option("--iterations,-i", max_iterations, "iterations (positive integer)");
  maxskew->add_option("--components,-k", components, "number of projections (< number of variables)");

  auto* minskew = app.add_subcommand("minskew", "least skewed linear projections");
  add_common(minskew, min_o);
  int dimension = 2;
  minskew->add_option("--dimension,-k", dimension, "number of projections (2 .. number of variables)");

  auto* boot = app.add_subcommand("boot", "bootstrap distribution and p-value of a skewness measure");
  add_common(boot, boot_o);
  std::string boot_measure = "Mardia";
  int replicates = 100;
  int units = 0;
  std::uint64_t seed = 1;
  boot->add_option("--measure,-m", boot_measure, "Directional, Partial or Mardia")
      ->check(CLI::IsMember({"directional", "partial", "mardia"}, CLI::ignore_case));
  boot->add_option("--replicates,-R", replicates, "bootstrap replicates");
  boot->add_option("--units,-u", units, "rows per resample (default: all rows)");
  boot->add_option("--seed,-s", seed, "random seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "multiskew: usage error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (*third) {
      run_third(third_o, kind);
    } else if (*skew) {
      run_skew(skew_o, skew_measure, skew_iterations);
    } else if (*maxskew) {
      run_maxskew(max_o, max_iterations, components);
    } else if (*minskew) {
      run_minskew(min_o, dimension);
    } else if (*boot) {
      run_boot(boot_o, boot_measure, replicates, units, seed);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "multiskew: usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "multiskew: error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
