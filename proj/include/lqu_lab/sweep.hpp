#pragma once

// Point evaluation, parameter grids and figure presets with deterministic
// CSV output.

#include <array>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lqu_lab/channels.hpp"

namespace lqu_lab {

inline constexpr std::string_view kVersion = "0.1.0";

enum class Param { T, Ej, Em, P };
enum class Spacing { Linear, Log };
enum class Method { Closed, Numeric, Bruteforce };

std::string_view to_string(Param p);
std::string_view to_string(Method m);
// Accepts "T"/"t", "ej", "em", "p".
Param parse_param(std::string_view name);
Method parse_method(std::string_view name);

struct PointParams {
  double t = 1.0;
  double ej = 0.0;
  double em = 0.0;
  double p = 0.0;
  std::optional<ChannelKind> channel;

  double get(Param which) const;
  void set(Param which, double value);
};

struct PointResult {
  double lqu = 0.0;
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double lambda3 = 0.0;
  bool fallback = false;
};

inline constexpr int kBruteforceResolution = 4096;

// The thermal state of the X-form Hamiltonian at (ej, em, t), optionally sent
// through `channel` on both qubits, evaluated by `method`:
//   closed      closed form, numeric fallback when it is singular
//   numeric     numeric Gibbs state, Kraus map, W-matrix eigenvalue
//   bruteforce  numeric state, skew-information minimization
// For the numeric routes lambda1/2/3 are max(W_xx, W_yy), min(W_xx, W_yy)
// and W_zz.
PointResult evaluate_point(const PointParams& params, Method method);

struct SweepVariable {
  Param param = Param::T;
  double from = 0.0;
  double to = 1.0;
  int steps = 2;
  Spacing spacing = Spacing::Linear;
  // When non-empty, used verbatim instead of from/to/steps.
  std::vector<double> explicit_values;

  std::vector<double> values() const;
  std::string describe() const;
};

// "T=0.01:1:100", "p=0:1:11:log", "ej=0.5,1,2"
SweepVariable parse_sweep_variable(std::string_view text);

struct SweepSpec {
  std::vector<SweepVariable> variables;  // one or two, outermost first
  PointParams fixed;
  Method method = Method::Closed;
  bool diagnostics = false;
  std::string label = "sweep";  // echoed in the metadata block

  // InvalidSpec for structural problems, InvalidTemperature/InvalidChannel
  // for values outside the numerical domain.
  void validate() const;
};

struct SweepRow {
  PointParams params;
  PointResult result;
};

struct SweepResult {
  std::vector<std::string> metadata;  // lines without the leading "# "
  std::vector<std::string> columns;
  std::vector<SweepRow> rows;

  std::string to_csv() const;
};

// LQU_LAB_THREADS if set and positive, otherwise hardware concurrency.
int default_thread_count();

// Rows in row-major order of spec.variables; identical for any thread count.
SweepResult run_sweep(const SweepSpec& spec, int threads = default_thread_count());

// Throws IoError naming the path.
void write_text_file(const std::filesystem::path& path, const std::string& contents);

// Shortest decimal that round-trips to the same double.
std::string format_double(double v);

struct FigureFile {
  std::string filename;
  SweepSpec spec;
};

const std::vector<std::string>& figure_ids();

// Grid definitions behind one figure preset; throws UnknownFigureId.
std::vector<FigureFile> figure_preset(std::string_view id);

// Evaluates every grid of the preset and writes the CSVs into out_dir.
std::vector<std::filesystem::path> run_figure(std::string_view id,
                                              const std::filesystem::path& out_dir,
                                              int threads = default_thread_count());

}  // namespace lqu_lab
