#include "lqu_lab/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "lqu_lab/errors.hpp"
#include "lqu_lab/lqu.hpp"
#include "lqu_lab/model.hpp"
#include "lqu_lab/tolerances.hpp"

namespace lqu_lab {

namespace {

double parse_number(std::string_view text, std::string_view what) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || text.empty()) {
    throw InvalidSpec("cannot parse " + std::string(what) + " '" + std::string(text) + "'");
  }
  return v;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    out.push_back(text.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

PointResult from_w(const ComplexMatrix& rho, double lqu) {
  const WMatrix w = w_matrix(rho);
  PointResult r;
  r.lqu = lqu;
  r.lambda1 = std::max(w[0][0], w[1][1]);
  r.lambda2 = std::min(w[0][0], w[1][1]);
  r.lambda3 = w[2][2];
  return r;
}

}  // namespace

std::string_view to_string(Param p) {
  switch (p) {
    case Param::T:
      return "t";
    case Param::Ej:
      return "ej";
    case Param::Em:
      return "em";
    case Param::P:
      return "p";
  }
  return "?";
}

std::string_view to_string(Method m) {
  switch (m) {
    case Method::Closed:
      return "closed";
    case Method::Numeric:
      return "numeric";
    case Method::Bruteforce:
      return "bruteforce";
  }
  return "?";
}

Param parse_param(std::string_view name) {
  if (name == "T" || name == "t") return Param::T;
  if (name == "ej") return Param::Ej;
  if (name == "em") return Param::Em;
  if (name == "p") return Param::P;
  throw InvalidSpec("unknown sweep variable '" + std::string(name) +
                    "' (expected T, ej, em or p)");
}

Method parse_method(std::string_view name) {
  if (name == "closed") return Method::Closed;
  if (name == "numeric") return Method::Numeric;
  if (name == "bruteforce") return Method::Bruteforce;
  throw InvalidSpec("unknown method '" + std::string(name) +
                    "' (expected closed, numeric or bruteforce)");
}

double PointParams::get(Param which) const {
  switch (which) {
    case Param::T:
      return t;
    case Param::Ej:
      return ej;
    case Param::Em:
      return em;
    case Param::P:
      return p;
  }
  return 0.0;
}

void PointParams::set(Param which, double value) {
  switch (which) {
    case Param::T:
      t = value;
      break;
    case Param::Ej:
      ej = value;
      break;
    case Param::Em:
      em = value;
      break;
    case Param::P:
      p = value;
      break;
  }
}

PointResult evaluate_point(const PointParams& params, Method method) {
  const Temperature temp(params.t);
  std::optional<ChannelSpec> channel;
  if (params.channel) {
    channel = ChannelSpec{*params.channel, params.p};
    channel->validate();
  }

  if (method == Method::Closed) {
    const XStateParams x = thermal_xstate(params.ej, params.em, temp);
    const ClosedFormDiagnostics d = channel ? lqu_closed_channel(x, *channel) : lqu_closed_xstate(x);
    return {d.lqu, d.lambda1, d.lambda2, d.lambda3, d.fallback};
  }

  ComplexMatrix rho =
      gibbs_state_numeric(build_hamiltonian_x({params.ej, params.ej, params.em}), temp);
  if (channel) rho = apply_channel(rho, *channel, *channel);
  const double lqu =
      method == Method::Numeric ? lqu_numeric(rho) : lqu_bruteforce(rho, kBruteforceResolution);
  return from_w(rho, lqu);
}

std::vector<double> SweepVariable::values() const {
  if (!explicit_values.empty()) return explicit_values;
  std::vector<double> v(static_cast<std::size_t>(std::max(steps, 0)));
  const int last = steps - 1;
  for (int i = 0; i < steps; ++i) {
    const double frac = static_cast<double>(i) / last;
    if (spacing == Spacing::Linear) {
      v[i] = from + (to - from) * frac;
    } else {
      v[i] = std::exp(std::log(from) + (std::log(to) - std::log(from)) * frac);
    }
  }
  if (steps >= 2) {
    v.front() = from;
    v.back() = to;
  }
  return v;
}

std::string SweepVariable::describe() const {
  std::string s(to_string(param));
  if (!explicit_values.empty()) {
    s += " values";
    for (double x : explicit_values) s += " " + format_double(x);
    return s;
  }
  s += spacing == Spacing::Linear ? " linear " : " log ";
  s += format_double(from) + " " + format_double(to) + " " + std::to_string(steps);
  return s;
}

SweepVariable parse_sweep_variable(std::string_view text) {
  const std::size_t eq = text.find('=');
  if (eq == std::string_view::npos) {
    throw InvalidSpec("sweep variable '" + std::string(text) +
                      "' must look like NAME=FROM:TO:STEPS[:log] or NAME=V1,V2,...");
  }
  SweepVariable var;
  var.param = parse_param(text.substr(0, eq));
  const std::string_view body = text.substr(eq + 1);
  if (body.find(':') == std::string_view::npos) {
    for (std::string_view item : split(body, ',')) {
      var.explicit_values.push_back(parse_number(item, "sweep value"));
    }
    return var;
  }
  const auto parts = split(body, ':');
  if (parts.size() != 3 && parts.size() != 4) {
    throw InvalidSpec("sweep range '" + std::string(body) + "' must be FROM:TO:STEPS[:log]");
  }
  var.from = parse_number(parts[0], "sweep start");
  var.to = parse_number(parts[1], "sweep end");
  const double steps = parse_number(parts[2], "step count");
  if (steps != std::floor(steps) || steps > 1e7) {
    throw InvalidSpec("step count must be an integer");
  }
  var.steps = static_cast<int>(steps);
  if (parts.size() == 4) {
    if (parts[3] == "log") {
      var.spacing = Spacing::Log;
    } else if (parts[3] == "linear") {
      var.spacing = Spacing::Linear;
    } else {
      throw InvalidSpec("unknown spacing '" + std::string(parts[3]) + "'");
    }
  }
  return var;
}

void SweepSpec::validate() const {
  if (variables.empty() || variables.size() > 2) {
    throw InvalidSpec("a sweep needs one or two variables, got " +
                      std::to_string(variables.size()));
  }
  if (variables.size() == 2 && variables[0].param == variables[1].param) {
    throw InvalidSpec("swept variables must be distinct");
  }
  for (const SweepVariable& v : variables) {
    if (v.param == Param::P && !fixed.channel) {
      throw InvalidSpec("sweeping p requires a channel");
    }
    if (v.explicit_values.empty()) {
      if (v.steps < 2) throw InvalidSpec("sweep steps must be >= 2");
      if (!(v.from < v.to)) throw InvalidSpec("sweep range needs from < to");
      if (v.spacing == Spacing::Log && !(v.from > 0.0)) {
        throw InvalidSpec("log spacing requires from > 0");
      }
    }
  }
  // Numerical domain: every temperature and p the grid will visit.
  auto values_of = [&](Param which) {
    for (const SweepVariable& v : variables)
      if (v.param == which) return v.values();
    return std::vector<double>{fixed.get(which)};
  };
  for (double t : values_of(Param::T)) (void)Temperature(t);
  if (fixed.channel) {
    for (double p : values_of(Param::P)) ChannelSpec{*fixed.channel, p}.validate();
  }
  for (Param e : {Param::Ej, Param::Em}) {
    for (double v : values_of(e)) {
      if (!std::isfinite(v)) throw InvalidSpec("energies must be finite");
    }
  }
}

int default_thread_count() {
  if (const char* env = std::getenv("LQU_LAB_THREADS")) {
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && n > 0) return static_cast<int>(std::min(n, 256L));
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

SweepResult run_sweep(const SweepSpec& spec, int threads) {
  spec.validate();

  const std::vector<double> outer = spec.variables[0].values();
  const std::vector<double> inner =
      spec.variables.size() == 2 ? spec.variables[1].values() : std::vector<double>{0.0};
  const std::size_t total = outer.size() * inner.size();

  SweepResult result;
  result.metadata.push_back("lqu-lab " + std::string(kVersion));
  result.metadata.push_back("command: " + spec.label);
  for (const SweepVariable& v : spec.variables) result.metadata.push_back("vary: " + v.describe());
  {
    std::string fixed = "fixed:";
    for (Param p : {Param::T, Param::Ej, Param::Em, Param::P}) {
      const bool swept = std::any_of(spec.variables.begin(), spec.variables.end(),
                                     [&](const SweepVariable& v) { return v.param == p; });
      if (swept || (p == Param::P && !spec.fixed.channel)) continue;
      fixed += " " + std::string(to_string(p)) + "=" + format_double(spec.fixed.get(p));
    }
    result.metadata.push_back(fixed);
  }
  result.metadata.push_back("channel: " + (spec.fixed.channel
                                               ? std::string(to_string(*spec.fixed.channel))
                                               : std::string("none")));
  result.metadata.push_back("method: " + std::string(to_string(spec.method)));
  result.metadata.push_back(std::string("diagnostics: ") + (spec.diagnostics ? "true" : "false"));

  result.columns = {"t", "ej", "em"};
  if (spec.fixed.channel) result.columns.push_back("p");
  result.columns.push_back("lqu");
  if (spec.diagnostics) {
    result.columns.insert(result.columns.end(), {"lambda1", "lambda2", "lambda3"});
  }
  result.columns.push_back("fallback");

  result.rows.resize(total);
  for (std::size_t i = 0; i < total; ++i) {
    PointParams pp = spec.fixed;
    pp.set(spec.variables[0].param, outer[i / inner.size()]);
    if (spec.variables.size() == 2) pp.set(spec.variables[1].param, inner[i % inner.size()]);
    result.rows[i].params = pp;
  }

  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::size_t error_index = total;
  std::exception_ptr error;
  auto worker = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= total) return;
      try {
        result.rows[i].result = evaluate_point(result.rows[i].params, spec.method);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (i < error_index) {
          error_index = i;
          error = std::current_exception();
        }
      }
    }
  };

  const int n_threads = std::clamp(threads, 1, static_cast<int>(std::max<std::size_t>(total, 1)));
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(static_cast<std::size_t>(n_threads));
    for (int k = 0; k < n_threads; ++k) pool.emplace_back(worker);
  }
  if (error) std::rethrow_exception(error);
  return result;
}

std::string format_double(double v) {
  if (v == 0.0) return "0";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) throw InternalError("format_double: to_chars failed");
  return std::string(buf, ptr);
}

std::string SweepResult::to_csv() const {
  std::string out;
  for (const std::string& line : metadata) out += "# " + line + "\n";
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (i) out += ',';
    out += columns[i];
  }
  out += '\n';
  for (const SweepRow& row : rows) {
    bool first = true;
    for (const std::string& col : columns) {
      if (!first) out += ',';
      first = false;
      if (col == "t") {
        out += format_double(row.params.t);
      } else if (col == "ej") {
        out += format_double(row.params.ej);
      } else if (col == "em") {
        out += format_double(row.params.em);
      } else if (col == "p") {
        out += format_double(row.params.p);
      } else if (col == "lqu") {
        out += format_double(row.result.lqu);
      } else if (col == "lambda1") {
        out += format_double(row.result.lambda1);
      } else if (col == "lambda2") {
        out += format_double(row.result.lambda2);
      } else if (col == "lambda3") {
        out += format_double(row.result.lambda3);
      } else if (col == "fallback") {
        out += row.result.fallback ? '1' : '0';
      }
    }
    out += '\n';
  }
  return out;
}

void write_text_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open '" + path.string() + "' for writing");
  f << contents;
  f.close();
  if (!f) throw IoError("failed writing '" + path.string() + "'");
}

// ---------------------------------------------------------------------------
// Figure presets. 1-D curves use 201 points, surfaces 101 x 101, and the
// Max-LQU scans of fig3 use 1001 points on [0, 10].

namespace {

SweepVariable range(Param p, double from, double to, int steps) {
  SweepVariable v;
  v.param = p;
  v.from = from;
  v.to = to;
  v.steps = steps;
  return v;
}

SweepVariable list(Param p, std::vector<double> values) {
  SweepVariable v;
  v.param = p;
  v.explicit_values = std::move(values);
  return v;
}

SweepSpec make(std::string_view id, std::vector<SweepVariable> vars, double t, double ej,
               double em, std::optional<ChannelKind> channel = std::nullopt,
               bool diagnostics = false) {
  SweepSpec s;
  s.variables = std::move(vars);
  s.fixed.t = t;
  s.fixed.ej = ej;
  s.fixed.em = em;
  s.fixed.channel = channel;
  s.diagnostics = diagnostics;
  s.label = "figure " + std::string(id);
  return s;
}

constexpr int kCurve = 201;
constexpr int kSurface = 101;
constexpr int kMaxScan = 1001;

SweepVariable temperature_axis(int steps = kCurve) { return range(Param::T, 0.01, 1.0, steps); }

constexpr std::array<ChannelKind, 3> kChannels = {
    ChannelKind::AmplitudeDamping, ChannelKind::PhaseFlip, ChannelKind::PhaseDamping};

}  // namespace

const std::vector<std::string>& figure_ids() {
  static const std::vector<std::string> ids = {
      "fig1a", "fig1b", "fig2a", "fig2b", "fig3",  "fig4a", "fig4b",
      "fig5a", "fig5b", "fig6a", "fig6b", "fig6c", "fig7a", "fig7b",
      "fig7c", "fig8a", "fig8b", "fig8c", "fig9a", "fig9b"};
  return ids;
}

std::vector<FigureFile> figure_preset(std::string_view id) {
  const std::string name(id);
  auto single = [&](SweepSpec s) { return std::vector<FigureFile>{{name + ".csv", std::move(s)}}; };
  auto channel_of = [&](char letter) { return kChannels[static_cast<std::size_t>(letter - 'a')]; };

  if (id == "fig1a") return single(make(id, {list(Param::Ej, {0.5, 1, 2}), temperature_axis()}, 1, 0, 1));
  if (id == "fig1b") return single(make(id, {list(Param::Em, {0.5, 1, 2}), temperature_axis()}, 1, 1, 0));
  if (id == "fig2a") {
    return single(make(id, {list(Param::T, {0.05, 0.1, 0.5, 1}), range(Param::Ej, 0, 10, kCurve)},
                       1, 0, 1));
  }
  if (id == "fig2b") {
    return single(make(id, {list(Param::T, {0.05, 0.1, 0.5, 1}), range(Param::Em, 0, 10, kCurve)},
                       1, 1, 0));
  }
  if (id == "fig3") {
    const std::vector<double> temps = {0.05, 0.1, 0.2, 0.5};
    return {
        {"fig3_ej.csv", make(id, {list(Param::T, temps), range(Param::Ej, 0, 10, kMaxScan)}, 1, 0, 5)},
        {"fig3_em.csv", make(id, {list(Param::T, temps), range(Param::Em, 0, 10, kMaxScan)}, 1, 1.5, 0)},
    };
  }
  if (id == "fig4a") return single(make(id, {temperature_axis()}, 1, 0.5, 1, std::nullopt, true));
  if (id == "fig4b") return single(make(id, {temperature_axis()}, 1, 2, 1, std::nullopt, true));
  if (id == "fig5a") return single(make(id, {temperature_axis()}, 1, 1, 0.5, std::nullopt, true));
  if (id == "fig5b") return single(make(id, {temperature_axis()}, 1, 1, 2, std::nullopt, true));
  if (id.size() == 5 && id.substr(0, 4) == "fig6" && id[4] >= 'a' && id[4] <= 'c') {
    return single(make(id, {range(Param::P, 0, 1, kSurface), temperature_axis(kSurface)}, 1, 1, 1,
                       channel_of(id[4])));
  }
  if (id.size() == 5 && id.substr(0, 4) == "fig7" && id[4] >= 'a' && id[4] <= 'c') {
    return single(make(id, {range(Param::P, 0, 1, kSurface), range(Param::Em, 0, 5, kSurface)}, 0.05,
                       1, 0, channel_of(id[4])));
  }
  if (id.size() == 5 && id.substr(0, 4) == "fig8" && id[4] >= 'a' && id[4] <= 'c') {
    return single(make(id, {range(Param::P, 0, 1, kSurface), range(Param::Ej, 0, 5, kSurface)}, 0.05,
                       0, 1, channel_of(id[4])));
  }
  if (id == "fig9a" || id == "fig9b") {
    const double t = id == "fig9a" ? 0.05 : 1.0;
    std::vector<FigureFile> files;
    for (ChannelKind k : kChannels) {
      files.push_back({name + "_" + std::string(to_string(k)) + ".csv",
                       make(id, {range(Param::P, 0, 1, kCurve)}, t, 1, 1, k)});
    }
    return files;
  }
  throw UnknownFigureId("unknown figure id '" + name + "'");
}

std::vector<std::filesystem::path> run_figure(std::string_view id,
                                              const std::filesystem::path& out_dir,
                                              int threads) {
  const std::vector<FigureFile> files = figure_preset(id);
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create directory '" + out_dir.string() + "': " + ec.message());
  std::vector<std::filesystem::path> written;
  for (const FigureFile& f : files) {
    const std::filesystem::path path = out_dir / f.filename;
    write_text_file(path, run_sweep(f.spec, threads).to_csv());
    written.push_back(path);
  }
  return written;
}

}  // namespace lqu_lab
