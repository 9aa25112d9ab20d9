// lqu-lab: thermal local quantum uncertainty of two coupled charge qubits.
//
//   lqu-lab point    --ej 1 --em 1 --T 0.5 [--channel pf --p 0.3] [--method closed]
//   lqu-lab sweep    --vary T=0.01:1:100 --ej 1 --em 1 --diagnostics --out t.csv
//   lqu-lab figure   fig4a --out figures/
//   lqu-lab selftest
//
// Exit codes: 0 success, 1 usage error, 2 numerical-domain error, 3 I/O error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "lqu_lab/errors.hpp"
#include "lqu_lab/selftest.hpp"
#include "lqu_lab/sweep.hpp"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitDomain = 2;
constexpr int kExitIo = 3;

const std::vector<std::string> kConfigKeys = {"ej",     "em",     "T",           "channel",
                                              "p",      "method", "diagnostics", "out",
                                              "vary"};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool on_command_line(const std::vector<std::string>& args, const std::string& key) {
  const std::string flag = "--" + key;
  for (const std::string& a : args) {
    if (a == flag || a.rfind(flag + "=", 0) == 0) return true;
  }
  return false;
}

// Flat key=value config file; '#' starts a comment. Keys mirror the long
// flags. Entries whose flag also appears on the command line are dropped, so
// the command line wins.
std::vector<std::string> config_arguments(const std::string& path,
                                          const std::vector<std::string>& args) {
  std::ifstream in(path);
  if (!in) throw lqu_lab::IoError("cannot read config file '" + path + "'");
  std::vector<std::string> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw lqu_lab::InvalidSpec(path + ":" + std::to_string(lineno) + ": expected key=value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (std::find(kConfigKeys.begin(), kConfigKeys.end(), key) == kConfigKeys.end()) {
      throw lqu_lab::InvalidSpec(path + ":" + std::to_string(lineno) + ": unknown key '" + key +
                                 "'");
    }
    if (on_command_line(args, key)) continue;
    if (key == "diagnostics") {
      if (value == "true" || value == "1" || value == "yes") {
        out.push_back("--diagnostics");
      } else if (value != "false" && value != "0" && value != "no") {
        throw lqu_lab::InvalidSpec(path + ":" + std::to_string(lineno) +
                                   ": diagnostics must be true or false");
      }
      continue;
    }
    out.push_back("--" + key);
    out.push_back(value);
  }
  return out;
}

std::optional<std::string> find_config(const std::vector<std::string>& args) {
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) return args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) return args[i].substr(9);
  }
  return std::nullopt;
}

struct PointOptions {
  double ej = 0.0;
  double em = 0.0;
  double t = 1.0;
  std::string channel;
  std::optional<double> p;
  std::string method = "closed";
  bool diagnostics = false;
  std::string out;
  std::string config;
};

void add_point_options(CLI::App* cmd, PointOptions& o) {
  cmd->add_option("--ej", o.ej, "Josephson energy (both qubits)");
  cmd->add_option("--em", o.em, "Mutual coupling energy");
  cmd->add_option("--T", o.t, "Temperature (k_B = 1), at least 1e-4");
  cmd->add_option("--channel", o.channel, "Decoherence channel on both qubits: ad, pf or pd");
  cmd->add_option("--p", o.p, "Decoherence parameter in [0, 1]");
  cmd->add_option("--method", o.method, "closed, numeric or bruteforce");
  cmd->add_flag("--diagnostics", o.diagnostics, "Also report lambda1, lambda2, lambda3");
  cmd->add_option("--out", o.out, "Write CSV to this path instead of stdout");
  cmd->add_option("--config", o.config, "Flat key=value file mirroring these flags");
}

lqu_lab::PointParams to_params(const PointOptions& o) {
  lqu_lab::PointParams pp;
  pp.ej = o.ej;
  pp.em = o.em;
  pp.t = o.t;
  if (!o.channel.empty()) {
    pp.channel = lqu_lab::parse_channel_kind(o.channel);
    pp.p = o.p.value_or(0.0);
  } else if (o.p) {
    throw lqu_lab::InvalidSpec("--p given without --channel");
  }
  return pp;
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
  } else {
    lqu_lab::write_text_file(out, text);
  }
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  if (const auto cfg = find_config(args)) {
    // Subcommand name stays first; config-derived flags go right after it.
    std::vector<std::string> extra = config_arguments(*cfg, args);
    const auto insert_at = args.empty() ? args.end() : args.begin() + 1;
    args.insert(insert_at, extra.begin(), extra.end());
  }

  CLI::App app{"Thermal local quantum uncertainty of two coupled superconducting qubits"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(lqu_lab::kVersion));

  PointOptions point_opts;
  CLI::App* point = app.add_subcommand("point", "Evaluate LQU at one parameter point");
  add_point_options(point, point_opts);

  PointOptions sweep_opts;
  std::vector<std::string> vary;
  CLI::App* sweep = app.add_subcommand("sweep", "Evaluate LQU over a 1-D or 2-D grid");
  add_point_options(sweep, sweep_opts);
  sweep->add_option("--vary", vary,
                    "NAME=FROM:TO:STEPS[:log] or NAME=V1,V2,... (NAME in T, ej, em, p); "
                    "give once or twice, outermost first")
      ->required();

  std::string figure_id;
  std::string figure_out = ".";
  CLI::App* figure = app.add_subcommand("figure", "Regenerate the data behind a figure preset");
  figure->add_option("id", figure_id, "Preset id (fig1a ... fig9b) or 'all'")->required();
  figure->add_option("--out", figure_out, "Output directory");

  bool inject_fault = false;
  CLI::App* selftest = app.add_subcommand("selftest", "Run the invariant suite");
  selftest->add_flag("--inject-fault", inject_fault,
                     "Flip a sign in the closed form; the oracle checks must fail");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  if (*point) {
    const lqu_lab::PointParams pp = to_params(point_opts);
    const lqu_lab::Method method = lqu_lab::parse_method(point_opts.method);
    const lqu_lab::PointResult r = lqu_lab::evaluate_point(pp, method);
    std::ostringstream os;
    os << "lqu=" << lqu_lab::format_double(r.lqu) << "\n";
    if (point_opts.diagnostics) {
      os << "lambda1=" << lqu_lab::format_double(r.lambda1) << "\n"
         << "lambda2=" << lqu_lab::format_double(r.lambda2) << "\n"
         << "lambda3=" << lqu_lab::format_double(r.lambda3) << "\n";
    }
    os << "method=" << lqu_lab::to_string(method) << "\n"
       << "fallback=" << (r.fallback ? 1 : 0) << "\n";
    emit(os.str(), point_opts.out);
    return 0;
  }

  if (*sweep) {
    lqu_lab::SweepSpec spec;
    spec.fixed = to_params(sweep_opts);
    spec.method = lqu_lab::parse_method(sweep_opts.method);
    spec.diagnostics = sweep_opts.diagnostics;
    for (const std::string& v : vary) spec.variables.push_back(lqu_lab::parse_sweep_variable(v));
    emit(lqu_lab::run_sweep(spec).to_csv(), sweep_opts.out);
    return 0;
  }

  if (*figure) {
    std::vector<std::string> ids;
    if (figure_id == "all") {
      ids = lqu_lab::figure_ids();
    } else {
      ids.push_back(figure_id);
    }
    for (const std::string& id : ids) {
      for (const auto& path : lqu_lab::run_figure(id, figure_out)) {
        std::cout << path.string() << "\n";
      }
    }
    return 0;
  }

  if (*selftest) {
    lqu_lab::SelfTestOptions opts;
    opts.inject_fault = inject_fault;
    return lqu_lab::run_selftest(std::cout, opts) ? 0 : 1;
  }
  return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const lqu_lab::IoError& e) {
    std::cerr << "lqu-lab: " << e.what() << "\n";
    return kExitIo;
  } catch (const lqu_lab::InvalidSpec& e) {
    std::cerr << "lqu-lab: " << e.what() << "\n";
    return kExitUsage;
  } catch (const lqu_lab::DomainError& e) {
    std::cerr << "lqu-lab: " << e.what() << "\n";
    return kExitDomain;
  } catch (const std::exception& e) {
    std::cerr << "lqu-lab: " << e.what() << "\n";
    return kExitDomain;
  }
}
