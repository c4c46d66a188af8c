#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "esr/monte_carlo.hpp"
#include "esr/scenario_io.hpp"
#include "esr/validation.hpp"

namespace esr::cli {

namespace {

class UsageError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

const std::map<std::string, Mode> kModeNames = {
    {"nc", Mode::non_colluding}, {"non-colluding", Mode::non_colluding},
    {"c", Mode::colluding},      {"colluding", Mode::colluding}};

const std::map<std::string, Method> kMethodNames = {
    {"a", Method::analytic},        {"analytic", Method::analytic},
    {"mc", Method::monte_carlo},    {"monte-carlo", Method::monte_carlo},
    {"asym", Method::asymptotic},   {"asymptotic", Method::asymptotic},
    {"largek", Method::large_k},    {"large-K", Method::large_k},
    {"baseline", Method::baseline}};

template <class T>
T lookup(const std::map<std::string, T> &table, const std::string &name, const char *what) {
  const auto it = table.find(name);
  if (it == table.end())
    throw UsageError(std::string("unknown ") + what + " '" + name + "'");
  return it->second;
}

std::vector<std::string> split(const std::string &text, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep))
    if (!item.empty())
      parts.push_back(item);
  return parts;
}

int parse_int(const std::string &text, const char *what) {
  int value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size())
    throw UsageError(std::string("invalid ") + what + " '" + text + "'");
  return value;
}

std::string shortest(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::string fixed4(double v) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os << std::fixed << std::setprecision(4) << v;
  return os.str();
}

// Writes `content` to `path` in one go; a partially written file is removed.
void write_file(const std::filesystem::path &path, const std::string &content) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (f)
    f << content;
  if (!f) {
    f.close();
    std::error_code ec;
    std::filesystem::remove(path, ec);
    throw std::runtime_error("cannot write '" + path.string() + "'");
  }
}

struct CommonFlags {
  std::string scenario_file;
  std::optional<int> n;
  std::optional<int> k;
};

Scenario load_with_overrides(const CommonFlags &flags) {
  Scenario s = load_scenario(flags.scenario_file);
  if (flags.k) {
    if (*flags.k < 1)
      throw UsageError("--k must be >= 1");
    s.eves = reference_eve_positions(static_cast<std::size_t>(*flags.k));
  }
  if (flags.n) {
    if (*flags.n < 1)
      throw UsageError("--n must be >= 1");
    s.n_elements = *flags.n;
  }
  return s;
}

void check_combination(Method method, Mode mode) {
  if (method == Method::large_k && mode == Mode::non_colluding)
    throw UsageError("the large-K approximation applies to colluding Eves only");
}

// With the surface switched off the closed forms reduce to the direct links,
// which the baseline evaluates exactly.
EsrResult evaluate(const Scenario &s, int n, Mode mode, Method method, std::size_t trials,
                   std::uint64_t seed) {
  if (s.eta == 0.0 && method != Method::monte_carlo)
    return baseline_no_ris(s, mode);
  switch (method) {
  case Method::analytic:
    return mode == Mode::non_colluding ? esr_noncolluding(s, n) : esr_colluding(s, n);
  case Method::monte_carlo:
    return estimate_esr(s, n, McConfig{trials, seed, mode});
  case Method::asymptotic:
    return esr_asymptotic(s, n, mode);
  case Method::large_k:
    return esr_largek_colluding(s, n);
  case Method::baseline:
    return baseline_no_ris(s, mode);
  }
  throw UsageError("unknown method");
}

void print_result(std::ostream &out, const Scenario &s, int n, const EsrResult &r) {
  out << "method: " << to_string(r.method) << '\n'
      << "mode: " << to_string(r.mode) << '\n'
      << "N: " << n << '\n'
      << "K: " << s.eve_count() << '\n'
      << "rate_d: " << fixed4(r.rate_d) << " bits/s/Hz\n"
      << "rate_e: " << fixed4(r.rate_e) << " bits/s/Hz\n"
      << "rate_s: " << fixed4(r.rate_s) << " bits/s/Hz\n";
  if (r.stderr_bits)
    out << "stderr: " << fixed4(*r.stderr_bits) << " bits/s/Hz\n";
  if (r.means_jittered)
    out << "warning: clustered Eve means were separated before evaluation\n";
}

} // namespace

std::vector<int> log_spaced(int start, int stop, int points) {
  if (start < 1 || stop < start || points < 1)
    throw UsageError("range needs 1 <= start <= stop and points >= 1");
  std::vector<int> out;
  for (int i = 0; i < points; ++i) {
    const double frac = points == 1 ? 0.0 : static_cast<double>(i) / (points - 1);
    const double v = static_cast<double>(start) *
                     std::pow(static_cast<double>(stop) / static_cast<double>(start), frac);
    const int rounded = static_cast<int>(std::lround(v));
    if (out.empty() || rounded > out.back())
      out.push_back(rounded);
  }
  return out;
}

std::string csv_row(SweepVariable variable, int value, const EsrResult &r) {
  std::string row = variable == SweepVariable::n ? "N" : "K";
  row += ',' + std::to_string(value) + ',' + std::string(to_string(r.mode)) + ',' +
         std::string(to_string(r.method)) + ',' + shortest(r.rate_d) + ',' + shortest(r.rate_e) +
         ',' + shortest(r.rate_s) + ',';
  if (r.stderr_bits)
    row += shortest(*r.stderr_bits);
  return row;
}

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  CLI::App app{"Ergodic secrecy rate of surface-assisted links with discrete phase shifts"};
  app.require_subcommand(1);

  CommonFlags common;
  std::string mode_name = "nc";
  std::string method_name = "a";
  std::size_t trials = 100000;
  std::uint64_t seed = 1;
  std::string out_path;

  auto add_common = [&](CLI::App *cmd) {
    cmd->add_option("--scenario", common.scenario_file, "Scenario JSON file")->required();
    cmd->add_option("--n", common.n, "Number of surface elements (overrides the scenario)");
    cmd->add_option("--k", common.k, "Number of Eves, placed at (90k/K, -20)");
  };

  CLI::App *eval = app.add_subcommand("eval", "Evaluate the ESR at one point");
  add_common(eval);
  eval->add_option("--mode", mode_name, "nc | c");
  eval->add_option("--method", method_name, "a | mc | asym | largek");
  CLI::Option *eval_trials = eval->add_option("--trials", trials, "Monte Carlo trials");
  CLI::Option *eval_seed = eval->add_option("--seed", seed, "Monte Carlo seed");
  eval->add_option("--out", out_path, "CSV file with a single row");

  CLI::App *baseline = app.add_subcommand("baseline", "ESR without the reflecting surface");
  add_common(baseline);
  baseline->add_option("--mode", mode_name, "nc | c");
  baseline->add_option("--out", out_path, "CSV output");

  std::string var_name = "N";
  std::string values_text;
  std::string range_text;
  std::string methods_text = "a";
  std::string modes_text = "nc";
  CLI::App *sweep = app.add_subcommand("sweep", "Sweep N or K and write CSV");
  add_common(sweep);
  sweep->add_option("--var", var_name, "N | K");
  auto *values_opt = sweep->add_option("--values", values_text, "Comma-separated values");
  auto *range_opt = sweep->add_option("--range", range_text, "start:stop:points, log-spaced");
  values_opt->excludes(range_opt);
  sweep->add_option("--methods", methods_text, "Comma list of a, mc, asym, largek, baseline");
  sweep->add_option("--modes", modes_text, "Comma list of nc, c");
  sweep->add_option("--trials", trials, "Monte Carlo trials");
  sweep->add_option("--seed", seed, "Monte Carlo seed");
  sweep->add_option("--out", out_path, "CSV output file")->required();

  std::size_t validate_trials = 10000;
  std::string report_base = "validation";
  CLI::App *validate = app.add_subcommand("validate", "Run the statistical validation suite");
  add_common(validate);
  validate->add_option("--trials", validate_trials, "Trials per check (>= 1000)");
  validate->add_option("--seed", seed, "Seed");
  validate->add_option("--out", report_base, "Report path prefix (.txt and .json are added)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp &) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError &e) {
    err << "esr: " << e.what() << '\n';
    return kBadFlags;
  }

  try {
    if (eval->parsed()) {
      const Mode mode = lookup(kModeNames, mode_name, "mode");
      const Method method = lookup(kMethodNames, method_name, "method");
      if (method == Method::baseline)
        throw UsageError("use the 'baseline' subcommand for the no-surface ESR");
      check_combination(method, mode);
      if (method != Method::monte_carlo && (eval_trials->count() > 0 || eval_seed->count() > 0))
        throw UsageError("--trials/--seed only apply to --method mc");
      const Scenario s = load_with_overrides(common);
      const EsrResult r = evaluate(s, s.n_elements, mode, method, trials, seed);
      print_result(out, s, s.n_elements, r);
      if (!out_path.empty())
        write_file(out_path, std::string(kCsvHeader) + '\n' +
                                 csv_row(SweepVariable::n, s.n_elements, r) + '\n');
      return kOk;
    }

    if (baseline->parsed()) {
      const Mode mode = lookup(kModeNames, mode_name, "mode");
      const Scenario s = load_with_overrides(common);
      const EsrResult r = baseline_no_ris(s, mode);
      print_result(out, s, s.n_elements, r);
      if (!out_path.empty())
        write_file(out_path, std::string(kCsvHeader) + '\n' +
                                 csv_row(SweepVariable::n, s.n_elements, r) + '\n');
      return kOk;
    }

    if (sweep->parsed()) {
      SweepSpec spec;
      if (var_name == "N" || var_name == "n")
        spec.variable = SweepVariable::n;
      else if (var_name == "K" || var_name == "k")
        spec.variable = SweepVariable::k;
      else
        throw UsageError("--var must be N or K");
      if (!values_text.empty()) {
        for (const auto &v : split(values_text, ','))
          spec.values.push_back(parse_int(v, "value"));
      } else if (!range_text.empty()) {
        const auto parts = split(range_text, ':');
        if (parts.size() != 3)
          throw UsageError("--range must be start:stop:points");
        spec.values = log_spaced(parse_int(parts[0], "start"), parse_int(parts[1], "stop"),
                                 parse_int(parts[2], "points"));
      } else {
        throw UsageError("sweep needs --values or --range");
      }
      for (std::size_t i = 0; i < spec.values.size(); ++i)
        if (spec.values[i] < 1 || (i > 0 && spec.values[i] <= spec.values[i - 1]))
          throw UsageError("sweep values must be strictly increasing positive integers");
      for (const auto &m : split(methods_text, ','))
        spec.methods.push_back(lookup(kMethodNames, m, "method"));
      for (const auto &m : split(modes_text, ','))
        spec.modes.push_back(lookup(kModeNames, m, "mode"));
      if (spec.methods.empty() || spec.modes.empty())
        throw UsageError("sweep needs at least one method and one mode");
      std::sort(spec.methods.begin(), spec.methods.end());
      spec.methods.erase(std::unique(spec.methods.begin(), spec.methods.end()), spec.methods.end());
      std::sort(spec.modes.begin(), spec.modes.end());
      spec.modes.erase(std::unique(spec.modes.begin(), spec.modes.end()), spec.modes.end());
      for (Mode mode : spec.modes)
        for (Method method : spec.methods)
          check_combination(method, mode);
      const bool uses_mc = std::find(spec.methods.begin(), spec.methods.end(),
                                     Method::monte_carlo) != spec.methods.end();

      const Scenario base = load_with_overrides(common);
      std::string csv = std::string(kCsvHeader) + '\n';
      for (int value : spec.values) {
        Scenario s = base;
        if (spec.variable == SweepVariable::n)
          s.n_elements = value;
        else
          s.eves = reference_eve_positions(static_cast<std::size_t>(value));
        std::optional<McSummary> mc;
        if (uses_mc)
          mc = run_monte_carlo(s, s.n_elements, trials, seed);
        for (Mode mode : spec.modes)
          for (Method method : spec.methods) {
            const EsrResult r = method == Method::monte_carlo
                                    ? mc->result(mode)
                                    : evaluate(s, s.n_elements, mode, method, trials, seed);
            csv += csv_row(spec.variable, value, r) + '\n';
          }
      }
      write_file(out_path, csv);
      out << "wrote " << out_path << '\n';
      return kOk;
    }

    if (validate->parsed()) {
      if (validate_trials < kMinValidationTrials)
        throw UsageError("--trials must be at least 1000 for validation");
      const Scenario s = load_with_overrides(common);
      const ValidationReport report =
          run_validation_suite(s, s.n_elements, validate_trials, seed);
      const std::string text = report.to_text();
      write_file(report_base + ".txt", text);
      write_file(report_base + ".json", report.to_json());
      out << text;
      return report.passed() ? kOk : kCheckFailed;
    }
  } catch (const ScenarioError &e) {
    err << "esr: " << e.what() << '\n';
    return kBadScenario;
  } catch (const UsageError &e) {
    err << "esr: " << e.what() << '\n';
    return kBadFlags;
  } catch (const std::invalid_argument &e) {
    err << "esr: " << e.what() << '\n';
    return kBadFlags;
  } catch (const std::domain_error &e) {
    err << "esr: " << e.what() << '\n';
    return kBadFlags;
  } catch (const std::exception &e) {
    err << "esr: " << e.what() << '\n';
    return kCheckFailed;
  }
  return kBadFlags;
}

} // namespace esr::cli
