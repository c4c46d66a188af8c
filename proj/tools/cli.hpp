#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "esr/analytic.hpp"

namespace esr::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kCheckFailed = 1;
inline constexpr int kBadScenario = 2;
inline constexpr int kBadFlags = 3;

enum class SweepVariable { n, k };

struct SweepSpec {
  SweepVariable variable = SweepVariable::n;
  std::vector<int> values;
  std::vector<Method> methods;
  std::vector<Mode> modes;
};

/// Log-spaced integers from start to stop inclusive, rounded and
/// de-duplicated.
std::vector<int> log_spaced(int start, int stop, int points);

/// CSV header shared by `eval --out` and `sweep`.
inline constexpr const char *kCsvHeader = "variable,value,mode,method,rate_d,rate_e,rate_s,stderr";

/// One CSV row; rates in shortest round-trip form, empty stderr when absent.
std::string csv_row(SweepVariable variable, int value, const EsrResult &r);

/// Entry point behind the `esr` binary. `args` excludes the program name.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace esr::cli
