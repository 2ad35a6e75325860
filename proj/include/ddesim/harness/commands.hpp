// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <ostream>
#include <string>

#include "ddesim/evolution.hpp"
#include "ddesim/harness/config.hpp"
#include "ddesim/spectra.hpp"

namespace ddesim::harness {

/// Formats a double with 17 significant digits ("nan", "inf", "-inf" for
/// non-finite values).
std::string format_double(double v);

/// Evolution matrix plus spectrum for the configured window.
struct SpectrumRun {
  EvolutionMatrices mats;
  SpectrumResult spectrum;
  bool compact = true;  ///< r - s >= tau
};

SpectrumRun run_spectrum(const RunConfig& cfg);

/// Modulus of the leading multiplier, NaN when nothing was retained.
double dominant_modulus(const SpectrumResult& result);

/// What a command reports back to the CLI.
struct CommandResult {
  std::optional<Verdict> verdict;
};

/// Each command writes its CSV (with a '#'-prefixed JSON config echo) to
/// `csv` and human-readable lines (verdict, warnings) to `log`.
CommandResult cmd_spectrum(const RunConfig& cfg, std::ostream& csv, std::ostream& log);
CommandResult cmd_converge(const RunConfig& cfg, std::ostream& csv, std::ostream& log);
CommandResult cmd_chart(const RunConfig& cfg, std::ostream& csv, std::ostream& log);
CommandResult cmd_floquet(const RunConfig& cfg, std::ostream& csv, std::ostream& log);
CommandResult cmd_solve(const RunConfig& cfg, std::ostream& csv, std::ostream& log);

}  // namespace ddesim::harness
