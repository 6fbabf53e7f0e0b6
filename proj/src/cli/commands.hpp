#pragma once

#include <iosfwd>

#include "cli/result_doc.hpp"

namespace hardysim::cli {

// Exit codes shared by every subcommand:
//   0  success (hardy: contradiction certified)
//   1  computation succeeded but the verdict is false (hardy only)
//   2  configuration error; nothing is written to the output path
//   3  numerical error during the computation
inline constexpr int kExitSuccess = 0;
inline constexpr int kExitVerdictFalse = 1;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitNumericalError = 3;

int cmd_hardy(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_experiment(const RunConfig& config, int n, std::ostream& out, std::ostream& err);
int cmd_sweep(const RunConfig& config, const std::string& axis, std::ostream& out,
              std::ostream& err);
int cmd_sample(const RunConfig& config, int n, std::ostream& out, std::ostream& err);

}  // namespace hardysim::cli
