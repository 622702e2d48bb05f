#pragma once

#include "cli/config.hpp"
#include "cli/output.hpp"
#include "phononet/execution.hpp"

namespace phononet::cli {

// Runs one experiment. Rates are rescaled internally (to gamma, K or
// Gamma_max) so the output columns are dimensionless unless named _hz.
Table run_experiment(const RunConfig& config, Execution exec = Execution::parallel);

}  // namespace phononet::cli
