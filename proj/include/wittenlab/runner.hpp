#pragma once

#include "wittenlab/config.hpp"

namespace wittenlab {

void cmd_spectrum(const RunConfig& config);
void cmd_flow(const RunConfig& config);
void cmd_morse_check(const RunConfig& config);
void cmd_oracle(const RunConfig& config);
void cmd_foliation(const RunConfig& config);

// Dispatch on config.command; throws Error for every failure mode.
void run_command(const RunConfig& config);

}  // namespace wittenlab
