#pragma once

#include "helm/config.hpp"

namespace helm {

/**
 * Execute the configured command and write its CSV artifact.
 * Returns the process exit code: 0 on pass, 1 if an acceptance predicate
 * failed, 2 on configuration errors (also raised as ConfigError by
 * parse_config before this is reached).
 */
int run_command(RunConfig& config);

}  // namespace helm
