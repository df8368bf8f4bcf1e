#pragma once

// Sweep manifest: the run-config keys set the baseline, plus
//
//   parameters       comma-separated list to sweep (default: all twelve)
//   grid.<param>     min, default, max (default: the standard grid)
//   budget           desk | none (default desk)
//   budget.<param>   a single budget override
//   parallel         true | false, run the sweep's runs concurrently

#include <istream>
#include <string>
#include <vector>

#include "azsweep/cli/run_config.hpp"
#include "azsweep/sweep/sweep.hpp"

namespace azsweep::cli {

struct SweepManifest {
  RunConfig base;
  sweep::SweepGrid grid;  // already restricted to the swept parameters
  sweep::BudgetOverrides budget;
  bool parallel = false;
};

SweepManifest parse_manifest(std::istream& in);

}  // namespace azsweep::cli
