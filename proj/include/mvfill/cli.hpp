#pragma once

#include <iosfwd>
#include <string_view>
#include <vector>

#include "mvfill/config.hpp"

namespace mvfill {

enum ExitCode : int {
    kExitOk = 0,
    kExitConfig = 1,
    kExitNumerical = 2,
    kExitAcceptance = 3,
};

struct OracleCase {
    double thiele;              // m L
    double rate;                // k, m/s
    double max_relative_error;  // over all cell centres
};

inline constexpr double kOracleTolerance = 0.005;

/// Numeric pore solve against the cosh profile for m L in {0.5, 2, 5.66} on the
/// configured radius, depth, cell count and diffusivity, with no film, no
/// streaming and an inert floor.
std::vector<OracleCase> oracle_suite(const RunConfig& cfg);

/// Runs `delta`, `simulate`, `doe` or `oracle-check`. Human-readable results go
/// to `out`; failures produce one `error:` line on `err`.
int execute(std::string_view command, const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace mvfill
