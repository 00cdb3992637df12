#pragma once

#include <filesystem>
#include <vector>

#include "seqdisc/states.hpp"

namespace seqdisc::figures {

/// One sample of the benchmark sweep; both noise insertions share the same
/// strength (gamma1 = gamma2 = gamma).
struct SweepRow {
  double gamma = 0.0;
  double helstrom = 0.0;    ///< noiseless two-hypothesis optimum (flat)
  double n1 = 0.0;          ///< best single receiver under the noise
  double n2_closed = 0.0;   ///< best receiver pair, closed form
  double n2_numeric = 0.0;  ///< best receiver pair, grid search
};

/// Sweeps gamma over [0, 1] with the given number of samples (>= 2).
std::vector<SweepRow> gamma_sweep(const Ensemble& ensemble, int steps,
                                  int grid_size);

/// Qubit pair with Bloch vectors (0.3, 0.3, 0.3) and (0.3, 0.3, -0.3).
Ensemble figure1_ensemble(double q0);

/// Qubit pair with Bloch vectors (0.2, 0.3, -0.4) and (-0.2, -0.3, 0.35).
Ensemble figure2_ensemble(double q0);

/// Writes figure1.csv and figure2.csv into the directory: per figure one
/// sweep for priors (0.5, 0.5) and one for (0.55, 0.45), side by side.
/// Returns the written paths.
std::vector<std::filesystem::path> write_figures(
    const std::filesystem::path& directory, int steps, int grid_size);

}  // namespace seqdisc::figures
