// Acceptance gate for the toolkit. Each criterion prints one line,
// [PASS]/[FAIL], and the binary exits nonzero if any criterion fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#ifndef _WIN32
#include <sys/wait.h>
#endif

#include "seqdisc/channels.hpp"
#include "seqdisc/discrimination.hpp"
#include "seqdisc/errors.hpp"
#include "seqdisc/instruments.hpp"
#include "seqdisc/linalg.hpp"
#include "seqdisc/noisy_opt.hpp"
#include "seqdisc/states.hpp"
#include "test_helpers.hpp"

using namespace seqdisc;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

std::string sci(double v) {
  std::ostringstream out;
  out.precision(2);
  out << std::scientific << v;
  return out.str();
}

// --- 1. The three success representations agree on random protocols. -------

Outcome check_representations() {
  testutil::Rng rng(1001);
  const auto start = std::chrono::steady_clock::now();
  double worst = 0.0;
  for (int trial = 0; trial < 500; ++trial) {
    const int d = 2 + static_cast<int>(rng() % 3);   // 2..4
    const int r = 2 + static_cast<int>(rng() % 2);   // 2..3
    const int n = 1 + static_cast<int>(rng() % 4);   // 1..4
    const Ensemble e = testutil::random_ensemble(d, r, rng);
    const Protocol protocol = testutil::random_protocol(d, r, n, rng);
    const double direct = success_direct(protocol, e);
    const double chain = success_chain(protocol, e);
    const double product = success_product(protocol, e).success_probability;
    worst = std::max({worst, std::abs(direct - chain),
                      std::abs(direct - product)});
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  Outcome out;
  out.ok = worst <= 1e-10 && seconds < 30.0;
  out.detail = "max deviation " + sci(worst) + " over 500 protocols in " +
               sci(seconds) + " s";
  return out;
}

// --- 2. The repeated projective receiver saturates the two-state optimum. --

Outcome check_saturation() {
  testutil::Rng rng(1002);
  double worst = 0.0;
  int rotated_runs = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int d = trial % 2 == 0 ? 2 : 3;
    const Ensemble e = testutil::random_ensemble(d, 2, rng);
    const double bound = helstrom_bound(e);
    for (int n = 1; n <= 5; ++n) {
      const Protocol protocol = optimal_two_state_protocol(e, n);
      worst = std::max(worst, std::abs(noisy_success(protocol, e) - bound));
    }

    const auto [p1, p2] = optimal_projectors(e);
    const int rank = static_cast<int>(std::lround(p1.trace().real()));
    if (rank == 0 || rank == d) continue;  // rotated variant undefined
    ++rotated_runs;
    const CMatrix basis = testutil::random_unitary(d, rng);
    for (int n = 1; n <= 5; ++n) {
      const Protocol protocol = optimal_two_state_protocol(e, n, basis);
      worst = std::max(worst, std::abs(noisy_success(protocol, e) - bound));
    }
  }
  Outcome out;
  out.ok = worst <= 1e-10 && rotated_runs > 150;
  out.detail = "max deviation " + sci(worst) + " over 200 ensembles, N=1..5, " +
               std::to_string(rotated_runs) + " rotated variants";
  return out;
}

// --- 3. The first-receiver condition validator accepts and rejects. --------

Outcome check_condition_path() {
  testutil::Rng rng(1003);
  double worst = 0.0;
  int rejected = 0;
  const int trials = 60;
  for (int trial = 0; trial < trials; ++trial) {
    const int d = 2 + trial % 3;
    const Ensemble e = [&] {
      while (true) {
        Ensemble candidate = testutil::random_ensemble(d, 2, rng);
        const auto [p1, p2] = optimal_projectors(candidate);
        const int rank = static_cast<int>(std::lround(p1.trace().real()));
        if (rank > 0 && rank < d) return candidate;  // rotated variant defined
      }
    }();
    const double bound = helstrom_bound(e);
    const CMatrix basis = testutil::random_unitary(d, rng);
    const Protocol rotated = optimal_two_state_protocol(e, 2, basis);
    const std::vector<CMatrix> kraus = {rotated.receivers()[0].kraus(0)[0],
                                        rotated.receivers()[0].kraus(1)[0]};
    const std::vector<CMatrix> projectors = {
        rotated.receivers()[1].kraus(0)[0], rotated.receivers()[1].kraus(1)[0]};

    for (int n = 1; n <= 4; ++n) {
      const Protocol protocol = repeatable_receiver_protocol(kraus, projectors, n);
      worst = std::max(worst, std::abs(noisy_success(protocol, e) - bound));
    }

    std::vector<CMatrix> perturbed = kraus;
    perturbed[0] += 1e-3 * testutil::random_gaussian(d, d, rng);
    try {
      (void)repeatable_receiver_protocol(perturbed, projectors, 2);
    } catch (const ConditionNotSatisfied&) {
      ++rejected;
    }
  }
  Outcome out;
  out.ok = worst <= 1e-10 && rejected == trials;
  out.detail = "max deviation " + sci(worst) + ", " + std::to_string(rejected) +
               "/" + std::to_string(trials) + " perturbed receivers rejected";
  return out;
}

// --- 4. The controlled-flip realization reproduces the Lueders receiver. ---

Outcome check_realization() {
  testutil::Rng rng(1004);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const int d = 2 + trial % 3;
    const CMatrix g = testutil::random_gaussian(d, d, rng);
    const CMatrix h = g + g.adjoint();
    const CMatrix p1 = positive_projector(h);
    const CMatrix p2 = CMatrix::Identity(d, d) - p1;

    StatisticalRealization xi = [&] {
      if (trial % 2 == 0) return indirect_realization_for_optimal(p1, p2);
      CVector b = testutil::random_gaussian(2, 1, rng);
      b.normalize();
      return indirect_realization_for_optimal(p1, p2, b);
    }();
    const Instrument realized = instrument_from_realization(xi);
    const Instrument direct = luders_from_projectors({p1, p2});

    for (const CMatrix& basis_op : testutil::spanning_states(d)) {
      for (int w = 0; w < 2; ++w) {
        worst = std::max(worst, max_abs(realized.apply(w, basis_op) -
                                        direct.apply(w, basis_op)));
      }
    }
  }
  Outcome out;
  out.ok = worst <= 1e-12;
  out.detail = "max entry deviation " + sci(worst) +
               " over 100 projector pairs";
  return out;
}

// --- 5. Closed-form two-receiver optimum vs the grid search. ---------------

Outcome check_noisy_optimum() {
  testutil::Rng rng(1005);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  double worst_exact = 0.0;
  double worst_grid = 0.0;
  bool thresholds_ordered = true;
  for (int trial = 0; trial < 300; ++trial) {
    const Ensemble e = testutil::random_qubit_pair(rng);
    const double gamma1 = uniform(rng);
    const double gamma2 = uniform(rng);
    const NoisyOptimum closed =
        two_seq_depolarizing_closed(e, gamma1, gamma2);

    const NoisyOptimum with = two_seq_depolarizing_numeric(
        e, gamma1, gamma2, 2048, /*include_analytic=*/true);
    worst_exact = std::max(worst_exact, std::abs(with.value - closed.value));

    const NoisyOptimum bare = two_seq_depolarizing_numeric(
        e, gamma1, gamma2, 2048, /*include_analytic=*/false);
    worst_grid = std::max(worst_grid, closed.value - bare.value);
    if (bare.value > closed.value + 1e-9) worst_grid = 1.0;  // overshoot

    if (closed.gamma2_value_threshold >
        closed.gamma2_regime_threshold + 1e-12) {
      thresholds_ordered = false;
    }
  }
  Outcome out;
  out.ok = worst_exact <= 1e-9 && worst_grid <= 5e-4 && thresholds_ordered;
  out.detail = "max defect " + sci(worst_exact) + " (analytic candidates), " +
               sci(worst_grid) + " (grid only), thresholds ordered: " +
               (thresholds_ordered ? "yes" : "no");
  return out;
}

// --- 6. The benchmark tables from the command-line interface. --------------

std::vector<std::vector<double>> read_csv_rows(
    const std::filesystem::path& path, std::string* header) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("missing " + path.string());
  std::string line;
  std::getline(in, line);
  *header = line;
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) row.push_back(std::stod(cell));
    rows.push_back(std::move(row));
  }
  return rows;
}

Outcome check_figures() {
  const std::filesystem::path dir =
      std::filesystem::temp_directory_path() / "seqdisc_acceptance_figures";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  const std::string cmd = std::string(SEQDISC_CLI_BINARY) +
                          " reproduce-figures --out " + dir.string() +
                          " --steps 21 --grid 512 > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
#ifndef _WIN32
  const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
#else
  const int code = status;
#endif
  Outcome out;
  if (code != 0) {
    out.ok = false;
    out.detail = "reproduce-figures exited with code " + std::to_string(code);
    return out;
  }

  // Noiseless anchors of the four curves and the blind-guess plateaus.
  const struct {
    const char* file;
    double anchor_q50;
    double anchor_q55;
  } expected[] = {{"figure1.csv", 0.65, 0.6514925740754312},
                  {"figure2.csv", 0.7601081505835601, 0.7610106559127424}};

  double worst_anchor = 0.0;
  double worst_shape = 0.0;
  for (const auto& figure : expected) {
    std::string header;
    const auto rows = read_csv_rows(dir / figure.file, &header);
    if (header !=
            "gamma,helstrom_q50,p_opt_n1_q50,p_opt_n2_closed_q50,"
            "p_opt_n2_numeric_q50,helstrom_q55,p_opt_n1_q55,"
            "p_opt_n2_closed_q55,p_opt_n2_numeric_q55" ||
        rows.size() != 21) {
      out.ok = false;
      out.detail = std::string {figure.file} + " has unexpected layout";
      return out;
    }
    const auto& first = rows.front();
    worst_anchor = std::max(
        {worst_anchor, std::abs(first[1] - figure.anchor_q50),
         std::abs(first[2] - figure.anchor_q50),
         std::abs(first[3] - figure.anchor_q50),
         std::abs(first[5] - figure.anchor_q55),
         std::abs(first[7] - figure.anchor_q55)});
    const auto& last = rows.back();
    worst_anchor = std::max({worst_anchor, std::abs(last[3] - 0.5),
                             std::abs(last[7] - 0.55)});
    for (const auto& row : rows) {
      for (int base : {1, 5}) {  // q50 block, q55 block
        const double helstrom = row[base];
        const double n1 = row[base + 1];
        const double n2_closed = row[base + 2];
        const double n2_numeric = row[base + 3];
        worst_shape = std::max({worst_shape, n2_closed - n1, n1 - helstrom,
                                n2_numeric - n2_closed,
                                (n2_closed - n2_numeric) - 5e-4});
      }
    }
  }
  out.ok = worst_anchor <= 1e-10 && worst_shape <= 1e-9;
  out.detail = "max anchor deviation " + sci(worst_anchor) +
               ", max ordering violation " + sci(worst_shape);
  return out;
}

// --- 7. Upper bounds hold across random protocols. -------------------------

Outcome check_bounds() {
  testutil::Rng rng(1007);
  double violation = 0.0;

  // Noiseless protocols never beat the pairwise trace-norm bound.
  for (int trial = 0; trial < 200; ++trial) {
    const int d = 2 + static_cast<int>(rng() % 3);
    const int r = 2 + static_cast<int>(rng() % 2);
    const int n = 1 + static_cast<int>(rng() % 3);
    const Ensemble e = testutil::random_ensemble(d, r, rng);
    const Protocol protocol = testutil::random_protocol(d, r, n, rng);
    violation = std::max(
        violation, success_direct(protocol, e) - multi_state_upper_bound(e));
  }

  // Noisy protocols never beat the bound of the once-evolved ensemble.
  for (int trial = 0; trial < 200; ++trial) {
    const int d = 2 + static_cast<int>(rng() % 2);
    const int r = 2 + static_cast<int>(rng() % 2);
    const int n = 1 + static_cast<int>(rng() % 3);
    const Ensemble e = testutil::random_ensemble(d, r, rng);
    const Protocol protocol =
        testutil::random_protocol(d, r, n, rng, /*noisy=*/true);
    std::vector<DensityOperator> evolved;
    for (int j = 0; j < r; ++j) {
      evolved.push_back(protocol.channels()[0].apply(e.states()[j]));
    }
    const Ensemble seen(std::move(evolved), e.priors());
    violation = std::max(violation, noisy_success(protocol, e) -
                                        multi_state_upper_bound(seen));
  }

  // The pairwise term of the two-receiver bound never exceeds (r - 1) times
  // the first-stage success.
  for (int trial = 0; trial < 200; ++trial) {
    const int d = 2 + static_cast<int>(rng() % 2);
    const int r = 2 + static_cast<int>(rng() % 2);
    const Ensemble e = testutil::random_ensemble(d, r, rng);
    const Channel l1 = testutil::random_channel(d, 2, rng);
    const Channel l2 = testutil::random_channel(d, 2, rng);
    const Instrument m1 = testutil::random_instrument(d, r, 2, rng);

    const POVM povm = povm_of(m1);
    double stage1 = 0.0;
    for (int j = 0; j < r; ++j) {
      stage1 += e.priors()[j] *
                (l1.apply(e.states()[j].matrix()) * povm.elements[j])
                    .trace()
                    .real();
    }
    const double pair_term =
        r * noisy_two_seq_upper_bound(e, l1, l2, m1) - stage1;
    violation = std::max(violation, pair_term - (r - 1) * stage1);
  }

  Outcome out;
  out.ok = violation <= 1e-10;
  out.detail = "max violation " + sci(violation) +
               " over 3 x 200 random samples";
  return out;
}

// --- 8. Without second-stage noise the pair optimum is the single one. -----

Outcome check_noiseless_limit() {
  testutil::Rng rng(1008);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const Ensemble e = testutil::random_qubit_pair(rng);
    const double gamma1 = uniform(rng);
    worst = std::max(
        worst, std::abs(two_seq_depolarizing_closed(e, gamma1, 0.0).value -
                        one_receiver_depolarizing_optimum(e, gamma1)));
  }
  Outcome out;
  out.ok = worst <= 1e-12;
  out.detail = "max deviation " + sci(worst) + " over 100 ensembles";
  return out;
}

}  // namespace

int main() {
  const struct {
    const char* title;
    Outcome (*check)();
  } criteria[] = {
      {"representation equivalence", check_representations},
      {"two-state optimum saturation", check_saturation},
      {"first-receiver condition path", check_condition_path},
      {"controlled-flip realization", check_realization},
      {"noisy two-receiver optimum cross-validation", check_noisy_optimum},
      {"benchmark figure reproduction", check_figures},
      {"upper-bound suite", check_bounds},
      {"noiseless second-stage limit", check_noiseless_limit},
  };

  bool all_ok = true;
  int number = 1;
  for (const auto& criterion : criteria) {
    Outcome outcome;
    try {
      outcome = criterion.check();
    } catch (const std::exception& e) {
      outcome.ok = false;
      outcome.detail = std::string("exception: ") + e.what();
    }
    all_ok = all_ok && outcome.ok;
    std::cout << (outcome.ok ? "[PASS] " : "[FAIL] ") << number << ". "
              << criterion.title << " (" << outcome.detail << ")\n";
    ++number;
  }
  return all_ok ? 0 : 1;
}
