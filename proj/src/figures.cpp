#include "seqdisc/figures.hpp"

#include <string>

#include "seqdisc/errors.hpp"
#include "seqdisc/io.hpp"
#include "seqdisc/noisy_opt.hpp"

namespace seqdisc::figures {

std::vector<SweepRow> gamma_sweep(const Ensemble& ensemble, int steps,
                                  int grid_size) {
  if (steps < 2) {
    throw InvalidParameter("sweep needs at least 2 samples");
  }
  const double flat = helstrom_bound(ensemble);
  std::vector<SweepRow> rows;
  rows.reserve(steps);
  for (int i = 0; i < steps; ++i) {
    SweepRow row;
    row.gamma = static_cast<double>(i) / (steps - 1);
    row.helstrom = flat;
    row.n1 = one_receiver_depolarizing_optimum(ensemble, row.gamma);
    row.n2_closed =
        two_seq_depolarizing_closed(ensemble, row.gamma, row.gamma).value;
    row.n2_numeric =
        two_seq_depolarizing_numeric(ensemble, row.gamma, row.gamma, grid_size)
            .value;
    rows.push_back(row);
  }
  return rows;
}

Ensemble figure1_ensemble(double q0) {
  return Ensemble({qubit_from_bloch({0.3, 0.3, 0.3}),
                   qubit_from_bloch({0.3, 0.3, -0.3})},
                  {q0, 1.0 - q0});
}

Ensemble figure2_ensemble(double q0) {
  return Ensemble({qubit_from_bloch({0.2, 0.3, -0.4}),
                   qubit_from_bloch({-0.2, -0.3, 0.35})},
                  {q0, 1.0 - q0});
}

namespace {

void write_one_figure(const std::filesystem::path& path,
                      const std::vector<SweepRow>& even,
                      const std::vector<SweepRow>& skewed) {
  std::vector<std::string> header = {"gamma",
                                     "helstrom_q50",
                                     "p_opt_n1_q50",
                                     "p_opt_n2_closed_q50",
                                     "p_opt_n2_numeric_q50",
                                     "helstrom_q55",
                                     "p_opt_n1_q55",
                                     "p_opt_n2_closed_q55",
                                     "p_opt_n2_numeric_q55"};
  std::vector<std::vector<double>> rows;
  rows.reserve(even.size());
  for (size_t i = 0; i < even.size(); ++i) {
    rows.push_back({even[i].gamma, even[i].helstrom, even[i].n1,
                    even[i].n2_closed, even[i].n2_numeric, skewed[i].helstrom,
                    skewed[i].n1, skewed[i].n2_closed, skewed[i].n2_numeric});
  }
  io::write_csv(path, header, rows);
}

}  // namespace

std::vector<std::filesystem::path> write_figures(
    const std::filesystem::path& directory, int steps, int grid_size) {
  std::vector<std::filesystem::path> written;
  const struct {
    const char* filename;
    Ensemble (*make)(double);
  } figures[] = {{"figure1.csv", figure1_ensemble},
                 {"figure2.csv", figure2_ensemble}};
  for (const auto& figure : figures) {
    const auto even = gamma_sweep(figure.make(0.5), steps, grid_size);
    const auto skewed = gamma_sweep(figure.make(0.55), steps, grid_size);
    const auto path = directory / figure.filename;
    write_one_figure(path, even, skewed);
    written.push_back(path);
  }
  return written;
}

}  // namespace seqdisc::figures
