#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "seqdisc/config.hpp"
#include "seqdisc/discrimination.hpp"
#include "seqdisc/errors.hpp"
#include "seqdisc/figures.hpp"
#include "seqdisc/io.hpp"
#include "seqdisc/noisy_opt.hpp"

namespace {

using seqdisc::CMatrix;
using seqdisc::Ensemble;
using seqdisc::Protocol;
using Json = seqdisc::config::Json;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitIo = 4;

std::string fmt(double value) { return seqdisc::io::format_double(value); }

std::string matrix_block(const CMatrix& m, const std::string& indent) {
  std::ostringstream out;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    out << indent << "[";
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) out << ", ";
      const double re = m(i, j).real();
      const double im = m(i, j).imag();
      out << fmt(re) << (im < 0 ? "-" : "+") << fmt(std::abs(im)) << "i";
    }
    out << "]\n";
  }
  return out.str();
}

const Json& require_key(const Json& cfg, const char* key) {
  if (!cfg.is_object() || !cfg.contains(key)) {
    throw seqdisc::InvalidParameter(std::string("missing config key \"") +
                                    key + "\"");
  }
  return cfg.at(key);
}

int config_failure(const std::exception& e) {
  std::cerr << "config error: " << e.what() << "\n";
  return kExitConfig;
}

int io_failure(const std::exception& e) {
  std::cerr << "io error: " << e.what() << "\n";
  return kExitIo;
}

int numerical_failure(const std::exception& e) {
  std::cerr << "error: " << e.what() << "\n";
  return kExitNumerical;
}

int emit(const std::string& report, const std::string& out_path) {
  std::cout << report;
  if (!out_path.empty()) {
    try {
      seqdisc::io::write_text(out_path, report);
    } catch (const seqdisc::IoError& e) {
      return io_failure(e);
    }
  }
  return kExitOk;
}

int cmd_helstrom(const std::string& config_path, const std::string& out_path) {
  std::optional<Ensemble> ensemble;
  int receivers = 3;
  try {
    const Json cfg = seqdisc::config::load_json_file(config_path);
    ensemble = seqdisc::config::ensemble_from_json(require_key(cfg, "ensemble"));
    if (cfg.contains("receivers")) receivers = cfg.at("receivers").get<int>();
    if (receivers < 1) {
      throw seqdisc::InvalidParameter("\"receivers\" must be at least 1");
    }
    if (ensemble->size() != 2) {
      throw seqdisc::WrongArity(
          "the helstrom command needs exactly two hypotheses");
    }
  } catch (const seqdisc::IoError& e) {
    return io_failure(e);
  } catch (const std::exception& e) {
    return config_failure(e);
  }

  std::string report;
  try {
    const double bound = seqdisc::helstrom_bound(*ensemble);
    const auto [p1, p2] = seqdisc::optimal_projectors(*ensemble);
    std::ostringstream out;
    out << "optimal two-hypothesis success: " << fmt(bound) << "\n";
    out << "weighted trace distance: " << fmt(2.0 * bound - 1.0) << "\n";
    out << "projector for hypothesis 1:\n" << matrix_block(p1, "  ");
    out << "projector for hypothesis 2:\n" << matrix_block(p2, "  ");
    out << "attainment by the repeated projective protocol:\n";
    for (int n = 1; n <= receivers; ++n) {
      const Protocol protocol =
          seqdisc::optimal_two_state_protocol(*ensemble, n);
      const double success = seqdisc::noisy_success(protocol, *ensemble);
      out << "  N=" << n << ": " << fmt(success)
          << " (deviation " << fmt(std::abs(success - bound)) << ")\n";
    }
    report = out.str();
  } catch (const std::exception& e) {
    return numerical_failure(e);
  }
  return emit(report, out_path);
}

int cmd_simulate(const std::string& config_path, const std::string& out_path) {
  std::optional<Ensemble> ensemble;
  std::optional<Protocol> protocol;
  bool report_posteriors = false;
  try {
    const Json cfg = seqdisc::config::load_json_file(config_path);
    ensemble = seqdisc::config::ensemble_from_json(require_key(cfg, "ensemble"));
    protocol = seqdisc::config::protocol_from_json(require_key(cfg, "protocol"));
    if (cfg.contains("report_posteriors")) {
      report_posteriors = cfg.at("report_posteriors").get<bool>();
    }
  } catch (const seqdisc::IoError& e) {
    return io_failure(e);
  } catch (const std::exception& e) {
    return config_failure(e);
  }

  std::string report;
  try {
    const double direct = seqdisc::success_direct(*protocol, *ensemble);
    const double chain = seqdisc::success_chain(*protocol, *ensemble);
    const auto product = seqdisc::success_product(*protocol, *ensemble);
    const double deviation =
        std::max({std::abs(direct - chain),
                  std::abs(direct - product.success_probability),
                  std::abs(chain - product.success_probability)});

    std::ostringstream out;
    out << "success (composite maps):    " << fmt(direct) << "\n";
    out << "success (posterior chain):   " << fmt(chain) << "\n";
    out << "success (stage product):     " << fmt(product.success_probability)
        << "\n";
    out << "max pairwise deviation:      " << fmt(deviation) << "\n";
    out << "stage factors:";
    for (double f : product.stage_factors) out << " " << fmt(f);
    out << "\n";
    for (size_t n = 0; n < product.updated_priors.size(); ++n) {
      out << "weights before receiver " << n + 1 << ":";
      for (double q : product.updated_priors[n]) out << " " << fmt(q);
      out << "\n";
    }
    if (report_posteriors) {
      for (int j = 0; j < ensemble->size(); ++j) {
        out << "posterior chain for hypothesis " << j + 1
            << " (all receivers announce it):\n";
        seqdisc::DensityOperator state = ensemble->states()[j];
        for (int n = 0; n < protocol->num_receivers(); ++n) {
          if (protocol->noisy()) state = protocol->channels()[n].apply(state);
          state = seqdisc::posterior(protocol->receivers()[n], j, state);
          out << " after receiver " << n + 1 << ":\n"
              << matrix_block(state.matrix(), "  ");
        }
      }
    }
    report = out.str();
  } catch (const std::exception& e) {
    return numerical_failure(e);
  }
  return emit(report, out_path);
}

int cmd_optimal_protocol(const std::string& config_path,
                         const std::string& out_path, std::uint64_t seed) {
  std::optional<Ensemble> ensemble;
  int receivers = 3;
  std::string variant = "projective";
  std::optional<CMatrix> basis;
  try {
    const Json cfg = seqdisc::config::load_json_file(config_path);
    ensemble = seqdisc::config::ensemble_from_json(require_key(cfg, "ensemble"));
    if (cfg.contains("receivers")) receivers = cfg.at("receivers").get<int>();
    if (receivers < 1) {
      throw seqdisc::InvalidParameter("\"receivers\" must be at least 1");
    }
    if (cfg.contains("variant")) variant = cfg.at("variant").get<std::string>();
    if (variant != "projective" && variant != "rotated") {
      throw seqdisc::InvalidParameter("\"variant\" must be \"projective\" or "
                                      "\"rotated\"");
    }
    if (cfg.contains("basis")) {
      basis = seqdisc::config::matrix_from_json(cfg.at("basis"));
    }
  } catch (const seqdisc::IoError& e) {
    return io_failure(e);
  } catch (const std::exception& e) {
    return config_failure(e);
  }

  std::string report;
  try {
    std::ostringstream out;
    std::optional<Protocol> protocol;
    if (variant == "projective") {
      protocol = seqdisc::optimal_two_state_protocol(*ensemble, receivers);
      out << "variant: projective\n";
    } else {
      if (!basis) {
        basis = seqdisc::haar_unitary(ensemble->dim(), seed);
        out << "variant: rotated (random basis, seed " << seed << ")\n";
      } else {
        out << "variant: rotated (basis from config)\n";
      }
      protocol =
          seqdisc::optimal_two_state_protocol(*ensemble, receivers, *basis);
    }

    const double bound = seqdisc::helstrom_bound(*ensemble);
    out << "target success: " << fmt(bound) << "\n";
    for (int n = 0; n < protocol->num_receivers(); ++n) {
      out << "receiver " << n + 1 << ":\n";
      for (int w = 0; w < protocol->num_outcomes(); ++w) {
        out << " outcome " << w + 1 << " Kraus operator:\n"
            << matrix_block(protocol->receivers()[n].kraus(w)[0], "  ");
      }
    }
    out << "attainment:\n";
    for (int n = 1; n <= receivers; ++n) {
      std::optional<Protocol> truncated;
      if (variant == "projective") {
        truncated = seqdisc::optimal_two_state_protocol(*ensemble, n);
      } else {
        truncated = seqdisc::optimal_two_state_protocol(*ensemble, n, *basis);
      }
      const double success = seqdisc::noisy_success(*truncated, *ensemble);
      out << "  N=" << n << ": " << fmt(success) << " (deviation "
          << fmt(std::abs(success - bound)) << ")\n";
    }
    report = out.str();
  } catch (const std::exception& e) {
    return numerical_failure(e);
  }
  return emit(report, out_path);
}

int cmd_noisy_sweep(const std::string& config_path, const std::string& out_path,
                    int steps, int grid) {
  std::optional<Ensemble> ensemble;
  try {
    const Json cfg = seqdisc::config::load_json_file(config_path);
    ensemble = seqdisc::config::ensemble_from_json(require_key(cfg, "ensemble"));
    if (ensemble->size() != 2 || ensemble->dim() != 2) {
      throw seqdisc::InvalidParameter(
          "noisy-sweep needs an ensemble of two qubit hypotheses");
    }
    if (steps < 2) {
      throw seqdisc::InvalidParameter("--steps must be at least 2");
    }
    if (grid < 2) {
      throw seqdisc::InvalidParameter("--grid must be at least 2");
    }
  } catch (const seqdisc::IoError& e) {
    return io_failure(e);
  } catch (const std::exception& e) {
    return config_failure(e);
  }

  std::vector<std::vector<double>> rows;
  try {
    for (const auto& row : seqdisc::figures::gamma_sweep(*ensemble, steps, grid)) {
      rows.push_back(
          {row.gamma, row.helstrom, row.n1, row.n2_closed, row.n2_numeric});
    }
  } catch (const std::exception& e) {
    return numerical_failure(e);
  }

  const std::string path = out_path.empty() ? "noisy_sweep.csv" : out_path;
  try {
    seqdisc::io::write_csv(
        path, {"gamma", "helstrom", "p_opt_n1", "p_opt_n2_closed",
               "p_opt_n2_numeric"},
        rows);
  } catch (const seqdisc::IoError& e) {
    return io_failure(e);
  }
  std::cout << "wrote " << path << " (" << rows.size() << " samples)\n";
  return kExitOk;
}

int cmd_reproduce_figures(const std::string& out_dir, int steps, int grid) {
  if (steps < 2 || grid < 2) {
    std::cerr << "config error: --steps and --grid must be at least 2\n";
    return kExitConfig;
  }
  const std::filesystem::path dir = out_dir.empty() ? "." : out_dir;
  try {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
      throw seqdisc::IoError("cannot create directory " + dir.string() + ": " +
                             ec.message());
    }
    for (const auto& path : seqdisc::figures::write_figures(dir, steps, grid)) {
      std::cout << "wrote " << path.string() << "\n";
    }
  } catch (const seqdisc::IoError& e) {
    return io_failure(e);
  } catch (const std::exception& e) {
    return numerical_failure(e);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical toolkit for sequential conclusive discrimination "
               "of quantum states"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;
  std::uint64_t seed = 0;
  int steps = 201;
  int grid = 2048;

  CLI::App* helstrom = app.add_subcommand(
      "helstrom", "optimal two-hypothesis success and its projectors");
  helstrom->add_option("--config", config_path, "JSON config file")->required();
  helstrom->add_option("--out", out_path, "also write the report here");

  CLI::App* simulate = app.add_subcommand(
      "simulate", "evaluate a configured protocol through all three "
                  "success representations");
  simulate->add_option("--config", config_path, "JSON config file")->required();
  simulate->add_option("--out", out_path, "also write the report here");

  CLI::App* optimal = app.add_subcommand(
      "optimal-protocol", "construct the bound-attaining receiver chain");
  optimal->add_option("--config", config_path, "JSON config file")->required();
  optimal->add_option("--out", out_path, "also write the report here");
  optimal->add_option("--seed", seed,
                      "seed for the random rotated basis (default 0)");

  CLI::App* sweep = app.add_subcommand(
      "noisy-sweep", "sweep the depolarizing strength and tabulate the "
                     "optimal success values");
  sweep->add_option("--config", config_path, "JSON config file")->required();
  sweep->add_option("--out", out_path, "output CSV (default noisy_sweep.csv)");
  sweep->add_option("--steps", steps, "number of gamma samples (default 201)");
  sweep->add_option("--grid", grid,
                    "sphere grid size for the numeric route (default 2048)");

  CLI::App* figures = app.add_subcommand(
      "reproduce-figures", "regenerate the two benchmark sweep tables");
  figures->add_option("--out", out_path, "output directory (default .)");
  figures->add_option("--steps", steps, "number of gamma samples (default 201)");
  figures->add_option("--grid", grid,
                      "sphere grid size for the numeric route (default 2048)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfig;
  }

  if (app.got_subcommand(helstrom)) return cmd_helstrom(config_path, out_path);
  if (app.got_subcommand(simulate)) return cmd_simulate(config_path, out_path);
  if (app.got_subcommand(optimal)) {
    return cmd_optimal_protocol(config_path, out_path, seed);
  }
  if (app.got_subcommand(sweep)) {
    return cmd_noisy_sweep(config_path, out_path, steps, grid);
  }
  if (app.got_subcommand(figures)) {
    return cmd_reproduce_figures(out_path, steps, grid);
  }
  return kExitConfig;
}
