#include <array>
#include <cmath>

#include <doctest.h>

#include "seqdisc/discrimination.hpp"
#include "seqdisc/errors.hpp"
#include "test_helpers.hpp"

using namespace seqdisc;

namespace {

Ensemble made(const RVector3& r1, const RVector3& r2, double q1) {
  return Ensemble({qubit_from_bloch(r1), qubit_from_bloch(r2)},
                  {q1, 1.0 - q1});
}

}  // namespace

TEST_CASE("two-hypothesis optimum on reference ensembles") {
  CHECK(helstrom_bound(made({0.3, 0.3, 0.3}, {0.3, 0.3, -0.3}, 0.5)) ==
        doctest::Approx(0.65).epsilon(1e-12));
  CHECK(helstrom_bound(made({0.3, 0.3, 0.3}, {0.3, 0.3, -0.3}, 0.55)) ==
        doctest::Approx(0.6514925740754312).epsilon(1e-12));
  CHECK(helstrom_bound(made({0.2, 0.3, -0.4}, {-0.2, -0.3, 0.35}, 0.5)) ==
        doctest::Approx(0.7601081505835601).epsilon(1e-12));
  CHECK(helstrom_bound(made({0.2, 0.3, -0.4}, {-0.2, -0.3, 0.35}, 0.55)) ==
        doctest::Approx(0.7610106559127424).epsilon(1e-12));
}

TEST_CASE("two-hypothesis optimum matches the pure-state overlap formula") {
  testutil::Rng rng(51);
  std::uniform_real_distribution<double> uniform(0.1, 0.9);
  for (int trial = 0; trial < 25; ++trial) {
    CVector psi1 = testutil::random_gaussian(2, 1, rng);
    CVector psi2 = testutil::random_gaussian(2, 1, rng);
    psi1.normalize();
    psi2.normalize();
    const double q1 = uniform(rng);
    const Ensemble e({DensityOperator(psi1 * psi1.adjoint()),
                      DensityOperator(psi2 * psi2.adjoint())},
                     {q1, 1.0 - q1});
    // |<psi2|psi1>|^2 via explicit inner product.
    const double ip = std::norm((psi2.adjoint() * psi1)(0, 0));
    const double expected =
        0.5 * (1.0 + std::sqrt(1.0 - 4.0 * q1 * (1.0 - q1) * ip));
    CHECK(helstrom_bound(e) == doctest::Approx(expected).epsilon(1e-10));
  }
}

TEST_CASE("hypothesis-count guards") {
  testutil::Rng rng(52);
  const Ensemble three = testutil::random_ensemble(2, 3, rng);
  CHECK_THROWS_AS(helstrom_bound(three), WrongArity);
  CHECK_THROWS_AS(optimal_projectors(three), WrongArity);
  CHECK_THROWS_AS(optimal_two_state_protocol(three, 2), WrongArity);
}

TEST_CASE("multi-hypothesis bound") {
  testutil::Rng rng(53);
  for (int trial = 0; trial < 10; ++trial) {
    const Ensemble pair = testutil::random_ensemble(3, 2, rng);
    CHECK(multi_state_upper_bound(pair) ==
          doctest::Approx(helstrom_bound(pair)).epsilon(1e-12));

    // The bound dominates arbitrary protocols.
    const Ensemble trio = testutil::random_ensemble(3, 3, rng);
    const Protocol protocol = testutil::random_protocol(3, 3, 2, rng);
    CHECK(success_direct(protocol, trio) <=
          multi_state_upper_bound(trio) + 1e-10);
  }
}

TEST_CASE("spectral projector pair of the weighted difference") {
  testutil::Rng rng(54);
  for (int trial = 0; trial < 10; ++trial) {
    const Ensemble e = testutil::random_ensemble(4, 2, rng);
    const auto [p1, p2] = optimal_projectors(e);
    CHECK(max_abs(p1 + p2 - CMatrix::Identity(4, 4)) <= 1e-12);
    CHECK(max_abs(p1 * p2) <= 1e-10);

    const CMatrix diff = e.priors()[0] * e.states()[0].matrix() -
                         e.priors()[1] * e.states()[1].matrix();
    // P1 captures exactly the positive weight: tr(diff (P1 - P2)) = ||diff||_1.
    CHECK((diff * (p1 - p2)).trace().real() ==
          doctest::Approx(trace_norm(diff)).epsilon(1e-10));
  }
}

TEST_CASE("three success representations agree and match Kraus strings") {
  testutil::Rng rng(55);
  for (int trial = 0; trial < 12; ++trial) {
    const int d = 2 + static_cast<int>(rng() % 3);
    const int r = 2 + static_cast<int>(rng() % 2);
    const int n = 1 + static_cast<int>(rng() % 3);
    const Ensemble e = testutil::random_ensemble(d, r, rng);
    const Protocol protocol = testutil::random_protocol(d, r, n, rng);

    const double direct = success_direct(protocol, e);
    const double chain = success_chain(protocol, e);
    const DiscriminationResult product = success_product(protocol, e);

    CHECK(std::abs(direct - chain) <= 1e-10);
    CHECK(std::abs(direct - product.success_probability) <= 1e-10);
    CHECK(direct ==
          doctest::Approx(testutil::oracle_success(protocol, e)).epsilon(1e-10));
    CHECK(direct >= -1e-12);
    CHECK(direct <= 1.0 + 1e-12);
  }
}

TEST_CASE("stage factors multiply to the success and weights stay normalized") {
  testutil::Rng rng(56);
  const Ensemble e = testutil::random_ensemble(3, 3, rng);
  const Protocol protocol = testutil::random_protocol(3, 3, 3, rng);
  const DiscriminationResult result = success_product(protocol, e);

  REQUIRE(result.stage_factors.size() == 3);
  double prod = 1.0;
  for (double f : result.stage_factors) prod *= f;
  CHECK(prod ==
        doctest::Approx(result.success_probability).epsilon(1e-10));

  REQUIRE(result.updated_priors.size() == 3);
  for (const auto& row : result.updated_priors) {
    double sum = 0.0;
    for (double q : row) {
      CHECK(q >= -1e-12);
      sum += q;
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("updated weights match the conclusive-tuple ratios") {
  testutil::Rng rng(57);
  const int d = 3;
  const int r = 3;
  const Ensemble e = testutil::random_ensemble(d, r, rng);
  std::vector<Instrument> receivers;
  for (int n = 0; n < 3; ++n) {
    receivers.push_back(testutil::random_instrument(d, r, 2, rng));
  }
  const Protocol protocol{std::vector<Instrument>(receivers)};
  const DiscriminationResult result = success_product(protocol, e);

  for (int n = 1; n <= 2; ++n) {
    // Weight of hypothesis j before receiver n+1: proportional to
    // q_j times the all-j outcome probability through the first n stages.
    const SequentialInstrument head = compose_sequential(
        std::vector<Instrument>(receivers.begin(), receivers.begin() + n));
    std::vector<double> expected(r);
    double norm = 0.0;
    for (int j = 0; j < r; ++j) {
      const std::vector<int> tuple(n, j);
      expected[j] = e.priors()[j] * head.probability(tuple, e.states()[j]);
      norm += expected[j];
    }
    for (int j = 0; j < r; ++j) {
      CHECK(result.updated_priors[n][j] ==
            doctest::Approx(expected[j] / norm).epsilon(1e-9));
    }
  }
}

TEST_CASE("branches with zero probability contribute zero in all routes") {
  // Both hypotheses are spin-up; outcome 1 ("down") never fires for either,
  // so the second branch dies at the first receiver.
  const DensityOperator up = qubit_from_bloch({0, 0, 1});
  const Ensemble e({up, up}, {0.6, 0.4});
  const Instrument m = luders_from_projectors(
      {spin_projector({0, 0, 1}, +1), spin_projector({0, 0, 1}, -1)});
  const Protocol protocol{std::vector<Instrument>(2, m)};

  const double direct = success_direct(protocol, e);
  const double chain = success_chain(protocol, e);
  const DiscriminationResult product = success_product(protocol, e);
  CHECK(direct == doctest::Approx(0.6).epsilon(1e-12));
  CHECK(chain == doctest::Approx(0.6).epsilon(1e-12));
  CHECK(product.success_probability == doctest::Approx(0.6).epsilon(1e-12));
  // The surviving weight concentrates on hypothesis 0.
  CHECK(product.updated_priors[1][0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(product.updated_priors[1][1] == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("repeated projective protocol attains the optimum for every N") {
  testutil::Rng rng(58);
  for (int trial = 0; trial < 8; ++trial) {
    const int d = trial % 2 == 0 ? 2 : 3;
    const Ensemble e = testutil::random_ensemble(d, 2, rng);
    const double bound = helstrom_bound(e);
    for (int n = 1; n <= 5; ++n) {
      const Protocol protocol = optimal_two_state_protocol(e, n);
      CHECK(std::abs(success_direct(protocol, e) - bound) <= 1e-10);
      CHECK(std::abs(success_chain(protocol, e) - bound) <= 1e-10);
      CHECK(std::abs(success_product(protocol, e).success_probability -
                     bound) <= 1e-10);
    }
  }
  CHECK_THROWS_AS(
      optimal_two_state_protocol(testutil::random_ensemble(2, 2, rng), 0),
      InvalidParameter);
}

TEST_CASE("rotated protocol attains the optimum with any orthonormal basis") {
  testutil::Rng rng(59);
  for (int trial = 0; trial < 8; ++trial) {
    const int d = trial % 2 == 0 ? 2 : 3;
    const Ensemble e = testutil::random_ensemble(d, 2, rng);
    const double bound = helstrom_bound(e);
    const CMatrix basis = testutil::random_unitary(d, rng);
    for (int n = 1; n <= 4; ++n) {
      const Protocol protocol = optimal_two_state_protocol(e, n, basis);
      CHECK(std::abs(success_direct(protocol, e) - bound) <= 1e-10);
    }
  }
}

TEST_CASE("rotated protocol with the eigenbasis reduces to the projective one") {
  testutil::Rng rng(60);
  const Ensemble e = testutil::random_ensemble(3, 2, rng);
  const CMatrix diff = e.priors()[0] * e.states()[0].matrix() -
                       e.priors()[1] * e.states()[1].matrix();
  const CMatrix eigenbasis = eig_hermitian(diff).eigenvectors;

  const Protocol rotated = optimal_two_state_protocol(e, 2, eigenbasis);
  const Protocol projective = optimal_two_state_protocol(e, 2);
  const auto [p1, p2] = optimal_projectors(e);

  // Later receivers measure the same projectors.
  CHECK(max_abs(rotated.receivers()[1].kraus(0)[0] - p1) <= 1e-9);
  CHECK(max_abs(rotated.receivers()[1].kraus(1)[0] - p2) <= 1e-9);
  // And the first-receiver Kraus operators act as the projectors do.
  CHECK(max_abs(rotated.receivers()[0].kraus(0)[0].adjoint() *
                    rotated.receivers()[0].kraus(0)[0] -
                p1) <= 1e-9);
  CHECK(std::abs(success_direct(rotated, e) -
                 success_direct(projective, e)) <= 1e-12);
}

TEST_CASE("rotated protocol rejects one-sided spectra and bad bases") {
  // Identical states: the weighted difference is positive semidefinite.
  const DensityOperator rho = qubit_from_bloch({0.2, 0.1, 0.3});
  const Ensemble degenerate({rho, rho}, {0.9, 0.1});
  testutil::Rng rng(61);
  const CMatrix basis = testutil::random_unitary(2, rng);
  CHECK_THROWS_AS(optimal_two_state_protocol(degenerate, 2, basis),
                  DegenerateSpectrum);
  // The projective variant still exists and equals the best blind guess.
  const Protocol projective = optimal_two_state_protocol(degenerate, 3);
  CHECK(success_direct(projective, degenerate) ==
        doctest::Approx(0.9).epsilon(1e-12));

  const Ensemble e = testutil::random_ensemble(2, 2, rng);
  CHECK_THROWS_AS(optimal_two_state_protocol(e, 2, 0.5 * basis),
                  InvalidOperator);
  CHECK_THROWS_AS(
      optimal_two_state_protocol(e, 2, testutil::random_unitary(3, rng)),
      DimensionError);
}

TEST_CASE("first-receiver condition builder") {
  testutil::Rng rng(62);
  for (int trial = 0; trial < 6; ++trial) {
    const int d = trial % 2 == 0 ? 2 : 4;
    const Ensemble e = testutil::random_ensemble(d, 2, rng);
    const double bound = helstrom_bound(e);

    // Harvest a valid (Kraus, projector) pair from the rotated construction.
    const CMatrix basis = testutil::random_unitary(d, rng);
    const Protocol rotated = optimal_two_state_protocol(e, 2, basis);
    const std::vector<CMatrix> kraus = {rotated.receivers()[0].kraus(0)[0],
                                        rotated.receivers()[0].kraus(1)[0]};
    const std::vector<CMatrix> projectors = {
        rotated.receivers()[1].kraus(0)[0],
        rotated.receivers()[1].kraus(1)[0]};

    for (int n = 1; n <= 4; ++n) {
      const Protocol protocol = repeatable_receiver_protocol(kraus, projectors, n);
      CHECK(std::abs(success_direct(protocol, e) - bound) <= 1e-10);
    }

    // A small perturbation of the first receiver breaks the condition.
    std::vector<CMatrix> perturbed = kraus;
    perturbed[0] += 1e-3 * testutil::random_gaussian(d, d, rng);
    CHECK_THROWS_AS(repeatable_receiver_protocol(perturbed, projectors, 2),
                    ConditionNotSatisfied);

    // Kraus effects that are not complete are rejected as well.
    std::vector<CMatrix> halved = kraus;
    halved[0] *= 0.5;
    CHECK_THROWS_AS(repeatable_receiver_protocol(halved, projectors, 2),
                    ConditionNotSatisfied);

    // Defective projector families are caught by the family validator.
    CHECK_THROWS_AS(repeatable_receiver_protocol(kraus, {projectors[0], projectors[0]}, 2),
                    IncompleteProjectors);
  }
}

TEST_CASE("controlled-flip realization reproduces the projective receiver") {
  testutil::Rng rng(63);
  for (int trial = 0; trial < 8; ++trial) {
    const int d = 2 + static_cast<int>(rng() % 3);
    const Ensemble e = testutil::random_ensemble(d, 2, rng);
    const auto [p1, p2] = optimal_projectors(e);
    const StatisticalRealization xi = indirect_realization_for_optimal(p1, p2);

    const Instrument realized = instrument_from_realization(xi);
    const Instrument direct = luders_from_projectors({p1, p2});

    // Entrywise agreement of the outcome maps on a spanning set of states.
    for (const CMatrix& basis_op : testutil::spanning_states(d)) {
      for (int w = 0; w < 2; ++w) {
        CHECK(max_abs(realized.apply(w, basis_op) -
                      direct.apply(w, basis_op)) <= 1e-12);
      }
    }

    // The rank-one extraction recovers the projectors up to phase.
    const std::vector<CMatrix> kraus = kraus_from_dilation(xi);
    for (int w = 0; w < 2; ++w) {
      const CMatrix& p = w == 0 ? p1 : p2;
      CHECK(max_abs(kraus[w].adjoint() * kraus[w] - p) <= 1e-12);
    }

    // A protocol built from the realized instrument still attains the bound.
    const Protocol protocol{
        std::vector<Instrument>(3, realized)};
    CHECK(std::abs(success_direct(protocol, e) - helstrom_bound(e)) <= 1e-10);
  }
}

TEST_CASE("controlled-flip realization with a rotated ancilla ket") {
  testutil::Rng rng(64);
  const Ensemble e = testutil::random_ensemble(2, 2, rng);
  const auto [p1, p2] = optimal_projectors(e);
  CVector b = testutil::random_gaussian(2, 1, rng);
  b.normalize();
  const StatisticalRealization xi =
      indirect_realization_for_optimal(p1, p2, b);
  const Instrument realized = instrument_from_realization(xi);
  const Instrument direct = luders_from_projectors({p1, p2});
  const DensityOperator rho = testutil::random_density(2, rng);
  for (int w = 0; w < 2; ++w) {
    CHECK(max_abs(realized.apply(w, rho.matrix()) -
                  direct.apply(w, rho.matrix())) <= 1e-12);
  }
}

TEST_CASE("realization construction rejects non-projector input") {
  const CMatrix half = 0.5 * CMatrix::Identity(2, 2);
  CHECK_THROWS_AS(indirect_realization_for_optimal(half, half),
                  InvalidOperator);
  CVector unnormalized(2);
  unnormalized << 1.0, 1.0;
  const CMatrix p1 = spin_projector({0, 0, 1}, +1);
  const CMatrix p2 = spin_projector({0, 0, 1}, -1);
  CHECK_THROWS_AS(indirect_realization_for_optimal(p1, p2, unnormalized),
                  InvalidParameter);
}

TEST_CASE("protocol compatibility guards") {
  testutil::Rng rng(65);
  const Ensemble e = testutil::random_ensemble(2, 2, rng);
  const Protocol wrong_dim = testutil::random_protocol(3, 2, 1, rng);
  CHECK_THROWS_AS(success_direct(wrong_dim, e), DimensionError);
  const Protocol wrong_r = testutil::random_protocol(2, 3, 1, rng);
  CHECK_THROWS_AS(success_direct(wrong_r, e), WrongArity);

  // One channel per receiver is enforced.
  std::vector<Instrument> receivers = {
      testutil::random_instrument(2, 2, 1, rng),
      testutil::random_instrument(2, 2, 1, rng)};
  std::vector<Channel> channels = {Channel::depolarizing(0.1)};
  CHECK_THROWS_AS(Protocol(receivers, channels), DimensionError);
}
