#include "dqs/metrics.hpp"
#include "support/oracles.hpp"

#include <gtest/gtest.h>

using namespace dqs;
using namespace dqs::metrics;
using qcore::DensityMatrix;
using qcore::kPi;
using qcore::PureState;

namespace {

Epsilon0Input input(BoundMode mode, Variant v, double thr, std::uint64_t T = 1, std::uint64_t Nd = 0, std::size_t n = 1,
                    double phi = 0.0) {
  return {mode, v, thr, T, Nd, n, phi};
}

DensityMatrix dm(const PureState& s) { return DensityMatrix(s); }

}  // namespace

// ---------------------------------------------------------------- f

TEST(FDefinetti, Values) {
  EXPECT_NEAR(f_definetti(100, 90, 1), 0.6708203932499369, 1e-12);
  EXPECT_NEAR(f_definetti(1000, 990, 2), 0.28603877677367767, 1e-12);
  EXPECT_NEAR(f_definetti(10000, 9900, 1), 0.7035623639735143, 1e-12);
  EXPECT_EQ(f_definetti(50, 49, 3), 0.0);
  EXPECT_EQ(f_definetti(50, 0, 1), 0.0);
}

TEST(FDefinetti, RejectsNdAtLeastT) {
  EXPECT_THROW(f_definetti(10, 10, 1), std::invalid_argument);
  EXPECT_THROW(f_definetti(10, 11, 1), std::invalid_argument);
  EXPECT_THROW(f_definetti(0, 0, 1), std::invalid_argument);
}

// ---------------------------------------------------------------- epsilon0

TEST(Epsilon0, IndividualEntanglementFromMeasuredEpsilon) {
  EXPECT_NEAR(epsilon0(input(BoundMode::one_way_individual, Variant::entanglement, 0.251)), 0.20494064181285923, 1e-12);
  EXPECT_NEAR(epsilon0(input(BoundMode::one_way_individual, Variant::mub, 0.3)), 0.3, 1e-15);
}

TEST(Epsilon0, GcMubZero) { EXPECT_EQ(epsilon0(input(BoundMode::one_way_gc, Variant::mub, 0.0, 10, 9)), 0.0); }

TEST(Epsilon0, TwoWayAddsSineTerm) {
  EXPECT_NEAR(epsilon0(input(BoundMode::two_way_gc, Variant::entanglement, 0.0, 10, 9, 1, 0.1)), std::sin(0.1), 1e-12);
  EXPECT_NEAR(epsilon0(input(BoundMode::two_way_gc, Variant::mub, 0.0, 10, 9, 1, 0.1)), std::sin(0.1), 1e-12);
  EXPECT_NEAR(epsilon0(input(BoundMode::two_way_gc, Variant::entanglement, 0.0, 10, 9, 1, kPi / 2)), 1.0, 1e-12);
  // saturates once the arc reaches π
  EXPECT_NEAR(epsilon0(input(BoundMode::two_way_gc, Variant::entanglement, 0.0, 10, 9, 2, 1.0)), 1.0, 1e-12);
}

TEST(Epsilon0, TwoWayCoefficientsDifferByVariant) {
  const double f = f_definetti(100, 90, 1);
  EXPECT_NEAR(epsilon0(input(BoundMode::two_way_gc, Variant::entanglement, 0.0, 100, 90, 1, 0.0)), std::sqrt(4 * f), 1e-12);
  EXPECT_NEAR(epsilon0(input(BoundMode::two_way_gc, Variant::mub, 0.0, 100, 90, 1, 0.0)), std::sqrt(2 * f), 1e-12);
}

TEST(Epsilon0, GcNeedsDiscardedRounds) {
  EXPECT_THROW(epsilon0(input(BoundMode::one_way_gc, Variant::entanglement, 0.1, 100, 0)), std::invalid_argument);
  EXPECT_THROW(epsilon0(input(BoundMode::one_way_individual, Variant::entanglement, -0.1)), std::invalid_argument);
}

TEST(Epsilon0, MubRescalingMatchesEntanglement) {
  for (double eps : {0.0, 0.1, 0.251, 0.5})
    for (std::uint64_t nd : {10u, 500u, 990u}) {
      const double ebar = std::sqrt(2.0 / 3.0) * eps;
      EXPECT_NEAR(epsilon0(input(BoundMode::one_way_gc, Variant::mub, ebar, 1000, nd, 2)),
                  epsilon0(input(BoundMode::one_way_gc, Variant::entanglement, eps, 1000, nd, 2)), 1e-12);
    }
}

// ---------------------------------------------------------------- bias / variance

TEST(Bounds, BiasAtQuarterPi) { EXPECT_NEAR(bias_bound(0.1, 1, kPi / 4), 0.1, 1e-12); }

TEST(Bounds, InfiniteAtVanishingSine) {
  EXPECT_TRUE(std::isinf(bias_bound(0.1, 1, 0.0)));
  EXPECT_TRUE(std::isinf(variance_bound(0.1, 1, 0.0, BoundMode::one_way_gc)));
  EXPECT_TRUE(std::isinf(bias_bound(0.1, 2, kPi / 2)));
}

TEST(Bounds, VarianceGcAndIndividual) {
  EXPECT_NEAR(variance_bound(0.20494, 1, kPi / 4, BoundMode::one_way_gc), 0.45188040360000004, 1e-12);
  EXPECT_NEAR(variance_bound(0.2, 1, kPi / 4, BoundMode::one_way_individual, 100), 2 * 0.2 / 100 + 0.04, 1e-12);
  EXPECT_NEAR(variance_bound(0.2, 2, kPi / 16, BoundMode::one_way_gc), (0.4 + 0.04) / (4 * 0.5), 1e-12);
  EXPECT_THROW(variance_bound(0.2, 1, 0.3, BoundMode::one_way_individual, 0), std::invalid_argument);
}

TEST(Bounds, MonotoneInEpsilon0) {
  for (double phi : {0.1, 0.5, 1.0})
    for (std::size_t n : {1u, 2u, 3u}) {
      double pb = -1, pv = -1, pi = -1;
      for (double e = 0.0; e <= 1.0; e += 0.05) {
        const double b = bias_bound(e, n, phi), v = variance_bound(e, n, phi, BoundMode::one_way_gc),
                     iv = variance_bound(e, n, phi, BoundMode::one_way_individual, 7);
        EXPECT_GE(b, pb);
        EXPECT_GE(v, pv);
        EXPECT_GE(iv, pi);
        pb = b, pv = v, pi = iv;
      }
    }
}

TEST(Bounds, ReportAssembly) {
  const auto r = evaluate_bounds(input(BoundMode::one_way_gc, Variant::entanglement, 0.1, 10000, 9900, 1, kPi / 4), 20);
  EXPECT_TRUE(r.f_applicable);
  EXPECT_NEAR(r.f_value, 0.7035623639735143, 1e-12);
  EXPECT_NEAR(r.epsilon0, std::sqrt(2.0 / 3.0 * 0.01 + 4 * r.f_value), 1e-12);
  EXPECT_NEAR(r.bias_bound, r.epsilon0, 1e-12);
  const auto ind = evaluate_bounds(input(BoundMode::one_way_individual, Variant::entanglement, 0.1, 100, 0, 1, 0.3), 20);
  EXPECT_FALSE(ind.f_applicable);
}

// ---------------------------------------------------------------- arc / Acin

TEST(DeltaArc, Examples) {
  EXPECT_NEAR(delta_arc(qcore::identity(4)), 0.0, 1e-12);
  qcore::Matrix d = qcore::Matrix::Zero(2, 2);
  d(0, 0) = 1;
  d(1, 1) = -1;
  EXPECT_NEAR(delta_arc(d), kPi, 1e-12);
  EXPECT_THROW(delta_arc(2.0 * qcore::identity(2)), std::invalid_argument);
}

TEST(DeltaArc, EncodingUnitaryGives2nPhi) {
  for (std::size_t n = 1; n <= 3; ++n)
    for (double phi : {0.1, 0.3, 0.5}) {
      if (n * phi >= kPi) continue;
      EXPECT_NEAR(delta_arc(qcore::encoding_unitary(n, phi)), 2.0 * n * phi, 1e-9);
      EXPECT_NEAR(delta_arc_encoding(n, phi), 2.0 * n * phi, 1e-12);
    }
}

TEST(DeltaArc, GlobalPhaseInvariance) {
  Rng rng(11);
  for (int i = 0; i < 20; ++i) {
    const auto u = qcore::random_unitary(3, rng);
    const double a = delta_arc(u);
    EXPECT_NEAR(delta_arc(std::polar(1.0, 2.0 * kPi * rng.uniform()) * u), a, 1e-9);
  }
}

TEST(Acin, ClosedForm) {
  EXPECT_NEAR(acin_min_fidelity(qcore::identity(2)), 1.0, 1e-12);
  EXPECT_NEAR(acin_min_fidelity(qcore::encoding_unitary(1, 0.3)), 0.9126678074548391, 1e-12);
}

TEST(Acin, MatchesPurificationMinimization) {
  for (double phi : {0.1, 0.3, 0.7, 1.2}) {
    const auto u = qcore::encoding_unitary(1, phi);
    EXPECT_NEAR(acin_min_fidelity(u), oracle::min_purification_fidelity(u), 1e-6) << phi;
  }
}

// ---------------------------------------------------------------- LOCC1

TEST(Locc1, IdenticalStatesGiveZero) {
  Rng rng(3);
  const auto rho = qcore::random_density_matrix(4, rng);
  const auto r = locc1_lower_bound(rho, rho, {2, 2}, 1, {4});
  EXPECT_NEAR(r.lower_bound, 0.0, 1e-12);
  EXPECT_EQ(r.restarts_used, 4u);
}

TEST(Locc1, OrthogonalQubits) {
  EXPECT_NEAR(locc1_lower_bound(dm(qcore::qubit::zero()), dm(qcore::qubit::one()), {2}, 1, {4}).lower_bound, 1.0, 1e-9);
}

TEST(Locc1, HelstromForPureQubits) {
  const auto r = locc1_lower_bound(dm(qcore::qubit::zero()), dm(qcore::qubit::plus()), {2}, 5);
  EXPECT_NEAR(r.lower_bound, std::sqrt(0.5), 1e-6);
  EXPECT_TRUE(r.converged);
  EXPECT_EQ(r.best_measurement_parameters.size(), 2u);
}

TEST(Locc1, ProductStatesOverTwoAndThreeParties) {
  const auto zz = qcore::PureState(qcore::kron(qcore::qubit::zero().amplitudes(), qcore::qubit::zero().amplitudes()));
  const auto oo = qcore::PureState(qcore::kron(qcore::qubit::one().amplitudes(), qcore::qubit::one().amplitudes()));
  EXPECT_NEAR(locc1_lower_bound(dm(zz), dm(oo), {2, 2}, 1, {4}).lower_bound, 1.0, 1e-9);
  const auto z3 = qcore::basis_state(8, 0), o3 = qcore::basis_state(8, 7);
  EXPECT_NEAR(locc1_lower_bound(dm(z3), dm(o3), {2, 2, 2}, 1, {2}).lower_bound, 1.0, 1e-9);
}

TEST(Locc1, QuditParties) {
  EXPECT_NEAR(locc1_lower_bound(dm(qcore::basis_state(3, 0)), dm(qcore::basis_state(3, 2)), {3}, 2, {4}).lower_bound, 1.0,
              1e-6);
  Rng rng(8);
  const auto a = qcore::random_density_matrix(4, rng), b = qcore::random_density_matrix(4, rng);
  const auto r = locc1_lower_bound(a, b, {4}, 2, {2});
  EXPECT_LE(r.lower_bound, qcore::trace_distance(a, b) + 1e-9);
  EXPECT_GT(r.lower_bound, 0.0);
}

TEST(Locc1, NeverExceedsTraceDistance) {
  Rng rng(21);
  for (int i = 0; i < 10; ++i) {
    const auto a = qcore::random_density_matrix(4, rng), b = qcore::random_density_matrix(4, rng);
    EXPECT_LE(locc1_lower_bound(a, b, {2, 2}, std::uint64_t(i), {3}).lower_bound, qcore::trace_distance(a, b) + 1e-9);
  }
}

TEST(Locc1, DeterministicGivenSeed) {
  Rng rng(4);
  const auto a = qcore::random_density_matrix(4, rng), b = qcore::random_density_matrix(4, rng);
  const auto r1 = locc1_lower_bound(a, b, {2, 2}, 9, {3});
  const auto r2 = locc1_lower_bound(a, b, {2, 2}, 9, {3});
  EXPECT_EQ(r1.lower_bound, r2.lower_bound);
  EXPECT_EQ(r1.best_measurement_parameters, r2.best_measurement_parameters);
}

TEST(Locc1, DimensionLimits) {
  const auto m = DensityMatrix::maximally_mixed(16);
  EXPECT_THROW(locc1_lower_bound(m, m, {2, 2, 2, 2}, 1), qcore::DimensionError);
  const auto m5 = DensityMatrix::maximally_mixed(5);
  EXPECT_THROW(locc1_lower_bound(m5, m5, {5}, 1), qcore::DimensionError);
  EXPECT_THROW(locc1_lower_bound(m, m, {2, 2}, 1), qcore::DimensionError);
}

// ---------------------------------------------------------------- inequalities

TEST(GentleMeasurement, Examples) {
  Rng rng(5);
  const auto tau = qcore::random_density_matrix(4, rng), sigma = qcore::random_density_matrix(4, rng);
  const auto e = qcore::random_effect(4, rng);
  const auto same = gentle_measurement_check(e, tau, tau);
  EXPECT_TRUE(same.holds);
  EXPECT_NEAR(same.slack, 0.0, 1e-12);
  const auto id = gentle_measurement_check(qcore::identity(4), tau, sigma);
  EXPECT_TRUE(id.holds);
  EXPECT_NEAR(id.lhs, 1.0, 1e-12);
  EXPECT_THROW(gentle_measurement_check(2.0 * qcore::identity(4), tau, sigma), std::invalid_argument);
}

TEST(GentleMeasurement, RandomTriples) {
  Rng rng(6);
  for (int i = 0; i < 100; ++i) {
    const auto e = qcore::random_effect(4, rng);
    const auto t = qcore::random_density_matrix(4, rng), s = qcore::random_density_matrix(4, rng);
    EXPECT_TRUE(gentle_measurement_check(e, t, s).holds);
  }
}

TEST(UniformContinuity, Arithmetic) {
  EXPECT_EQ(uniform_continuity_bound(1.0, 3, 0.0), 0.0);
  EXPECT_NEAR(uniform_continuity_bound(1.0, 1, 0.1), 0.2, 1e-15);
  EXPECT_THROW(uniform_continuity_bound(-1.0, 1, 0.1), std::invalid_argument);
  EXPECT_THROW(uniform_continuity_bound(1.0, 0, 0.1), std::invalid_argument);
}

TEST(Definetti, BoundArithmetic) {
  EXPECT_EQ(definetti_bound(3, 1, 2), 0.0);
  EXPECT_NEAR(definetti_bound(4, 2, 2), 0.5, 1e-15);
  // d = 2^n reproduces the f(T, N_d, n) form with T = m, N_d = m − k
  EXPECT_NEAR(definetti_bound(100, 10, 4), f_definetti(100, 90, 2), 1e-12);
  EXPECT_THROW(definetti_bound(3, 3, 2), std::invalid_argument);
}

TEST(Definetti, IidPointMass) {
  Rng rng(9);
  const auto rho = qcore::random_density_matrix(2, rng);
  const auto sigma = DensityMatrix::trusted(qcore::kron_power(rho.matrix(), 4));
  const auto r = definetti_inequality_check(sigma, 4, 2, ProductMixture{{1.0}, {rho}}, 1, {4});
  EXPECT_LE(r.lhs, 1e-9);
  EXPECT_TRUE(r.holds);
}

TEST(Definetti, KEqualsOneNeedsExactMixture) {
  const auto ghz = qcore::PureState::normalized(qcore::basis_state(8, 0).amplitudes() + qcore::basis_state(8, 7).amplitudes());
  const auto sigma = dm(ghz);
  const std::vector<std::size_t> dims{2, 2, 2};
  const auto marginal = qcore::reduced_state(sigma, dims, {0});
  const auto r = definetti_inequality_check(sigma, 3, 1, ProductMixture{{1.0}, {marginal}}, 1, {4});
  EXPECT_LE(r.lhs, 1e-9);
  EXPECT_EQ(r.rhs, 0.0);
  EXPECT_TRUE(r.holds);
}

TEST(Definetti, FittedMixtureForSymmetricStates) {
  const auto ghz =
      qcore::PureState::normalized(qcore::basis_state(16, 0).amplitudes() + qcore::basis_state(16, 15).amplitudes());
  const auto dict = product_state_dictionary();
  const std::vector<std::size_t> dims{2, 2, 2, 2};
  const auto marginal = qcore::reduced_state(dm(ghz), dims, {0, 1});
  const auto fit = fit_product_mixture(marginal, 2, dict);
  double wsum = 0.0;
  for (double w : fit.weights) {
    EXPECT_GE(w, 0.0);
    wsum += w;
  }
  EXPECT_NEAR(wsum, 1.0, 1e-12);
  // the GHZ marginal is exactly (|00><00| + |11><11|)/2
  EXPECT_LT((fit.power(2).matrix() - marginal.matrix()).norm(), 1e-6);
  const auto r = definetti_inequality_check(dm(ghz), 4, 2, fit, 3, {4});
  EXPECT_TRUE(r.holds);
  EXPECT_NEAR(r.rhs, 0.5, 1e-15);

  // W state: not a mixture of products at k = 2, yet within the bound
  qcore::Vector w = qcore::Vector::Zero(16);
  for (int b : {1, 2, 4, 8}) w(b) = 0.5;
  const auto wfit = fit_product_mixture(qcore::reduced_state(dm(qcore::PureState(w)), dims, {0, 1}), 2, dict);
  const auto rw = definetti_inequality_check(dm(qcore::PureState(w)), 4, 2, wfit, 3, {4});
  EXPECT_TRUE(rw.holds);
  EXPECT_GT(rw.lhs, 0.0);
}

// ---------------------------------------------------------------- suites

TEST(Suites, DefaultSeedsPass) {
  for (const auto& s : run_property_suites()) {
    EXPECT_GT(s.cases, 0u) << s.name;
    EXPECT_EQ(s.violations, 0u) << s.name;
  }
}

TEST(Suites, InjectedViolationIsCaught) {
  SuiteOptions opt;
  opt.inject_violation = true;
  EXPECT_GT(suite_fuchs_van_de_graaf(opt).violations, 0u);
}
