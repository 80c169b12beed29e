#include "dqs/qcore.hpp"

#include <gtest/gtest.h>
#include <unsupported/Eigen/MatrixFunctions>

#include <map>

using namespace dqs::qcore;
using dqs::Rng;

namespace {

constexpr double kTol = 1e-10;

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

DensityMatrix dm(const PureState& s) { return DensityMatrix(s); }

}  // namespace

// ---------------------------------------------------------------- pauli

TEST(Pauli, ZOnZeroHasEigenvaluePlusOne) {
  EXPECT_NEAR(expectation(pauli(Axis::Z), dm(qubit::zero())), 1.0, kTol);
  const Vector out = pauli_matrix(Axis::Z) * qubit::zero().amplitudes();
  EXPECT_LT((out - qubit::zero().amplitudes()).norm(), kTol);
}

TEST(Pauli, YActsAsPlusOneOnRight) {
  const Vector out = pauli_matrix(Axis::Y) * qubit::right().amplitudes();
  EXPECT_LT((out - qubit::right().amplitudes()).norm(), kTol);
  const Vector out_l = pauli_matrix(Axis::Y) * qubit::left().amplitudes();
  EXPECT_LT((out_l + qubit::left().amplitudes()).norm(), kTol);
}

TEST(Pauli, CommutatorXY) {
  const Matrix x = pauli_matrix(Axis::X), y = pauli_matrix(Axis::Y), z = pauli_matrix(Axis::Z);
  EXPECT_LT(max_abs(x * y - y * x - Complex(0, 2) * z), kTol);
}

TEST(Pauli, SpectralDecompositionReconstructs) {
  for (auto a : kAxes) {
    const auto obs = pauli(a);
    ASSERT_EQ(obs.eigenvalues().size(), 2u);
    EXPECT_EQ(obs.eigenvalues()[0], -1.0);
    EXPECT_EQ(obs.eigenvalues()[1], 1.0);
    Matrix recon = Matrix::Zero(2, 2), sum = Matrix::Zero(2, 2);
    for (std::size_t k = 0; k < 2; ++k) {
      recon += obs.eigenvalues()[k] * obs.projectors()[k];
      sum += obs.projectors()[k];
    }
    EXPECT_LT(max_abs(recon - obs.matrix()), kTol);
    EXPECT_LT(max_abs(sum - identity(2)), kTol);
  }
}

// ---------------------------------------------------------------- bold pauli

TEST(BoldPauli, ReducesToPauliAtOneQubit) {
  for (auto frame : {LogicalFrame::computational(1), LogicalFrame::phase_aligned(1)})
    for (auto a : kAxes) EXPECT_LT(max_abs(bold_pauli(frame, a).matrix() - pauli_matrix(a)), kTol) << to_string(a);
}

TEST(BoldPauli, TwoQubitSpectrumHasRankTwoSupport) {
  for (auto frame : {LogicalFrame::computational(2), LogicalFrame::phase_aligned(2)}) {
    const auto z = bold_pauli(frame, Axis::Z);
    EXPECT_EQ(z.eigenvalues(), (std::vector<double>{-1.0, 0.0, 1.0}));
    EXPECT_NEAR(z.projectors()[0].trace().real(), 1.0, kTol);
    EXPECT_NEAR(z.projectors()[1].trace().real(), 2.0, kTol);
    EXPECT_NEAR(z.projectors()[2].trace().real(), 1.0, kTol);
  }
}

TEST(BoldPauli, LogicalFlipElement) {
  for (std::size_t n = 1; n <= 3; ++n) {
    const auto frame = LogicalFrame::phase_aligned(n);
    const Matrix x = bold_pauli(frame, Axis::X).matrix();
    const Complex el = frame.pole0().amplitudes().dot(x * frame.pole1().amplitudes());
    EXPECT_NEAR(el.real(), 1.0, kTol);
    EXPECT_NEAR(el.imag(), 0.0, kTol);
  }
}

TEST(BoldPauli, FrameAlgebra) {
  for (std::size_t n = 1; n <= 4; ++n) {
    for (auto frame : {LogicalFrame::computational(n), LogicalFrame::phase_aligned(n)}) {
      const Matrix x = bold_pauli(frame, Axis::X).matrix();
      const Matrix y = bold_pauli(frame, Axis::Y).matrix();
      const Matrix z = bold_pauli(frame, Axis::Z).matrix();
      const Matrix support = frame.support();
      EXPECT_NEAR(std::abs(frame.pole0().amplitudes().dot(frame.pole1().amplitudes())), 0.0, kTol);
      EXPECT_LT(max_abs(x * x - support), kTol);
      EXPECT_LT(max_abs(y * y - support), kTol);
      EXPECT_LT(max_abs(z * z - support), kTol);
      EXPECT_LT(max_abs(x * y + y * x), kTol);
      EXPECT_LT(max_abs(y * z + z * y), kTol);
      EXPECT_LT(max_abs(x * y - y * x - Complex(0, 2) * z), kTol);
    }
    const auto frame = LogicalFrame::phase_aligned(n);
    const Matrix ydiag = frame.pole0().projector() - frame.pole1().projector();
    EXPECT_LT(max_abs(bold_pauli(frame, Axis::Y).matrix() - ydiag), kTol);
  }
}

// ---------------------------------------------------------------- encoding

TEST(Encoding, ZeroPhaseIsIdentity) {
  for (std::size_t n = 1; n <= 3; ++n) EXPECT_LT(max_abs(encoding_unitary(n, 0.0) - identity(qubit_dim(n))), kTol);
}

TEST(Encoding, PiIsGlobalPhaseOnly) {
  const Matrix u = encoding_unitary(1, kPi);
  EXPECT_LT(max_abs(u + identity(2)), kTol);
  Rng rng(3);
  const auto rho = random_density_matrix(2, rng);
  const auto out = apply_unitary(u, rho);
  for (auto a : kAxes) EXPECT_NEAR(expectation(pauli(a), out), expectation(pauli(a), rho), kTol);
}

TEST(Encoding, MatchesMatrixExponential) {
  // oracle: Eigen's general matrix exponential of i·φ·(Y⊗I + I⊗Y)
  const double phi = 0.3;
  const Matrix y = pauli_matrix(Axis::Y);
  const Matrix gen = Complex(0, phi) * (kron(y, identity(2)) + kron(identity(2), y));
  const Matrix expected = gen.exp();
  EXPECT_LT(max_abs(encoding_unitary(2, phi) - expected), 1e-12);
  const Vector rr = kron(qubit::right().amplitudes(), qubit::right().amplitudes());
  const Vector out = encoding_unitary(2, phi) * rr;
  const Complex eig = rr.dot(out);
  EXPECT_NEAR(eig.real(), std::cos(0.6), 1e-12);
  EXPECT_NEAR(eig.imag(), std::sin(0.6), 1e-12);
}

TEST(Encoding, ActsDiagonallyOnPhaseAlignedPoles) {
  for (std::size_t n = 1; n <= 4; ++n) {
    const auto frame = LogicalFrame::phase_aligned(n);
    const double phi = 0.17;
    const Matrix u = encoding_unitary(n, phi);
    const Complex c0 = frame.pole0().amplitudes().dot(u * frame.pole0().amplitudes());
    const Complex c1 = frame.pole1().amplitudes().dot(u * frame.pole1().amplitudes());
    EXPECT_NEAR(std::abs(c0 - std::polar(1.0, n * phi)), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(c1 - std::polar(1.0, -double(n) * phi)), 0.0, 1e-12);
    // preserves the logical subspace
    EXPECT_LT(max_abs(u * frame.support() - frame.support() * u), 1e-12);
  }
}

// ---------------------------------------------------------------- resource state

TEST(ResourceState, StabilizersAllPlusOne) {
  for (std::size_t n = 1; n <= 4; ++n) {
    const auto frame = LogicalFrame::phase_aligned(n);
    const auto rho = dm(resource_state(frame));
    double product = 1.0, fhat = 1.0;
    for (auto term : kStabilizers) {
      const double e = expectation(stabilizer(frame, term), rho);
      EXPECT_NEAR(e, 1.0, 1e-12) << "n=" << n;
      product *= e;
      fhat += e;
    }
    EXPECT_NEAR(product, 1.0, 1e-12);
    EXPECT_NEAR(fhat / 4.0, 1.0, 1e-12);
  }
}

TEST(ResourceState, StabilizerProductIdentity) {
  for (std::size_t n = 1; n <= 3; ++n) {
    const auto frame = LogicalFrame::phase_aligned(n);
    const Matrix s1 = stabilizer(frame, kStabilizers[0]);
    const Matrix s2 = stabilizer(frame, kStabilizers[1]);
    const Matrix s3 = stabilizer(frame, kStabilizers[2]);
    EXPECT_LT(max_abs(s1 * s2 - s3), 1e-12);
  }
}

TEST(ResourceState, AliceMarginalIsMaximallyMixed) {
  for (std::size_t n = 1; n <= 3; ++n) {
    const auto rho = dm(resource_state(n));
    const std::vector<std::size_t> dims{2, qubit_dim(n)};
    EXPECT_LT(max_abs(partial_trace(rho.matrix(), dims, {0}) - identity(2) / 2.0), 1e-12);
  }
}

TEST(ResourceState, MatchesExperimentalStateAtOneQubit) {
  // (|H>|D> + |V>|A>)/√2 with H→0, V→1, D→+, A→−
  const Vector expected = (kron(qubit::zero().amplitudes(), qubit::plus().amplitudes()) +
                           kron(qubit::one().amplitudes(), qubit::minus().amplitudes())) /
                          std::sqrt(2.0);
  EXPECT_NEAR(fidelity(resource_state(1), PureState(expected)), 1.0, 1e-12);
}

// ---------------------------------------------------------------- mub probes

TEST(MubProbe, PolesAndEquator) {
  for (std::size_t n = 1; n <= 3; ++n) {
    const auto frame = LogicalFrame::computational(n);
    EXPECT_NEAR(fidelity(mub_probe(frame, {Axis::Z, +1}), frame.pole0()), 1.0, 1e-12);
    EXPECT_NEAR(fidelity(mub_probe(frame, {Axis::Z, -1}), frame.pole1()), 1.0, 1e-12);
    const PureState eq = PureState::normalized(frame.pole0().amplitudes() + frame.pole1().amplitudes());
    EXPECT_NEAR(fidelity(mub_probe(frame, {Axis::X, +1}), eq), 1.0, 1e-12);
  }
}

TEST(MubProbe, EigenstateOfSignedBoldPauli) {
  for (std::size_t n = 1; n <= 3; ++n) {
    const auto frame = LogicalFrame::phase_aligned(n);
    for (auto p : kSignedAxes) {
      const auto probe = dm(mub_probe(frame, p));
      EXPECT_NEAR(p.sign * expectation(bold_pauli(frame, p.axis), probe), 1.0, 1e-12) << to_string(p);
    }
  }
}

TEST(MubProbe, EncodedEquatorialExpectationIsCos2nPhi) {
  for (std::size_t n = 1; n <= 3; ++n) {
    const auto frame = LogicalFrame::phase_aligned(n);
    for (double phi : {0.0, 0.2, 0.7, 1.3}) {
      for (auto a : {Axis::X, Axis::Z}) {
        const auto rho = apply_unitary(encoding_unitary(n, phi), dm(mub_probe(frame, {a, +1})));
        EXPECT_NEAR(expectation(bold_pauli(frame, a), rho), std::cos(2.0 * n * phi), 1e-12);
      }
    }
  }
}

// ---------------------------------------------------------------- channels

TEST(Channel, IdentityLeavesStateUnchanged) {
  Rng rng(11);
  const auto rho = random_density_matrix(4, rng);
  EXPECT_LT(max_abs(apply(Channel::identity_channel(4), rho).matrix() - rho.matrix()), kTol);
}

TEST(Channel, FullDepolarizationGivesMaximallyMixed) {
  Rng rng(12);
  for (int i = 0; i < 5; ++i) {
    const auto out = apply(depolarizing(1, 1.0), random_density_matrix(2, rng));
    EXPECT_LT(max_abs(out.matrix() - identity(2) / 2.0), kTol);
  }
}

TEST(Channel, WernerFidelityOracle) {
  // analytic: depolarizing p on Bob's half of a maximally entangled pair gives F = 1 − 3p/4
  const auto psi = resource_state(1);
  for (double p : {0.0, 0.084, 0.2, 0.5, 1.0}) {
    const auto out = apply(depolarizing(1, p).embedded(2, 1), DensityMatrix(psi));
    EXPECT_NEAR(fidelity(psi, out), 1.0 - 0.75 * p, 1e-12);
    const std::vector<std::size_t> dims{2, 2};
    const auto direct = depolarize_subsystem(DensityMatrix(psi), dims, 1, p);
    EXPECT_LT(max_abs(direct.matrix() - out.matrix()), 1e-12);
  }
}

TEST(Channel, RejectsNonTracePreservingAndMismatch) {
  EXPECT_THROW(Channel({2.0 * identity(2)}), std::invalid_argument);
  EXPECT_THROW(apply(Channel::identity_channel(2), DensityMatrix::maximally_mixed(4)), DimensionError);
  EXPECT_THROW(apply_unitary(identity(2), DensityMatrix::maximally_mixed(4)), DimensionError);
  EXPECT_THROW(depolarizing(1, 1.5), std::invalid_argument);
}

TEST(Channel, OutputsSatisfyDensityInvariants) {
  Rng rng(13);
  for (int i = 0; i < 20; ++i) {
    const auto rho = random_density_matrix(4, rng);
    EXPECT_TRUE(apply(depolarizing(2, rng.uniform()), rho).is_valid());
    EXPECT_TRUE(apply_unitary(random_unitary(4, rng), rho).is_valid());
    const std::vector<std::size_t> dims{2, 2};
    EXPECT_TRUE(depolarize_subsystem(rho, dims, i % 2, rng.uniform()).is_valid());
  }
}

// ---------------------------------------------------------------- measurement

TEST(Measure, ExpectationOfZOnZero) { EXPECT_NEAR(expectation(pauli(Axis::Z), dm(qubit::zero())), 1.0, kTol); }

TEST(Measure, BornFrequenciesWithinFourSigma) {
  Rng state_rng(21);
  const auto rho = random_density_matrix(4, state_rng);
  const auto obs = bold_pauli(LogicalFrame::phase_aligned(2), Axis::X);
  const auto probs = outcome_probabilities(obs, rho);
  Rng rng(22);
  const int shots = 100000;
  std::vector<int> counts(probs.size(), 0);
  for (int s = 0; s < shots; ++s) ++counts[measure(obs, rho, rng).outcome];
  for (std::size_t k = 0; k < probs.size(); ++k) {
    const double sigma = std::sqrt(probs[k] * (1 - probs[k]) / shots);
    EXPECT_LE(std::abs(counts[k] / double(shots) - probs[k]), 4 * sigma + 1e-12) << k;
  }
}

TEST(Measure, ReproducibleFromSeed) {
  const auto rho = dm(qubit::plus());
  Rng a(5), b(5);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(measure(pauli(Axis::Z), rho, a).outcome, measure(pauli(Axis::Z), rho, b).outcome);
}

TEST(Measure, PostStateIsEigenstate) {
  Rng rng(6);
  const auto r = measure(pauli(Axis::X), dm(qubit::zero()), rng);
  EXPECT_TRUE(r.post_state.is_valid());
  EXPECT_NEAR(expectation(pauli(Axis::X), r.post_state), r.eigenvalue, kTol);
}

TEST(Measure, DimensionMismatchThrows) {
  Rng rng(1);
  EXPECT_THROW(measure(pauli(Axis::X), DensityMatrix::maximally_mixed(4), rng), DimensionError);
  EXPECT_THROW(expectation(pauli(Axis::X), DensityMatrix::maximally_mixed(4)), DimensionError);
}

// ---------------------------------------------------------------- distances

TEST(Distance, IdenticalStates) {
  Rng rng(31);
  const auto rho = random_density_matrix(4, rng);
  EXPECT_NEAR(fidelity(rho, rho), 1.0, 1e-9);
  EXPECT_NEAR(trace_distance(rho, rho), 0.0, 1e-12);
}

TEST(Distance, OrthogonalStates) {
  EXPECT_NEAR(fidelity(dm(qubit::zero()), dm(qubit::one())), 0.0, 1e-12);
  EXPECT_NEAR(trace_distance(dm(qubit::zero()), dm(qubit::one())), 1.0, 1e-12);
}

TEST(Distance, ZeroVersusPlus) {
  EXPECT_NEAR(fidelity(dm(qubit::zero()), dm(qubit::plus())), 0.5, 1e-9);
  EXPECT_NEAR(fidelity(qubit::zero(), qubit::plus()), 0.5, 1e-12);
  EXPECT_NEAR(trace_distance(dm(qubit::zero()), dm(qubit::plus())), std::sqrt(0.5), 1e-12);
}

TEST(Distance, MismatchThrows) {
  EXPECT_THROW(fidelity(DensityMatrix::maximally_mixed(2), DensityMatrix::maximally_mixed(4)), DimensionError);
  EXPECT_THROW(trace_distance(DensityMatrix::maximally_mixed(2), DensityMatrix::maximally_mixed(4)), DimensionError);
}

TEST(Distance, UnitaryInvariance) {
  Rng rng(32);
  for (int i = 0; i < 50; ++i) {
    const std::size_t d = std::size_t{2} << (i % 3);
    const auto rho = random_density_matrix(d, rng), sigma = random_density_matrix(d, rng);
    const Matrix u = random_unitary(d, rng);
    EXPECT_NEAR(trace_distance(apply_unitary(u, rho), apply_unitary(u, sigma)), trace_distance(rho, sigma), 1e-10);
  }
}

TEST(Distance, FuchsVanDeGraaf) {
  Rng rng(33);
  for (int i = 0; i < 200; ++i) {
    const std::size_t d = std::size_t{2} << (i % 3);
    const auto rho = random_density_matrix(d, rng, 1 + i % d), sigma = random_density_matrix(d, rng);
    const double f = fidelity(rho, sigma), dist = trace_distance(rho, sigma);
    EXPECT_LE(1 - std::sqrt(f), dist + 1e-9);
    EXPECT_LE(dist, std::sqrt(1 - f) + 1e-9);
  }
}

// ---------------------------------------------------------------- state types

TEST(States, InvariantsEnforced) {
  EXPECT_THROW(PureState(qubit::ket(1, 1)), InvalidState);
  Matrix bad(2, 2);
  bad << 1, 0, 0, 1;
  EXPECT_THROW(DensityMatrix{bad}, InvalidState);
  bad << 1.5, 0, 0, -0.5;
  EXPECT_THROW(DensityMatrix{bad}, InvalidState);
  bad << 0.5, 1, 0, 0.5;
  EXPECT_THROW(DensityMatrix{bad}, InvalidState);
}

TEST(States, PartialTraceOfProduct) {
  Rng rng(41);
  const auto a = random_density_matrix(2, rng), b = random_density_matrix(4, rng), c = random_density_matrix(2, rng);
  const Matrix abc = kron(kron(a.matrix(), b.matrix()), c.matrix());
  const std::vector<std::size_t> dims{2, 4, 2};
  EXPECT_LT(max_abs(partial_trace(abc, dims, {1}) - b.matrix()), 1e-12);
  EXPECT_LT(max_abs(partial_trace(abc, dims, {0, 2}) - kron(a.matrix(), c.matrix())), 1e-12);
  EXPECT_LT(max_abs(partial_trace(abc, dims, {0, 1, 2}) - abc), 1e-12);
}
