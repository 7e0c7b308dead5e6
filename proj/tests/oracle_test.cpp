// Copyright 2026 The ghz-synth Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cmath>
#include <complex>

#include "ghz/ghz.hpp"

namespace ghz {
namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

TEST(StateVector, HadamardAmplitudes) {
  Circuit c(1);
  c.h(0);
  const DenseOutcome out = run_dense(c, RngSeed{});
  const auto& amps = out.state.amplitudes();
  EXPECT_NEAR(std::abs(amps[0] - kInvSqrt2), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(amps[1] - kInvSqrt2), 0.0, 1e-15);
}

TEST(StateVector, QubitZeroIsMostSignificant) {
  Circuit c(3);
  c.x(0);
  const DenseOutcome out = run_dense(c, RngSeed{});
  const auto& amps = out.state.amplitudes();
  EXPECT_NEAR(std::abs(amps[0b100]), 1.0, 1e-15);
}

TEST(StateVector, GhzAmplitudes) {
  const StateVector g = StateVector::ghz(4);
  EXPECT_NEAR(g.amplitudes()[0].real(), kInvSqrt2, 1e-15);
  EXPECT_NEAR(g.amplitudes()[15].real(), kInvSqrt2, 1e-15);
  EXPECT_NEAR(g.norm(), 1.0, 1e-12);
}

TEST(StateFidelity, Examples) {
  const StateVector g3 = StateVector::ghz(3);
  EXPECT_NEAR(state_fidelity(g3, g3), 1.0, 1e-12);

  StateVector zero(1);
  StateVector one(1);
  one.x(0);
  EXPECT_NEAR(state_fidelity(zero, one), 0.0, 1e-15);

  StateVector plus(3);
  for (std::size_t q = 0; q < 3; ++q) plus.h(q);
  EXPECT_NEAR(state_fidelity(g3, plus), 0.25, 1e-12);

  EXPECT_THROW(state_fidelity(g3, zero), InvalidParameter);
}

TEST(StateVector, PauliExpectations) {
  const StateVector g = StateVector::ghz(3);
  EXPECT_NEAR(g.expectation(PauliString::parse("XXX")), 1.0, 1e-12);
  EXPECT_NEAR(g.expectation(PauliString::parse("ZZI")), 1.0, 1e-12);
  EXPECT_NEAR(g.expectation(PauliString::parse("-XYY")), 1.0, 1e-12);
  EXPECT_NEAR(g.expectation(PauliString::parse("ZII")), 0.0, 1e-12);
  EXPECT_NEAR(g.expectation(PauliString::parse("-XXX")), -1.0, 1e-12);
}

TEST(StateVector, CapacityAndForcingErrors) {
  EXPECT_THROW(StateVector(15), CapacityError);
  EXPECT_THROW(run_dense(Circuit(15), RngSeed{}), CapacityError);
  EXPECT_NO_THROW(run_dense(Circuit(14), RngSeed{}));

  Circuit c(1);
  c.measure(0);
  EXPECT_THROW(run_dense(c, RngSeed{}, std::vector<std::uint8_t>{1}), InvalidForcing);
  EXPECT_NO_THROW(run_dense(c, RngSeed{}, std::vector<std::uint8_t>{0}));
}

TEST(StateVector, NormalizationAndBranchProbabilities) {
  Rng rng(RngSeed{31});
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + rng.uniform_index(8);
    const Circuit c = random_clifford_circuit(n, 40, rng);
    StateVector psi(n);
    for (const auto& o : c.ops()) {
      if (const auto* h = std::get_if<op::H>(&o)) psi.h(h->q);
      if (const auto* x = std::get_if<op::X>(&o)) psi.x(x->q);
      if (const auto* cx = std::get_if<op::CX>(&o)) psi.cx(cx->control, cx->target);
      if (const auto* m = std::get_if<op::MeasureZ>(&o)) {
        const double p1 = psi.probability_one(m->q);
        StateVector zero = psi;
        StateVector one = psi;
        double p0 = 0.0;
        for (std::size_t i = 0; i < psi.amplitudes().size(); ++i) {
          if (!((i >> (n - 1 - m->q)) & 1U)) p0 += std::norm(psi.amplitudes()[i]);
        }
        ASSERT_NEAR(p0 + p1, 1.0, 1e-12);
        if (p1 > 1e-12) {
          one.project(m->q, true);
          ASSERT_NEAR(one.norm(), 1.0, 1e-12);
        }
        if (p0 > 1e-12) {
          zero.project(m->q, false);
          ASSERT_NEAR(zero.norm(), 1.0, 1e-12);
        }
        psi = p1 > 0.5 ? one : zero;
      }
      ASSERT_NEAR(psi.norm(), 1.0, 1e-12);
    }
  }
}

TEST(RunDense, TwoStarMergeBothBranches) {
  // Keeper star {0: 1}, absorbed star {2: 3}, bridge (0, 2). The measurement
  // is a fair coin and either branch leaves GHZ on qubits 0, 1, 3.
  const TwoStarMerge merge = two_star_merge_circuit(1, 1, {0, 1, 2, 3}, false);
  ASSERT_EQ(merge.measured_qubit, 2u);
  for (std::uint8_t outcome : {0, 1}) {
    const DenseOutcome out = run_dense(merge.circuit, RngSeed{}, std::vector<std::uint8_t>{outcome});
    EXPECT_EQ(out.cbits[0], outcome);
    // Explicit target state (|0,0,b,0> + |1,1,b,1>)/sqrt(2).
    std::vector<StateVector::Amplitude> amps(16, 0.0);
    const std::size_t b = outcome ? 0b0010 : 0;
    amps[b] = amps[0b1101 | b] = kInvSqrt2;
    EXPECT_NEAR(state_fidelity(out.state, StateVector::from_amplitudes(4, amps)), 1.0, 1e-12);
  }
}

TEST(RunDense, MergeMeasurementIsAFairCoin) {
  const TwoStarMerge merge = two_star_merge_circuit(2, 1, {0, 1, 2, 3, 4}, false);
  StateVector psi(5);
  for (const auto& o : merge.circuit.ops()) {
    if (std::holds_alternative<op::MeasureZ>(o)) break;
    if (const auto* h = std::get_if<op::H>(&o)) psi.h(h->q);
    if (const auto* cx = std::get_if<op::CX>(&o)) psi.cx(cx->control, cx->target);
  }
  EXPECT_NEAR(psi.probability_one(merge.measured_qubit), 0.5, 1e-12);
}

TEST(RunDense, ReaddRestoresFullGhz) {
  for (std::uint8_t outcome : {0, 1}) {
    const TwoStarMerge merge = two_star_merge_circuit(2, 1, {4, 0, 2, 1, 3}, true);
    const DenseOutcome out = run_dense(merge.circuit, RngSeed{}, std::vector<std::uint8_t>{outcome});
    EXPECT_NEAR(state_fidelity(out.state, StateVector::ghz(5)), 1.0, 1e-12);
  }
}

TEST(RunDense, SeededSamplingIsReproducible) {
  Rng rng(RngSeed{32});
  const Circuit c = random_clifford_circuit(6, 50, rng);
  const DenseOutcome a = run_dense(c, RngSeed{8});
  const DenseOutcome b = run_dense(c, RngSeed{8});
  EXPECT_EQ(a.measurement_events, b.measurement_events);
  EXPECT_EQ(a.state.amplitudes(), b.state.amplitudes());
}

}  // namespace
}  // namespace ghz
