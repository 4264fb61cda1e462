#include "wavecurve/pyramid.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "support/oracles.hpp"

namespace {

using wavecurve::FilterBank;
using wavecurve::PeriodicSignal;

PeriodicSignal random_signal(std::mt19937_64& rng, std::size_t n) {
  std::vector<double> v(n);
  for (auto& x : v) x = 2.0 * oracles::u01(rng) - 1.0;
  return PeriodicSignal(std::move(v));
}

double sq_norm(const PeriodicSignal& s) {
  double acc = 0.0;
  for (double x : s.values()) acc += x * x;
  return acc;
}

TEST(FilterEmbedding, PlacesBankTapsAtTheirLogicalIndices) {
  const auto bank = FilterBank::daubechies(2);
  const auto h = wavecurve::synthesis_lowpass(bank);
  const auto g = wavecurve::synthesis_highpass(bank);
  const auto ht = wavecurve::analysis_lowpass(bank);
  const auto gt = wavecurve::analysis_highpass(bank);
  ASSERT_EQ(h.radius(), 4);
  for (long k = 0; k < 4; ++k) {
    EXPECT_DOUBLE_EQ(h.at(k), bank.lowpass()[static_cast<std::size_t>(k)]);
    EXPECT_DOUBLE_EQ(ht.at(-k), bank.lowpass()[static_cast<std::size_t>(k)]);
    const long gk = bank.highpass_first_index() + k;
    EXPECT_DOUBLE_EQ(g.at(gk), bank.highpass()[static_cast<std::size_t>(k)]);
    EXPECT_DOUBLE_EQ(gt.at(-gk), bank.highpass()[static_cast<std::size_t>(k)]);
  }
  EXPECT_DOUBLE_EQ(h.at(-1), 0.0);
  EXPECT_DOUBLE_EQ(ht.at(1), 0.0);
}

TEST(DecomposeStep, HaarSplitsConstantIntoPureApprox) {
  const auto bank = FilterBank::daubechies(1);
  const PeriodicSignal a(std::vector<double>{1.0, 1.0, 1.0, 1.0});
  const auto step = decompose_step(a, bank);
  const double r2 = std::sqrt(2.0);
  ASSERT_EQ(step.approx.size(), 2u);
  for (double v : step.approx.values()) EXPECT_NEAR(v, r2, 1e-12);
  for (double v : step.detail.values()) EXPECT_NEAR(v, 0.0, 1e-12);
}

TEST(DecomposeStep, HaarSplitsAlternationIntoPureDetail) {
  const auto bank = FilterBank::daubechies(1);
  const PeriodicSignal a(std::vector<double>{1.0, -1.0, 1.0, -1.0});
  const auto step = decompose_step(a, bank);
  const double r2 = std::sqrt(2.0);
  for (double v : step.approx.values()) EXPECT_NEAR(v, 0.0, 1e-12);
  for (double v : step.detail.values()) EXPECT_NEAR(v, -r2, 1e-12);
}

TEST(DecomposeStep, RejectsSignalsTooShortToHalve) {
  const auto bank = FilterBank::daubechies(1);
  EXPECT_THROW(decompose_step(PeriodicSignal(std::vector<double>{1.0, 2.0}), bank),
               std::invalid_argument);
}

TEST(DecomposeStep, SplitsEnergyExactly) {
  std::mt19937_64 rng(41);
  for (int p : {1, 2, 4, 8, 16}) {
    const auto bank = FilterBank::daubechies(p);
    const auto a = random_signal(rng, 64);
    const auto step = decompose_step(a, bank);
    EXPECT_NEAR(sq_norm(a), sq_norm(step.approx) + sq_norm(step.detail), 1e-9) << "p=" << p;
  }
}

TEST(ReconstructStep, InvertsOneLevelForEveryBank) {
  std::mt19937_64 rng(42);
  for (int p : {1, 2, 4, 8, 16}) {
    const auto bank = FilterBank::daubechies(p);
    for (std::size_t n : {4u, 8u, 32u, 128u}) {
      const auto a = random_signal(rng, n);
      const auto step = decompose_step(a, bank);
      const auto back = reconstruct_step(step.approx, &step.detail, bank);
      ASSERT_EQ(back.size(), a.size());
      for (std::size_t i = 0; i < n; ++i)
        EXPECT_NEAR(back.values()[i], a.values()[i], 1e-9) << "p=" << p << " n=" << n;
    }
  }
}

TEST(ReconstructStep, DropsDetailBranchWhenAbsent) {
  const auto bank = FilterBank::daubechies(1);
  const PeriodicSignal a(std::vector<double>{3.0, 3.0, 3.0, 3.0});
  const auto step = decompose_step(a, bank);
  const auto back = reconstruct_step(step.approx, nullptr, bank);
  for (double v : back.values()) EXPECT_NEAR(v, 3.0, 1e-12);
}

TEST(ReconstructStep, GrowsASingleCoefficientToTwo) {
  const auto bank = FilterBank::daubechies(1);
  const PeriodicSignal a(std::vector<double>{std::sqrt(2.0)});
  const auto back = reconstruct_step(a, nullptr, bank);
  ASSERT_EQ(back.size(), 2u);
  EXPECT_NEAR(back.at(0), 1.0, 1e-12);
  EXPECT_NEAR(back.at(-1), 1.0, 1e-12);
}

TEST(ReconstructStep, RejectsMismatchedDetailLength) {
  const auto bank = FilterBank::daubechies(1);
  const PeriodicSignal a4 = PeriodicSignal::zeros(4);
  const PeriodicSignal a2 = PeriodicSignal::zeros(2);
  EXPECT_THROW(reconstruct_step(a4, &a2, bank), std::invalid_argument);
}

TEST(Pyramid, MultiLevelRoundTripIsExact) {
  std::mt19937_64 rng(43);
  for (int p : {1, 2, 8}) {
    const auto bank = FilterBank::daubechies(p);
    const auto a = random_signal(rng, 256);
    const auto dec = decompose(a, bank, 8, 1);
    ASSERT_EQ(dec.details.size(), 7u);
    ASSERT_EQ(dec.coarsest.size(), 2u);
    for (std::size_t i = 0; i < dec.details.size(); ++i)
      EXPECT_EQ(dec.details[i].size(), std::size_t{2} << i);
    const auto back = reconstruct(dec, bank);
    for (std::size_t i = 0; i < a.size(); ++i)
      EXPECT_NEAR(back.values()[i], a.values()[i], 1e-9) << "p=" << p;
  }
}

TEST(Pyramid, MultiLevelPreservesEnergy) {
  std::mt19937_64 rng(44);
  const auto bank = FilterBank::daubechies(4);
  const auto a = random_signal(rng, 128);
  const auto dec = decompose(a, bank, 7, 2);
  double acc = sq_norm(dec.coarsest);
  for (const auto& d : dec.details) acc += sq_norm(d);
  EXPECT_NEAR(acc, sq_norm(a), 1e-9);
}

TEST(Pyramid, ValidatesLevelArguments) {
  const auto bank = FilterBank::daubechies(1);
  const PeriodicSignal a = PeriodicSignal::zeros(8);
  EXPECT_THROW(wavecurve::decompose(a, bank, 3, 0), std::invalid_argument);
  EXPECT_THROW(wavecurve::decompose(a, bank, 3, 3), std::invalid_argument);
  EXPECT_THROW(wavecurve::decompose(a, bank, 4, 1), std::invalid_argument);  // length mismatch
}

}  // namespace
