#include "wavecurve/circular_convolution.hpp"

#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "support/oracles.hpp"

namespace {

using wavecurve::PeriodicSignal;
using wavecurve::TwoSidedFilter;

std::vector<double> random_values(std::mt19937_64& rng, std::size_t n) {
  std::vector<double> v(n);
  for (auto& x : v) x = 2.0 * oracles::u01(rng) - 1.0;
  return v;
}

TEST(PeriodicSignal, EnforcesPowerOfTwoLength) {
  EXPECT_THROW(PeriodicSignal(std::vector<double>{}), std::invalid_argument);
  EXPECT_THROW(PeriodicSignal(std::vector<double>{1.0, 2.0, 3.0}), std::invalid_argument);
  EXPECT_NO_THROW(PeriodicSignal(std::vector<double>{5.0}));
  EXPECT_NO_THROW(PeriodicSignal(std::vector<double>{1.0, 2.0, 3.0, 4.0}));
}

TEST(PeriodicSignal, TwoSidedIndexingWrapsBothWays) {
  const PeriodicSignal a(std::vector<double>{1.0, 2.0, 3.0, 4.0});
  EXPECT_EQ(a.first_index(), -2);
  EXPECT_EQ(a.last_index(), 1);
  EXPECT_DOUBLE_EQ(a.at(-2), 1.0);
  EXPECT_DOUBLE_EQ(a.at(1), 4.0);
  EXPECT_DOUBLE_EQ(a.at(2), 1.0);    // wraps forward
  EXPECT_DOUBLE_EQ(a.at(-3), 4.0);   // wraps backward
  EXPECT_DOUBLE_EQ(a.at(-6), 1.0);
}

TEST(TwoSidedFilter, RejectsEvenOrTinyTapCounts) {
  EXPECT_THROW(TwoSidedFilter(std::vector<double>{1.0}), std::invalid_argument);
  EXPECT_THROW(TwoSidedFilter(std::vector<double>{1.0, 2.0}), std::invalid_argument);
  EXPECT_THROW(TwoSidedFilter(std::vector<double>{1.0, 2.0, 3.0, 4.0}), std::invalid_argument);
  const TwoSidedFilter f(std::vector<double>{1.0, 2.0, 3.0});
  EXPECT_EQ(f.radius(), 2);
  EXPECT_DOUBLE_EQ(f.at(-1), 1.0);
  EXPECT_DOUBLE_EQ(f.at(0), 2.0);
  EXPECT_DOUBLE_EQ(f.at(1), 3.0);
  EXPECT_DOUBLE_EQ(f.at(2), 0.0);
  EXPECT_DOUBLE_EQ(f.at(-2), 0.0);
}

TEST(PeriodicExtend, MatchesHandComputedLayout) {
  const PeriodicSignal a(std::vector<double>{1.0, 2.0, 3.0, 4.0});
  const auto ext = wavecurve::periodic_extend(a, 2);
  const std::vector<double> want = {4.0, 1.0, 2.0, 3.0, 4.0, 1.0};
  ASSERT_EQ(ext.size(), want.size());
  for (std::size_t i = 0; i < want.size(); ++i) EXPECT_DOUBLE_EQ(ext[i], want[i]);
}

TEST(PeriodicExtend, RejectsBadRadii) {
  const PeriodicSignal a(std::vector<double>{1.0, 2.0, 3.0, 4.0});
  EXPECT_THROW(wavecurve::periodic_extend(a, 1), std::invalid_argument);
  EXPECT_THROW(wavecurve::periodic_extend(a, 3), std::invalid_argument);
}

TEST(CircularConvolve, ImpulseIsIdentity) {
  const PeriodicSignal a(std::vector<double>{1.0, 2.0, 3.0, 4.0});
  const TwoSidedFilter impulse(std::vector<double>{0.0, 1.0, 0.0});
  const auto out = circular_convolve(a, impulse);
  ASSERT_EQ(out.size(), a.size());
  for (long k = a.first_index(); k <= a.last_index(); ++k)
    EXPECT_NEAR(out.at(k), a.at(k), 1e-14);
}

TEST(CircularConvolve, SpectralPathMatchesDirectSummation) {
  std::mt19937_64 rng(31);
  const long radii[] = {2, 3, 5, 9, 17};
  int spectral_cases = 0;
  for (std::size_t n_half : {4u, 8u, 16u, 32u, 64u, 128u, 256u}) {
    for (long m : radii) {
      if (m > static_cast<long>(n_half)) continue;
      for (int trial = 0; trial < 4; ++trial) {
        const auto av = random_values(rng, 2 * n_half);
        const auto gv = random_values(rng, static_cast<std::size_t>(2 * m - 1));
        const PeriodicSignal a(av);
        const TwoSidedFilter g(gv);
        const auto got = circular_convolve(a, g);
        const auto want = oracles::direct_periodic_convolve(av, gv);
        for (std::size_t i = 0; i < want.size(); ++i)
          EXPECT_NEAR(got.values()[i], want[i], 1e-10)
              << "N=" << n_half << " M=" << m << " i=" << i;
        ++spectral_cases;
      }
    }
  }
  EXPECT_GE(spectral_cases, 100);
}

TEST(CircularConvolve, LongFilterFallbackMatchesDirectSummation) {
  std::mt19937_64 rng(32);
  for (std::size_t n_half : {1u, 2u, 4u, 8u}) {
    const long m = 16;
    const auto av = random_values(rng, 2 * n_half);
    const auto gv = random_values(rng, static_cast<std::size_t>(2 * m - 1));
    const auto got = circular_convolve(PeriodicSignal(av), TwoSidedFilter(gv));
    const auto want = oracles::direct_periodic_convolve(av, gv);
    for (std::size_t i = 0; i < want.size(); ++i)
      EXPECT_NEAR(got.values()[i], want[i], 1e-10) << "N=" << n_half;
  }
}

TEST(CircularConvolve, IsLinear) {
  std::mt19937_64 rng(33);
  const auto av = random_values(rng, 16);
  const auto bv = random_values(rng, 16);
  const auto gv = random_values(rng, 9);
  const TwoSidedFilter g(gv);
  std::vector<double> mix(16);
  for (std::size_t i = 0; i < 16; ++i) mix[i] = 2.0 * av[i] - 3.0 * bv[i];
  const auto lhs = circular_convolve(PeriodicSignal(mix), g);
  const auto ca = circular_convolve(PeriodicSignal(av), g);
  const auto cb = circular_convolve(PeriodicSignal(bv), g);
  for (std::size_t i = 0; i < 16; ++i)
    EXPECT_NEAR(lhs.values()[i], 2.0 * ca.values()[i] - 3.0 * cb.values()[i], 1e-12);
}

TEST(Downsample, KeepsEvenIndices) {
  const PeriodicSignal a(std::vector<double>{1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0});
  const auto out = downsample(a);  // a_{-4..3}; keep indices -4,-2,0,2
  ASSERT_EQ(out.size(), 4u);
  EXPECT_DOUBLE_EQ(out.at(-2), a.at(-4));
  EXPECT_DOUBLE_EQ(out.at(-1), a.at(-2));
  EXPECT_DOUBLE_EQ(out.at(0), a.at(0));
  EXPECT_DOUBLE_EQ(out.at(1), a.at(2));
}

TEST(Downsample, RefusesToDropBelowLengthTwo) {
  EXPECT_THROW(downsample(PeriodicSignal(std::vector<double>{1.0, 2.0})), std::invalid_argument);
  EXPECT_THROW(downsample(PeriodicSignal(std::vector<double>{1.0})), std::invalid_argument);
}

TEST(Upsample, InterleavesZeros) {
  const PeriodicSignal a(std::vector<double>{1.0, 2.0});
  const auto out = upsample(a);
  ASSERT_EQ(out.size(), 4u);
  EXPECT_DOUBLE_EQ(out.at(-2), 1.0);
  EXPECT_DOUBLE_EQ(out.at(-1), 0.0);
  EXPECT_DOUBLE_EQ(out.at(0), 2.0);
  EXPECT_DOUBLE_EQ(out.at(1), 0.0);
}

TEST(Upsample, AcceptsSingleCoefficient) {
  const PeriodicSignal a(std::vector<double>{5.0});
  const auto out = upsample(a);
  ASSERT_EQ(out.size(), 2u);
  EXPECT_DOUBLE_EQ(out.at(0), 5.0);
  EXPECT_DOUBLE_EQ(out.at(1), 0.0);  // odd slot, wraps to index -1
}

TEST(Upsample, DownsampleUndoesIt) {
  std::mt19937_64 rng(34);
  const auto av = random_values(rng, 8);
  const PeriodicSignal a(av);
  const auto round = downsample(upsample(a));
  for (std::size_t i = 0; i < av.size(); ++i) EXPECT_DOUBLE_EQ(round.values()[i], av[i]);
}

}  // namespace
