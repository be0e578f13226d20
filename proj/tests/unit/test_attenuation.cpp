#include "fexray/attenuation.hpp"
#include "fexray/error.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace fexray;

TEST(Attenuation, ZeroIntegralPassesSourceIntensity) {
  EXPECT_EQ(attenuate(0.0, AttenuationModel::identity(3.0)), 3.0);
}

TEST(Attenuation, BoneCoefficients) {
  const auto compact = AttenuationModel::linear(kCompactBoneMu);
  EXPECT_NEAR(attenuate(compact.mu_integral(1.0, 0.0), compact), std::exp(-2.251), 1e-15);
  EXPECT_NEAR(attenuate(compact.mu_integral(1.0, 0.0), compact), 0.1053, 5e-5);
  const auto cancellous = AttenuationModel::linear(kCancellousBoneMu);
  EXPECT_NEAR(attenuate(cancellous.mu_integral(1.0, 0.0), cancellous), std::exp(-0.716), 1e-15);
}

TEST(Attenuation, MonotoneAndBounded) {
  const auto m = AttenuationModel::identity(2.0);
  double prev = attenuate(0.0, m);
  for (int k = 1; k < 100; ++k) {
    const double i = attenuate(0.1 * k, m);
    EXPECT_LT(i, prev);
    EXPECT_GT(i, 0.0);
    EXPECT_LE(i, 2.0);
    prev = i;
  }
}

TEST(Attenuation, LookupTable) {
  const auto m = AttenuationModel::lookup({{0.0, 0.0}, {1.0, 0.716}, {2.0, 2.251}});
  EXPECT_NO_THROW(m.validate());
  EXPECT_EQ(m.mu(-1.0), 0.0);
  EXPECT_EQ(m.mu(1.0), 0.716);
  EXPECT_NEAR(m.mu(1.5), 0.5 * (0.716 + 2.251), 1e-15);
  EXPECT_EQ(m.mu(5.0), 2.251);
  EXPECT_TRUE(m.per_sample());
  EXPECT_EQ(m.mu_integral(9.0, 0.25), 0.25);
}

TEST(Attenuation, Validation) {
  EXPECT_THROW(AttenuationModel::linear(-1.0).validate(), ValidationError);
  EXPECT_THROW(AttenuationModel::identity(0.0).validate(), ValidationError);
  EXPECT_THROW(AttenuationModel::lookup({{0.0, 1.0}}).validate(), ValidationError);
  EXPECT_THROW(AttenuationModel::lookup({{1.0, 1.0}, {0.5, 2.0}}).validate(), ValidationError);
  EXPECT_THROW(AttenuationModel::lookup({{0.0, -1.0}, {1.0, 2.0}}).validate(), ValidationError);
}
