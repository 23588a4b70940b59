// Fails the run if any exact verdict anywhere in the suite came with a
// nonzero thresholded error.
#include <gtest/gtest.h>

#include "soundness.hpp"

namespace {

class SoundnessEnvironment : public ::testing::Environment {
 public:
  void TearDown() override { EXPECT_EQ(exemb::testing::soundness().unsound, 0u); }
};

const auto* const registered = ::testing::AddGlobalTestEnvironment(new SoundnessEnvironment);

}  // namespace
