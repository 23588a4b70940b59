#pragma once

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <string>

#include <unistd.h>

#include "soundness.hpp"

namespace exemb::testing {

// check_exact() plus a gtest failure when the exactness verdict and the
// thresholded error disagree.
inline ExactnessReport expect_sound(const Graph& g, const EmbeddingPair& e) {
  const std::size_t before = soundness().unsound;
  const ExactnessReport r = check_exact(g, e);
  EXPECT_EQ(soundness().unsound, before) << "exact embedding with nonzero thresholded error";
  return r;
}

// Scratch file removed on destruction.
class TempFile {
 public:
  explicit TempFile(const std::string& content, const std::string& suffix = ".txt") {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("exemb_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++) + suffix);
    std::ofstream(path_) << content;
  }
  ~TempFile() { std::filesystem::remove(path_); }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

}  // namespace exemb::testing
