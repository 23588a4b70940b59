#pragma once

#include <filesystem>

#include "exemb/lpca.hpp"

namespace exemb {

// Text container: a header line "n k method", n rows of X, then n rows of
// Y, values printed with 17 significant digits so a load restores the
// exact doubles.
void save_embedding(const EmbeddingPair& e, const std::filesystem::path& path);
EmbeddingPair load_embedding(const std::filesystem::path& path);

}  // namespace exemb
