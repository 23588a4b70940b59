#pragma once

#include <CLI11.hpp>

namespace exemb::cli {

void add_generate(CLI::App& app);
void add_embed(CLI::App& app);
void add_construct(CLI::App& app);
void add_eval(CLI::App& app);
void add_efd(CLI::App& app);
void add_reproduce(CLI::App& app);

}  // namespace exemb::cli
