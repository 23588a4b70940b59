#include <filesystem>
#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "common.hpp"
#include "exemb/errors.hpp"
#include "exemb/parallel.hpp"

namespace {
constexpr int kOk = 0;
constexpr int kUsage = 2;
constexpr int kData = 3;
constexpr int kNumerical = 4;
}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact low-rank graph embeddings: LPCA, TSVD, constructions and metrics"};
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "Worker threads (0 = hardware concurrency)");
  app.parse_complete_callback([&] { exemb::set_default_threads(threads); });
  exemb::cli::add_generate(app);
  exemb::cli::add_embed(app);
  exemb::cli::add_construct(app);
  exemb::cli::add_eval(app);
  exemb::cli::add_efd(app);
  exemb::cli::add_reproduce(app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  } catch (const exemb::cli::UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid argument: " << e.what() << '\n';
    return kUsage;
  } catch (const exemb::DataError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kData;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kData;
  } catch (const std::domain_error& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kData;
  } catch (const exemb::NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return kNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return kOk;
}
