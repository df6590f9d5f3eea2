#include "ohmnet/suite.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>

#include "ohmnet/generators.hpp"

namespace ohmnet {

std::vector<NamedGraph> builtin_suite() {
  std::vector<NamedGraph> suite;
  suite.push_back({"single_edge", gen::path(2)});
  suite.push_back({"path3", gen::path(3)});
  suite.push_back({"complete4", gen::complete(4)});
  suite.push_back({"cycle5", gen::cycle(5)});
  suite.push_back({"grid3x3", gen::grid(3, 3)});
  suite.push_back({"barbell4x4", gen::barbell(4, 4)});
  for (uint64_t s = 0; s < 10; ++s)
    suite.push_back({"random8_s" + std::to_string(s),
                     gen::random_connected(8, 0.5, 0.1, 10.0, s)});
  return suite;
}

std::vector<NamedGraph> load_suite() {
  const char* dir = std::getenv("OHM_SUITE_DIR");
  if (dir == nullptr || *dir == '\0') return builtin_suite();

  std::vector<std::filesystem::path> files;
  std::error_code ec;
  for (const auto& entry : std::filesystem::directory_iterator(dir, ec))
    if (entry.is_regular_file() && entry.path().extension() == ".graph")
      files.push_back(entry.path());
  if (ec) fail(ErrorCode::IoError, "cannot read OHM_SUITE_DIR " +
                                       std::string(dir) + ": " + ec.message());
  if (files.empty())
    fail(ErrorCode::IoError,
         "OHM_SUITE_DIR " + std::string(dir) + " has no *.graph files");
  std::sort(files.begin(), files.end());

  std::vector<NamedGraph> suite;
  for (const auto& f : files)
    suite.push_back({f.stem().string(), load_graph_file(f.string())});
  return suite;
}

}  // namespace ohmnet
