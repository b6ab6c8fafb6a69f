#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "tsem/error.hpp"
#include "tsem/harness.hpp"

namespace fixtures {

inline std::filesystem::path data_dir() { return TSEM_TEST_DATA_DIR; }
inline std::filesystem::path suite_dir() { return TSEM_TEST_SUITE_DIR; }
inline std::filesystem::path golden_dir() { return TSEM_TEST_GOLDEN_DIR; }

inline const tsem::Grammar& grammar() {
  static const tsem::Grammar g = tsem::Grammar::load(data_dir());
  return g;
}

inline tsem::SynTree tree(const std::string& name) { return tsem::load_tree(suite_dir() / "trees" / (name + ".tree")); }

inline tsem::TypedTree typed(const std::string& name) { return grammar().check(tree(name)); }

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

template <class F>
tsem::ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const tsem::Error& e) {
    return e.code();
  }
  throw std::logic_error("expected a tsem::Error");
}

}  // namespace fixtures
