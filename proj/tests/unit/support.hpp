#pragma once

// Shared helpers for the unit tests: a small random-input generator that does
// not depend on the library's own RNG, and the fixture directory.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "gwt/geometry.hpp"

namespace testing {

inline std::string fixture(const std::string& name) { return std::string(GWT_FIXTURES_DIR) + "/" + name; }

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  int uniform_int(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }

  gwt::Grid grid(int max_side) {
    return gwt::Grid(uniform_int(1, max_side), uniform_int(1, max_side), uniform_int(1, max_side), 1.0);
  }

  /// Random subset of `base`, nonempty when `nonempty`.
  gwt::Region subset(const gwt::Region& base, bool nonempty = true, double p = 0.5) {
    std::vector<gwt::CellId> cells;
    for (gwt::CellId c : base.cells()) {
      if (coin(p)) cells.push_back(c);
    }
    if (cells.empty() && nonempty && !base.empty()) {
      cells.push_back(base.cells()[static_cast<std::size_t>(uniform_int(0, static_cast<int>(base.size()) - 1))]);
    }
    return gwt::Region(cells);
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace testing
