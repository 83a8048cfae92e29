#pragma once

// Candidate sets for the quantified axioms. Small domains are enumerated
// exhaustively; larger ones get structured candidates plus a seeded sample,
// and report the fraction of the domain covered.

#include <utility>
#include <vector>

#include "gwt/geometry.hpp"
#include "gwt/measure.hpp"

namespace gwt {

template <typename T>
struct Candidates {
  std::vector<T> items;
  bool exhaustive = true;
  /// Checked fraction of the full domain (1 when exhaustive).
  double coverage = 1.0;
};

/// Nonempty cell subsets of the body.
Candidates<Region> enumerate_subbodies(const Region& body, const Grid& g,
                                       const EnumerationLimits& lim);

/// Members of the material universe: subbodies X and their exteriors.
Candidates<Region> enumerate_universe(const Region& body, const Grid& g,
                                      const EnumerationLimits& lim);

/// Unordered pairs (A, C) of separate universe members whose union is also in
/// the universe.
Candidates<std::pair<Region, Region>> enumerate_separate_pairs(const Region& body, const Grid& g,
                                                               const EnumerationLimits& lim);

/// Parts built from the given atoms (every subset when small).
Candidates<Part> enumerate_parts(const Part& atoms, const EnumerationLimits& lim);

/// Subsets A of B with B a subset of `space`: the domain of the exterior
/// identity.
Candidates<std::pair<Region, Region>> enumerate_nested_pairs(const Region& space,
                                                             const EnumerationLimits& lim);

}  // namespace gwt
