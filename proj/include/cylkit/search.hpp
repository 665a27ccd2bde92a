#pragma once

#include <optional>

#include "cylkit/check.hpp"
#include "cylkit/duality.hpp"

// Search for a finite counter-model of an equation among complex algebras
// of small atom structures. Only the relations the equation actually uses
// are enumerated; everything else stays absent.

namespace cylkit {

struct SearchBounds {
  int max_atoms = 4;
  uint64_t max_structures = uint64_t(1) << 22;
};

struct SearchResult {
  bool found = false;
  bool budget_exhausted = false;  // stopped at max_structures
  uint64_t structures_tried = 0;
  std::optional<duality::AtomStructure> structure;
  std::string counterexample;  // assignment + values in the found algebra
};

SearchResult search_counterexample(const Equation& eq, Dimension dim,
                                   const SearchBounds& bounds = {});

}  // namespace cylkit
