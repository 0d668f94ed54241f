#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kirbycalc/invariant_engine.hpp"
#include "kirbycalc/kirby_diagram.hpp"

namespace kirbycalc {

struct LibraryEntry {
  std::string name;
  KirbyDiagram diagram;
  int chi = 0;
  int sigma = 0;
  std::string pi1;
  /// Set for S^1 x M entries: a presentation of pi_1(M).
  std::optional<GroupPresentation> slice_pi1;
  /// Closed form expected whenever F is a full inclusion into a modular target, and for Rep(G).
  std::optional<ClosedForm> expected;

  bool product_of_s1() const { return slice_pi1.has_value(); }
};

/// Throws UnknownManifold.
const LibraryEntry& library_get(const std::string& name);
std::vector<std::string> library_list();

}  // namespace kirbycalc
