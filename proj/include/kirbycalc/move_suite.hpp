#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <string>

#include "kirbycalc/kirby_diagram.hpp"
#include "kirbycalc/scalar.hpp"

namespace kirbycalc {

struct MoveSuiteOptions {
  int trials = 100;
  std::uint64_t seed = 0;
  int max_one_handles = 2;
  int max_two_handles = 4;
  int max_entry = 3;
  int max_word = 4;
};

/// Word/linking-level diagram without a planar code.
KirbyDiagram random_diagram(std::mt19937_64& rng, const MoveSuiteOptions& options);

/// Appends a 1-handle and a 2-handle running over it once, unlinked from everything else.
KirbyDiagram add_cancelling_12_pair(const KirbyDiagram& d, int framing, int sign);
/// Appends a 0-framed unknotted 2-handle unlinked from everything else.
KirbyDiagram add_cancelling_23_handle(const KirbyDiagram& d);

struct MoveSuiteReport {
  int trials = 0;
  int checks = 0;
  /// Largest |after - expected| / max(1, |expected|), per move and overall.
  std::map<std::string, double> max_deviation;
  double overall = 0.0;
};

/// For each random diagram X checks value(slide_22(X)) = value(X), value(X + pair) =
/// value(cancel(X + pair)) for both cancellations, and value(blow_up(X, s)) = value(X) I(s).
MoveSuiteReport run_move_suite(const std::function<Complex(const KirbyDiagram&)>& value,
                               Complex cp2, Complex cp2bar, const MoveSuiteOptions& options);

}  // namespace kirbycalc
