#pragma once

#include <map>
#include <string>
#include <vector>

#include "kirbycalc/kirby_diagram.hpp"
#include "kirbycalc/scalar.hpp"

namespace kirbycalc {

/// A Temperley-Lieb diagram on n bottom points (0..n-1, left to right) and n top points
/// (n..2n-1, left to right); entry i is the point matched with i.
using TLMatching = std::vector<int>;
/// A linear combination of Temperley-Lieb diagrams.
using TLElement = std::map<TLMatching, Complex>;

/// delta = -A^2 - A^-2.
Complex loop_value(Complex a);

TLElement tl_identity(int n);
/// The cup-cap generator joining strands i-1 and i (1 <= i < n).
TLElement tl_generator(int n, int i);
/// Stacks `upper` on top of `lower`; closed loops contribute delta each.
TLElement tl_compose(const TLElement& lower, const TLElement& upper, int n, Complex delta);
TLElement tl_tensor_identity(const TLElement& x, int n);
TLElement tl_add(const TLElement& x, const TLElement& y, Complex scale_y = 1.0);
/// Markov closure (connect bottom j to top j).
Complex tl_trace(const TLElement& x, int n, Complex delta);
bool tl_approx_equal(const TLElement& x, const TLElement& y, double tol = kTolerance);

/// Jones-Wenzl idempotent of size n by the Wenzl recursion. Throws InvalidArgument if a
/// quantum integer in the recursion vanishes.
TLElement jones_wenzl(int n, Complex a);

/// A planar code whose components are replaced by parallel cables, each carrying one
/// Jones-Wenzl box of its width. Components missing from `cables` have width 1; width 0
/// deletes the component.
struct SkeinDiagram {
  PlanarCode pd;
  std::map<std::string, int> cables;

  int width(const std::string& component) const;
  /// Number of crossings after cabling.
  int cabled_crossings() const;
};

/// Kauffman bracket of the cabled diagram with crossing weights A, A^-1 and loop value delta.
/// The empty diagram evaluates to 1. Throws ResourceLimit when cabled_crossings() > cap
/// (cap < 0 disables the check).
Complex kauffman_bracket(const SkeinDiagram& diagram, Complex a, int cap = 24);

}  // namespace kirbycalc
