#pragma once

#include <span>
#include <string>
#include <vector>

#include "kirbycalc/category_model.hpp"
#include "kirbycalc/kirby_diagram.hpp"
#include "kirbycalc/skein.hpp"

namespace kirbycalc {

/// Tilting modules of U_q sl(2) at q = e^{i pi / r}, A = e^{i pi / 2r}. Label i is spin i/2,
/// for i = 0 .. r-2. Dimensions, twists and transparency are computed by the skein evaluator.
class TLCategory {
 public:
  explicit TLCategory(int r);
  /// {"r": int}
  static TLCategory from_json(const std::string& document);

  int r() const { return r_; }
  Complex a() const { return a_; }
  Complex delta() const { return loop_value(a_); }
  std::size_t size() const { return static_cast<std::size_t>(r_ - 1); }
  static std::string label_name(LabelIndex i);

  const std::vector<Complex>& dims() const { return dims_; }
  const std::vector<Complex>& twists() const { return twists_; }
  const std::vector<bool>& transparent() const { return transparent_; }
  /// Hopf link labelled (j, k), linking number +1, blackboard framing 0.
  Complex hopf(LabelIndex j, LabelIndex k) const;

  CategoryPtr category() const { return category_; }
  /// Full subcategory of integer spins; transparency decided inside the subcategory.
  CategoryPtr integer_spins() const;
  PivotalFunctorData integer_spin_inclusion() const;

 private:
  int r_;
  Complex a_;
  std::vector<Complex> dims_;
  std::vector<Complex> twists_;
  std::vector<bool> transparent_;
  CategoryPtr category_;
};

std::vector<Complex> spin_dimensions(const TLCategory& cat);
std::vector<Complex> spin_twists(const TLCategory& cat);
bool transparency_tl(const TLCategory& cat, LabelIndex j);

/// Cables every component by its spin, adds one Jones-Wenzl box per component and
/// returns the bracket times theta^(framing - writhe). Two-crossing meridian circles are
/// replaced by their S-matrix scalar before cabling. Throws MissingPd, ResourceLimit.
Complex evaluate_link_tl(const TLCategory& cat, const KirbyDiagram& diagram,
                         std::span<const LabelIndex> labels, const EvalOptions& options = {});

}  // namespace kirbycalc
