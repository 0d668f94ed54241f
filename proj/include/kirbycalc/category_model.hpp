#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "kirbycalc/scalar.hpp"

namespace kirbycalc {

class KirbyDiagram;

/// Index of a simple object in its category's label list.
using LabelIndex = std::size_t;

/// Options threaded through link evaluation.
struct EvalOptions {
  /// Upper bound on crossings after cabling (Temperley-Lieb evaluator only).
  int skein_cap = 24;
};

/// A link evaluator bound to one diagram, reused across many labellings.
/// `evaluate` must be safe to call concurrently.
class PreparedLink {
 public:
  virtual ~PreparedLink() = default;
  virtual Complex evaluate(std::span<const LabelIndex> labels) const = 0;
};

/// Evaluates a framed link whose components carry simple labels.
///
/// `labels` is indexed by component in diagram order: 1-handles first (framing 0),
/// then 2-handles.
class LinkEvaluator {
 public:
  virtual ~LinkEvaluator() = default;
  virtual Complex evaluate(const KirbyDiagram& diagram, std::span<const LabelIndex> labels,
                           const EvalOptions& options) const = 0;
  virtual std::string backend_name() const = 0;
  /// Default implementation forwards to `evaluate` with a private copy of the diagram.
  virtual std::unique_ptr<PreparedLink> prepare(const KirbyDiagram& diagram,
                                                const EvalOptions& options) const;
};

/// Premodular category data: labels, dimensions, twists, duality and transparency.
/// Immutable once built and shared through `std::shared_ptr<const CategoryData>`.
struct CategoryData {
  std::string name;
  std::vector<std::string> labels;
  LabelIndex unit = 0;
  std::vector<Complex> dims;
  std::vector<Complex> twists;
  std::vector<LabelIndex> duals;
  std::vector<bool> transparent;
  /// Fusion of simples into a simple, present when every simple is invertible.
  std::function<LabelIndex(LabelIndex, LabelIndex)> fuse;
  std::shared_ptr<const LinkEvaluator> evaluator;

  std::size_t size() const { return labels.size(); }
  LabelIndex label(std::string_view name) const;
  bool is_modular() const;
};

using CategoryPtr = std::shared_ptr<const CategoryData>;

/// A formal complex combination of simple labels. Zero coefficients are never stored.
class Colour {
 public:
  Colour() = default;
  static Colour simple(LabelIndex label, Complex coefficient = 1.0);

  Complex operator[](LabelIndex label) const;
  void add(LabelIndex label, Complex coefficient);
  const std::map<LabelIndex, Complex>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  Colour operator+(const Colour& other) const;
  Colour operator*(Complex scalar) const;
  bool approx_equal(const Colour& other, double tol = kTolerance) const;

 private:
  std::map<LabelIndex, Complex> terms_;
};

/// Fusion product; requires `cat.fuse`.
Colour multiply(const CategoryData& cat, const Colour& a, const Colour& b);

/// Sum of coefficient times dimension.
Complex colour_dimension(const CategoryData& cat, const Colour& c);

/// Sum of coefficient times dimension times twist (trace of the twist on the colour).
Complex colour_twist_trace(const CategoryData& cat, const Colour& c, bool inverse = false);

std::string format_colour(const CategoryData& cat, const Colour& c);

/// Sum over simples of dim(X) X.
Colour kirby_colour(const CategoryData& cat);

/// Sum of dim(X)^2; throws NonPositiveGlobalDimension unless real-positive.
Complex global_dimension(const CategoryData& cat);

/// Keeps the coefficients on transparent labels.
Colour transparent_part(const CategoryData& cat, const Colour& c);

struct ValidationReport {
  bool valid = true;
  bool modular = false;
  std::vector<std::string> violations;
};

/// Checks the axioms a target category must satisfy, including trivial twist on
/// every transparent simple.
ValidationReport validate_target_category(const CategoryData& cat);

/// A pivotal functor given by its action on simple labels.
struct PivotalFunctorData {
  std::string name;
  CategoryPtr source;
  CategoryPtr target;
  /// image[X] is a colour over `target` with nonnegative integer coefficients.
  std::vector<Colour> image;

  /// Lists violated conditions (dimension preservation, unit, algebra map).
  std::vector<std::string> check() const;
  /// True when the label map sends distinct simples to distinct simples with multiplicity one.
  bool is_injective_label_map() const;
};

using FunctorPtr = std::shared_ptr<const PivotalFunctorData>;

Colour apply_functor(const PivotalFunctorData& functor, const Colour& c);

/// The identity functor on `cat`.
PivotalFunctorData identity_functor(CategoryPtr cat);

/// Full subcategory on `labels` with the ambient data restricted and transparency
/// recomputed inside the subcategory by `transparent_within`.
CategoryPtr full_subcategory(const CategoryData& ambient, const std::vector<LabelIndex>& labels,
                             std::string name,
                             const std::function<bool(LabelIndex, const std::vector<LabelIndex>&)>&
                                 transparent_within);

/// Inclusion of a full subcategory produced by `full_subcategory`.
PivotalFunctorData inclusion_functor(CategoryPtr sub, CategoryPtr ambient, std::string name);

}  // namespace kirbycalc
