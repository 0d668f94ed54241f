#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "kirbycalc/category_model.hpp"
#include "kirbycalc/kirby_diagram.hpp"
#include "kirbycalc/scalar.hpp"

namespace kirbycalc {

/// A finite abelian group Z_{n1} x ... x Z_{nr} with a quadratic form q valued in Q/Z.
/// Labels are indexed mixed-radix with the first factor varying slowest.
class PointedCategory {
 public:
  /// Validates q(0) = 0, q(-a) = q(a) and biadditivity of b. Throws SchemaError.
  PointedCategory(std::string name, std::vector<int> factors, std::vector<Rational> q);

  /// Z_n with q(k) = k^2/n.
  static PointedCategory anyonic(int n);
  /// Z_n x Z_n with q(a, b) = ab/n; always modular.
  static PointedCategory hyperbolic(int n);
  /// Product of cyclic factors, each with its anyonic form.
  static PointedCategory anyonic_product(const std::vector<int>& factors);
  /// {"factors": [...], "q": {"a,b,...": "p/q", ...}}; missing labels default to 0.
  static PointedCategory from_json(const std::string& document, std::string name = "file");
  std::string to_json() const;

  const std::string& name() const { return name_; }
  const std::vector<int>& factors() const { return factors_; }
  std::size_t size() const { return q_.size(); }

  std::vector<int> decode(LabelIndex a) const;
  LabelIndex encode(const std::vector<int>& tuple) const;
  std::string label_name(LabelIndex a) const;
  LabelIndex add(LabelIndex a, LabelIndex b) const;
  LabelIndex negate(LabelIndex a) const;
  LabelIndex scale(LabelIndex a, std::int64_t k) const;

  Rational q(LabelIndex a) const { return q_[a]; }
  /// b(a, a') = q(a + a') - q(a) - q(a'), reduced mod 1.
  Rational b(LabelIndex a, LabelIndex c) const;
  bool transparent(LabelIndex a) const;
  bool is_modular() const;

  /// Category data with a closed-form link evaluator attached.
  CategoryPtr category() const;

 private:
  std::string name_;
  std::vector<int> factors_;
  std::vector<Rational> q_;
};

/// exp(2 pi i [sum q(a_i) f_i + sum_{i<j} b(a_i, a_j) lk_ij]) over all components.
Complex evaluate_link_pointed(const PointedCategory& cat, const KirbyDiagram& diagram,
                              std::span<const LabelIndex> labels);
/// The exponent of the above, reduced mod 1.
Rational link_phase_pointed(const PointedCategory& cat, const KirbyDiagram& diagram,
                            std::span<const LabelIndex> labels);

bool transparency_pointed(const PointedCategory& cat, LabelIndex a);

/// Sum over k of e^{2 pi i b(k, a)}, decided exactly from the phase histogram.
struct KillingSum {
  std::int64_t exact = 0;  // |A| if a is transparent, else 0
  Complex numeric;         // the same sum accumulated in floating point
  bool histogram_uniform = false;
};
KillingSum killing_sum(const PointedCategory& cat, LabelIndex a);

/// The functor on labels induced by a group homomorphism source -> target given on labels.
PivotalFunctorData pointed_functor(const PointedCategory& source, const PointedCategory& target,
                                   const std::vector<LabelIndex>& map, std::string name);
/// k -> (k, k) from Z_n anyonic into the hyperbolic Z_n x Z_n; a braided full inclusion.
PivotalFunctorData diagonal_into_hyperbolic(int n);

/// Sum over 2-handle labellings in the support of F(Omega_C) whose label sum through every
/// 1-handle vanishes, of coefficient times phase. Target must be modular (NotModular).
Complex kirby_direct_pointed(const PointedCategory& cat, const PivotalFunctorData& functor,
                             const KirbyDiagram& diagram);

}  // namespace kirbycalc
