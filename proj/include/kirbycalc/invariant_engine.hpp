#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kirbycalc/backend_dw.hpp"
#include "kirbycalc/category_model.hpp"
#include "kirbycalc/kirby_diagram.hpp"

namespace kirbycalc {

struct InvariantOptions {
  EvalOptions eval;
  /// Worker threads for the labelling sum; partial sums are reduced in a fixed order.
  int jobs = 1;
  double tolerance = kTolerance;
};

struct InvariantResult {
  Complex value;
  Complex numerator;
  Complex normalization;
  int h1 = 0;
  int h2 = 0;
  int chi = 0;
  int sigma = 0;
  std::string backend;
  std::string functor;
  std::string diagram;
  std::vector<std::string> provenance;
  /// Exact value where the backend computes one (finite groups).
  std::optional<Rational> exact;
};

/// The constants entering the closed forms of the library tables.
struct CategoryConstants {
  Complex omega_c;        // qdim of the Kirby colour of C
  Complex omega_c_prime;  // qdim of its transparent part inside C
  Complex lambda_c_prime; // number of transparent simples of C
  Complex omega_d;        // qdim of the Kirby colour of D
  Complex omega_f_prime;  // qdim of the transparent part of F(Omega_C) inside D
  Complex cp2;
  Complex cp2bar;
};

/// A monomial in the category constants.
struct ClosedForm {
  int omega_c = 0;
  int omega_c_prime = 0;
  int lambda_c_prime = 0;
  int cp2 = 0;
  int cp2bar = 0;

  Complex evaluate(const CategoryConstants& k) const;
  std::string describe() const;
};

/// Sum over simple labellings of the link with dotted components coloured by Omega_D and
/// 2-handles by F(Omega_C).
Complex numerator(const PivotalFunctorData& functor, const KirbyDiagram& diagram,
                  const InvariantOptions& options = {});

/// numerator / (qdim Omega_C^{h2-h1} (qdim Omega_D qdim (F Omega_C)')^{h1}).
/// Throws InvalidTarget when the target violates the premodular axioms.
InvariantResult invariant(const PivotalFunctorData& functor, const KirbyDiagram& diagram,
                          const InvariantOptions& options = {});

Complex cp2_value(const PivotalFunctorData& functor);
Complex cp2bar_value(const PivotalFunctorData& functor);

/// I_+^{b+} I_-^{b-} with b+- = (chi +- sigma)/2 - 1. Throws NonInvertibleCp2.
Complex predict_simply_connected(const PivotalFunctorData& functor, int chi, int sigma);

Complex petit_I0(const PivotalFunctorData& functor, const KirbyDiagram& diagram,
                 const InvariantOptions& options = {});

/// invariant / qdim Omega_C^{1-chi}. The functor must be a full inclusion; label-map
/// injectivity is checked (NotInjectiveLabelMap), fullness beyond that is the caller's claim.
Complex crane_yetter_statesum_value(const PivotalFunctorData& functor, const KirbyDiagram& diagram,
                                    const InvariantOptions& options = {});

/// invariant(S^1 x M) / qdim Omega_C; the caller asserts the diagram is such a product.
Complex ground_state_dimension(const PivotalFunctorData& functor, const KirbyDiagram& diagram,
                               const InvariantOptions& options = {});

CategoryConstants category_constants(const PivotalFunctorData& functor);

/// Rep(G): every simple transparent, trivial twist, global dimension |G|.
CategoryConstants group_constants(const FiniteGroup& g);

/// The Rep(G) invariant: the number of flat G-connections, exactly.
InvariantResult dw_invariant(const KirbyDiagram& diagram, const FiniteGroup& g, int jobs = 1);

/// {value: [re, im], numerator, normalization, h1, h2, chi, sigma, backend, functor, diagram,
/// provenance[, exact]}, keys sorted.
std::string result_to_json(const InvariantResult& result);

}  // namespace kirbycalc
