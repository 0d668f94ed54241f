#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kirbycalc/kirby_diagram.hpp"
#include "kirbycalc/scalar.hpp"

namespace kirbycalc {

/// A finite group given by its multiplication table; element 0 is the identity.
class FiniteGroup {
 public:
  FiniteGroup() = default;
  /// Validates closure, identity, inverses and associativity (exhaustive for
  /// order <= 128, 10^4 sampled triples above). Throws SchemaError.
  FiniteGroup(std::string name, std::vector<std::vector<int>> table);

  static FiniteGroup cyclic(int n);
  static FiniteGroup symmetric3();
  static FiniteGroup dihedral4();
  static FiniteGroup quaternion8();
  /// "s3", "d4", "q8" or "z<n>" / "zn" style names like "z4".
  static FiniteGroup builtin(const std::string& name);
  /// {"order": n, "table": [[...], ...]} with table[a][b] = a*b.
  static FiniteGroup from_json(const std::string& document, std::string name = "file");

  const std::string& name() const { return name_; }
  int order() const { return static_cast<int>(table_.size()); }
  int mul(int a, int b) const { return table_[a][b]; }
  int inv(int a) const { return inverse_[a]; }
  const std::vector<std::vector<int>>& table() const { return table_; }

  std::vector<std::vector<int>> conjugacy_classes() const;
  /// The subgroup on `elements` (which must contain 0), renumbered in the given order.
  FiniteGroup subgroup(const std::vector<int>& elements, std::string name) const;

 private:
  std::string name_;
  std::vector<std::vector<int>> table_;
  std::vector<int> inverse_;
};

/// A group homomorphism phi: source -> target given elementwise.
struct GroupHomData {
  FiniteGroup source;
  FiniteGroup target;
  std::vector<int> map;

  /// Throws InvalidArgument unless map is a homomorphism.
  void validate() const;
  int kernel_size() const;
  std::vector<int> image_elements() const;
  /// Im(phi) as a standalone group table.
  FiniteGroup image_group() const;
};

GroupHomData sign_homomorphism_s3();
GroupHomData reduction_mod2_z4();
GroupHomData identity_homomorphism(const FiniteGroup& g);

/// Number of assignments G^{h1} killing every relator (|Hom(pi_1, G)|).
/// `jobs` > 1 splits the search over the first generator's value.
std::uint64_t count_flat_connections(const KirbyDiagram& diagram, const FiniteGroup& g,
                                     int jobs = 1);
std::uint64_t count_homomorphisms(const GroupPresentation& presentation, const FiniteGroup& g,
                                  int jobs = 1);

/// (1/|Ker phi|^{h1}) * sum over P^{h1} of prod_k delta(phi(relator_k)), exactly.
Rational hom_invariant(const KirbyDiagram& diagram, const GroupHomData& phi);

/// count_flat_connections / |G|.
Rational normalized_partition_function(const KirbyDiagram& diagram, const FiniteGroup& g);

/// Orbits of Hom(pi, G) under simultaneous conjugation, by explicit enumeration.
std::uint64_t count_hom_conjugacy_classes(const GroupPresentation& presentation,
                                          const FiniteGroup& g);

/// Evaluates a word under an assignment indexed like `generators`.
int evaluate_word(const FiniteGroup& g, const Word& word, const std::vector<std::string>& generators,
                  const std::vector<int>& assignment);

}  // namespace kirbycalc
