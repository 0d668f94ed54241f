#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "kirbycalc/linalg.hpp"

namespace kirbycalc {

/// One letter of a 2-handle's attaching word: a 1-handle id and an exponent of +1 or -1.
struct Letter {
  std::string handle;
  int sign = 1;

  bool operator==(const Letter&) const = default;
};

using Word = std::vector<Letter>;

struct TwoHandle {
  std::string id;
  int framing = 0;
  Word word;

  bool operator==(const TwoHandle&) const = default;
};

/// One crossing of a planar diagram code.
///
/// `arcs` lists the four incident arcs counterclockwise, starting at the incoming
/// under-strand; the under-strand runs arcs[0] -> arcs[2]. A positive crossing
/// (over-strand from lower left to upper right, both strands pointing up) has its
/// over-strand running arcs[3] -> arcs[1]; a negative one runs arcs[1] -> arcs[3].
struct PdCrossing {
  std::array<int, 4> arcs{};
  int sign = 1;

  int over_in() const { return sign > 0 ? arcs[3] : arcs[1]; }
  int over_out() const { return sign > 0 ? arcs[1] : arcs[3]; }
  bool operator==(const PdCrossing&) const = default;
};

struct PlanarCode {
  std::vector<PdCrossing> crossings;
  std::map<int, std::string> arcs;  // arc id -> component id
  std::vector<std::string> crossingless;

  /// Components in first-appearance order (crossing components, then crossingless).
  std::vector<std::string> components() const;
  const std::string& under_component(const PdCrossing& c) const { return arcs.at(c.arcs[0]); }
  const std::string& over_component(const PdCrossing& c) const { return arcs.at(c.arcs[1]); }
  int writhe(const std::string& component) const;
  /// Sum of crossing signs between two distinct components (twice their linking number).
  int signed_crossings(const std::string& a, const std::string& b) const;

  bool operator==(const PlanarCode&) const = default;
};

/// Checks arc bookkeeping of a planar code (each arc entered once and left once,
/// strands stay on one component, every component a single closed curve).
/// Throws SchemaError.
void validate_planar_code(const PlanarCode& pd);

/// Deletes components, merging the arcs of surviving strands that passed through
/// deleted crossings. Arc ids are renumbered 1..n in traversal order.
PlanarCode remove_components(const PlanarCode& pd, const std::set<std::string>& components);

/// Disjoint union; arcs of `b` are shifted past the arcs of `a`.
PlanarCode disjoint_union(const PlanarCode& a, const PlanarCode& b);

/// Single-kink unknot with writhe `sign`.
PlanarCode kink_code(const std::string& component, int sign);

/// Positive Hopf link.
PlanarCode hopf_code(const std::string& a, const std::string& b);

struct GroupPresentation {
  std::vector<std::string> generators;
  std::vector<Word> relators;
};

/// A special framed link in dotted-circle notation.
///
/// Components are ordered 1-handles first, then 2-handles. The linking matrix over
/// 2-handles carries framings on its diagonal; the linking of a 2-handle with a
/// dotted circle is the signed letter count of its word at that 1-handle.
class KirbyDiagram {
 public:
  KirbyDiagram() = default;

  /// Validates every invariant; `linking` holds off-diagonal entries keyed by id pairs.
  KirbyDiagram(std::string name, std::vector<std::string> one_handles,
               std::vector<TwoHandle> two_handles,
               const std::map<std::pair<std::string, std::string>, std::int64_t>& linking,
               std::optional<PlanarCode> pd = std::nullopt);

  /// Same, with a full symmetric 2-handle matrix whose diagonal must equal the framings.
  static KirbyDiagram from_matrix(std::string name, std::vector<std::string> one_handles,
                                  std::vector<TwoHandle> two_handles, IntMatrix linking_matrix,
                                  std::optional<PlanarCode> pd = std::nullopt);

  const std::string& name() const { return name_; }
  const std::vector<std::string>& one_handles() const { return one_handles_; }
  const std::vector<TwoHandle>& two_handles() const { return two_handles_; }
  const std::optional<PlanarCode>& pd() const { return pd_; }
  int h1() const { return static_cast<int>(one_handles_.size()); }
  int h2() const { return static_cast<int>(two_handles_.size()); }
  std::size_t component_count() const { return one_handles_.size() + two_handles_.size(); }

  const IntMatrix& linking_matrix() const { return linking_; }
  /// Matrix over all components (dotted first, framing 0 on dotted circles).
  IntMatrix full_linking_matrix() const;
  /// Signed number of occurrences of 1-handle `one` in the word of 2-handle `two`.
  std::int64_t letter_sum(std::size_t two, std::size_t one) const;

  std::vector<std::string> component_ids() const;
  std::size_t one_handle_index(const std::string& id) const;
  std::size_t two_handle_index(const std::string& id) const;
  bool has_id(const std::string& id) const;

  KirbyDiagram renamed(std::string name) const;

  bool operator==(const KirbyDiagram&) const = default;

 private:
  void validate() const;
  void validate_pd() const;

  std::string name_;
  std::vector<std::string> one_handles_;
  std::vector<TwoHandle> two_handles_;
  IntMatrix linking_;
  std::optional<PlanarCode> pd_;
};

/// Parses a KDF JSON document. Throws SchemaError, ConsistencyError, DottedLinkError.
KirbyDiagram parse_kdf(const std::string& document);

/// Serialises with lexicographically sorted keys; byte-stable for a given diagram.
std::string to_kdf(const KirbyDiagram& diagram);

GroupPresentation fundamental_group(const KirbyDiagram& diagram);

/// Inverse word: reversed order, negated exponents.
Word inverse_word(const Word& word);

KirbyDiagram connected_sum(const KirbyDiagram& a, const KirbyDiagram& b);

/// Nullity of the full linking matrix; equals the number of 3-handles for a closed manifold.
int third_handle_count(const KirbyDiagram& diagram);
int euler_characteristic(const KirbyDiagram& diagram);
int signature(const KirbyDiagram& diagram);

KirbyDiagram cancel_12(const KirbyDiagram& diagram, const std::string& one_id,
                       const std::string& two_id);
KirbyDiagram cancel_23(const KirbyDiagram& diagram, const std::string& two_id);
KirbyDiagram blow_up(const KirbyDiagram& diagram, int sign);
/// Slides 2-handle `a` over 2-handle `b`; refuses diagrams that carry a planar code.
KirbyDiagram slide_22(const KirbyDiagram& diagram, const std::string& a, const std::string& b,
                      int sign);

}  // namespace kirbycalc
