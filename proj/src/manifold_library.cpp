#include "kirbycalc/manifold_library.hpp"

#include <algorithm>

#include "kirbycalc/error.hpp"

namespace kirbycalc {

namespace {

PlanarCode crossingless(std::vector<std::string> ids) {
  PlanarCode pd;
  pd.crossingless = std::move(ids);
  return pd;
}

KirbyDiagram s1xs1xs2() {
  // Dotted x, y and the commutator curve A form Borromean rings; B is a 0-framed meridian of A.
  PlanarCode pd;
  pd.crossings = {{{5, 4, 6, 1}, -1},  {{7, 3, 8, 2}, 1},   {{1, 11, 2, 10}, 1},
                  {{3, 14, 4, 9}, -1}, {{9, 5, 10, 8}, 1},  {{11, 6, 12, 7}, -1},
                  {{12, 16, 13, 15}, 1}, {{16, 14, 15, 13}, 1}};
  for (int a = 1; a <= 4; ++a) pd.arcs[a] = "x";
  for (int a = 5; a <= 8; ++a) pd.arcs[a] = "y";
  for (int a = 9; a <= 14; ++a) pd.arcs[a] = "A";
  pd.arcs[15] = pd.arcs[16] = "B";
  return KirbyDiagram("S1xS1xS2", {"x", "y"},
                      {TwoHandle{"A", 0, {{"x", 1}, {"y", 1}, {"x", -1}, {"y", -1}}},
                       TwoHandle{"B", 0, {}}},
                      {{{"A", "B"}, 1}}, pd);
}

KirbyDiagram s2_twisted_s2() {
  // Hopf link with a positive kink added to component a.
  PlanarCode pd;
  pd.crossings = {{{4, 1, 3, 6}, 1}, {{1, 4, 2, 3}, 1}, {{2, 6, 5, 5}, 1}};
  pd.arcs = {{1, "a"}, {2, "a"}, {5, "a"}, {6, "a"}, {3, "b"}, {4, "b"}};
  return KirbyDiagram("S2twistS2", {}, {TwoHandle{"a", 1, {}}, TwoHandle{"b", 0, {}}},
                      {{{"a", "b"}, 1}}, pd);
}

std::vector<LibraryEntry> build() {
  std::vector<LibraryEntry> out;
  auto add = [&](KirbyDiagram d, int chi, int sigma, std::string pi1,
                 std::optional<GroupPresentation> slice, std::optional<ClosedForm> expected) {
    LibraryEntry e;
    e.name = d.name();
    e.diagram = std::move(d);
    e.chi = chi;
    e.sigma = sigma;
    e.pi1 = std::move(pi1);
    e.slice_pi1 = std::move(slice);
    e.expected = expected;
    out.push_back(std::move(e));
  };

  KirbyDiagram s4("S4", {}, {}, {}, PlanarCode{});
  KirbyDiagram cp2("CP2", {}, {TwoHandle{"c", 1, {}}}, {}, kink_code("c", 1));
  KirbyDiagram cp2bar("CP2bar", {}, {TwoHandle{"c", -1, {}}}, {}, kink_code("c", -1));
  KirbyDiagram s2xs2("S2xS2", {}, {TwoHandle{"a", 0, {}}, TwoHandle{"b", 0, {}}},
                     {{{"a", "b"}, 1}}, hopf_code("a", "b"));
  KirbyDiagram s1xs3("S1xS3", {"g"}, {}, {}, crossingless({"g"}));
  KirbyDiagram rp3("IxRP3double", {"g"},
                   {TwoHandle{"r", 0, {{"g", 1}, {"g", 1}}}, TwoHandle{"m", 0, {}}},
                   {{{"r", "m"}, 1}});

  add(s4, 2, 0, "1", std::nullopt, ClosedForm{});
  add(cp2, 3, 1, "1", std::nullopt, ClosedForm{0, 0, 0, 1, 0});
  add(cp2bar, 3, -1, "1", std::nullopt, ClosedForm{0, 0, 0, 0, 1});
  add(s2xs2, 4, 0, "1", std::nullopt, ClosedForm{-1, 1, 0, 0, 0});
  add(s2_twisted_s2(), 4, 0, "1", std::nullopt, ClosedForm{0, 0, 0, 1, 1});
  add(s1xs3, 0, 0, "Z", GroupPresentation{}, ClosedForm{1, 0, 0, 0, 0});
  add(s1xs1xs2(), 0, 0, "Z+Z", GroupPresentation{{"h"}, {}}, ClosedForm{1, 0, 1, 0, 0});
  add(rp3, 2, 0, "Z/2", std::nullopt, std::nullopt);
  add(connected_sum(cp2, cp2bar), 4, 0, "1", std::nullopt, ClosedForm{0, 0, 0, 1, 1});
  add(connected_sum(s1xs3, s1xs3), -2, 0, "Z*Z", std::nullopt, ClosedForm{2, 0, 0, 0, 0});
  add(connected_sum(connected_sum(s1xs3, s1xs3), s2xs2), 0, 0, "Z*Z", std::nullopt,
      ClosedForm{1, 1, 0, 0, 0});
  return out;
}

const std::vector<LibraryEntry>& registry() {
  static const std::vector<LibraryEntry> entries = build();
  return entries;
}

}  // namespace

const LibraryEntry& library_get(const std::string& name) {
  for (const auto& e : registry()) {
    if (e.name == name) return e;
  }
  fail(ErrorKind::kUnknownManifold, "no library manifold named '" + name + "'");
}

std::vector<std::string> library_list() {
  std::vector<std::string> names;
  for (const auto& e : registry()) names.push_back(e.name);
  return names;
}

}  // namespace kirbycalc
