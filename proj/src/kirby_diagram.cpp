#include "kirbycalc/kirby_diagram.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "json.hpp"

#include "kirbycalc/error.hpp"

namespace kirbycalc {

using nlohmann::json;

namespace {

int incoming_slot(const PdCrossing& c) { return c.sign > 0 ? 3 : 1; }
int outgoing_slot(const PdCrossing& c) { return c.sign > 0 ? 1 : 3; }

struct ArcEnds {
  int into = -1;  // crossing index where the arc ends (enters a crossing)
  int into_slot = -1;
  int from = -1;  // crossing index where the arc starts
  int from_slot = -1;
};

std::map<int, ArcEnds> arc_ends(const PlanarCode& pd) {
  std::map<int, ArcEnds> ends;
  for (std::size_t i = 0; i < pd.crossings.size(); ++i) {
    const auto& c = pd.crossings[i];
    if (c.sign != 1 && c.sign != -1) {
      fail(ErrorKind::kSchema, "crossing " + std::to_string(i) + " has sign other than +1/-1");
    }
    for (int slot : {0, incoming_slot(c)}) {
      auto& e = ends[c.arcs[slot]];
      if (e.into >= 0) {
        fail(ErrorKind::kSchema, "arc " + std::to_string(c.arcs[slot]) + " enters two crossings");
      }
      e.into = static_cast<int>(i);
      e.into_slot = slot;
    }
    for (int slot : {2, outgoing_slot(c)}) {
      auto& e = ends[c.arcs[slot]];
      if (e.from >= 0) {
        fail(ErrorKind::kSchema, "arc " + std::to_string(c.arcs[slot]) + " leaves two crossings");
      }
      e.from = static_cast<int>(i);
      e.from_slot = slot;
    }
  }
  return ends;
}

int successor(const PlanarCode& pd, const ArcEnds& e) {
  const auto& c = pd.crossings[e.into];
  return e.into_slot == 0 ? c.arcs[2] : c.arcs[outgoing_slot(c)];
}

class UnionFind {
 public:
  int find(int x) {
    auto it = parent_.find(x);
    if (it == parent_.end()) {
      parent_[x] = x;
      return x;
    }
    if (it->second == x) return x;
    int root = find(it->second);
    parent_[x] = root;
    return root;
  }
  void unite(int a, int b) { parent_[find(a)] = find(b); }

 private:
  std::map<int, int> parent_;
};

std::int64_t word_letter_sum(const Word& word, const std::string& handle) {
  std::int64_t s = 0;
  for (const auto& l : word) {
    if (l.handle == handle) s += l.sign;
  }
  return s;
}

}  // namespace

std::vector<std::string> PlanarCode::components() const {
  std::vector<std::string> out;
  auto add = [&](const std::string& id) {
    if (std::find(out.begin(), out.end(), id) == out.end()) out.push_back(id);
  };
  for (const auto& c : crossings) {
    for (int a : c.arcs) {
      auto it = arcs.find(a);
      if (it != arcs.end()) add(it->second);
    }
  }
  for (const auto& id : crossingless) add(id);
  return out;
}

int PlanarCode::writhe(const std::string& component) const {
  int w = 0;
  for (const auto& c : crossings) {
    if (under_component(c) == component && over_component(c) == component) w += c.sign;
  }
  return w;
}

int PlanarCode::signed_crossings(const std::string& a, const std::string& b) const {
  int s = 0;
  for (const auto& c : crossings) {
    const auto& u = under_component(c);
    const auto& o = over_component(c);
    if ((u == a && o == b) || (u == b && o == a)) s += c.sign;
  }
  return s;
}

void validate_planar_code(const PlanarCode& pd) {
  for (std::size_t i = 0; i < pd.crossings.size(); ++i) {
    for (int a : pd.crossings[i].arcs) {
      if (!pd.arcs.count(a)) {
        fail(ErrorKind::kSchema,
             "arc " + std::to_string(a) + " of crossing " + std::to_string(i) + " has no component");
      }
    }
  }
  auto ends = arc_ends(pd);
  for (const auto& [arc, component] : pd.arcs) {
    auto it = ends.find(arc);
    if (it == ends.end()) {
      fail(ErrorKind::kSchema, "arc " + std::to_string(arc) + " does not occur in any crossing");
    }
    if (it->second.into < 0 || it->second.from < 0) {
      fail(ErrorKind::kSchema, "arc " + std::to_string(arc) + " is not both entered and left");
    }
  }
  for (std::size_t i = 0; i < pd.crossings.size(); ++i) {
    const auto& c = pd.crossings[i];
    if (pd.arcs.at(c.arcs[0]) != pd.arcs.at(c.arcs[2]) ||
        pd.arcs.at(c.arcs[1]) != pd.arcs.at(c.arcs[3])) {
      fail(ErrorKind::kSchema, "crossing " + std::to_string(i) + " joins arcs of different components");
    }
  }
  std::map<std::string, std::size_t> arc_count;
  for (const auto& [arc, component] : pd.arcs) ++arc_count[component];
  std::set<std::string> seen;
  for (const auto& [arc, component] : pd.arcs) {
    if (!seen.insert(component).second) continue;
    std::size_t length = 0;
    int cur = arc;
    do {
      cur = successor(pd, ends.at(cur));
      ++length;
    } while (cur != arc && length <= pd.arcs.size());
    if (length != arc_count[component]) {
      fail(ErrorKind::kSchema, "component " + component + " is not a single closed curve");
    }
  }
  std::set<std::string> crossingless;
  for (const auto& id : pd.crossingless) {
    if (seen.count(id) || !crossingless.insert(id).second) {
      fail(ErrorKind::kSchema, "crossingless component " + id + " listed twice or has arcs");
    }
  }
}

PlanarCode remove_components(const PlanarCode& pd, const std::set<std::string>& components) {
  UnionFind uf;
  std::vector<PdCrossing> kept;
  for (const auto& c : pd.crossings) {
    bool under_gone = components.count(pd.under_component(c)) > 0;
    bool over_gone = components.count(pd.over_component(c)) > 0;
    if (!under_gone && !over_gone) {
      kept.push_back(c);
    } else if (!under_gone) {
      uf.unite(c.arcs[0], c.arcs[2]);
    } else if (!over_gone) {
      uf.unite(c.arcs[1], c.arcs[3]);
    }
  }
  PlanarCode out;
  std::map<int, int> renumber;
  for (auto& c : kept) {
    PdCrossing n = c;
    for (int k = 0; k < 4; ++k) {
      int root = uf.find(c.arcs[k]);
      auto [it, inserted] = renumber.emplace(root, static_cast<int>(renumber.size()) + 1);
      n.arcs[k] = it->second;
      out.arcs[it->second] = pd.arcs.at(c.arcs[k]);
    }
    out.crossings.push_back(n);
  }
  std::set<std::string> with_arcs;
  for (const auto& [arc, id] : out.arcs) with_arcs.insert(id);
  for (const auto& id : pd.components()) {
    if (!components.count(id) && !with_arcs.count(id)) out.crossingless.push_back(id);
  }
  return out;
}

PlanarCode disjoint_union(const PlanarCode& a, const PlanarCode& b) {
  PlanarCode out = a;
  int shift = a.arcs.empty() ? 0 : a.arcs.rbegin()->first;
  for (auto c : b.crossings) {
    for (int& x : c.arcs) x += shift;
    out.crossings.push_back(c);
  }
  for (const auto& [arc, id] : b.arcs) out.arcs[arc + shift] = id;
  out.crossingless.insert(out.crossingless.end(), b.crossingless.begin(), b.crossingless.end());
  return out;
}

PlanarCode kink_code(const std::string& component, int sign) {
  PlanarCode pd;
  if (sign > 0) {
    pd.crossings.push_back({{2, 2, 1, 1}, 1});
  } else {
    pd.crossings.push_back({{2, 1, 1, 2}, -1});
  }
  pd.arcs = {{1, component}, {2, component}};
  return pd;
}

PlanarCode hopf_code(const std::string& a, const std::string& b) {
  PlanarCode pd;
  pd.crossings = {{{4, 1, 3, 2}, 1}, {{1, 4, 2, 3}, 1}};
  pd.arcs = {{1, a}, {2, a}, {3, b}, {4, b}};
  return pd;
}

KirbyDiagram::KirbyDiagram(std::string name, std::vector<std::string> one_handles,
                           std::vector<TwoHandle> two_handles,
                           const std::map<std::pair<std::string, std::string>, std::int64_t>& linking,
                           std::optional<PlanarCode> pd)
    : name_(std::move(name)),
      one_handles_(std::move(one_handles)),
      two_handles_(std::move(two_handles)),
      pd_(std::move(pd)) {
  std::size_t n = two_handles_.size();
  linking_.assign(n, std::vector<std::int64_t>(n, 0));
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < n; ++i) {
    index[two_handles_[i].id] = i;
    linking_[i][i] = two_handles_[i].framing;
  }
  std::map<std::pair<std::size_t, std::size_t>, std::int64_t> seen;
  for (const auto& [key, value] : linking) {
    auto a = index.find(key.first);
    auto b = index.find(key.second);
    if (a == index.end() || b == index.end()) {
      fail(ErrorKind::kSchema, "linking entry " + key.first + "," + key.second +
                                   " does not name two 2-handles");
    }
    if (a->second == b->second) {
      fail(ErrorKind::kSchema, "linking entry " + key.first + "," + key.second +
                                   " is diagonal; use the framing field");
    }
    auto k = std::minmax(a->second, b->second);
    auto [it, inserted] = seen.emplace(k, value);
    if (!inserted && it->second != value) {
      fail(ErrorKind::kConsistency, "linking entry " + key.first + "," + key.second +
                                        " given twice with different values");
    }
    linking_[a->second][b->second] = value;
    linking_[b->second][a->second] = value;
  }
  validate();
}

KirbyDiagram KirbyDiagram::from_matrix(std::string name, std::vector<std::string> one_handles,
                                       std::vector<TwoHandle> two_handles, IntMatrix linking_matrix,
                                       std::optional<PlanarCode> pd) {
  KirbyDiagram d;
  d.name_ = std::move(name);
  d.one_handles_ = std::move(one_handles);
  d.two_handles_ = std::move(two_handles);
  d.linking_ = std::move(linking_matrix);
  d.pd_ = std::move(pd);
  d.validate();
  return d;
}

void KirbyDiagram::validate() const {
  std::set<std::string> ids;
  auto check_id = [&](const std::string& id) {
    if (id.empty()) fail(ErrorKind::kSchema, "empty handle id");
    if (id.find(',') != std::string::npos) {
      fail(ErrorKind::kSchema, "handle id '" + id + "' contains a comma");
    }
    if (!ids.insert(id).second) fail(ErrorKind::kSchema, "duplicate handle id '" + id + "'");
  };
  for (const auto& id : one_handles_) check_id(id);
  std::set<std::string> dotted(one_handles_.begin(), one_handles_.end());
  for (const auto& h : two_handles_) {
    check_id(h.id);
    for (const auto& l : h.word) {
      if (!dotted.count(l.handle)) {
        fail(ErrorKind::kSchema, "word of " + h.id + " uses unknown 1-handle '" + l.handle + "'");
      }
      if (l.sign != 1 && l.sign != -1) {
        fail(ErrorKind::kSchema, "word of " + h.id + " has an exponent other than +1/-1");
      }
    }
  }
  std::size_t n = two_handles_.size();
  if (linking_.size() != n) fail(ErrorKind::kSchema, "linking matrix has wrong size");
  for (const auto& row : linking_) {
    if (row.size() != n) fail(ErrorKind::kSchema, "linking matrix has wrong size");
  }
  if (!is_symmetric(linking_)) fail(ErrorKind::kConsistency, "linking matrix is not symmetric");
  for (std::size_t i = 0; i < n; ++i) {
    if (linking_[i][i] != two_handles_[i].framing) {
      fail(ErrorKind::kConsistency, "linking diagonal of " + two_handles_[i].id +
                                        " differs from its framing");
    }
  }
  if (pd_) validate_pd();
}

void KirbyDiagram::validate_pd() const {
  const PlanarCode& pd = *pd_;
  validate_planar_code(pd);
  std::vector<std::string> drawn = pd.components();
  std::set<std::string> drawn_set(drawn.begin(), drawn.end());
  for (const auto& id : drawn) {
    if (!has_id(id)) fail(ErrorKind::kSchema, "planar code draws unknown component '" + id + "'");
  }
  for (const auto& id : component_ids()) {
    if (!drawn_set.count(id)) fail(ErrorKind::kSchema, "planar code omits component '" + id + "'");
  }

  for (const auto& c : pd.crossings) {
    const auto& u = pd.under_component(c);
    if (u == pd.over_component(c) &&
        std::find(one_handles_.begin(), one_handles_.end(), u) != one_handles_.end()) {
      fail(ErrorKind::kDottedLink, "dotted circle " + u + " is drawn with self-crossings");
    }
  }
  // Dotted circles must form a layered unlink: every pair is split by height.
  std::size_t d = one_handles_.size();
  std::vector<std::vector<int>> above(d, std::vector<int>(d, 0));
  for (const auto& c : pd.crossings) {
    auto o = std::find(one_handles_.begin(), one_handles_.end(), pd.over_component(c));
    auto u = std::find(one_handles_.begin(), one_handles_.end(), pd.under_component(c));
    if (o == one_handles_.end() || u == one_handles_.end() || o == u) continue;
    above[o - one_handles_.begin()][u - one_handles_.begin()] = 1;
  }
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i + 1; j < d; ++j) {
      if (above[i][j] && above[j][i]) {
        fail(ErrorKind::kDottedLink, "dotted circles " + one_handles_[i] + " and " +
                                         one_handles_[j] + " are not split");
      }
    }
  }
  std::vector<int> state(d, 0);
  std::function<void(std::size_t)> visit = [&](std::size_t v) {
    state[v] = 1;
    for (std::size_t w = 0; w < d; ++w) {
      if (!above[v][w]) continue;
      if (state[w] == 1) fail(ErrorKind::kDottedLink, "dotted circles are cyclically interlaced");
      if (state[w] == 0) visit(w);
    }
    state[v] = 2;
  };
  for (std::size_t v = 0; v < d; ++v) {
    if (state[v] == 0) visit(v);
  }

  for (std::size_t i = 0; i < two_handles_.size(); ++i) {
    const auto& a = two_handles_[i];
    int w = pd.writhe(a.id);
    if (w != a.framing) {
      fail(ErrorKind::kConsistency, "component " + a.id + " has writhe " + std::to_string(w) +
                                        " but framing " + std::to_string(a.framing));
    }
    for (std::size_t j = i + 1; j < two_handles_.size(); ++j) {
      int s = pd.signed_crossings(a.id, two_handles_[j].id);
      if (s != 2 * linking_[i][j]) {
        fail(ErrorKind::kConsistency, "linking of " + a.id + " and " + two_handles_[j].id +
                                          " in the planar code differs from the declared value");
      }
    }
  }
  // A dotted circle carries no preferred orientation, so its letter sums may all flip sign.
  for (std::size_t x = 0; x < d; ++x) {
    int orientation = 0;
    for (std::size_t k = 0; k < two_handles_.size(); ++k) {
      int s = pd.signed_crossings(one_handles_[x], two_handles_[k].id);
      std::int64_t expected = letter_sum(k, x);
      bool ok = false;
      if (s % 2 == 0) {
        std::int64_t lk = s / 2;
        if (expected == 0 && lk == 0) {
          ok = true;
        } else if (orientation == 0 && (lk == expected || lk == -expected)) {
          orientation = lk == expected ? 1 : -1;
          ok = true;
        } else {
          ok = lk == orientation * expected;
        }
      }
      if (!ok) {
        fail(ErrorKind::kConsistency, "word of " + two_handles_[k].id + " disagrees with its linking with dotted circle " +
                                          one_handles_[x]);
      }
    }
  }
}

IntMatrix KirbyDiagram::full_linking_matrix() const {
  std::size_t d = one_handles_.size();
  std::size_t n = d + two_handles_.size();
  IntMatrix m(n, std::vector<std::int64_t>(n, 0));
  for (std::size_t k = 0; k < two_handles_.size(); ++k) {
    for (std::size_t x = 0; x < d; ++x) {
      m[x][d + k] = m[d + k][x] = letter_sum(k, x);
    }
    for (std::size_t l = 0; l < two_handles_.size(); ++l) m[d + k][d + l] = linking_[k][l];
  }
  return m;
}

std::int64_t KirbyDiagram::letter_sum(std::size_t two, std::size_t one) const {
  return word_letter_sum(two_handles_.at(two).word, one_handles_.at(one));
}

std::vector<std::string> KirbyDiagram::component_ids() const {
  std::vector<std::string> ids = one_handles_;
  for (const auto& h : two_handles_) ids.push_back(h.id);
  return ids;
}

std::size_t KirbyDiagram::one_handle_index(const std::string& id) const {
  auto it = std::find(one_handles_.begin(), one_handles_.end(), id);
  if (it == one_handles_.end()) fail(ErrorKind::kInvalidArgument, "no 1-handle '" + id + "'");
  return static_cast<std::size_t>(it - one_handles_.begin());
}

std::size_t KirbyDiagram::two_handle_index(const std::string& id) const {
  for (std::size_t i = 0; i < two_handles_.size(); ++i) {
    if (two_handles_[i].id == id) return i;
  }
  fail(ErrorKind::kInvalidArgument, "no 2-handle '" + id + "'");
}

bool KirbyDiagram::has_id(const std::string& id) const {
  if (std::find(one_handles_.begin(), one_handles_.end(), id) != one_handles_.end()) return true;
  return std::any_of(two_handles_.begin(), two_handles_.end(),
                     [&](const TwoHandle& h) { return h.id == id; });
}

KirbyDiagram KirbyDiagram::renamed(std::string name) const {
  KirbyDiagram d = *this;
  d.name_ = std::move(name);
  return d;
}

namespace {

template <typename T>
T get_field(const json& obj, const char* key, const char* what) {
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception&) {
    fail(ErrorKind::kSchema, std::string("field '") + key + "' missing or not " + what);
  }
}

Word parse_word(const json& j, const std::string& owner) {
  if (!j.is_array()) fail(ErrorKind::kSchema, "word of " + owner + " is not an array");
  Word w;
  for (const auto& letter : j) {
    if (!letter.is_array() || letter.size() != 2 || !letter[0].is_string() ||
        !letter[1].is_number_integer()) {
      fail(ErrorKind::kSchema, "word of " + owner + " has a malformed letter");
    }
    w.push_back({letter[0].get<std::string>(), letter[1].get<int>()});
  }
  return w;
}

PlanarCode parse_pd(const json& j) {
  if (!j.is_object()) fail(ErrorKind::kSchema, "pd is not an object");
  for (const auto& [key, value] : j.items()) {
    if (key != "crossings" && key != "arcs" && key != "crossingless") {
      fail(ErrorKind::kSchema, "unknown pd field '" + key + "'");
    }
  }
  PlanarCode pd;
  if (j.contains("crossings")) {
    if (!j["crossings"].is_array()) fail(ErrorKind::kSchema, "pd.crossings is not an array");
    for (const auto& c : j["crossings"]) {
      if (!c.is_array() || c.size() != 5) {
        fail(ErrorKind::kSchema, "crossing must be [a,b,c,d,sign]");
      }
      PdCrossing x;
      for (int k = 0; k < 5; ++k) {
        if (!c[k].is_number_integer()) fail(ErrorKind::kSchema, "crossing entries must be integers");
      }
      for (int k = 0; k < 4; ++k) x.arcs[k] = c[k].get<int>();
      x.sign = c[4].get<int>();
      pd.crossings.push_back(x);
    }
  }
  if (j.contains("arcs")) {
    if (!j["arcs"].is_object()) fail(ErrorKind::kSchema, "pd.arcs is not an object");
    for (const auto& [key, value] : j["arcs"].items()) {
      int arc = 0;
      try {
        std::size_t used = 0;
        arc = std::stoi(key, &used);
        if (used != key.size()) throw std::invalid_argument(key);
      } catch (const std::exception&) {
        fail(ErrorKind::kSchema, "arc key '" + key + "' is not an integer");
      }
      if (!value.is_string()) fail(ErrorKind::kSchema, "arc component must be a string");
      pd.arcs[arc] = value.get<std::string>();
    }
  }
  if (j.contains("crossingless")) {
    if (!j["crossingless"].is_array()) fail(ErrorKind::kSchema, "pd.crossingless is not an array");
    for (const auto& id : j["crossingless"]) {
      if (!id.is_string()) fail(ErrorKind::kSchema, "crossingless entries must be strings");
      pd.crossingless.push_back(id.get<std::string>());
    }
  }
  return pd;
}

json word_json(const Word& w) {
  json out = json::array();
  for (const auto& l : w) out.push_back(json::array({l.handle, l.sign}));
  return out;
}

}  // namespace

KirbyDiagram parse_kdf(const std::string& document) {
  if (std::all_of(document.begin(), document.end(), [](unsigned char c) { return std::isspace(c); })) {
    return KirbyDiagram();
  }
  json j;
  try {
    j = json::parse(document);
  } catch (const json::parse_error& e) {
    fail(ErrorKind::kSchema, std::string("not valid JSON: ") + e.what());
  }
  if (!j.is_object()) fail(ErrorKind::kSchema, "KDF document must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (key != "name" && key != "one_handles" && key != "two_handles" && key != "linking" &&
        key != "pd") {
      fail(ErrorKind::kSchema, "unknown field '" + key + "'");
    }
  }
  std::string name = j.contains("name") ? get_field<std::string>(j, "name", "a string") : "";
  std::vector<std::string> one;
  if (j.contains("one_handles")) one = get_field<std::vector<std::string>>(j, "one_handles", "a list of strings");
  std::vector<TwoHandle> two;
  if (j.contains("two_handles")) {
    if (!j["two_handles"].is_array()) fail(ErrorKind::kSchema, "two_handles is not an array");
    for (const auto& h : j["two_handles"]) {
      if (!h.is_object()) fail(ErrorKind::kSchema, "2-handle entry is not an object");
      for (const auto& [key, value] : h.items()) {
        if (key != "id" && key != "framing" && key != "word") {
          fail(ErrorKind::kSchema, "unknown 2-handle field '" + key + "'");
        }
      }
      TwoHandle t;
      t.id = get_field<std::string>(h, "id", "a string");
      if (!h.contains("framing") || !h["framing"].is_number_integer()) {
        fail(ErrorKind::kSchema, "framing of " + t.id + " missing or not an integer");
      }
      t.framing = h["framing"].get<int>();
      if (h.contains("word")) t.word = parse_word(h["word"], t.id);
      two.push_back(std::move(t));
    }
  }
  std::map<std::pair<std::string, std::string>, std::int64_t> linking;
  if (j.contains("linking")) {
    if (!j["linking"].is_object()) fail(ErrorKind::kSchema, "linking is not an object");
    for (const auto& [key, value] : j["linking"].items()) {
      auto comma = key.find(',');
      if (comma == std::string::npos || key.find(',', comma + 1) != std::string::npos) {
        fail(ErrorKind::kSchema, "linking key '" + key + "' must be 'idA,idB'");
      }
      if (!value.is_number_integer()) fail(ErrorKind::kSchema, "linking value must be an integer");
      auto k = std::make_pair(key.substr(0, comma), key.substr(comma + 1));
      auto rev = std::make_pair(k.second, k.first);
      auto it = linking.find(rev);
      if (it != linking.end() && it->second != value.get<std::int64_t>()) {
        fail(ErrorKind::kConsistency, "linking entry '" + key + "' contradicts its transpose");
      }
      linking[k] = value.get<std::int64_t>();
    }
  }
  std::optional<PlanarCode> pd;
  if (j.contains("pd") && !j["pd"].is_null()) pd = parse_pd(j["pd"]);
  return KirbyDiagram(std::move(name), std::move(one), std::move(two), linking, std::move(pd));
}

std::string to_kdf(const KirbyDiagram& diagram) {
  json j;
  j["name"] = diagram.name();
  j["one_handles"] = diagram.one_handles();
  j["two_handles"] = json::array();
  for (const auto& h : diagram.two_handles()) {
    j["two_handles"].push_back({{"id", h.id}, {"framing", h.framing}, {"word", word_json(h.word)}});
  }
  j["linking"] = json::object();
  const auto& m = diagram.linking_matrix();
  for (std::size_t a = 0; a < m.size(); ++a) {
    for (std::size_t b = a + 1; b < m.size(); ++b) {
      if (m[a][b] != 0) {
        j["linking"][diagram.two_handles()[a].id + "," + diagram.two_handles()[b].id] = m[a][b];
      }
    }
  }
  if (diagram.pd()) {
    const auto& pd = *diagram.pd();
    json p;
    p["crossings"] = json::array();
    for (const auto& c : pd.crossings) {
      p["crossings"].push_back({c.arcs[0], c.arcs[1], c.arcs[2], c.arcs[3], c.sign});
    }
    p["arcs"] = json::object();
    for (const auto& [arc, id] : pd.arcs) p["arcs"][std::to_string(arc)] = id;
    p["crossingless"] = pd.crossingless;
    j["pd"] = p;
  }
  return j.dump(2) + "\n";
}

GroupPresentation fundamental_group(const KirbyDiagram& diagram) {
  GroupPresentation g;
  g.generators = diagram.one_handles();
  for (const auto& h : diagram.two_handles()) g.relators.push_back(h.word);
  return g;
}

Word inverse_word(const Word& word) {
  Word out(word.rbegin(), word.rend());
  for (auto& l : out) l.sign = -l.sign;
  return out;
}

KirbyDiagram connected_sum(const KirbyDiagram& a, const KirbyDiagram& b) {
  if (b.component_count() == 0) return a;
  if (a.component_count() == 0) return b;
  std::set<std::string> used;
  for (const auto& id : a.component_ids()) used.insert(id);
  for (const auto& id : b.component_ids()) used.insert(id);
  std::map<std::string, std::string> rename;
  for (const auto& id : b.component_ids()) {
    if (!a.has_id(id)) {
      rename[id] = id;
      continue;
    }
    std::string candidate;
    for (int n = 2;; ++n) {
      candidate = id + "_" + std::to_string(n);
      if (!used.count(candidate)) break;
    }
    used.insert(candidate);
    rename[id] = candidate;
  }

  std::vector<std::string> one = a.one_handles();
  for (const auto& id : b.one_handles()) one.push_back(rename[id]);
  std::vector<TwoHandle> two = a.two_handles();
  for (auto h : b.two_handles()) {
    h.id = rename[h.id];
    for (auto& l : h.word) l.handle = rename[l.handle];
    two.push_back(std::move(h));
  }
  std::size_t na = a.h2();
  std::size_t n = two.size();
  IntMatrix m(n, std::vector<std::int64_t>(n, 0));
  for (std::size_t i = 0; i < na; ++i) {
    for (std::size_t j = 0; j < na; ++j) m[i][j] = a.linking_matrix()[i][j];
  }
  for (std::size_t i = na; i < n; ++i) {
    for (std::size_t j = na; j < n; ++j) m[i][j] = b.linking_matrix()[i - na][j - na];
  }
  std::optional<PlanarCode> pd;
  if (a.pd() && b.pd()) {
    PlanarCode pb = *b.pd();
    for (auto& [arc, id] : pb.arcs) id = rename[id];
    for (auto& id : pb.crossingless) id = rename[id];
    pd = disjoint_union(*a.pd(), pb);
  }
  std::string name = a.name().empty() ? b.name()
                     : b.name().empty() ? a.name()
                                        : a.name() + "#" + b.name();
  return KirbyDiagram::from_matrix(std::move(name), std::move(one), std::move(two), std::move(m),
                                   std::move(pd));
}

int third_handle_count(const KirbyDiagram& diagram) {
  return inertia(diagram.full_linking_matrix()).zero;
}

int euler_characteristic(const KirbyDiagram& diagram) {
  return 2 - diagram.h1() + diagram.h2() - third_handle_count(diagram);
}

int signature(const KirbyDiagram& diagram) {
  return inertia(diagram.full_linking_matrix()).signature();
}

namespace {

KirbyDiagram remove_two_handles(const KirbyDiagram& d, const std::set<std::string>& remove_one,
                                const std::set<std::string>& remove_two) {
  std::vector<std::string> one;
  for (const auto& id : d.one_handles()) {
    if (!remove_one.count(id)) one.push_back(id);
  }
  std::vector<TwoHandle> two;
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < d.two_handles().size(); ++i) {
    if (remove_two.count(d.two_handles()[i].id)) continue;
    two.push_back(d.two_handles()[i]);
    keep.push_back(i);
  }
  IntMatrix m(keep.size(), std::vector<std::int64_t>(keep.size()));
  for (std::size_t i = 0; i < keep.size(); ++i) {
    for (std::size_t j = 0; j < keep.size(); ++j) m[i][j] = d.linking_matrix()[keep[i]][keep[j]];
  }
  std::optional<PlanarCode> pd;
  if (d.pd()) {
    std::set<std::string> gone = remove_one;
    gone.insert(remove_two.begin(), remove_two.end());
    pd = remove_components(*d.pd(), gone);
  }
  return KirbyDiagram::from_matrix(d.name(), std::move(one), std::move(two), std::move(m),
                                   std::move(pd));
}

[[noreturn]] void precondition(const std::string& message) {
  fail(ErrorKind::kPreconditionFailed, message);
}

}  // namespace

KirbyDiagram cancel_12(const KirbyDiagram& diagram, const std::string& one_id,
                       const std::string& two_id) {
  diagram.one_handle_index(one_id);
  std::size_t k = diagram.two_handle_index(two_id);
  const Word& w = diagram.two_handles()[k].word;
  if (w.size() != 1) {
    precondition("word of " + two_id + " has length " + std::to_string(w.size()) + ", not 1");
  }
  if (w[0].handle != one_id) precondition("word of " + two_id + " is not a letter of " + one_id);
  for (std::size_t i = 0; i < diagram.two_handles().size(); ++i) {
    if (i != k) {
      for (const auto& l : diagram.two_handles()[i].word) {
        if (l.handle == one_id) precondition(one_id + " occurs in the word of " + diagram.two_handles()[i].id);
      }
    }
    if (i != k && diagram.linking_matrix()[k][i] != 0) {
      precondition(two_id + " is linked with " + diagram.two_handles()[i].id);
    }
  }
  return remove_two_handles(diagram, {one_id}, {two_id});
}

KirbyDiagram cancel_23(const KirbyDiagram& diagram, const std::string& two_id) {
  std::size_t k = diagram.two_handle_index(two_id);
  const auto& h = diagram.two_handles()[k];
  if (!h.word.empty()) precondition(two_id + " passes through a 1-handle");
  if (h.framing != 0) precondition(two_id + " has framing " + std::to_string(h.framing) + ", not 0");
  for (std::size_t i = 0; i < diagram.two_handles().size(); ++i) {
    if (i != k && diagram.linking_matrix()[k][i] != 0) {
      precondition(two_id + " is linked with " + diagram.two_handles()[i].id);
    }
  }
  if (diagram.pd()) {
    const auto& cl = diagram.pd()->crossingless;
    if (std::find(cl.begin(), cl.end(), two_id) == cl.end()) {
      precondition(two_id + " has crossings in the planar code");
    }
  }
  return remove_two_handles(diagram, {}, {two_id});
}

KirbyDiagram blow_up(const KirbyDiagram& diagram, int sign) {
  if (sign != 1 && sign != -1) fail(ErrorKind::kInvalidArgument, "blow_up sign must be +1 or -1");
  std::string id;
  for (int n = 1;; ++n) {
    id = "e" + std::to_string(n);
    if (!diagram.has_id(id)) break;
  }
  std::optional<PlanarCode> pd;
  if (diagram.pd() || diagram.component_count() == 0) pd = kink_code(id, sign);
  KirbyDiagram unknot = KirbyDiagram::from_matrix(sign > 0 ? "CP2" : "CP2bar", {},
                                                  {TwoHandle{id, sign, {}}}, {{sign}}, pd);
  KirbyDiagram out = connected_sum(diagram, unknot);
  return out.renamed(diagram.name());
}

KirbyDiagram slide_22(const KirbyDiagram& diagram, const std::string& a, const std::string& b,
                      int sign) {
  if (diagram.pd()) {
    fail(ErrorKind::kPdPresent, "slide_22 would invalidate the planar code; strip it first");
  }
  if (sign != 1 && sign != -1) fail(ErrorKind::kInvalidArgument, "slide sign must be +1 or -1");
  if (a == b) precondition("cannot slide a 2-handle over itself");
  std::size_t ia = diagram.two_handle_index(a);
  std::size_t ib = diagram.two_handle_index(b);
  std::vector<TwoHandle> two = diagram.two_handles();
  IntMatrix m = diagram.linking_matrix();
  std::size_t n = m.size();
  for (std::size_t j = 0; j < n; ++j) m[ia][j] += sign * m[ib][j];
  for (std::size_t i = 0; i < n; ++i) m[i][ia] += sign * m[i][ib];
  Word extra = sign > 0 ? two[ib].word : inverse_word(two[ib].word);
  two[ia].word.insert(two[ia].word.end(), extra.begin(), extra.end());
  two[ia].framing = static_cast<int>(m[ia][ia]);
  return KirbyDiagram::from_matrix(diagram.name(), diagram.one_handles(), std::move(two),
                                   std::move(m), std::nullopt);
}

}  // namespace kirbycalc
