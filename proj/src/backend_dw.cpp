#include "kirbycalc/backend_dw.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <random>
#include <set>
#include <thread>

#include "json.hpp"

#include "kirbycalc/error.hpp"

namespace kirbycalc {

namespace {

std::vector<std::vector<int>> table_from(int n, const std::function<int(int, int)>& mul) {
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) t[a][b] = mul(a, b);
  }
  return t;
}

// Relators compiled to generator indices and grouped by the depth at which they become decidable.
struct CompiledPresentation {
  int generators = 0;
  std::vector<std::vector<std::vector<std::pair<int, int>>>> by_depth;  // depth -> relators
};

CompiledPresentation compile(const GroupPresentation& p) {
  CompiledPresentation c;
  c.generators = static_cast<int>(p.generators.size());
  c.by_depth.resize(c.generators + 1);
  for (const auto& rel : p.relators) {
    std::vector<std::pair<int, int>> letters;
    int depth = 0;
    for (const auto& l : rel) {
      auto it = std::find(p.generators.begin(), p.generators.end(), l.handle);
      if (it == p.generators.end()) {
        fail(ErrorKind::kSchema, "relator uses undeclared generator '" + l.handle + "'");
      }
      int idx = static_cast<int>(it - p.generators.begin());
      letters.emplace_back(idx, l.sign);
      depth = std::max(depth, idx + 1);
    }
    c.by_depth[depth].push_back(std::move(letters));
  }
  return c;
}

// Counts assignments in [0, order)^generators whose images (under `image`) kill every relator in `g`.
std::uint64_t backtrack(const CompiledPresentation& c, int order, const FiniteGroup& g,
                        const std::vector<int>& image, int first_value) {
  auto relators_hold = [&](int depth, const std::vector<int>& assignment) {
    for (const auto& rel : c.by_depth[depth]) {
      int v = 0;
      for (const auto& [idx, sign] : rel) {
        int x = image[assignment[idx]];
        v = g.mul(v, sign > 0 ? x : g.inv(x));
      }
      if (v != 0) return false;
    }
    return true;
  };
  std::vector<int> assignment(c.generators, 0);
  if (!relators_hold(0, assignment)) return 0;
  if (c.generators == 0) return 1;
  std::uint64_t count = 0;
  std::function<void(int)> step = [&](int depth) {
    if (depth == c.generators) {
      ++count;
      return;
    }
    int lo = 0;
    int hi = order;
    if (depth == 0 && first_value >= 0) {
      lo = first_value;
      hi = first_value + 1;
    }
    for (int v = lo; v < hi; ++v) {
      assignment[depth] = v;
      if (relators_hold(depth + 1, assignment)) step(depth + 1);
    }
  };
  step(0);
  return count;
}

std::uint64_t parallel_count(const CompiledPresentation& c, int order, const FiniteGroup& g,
                             const std::vector<int>& image, int jobs) {
  if (jobs <= 1 || c.generators == 0) return backtrack(c, order, g, image, -1);
  std::vector<std::uint64_t> partial(order, 0);
  std::vector<std::thread> workers;
  int n = std::min(jobs, order);
  for (int w = 0; w < n; ++w) {
    workers.emplace_back([&, w] {
      for (int v = w; v < order; v += n) partial[v] = backtrack(c, order, g, image, v);
    });
  }
  for (auto& t : workers) t.join();
  std::uint64_t total = 0;
  for (auto p : partial) total += p;
  return total;
}

std::vector<int> identity_map(int n) {
  std::vector<int> m(n);
  for (int i = 0; i < n; ++i) m[i] = i;
  return m;
}

}  // namespace

FiniteGroup::FiniteGroup(std::string name, std::vector<std::vector<int>> table)
    : name_(std::move(name)), table_(std::move(table)) {
  const int n = static_cast<int>(table_.size());
  if (n == 0) fail(ErrorKind::kSchema, "group table is empty");
  for (const auto& row : table_) {
    if (static_cast<int>(row.size()) != n) fail(ErrorKind::kSchema, "group table is not square");
    for (int x : row) {
      if (x < 0 || x >= n) fail(ErrorKind::kSchema, "group table entry out of range");
    }
  }
  for (int a = 0; a < n; ++a) {
    if (table_[0][a] != a || table_[a][0] != a) fail(ErrorKind::kSchema, "element 0 is not the identity");
  }
  inverse_.assign(n, -1);
  for (int a = 0; a < n; ++a) {
    std::vector<bool> row_seen(n, false);
    std::vector<bool> col_seen(n, false);
    for (int b = 0; b < n; ++b) {
      if (row_seen[table_[a][b]] || col_seen[table_[b][a]]) {
        fail(ErrorKind::kSchema, "group table is not a Latin square");
      }
      row_seen[table_[a][b]] = col_seen[table_[b][a]] = true;
      if (table_[a][b] == 0) inverse_[a] = b;
    }
  }
  auto assoc = [&](int a, int b, int c) {
    if (table_[table_[a][b]][c] != table_[a][table_[b][c]]) {
      fail(ErrorKind::kSchema, "group table is not associative");
    }
  };
  if (n <= 128) {
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        for (int c = 0; c < n; ++c) assoc(a, b, c);
      }
    }
  } else {
    std::mt19937 rng(12345);
    std::uniform_int_distribution<int> pick(0, n - 1);
    for (int i = 0; i < 10000; ++i) assoc(pick(rng), pick(rng), pick(rng));
  }
}

FiniteGroup FiniteGroup::cyclic(int n) {
  if (n < 1) fail(ErrorKind::kInvalidArgument, "cyclic group order must be positive");
  return FiniteGroup("Z" + std::to_string(n), table_from(n, [n](int a, int b) { return (a + b) % n; }));
}

FiniteGroup FiniteGroup::symmetric3() {
  std::vector<std::array<int, 3>> perms;
  std::array<int, 3> p{0, 1, 2};
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  auto index = [&](const std::array<int, 3>& q) {
    return static_cast<int>(std::find(perms.begin(), perms.end(), q) - perms.begin());
  };
  return FiniteGroup("S3", table_from(6, [&](int a, int b) {
                       std::array<int, 3> c{};
                       for (int i = 0; i < 3; ++i) c[i] = perms[a][perms[b][i]];
                       return index(c);
                     }));
}

FiniteGroup FiniteGroup::dihedral4() {
  // r^i s^j encoded as i + 4j; s r = r^{-1} s.
  return FiniteGroup("D4", table_from(8, [](int a, int b) {
                       int i1 = a % 4, j1 = a / 4, i2 = b % 4, j2 = b / 4;
                       int i = (i1 + (j1 ? 4 - i2 : i2)) % 4;
                       return i + 4 * (j1 ^ j2);
                     }));
}

FiniteGroup FiniteGroup::quaternion8() {
  // +-1, +-i, +-j, +-k encoded as unit + 4*negative, units ordered 1, i, j, k.
  static const int unit_mul[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static const int unit_sign[4][4] = {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
  return FiniteGroup("Q8", table_from(8, [](int a, int b) {
                       int ua = a % 4, ub = b % 4;
                       int neg = (a / 4) ^ (b / 4) ^ unit_sign[ua][ub];
                       return unit_mul[ua][ub] + 4 * neg;
                     }));
}

FiniteGroup FiniteGroup::builtin(const std::string& name) {
  std::string lower = name;
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
  if (lower == "s3") return symmetric3();
  if (lower == "d4") return dihedral4();
  if (lower == "q8") return quaternion8();
  if (lower.size() > 1 && lower[0] == 'z') {
    try {
      std::size_t used = 0;
      int n = std::stoi(lower.substr(1), &used);
      if (used == lower.size() - 1) return cyclic(n);
    } catch (const std::exception&) {
    }
  }
  fail(ErrorKind::kInvalidArgument, "unknown built-in group '" + name + "'");
}

FiniteGroup FiniteGroup::from_json(const std::string& document, std::string name) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(document);
  } catch (const nlohmann::json::parse_error& e) {
    fail(ErrorKind::kSchema, std::string("group file is not valid JSON: ") + e.what());
  }
  try {
    int order = j.at("order").get<int>();
    auto table = j.at("table").get<std::vector<std::vector<int>>>();
    if (static_cast<int>(table.size()) != order) {
      fail(ErrorKind::kSchema, "group table size differs from declared order");
    }
    return FiniteGroup(std::move(name), std::move(table));
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::kSchema, std::string("malformed group file: ") + e.what());
  }
}

std::vector<std::vector<int>> FiniteGroup::conjugacy_classes() const {
  std::vector<int> cls(order(), -1);
  std::vector<std::vector<int>> classes;
  for (int x = 0; x < order(); ++x) {
    if (cls[x] >= 0) continue;
    std::set<int> orbit;
    for (int g = 0; g < order(); ++g) orbit.insert(mul(mul(g, x), inv(g)));
    for (int y : orbit) cls[y] = static_cast<int>(classes.size());
    classes.emplace_back(orbit.begin(), orbit.end());
  }
  return classes;
}

FiniteGroup FiniteGroup::subgroup(const std::vector<int>& elements, std::string name) const {
  if (elements.empty() || elements[0] != 0) {
    fail(ErrorKind::kInvalidArgument, "subgroup element list must start with the identity");
  }
  std::vector<int> position(order(), -1);
  for (std::size_t i = 0; i < elements.size(); ++i) position[elements[i]] = static_cast<int>(i);
  const int n = static_cast<int>(elements.size());
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      int p = position[mul(elements[a], elements[b])];
      if (p < 0) fail(ErrorKind::kInvalidArgument, "element list is not closed under multiplication");
      t[a][b] = p;
    }
  }
  return FiniteGroup(std::move(name), std::move(t));
}

void GroupHomData::validate() const {
  if (static_cast<int>(map.size()) != source.order()) {
    fail(ErrorKind::kInvalidArgument, "homomorphism map has wrong length");
  }
  for (int x : map) {
    if (x < 0 || x >= target.order()) fail(ErrorKind::kInvalidArgument, "homomorphism leaves target");
  }
  if (map[0] != 0) fail(ErrorKind::kInvalidArgument, "homomorphism does not fix the identity");
  for (int a = 0; a < source.order(); ++a) {
    for (int b = 0; b < source.order(); ++b) {
      if (map[source.mul(a, b)] != target.mul(map[a], map[b])) {
        fail(ErrorKind::kInvalidArgument, "map is not a homomorphism");
      }
    }
  }
}

int GroupHomData::kernel_size() const {
  return static_cast<int>(std::count(map.begin(), map.end(), 0));
}

std::vector<int> GroupHomData::image_elements() const {
  std::set<int> s(map.begin(), map.end());
  return {s.begin(), s.end()};
}

FiniteGroup GroupHomData::image_group() const {
  return target.subgroup(image_elements(), "Im(" + source.name() + "->" + target.name() + ")");
}

GroupHomData sign_homomorphism_s3() {
  GroupHomData phi{FiniteGroup::symmetric3(), FiniteGroup::cyclic(2), {}};
  // Elements are the permutations of {0,1,2} in lexicographic order.
  phi.map = {0, 1, 1, 0, 0, 1};
  phi.validate();
  return phi;
}

GroupHomData reduction_mod2_z4() {
  GroupHomData phi{FiniteGroup::cyclic(4), FiniteGroup::cyclic(2), {0, 1, 0, 1}};
  phi.validate();
  return phi;
}

GroupHomData identity_homomorphism(const FiniteGroup& g) {
  return GroupHomData{g, g, identity_map(g.order())};
}

std::uint64_t count_homomorphisms(const GroupPresentation& presentation, const FiniteGroup& g,
                                  int jobs) {
  return parallel_count(compile(presentation), g.order(), g, identity_map(g.order()), jobs);
}

std::uint64_t count_flat_connections(const KirbyDiagram& diagram, const FiniteGroup& g, int jobs) {
  return count_homomorphisms(fundamental_group(diagram), g, jobs);
}

Rational hom_invariant(const KirbyDiagram& diagram, const GroupHomData& phi) {
  phi.validate();
  auto c = compile(fundamental_group(diagram));
  std::uint64_t sum = backtrack(c, phi.source.order(), phi.target, phi.map, -1);
  Rational value(static_cast<std::int64_t>(sum));
  for (int i = 0; i < diagram.h1(); ++i) value /= phi.kernel_size();
  return value;
}

Rational normalized_partition_function(const KirbyDiagram& diagram, const FiniteGroup& g) {
  return Rational(static_cast<std::int64_t>(count_flat_connections(diagram, g)), g.order());
}

std::uint64_t count_hom_conjugacy_classes(const GroupPresentation& presentation,
                                          const FiniteGroup& g) {
  auto c = compile(presentation);
  std::vector<std::vector<int>> homs;
  std::vector<int> assignment(c.generators, 0);
  std::function<void(int)> step = [&](int depth) {
    for (const auto& rel : c.by_depth[depth]) {
      int v = 0;
      for (const auto& [idx, sign] : rel) v = g.mul(v, sign > 0 ? assignment[idx] : g.inv(assignment[idx]));
      if (v != 0) return;
    }
    if (depth == c.generators) {
      homs.push_back(assignment);
      return;
    }
    for (int v = 0; v < g.order(); ++v) {
      assignment[depth] = v;
      step(depth + 1);
    }
  };
  step(0);
  std::set<std::vector<int>> canonical;
  for (const auto& h : homs) {
    std::vector<int> best = h;
    for (int x = 0; x < g.order(); ++x) {
      std::vector<int> conj(h.size());
      for (std::size_t i = 0; i < h.size(); ++i) conj[i] = g.mul(g.mul(x, h[i]), g.inv(x));
      best = std::min(best, conj);
    }
    canonical.insert(best);
  }
  return canonical.size();
}

int evaluate_word(const FiniteGroup& g, const Word& word, const std::vector<std::string>& generators,
                  const std::vector<int>& assignment) {
  int v = 0;
  for (const auto& l : word) {
    auto it = std::find(generators.begin(), generators.end(), l.handle);
    if (it == generators.end()) fail(ErrorKind::kSchema, "word uses undeclared generator '" + l.handle + "'");
    int x = assignment.at(it - generators.begin());
    v = g.mul(v, l.sign > 0 ? x : g.inv(x));
  }
  return v;
}

}  // namespace kirbycalc
