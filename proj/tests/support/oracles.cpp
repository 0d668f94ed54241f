#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

namespace oracle {

using namespace kirbycalc;

namespace {

struct Dsu {
  std::vector<int> p;
  explicit Dsu(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
  void unite(int a, int b) { p[find(a)] = find(b); }
};

}  // namespace

Complex naive_bracket(const PlanarCode& pd, Complex a) {
  const Complex delta = -a * a - 1.0 / (a * a);
  std::map<int, int> index;
  for (const auto& [arc, component] : pd.arcs) index.emplace(arc, static_cast<int>(index.size()));
  const int n = static_cast<int>(pd.crossings.size());
  Complex total = 0.0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    Dsu dsu(static_cast<int>(index.size()));
    int power = 0;
    for (int c = 0; c < n; ++c) {
      const auto& x = pd.crossings[c].arcs;
      if (mask >> c & 1) {
        dsu.unite(index[x[0]], index[x[3]]);
        dsu.unite(index[x[1]], index[x[2]]);
        --power;
      } else {
        dsu.unite(index[x[0]], index[x[1]]);
        dsu.unite(index[x[2]], index[x[3]]);
        ++power;
      }
    }
    int loops = static_cast<int>(pd.crossingless.size());
    for (int i = 0; i < static_cast<int>(index.size()); ++i) loops += dsu.find(i) == i;
    total += std::pow(a, power) * std::pow(delta, loops);
  }
  return total;
}

PlanarCode braid_closure(int strands, const std::vector<int>& word) {
  std::vector<int> current(strands);
  std::iota(current.begin(), current.end(), 1);
  std::vector<int> origin(strands);  // starting position of the strand now at each position
  std::iota(origin.begin(), origin.end(), 0);
  std::map<int, int> arc_origin;
  for (int p = 0; p < strands; ++p) arc_origin[p + 1] = p;
  int next_arc = strands + 1;
  PlanarCode pd;
  for (int letter : word) {
    const int i = std::abs(letter) - 1;
    const int in_i = current[i];
    const int in_j = current[i + 1];
    const int out_i = next_arc++;
    const int out_j = next_arc++;
    if (letter > 0) {
      pd.crossings.push_back({{in_j, out_j, out_i, in_i}, 1});
    } else {
      pd.crossings.push_back({{in_i, in_j, out_j, out_i}, -1});
    }
    std::swap(origin[i], origin[i + 1]);
    current[i] = out_i;
    current[i + 1] = out_j;
    arc_origin[out_i] = origin[i];
    arc_origin[out_j] = origin[i + 1];
  }
  // Close up: the final arc at each position becomes the starting arc there.
  std::map<int, int> rename;
  for (int p = 0; p < strands; ++p) rename[current[p]] = p + 1;
  std::set<int> used;
  for (auto& c : pd.crossings) {
    for (int& x : c.arcs) {
      if (rename.count(x)) x = rename[x];
      used.insert(x);
    }
  }
  Dsu dsu(strands);
  for (int p = 0; p < strands; ++p) dsu.unite(p, origin[p]);
  std::map<int, std::string> names;
  for (int p = 0; p < strands; ++p) {
    if (!names.count(dsu.find(p))) names[dsu.find(p)] = "k" + std::to_string(names.size());
  }
  for (const auto& [arc, o] : arc_origin) {
    if (used.count(arc)) pd.arcs[arc] = names[dsu.find(o)];
  }
  for (int p = 0; p < strands; ++p) {
    if (!used.count(p + 1)) pd.crossingless.push_back(names[dsu.find(p)]);
  }
  return pd;
}

PlanarCode random_network(std::mt19937_64& rng, int crossings) {
  PlanarCode pd;
  pd.crossings.resize(crossings);
  // Slot s of crossing c: incoming slots are under-in and over-in, outgoing are the others.
  std::vector<std::pair<int, int>> outgoing;
  std::vector<std::pair<int, int>> incoming;
  for (int c = 0; c < crossings; ++c) {
    pd.crossings[c].sign = std::uniform_int_distribution<int>(0, 1)(rng) ? 1 : -1;
    const bool pos = pd.crossings[c].sign > 0;
    incoming.push_back({c, 0});
    incoming.push_back({c, pos ? 3 : 1});
    outgoing.push_back({c, 2});
    outgoing.push_back({c, pos ? 1 : 3});
  }
  std::shuffle(incoming.begin(), incoming.end(), rng);
  for (std::size_t k = 0; k < outgoing.size(); ++k) {
    const int arc = static_cast<int>(k) + 1;
    pd.crossings[outgoing[k].first].arcs[outgoing[k].second] = arc;
    pd.crossings[incoming[k].first].arcs[incoming[k].second] = arc;
    pd.arcs[arc] = "k";
  }
  return pd;
}

Complex tl_dim(int r, int i) {
  return (i % 2 ? -1.0 : 1.0) * std::sin((i + 1) * kPi / r) / std::sin(kPi / r);
}

Complex tl_twist(int r, int i) {
  const Complex a = std::polar(1.0, kPi / (2.0 * r));
  return (i % 2 ? -1.0 : 1.0) * std::pow(a, i * i + 2 * i);
}

Complex tl_hopf(int r, int i, int k) {
  return ((i + k) % 2 ? -1.0 : 1.0) * std::sin((i + 1) * (k + 1) * kPi / r) / std::sin(kPi / r);
}

std::uint64_t brute_force_homs(const GroupPresentation& p, const FiniteGroup& g) {
  const std::size_t n = p.generators.size();
  std::vector<int> assignment(n, 0);
  std::uint64_t count = 0;
  while (true) {
    bool ok = true;
    for (const auto& rel : p.relators) {
      if (evaluate_word(g, rel, p.generators, assignment) != 0) {
        ok = false;
        break;
      }
    }
    count += ok;
    std::size_t k = 0;
    while (k < n && ++assignment[k] == g.order()) assignment[k++] = 0;
    if (k == n) break;
  }
  return count;
}

std::uint64_t commuting_pairs(const FiniteGroup& g) {
  std::uint64_t count = 0;
  for (int a = 0; a < g.order(); ++a) {
    for (int b = 0; b < g.order(); ++b) count += g.mul(a, b) == g.mul(b, a);
  }
  return count;
}

Complex gauss_sum(int n) {
  Complex s = 0.0;
  for (int k = 0; k < n; ++k) s += std::polar(1.0, 2.0 * kPi * k * k / n);
  return s;
}

}  // namespace oracle
