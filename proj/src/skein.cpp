#include "kirbycalc/skein.hpp"

#include <algorithm>
#include <numeric>
#include <tuple>
#include <unordered_map>

#include "kirbycalc/error.hpp"

namespace kirbycalc {

namespace {

TLMatching compose_matching(const TLMatching& x, const TLMatching& y, int n, int& loops) {
  TLMatching out(2 * n, -1);
  std::vector<bool> middle_seen(n, false);
  // Follows a path that has just arrived at middle point i from below (from x's top).
  auto up_from_middle = [&](int i) -> int {
    while (true) {
      middle_seen[i] = true;
      int q = y[i];
      if (q >= n) return q;
      middle_seen[q] = true;
      int p = x[n + q];
      if (p < n) return p;
      i = p - n;
    }
  };
  auto down_from_middle = [&](int i) -> int {
    while (true) {
      middle_seen[i] = true;
      int p = x[n + i];
      if (p < n) return p;
      middle_seen[p - n] = true;
      int q = y[p - n];
      if (q >= n) return q;
      i = q;
    }
  };
  for (int b = 0; b < n; ++b) {
    if (out[b] >= 0) continue;
    int p = x[b];
    int end = p < n ? p : up_from_middle(p - n);
    out[b] = end;
    out[end] = b;
  }
  for (int t = n; t < 2 * n; ++t) {
    if (out[t] >= 0) continue;
    int q = y[t];
    int end = q >= n ? q : down_from_middle(q);
    out[t] = end;
    out[end] = t;
  }
  loops = 0;
  for (int i = 0; i < n; ++i) {
    if (middle_seen[i]) continue;
    ++loops;
    int cur = i;
    do {
      middle_seen[cur] = true;
      int p = x[n + cur] - n;  // inside a closed loop x sends top points to top points
      middle_seen[p] = true;
      cur = y[p];
    } while (cur != i);
  }
  return out;
}

// One piece of a planar network: its endpoints carry edge ids, and its value is a
// combination of perfect matchings of those endpoints.
struct Piece {
  std::vector<int> edges;
  const std::vector<std::pair<TLMatching, Complex>>* terms = nullptr;
};

struct VectorHash {
  std::size_t operator()(const std::vector<int>& v) const {
    std::size_t h = v.size();
    for (int x : v) h = h * 1000003u ^ static_cast<std::size_t>(x + 0x9e3779b9);
    return h;
  }
};

// Frontier state: open path ends paired up, stored as (a, b) pairs with a < b, sorted.
using State = std::vector<int>;

Complex contract(const std::vector<Piece>& pieces, Complex delta) {
  if (pieces.empty()) return 1.0;
  const std::size_t np = pieces.size();

  // Greedy order: next piece shares the most edges with the processed part.
  std::vector<int> order;
  std::vector<bool> used(np, false);
  std::unordered_map<int, int> seen_count;
  for (std::size_t step = 0; step < np; ++step) {
    int best = -1;
    int best_score = -1;
    for (std::size_t p = 0; p < np; ++p) {
      if (used[p]) continue;
      int score = 0;
      for (int e : pieces[p].edges) {
        auto it = seen_count.find(e);
        if (it != seen_count.end() && it->second == 1) ++score;
      }
      if (score > best_score) {
        best = static_cast<int>(p);
        best_score = score;
      }
    }
    used[best] = true;
    order.push_back(best);
    for (int e : pieces[best].edges) ++seen_count[e];
  }

  std::unordered_map<State, Complex, VectorHash> current{{State{}, 1.0}};
  std::vector<Complex> delta_pow(64, 1.0);
  for (std::size_t i = 1; i < delta_pow.size(); ++i) delta_pow[i] = delta_pow[i - 1] * delta;

  for (int pi : order) {
    const Piece& piece = pieces[pi];
    const int k = static_cast<int>(piece.edges.size());
    std::unordered_map<State, Complex, VectorHash> next;
    // other[i] >= 0: endpoint index; other[i] < 0: open terminal edge -(edge+1).
    std::vector<int> other(k);
    for (const auto& [state, value] : current) {
      std::unordered_map<int, int> partner;
      for (std::size_t s = 0; s < state.size(); s += 2) {
        partner[state[s]] = state[s + 1];
        partner[state[s + 1]] = state[s];
      }
      std::unordered_map<int, int> touched;  // edge -> endpoint
      for (int i = 0; i < k; ++i) touched[piece.edges[i]] = i;
      for (int i = 0; i < k; ++i) {
        const int e = piece.edges[i];
        auto pt = partner.find(e);
        if (pt != partner.end()) {
          auto tt = touched.find(pt->second);
          other[i] = tt != touched.end() ? tt->second : -(pt->second + 1);
        } else {
          int twin = -1;
          for (int j = 0; j < k; ++j) {
            if (j != i && piece.edges[j] == e) twin = j;
          }
          other[i] = twin >= 0 ? twin : -(e + 1);
        }
      }
      State kept;
      for (std::size_t s = 0; s < state.size(); s += 2) {
        if (!touched.count(state[s]) && !touched.count(state[s + 1])) {
          kept.push_back(state[s]);
          kept.push_back(state[s + 1]);
        }
      }
      for (const auto& [matching, coeff] : *piece.terms) {
        std::vector<bool> visited(k, false);
        State fresh;
        for (int i = 0; i < k; ++i) {
          if (visited[i] || other[i] >= 0) continue;
          int cur = i;
          int end = 0;
          while (true) {
            visited[cur] = true;
            int j = matching[cur];
            visited[j] = true;
            if (other[j] < 0) {
              end = -other[j] - 1;
              break;
            }
            cur = other[j];
          }
          int start = -other[i] - 1;
          fresh.push_back(std::min(start, end));
          fresh.push_back(std::max(start, end));
        }
        int loops = 0;
        for (int i = 0; i < k; ++i) {
          if (visited[i]) continue;
          ++loops;
          int cur = i;
          do {
            visited[cur] = true;
            int j = matching[cur];
            visited[j] = true;
            cur = other[j];
          } while (cur != i);
        }
        State key = kept;
        key.insert(key.end(), fresh.begin(), fresh.end());
        std::vector<std::pair<int, int>> pairs;
        for (std::size_t s = 0; s < key.size(); s += 2) pairs.emplace_back(key[s], key[s + 1]);
        std::sort(pairs.begin(), pairs.end());
        for (std::size_t s = 0; s < pairs.size(); ++s) {
          key[2 * s] = pairs[s].first;
          key[2 * s + 1] = pairs[s].second;
        }
        Complex factor = coeff * (loops < 64 ? delta_pow[loops] : std::pow(delta, loops));
        next[key] += value * factor;
      }
    }
    current = std::move(next);
  }
  auto it = current.find(State{});
  if (current.size() != 1 || it == current.end()) {
    fail(ErrorKind::kSchema, "skein network has dangling edges");
  }
  return it->second;
}

class UnionFind {
 public:
  int make() {
    parent_.push_back(static_cast<int>(parent_.size()));
    return parent_.back();
  }
  int find(int x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(int a, int b) { parent_[find(a)] = find(b); }

 private:
  std::vector<int> parent_;
};

}  // namespace

Complex loop_value(Complex a) { return -a * a - 1.0 / (a * a); }

TLElement tl_identity(int n) {
  TLMatching m(2 * n);
  for (int i = 0; i < n; ++i) {
    m[i] = n + i;
    m[n + i] = i;
  }
  return {{m, 1.0}};
}

TLElement tl_generator(int n, int i) {
  if (i < 1 || i >= n) fail(ErrorKind::kInvalidArgument, "TL generator index out of range");
  TLMatching m = tl_identity(n).begin()->first;
  m[i - 1] = i;
  m[i] = i - 1;
  m[n + i - 1] = n + i;
  m[n + i] = n + i - 1;
  return {{m, 1.0}};
}

TLElement tl_compose(const TLElement& lower, const TLElement& upper, int n, Complex delta) {
  TLElement out;
  for (const auto& [x, cx] : lower) {
    for (const auto& [y, cy] : upper) {
      int loops = 0;
      TLMatching m = compose_matching(x, y, n, loops);
      out[m] += cx * cy * std::pow(delta, loops);
    }
  }
  return out;
}

TLElement tl_tensor_identity(const TLElement& x, int n) {
  TLElement out;
  for (const auto& [m, c] : x) {
    TLMatching e(2 * (n + 1));
    for (int p = 0; p < 2 * n; ++p) {
      int q = m[p];
      int pp = p < n ? p : p + 1;
      int qq = q < n ? q : q + 1;
      e[pp] = qq;
    }
    e[n] = 2 * n + 1;
    e[2 * n + 1] = n;
    out[e] += c;
  }
  return out;
}

TLElement tl_add(const TLElement& x, const TLElement& y, Complex scale_y) {
  TLElement out = x;
  for (const auto& [m, c] : y) out[m] += scale_y * c;
  return out;
}

Complex tl_trace(const TLElement& x, int n, Complex delta) {
  Complex total = 0.0;
  for (const auto& [m, c] : x) {
    std::vector<bool> seen(2 * n, false);
    int loops = 0;
    for (int start = 0; start < 2 * n; ++start) {
      if (seen[start]) continue;
      ++loops;
      int cur = start;
      do {
        seen[cur] = true;
        int j = m[cur];
        seen[j] = true;
        cur = j < n ? j + n : j - n;  // closure strand
      } while (cur != start);
    }
    total += c * std::pow(delta, loops);
  }
  return total;
}

bool tl_approx_equal(const TLElement& x, const TLElement& y, double tol) {
  for (const auto& [m, c] : x) {
    auto it = y.find(m);
    if (std::abs(c - (it == y.end() ? Complex(0.0) : it->second)) > tol) return false;
  }
  for (const auto& [m, c] : y) {
    if (!x.count(m) && std::abs(c) > tol) return false;
  }
  return true;
}

TLElement jones_wenzl(int n, Complex a) {
  if (n < 0) fail(ErrorKind::kInvalidArgument, "negative Jones-Wenzl size");
  const Complex delta = loop_value(a);
  if (n == 0) return {{TLMatching{}, 1.0}};
  std::vector<Complex> quantum{1.0, delta};  // Delta_k, the trace of JW_k
  TLElement p = tl_identity(1);
  for (int k = 1; k < n; ++k) {
    if (std::abs(quantum[k]) < 1e-12) {
      fail(ErrorKind::kInvalidArgument, "Jones-Wenzl projector of size " + std::to_string(n) +
                                            " is undefined at this root of unity");
    }
    TLElement lifted = tl_tensor_identity(p, k);
    TLElement middle = tl_compose(tl_compose(lifted, tl_generator(k + 1, k), k + 1, delta), lifted,
                                  k + 1, delta);
    p = tl_add(lifted, middle, -quantum[k - 1] / quantum[k]);
    for (auto it = p.begin(); it != p.end();) {
      it = std::abs(it->second) < 1e-15 ? p.erase(it) : std::next(it);
    }
    quantum.push_back(delta * quantum[k] - quantum[k - 1]);
  }
  return p;
}

int SkeinDiagram::width(const std::string& component) const {
  auto it = cables.find(component);
  return it == cables.end() ? 1 : it->second;
}

int SkeinDiagram::cabled_crossings() const {
  int total = 0;
  for (const auto& c : pd.crossings) total += width(pd.under_component(c)) * width(pd.over_component(c));
  return total;
}

Complex kauffman_bracket(const SkeinDiagram& diagram, Complex a, int cap) {
  const PlanarCode& pd = diagram.pd;
  const int cabled = diagram.cabled_crossings();
  if (cap >= 0 && cabled > cap) {
    fail(ErrorKind::kResourceLimit, "diagram has " + std::to_string(cabled) +
                                        " crossings after cabling, above the cap of " +
                                        std::to_string(cap));
  }
  const Complex delta = loop_value(a);
  for (const auto& [component, m] : diagram.cables) {
    if (m < 0) fail(ErrorKind::kInvalidArgument, "negative cable width for " + component);
  }

  UnionFind uf;
  std::map<std::tuple<int, int, bool>, int> terminal;  // (arc, strand, head?) -> node
  auto node = [&](int arc, int s, bool head) {
    auto key = std::make_tuple(arc, s, head);
    auto it = terminal.find(key);
    if (it != terminal.end()) return it->second;
    int id = uf.make();
    terminal.emplace(key, id);
    return id;
  };

  // One JW box per cabled component, on its lowest-numbered arc.
  std::map<std::string, int> jw_arc;
  for (const auto& [arc, component] : pd.arcs) {
    if (!jw_arc.count(component)) jw_arc[component] = arc;
  }
  std::map<int, std::vector<std::pair<TLMatching, Complex>>> jw_terms;
  auto jw = [&](int m) -> const std::vector<std::pair<TLMatching, Complex>>* {
    auto it = jw_terms.find(m);
    if (it == jw_terms.end()) {
      TLElement e = jones_wenzl(m, a);
      it = jw_terms.emplace(m, std::vector<std::pair<TLMatching, Complex>>(e.begin(), e.end())).first;
    }
    return &it->second;
  };

  // Pieces reference union-find nodes until the final relabelling.
  std::vector<Piece> pieces;
  for (const auto& [arc, component] : pd.arcs) {
    const int m = diagram.width(component);
    if (m == 0) continue;
    if (jw_arc[component] == arc) {
      Piece p;
      for (int s = 0; s < m; ++s) p.edges.push_back(node(arc, s, false));
      for (int s = 0; s < m; ++s) p.edges.push_back(node(arc, s, true));
      p.terms = jw(m);
      pieces.push_back(std::move(p));
    } else {
      for (int s = 0; s < m; ++s) uf.unite(node(arc, s, false), node(arc, s, true));
    }
  }
  for (const auto& component : pd.crossingless) {
    const int m = diagram.width(component);
    if (m == 0) continue;
    Piece p;
    for (int s = 0; s < m; ++s) p.edges.push_back(uf.make());
    for (int s = 0; s < m; ++s) p.edges.push_back(p.edges[s]);
    p.terms = jw(m);
    pieces.push_back(std::move(p));
  }
  // Endpoints [bottom, right, top, left], counterclockwise from the under-strand.
  const std::vector<std::pair<TLMatching, Complex>> crossing_terms{{{1, 0, 3, 2}, a},
                                                                   {{3, 2, 1, 0}, 1.0 / a}};
  const auto* crossing = &crossing_terms;
  for (const auto& c : pd.crossings) {
    const int mu = diagram.width(pd.under_component(c));
    const int mo = diagram.width(pd.over_component(c));
    const int oi = c.over_in();
    const int oo = c.over_out();
    if (mu == 0 && mo == 0) continue;
    if (mo == 0) {
      for (int s = 0; s < mu; ++s) uf.unite(node(c.arcs[0], s, true), node(c.arcs[2], s, false));
      continue;
    }
    if (mu == 0) {
      for (int t = 0; t < mo; ++t) uf.unite(node(oi, t, true), node(oo, t, false));
      continue;
    }
    // Grid: under strands are columns x (bottom to top), over strands rows y.
    std::vector<std::vector<int>> vertical(mu, std::vector<int>(mo));
    std::vector<std::vector<int>> horizontal(mu, std::vector<int>(mo));
    for (int x = 0; x < mu; ++x) {
      for (int y = 0; y < mo; ++y) {
        vertical[x][y] = uf.make();
        horizontal[x][y] = uf.make();
      }
    }
    auto strand_of_row = [&](int y) { return c.sign > 0 ? mo - 1 - y : y; };
    for (int x = 0; x < mu; ++x) {
      for (int y = 0; y < mo; ++y) {
        const int t = strand_of_row(y);
        int bottom = y == 0 ? node(c.arcs[0], x, true) : vertical[x][y - 1];
        int top = y == mo - 1 ? node(c.arcs[2], x, false) : vertical[x][y];
        int left;
        int right;
        if (c.sign > 0) {
          left = x == 0 ? node(c.arcs[3], t, true) : horizontal[x - 1][y];
          right = x == mu - 1 ? node(c.arcs[1], t, false) : horizontal[x][y];
        } else {
          left = x == 0 ? node(c.arcs[3], t, false) : horizontal[x - 1][y];
          right = x == mu - 1 ? node(c.arcs[1], t, true) : horizontal[x][y];
        }
        pieces.push_back(Piece{{bottom, right, top, left}, crossing});
      }
    }
  }

  std::map<int, int> relabel;
  std::map<int, int> uses;
  for (auto& p : pieces) {
    for (int& e : p.edges) {
      int root = uf.find(e);
      auto [it, inserted] = relabel.emplace(root, static_cast<int>(relabel.size()));
      e = it->second;
      ++uses[e];
    }
  }
  for (const auto& [e, count] : uses) {
    if (count != 2) fail(ErrorKind::kSchema, "cabled network is not closed");
  }
  return contract(pieces, delta);
}

}  // namespace kirbycalc
