#include "kirbycalc/move_suite.hpp"

#include <algorithm>

namespace kirbycalc {

namespace {

std::string fresh_id(const KirbyDiagram& d, const std::string& stem) {
  for (int n = 1;; ++n) {
    std::string id = stem + std::to_string(n);
    if (!d.has_id(id)) return id;
  }
}

}  // namespace

KirbyDiagram random_diagram(std::mt19937_64& rng, const MoveSuiteOptions& options) {
  auto uniform = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  const int h1 = uniform(0, options.max_one_handles);
  const int h2 = uniform(0, options.max_two_handles);
  std::vector<std::string> one;
  for (int i = 0; i < h1; ++i) one.push_back("x" + std::to_string(i + 1));
  std::vector<TwoHandle> two;
  IntMatrix m(h2, std::vector<std::int64_t>(h2, 0));
  for (int k = 0; k < h2; ++k) {
    TwoHandle h;
    h.id = "k" + std::to_string(k + 1);
    h.framing = uniform(-options.max_entry, options.max_entry);
    if (h1 > 0) {
      const int length = uniform(0, options.max_word);
      for (int l = 0; l < length; ++l) {
        h.word.push_back({one[uniform(0, h1 - 1)], uniform(0, 1) ? 1 : -1});
      }
    }
    m[k][k] = h.framing;
    for (int j = 0; j < k; ++j) m[k][j] = m[j][k] = uniform(-options.max_entry, options.max_entry);
    two.push_back(std::move(h));
  }
  return KirbyDiagram::from_matrix("random", std::move(one), std::move(two), std::move(m));
}

KirbyDiagram add_cancelling_12_pair(const KirbyDiagram& d, int framing, int sign) {
  std::string p = fresh_id(d, "p");
  std::string w = fresh_id(d, "w");
  KirbyDiagram pair("pair", {p}, {TwoHandle{w, framing, {{p, sign}}}}, {});
  return connected_sum(d, pair).renamed(d.name());
}

KirbyDiagram add_cancelling_23_handle(const KirbyDiagram& d) {
  KirbyDiagram unknot("unknot", {}, {TwoHandle{fresh_id(d, "u"), 0, {}}}, {});
  return connected_sum(d, unknot).renamed(d.name());
}

MoveSuiteReport run_move_suite(const std::function<Complex(const KirbyDiagram&)>& value,
                               Complex cp2, Complex cp2bar, const MoveSuiteOptions& options) {
  std::mt19937_64 rng(options.seed);
  MoveSuiteReport report;
  auto record = [&](const std::string& move, Complex got, Complex expected) {
    double dev = std::abs(got - expected) / std::max(1.0, std::abs(expected));
    auto& slot = report.max_deviation[move];
    slot = std::max(slot, dev);
    report.overall = std::max(report.overall, dev);
    ++report.checks;
  };
  for (const char* move : {"slide_22", "cancel_12", "cancel_23", "blow_up+", "blow_up-"}) {
    report.max_deviation[move] = 0.0;
  }
  for (int t = 0; t < options.trials; ++t) {
    KirbyDiagram x = random_diagram(rng, options);
    const Complex vx = value(x);
    if (x.h2() >= 2) {
      int a = std::uniform_int_distribution<int>(0, x.h2() - 1)(rng);
      int b = std::uniform_int_distribution<int>(0, x.h2() - 2)(rng);
      if (b >= a) ++b;
      int sign = std::uniform_int_distribution<int>(0, 1)(rng) ? 1 : -1;
      record("slide_22", value(slide_22(x, x.two_handles()[a].id, x.two_handles()[b].id, sign)), vx);
    }
    {
      int framing = std::uniform_int_distribution<int>(-options.max_entry, options.max_entry)(rng);
      int sign = std::uniform_int_distribution<int>(0, 1)(rng) ? 1 : -1;
      KirbyDiagram y = add_cancelling_12_pair(x, framing, sign);
      const auto& p = y.one_handles().back();
      const auto& w = y.two_handles().back().id;
      record("cancel_12", value(y), value(cancel_12(y, p, w)));
    }
    {
      KirbyDiagram y = add_cancelling_23_handle(x);
      record("cancel_23", value(y), value(cancel_23(y, y.two_handles().back().id)));
    }
    record("blow_up+", value(blow_up(x, 1)), vx * cp2);
    record("blow_up-", value(blow_up(x, -1)), vx * cp2bar);
    ++report.trials;
  }
  return report;
}

}  // namespace kirbycalc
