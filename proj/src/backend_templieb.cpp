#include "kirbycalc/backend_templieb.hpp"

#include <algorithm>
#include <mutex>
#include <unordered_map>

#include "json.hpp"

#include "kirbycalc/error.hpp"

namespace kirbycalc {

namespace {

Complex framing_correction(const KirbyDiagram& diagram, std::span<const LabelIndex> labels,
                           const std::vector<Complex>& twists) {
  Complex factor = 1.0;
  for (std::size_t k = 0; k < diagram.two_handles().size(); ++k) {
    const auto& h = diagram.two_handles()[k];
    int excess = h.framing - diagram.pd()->writhe(h.id);
    if (excess != 0) factor *= ipow(twists.at(labels[diagram.h1() + k]), excess);
  }
  return factor;
}

struct LabelHash {
  std::size_t operator()(const std::vector<LabelIndex>& v) const {
    std::size_t h = 0;
    for (auto x : v) h = h * 131 + x + 1;
    return h;
  }
};

// A component with no self-crossings and exactly two crossings, both with one other
// component, is either a meridian of that component or an unlinked circle lying over or under
// it. It is removed and replaced by the scalar S_jk / d_j or d_k.
struct Meridian {
  std::size_t self;
  std::size_t around;
  int linking;
};

Complex hopf_value(Complex a, LabelIndex j, LabelIndex k, int linking) {
  SkeinDiagram s{hopf_code("a", "b"), {{"a", static_cast<int>(j)}, {"b", static_cast<int>(k)}}};
  return kauffman_bracket(s, linking > 0 ? a : 1.0 / a, -1);
}

std::vector<Meridian> strip_meridians(const KirbyDiagram& diagram, PlanarCode& pd) {
  const auto ids = diagram.component_ids();
  auto index_of = [&](const std::string& id) {
    return static_cast<std::size_t>(std::find(ids.begin(), ids.end(), id) - ids.begin());
  };
  std::vector<Meridian> out;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& c : pd.components()) {
      std::vector<const PdCrossing*> touching;
      for (const auto& x : pd.crossings) {
        if (pd.under_component(x) == c || pd.over_component(x) == c) touching.push_back(&x);
      }
      if (touching.size() != 2) continue;
      const PdCrossing& p = *touching[0];
      const PdCrossing& q = *touching[1];
      auto other = [&](const PdCrossing& x) {
        return pd.under_component(x) == c ? pd.over_component(x) : pd.under_component(x);
      };
      const std::string d = other(p);
      if (d == c || other(q) != d) continue;
      const bool over_p = pd.over_component(p) == c;
      const bool over_q = pd.over_component(q) == c;
      out.push_back({index_of(c), index_of(d), over_p == over_q ? 0 : (p.sign > 0 ? 1 : -1)});
      pd = remove_components(pd, {c});
      changed = true;
      break;
    }
  }
  return out;
}

class PreparedTL : public PreparedLink {
 public:
  PreparedTL(KirbyDiagram diagram, Complex a, std::vector<Complex> dims, std::vector<Complex> twists,
             EvalOptions options)
      : diagram_(std::move(diagram)), a_(a), dims_(std::move(dims)), twists_(std::move(twists)),
        options_(options) {
    if (!diagram_.pd()) fail(ErrorKind::kMissingPd, "diagram '" + diagram_.name() + "' has no planar code");
    reduced_ = *diagram_.pd();
    meridians_ = strip_meridians(diagram_, reduced_);
  }

  Complex evaluate(std::span<const LabelIndex> labels) const override {
    if (labels.size() != diagram_.component_count()) {
      fail(ErrorKind::kInvalidArgument, "labelling does not cover every component");
    }
    for (auto l : labels) {
      if (l >= dims_.size()) fail(ErrorKind::kInvalidArgument, "spin label out of range");
    }
    std::vector<LabelIndex> key(labels.begin(), labels.end());
    {
      std::lock_guard<std::mutex> lock(mutex_);
      auto it = cache_.find(key);
      if (it != cache_.end()) return it->second;
    }
    SkeinDiagram s{reduced_, {}};
    const auto ids = diagram_.component_ids();
    for (std::size_t i = 0; i < ids.size(); ++i) s.cables[ids[i]] = static_cast<int>(labels[i]);
    Complex value = kauffman_bracket(s, a_, options_.skein_cap) * framing_correction(diagram_, labels, twists_);
    for (const auto& m : meridians_) {
      const LabelIndex k = labels[m.self];
      const LabelIndex j = labels[m.around];
      value *= m.linking == 0 ? dims_[k] : hopf_value(a_, j, k, m.linking) / dims_[j];
    }
    std::lock_guard<std::mutex> lock(mutex_);
    cache_.emplace(std::move(key), value);
    return value;
  }

 private:
  KirbyDiagram diagram_;
  Complex a_;
  std::vector<Complex> dims_;
  std::vector<Complex> twists_;
  EvalOptions options_;
  PlanarCode reduced_;
  std::vector<Meridian> meridians_;
  mutable std::mutex mutex_;
  mutable std::unordered_map<std::vector<LabelIndex>, Complex, LabelHash> cache_;
};

class TLEvaluator : public LinkEvaluator {
 public:
  TLEvaluator(Complex a, std::vector<Complex> dims, std::vector<Complex> twists)
      : a_(a), dims_(std::move(dims)), twists_(std::move(twists)) {}

  Complex evaluate(const KirbyDiagram& diagram, std::span<const LabelIndex> labels,
                   const EvalOptions& options) const override {
    return PreparedTL(diagram, a_, dims_, twists_, options).evaluate(labels);
  }

  std::unique_ptr<PreparedLink> prepare(const KirbyDiagram& diagram,
                                        const EvalOptions& options) const override {
    return std::make_unique<PreparedTL>(diagram, a_, dims_, twists_, options);
  }

  std::string backend_name() const override { return "templieb"; }

 private:
  Complex a_;
  std::vector<Complex> dims_;
  std::vector<Complex> twists_;
};

PlanarCode unknot_code(const std::string& id) {
  PlanarCode pd;
  pd.crossingless = {id};
  return pd;
}

}  // namespace

TLCategory::TLCategory(int r) : r_(r) {
  if (r < 3) fail(ErrorKind::kInvalidArgument, "TL category needs r >= 3");
  a_ = std::polar(1.0, kPi / (2.0 * r));
  for (LabelIndex i = 0; i < size(); ++i) {
    Complex d = kauffman_bracket(SkeinDiagram{unknot_code("u"), {{"u", static_cast<int>(i)}}}, a_, -1);
    if (std::abs(d) < 1e-12) {
      fail(ErrorKind::kZeroDimension, "spin " + label_name(i) + " has zero dimension");
    }
    Complex kinked = kauffman_bracket(SkeinDiagram{kink_code("u", 1), {{"u", static_cast<int>(i)}}}, a_, -1);
    dims_.push_back(d);
    twists_.push_back(kinked / d);
  }
  for (LabelIndex j = 0; j < size(); ++j) {
    bool t = true;
    for (LabelIndex k = 0; k < size() && t; ++k) t = approx_equal(hopf(j, k), dims_[j] * dims_[k]);
    transparent_.push_back(t);
  }
  auto cat = std::make_shared<CategoryData>();
  cat->name = "TL r=" + std::to_string(r);
  cat->unit = 0;
  for (LabelIndex i = 0; i < size(); ++i) {
    cat->labels.push_back(label_name(i));
    cat->duals.push_back(i);
  }
  cat->dims = dims_;
  cat->twists = twists_;
  cat->transparent = transparent_;
  cat->evaluator = std::make_shared<TLEvaluator>(a_, dims_, twists_);
  category_ = cat;
}

TLCategory TLCategory::from_json(const std::string& document) {
  try {
    auto j = nlohmann::json::parse(document);
    return TLCategory(j.at("r").get<int>());
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::kSchema, std::string("malformed TL category file: ") + e.what());
  }
}

std::string TLCategory::label_name(LabelIndex i) {
  return i % 2 == 0 ? std::to_string(i / 2) : std::to_string(i) + "/2";
}

Complex TLCategory::hopf(LabelIndex j, LabelIndex k) const {
  SkeinDiagram s{hopf_code("a", "b"), {{"a", static_cast<int>(j)}, {"b", static_cast<int>(k)}}};
  return kauffman_bracket(s, a_, -1);
}

CategoryPtr TLCategory::integer_spins() const {
  std::vector<LabelIndex> labels;
  for (LabelIndex i = 0; i < size(); i += 2) labels.push_back(i);
  return full_subcategory(*category_, labels, "TL r=" + std::to_string(r_) + " integer spins",
                          [this](LabelIndex a, const std::vector<LabelIndex>& within) {
                            for (LabelIndex b : within) {
                              if (!approx_equal(hopf(a, b), dims_[a] * dims_[b])) return false;
                            }
                            return true;
                          });
}

PivotalFunctorData TLCategory::integer_spin_inclusion() const {
  return inclusion_functor(integer_spins(), category_, "integer-spins");
}

std::vector<Complex> spin_dimensions(const TLCategory& cat) { return cat.dims(); }

std::vector<Complex> spin_twists(const TLCategory& cat) { return cat.twists(); }

bool transparency_tl(const TLCategory& cat, LabelIndex j) { return cat.transparent().at(j); }

Complex evaluate_link_tl(const TLCategory& cat, const KirbyDiagram& diagram,
                         std::span<const LabelIndex> labels, const EvalOptions& options) {
  return cat.category()->evaluator->evaluate(diagram, labels, options);
}

}  // namespace kirbycalc
