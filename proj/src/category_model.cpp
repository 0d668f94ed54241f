#include "kirbycalc/category_model.hpp"

#include <cmath>
#include <sstream>

#include "kirbycalc/error.hpp"
#include "kirbycalc/kirby_diagram.hpp"

namespace kirbycalc {

namespace {

class ForwardingLink : public PreparedLink {
 public:
  ForwardingLink(const LinkEvaluator& evaluator, KirbyDiagram diagram, EvalOptions options)
      : evaluator_(evaluator), diagram_(std::move(diagram)), options_(options) {}

  Complex evaluate(std::span<const LabelIndex> labels) const override {
    return evaluator_.evaluate(diagram_, labels, options_);
  }

 private:
  const LinkEvaluator& evaluator_;
  KirbyDiagram diagram_;
  EvalOptions options_;
};

}  // namespace

std::unique_ptr<PreparedLink> LinkEvaluator::prepare(const KirbyDiagram& diagram,
                                                     const EvalOptions& options) const {
  return std::make_unique<ForwardingLink>(*this, diagram, options);
}

LabelIndex CategoryData::label(std::string_view name_) const {
  for (LabelIndex i = 0; i < labels.size(); ++i)
    if (labels[i] == name_) return i;
  fail(ErrorKind::kSchema, "unknown label '" + std::string(name_) + "' in category " + name);
}

bool CategoryData::is_modular() const {
  for (LabelIndex i = 0; i < size(); ++i)
    if (i != unit && transparent[i]) return false;
  return true;
}

Colour Colour::simple(LabelIndex label, Complex coefficient) {
  Colour c;
  c.add(label, coefficient);
  return c;
}

Complex Colour::operator[](LabelIndex label) const {
  auto it = terms_.find(label);
  return it == terms_.end() ? Complex(0.0) : it->second;
}

void Colour::add(LabelIndex label, Complex coefficient) {
  auto& slot = terms_[label];
  slot += coefficient;
  if (slot == Complex(0.0)) terms_.erase(label);
}

Colour Colour::operator+(const Colour& other) const {
  Colour out = *this;
  for (const auto& [label, coeff] : other.terms_) out.add(label, coeff);
  return out;
}

Colour Colour::operator*(Complex scalar) const {
  Colour out;
  for (const auto& [label, coeff] : terms_) out.add(label, coeff * scalar);
  return out;
}

bool Colour::approx_equal(const Colour& other, double tol) const {
  for (const auto& [label, coeff] : terms_)
    if (std::abs(coeff - other[label]) > tol) return false;
  for (const auto& [label, coeff] : other.terms_)
    if (std::abs(coeff - (*this)[label]) > tol) return false;
  return true;
}

Colour multiply(const CategoryData& cat, const Colour& a, const Colour& b) {
  if (!cat.fuse) fail(ErrorKind::kInvalidArgument, "category " + cat.name + " has no fusion product");
  Colour out;
  for (const auto& [x, cx] : a.terms())
    for (const auto& [y, cy] : b.terms()) out.add(cat.fuse(x, y), cx * cy);
  return out;
}

Complex colour_dimension(const CategoryData& cat, const Colour& c) {
  Complex sum = 0.0;
  for (const auto& [label, coeff] : c.terms()) sum += coeff * cat.dims.at(label);
  return sum;
}

Complex colour_twist_trace(const CategoryData& cat, const Colour& c, bool inverse) {
  Complex sum = 0.0;
  for (const auto& [label, coeff] : c.terms()) {
    const Complex theta = inverse ? Complex(1.0) / cat.twists.at(label) : cat.twists.at(label);
    sum += coeff * cat.dims.at(label) * theta;
  }
  return sum;
}

std::string format_colour(const CategoryData& cat, const Colour& c) {
  std::ostringstream out;
  out << "{";
  bool first = true;
  for (const auto& [label, coeff] : c.terms()) {
    if (!first) out << ", ";
    first = false;
    out << cat.labels.at(label) << ": " << format_complex(coeff);
  }
  out << "}";
  return out.str();
}

Colour kirby_colour(const CategoryData& cat) {
  Colour omega;
  for (LabelIndex i = 0; i < cat.size(); ++i) omega.add(i, cat.dims[i]);
  return omega;
}

Complex global_dimension(const CategoryData& cat) {
  Complex sum = 0.0;
  for (const Complex& d : cat.dims) sum += d * d;
  if (sum.real() <= kTolerance || std::abs(sum.imag()) > kTolerance * std::max(1.0, std::abs(sum)))
    fail(ErrorKind::kNonPositiveGlobalDimension,
         "global dimension of " + cat.name + " is " + format_complex(sum));
  return sum;
}

Colour transparent_part(const CategoryData& cat, const Colour& c) {
  Colour out;
  for (const auto& [label, coeff] : c.terms())
    if (cat.transparent.at(label)) out.add(label, coeff);
  return out;
}

ValidationReport validate_target_category(const CategoryData& cat) {
  ValidationReport report;
  auto violate = [&](std::string what) {
    report.valid = false;
    report.violations.push_back(std::move(what));
  };
  const std::size_t n = cat.size();
  if (cat.dims.size() != n || cat.twists.size() != n || cat.duals.size() != n ||
      cat.transparent.size() != n) {
    violate("label tables have inconsistent sizes");
    return report;
  }
  if (cat.unit >= n) {
    violate("unit label out of range");
    return report;
  }
  if (!approx_equal(cat.dims[cat.unit], 1.0)) violate("dim(unit) != 1");
  if (!approx_equal(cat.twists[cat.unit], 1.0)) violate("twist(unit) != 1");
  if (!cat.transparent[cat.unit]) violate("unit is not transparent");
  for (LabelIndex x = 0; x < n; ++x) {
    const LabelIndex d = cat.duals[x];
    const std::string& lx = cat.labels[x];
    if (d >= n || cat.duals[d] != x) {
      violate("duality is not an involution at " + lx);
      continue;
    }
    if (!approx_equal(cat.dims[d], cat.dims[x])) violate("dim(dual(" + lx + ")) != dim(" + lx + ")");
    if (!approx_equal(cat.twists[d], cat.twists[x]))
      violate("twist(dual(" + lx + ")) != twist(" + lx + ")");
    if (std::abs(std::abs(cat.twists[x]) - 1.0) > kTolerance) violate("twist of " + lx + " is not unimodular");
    if (cat.transparent[x] && !approx_equal(cat.twists[x], 1.0))
      violate("transparent label " + lx + " has nontrivial twist " + format_complex(cat.twists[x]));
  }
  try {
    global_dimension(cat);
  } catch (const Error& e) {
    violate(e.what());
  }
  report.modular = cat.is_modular();
  return report;
}

std::vector<std::string> PivotalFunctorData::check() const {
  std::vector<std::string> problems;
  if (!source || !target) return {"functor " + name + " lacks source or target"};
  if (image.size() != source->size()) return {"functor " + name + " image size mismatch"};
  for (LabelIndex x = 0; x < source->size(); ++x) {
    for (const auto& [y, m] : image[x].terms()) {
      if (y >= target->size()) problems.push_back("image of " + source->labels[x] + " leaves target");
      if (std::abs(m.imag()) > 0 || m.real() < 0 || std::floor(m.real()) != m.real())
        problems.push_back("image of " + source->labels[x] + " has non-integer multiplicity");
    }
    const Complex lhs = colour_dimension(*target, image[x]);
    if (!approx_equal(lhs, source->dims[x]))
      problems.push_back("dimension not preserved at " + source->labels[x]);
  }
  const Colour& unit_image = image[source->unit];
  if (unit_image.terms().size() != 1 || unit_image[target->unit] != Complex(1.0))
    problems.push_back("unit is not sent to the unit");
  if (source->fuse && target->fuse) {
    for (LabelIndex a = 0; a < source->size(); ++a)
      for (LabelIndex b = 0; b < source->size(); ++b) {
        const Colour lhs = multiply(*target, image[a], image[b]);
        const Colour& rhs = image[source->fuse(a, b)];
        if (!lhs.approx_equal(rhs))
          problems.push_back("not an algebra map at (" + source->labels[a] + ", " +
                             source->labels[b] + ")");
      }
  }
  return problems;
}

bool PivotalFunctorData::is_injective_label_map() const {
  std::vector<bool> hit(target->size(), false);
  for (const Colour& c : image) {
    if (c.terms().size() != 1) return false;
    const auto& [y, m] = *c.terms().begin();
    if (m != Complex(1.0) || hit[y]) return false;
    hit[y] = true;
  }
  return true;
}

Colour apply_functor(const PivotalFunctorData& functor, const Colour& c) {
  Colour out;
  for (const auto& [x, coeff] : c.terms()) out = out + functor.image.at(x) * coeff;
  return out;
}

PivotalFunctorData identity_functor(CategoryPtr cat) {
  PivotalFunctorData f;
  f.name = "id";
  f.source = cat;
  f.target = cat;
  for (LabelIndex i = 0; i < cat->size(); ++i) f.image.push_back(Colour::simple(i));
  return f;
}

CategoryPtr full_subcategory(
    const CategoryData& ambient, const std::vector<LabelIndex>& labels, std::string name,
    const std::function<bool(LabelIndex, const std::vector<LabelIndex>&)>& transparent_within) {
  auto sub = std::make_shared<CategoryData>();
  sub->name = std::move(name);
  std::vector<LabelIndex> position(ambient.size(), ambient.size());
  for (LabelIndex i = 0; i < labels.size(); ++i) position[labels[i]] = i;
  if (position[ambient.unit] == ambient.size())
    fail(ErrorKind::kInvalidArgument, "subcategory must contain the unit");
  for (LabelIndex i = 0; i < labels.size(); ++i) {
    const LabelIndex a = labels[i];
    sub->labels.push_back(ambient.labels[a]);
    sub->dims.push_back(ambient.dims[a]);
    sub->twists.push_back(ambient.twists[a]);
    const LabelIndex d = position[ambient.duals[a]];
    if (d == ambient.size()) fail(ErrorKind::kInvalidArgument, "subcategory not closed under duals");
    sub->duals.push_back(d);
    sub->transparent.push_back(transparent_within(a, labels));
  }
  sub->unit = position[ambient.unit];
  return sub;
}

PivotalFunctorData inclusion_functor(CategoryPtr sub, CategoryPtr ambient, std::string name) {
  PivotalFunctorData f;
  f.name = std::move(name);
  f.source = sub;
  f.target = ambient;
  for (const std::string& label : sub->labels) f.image.push_back(Colour::simple(ambient->label(label)));
  return f;
}

}  // namespace kirbycalc
