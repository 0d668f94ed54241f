#include "kirbycalc/backend_pointed.hpp"

#include <map>
#include <numeric>
#include <sstream>

#include "json.hpp"

#include "kirbycalc/error.hpp"

namespace kirbycalc {

namespace {

std::int64_t lcm_denominator(const std::vector<Rational>& q) {
  std::int64_t n = 1;
  for (const auto& r : q) n = std::lcm(n, r.denominator());
  return n;
}

// Phases scaled by a common denominator so that evaluation is integer arithmetic.
struct IntegerForm {
  std::int64_t denominator = 1;
  std::vector<std::int64_t> q;
  std::vector<std::vector<std::int64_t>> b;
  std::vector<Complex> roots;

  IntegerForm(const PointedCategory& cat, const std::vector<Rational>& qs) {
    denominator = lcm_denominator(qs);
    const std::size_t n = qs.size();
    q.resize(n);
    for (std::size_t a = 0; a < n; ++a) {
      q[a] = (mod_one(qs[a]) * denominator).numerator();
    }
    b.assign(n, std::vector<std::int64_t>(n));
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t c = 0; c < n; ++c) {
        std::int64_t v = q[cat.add(a, c)] - q[a] - q[c];
        b[a][c] = ((v % denominator) + denominator) % denominator;
      }
    }
    roots.resize(denominator);
    for (std::int64_t k = 0; k < denominator; ++k) roots[k] = exp_2pi_i(Rational(k, denominator));
  }
};

class PreparedPointed : public PreparedLink {
 public:
  PreparedPointed(std::shared_ptr<const IntegerForm> form, IntMatrix matrix)
      : form_(std::move(form)), matrix_(std::move(matrix)) {}

  Complex evaluate(std::span<const LabelIndex> labels) const override {
    const auto& f = *form_;
    const std::size_t n = matrix_.size();
    std::int64_t phase = 0;
    for (std::size_t i = 0; i < n; ++i) {
      phase += f.q[labels[i]] * (matrix_[i][i] % f.denominator);
      const auto& brow = f.b[labels[i]];
      for (std::size_t j = i + 1; j < n; ++j) {
        if (matrix_[i][j] != 0) phase += brow[labels[j]] * (matrix_[i][j] % f.denominator);
      }
      phase %= f.denominator;
    }
    phase = (phase % f.denominator + f.denominator) % f.denominator;
    return f.roots[phase];
  }

 private:
  std::shared_ptr<const IntegerForm> form_;
  IntMatrix matrix_;
};

class PointedEvaluator : public LinkEvaluator {
 public:
  PointedEvaluator(PointedCategory cat, std::shared_ptr<const IntegerForm> form)
      : cat_(std::move(cat)), form_(std::move(form)) {}

  Complex evaluate(const KirbyDiagram& diagram, std::span<const LabelIndex> labels,
                   const EvalOptions&) const override {
    return evaluate_link_pointed(cat_, diagram, labels);
  }

  std::unique_ptr<PreparedLink> prepare(const KirbyDiagram& diagram,
                                        const EvalOptions&) const override {
    return std::make_unique<PreparedPointed>(form_, diagram.full_linking_matrix());
  }

  std::string backend_name() const override { return "pointed"; }

 private:
  PointedCategory cat_;
  std::shared_ptr<const IntegerForm> form_;
};

void check_labels(const KirbyDiagram& diagram, std::span<const LabelIndex> labels, std::size_t size) {
  if (labels.size() != diagram.component_count()) {
    fail(ErrorKind::kInvalidArgument, "labelling does not cover every component");
  }
  for (auto l : labels) {
    if (l >= size) fail(ErrorKind::kInvalidArgument, "label out of range");
  }
}

}  // namespace

PointedCategory::PointedCategory(std::string name, std::vector<int> factors, std::vector<Rational> q)
    : name_(std::move(name)), factors_(std::move(factors)), q_(std::move(q)) {
  std::size_t n = 1;
  for (int f : factors_) {
    if (f < 1) fail(ErrorKind::kSchema, "cyclic factors must be positive");
    n *= static_cast<std::size_t>(f);
  }
  if (q_.size() != n) fail(ErrorKind::kSchema, "quadratic form table has the wrong size");
  for (auto& r : q_) r = mod_one(r);
  if (q_[0].numerator() != 0) fail(ErrorKind::kSchema, "q(0) must be 0");
  for (LabelIndex a = 0; a < n; ++a) {
    if (q_[negate(a)] != q_[a]) fail(ErrorKind::kSchema, "q(-a) != q(a) at " + label_name(a));
  }
  IntegerForm form(*this, q_);
  for (LabelIndex a = 0; a < n; ++a) {
    for (LabelIndex a2 = 0; a2 < n; ++a2) {
      const LabelIndex s = add(a, a2);
      for (LabelIndex c = 0; c < n; ++c) {
        if ((form.b[a][c] + form.b[a2][c]) % form.denominator != form.b[s][c]) {
          fail(ErrorKind::kSchema, "bilinear form of q is not biadditive");
        }
      }
    }
  }
}

PointedCategory PointedCategory::anyonic(int n) { return anyonic_product({n}); }

PointedCategory PointedCategory::anyonic_product(const std::vector<int>& factors) {
  std::size_t size = 1;
  for (int f : factors) {
    if (f < 1) fail(ErrorKind::kInvalidArgument, "cyclic factors must be positive");
    size *= static_cast<std::size_t>(f);
  }
  std::vector<Rational> q(size);
  std::string name = "Z";
  for (std::size_t i = 0; i < factors.size(); ++i) name += (i ? "xZ" : "") + std::to_string(factors[i]);
  PointedCategory shape(name, factors, std::vector<Rational>(size, Rational(0)));
  for (LabelIndex a = 0; a < size; ++a) {
    auto t = shape.decode(a);
    Rational sum = 0;
    for (std::size_t i = 0; i < factors.size(); ++i) sum += Rational(t[i] * t[i], factors[i]);
    q[a] = sum;
  }
  return PointedCategory(name + " anyonic", factors, std::move(q));
}

PointedCategory PointedCategory::hyperbolic(int n) {
  if (n < 1) fail(ErrorKind::kInvalidArgument, "cyclic factors must be positive");
  std::vector<Rational> q(static_cast<std::size_t>(n) * n);
  for (int a = 0; a < n; ++a) {
    for (int c = 0; c < n; ++c) q[a * n + c] = Rational(a * c, n);
  }
  return PointedCategory("Z" + std::to_string(n) + "xZ" + std::to_string(n) + " hyperbolic", {n, n},
                         std::move(q));
}

PointedCategory PointedCategory::from_json(const std::string& document, std::string name) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(document);
  } catch (const nlohmann::json::parse_error& e) {
    fail(ErrorKind::kSchema, std::string("pointed category file is not valid JSON: ") + e.what());
  }
  std::vector<int> factors;
  try {
    factors = j.at("factors").get<std::vector<int>>();
  } catch (const nlohmann::json::exception&) {
    fail(ErrorKind::kSchema, "pointed category file needs integer list 'factors'");
  }
  std::size_t size = 1;
  for (int f : factors) {
    if (f < 1) fail(ErrorKind::kSchema, "cyclic factors must be positive");
    size *= static_cast<std::size_t>(f);
  }
  PointedCategory shape(name, factors, std::vector<Rational>(size, Rational(0)));
  std::vector<Rational> q(size, Rational(0));
  if (j.contains("q")) {
    if (!j["q"].is_object()) fail(ErrorKind::kSchema, "'q' must be an object");
    for (const auto& [key, value] : j["q"].items()) {
      std::vector<int> tuple;
      std::stringstream ss(key);
      std::string part;
      while (std::getline(ss, part, ',')) {
        try {
          tuple.push_back(std::stoi(part));
        } catch (const std::exception&) {
          fail(ErrorKind::kSchema, "label '" + key + "' is not an integer tuple");
        }
      }
      if (tuple.size() != factors.size()) fail(ErrorKind::kSchema, "label '" + key + "' has wrong arity");
      for (std::size_t i = 0; i < tuple.size(); ++i) {
        if (tuple[i] < 0 || tuple[i] >= factors[i]) fail(ErrorKind::kSchema, "label '" + key + "' out of range");
      }
      Rational r;
      if (value.is_string()) {
        r = parse_rational(value.get<std::string>());
      } else if (value.is_number_integer()) {
        r = Rational(value.get<std::int64_t>());
      } else {
        fail(ErrorKind::kSchema, "q value for '" + key + "' must be a \"p/q\" string");
      }
      q[shape.encode(tuple)] = r;
    }
  }
  return PointedCategory(std::move(name), std::move(factors), std::move(q));
}

std::string PointedCategory::to_json() const {
  nlohmann::json j;
  j["factors"] = factors_;
  j["q"] = nlohmann::json::object();
  for (LabelIndex a = 0; a < size(); ++a) {
    if (q_[a].numerator() != 0) j["q"][label_name(a)] = to_string(q_[a]);
  }
  return j.dump(2) + "\n";
}

std::vector<int> PointedCategory::decode(LabelIndex a) const {
  std::vector<int> t(factors_.size());
  for (std::size_t i = factors_.size(); i-- > 0;) {
    t[i] = static_cast<int>(a % factors_[i]);
    a /= factors_[i];
  }
  return t;
}

LabelIndex PointedCategory::encode(const std::vector<int>& tuple) const {
  LabelIndex a = 0;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    int v = ((tuple[i] % factors_[i]) + factors_[i]) % factors_[i];
    a = a * factors_[i] + v;
  }
  return a;
}

std::string PointedCategory::label_name(LabelIndex a) const {
  auto t = decode(a);
  std::string s;
  for (std::size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + std::to_string(t[i]);
  return s;
}

LabelIndex PointedCategory::add(LabelIndex a, LabelIndex b) const {
  auto ta = decode(a);
  auto tb = decode(b);
  for (std::size_t i = 0; i < ta.size(); ++i) ta[i] += tb[i];
  return encode(ta);
}

LabelIndex PointedCategory::negate(LabelIndex a) const {
  auto t = decode(a);
  for (int& x : t) x = -x;
  return encode(t);
}

LabelIndex PointedCategory::scale(LabelIndex a, std::int64_t k) const {
  auto t = decode(a);
  for (std::size_t i = 0; i < t.size(); ++i) {
    t[i] = static_cast<int>(((t[i] * (k % factors_[i])) % factors_[i] + factors_[i]) % factors_[i]);
  }
  return encode(t);
}

Rational PointedCategory::b(LabelIndex a, LabelIndex c) const {
  return mod_one(q_[add(a, c)] - q_[a] - q_[c]);
}

bool PointedCategory::transparent(LabelIndex a) const {
  for (LabelIndex c = 0; c < size(); ++c) {
    if (b(a, c).numerator() != 0) return false;
  }
  return true;
}

bool PointedCategory::is_modular() const {
  for (LabelIndex a = 1; a < size(); ++a) {
    if (transparent(a)) return false;
  }
  return true;
}

CategoryPtr PointedCategory::category() const {
  auto cat = std::make_shared<CategoryData>();
  cat->name = name_;
  cat->unit = 0;
  for (LabelIndex a = 0; a < size(); ++a) {
    cat->labels.push_back(label_name(a));
    cat->dims.push_back(1.0);
    cat->twists.push_back(exp_2pi_i(q_[a]));
    cat->duals.push_back(negate(a));
    cat->transparent.push_back(transparent(a));
  }
  auto self = std::make_shared<PointedCategory>(*this);
  cat->fuse = [self](LabelIndex a, LabelIndex b) { return self->add(a, b); };
  cat->evaluator = std::make_shared<PointedEvaluator>(*this, std::make_shared<IntegerForm>(*this, q_));
  return cat;
}

Rational link_phase_pointed(const PointedCategory& cat, const KirbyDiagram& diagram,
                            std::span<const LabelIndex> labels) {
  check_labels(diagram, labels, cat.size());
  IntMatrix m = diagram.full_linking_matrix();
  Rational phase = 0;
  for (std::size_t i = 0; i < m.size(); ++i) {
    phase += cat.q(labels[i]) * m[i][i];
    for (std::size_t j = i + 1; j < m.size(); ++j) phase += cat.b(labels[i], labels[j]) * m[i][j];
  }
  return mod_one(phase);
}

Complex evaluate_link_pointed(const PointedCategory& cat, const KirbyDiagram& diagram,
                              std::span<const LabelIndex> labels) {
  return exp_2pi_i(link_phase_pointed(cat, diagram, labels));
}

bool transparency_pointed(const PointedCategory& cat, LabelIndex a) { return cat.transparent(a); }

KillingSum killing_sum(const PointedCategory& cat, LabelIndex a) {
  KillingSum out;
  std::map<Rational, std::int64_t> histogram;
  for (LabelIndex k = 0; k < cat.size(); ++k) {
    Rational phase = cat.b(k, a);
    ++histogram[phase];
    out.numeric += exp_2pi_i(phase);
  }
  // k -> b(k, a) is a character, so its values form the cyclic subgroup (1/m)Z/Z, each hit equally.
  const std::int64_t m = static_cast<std::int64_t>(histogram.size());
  const std::int64_t per = static_cast<std::int64_t>(cat.size()) / m;
  out.histogram_uniform = static_cast<std::int64_t>(cat.size()) % m == 0;
  for (std::int64_t i = 0; i < m && out.histogram_uniform; ++i) {
    auto it = histogram.find(Rational(i, m));
    out.histogram_uniform = it != histogram.end() && it->second == per;
  }
  if (!out.histogram_uniform) fail(ErrorKind::kSchema, "phase histogram is not a uniform cyclic subgroup");
  out.exact = m == 1 ? static_cast<std::int64_t>(cat.size()) : 0;
  return out;
}

PivotalFunctorData pointed_functor(const PointedCategory& source, const PointedCategory& target,
                                   const std::vector<LabelIndex>& map, std::string name) {
  if (map.size() != source.size()) fail(ErrorKind::kInvalidArgument, "label map has the wrong size");
  PivotalFunctorData f;
  f.name = std::move(name);
  f.source = source.category();
  f.target = target.category();
  for (LabelIndex a = 0; a < source.size(); ++a) {
    if (map[a] >= target.size()) fail(ErrorKind::kInvalidArgument, "label map leaves the target");
    f.image.push_back(Colour::simple(map[a]));
  }
  auto problems = f.check();
  if (!problems.empty()) fail(ErrorKind::kInvalidArgument, "not a pivotal functor: " + problems.front());
  return f;
}

PivotalFunctorData diagonal_into_hyperbolic(int n) {
  PointedCategory source = PointedCategory::anyonic(n);
  PointedCategory target = PointedCategory::hyperbolic(n);
  std::vector<LabelIndex> map;
  for (int k = 0; k < n; ++k) map.push_back(target.encode({k, k}));
  return pointed_functor(source, target, map, "diagonal");
}

Complex kirby_direct_pointed(const PointedCategory& cat, const PivotalFunctorData& functor,
                             const KirbyDiagram& diagram) {
  if (!cat.is_modular()) fail(ErrorKind::kNotModular, "kirby direct path needs a modular target");
  if (!functor.target || functor.target->size() != cat.size()) {
    fail(ErrorKind::kInvalidArgument, "functor target is not the given category");
  }
  const Colour omega = apply_functor(functor, kirby_colour(*functor.source));
  std::vector<std::pair<LabelIndex, Complex>> support(omega.terms().begin(), omega.terms().end());
  const std::size_t h1 = diagram.h1();
  const std::size_t h2 = diagram.h2();
  const IntMatrix& m = diagram.linking_matrix();
  std::vector<std::size_t> idx(h2, 0);
  Complex total = 0.0;
  if (h2 > 0 && support.empty()) return total;
  while (true) {
    bool allowed = true;
    for (std::size_t x = 0; x < h1 && allowed; ++x) {
      LabelIndex sum = 0;
      for (std::size_t k = 0; k < h2; ++k) {
        sum = cat.add(sum, cat.scale(support[idx[k]].first, diagram.letter_sum(k, x)));
      }
      allowed = sum == 0;
    }
    if (allowed) {
      Complex coeff = 1.0;
      Rational phase = 0;
      for (std::size_t k = 0; k < h2; ++k) {
        LabelIndex a = support[idx[k]].first;
        coeff *= support[idx[k]].second;
        phase += cat.q(a) * m[k][k];
        for (std::size_t l = k + 1; l < h2; ++l) phase += cat.b(a, support[idx[l]].first) * m[k][l];
      }
      total += coeff * exp_2pi_i(phase);
    }
    std::size_t k = 0;
    while (k < h2 && ++idx[k] == support.size()) idx[k++] = 0;
    if (k == h2) break;
  }
  return total;
}

}  // namespace kirbycalc
