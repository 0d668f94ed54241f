#include "kirbycalc/invariant_engine.hpp"

#include <exception>
#include <sstream>
#include <thread>

#include "json.hpp"

#include "kirbycalc/error.hpp"

namespace kirbycalc {

namespace {

void require_usable(const PivotalFunctorData& functor) {
  if (!functor.source || !functor.target) {
    fail(ErrorKind::kInvalidArgument, "functor " + functor.name + " lacks source or target");
  }
  auto problems = functor.check();
  if (!problems.empty()) {
    fail(ErrorKind::kInvalidArgument, "functor " + functor.name + ": " + problems.front());
  }
  if (!functor.target->evaluator) {
    fail(ErrorKind::kInvalidArgument, "target " + functor.target->name + " has no link evaluator");
  }
}

void require_valid_target(const CategoryData& target) {
  auto report = validate_target_category(target);
  if (!report.valid) {
    std::string msg = "target " + target.name + " rejected:";
    for (const auto& v : report.violations) msg += " " + v + ";";
    fail(ErrorKind::kInvalidTarget, msg);
  }
}

Complex positive_real(Complex z, const std::string& what) {
  if (z.real() <= 0 || std::abs(z.imag()) > kTolerance * std::max(1.0, std::abs(z))) {
    fail(ErrorKind::kNonPositiveGlobalDimension, what + " is not real-positive: " + format_complex(z));
  }
  return z;
}

Complex normalization(const CategoryConstants& k, int h1, int h2) {
  return ipow(k.omega_c, h2 - h1) * ipow(k.omega_d * k.omega_f_prime, h1);
}

nlohmann::json complex_json(Complex z) {
  auto clean = [](double x) { return std::abs(x) < 1e-12 ? 0.0 : x; };
  return nlohmann::json::array({clean(z.real()), clean(z.imag())});
}

}  // namespace

Complex ClosedForm::evaluate(const CategoryConstants& k) const {
  return ipow(k.omega_c, omega_c) * ipow(k.omega_c_prime, omega_c_prime) *
         ipow(k.lambda_c_prime, lambda_c_prime) * ipow(k.cp2, cp2) * ipow(k.cp2bar, cp2bar);
}

std::string ClosedForm::describe() const {
  std::vector<std::pair<const char*, int>> parts{{"dimOmega_C", omega_c},
                                                 {"dimOmega_C'", omega_c_prime},
                                                 {"|Lambda_C'|", lambda_c_prime},
                                                 {"I(CP2)", cp2},
                                                 {"I(CP2bar)", cp2bar}};
  std::string out;
  for (const auto& [name, e] : parts) {
    if (e == 0) continue;
    if (!out.empty()) out += " * ";
    out += name;
    if (e != 1) out += "^" + std::to_string(e);
  }
  return out.empty() ? "1" : out;
}

CategoryConstants category_constants(const PivotalFunctorData& functor) {
  require_usable(functor);
  const CategoryData& c = *functor.source;
  const CategoryData& d = *functor.target;
  CategoryConstants k;
  k.omega_c = positive_real(global_dimension(c), "qdim Omega_C");
  k.omega_c_prime = colour_dimension(c, transparent_part(c, kirby_colour(c)));
  std::size_t transparent = 0;
  for (bool t : c.transparent) transparent += t ? 1 : 0;
  k.lambda_c_prime = static_cast<double>(transparent);
  k.omega_d = positive_real(global_dimension(d), "qdim Omega_D");
  const Colour f_omega = apply_functor(functor, kirby_colour(c));
  k.omega_f_prime = positive_real(colour_dimension(d, transparent_part(d, f_omega)),
                                  "qdim (F Omega_C)'");
  k.cp2 = colour_twist_trace(d, f_omega) / k.omega_c;
  k.cp2bar = colour_twist_trace(d, f_omega, true) / k.omega_c;
  return k;
}

CategoryConstants group_constants(const FiniteGroup& g) {
  CategoryConstants k;
  k.omega_c = k.omega_c_prime = k.omega_d = k.omega_f_prime = static_cast<double>(g.order());
  k.lambda_c_prime = static_cast<double>(g.conjugacy_classes().size());
  k.cp2 = k.cp2bar = 1.0;
  return k;
}

Complex numerator(const PivotalFunctorData& functor, const KirbyDiagram& diagram,
                  const InvariantOptions& options) {
  require_usable(functor);
  const std::size_t n = diagram.component_count();
  if (n == 0) return 1.0;
  const Colour omega_d = kirby_colour(*functor.target);
  const Colour f_omega = apply_functor(functor, kirby_colour(*functor.source));
  std::vector<std::vector<std::pair<LabelIndex, Complex>>> choices(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Colour& colour = i < static_cast<std::size_t>(diagram.h1()) ? omega_d : f_omega;
    choices[i].assign(colour.terms().begin(), colour.terms().end());
    if (choices[i].empty()) return 0.0;
  }
  auto prepared = functor.target->evaluator->prepare(diagram, options.eval);

  auto sum_with_first = [&](std::size_t first) {
    std::vector<std::size_t> idx(n, 0);
    idx[0] = first;
    std::vector<LabelIndex> labels(n);
    Complex total = 0.0;
    while (true) {
      Complex coeff = 1.0;
      for (std::size_t i = 0; i < n; ++i) {
        labels[i] = choices[i][idx[i]].first;
        coeff *= choices[i][idx[i]].second;
      }
      total += coeff * prepared->evaluate(labels);
      std::size_t k = 1;
      while (k < n && ++idx[k] == choices[k].size()) idx[k++] = 0;
      if (k == n) break;
    }
    return total;
  };

  const std::size_t outer = choices[0].size();
  std::vector<Complex> partial(outer, 0.0);
  const int jobs = std::max(1, std::min<int>(options.jobs, static_cast<int>(outer)));
  if (jobs == 1) {
    for (std::size_t f = 0; f < outer; ++f) partial[f] = sum_with_first(f);
  } else {
    std::vector<std::exception_ptr> errors(jobs);
    std::vector<std::thread> workers;
    for (int w = 0; w < jobs; ++w) {
      workers.emplace_back([&, w] {
        try {
          for (std::size_t f = w; f < outer; f += jobs) partial[f] = sum_with_first(f);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& t : workers) t.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }
  Complex total = 0.0;
  for (const auto& p : partial) total += p;
  return total;
}

InvariantResult invariant(const PivotalFunctorData& functor, const KirbyDiagram& diagram,
                          const InvariantOptions& options) {
  require_usable(functor);
  require_valid_target(*functor.target);
  const CategoryConstants k = category_constants(functor);
  InvariantResult r;
  r.h1 = diagram.h1();
  r.h2 = diagram.h2();
  r.chi = euler_characteristic(diagram);
  r.sigma = signature(diagram);
  r.backend = functor.target->evaluator->backend_name();
  r.functor = functor.name + ": " + functor.source->name + " -> " + functor.target->name;
  r.diagram = diagram.name();
  r.numerator = numerator(functor, diagram, options);
  r.normalization = normalization(k, r.h1, r.h2);
  r.value = r.numerator / r.normalization;
  r.provenance.push_back(functor.target->is_modular() ? "target modular" : "target premodular, not modular");
  if (functor.is_injective_label_map()) r.provenance.push_back("functor is an injective label map");
  return r;
}

Complex cp2_value(const PivotalFunctorData& functor) { return category_constants(functor).cp2; }

Complex cp2bar_value(const PivotalFunctorData& functor) { return category_constants(functor).cp2bar; }

Complex predict_simply_connected(const PivotalFunctorData& functor, int chi, int sigma) {
  if ((chi + sigma) % 2 != 0) {
    fail(ErrorKind::kInvalidArgument, "chi + sigma must be even for a closed simply-connected manifold");
  }
  const CategoryConstants k = category_constants(functor);
  if (std::abs(k.cp2) < kTolerance || std::abs(k.cp2bar) < kTolerance) {
    fail(ErrorKind::kNonInvertibleCp2, "I(CP2) = " + format_complex(k.cp2) + ", I(CP2bar) = " +
                                           format_complex(k.cp2bar));
  }
  const int b_plus = (chi + sigma) / 2 - 1;
  const int b_minus = (chi - sigma) / 2 - 1;
  return ipow(k.cp2, b_plus) * ipow(k.cp2bar, b_minus);
}

Complex petit_I0(const PivotalFunctorData& functor, const KirbyDiagram& diagram,
                 const InvariantOptions& options) {
  const CategoryConstants k = category_constants(functor);
  const Complex base = std::sqrt(k.omega_d * k.omega_f_prime) / k.omega_c;
  return invariant(functor, diagram, options).value / ipow(base, euler_characteristic(diagram) - 2);
}

Complex crane_yetter_statesum_value(const PivotalFunctorData& functor, const KirbyDiagram& diagram,
                                    const InvariantOptions& options) {
  require_usable(functor);
  if (!functor.is_injective_label_map()) {
    fail(ErrorKind::kNotInjectiveLabelMap, "functor " + functor.name + " is not an inclusion of simples");
  }
  const CategoryConstants k = category_constants(functor);
  return invariant(functor, diagram, options).value / ipow(k.omega_c, 1 - euler_characteristic(diagram));
}

Complex ground_state_dimension(const PivotalFunctorData& functor, const KirbyDiagram& diagram,
                               const InvariantOptions& options) {
  return invariant(functor, diagram, options).value / category_constants(functor).omega_c;
}

InvariantResult dw_invariant(const KirbyDiagram& diagram, const FiniteGroup& g, int jobs) {
  InvariantResult r;
  r.h1 = diagram.h1();
  r.h2 = diagram.h2();
  r.chi = euler_characteristic(diagram);
  r.sigma = signature(diagram);
  r.backend = "group";
  r.functor = "id: Rep(" + g.name() + ") -> Rep(" + g.name() + ")";
  r.diagram = diagram.name();
  const auto count = static_cast<std::int64_t>(count_flat_connections(diagram, g, jobs));
  r.exact = Rational(count);
  r.value = static_cast<double>(count);
  r.normalization = std::pow(static_cast<double>(g.order()), r.h1 + r.h2);
  r.numerator = r.value * r.normalization;
  r.provenance.push_back("counted flat connections by backtracking");
  return r;
}

std::string result_to_json(const InvariantResult& result) {
  nlohmann::json j;
  j["value"] = complex_json(result.value);
  j["numerator"] = complex_json(result.numerator);
  j["normalization"] = complex_json(result.normalization);
  j["h1"] = result.h1;
  j["h2"] = result.h2;
  j["chi"] = result.chi;
  j["sigma"] = result.sigma;
  j["backend"] = result.backend;
  j["functor"] = result.functor;
  j["diagram"] = result.diagram;
  j["provenance"] = result.provenance;
  if (result.exact) j["exact"] = to_string(*result.exact);
  return j.dump(2);
}

}  // namespace kirbycalc
