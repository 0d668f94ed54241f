#include "kirbycalc/cli.hpp"

#include <cstdlib>
#include <iomanip>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "kirbycalc/backend_dw.hpp"
#include "kirbycalc/backend_pointed.hpp"
#include "kirbycalc/backend_templieb.hpp"
#include "kirbycalc/error.hpp"
#include "kirbycalc/invariant_engine.hpp"
#include "kirbycalc/loaders.hpp"
#include "kirbycalc/manifold_library.hpp"
#include "kirbycalc/move_suite.hpp"

namespace kirbycalc {

namespace {

using nlohmann::json;

struct Config {
  std::string library;
  std::string diagram_file;
  std::string backend = "pointed";
  std::vector<int> factors;
  bool anyonic = false;
  std::string category_file;
  std::string functor = "id";
  std::string group = "s3";
  int r = 4;
  int skein_cap = 24;
  int jobs = 1;
  double tolerance = kTolerance;
  std::string format = "json";
  std::string quantity = "value";
  std::uint64_t seed = 0;
  int trials = 100;
  std::vector<std::string> groups;
  std::string export_name;
};

// What the value of a diagram is computed with.
struct Backend {
  std::string kind;  // "group" or "category"
  std::optional<FiniteGroup> group;
  std::optional<GroupHomData> hom;
  std::optional<PivotalFunctorData> functor;
  InvariantOptions options;
  std::string describe;
};

Backend resolve_backend(const Config& c) {
  Backend b;
  b.options.eval.skein_cap = c.skein_cap;
  b.options.jobs = c.jobs;
  b.options.tolerance = c.tolerance;
  if (c.backend == "group") {
    b.kind = "group";
    FiniteGroup g = c.group.find(".json") != std::string::npos
                        ? FiniteGroup::from_json(read_file(c.group), c.group)
                        : FiniteGroup::builtin(c.group);
    if (c.functor == "id") {
      b.group = g;
    } else if (c.functor == "sign") {
      b.hom = sign_homomorphism_s3();
    } else if (c.functor == "mod2") {
      b.hom = reduction_mod2_z4();
    } else {
      fail(ErrorKind::kInvalidArgument, "group functors are id, sign (S3 -> Z2) or mod2 (Z4 -> Z2)");
    }
    b.describe = b.hom ? b.hom->source.name() + " -> " + b.hom->target.name() : "Rep(" + g.name() + ")";
    return b;
  }
  b.kind = "category";
  if (c.backend == "pointed") {
    if (c.functor == "hyperbolic") {
      if (c.factors.size() != 1) fail(ErrorKind::kInvalidArgument, "--functor hyperbolic needs one factor");
      b.functor = diagonal_into_hyperbolic(c.factors[0]);
    } else if (c.functor == "id") {
      std::optional<PointedCategory> cat;
      if (!c.category_file.empty()) {
        LoadedCategory loaded = load_category(read_file(c.category_file));
        if (!loaded.pointed) fail(ErrorKind::kInvalidArgument, "category file is not a pointed category");
        cat = loaded.pointed;
      } else if (!c.factors.empty()) {
        cat = PointedCategory::anyonic_product(c.factors);
      } else {
        fail(ErrorKind::kInvalidArgument, "pointed backend needs --factors or --category");
      }
      b.functor = identity_functor(cat->category());
    } else {
      b.functor = load_functor(read_file(c.functor));
    }
  } else if (c.backend == "templieb") {
    TLCategory tl(c.r);
    if (c.functor == "id") {
      b.functor = identity_functor(tl.category());
    } else if (c.functor == "integer-spins") {
      b.functor = tl.integer_spin_inclusion();
    } else {
      b.functor = load_functor(read_file(c.functor));
    }
  } else {
    fail(ErrorKind::kInvalidArgument, "unknown backend '" + c.backend + "'");
  }
  b.describe = b.functor->name + ": " + b.functor->source->name + " -> " + b.functor->target->name;
  return b;
}

InvariantResult compute(const Backend& b, const KirbyDiagram& d) {
  if (b.kind == "category") return invariant(*b.functor, d, b.options);
  if (b.group) return dw_invariant(d, *b.group, b.options.jobs);
  InvariantResult r;
  r.h1 = d.h1();
  r.h2 = d.h2();
  r.chi = euler_characteristic(d);
  r.sigma = signature(d);
  r.backend = "group";
  r.functor = b.describe;
  r.diagram = d.name();
  r.exact = hom_invariant(d, *b.hom);
  r.value = boost::rational_cast<double>(*r.exact);
  r.normalization = std::pow(static_cast<double>(b.hom->kernel_size()), r.h1);
  r.numerator = r.value * r.normalization;
  r.provenance.push_back("summed over homomorphisms through the given group map");
  return r;
}

CategoryConstants constants(const Backend& b) {
  if (b.kind == "category") return category_constants(*b.functor);
  return group_constants(b.group ? *b.group : b.hom->image_group());
}

// Closed forms hold for Rep(G) and for full inclusions into a modular target.
bool closed_forms_apply(const Backend& b) {
  if (b.kind == "group") return true;
  return b.functor->target->is_modular() && b.functor->is_injective_label_map();
}

KirbyDiagram load_diagram(const Config& c) {
  if (c.library.empty() == c.diagram_file.empty()) {
    fail(ErrorKind::kInvalidArgument, "give exactly one of --library and --diagram");
  }
  if (!c.library.empty()) return library_get(c.library).diagram;
  return parse_kdf(read_file(c.diagram_file));
}

json complex_json(Complex z) {
  auto clean = [](double x) { return std::abs(x) < 1e-12 ? 0.0 : x; };
  return json::array({clean(z.real()), clean(z.imag())});
}

std::string csv_real(double x) {
  if (std::abs(x) < 1e-12) x = 0.0;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

Complex derived_quantity(const Backend& b, const KirbyDiagram& d, const std::string& quantity,
                         Complex value) {
  if (quantity == "value") return value;
  if (b.kind == "category") {
    const auto& f = *b.functor;
    if (quantity == "petit") return petit_I0(f, d, b.options);
    if (quantity == "crane-yetter") return crane_yetter_statesum_value(f, d, b.options);
    if (quantity == "ground-state") return ground_state_dimension(f, d, b.options);
    if (quantity == "predict") return predict_simply_connected(f, euler_characteristic(d), signature(d));
  } else {
    const CategoryConstants k = constants(b);
    const int chi = euler_characteristic(d);
    if (quantity == "petit") return value / ipow(std::sqrt(k.omega_d * k.omega_f_prime) / k.omega_c, chi - 2);
    if (quantity == "crane-yetter") return value / ipow(k.omega_c, 1 - chi);
    if (quantity == "ground-state") return value / k.omega_c;
    if (quantity == "predict") {
      if ((chi + signature(d)) % 2 != 0) fail(ErrorKind::kInvalidArgument, "chi + sigma must be even");
      return 1.0;
    }
  }
  fail(ErrorKind::kInvalidArgument, "unknown quantity '" + quantity + "'");
}

int cmd_invariant(const Config& c, std::ostream& out) {
  const KirbyDiagram d = load_diagram(c);
  const Backend b = resolve_backend(c);
  const InvariantResult r = compute(b, d);
  if (c.quantity == "value") {
    if (c.format == "json") {
      out << result_to_json(r) << "\n";
    } else if (c.format == "csv") {
      out << "diagram,re,im\n" << d.name() << "," << csv_real(r.value.real()) << "," << csv_real(r.value.imag()) << "\n";
    } else {
      out << d.name() << "  " << (r.exact ? to_string(*r.exact) : format_complex(r.value)) << "\n";
    }
    return 0;
  }
  const Complex q = derived_quantity(b, d, c.quantity, r.value);
  if (c.format == "json") {
    json j{{"diagram", d.name()}, {"quantity", c.quantity}, {"value", complex_json(q)},
           {"invariant", complex_json(r.value)}, {"backend", r.backend}, {"functor", r.functor}};
    out << j.dump(2) << "\n";
  } else if (c.format == "csv") {
    out << "diagram,quantity,re,im\n"
        << d.name() << "," << c.quantity << "," << csv_real(q.real()) << "," << csv_real(q.imag()) << "\n";
  } else {
    out << d.name() << "  " << c.quantity << "  " << format_complex(q) << "\n";
  }
  return 0;
}

struct TableRow {
  std::string name;
  int chi = 0;
  int sigma = 0;
  std::optional<Complex> value;
  std::optional<Rational> exact;
  std::optional<Complex> expected;
  std::string closed_form;
  std::string status;
};

int cmd_table(const Config& c, std::ostream& out) {
  const Backend b = resolve_backend(c);
  const bool forms = closed_forms_apply(b);
  const CategoryConstants k = constants(b);
  std::vector<TableRow> rows;
  for (const auto& name : library_list()) {
    const LibraryEntry& e = library_get(name);
    TableRow row{name, e.chi, e.sigma, {}, {}, {}, "", ""};
    if (forms && e.expected) {
      row.expected = e.expected->evaluate(k);
      row.closed_form = e.expected->describe();
    }
    try {
      InvariantResult r = compute(b, e.diagram);
      row.value = r.value;
      row.exact = r.exact;
      if (!row.expected) {
        row.status = "no-closed-form";
      } else {
        const double scale = std::max(1.0, std::abs(*row.expected));
        row.status = std::abs(r.value - *row.expected) <= c.tolerance * scale ? "ok" : "MISMATCH";
      }
    } catch (const Error& err) {
      if (err.kind() == ErrorKind::kMissingPd) row.status = "no-planar-code";
      else if (err.kind() == ErrorKind::kResourceLimit) row.status = "resource-limit";
      else throw;
    }
    rows.push_back(std::move(row));
  }
  if (c.format == "json") {
    json arr = json::array();
    for (const auto& row : rows) {
      json j{{"name", row.name}, {"chi", row.chi}, {"sigma", row.sigma}, {"status", row.status}};
      j["value"] = row.value ? complex_json(*row.value) : json(nullptr);
      if (row.exact) j["exact"] = to_string(*row.exact);
      j["expected"] = row.expected ? complex_json(*row.expected) : json(nullptr);
      j["closed_form"] = row.closed_form;
      arr.push_back(std::move(j));
    }
    json doc{{"backend", b.describe}, {"rows", arr}};
    out << doc.dump(2) << "\n";
  } else if (c.format == "csv") {
    out << "name,chi,sigma,re,im,expected_re,expected_im,status\n";
    for (const auto& row : rows) {
      out << row.name << "," << row.chi << "," << row.sigma << ","
          << (row.value ? csv_real(row.value->real()) + "," + csv_real(row.value->imag()) : ",") << ","
          << (row.expected ? csv_real(row.expected->real()) + "," + csv_real(row.expected->imag()) : ",")
          << "," << row.status << "\n";
    }
  } else {
    out << b.describe << "\n";
    out << std::left << std::setw(20) << "manifold" << std::setw(5) << "chi" << std::setw(7) << "sigma"
        << std::setw(28) << "value" << std::setw(44) << "expected" << "status\n";
    for (const auto& row : rows) {
      std::string v = row.exact ? to_string(*row.exact) : row.value ? format_complex(*row.value) : "-";
      std::string e = row.expected ? format_complex(*row.expected) + " (" + row.closed_form + ")" : "-";
      out << std::left << std::setw(20) << row.name << std::setw(5) << row.chi << std::setw(7) << row.sigma
          << std::setw(28) << v << std::setw(44) << e << row.status << "\n";
    }
  }
  return 0;
}

int cmd_check_moves(const Config& c, std::ostream& out) {
  if (c.backend == "templieb") {
    fail(ErrorKind::kInvalidArgument,
         "random move suites run on linking data; the templieb backend needs planar codes");
  }
  const Backend b = resolve_backend(c);
  const CategoryConstants k = constants(b);
  MoveSuiteOptions opts;
  opts.trials = c.trials;
  opts.seed = c.seed;
  const MoveSuiteReport report =
      run_move_suite([&](const KirbyDiagram& d) { return compute(b, d).value; }, k.cp2, k.cp2bar, opts);
  const double bound = b.kind == "group" ? 0.0 : c.tolerance;
  const bool passed = report.overall <= bound;
  if (c.format == "json") {
    json j{{"backend", b.describe}, {"seed", c.seed}, {"trials", report.trials}, {"checks", report.checks},
           {"max_deviation", report.max_deviation}, {"overall", report.overall}, {"passed", passed}};
    out << j.dump(2) << "\n";
  } else if (c.format == "csv") {
    out << "move,max_deviation\n";
    for (const auto& [move, dev] : report.max_deviation) out << move << "," << dev << "\n";
  } else {
    out << b.describe << ", " << report.trials << " diagrams, " << report.checks << " checks\n";
    for (const auto& [move, dev] : report.max_deviation) {
      out << "  " << std::left << std::setw(10) << move << dev << "\n";
    }
    out << (passed ? "passed" : "FAILED") << " (max " << report.overall << ")\n";
  }
  return passed ? 0 : 1;
}

std::string word_string(const Word& w) {
  if (w.empty()) return "1";
  std::string s;
  for (const auto& l : w) s += l.handle + (l.sign > 0 ? "" : "^-1") + " ";
  s.pop_back();
  return s;
}

int cmd_pi1(const Config& c, std::ostream& out) {
  const KirbyDiagram d = load_diagram(c);
  const GroupPresentation p = fundamental_group(d);
  std::vector<std::string> names = c.groups.empty() ? std::vector<std::string>{"z2", "z3", "s3", "d4", "q8"}
                                                     : c.groups;
  json counts = json::object();
  json classes = json::object();
  for (const auto& n : names) {
    FiniteGroup g = FiniteGroup::builtin(n);
    counts[g.name()] = count_homomorphisms(p, g, c.jobs);
    classes[g.name()] = count_hom_conjugacy_classes(p, g);
  }
  std::vector<std::string> relators;
  for (const auto& r : p.relators) relators.push_back(word_string(r));
  if (c.format == "json") {
    json j{{"diagram", d.name()}, {"generators", p.generators}, {"relators", relators},
           {"hom_counts", counts}, {"hom_classes", classes}};
    out << j.dump(2) << "\n";
  } else if (c.format == "csv") {
    out << "group,homs,classes\n";
    for (const auto& [g, n] : counts.items()) out << g << "," << n << "," << classes[g] << "\n";
  } else {
    out << "< ";
    for (std::size_t i = 0; i < p.generators.size(); ++i) out << (i ? ", " : "") << p.generators[i];
    out << " | ";
    for (std::size_t i = 0; i < relators.size(); ++i) out << (i ? ", " : "") << relators[i];
    out << " >\n";
    for (const auto& [g, n] : counts.items()) {
      out << "  Hom(pi1, " << g << ") = " << n << ", up to conjugacy " << classes[g] << "\n";
    }
  }
  return 0;
}

int cmd_library_list(const Config& c, std::ostream& out) {
  if (c.format == "json") {
    json arr = json::array();
    for (const auto& n : library_list()) {
      const auto& e = library_get(n);
      arr.push_back({{"name", n}, {"chi", e.chi}, {"sigma", e.sigma}, {"pi1", e.pi1},
                     {"planar_code", e.diagram.pd().has_value()}});
    }
    out << arr.dump(2) << "\n";
  } else {
    for (const auto& n : library_list()) out << n << "\n";
  }
  return 0;
}

int cmd_validate(const Config& c, std::ostream& out) {
  json report = json::object();
  bool valid = true;
  if (!c.library.empty() || !c.diagram_file.empty()) {
    json dj{{"valid", true}};
    try {
      KirbyDiagram d = load_diagram(c);
      dj["name"] = d.name();
      dj["chi"] = euler_characteristic(d);
      dj["sigma"] = signature(d);
      dj["planar_code"] = d.pd().has_value();
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::kInvalidArgument) throw;
      dj["valid"] = false;
      dj["error"] = error_kind_name(e.kind());
      dj["message"] = e.what();
      valid = false;
    }
    report["diagram"] = dj;
  }
  if (!c.category_file.empty()) {
    LoadedCategory loaded = load_category(read_file(c.category_file));
    if (loaded.group) {
      report["category"] = {{"name", "Rep(" + loaded.group->name() + ")"}, {"valid", true},
                            {"modular", loaded.group->order() == 1}, {"violations", json::array()}};
    }
  }
  if (c.backend != "group" && (!c.factors.empty() || !c.category_file.empty() || c.backend == "templieb") &&
      !report.contains("category")) {
    CategoryPtr cat;
    if (!c.category_file.empty()) {
      cat = load_category(read_file(c.category_file)).category;
    } else if (c.backend == "templieb") {
      cat = TLCategory(c.r).category();
    } else {
      cat = PointedCategory::anyonic_product(c.factors).category();
    }
    if (cat) {
      ValidationReport v = validate_target_category(*cat);
      report["category"] = {{"name", cat->name}, {"valid", v.valid}, {"modular", v.modular},
                            {"violations", v.violations}};
      valid = valid && v.valid;
    }
  }
  if (report.empty()) fail(ErrorKind::kInvalidArgument, "nothing to validate");
  report["valid"] = valid;
  out << report.dump(2) << "\n";
  return valid ? 0 : 2;
}

void add_diagram_options(CLI::App* app, Config& c) {
  app->add_option("--library", c.library, "Library manifold name");
  app->add_option("--diagram", c.diagram_file, "KDF diagram file");
}

void add_backend_options(CLI::App* app, Config& c) {
  app->add_option("--backend", c.backend, "pointed | group | templieb")
      ->check(CLI::IsMember({"pointed", "group", "templieb"}));
  app->add_option("--factors", c.factors, "Cyclic factors of a pointed category")->delimiter(',');
  app->add_flag("--anyonic", c.anyonic, "Use the anyonic form q(k) = k^2/n on each factor");
  app->add_option("--category", c.category_file, "Category description file");
  app->add_option("--functor", c.functor, "id | hyperbolic | integer-spins | sign | mod2 | FILE");
  app->add_option("--group", c.group, "Built-in group (s3, d4, q8, zN) or group file");
  app->add_option("--r", c.r, "Temperley-Lieb level r (q = e^{i pi / r})");
  app->add_option("--skein-cap", c.skein_cap, "Crossing cap after cabling; negative disables");
  app->add_option("--jobs", c.jobs, "Worker threads");
  app->add_option("--tolerance", c.tolerance, "Comparison tolerance");
}

void add_format_option(CLI::App* app, Config& c) {
  app->add_option("--format", c.format, "json | csv | table")->check(CLI::IsMember({"json", "csv", "table"}));
}

void report_error(std::ostream& err, const std::string& kind, const std::string& message) {
  err << json{{"error", kind}, {"message", message}}.dump() << "\n";
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Config c;
  if (const char* cap = std::getenv("KIRBYCALC_SKEIN_CAP")) {
    try {
      c.skein_cap = std::stoi(cap);
    } catch (const std::exception&) {
      report_error(err, "InvalidArgument", "KIRBYCALC_SKEIN_CAP is not an integer");
      return 2;
    }
  }

  CLI::App app{"Generalised dichromatic invariants of 4-manifolds from Kirby diagrams", "kirbycalc"};
  app.require_subcommand(1);

  auto* inv = app.add_subcommand("invariant", "Compute the invariant of one diagram");
  add_diagram_options(inv, c);
  add_backend_options(inv, c);
  add_format_option(inv, c);
  inv->add_option("--quantity", c.quantity, "value | petit | crane-yetter | ground-state | predict")
      ->check(CLI::IsMember({"value", "petit", "crane-yetter", "ground-state", "predict"}));

  auto* table = app.add_subcommand("table", "Evaluate every library manifold against its closed form");
  add_backend_options(table, c);
  add_format_option(table, c);

  auto* moves = app.add_subcommand("check-moves", "Randomized handle-move invariance suite");
  add_backend_options(moves, c);
  add_format_option(moves, c);
  moves->add_option("--seed", c.seed, "Random seed");
  moves->add_option("--trials", c.trials, "Number of random diagrams");

  auto* pi1 = app.add_subcommand("pi1", "Fundamental group presentation and homomorphism counts");
  add_diagram_options(pi1, c);
  add_format_option(pi1, c);
  pi1->add_option("--groups", c.groups, "Built-in groups to count into")->delimiter(',');
  pi1->add_option("--jobs", c.jobs, "Worker threads");

  auto* library = app.add_subcommand("library", "Built-in manifold diagrams");
  library->require_subcommand(1);
  auto* list = library->add_subcommand("list", "List library manifolds");
  add_format_option(list, c);
  auto* exp = library->add_subcommand("export", "Print a library manifold as KDF");
  exp->add_option("name", c.export_name, "Manifold name")->required();

  auto* validate = app.add_subcommand("validate", "Validate a diagram and/or a target category");
  add_diagram_options(validate, c);
  add_backend_options(validate, c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    report_error(err, "UsageError", e.what());
    return 2;
  }

  try {
    if (*inv) return cmd_invariant(c, out);
    if (*table) return cmd_table(c, out);
    if (*moves) return cmd_check_moves(c, out);
    if (*pi1) return cmd_pi1(c, out);
    if (*list) return cmd_library_list(c, out);
    if (*exp) {
      out << to_kdf(library_get(c.export_name).diagram);
      return 0;
    }
    if (*validate) return cmd_validate(c, out);
  } catch (const Error& e) {
    report_error(err, error_kind_name(e.kind()), e.what());
    return e.kind() == ErrorKind::kResourceLimit ? 3 : 2;
  } catch (const std::exception& e) {
    report_error(err, "InternalError", e.what());
    return 2;
  }
  return 2;
}

}  // namespace kirbycalc
