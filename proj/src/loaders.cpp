#include "kirbycalc/loaders.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

#include "kirbycalc/error.hpp"

namespace kirbycalc {

namespace {

using nlohmann::json;

json parse(const std::string& document, const char* what) {
  try {
    return json::parse(document);
  } catch (const json::parse_error& e) {
    fail(ErrorKind::kSchema, std::string(what) + " is not valid JSON: " + e.what());
  }
}

CategoryPtr restrict_to(const CategoryData& ambient, const std::vector<std::string>& names,
                        const std::function<bool(LabelIndex, LabelIndex)>& braids_trivially) {
  std::vector<LabelIndex> labels;
  for (const auto& n : names) labels.push_back(ambient.label(n));
  std::string name = ambient.name + " restricted to {";
  for (std::size_t i = 0; i < names.size(); ++i) name += (i ? ", " : "") + names[i];
  name += "}";
  return full_subcategory(ambient, labels, name,
                          [&](LabelIndex a, const std::vector<LabelIndex>& within) {
                            for (LabelIndex c : within) {
                              if (!braids_trivially(a, c)) return false;
                            }
                            return true;
                          });
}

LoadedCategory load_category_json(const json& j) {
  LoadedCategory out;
  try {
    out.backend = j.at("backend").get<std::string>();
    if (out.backend == "group") {
      if (j.contains("group")) {
        out.group = FiniteGroup::builtin(j.at("group").get<std::string>());
      } else {
        out.group = FiniteGroup::from_json(j.dump(), j.value("name", "file"));
      }
      return out;
    }
    if (out.backend == "pointed") {
      if (j.contains("hyperbolic")) {
        out.pointed = PointedCategory::hyperbolic(j.at("hyperbolic").get<int>());
      } else if (j.value("anyonic", false)) {
        out.pointed = PointedCategory::anyonic_product(j.at("factors").get<std::vector<int>>());
      } else {
        out.pointed = PointedCategory::from_json(j.dump(), j.value("name", "file"));
      }
      out.category = out.pointed->category();
      if (j.contains("labels")) {
        const auto& p = *out.pointed;
        out.category = restrict_to(*out.category, j.at("labels").get<std::vector<std::string>>(),
                                   [&](LabelIndex a, LabelIndex c) { return p.b(a, c).numerator() == 0; });
      }
      return out;
    }
    if (out.backend == "templieb") {
      out.tl = TLCategory::from_json(j.dump());
      out.category = out.tl->category();
      if (j.contains("labels")) {
        const auto& t = *out.tl;
        out.category = restrict_to(*out.category, j.at("labels").get<std::vector<std::string>>(),
                                   [&](LabelIndex a, LabelIndex c) {
                                     return approx_equal(t.hopf(a, c), t.dims()[a] * t.dims()[c]);
                                   });
      }
      return out;
    }
  } catch (const json::exception& e) {
    fail(ErrorKind::kSchema, std::string("malformed category document: ") + e.what());
  }
  fail(ErrorKind::kSchema, "unknown backend '" + out.backend + "'");
}

}  // namespace

LoadedCategory load_category(const std::string& document) {
  return load_category_json(parse(document, "category document"));
}

PivotalFunctorData load_functor(const std::string& document) {
  const json j = parse(document, "functor document");
  PivotalFunctorData f;
  try {
    LoadedCategory source = load_category_json(j.at("source"));
    LoadedCategory target = load_category_json(j.at("target"));
    if (!source.category || !target.category) {
      fail(ErrorKind::kSchema, "functor documents need pointed or templieb categories");
    }
    f.name = j.value("name", "F");
    f.source = source.category;
    f.target = target.category;
    f.image.assign(f.source->size(), Colour{});
    std::vector<bool> given(f.source->size(), false);
    for (const auto& [from, images] : j.at("map").items()) {
      const LabelIndex x = f.source->label(from);
      given[x] = true;
      for (const auto& [to, m] : images.items()) {
        f.image[x].add(f.target->label(to), static_cast<double>(m.get<int>()));
      }
    }
    for (LabelIndex x = 0; x < given.size(); ++x) {
      if (!given[x]) fail(ErrorKind::kSchema, "functor map misses source label " + f.source->labels[x]);
    }
  } catch (const json::exception& e) {
    fail(ErrorKind::kSchema, std::string("malformed functor document: ") + e.what());
  }
  auto problems = f.check();
  if (!problems.empty()) fail(ErrorKind::kSchema, "functor " + f.name + ": " + problems.front());
  return f;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::kInvalidArgument, "cannot read " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace kirbycalc
