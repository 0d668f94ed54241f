#pragma once

#include <optional>
#include <string>

#include "kirbycalc/backend_dw.hpp"
#include "kirbycalc/backend_pointed.hpp"
#include "kirbycalc/backend_templieb.hpp"
#include "kirbycalc/category_model.hpp"

namespace kirbycalc {

/// A category loaded from a description document; exactly one backend member is set.
/// `category` is null for the group backend, which is handled by counting.
struct LoadedCategory {
  std::string backend;
  std::optional<FiniteGroup> group;
  std::optional<PointedCategory> pointed;
  std::optional<TLCategory> tl;
  CategoryPtr category;
};

/// {"backend": "group", "group": "s3"} or {"backend": "group", "order": n, "table": [...]}
/// {"backend": "pointed", "factors": [...], "q": {...}} or {..., "anyonic": true} or {..., "hyperbolic": n}
/// {"backend": "templieb", "r": 4}
/// Pointed and templieb documents may add "labels": [...] to select a full subcategory, whose
/// transparency is decided inside the subcategory.
LoadedCategory load_category(const std::string& document);

/// {"name": str, "source": category, "target": category,
///  "map": {sourceLabel: {targetLabel: multiplicity}}}
PivotalFunctorData load_functor(const std::string& document);

std::string read_file(const std::string& path);

}  // namespace kirbycalc
