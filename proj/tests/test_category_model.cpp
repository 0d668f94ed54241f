#include <gtest/gtest.h>

#include "kirbycalc/backend_pointed.hpp"
#include "kirbycalc/backend_templieb.hpp"
#include "kirbycalc/error.hpp"
#include "kirbycalc/loaders.hpp"

using namespace kirbycalc;

namespace {

CategoryPtr z5() { return PointedCategory::anyonic(5).category(); }

}  // namespace

TEST(Colour, ArithmeticDropsZeros) {
  Colour c = Colour::simple(1, 2.0) + Colour::simple(2, 1.0);
  EXPECT_EQ(c.terms().size(), 2u);
  Colour d = c + Colour::simple(1, -2.0);
  EXPECT_EQ(d.terms().size(), 1u);
  EXPECT_EQ(d[2], Complex(1.0));
  EXPECT_EQ(d[1], Complex(0.0));
  EXPECT_TRUE((c * 0.5).approx_equal(Colour::simple(1) + Colour::simple(2, 0.5)));
}

TEST(Colour, KirbyColourAndGlobalDimension) {
  CategoryPtr c = z5();
  Colour omega = kirby_colour(*c);
  EXPECT_EQ(omega.terms().size(), 5u);
  EXPECT_NEAR(std::abs(colour_dimension(*c, omega) - 5.0), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(global_dimension(*c) - 5.0), 0.0, 1e-12);
  TLCategory tl(4);
  EXPECT_NEAR(std::abs(global_dimension(*tl.category()) - 4.0), 0.0, 1e-9);
}

TEST(Colour, TransparentPartAndFusion) {
  CategoryPtr z4 = PointedCategory::anyonic(4).category();
  Colour t = transparent_part(*z4, kirby_colour(*z4));
  EXPECT_EQ(t.terms().size(), 2u);
  EXPECT_NEAR(std::abs(colour_dimension(*z4, t) - 2.0), 0.0, 1e-12);
  Colour prod = multiply(*z4, Colour::simple(1) + Colour::simple(2), Colour::simple(3));
  EXPECT_TRUE(prod.approx_equal(Colour::simple(0) + Colour::simple(1)));
  EXPECT_NE(format_colour(*z4, prod).find("0: 1+0i"), std::string::npos);
}

TEST(Colour, TwistTraceIsGaussSum) {
  CategoryPtr c = z5();
  Complex g = colour_twist_trace(*c, kirby_colour(*c));
  EXPECT_NEAR(std::abs(g), std::sqrt(5.0), 1e-12);
  EXPECT_NEAR(std::abs(colour_twist_trace(*c, kirby_colour(*c), true) - std::conj(g)), 0.0, 1e-12);
}

TEST(Validation, ReportsEachViolation) {
  auto bad = std::make_shared<CategoryData>(*z5());
  bad->twists[1] = 2.0;
  bad->duals[2] = 2;
  bad->transparent[4] = true;
  ValidationReport v = validate_target_category(*bad);
  EXPECT_FALSE(v.valid);
  EXPECT_GE(v.violations.size(), 3u);
  ValidationReport ok = validate_target_category(*z5());
  EXPECT_TRUE(ok.valid);
  EXPECT_TRUE(ok.modular);
}

TEST(Validation, GlobalDimensionMustBePositive) {
  auto bad = std::make_shared<CategoryData>(*z5());
  bad->dims = {1.0, Complex(0, 1), Complex(0, 1), Complex(0, 1), Complex(0, 1)};
  EXPECT_THROW(global_dimension(*bad), Error);
  EXPECT_FALSE(validate_target_category(*bad).valid);
}

TEST(Functor, IdentityAndInclusion) {
  CategoryPtr c = z5();
  PivotalFunctorData id = identity_functor(c);
  EXPECT_TRUE(id.check().empty());
  EXPECT_TRUE(id.is_injective_label_map());
  TLCategory tl(5);
  PivotalFunctorData inc = tl.integer_spin_inclusion();
  EXPECT_EQ(inc.image.size(), 2u);
  EXPECT_EQ(inc.image[1][2], Complex(1.0));
}

TEST(Functor, CheckFindsBrokenFunctors) {
  CategoryPtr c = z5();
  PivotalFunctorData f = identity_functor(c);
  f.image[1] = Colour::simple(2);
  EXPECT_FALSE(f.check().empty());  // not an algebra map
  f.image[1] = Colour::simple(1, 2.0);
  EXPECT_FALSE(f.check().empty());  // dimension not preserved
  EXPECT_FALSE(f.is_injective_label_map());
  f.image[1] = Colour::simple(1, 0.5);
  EXPECT_FALSE(f.check().empty());
}

TEST(Functor, NonInjectiveLabelMap) {
  PointedCategory z4 = PointedCategory::anyonic(4);
  // Z4 -> Z4, k -> 2k collapses labels.
  PivotalFunctorData f = pointed_functor(z4, z4, {0, 2, 0, 2}, "double");
  EXPECT_FALSE(f.is_injective_label_map());
}

TEST(Loaders, CategoryDocuments) {
  LoadedCategory g = load_category(R"({"backend": "group", "group": "q8"})");
  ASSERT_TRUE(g.group);
  EXPECT_EQ(g.group->order(), 8);
  LoadedCategory p = load_category(R"({"backend": "pointed", "factors": [3], "anyonic": true})");
  ASSERT_TRUE(p.pointed);
  EXPECT_TRUE(p.category->is_modular());
  LoadedCategory h = load_category(R"({"backend": "pointed", "hyperbolic": 2})");
  EXPECT_EQ(h.category->size(), 4u);
  LoadedCategory t = load_category(R"({"backend": "templieb", "r": 4, "labels": ["0", "1"]})");
  EXPECT_EQ(t.category->size(), 2u);
  EXPECT_TRUE(t.category->transparent[1]);
  EXPECT_THROW(load_category(R"({"backend": "sl3"})"), Error);
  EXPECT_THROW(load_category("[1"), Error);
}

TEST(Loaders, FunctorDocuments) {
  PivotalFunctorData f = load_functor(R"({
    "name": "spins",
    "source": {"backend": "templieb", "r": 4, "labels": ["0", "1"]},
    "target": {"backend": "templieb", "r": 4},
    "map": {"0": {"0": 1}, "1": {"1": 1}}})");
  EXPECT_EQ(f.name, "spins");
  EXPECT_TRUE(f.is_injective_label_map());
  EXPECT_THROW(load_functor(R"({
    "source": {"backend": "pointed", "factors": [3], "anyonic": true},
    "target": {"backend": "pointed", "factors": [3], "anyonic": true},
    "map": {"0": {"0": 1}, "1": {"1": 1}}})"),
               Error);
  EXPECT_THROW(load_functor(R"({
    "source": {"backend": "pointed", "factors": [3], "anyonic": true},
    "target": {"backend": "pointed", "factors": [3], "anyonic": true},
    "map": {"0": {"0": 1}, "1": {"1": 1}, "2": {"0": 1}}})"),
               Error);
}
