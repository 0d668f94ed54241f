#include <gtest/gtest.h>

#include "kirbycalc/backend_templieb.hpp"
#include "kirbycalc/error.hpp"
#include "kirbycalc/manifold_library.hpp"
#include "support/oracles.hpp"

using namespace kirbycalc;

namespace {

void expect_near(Complex got, Complex want, double tol = 1e-9) {
  EXPECT_LT(std::abs(got - want), tol) << format_complex(got) << " vs " << format_complex(want);
}

}  // namespace

TEST(TLCategory, DimensionsAndTwistsMatchClosedForms) {
  for (int r = 3; r <= 7; ++r) {
    TLCategory cat(r);
    ASSERT_EQ(cat.size(), static_cast<std::size_t>(r - 1));
    for (LabelIndex i = 0; i < cat.size(); ++i) {
      expect_near(spin_dimensions(cat)[i], oracle::tl_dim(r, static_cast<int>(i)));
      expect_near(spin_twists(cat)[i], oracle::tl_twist(r, static_cast<int>(i)));
      for (LabelIndex k = 0; k < cat.size(); ++k) {
        expect_near(cat.hopf(i, k), oracle::tl_hopf(r, static_cast<int>(i), static_cast<int>(k)), 1e-8);
      }
    }
  }
}

TEST(TLCategory, LevelFourValues) {
  TLCategory cat(4);
  expect_near(cat.dims()[1], -std::sqrt(2.0));
  expect_near(cat.twists()[1], -std::pow(cat.a(), 3));
  expect_near(cat.twists()[2], -1.0);
  EXPECT_EQ(TLCategory::label_name(1), "1/2");
  EXPECT_EQ(TLCategory::label_name(2), "1");
}

TEST(TLCategory, FullCategoryIsModular) {
  for (int r = 3; r <= 7; ++r) {
    TLCategory cat(r);
    EXPECT_TRUE(cat.category()->is_modular()) << r;
    EXPECT_TRUE(transparency_tl(cat, 0));
    EXPECT_TRUE(validate_target_category(*cat.category()).valid) << r;
  }
}

TEST(TLCategory, IntegerSpinsAtLevelFourAreTransparentInside) {
  TLCategory cat(4);
  CategoryPtr sub = cat.integer_spins();
  EXPECT_EQ(sub->labels, (std::vector<std::string>{"0", "1"}));
  EXPECT_TRUE(sub->transparent[0]);
  EXPECT_TRUE(sub->transparent[1]);
  expect_near(sub->twists[1], -1.0);
  PivotalFunctorData f = cat.integer_spin_inclusion();
  EXPECT_TRUE(f.check().empty());
  EXPECT_TRUE(f.is_injective_label_map());
}

TEST(TLCategory, FromJson) {
  EXPECT_EQ(TLCategory::from_json(R"({"r": 5})").r(), 5);
  EXPECT_THROW(TLCategory::from_json(R"({"level": 5})"), Error);
  EXPECT_THROW(TLCategory(2), Error);
}

TEST(TLEvaluation, FramedUnknotGivesTwistTimesDimension) {
  TLCategory cat(5);
  const KirbyDiagram& cp2 = library_get("CP2").diagram;
  const KirbyDiagram& cp2bar = library_get("CP2bar").diagram;
  for (LabelIndex i = 0; i < cat.size(); ++i) {
    std::vector<LabelIndex> l{i};
    expect_near(evaluate_link_tl(cat, cp2, l), cat.twists()[i] * cat.dims()[i]);
    expect_near(evaluate_link_tl(cat, cp2bar, l), cat.dims()[i] / cat.twists()[i]);
  }
}

TEST(TLEvaluation, KillingByEncirclingKirbyColour) {
  TLCategory cat(4);
  const KirbyDiagram& hopf = library_get("S2xS2").diagram;
  for (LabelIndex j = 0; j < cat.size(); ++j) {
    Complex s = 0.0;
    for (LabelIndex k = 0; k < cat.size(); ++k) {
      std::vector<LabelIndex> l{j, k};
      s += cat.dims()[k] * evaluate_link_tl(cat, hopf, l);
    }
    if (j == 0) {
      expect_near(s, 4.0);
    } else {
      expect_near(s, 0.0);
    }
  }
}

TEST(TLEvaluation, MissingPlanarCode) {
  TLCategory cat(4);
  std::vector<LabelIndex> l{0, 0, 0};
  try {
    evaluate_link_tl(cat, library_get("IxRP3double").diagram, l);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kMissingPd);
  }
}

TEST(TLEvaluation, CrossingCapAndOverride) {
  const KirbyDiagram& d = library_get("S1xS1xS2").diagram;
  std::vector<LabelIndex> all_one(4, 2);
  EXPECT_NO_THROW(evaluate_link_tl(TLCategory(4), d, all_one));
  TLCategory cat(5);
  std::vector<LabelIndex> wide_labels(4, 3);
  try {
    evaluate_link_tl(cat, d, wide_labels);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kResourceLimit);
  }
  EvalOptions wide;
  wide.skein_cap = 64;
  EXPECT_NO_THROW(evaluate_link_tl(cat, d, wide_labels, wide));
}

TEST(TLEvaluation, MeridianRemovalMatchesFullBracket) {
  for (int r : {4, 5}) {
    TLCategory cat(r);
    for (const char* name : {"S1xS1xS2", "S2xS2", "S2twistS2"}) {
      const KirbyDiagram& d = library_get(name).diagram;
      const auto ids = d.component_ids();
      EvalOptions uncapped;
      uncapped.skein_cap = -1;
      std::vector<LabelIndex> l(ids.size(), 0);
      while (true) {
        SkeinDiagram s{*d.pd(), {}};
        for (std::size_t i = 0; i < ids.size(); ++i) s.cables[ids[i]] = static_cast<int>(l[i]);
        Complex full = kauffman_bracket(s, cat.a(), -1);
        for (std::size_t k = 0; k < d.two_handles().size(); ++k) {
          const auto& h = d.two_handles()[k];
          full *= ipow(cat.twists()[l[d.h1() + k]], h.framing - d.pd()->writhe(h.id));
        }
        expect_near(evaluate_link_tl(cat, d, l, uncapped), full, 1e-8);
        std::size_t k = 0;
        while (k < l.size() && ++l[k] == cat.size()) l[k++] = 0;
        if (k == l.size()) break;
      }
    }
  }
}

TEST(TLEvaluation, UnlinkedCircleIsRemoved) {
  TLCategory cat(5);
  PlanarCode pd;
  pd.crossings = {{{1, 4, 2, 3}, 1}, {{2, 4, 1, 3}, -1}};
  pd.arcs = {{1, "a"}, {2, "a"}, {3, "b"}, {4, "b"}};
  validate_planar_code(pd);
  KirbyDiagram d("split", {}, {TwoHandle{"a", 0, {}}, TwoHandle{"b", 0, {}}}, {}, pd);
  for (LabelIndex j = 0; j < cat.size(); ++j) {
    for (LabelIndex k = 0; k < cat.size(); ++k) {
      std::vector<LabelIndex> l{j, k};
      expect_near(evaluate_link_tl(cat, d, l), cat.dims()[j] * cat.dims()[k], 1e-8);
    }
  }
}

TEST(TLEvaluation, PreparedMatchesDirect) {
  TLCategory cat(5);
  const KirbyDiagram& d = library_get("S2twistS2").diagram;
  EvalOptions uncapped;
  uncapped.skein_cap = -1;
  auto prepared = cat.category()->evaluator->prepare(d, uncapped);
  for (LabelIndex i = 0; i < cat.size(); ++i) {
    for (LabelIndex k = 0; k < cat.size(); ++k) {
      std::vector<LabelIndex> l{i, k};
      expect_near(prepared->evaluate(l), evaluate_link_tl(cat, d, l, uncapped));
    }
  }
}
