#include <gtest/gtest.h>

#include "json.hpp"

#include "kirbycalc/backend_pointed.hpp"
#include "kirbycalc/backend_templieb.hpp"
#include "kirbycalc/error.hpp"
#include "kirbycalc/invariant_engine.hpp"
#include "kirbycalc/manifold_library.hpp"
#include "support/oracles.hpp"

using namespace kirbycalc;

namespace {

const KirbyDiagram& lib(const std::string& name) { return library_get(name).diagram; }

void expect_near(Complex got, Complex want, double tol = 1e-9) {
  EXPECT_LT(std::abs(got - want), tol) << format_complex(got) << " vs " << format_complex(want);
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::kInvalidArgument;
}

PivotalFunctorData z5_identity() { return identity_functor(PointedCategory::anyonic(5).category()); }

}  // namespace

TEST(Engine, PointedZ5Values) {
  PivotalFunctorData f = z5_identity();
  expect_near(invariant(f, lib("S4")).value, 1.0);
  expect_near(invariant(f, lib("S1xS3")).value, 5.0);
  expect_near(invariant(f, lib("S1xS1xS2")).value, 5.0);
  expect_near(invariant(f, lib("S2xS2")).value, 0.2);
  expect_near(invariant(f, lib("CP2")).value, oracle::gauss_sum(5) / 5.0);
  EXPECT_NEAR(std::norm(cp2_value(f)), 0.2, 1e-12);
  expect_near(cp2bar_value(f), std::conj(cp2_value(f)));
}

TEST(Engine, ResultMetadata) {
  InvariantResult r = invariant(z5_identity(), lib("S1xS1xS2"));
  EXPECT_EQ(r.h1, 2);
  EXPECT_EQ(r.h2, 2);
  EXPECT_EQ(r.chi, 0);
  EXPECT_EQ(r.backend, "pointed");
  EXPECT_EQ(r.diagram, "S1xS1xS2");
  expect_near(r.normalization, 25.0);
  expect_near(r.numerator / r.normalization, r.value);
}

TEST(Engine, PredictSimplyConnected) {
  PivotalFunctorData f = z5_identity();
  for (const char* name : {"S4", "CP2", "CP2bar", "S2xS2", "S2twistS2", "CP2#CP2bar"}) {
    const LibraryEntry& e = library_get(name);
    expect_near(predict_simply_connected(f, e.chi, e.sigma), invariant(f, e.diagram).value);
  }
  EXPECT_EQ(kind_of([&] { predict_simply_connected(f, 3, 0); }), ErrorKind::kInvalidArgument);
  TLCategory tl(4);
  EXPECT_EQ(kind_of([&] { predict_simply_connected(tl.integer_spin_inclusion(), 3, 1); }),
            ErrorKind::kNonInvertibleCp2);
}

TEST(Engine, NonmodularZ4) {
  PivotalFunctorData id = identity_functor(PointedCategory::anyonic(4).category());
  expect_near(invariant(id, lib("S2xS2")).value, 0.5);
  expect_near(invariant(id, lib("S1xS1xS2")).value, 2.0);
  PivotalFunctorData h = diagonal_into_hyperbolic(4);
  expect_near(invariant(h, lib("S1xS1xS2")).value, 8.0);
  expect_near(invariant(h, lib("S2xS2")).value, 0.5);
  CategoryConstants k = category_constants(h);
  expect_near(k.omega_c, 4.0);
  expect_near(k.omega_c_prime, 2.0);
  expect_near(k.lambda_c_prime, 2.0);
  expect_near(k.omega_f_prime, 1.0);
}

TEST(Engine, RejectsInvalidTargets) {
  for (int n : {2, 6}) {
    PivotalFunctorData f = identity_functor(PointedCategory::anyonic(n).category());
    EXPECT_EQ(kind_of([&] { invariant(f, lib("S4")); }), ErrorKind::kInvalidTarget) << n;
  }
}

TEST(Engine, CraneYetterNeedsInjectiveLabelMap) {
  PivotalFunctorData f = z5_identity();
  expect_near(crane_yetter_statesum_value(f, lib("S1xS3")), 1.0);
  expect_near(crane_yetter_statesum_value(f, lib("S4")), 5.0);
  PointedCategory z3 = PointedCategory::anyonic(3);
  PivotalFunctorData trivial = pointed_functor(z3, z3, {0, 0, 0}, "trivial");
  EXPECT_EQ(kind_of([&] { crane_yetter_statesum_value(trivial, lib("S4")); }),
            ErrorKind::kNotInjectiveLabelMap);
}

TEST(Engine, PetitAndGroundState) {
  PivotalFunctorData f = z5_identity();
  expect_near(petit_I0(f, lib("S4")), 1.0);
  expect_near(petit_I0(f, lib("S1xS3")), 5.0 * std::pow(std::sqrt(5.0) / 5.0, 2));
  expect_near(ground_state_dimension(f, lib("S1xS1xS2")), 1.0);
}

TEST(Engine, TemperleyLiebIntegerSpins) {
  TLCategory tl(4);
  PivotalFunctorData f = tl.integer_spin_inclusion();
  expect_near(invariant(f, lib("S4")).value, 1.0, 1e-6);
  expect_near(invariant(f, lib("S1xS3")).value, 2.0, 1e-6);
  expect_near(invariant(f, lib("S1xS1xS2")).value, 4.0, 1e-6);
  expect_near(ground_state_dimension(f, lib("S1xS1xS2")), 2.0, 1e-6);
  PivotalFunctorData wide_labels = identity_functor(TLCategory(5).category());
  EXPECT_EQ(kind_of([&] { invariant(wide_labels, lib("S1xS1xS2")); }), ErrorKind::kResourceLimit);
  EXPECT_EQ(kind_of([&] { invariant(f, lib("IxRP3double")); }), ErrorKind::kMissingPd);
}

TEST(Engine, ParallelSumIsBitStable) {
  PivotalFunctorData f = identity_functor(PointedCategory::anyonic(7).category());
  InvariantOptions serial;
  InvariantOptions parallel;
  parallel.jobs = 4;
  for (const auto& name : library_list()) {
    InvariantResult a = invariant(f, lib(name), serial);
    InvariantResult b = invariant(f, lib(name), parallel);
    EXPECT_EQ(a.value, b.value) << name;
  }
}

TEST(Engine, EmptyDiagramNumeratorIsOne) {
  EXPECT_EQ(numerator(z5_identity(), KirbyDiagram()), Complex(1.0));
}

TEST(Engine, DijkgraafWittenCounts) {
  FiniteGroup s3 = FiniteGroup::symmetric3();
  InvariantResult r = dw_invariant(lib("S1xS1xS2"), s3, 2);
  ASSERT_TRUE(r.exact);
  EXPECT_EQ(*r.exact, Rational(18));
  EXPECT_EQ(r.backend, "group");
  CategoryConstants k = group_constants(s3);
  EXPECT_EQ(k.lambda_c_prime, Complex(3.0));
}

TEST(Engine, ClosedFormEvaluation) {
  CategoryConstants k{2.0, 3.0, 5.0, 0.0, 0.0, 7.0, 11.0};
  ClosedForm f{1, -1, 2, 1, 0};
  expect_near(f.evaluate(k), 2.0 / 3.0 * 25.0 * 7.0);
  EXPECT_EQ(ClosedForm{}.describe(), "1");
  EXPECT_EQ((ClosedForm{2, 0, 0, 0, 0}).describe(), "dimOmega_C^2");
}

TEST(Engine, JsonSerialisation) {
  const std::string text = result_to_json(invariant(z5_identity(), lib("S2xS2")));
  auto j = nlohmann::json::parse(text);
  EXPECT_NEAR(j["value"][0].get<double>(), 0.2, 1e-12);
  EXPECT_EQ(j["value"][1].get<double>(), 0.0);
  EXPECT_EQ(j["diagram"], "S2xS2");
  EXPECT_LT(text.find("\"backend\""), text.find("\"chi\""));
  EXPECT_EQ(nlohmann::json::parse(result_to_json(dw_invariant(lib("S1xS3"), FiniteGroup::symmetric3())))["exact"],
            "6");
}

TEST(Engine, Multiplicative) {
  PivotalFunctorData f = z5_identity();
  auto names = library_list();
  for (std::size_t i = 0; i < names.size(); i += 2) {
    for (std::size_t j = 1; j < names.size(); j += 3) {
      const KirbyDiagram sum = connected_sum(lib(names[i]), lib(names[j]));
      expect_near(invariant(f, sum).value, invariant(f, lib(names[i])).value * invariant(f, lib(names[j])).value);
    }
  }
}
