#include <gtest/gtest.h>

#include "kirbycalc/backend_dw.hpp"
#include "kirbycalc/error.hpp"
#include "kirbycalc/manifold_library.hpp"
#include "support/oracles.hpp"

using namespace kirbycalc;

namespace {

std::vector<FiniteGroup> small_groups() {
  return {FiniteGroup::cyclic(1), FiniteGroup::cyclic(2), FiniteGroup::cyclic(5), FiniteGroup::symmetric3(),
          FiniteGroup::dihedral4(), FiniteGroup::quaternion8()};
}

}  // namespace

TEST(FiniteGroup, BuiltinsAreGroups) {
  EXPECT_EQ(FiniteGroup::symmetric3().order(), 6);
  EXPECT_EQ(FiniteGroup::builtin("D4").order(), 8);
  EXPECT_EQ(FiniteGroup::builtin("q8").conjugacy_classes().size(), 5u);
  EXPECT_EQ(FiniteGroup::builtin("d4").conjugacy_classes().size(), 5u);
  EXPECT_EQ(FiniteGroup::builtin("s3").conjugacy_classes().size(), 3u);
  EXPECT_EQ(FiniteGroup::builtin("z7").conjugacy_classes().size(), 7u);
  EXPECT_THROW(FiniteGroup::builtin("a5"), Error);
}

TEST(FiniteGroup, QuaternionRelations) {
  FiniteGroup q = FiniteGroup::quaternion8();
  // i^2 = j^2 = k^2 = ijk = -1, encoded as 4.
  EXPECT_EQ(q.mul(1, 1), 4);
  EXPECT_EQ(q.mul(2, 2), 4);
  EXPECT_EQ(q.mul(q.mul(1, 2), 3), 4);
}

TEST(FiniteGroup, RejectsBadTables) {
  EXPECT_THROW(FiniteGroup("bad", {{0, 1}, {1, 1}}), Error);
  EXPECT_THROW(FiniteGroup("bad", {{1, 0}, {0, 1}}), Error);
  EXPECT_THROW(FiniteGroup::from_json(R"({"order": 2, "table": [[0, 1]]})"), Error);
  FiniteGroup z2 = FiniteGroup::from_json(R"({"order": 2, "table": [[0, 1], [1, 0]]})", "mine");
  EXPECT_EQ(z2.order(), 2);
  EXPECT_EQ(z2.inv(1), 1);
}

TEST(HomCount, MatchesBruteForceOnLibrary) {
  for (const auto& g : small_groups()) {
    for (const auto& name : library_list()) {
      GroupPresentation p = fundamental_group(library_get(name).diagram);
      if (p.generators.size() > 3) continue;
      EXPECT_EQ(count_homomorphisms(p, g), oracle::brute_force_homs(p, g)) << name << " " << g.name();
    }
  }
}

TEST(HomCount, TorusIsCommutingPairs) {
  const KirbyDiagram& d = library_get("S1xS1xS2").diagram;
  for (const auto& g : small_groups()) {
    EXPECT_EQ(count_flat_connections(d, g), oracle::commuting_pairs(g)) << g.name();
    EXPECT_EQ(count_flat_connections(d, g), static_cast<std::uint64_t>(g.order()) * g.conjugacy_classes().size());
  }
}

TEST(HomCount, ParallelMatchesSerial) {
  GroupPresentation free3{{"a", "b", "c"}, {{{"a", 1}, {"b", 1}, {"a", -1}, {"b", -1}}}};
  FiniteGroup d4 = FiniteGroup::dihedral4();
  EXPECT_EQ(count_homomorphisms(free3, d4, 4), count_homomorphisms(free3, d4, 1));
  EXPECT_EQ(count_homomorphisms(free3, d4, 1), oracle::brute_force_homs(free3, d4));
}

TEST(HomCount, ConjugacyClassesOfHomsFromZ) {
  GroupPresentation z{{"t"}, {}};
  EXPECT_EQ(count_hom_conjugacy_classes(z, FiniteGroup::symmetric3()), 3u);
  EXPECT_EQ(count_hom_conjugacy_classes(z, FiniteGroup::quaternion8()), 5u);
}

TEST(GroupHom, StandardMaps) {
  GroupHomData sign = sign_homomorphism_s3();
  EXPECT_EQ(sign.kernel_size(), 3);
  EXPECT_EQ(sign.image_group().order(), 2);
  GroupHomData mod2 = reduction_mod2_z4();
  EXPECT_EQ(mod2.kernel_size(), 2);
  GroupHomData bad{FiniteGroup::cyclic(3), FiniteGroup::cyclic(2), {0, 1, 1}};
  EXPECT_THROW(bad.validate(), Error);
}

TEST(GroupHom, ReducesToImageSubgroup) {
  for (const auto& phi : {sign_homomorphism_s3(), reduction_mod2_z4()}) {
    FiniteGroup image = phi.image_group();
    for (const auto& name : library_list()) {
      const KirbyDiagram& d = library_get(name).diagram;
      EXPECT_EQ(hom_invariant(d, phi), Rational(static_cast<std::int64_t>(count_flat_connections(d, image))))
          << name;
    }
  }
}

TEST(GroupHom, IdentityGivesFlatConnectionCount) {
  FiniteGroup s3 = FiniteGroup::symmetric3();
  for (const auto& name : library_list()) {
    const KirbyDiagram& d = library_get(name).diagram;
    EXPECT_EQ(hom_invariant(d, identity_homomorphism(s3)),
              Rational(static_cast<std::int64_t>(count_flat_connections(d, s3))));
  }
}

TEST(GroupHom, NormalizedPartitionFunction) {
  EXPECT_EQ(normalized_partition_function(library_get("S1xS3").diagram, FiniteGroup::symmetric3()), Rational(1));
  EXPECT_EQ(normalized_partition_function(library_get("S4").diagram, FiniteGroup::symmetric3()), Rational(1, 6));
}
