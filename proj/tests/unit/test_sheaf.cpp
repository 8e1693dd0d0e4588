#include <gtest/gtest.h>

#include "icsheaf/local_system.hpp"
#include "icsheaf/sheaf.hpp"
#include "oracle.hpp"

using namespace icsheaf;
using nlohmann::json;

namespace {

const Field kQ = Field::rationals();

ComplexPtr labelled(const char* doc) { return load_complex(json::parse(doc)); }

int id_of(const ComplexPtr& k, std::vector<long long> labels) {
  std::vector<VertexLabel> l(labels.begin(), labels.end());
  return *k->find_labels(l);
}

SheafComplex constant(const SimplexSet& domain, int degree, int rank = 1) {
  return from_sheaf(make_local_system(kQ, domain, rank), degree);
}

// Disk as the cone (apex 0) over the 3-cycle 1-2-3.
ComplexPtr disk() { return labelled(R"({"vertices":[0,1,2,3],"maximal_simplices":[[0,1,2],[0,1,3],[0,2,3]]})"); }

}  // namespace

TEST(SheafComplex, ShiftAndSum) {
  auto k = disk();
  SheafComplex c = constant(SimplexSet::all(k), 0);
  SheafComplex s = shift(kQ, c, 2);
  for (int sigma = 0; sigma < k->size(); ++sigma) {
    EXPECT_EQ(stalk_cohomology(kQ, s, sigma), (DegreeDims{{-2, 1}}));
  }
  EXPECT_EQ(stalk_table(kQ, shift(kQ, c, 0)), stalk_table(kQ, c));
  SheafComplex sum = direct_sum(s, c);
  EXPECT_EQ(stalk_cohomology(kQ, sum, 0), (DegreeDims{{-2, 1}, {0, 1}}));
  verify_complex(kQ, sum);
}

TEST(SheafComplex, SumOfShiftedLocalSystemsOnWedge) {
  auto b = oracle::space("wedge");
  OpenStrata os = compute_open_strata(b.stratification);
  SheafComplex l2 = constant(os.U[2], -2);
  SheafComplex l1 = constant(os.U[1], -1);
  SimplexSet u1 = os.U[1].unite(os.U[2]);
  SheafComplex sum = direct_sum(extend_by_zero_closed(l2, u1), extend_by_zero_closed(l1, u1));
  for (int s : os.U[2].members()) EXPECT_EQ(stalk_cohomology(kQ, sum, s), (DegreeDims{{-2, 1}}));
  for (int s : os.U[1].members()) EXPECT_EQ(stalk_cohomology(kQ, sum, s), (DegreeDims{{-1, 1}}));
}

TEST(SheafComplex, ExtendByZeroIsSkyscraperAndRestrictsBack) {
  auto k = labelled(R"({"vertices":[0,1,2],"maximal_simplices":[[0,1,2]]})");
  int v = id_of(k, {0});
  SimplexSet point(k, {v});
  CellularSheaf sky;
  sky.domain = point;
  sky.stalk_dim.assign(static_cast<std::size_t>(k->size()), 0);
  sky.stalk_dim[static_cast<std::size_t>(v)] = 1;
  SheafComplex s = from_sheaf(sky, 0);
  SheafComplex e = extend_by_zero_closed(s, SimplexSet::all(k));
  for (int sigma = 0; sigma < k->size(); ++sigma) {
    EXPECT_EQ(stalk_cohomology(kQ, e, sigma).size(), sigma == v ? 1u : 0u);
  }
  EXPECT_EQ(stalk_table(kQ, restrict_closed(e, point)), stalk_table(kQ, s));
}

TEST(Pushforward, UnitOnSameDomain) {
  auto b = oracle::space("wedge");
  SimplexSet all = SimplexSet::all(b.complex);
  SheafComplex c = constant(all, -2);
  EXPECT_EQ(stalk_table(kQ, pushforward_open(kQ, c, all)), stalk_table(kQ, c));
}

TEST(Pushforward, DiskApexSeesCircle) {
  auto k = disk();
  int apex = id_of(k, {0});
  SimplexSet u = SimplexSet::all(k).minus(SimplexSet(k, {apex}));
  SheafComplex r = pushforward_open(kQ, constant(u, 0), SimplexSet::all(k));
  EXPECT_EQ(stalk_cohomology(kQ, r, apex), (DegreeDims{{0, 1}, {1, 1}}));
  EXPECT_EQ(stalk_cohomology(kQ, r, id_of(k, {0, 1})), (DegreeDims{{0, 1}}));
}

TEST(Pushforward, PinchedTorusSingularVertexAndTruncation) {
  auto b = oracle::space("pinched-torus");
  OpenStrata os = compute_open_strata(b.stratification);
  int p = id_of(b.complex, {0});
  SheafComplex r = pushforward_open(kQ, constant(os.U[1], -1), SimplexSet::all(b.complex));
  // Link of the pinch point: two disjoint circles.
  auto link = link_of(b.complex, p);
  auto oracle_link = oracle::cochain_cohomology(*link);
  DegreeDims shifted;
  for (const auto& [q, d] : oracle_link) shifted[q - 1] = d;
  EXPECT_EQ(stalk_cohomology(kQ, r, p), shifted);
  EXPECT_EQ(stalk_cohomology(kQ, r, p), (DegreeDims{{-1, 2}, {0, 2}}));
  EXPECT_EQ(stalk_cohomology(kQ, truncate_le(kQ, r, -1), p), (DegreeDims{{-1, 2}}));
}

TEST(Truncation, ContractOnBundledPushforwards) {
  for (const auto& name : bundled_names()) {
    auto b = oracle::space(name);
    OpenStrata os = compute_open_strata(b.stratification);
    int n = b.stratification.n();
    SheafComplex r = pushforward_open(kQ, constant(os.U[n], -n), SimplexSet::all(b.complex));
    StalkTable before = stalk_table(kQ, r);
    for (int a = -n - 1; a <= 1; ++a) {
      SheafComplex t = truncate_le(kQ, r, a);
      verify_complex(kQ, t);
      StalkTable after = stalk_table(kQ, t);
      for (const auto& [s, dims] : before) {
        DegreeDims expect;
        for (const auto& [q, d] : dims) {
          if (q <= a) expect[q] = d;
        }
        DegreeDims got = after.count(s) ? after.at(s) : DegreeDims{};
        EXPECT_EQ(got, expect) << name << " a=" << a;
      }
      for (const auto& [s, dims] : after) EXPECT_TRUE(before.count(s));
    }
  }
}

TEST(Truncation, NoOpBelowRange) {
  auto k = disk();
  SheafComplex c = constant(SimplexSet::all(k), -1);
  EXPECT_EQ(stalk_table(kQ, truncate_le(kQ, c, 3)), stalk_table(kQ, c));
}

TEST(Costalk, ConstantOnManifoldConcentratedInTopDegree) {
  auto s4 = labelled(
      R"({"vertices":[0,1,2,3,4,5],"maximal_simplices":[[1,2,3,4,5],[0,2,3,4,5],[0,1,3,4,5],[0,1,2,4,5],[0,1,2,3,5],[0,1,2,3,4]]})");
  SheafComplex c = constant(SimplexSet::all(s4), 0);
  for (int sigma = 0; sigma < s4->size(); ++sigma) EXPECT_EQ(cell_costalk(kQ, c, sigma), (DegreeDims{{4, 1}}));
}

TEST(Hypercohomology, ConstantSheaves) {
  auto k = disk();
  EXPECT_EQ(hypercohomology(kQ, constant(SimplexSet::all(k), 0, 3), SimplexSet::all(k)), (DegreeDims{{0, 3}}));
  auto s2 = labelled(R"({"vertices":[0,1,2,3],"maximal_simplices":[[0,1,2],[0,1,3],[0,2,3],[1,2,3]]})");
  DegreeDims h = hypercohomology(kQ, constant(SimplexSet::all(s2), 0), SimplexSet::all(s2));
  EXPECT_EQ(h, oracle::cochain_cohomology(*s2));
}

TEST(LocalSystem, SignSystemOnCircle) {
  auto c = labelled(R"({"vertices":[0,1,2],"maximal_simplices":[[0,1],[1,2],[0,2]]})");
  json doc = {{"rank", 1}, {"matrices", json::array({{{"face", {0}}, {"coface", {0, 1}}, {"matrix", {{"-1"}}}}})}};
  LocalSystemSpec spec = load_local_system(c, kQ, doc);
  CellularSheaf f = make_local_system(kQ, SimplexSet::all(c), spec, 1);
  SheafComplex s = from_sheaf(f, 0);
  // Nontrivial monodromy kills all cohomology of the circle.
  EXPECT_TRUE(hypercohomology(kQ, s, SimplexSet::all(c)).empty());
  json bad = {{"rank", 1}, {"matrices", json::array({{{"face", {0}}, {"coface", {0, 1}}, {"matrix", {{"0"}}}}})}};
  try {
    load_local_system(c, kQ, bad);
    FAIL() << "expected an error";
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("not invertible"), std::string::npos);
  }
}
