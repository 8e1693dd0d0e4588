#include <gtest/gtest.h>

#include "icsheaf/bundled.hpp"
#include "icsheaf/stratify.hpp"
#include "oracle.hpp"

using namespace icsheaf;
using nlohmann::json;

namespace {

std::size_t at(int i) { return static_cast<std::size_t>(i); }

ComplexPtr four_sphere() {
  return load_complex(json::parse(
      R"({"vertices":[0,1,2,3,4,5],"maximal_simplices":[[1,2,3,4,5],[0,2,3,4,5],[0,1,3,4,5],[0,1,2,4,5],[0,1,2,3,5],[0,1,2,3,4]]})"));
}

int id_of(const ComplexPtr& k, std::vector<long long> labels) {
  std::vector<VertexLabel> l(labels.begin(), labels.end());
  return *k->find_labels(l);
}

// U_k and W_k evaluated straight from the defining unions.
void expect_formulas(const Stratification& strat, const OpenFiltration& f) {
  int n = strat.n();
  OpenStrata os = compute_open_strata(strat);
  auto piece = [&](int m, int k) { return os.X[at(m)].minus(strat.level(m - k)); };
  for (int k = 1; k <= n + 1; ++k) {
    SimplexSet w = SimplexSet::none(strat.complex());
    for (int m = n - k + 2; m <= n; ++m) w = w.unite(piece(m, m - n + k));
    SimplexSet u = w;
    for (int m = 1; m <= n - k + 1; ++m) u = u.unite(piece(m, 1));
    EXPECT_EQ(f.W[at(k)], w) << "W_" << k;
    EXPECT_EQ(f.U[at(k)], u) << "U_" << k;
  }
}

}  // namespace

TEST(Stratification, TrivialOnManifold) {
  auto k = four_sphere();
  Stratification s = trivial_stratification(k);
  EXPECT_EQ(s.n(), 2);
  ASSERT_EQ(s.strata().size(), 1u);
  EXPECT_TRUE(s.strata()[0].is_open);
  EXPECT_EQ(s.strata()[0].complex_dim, 2);
  OpenFiltration f = compute_open_filtration(s);
  for (int kk = 1; kk <= 3; ++kk) {
    EXPECT_EQ(f.U[at(kk)], SimplexSet::all(k).minus(s.level(2 - kk))) << kk;
  }
  EXPECT_EQ(f.U, naive_filtration(s).U);
}

TEST(Stratification, WedgeStrata) {
  auto b = oracle::space("wedge");
  const auto& s = b.stratification;
  ASSERT_EQ(s.strata().size(), 3u);
  int open2 = 0, open1 = 0, points = 0;
  for (const auto& st : s.strata()) {
    if (st.complex_dim == 2 && st.is_open) open2 = st.cells.size();
    if (st.complex_dim == 1 && st.is_open) open1 = st.cells.size();
    if (st.complex_dim == 0 && !st.is_open) points = st.cells.size();
  }
  EXPECT_EQ(open2, 61);
  EXPECT_EQ(open1, 13);
  EXPECT_EQ(points, 1);
}

TEST(Stratification, LoneEdgeViolatesHomogeneity) {
  auto k = load_complex(json::parse(R"({"vertices":[0,1,2,3],"maximal_simplices":[[0,1,2],[2,3]]})"));
  json doc = {{"levels", {{"1", json::array({json::array({0, 1, 2}), json::array({2, 3})})}}}};
  try {
    load_stratification(k, doc);
    FAIL() << "expected an error";
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("dimensional homogeneity"), std::string::npos);
  }
}

TEST(Stratification, MissingLevelCopiesTheLevelBelow) {
  // X_1 = X_0 = the two cone points.
  auto b = oracle::space("susp-s1xs2");
  json doc = b.stratification.to_json();
  doc["levels"].erase("1");
  Stratification again = load_stratification(b.complex, doc);
  EXPECT_EQ(again.hash(), b.stratification.hash());
}

TEST(OpenStrata, WedgeModel) {
  auto b = oracle::space("wedge");
  OpenStrata os = compute_open_strata(b.stratification);
  EXPECT_EQ(os.U[1].size(), 13);
  EXPECT_EQ(os.X[1].size(), 14);
  EXPECT_EQ(os.U[2].size(), 61);
  EXPECT_EQ(os.X[2].size(), 62);
  EXPECT_TRUE(os.U[1].is_up_closed());
  EXPECT_TRUE(os.X[2].is_down_closed());
}

TEST(OpenFiltration, WedgeModel) {
  auto b = oracle::space("wedge");
  const auto& k = b.complex;
  OpenFiltration f = compute_open_filtration(b.stratification);
  int p = id_of(k, {6});
  SimplexSet all_but_p = SimplexSet::all(k).minus(SimplexSet(k, {p}));
  EXPECT_EQ(f.U[1], all_but_p);
  EXPECT_EQ(f.U[2], all_but_p);
  EXPECT_EQ(f.U[3], SimplexSet::all(k));
  EXPECT_TRUE(f.W[1].empty());
  // W_2 = X^2 - X_0 by the defining union.
  EXPECT_EQ(f.W[2].size(), 61);
  expect_formulas(b.stratification, f);
}

TEST(OpenFiltration, NaiveStrictlyLargerOnFakeSurface) {
  auto b = oracle::space("fake-surface");
  OpenFiltration canon = compute_open_filtration(b.stratification);
  OpenFiltration naive = naive_filtration(b.stratification);
  EXPECT_TRUE(canon.U[2].subset_of(naive.U[2]));
  EXPECT_GT(naive.U[2].size(), canon.U[2].size());
  EXPECT_EQ(naive.U[2], SimplexSet::all(b.complex));
  EXPECT_EQ(naive.U[2].minus(canon.U[2]).members(), std::vector<int>{id_of(b.complex, {6})});
}

TEST(OpenFiltration, LemmasOnBundledAndRandomStratifications) {
  int cases = 0;
  for (const auto& name : bundled_names()) {
    auto b = oracle::space(name);
    for (int seed = 0; seed <= 40; ++seed) {
      Stratification s = seed == 0 ? b.stratification : refine(b.stratification, "random:" + std::to_string(seed));
      OpenFiltration f = compute_open_filtration(s);
      for (const auto& l : check_filtration_lemmas(s, f)) EXPECT_TRUE(l.holds) << name << " " << seed << " " << l.name;
      expect_formulas(s, f);
      ++cases;
    }
  }
  EXPECT_GE(cases, 200);
}

TEST(Refinement, Examples) {
  auto b = oracle::space("wedge");
  const auto& s = b.stratification;
  auto self = is_refinement(s, s);
  EXPECT_TRUE(self.is_refinement);
  for (std::size_t i = 0; i < self.coarse_of_fine.size(); ++i) EXPECT_EQ(self.coarse_of_fine[i], static_cast<int>(i));
  auto points = fake_point_candidates(s);
  ASSERT_GE(points.size(), 2u);
  Stratification a = add_fake_point(s, points[0]);
  Stratification c = add_fake_point(s, points[1]);
  EXPECT_TRUE(is_refinement(a, s).is_refinement);
  EXPECT_FALSE(is_refinement(s, a).is_refinement);
  EXPECT_FALSE(is_refinement(a, c).is_refinement);
}

TEST(Refinement, RandomRecipesAreDeterministic) {
  auto b = oracle::space("susp-s1xs2");
  EXPECT_EQ(refine(b.stratification, "random:7").hash(), refine(b.stratification, "random:7").hash());
  EXPECT_THROW(refine(b.stratification, "bogus"), std::invalid_argument);
}

TEST(Links, MinimalStratificationsPassTheHeuristic) {
  Field q = Field::rationals();
  for (const auto& name : bundled_names()) {
    auto b = oracle::space(name);
    EXPECT_TRUE(check_links(b.stratification, q).empty()) << name;
  }
}
