#include <gtest/gtest.h>

#include "icsheaf/simplicial.hpp"
#include "oracle.hpp"

using namespace icsheaf;

namespace {

std::vector<VertexLabel> labels(int n) {
  std::vector<VertexLabel> out;
  for (int i = 0; i < n; ++i) out.emplace_back(static_cast<long long>(i));
  return out;
}

std::vector<std::vector<int>> subsets_of_size(int n, int k) {
  std::vector<std::vector<int>> out;
  for (int mask = 0; mask < (1 << n); ++mask) {
    if (__builtin_popcount(static_cast<unsigned>(mask)) != k) continue;
    std::vector<int> s;
    for (int i = 0; i < n; ++i) {
      if (mask & (1 << i)) s.push_back(i);
    }
    out.push_back(s);
  }
  return out;
}

ComplexPtr sphere_boundary(int verts) { return SimplicialComplex::create(labels(verts), subsets_of_size(verts, verts - 1)); }

ComplexPtr cone_over_triangle_cycle() {
  return SimplicialComplex::create(labels(4), {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}});
}

long long binom(int n, int k) {
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

TEST(Complex, ClosureOfTriangle) {
  auto k = SimplicialComplex::create(labels(3), {{0, 1, 2}});
  EXPECT_EQ(k->size(), 7);
  EXPECT_EQ(k->simplices_of_dim(0).size(), 3u);
  EXPECT_EQ(k->simplices_of_dim(1).size(), 3u);
  EXPECT_EQ(k->simplices_of_dim(2).size(), 1u);
}

TEST(Complex, BoundaryOfFiveSimplexCountsMatchBinomials) {
  auto k = sphere_boundary(6);
  EXPECT_EQ(k->size(), 62);
  for (int d = 0; d <= 4; ++d) EXPECT_EQ(static_cast<long long>(k->simplices_of_dim(d).size()), binom(6, d + 1));
}

TEST(Complex, DuplicateVertexRejected) {
  EXPECT_THROW(load_complex(nlohmann::json::parse(R"({"vertices":[0,1],"maximal_simplices":[[0,0,1]]})")),
               std::invalid_argument);
}

TEST(Complex, MixedLabelsAndLookup) {
  auto k = load_complex(nlohmann::json::parse(R"({"vertices":["a",2,1],"maximal_simplices":[["a",1,2]]})"));
  EXPECT_EQ(label_to_string(k->labels()[0]), "1");
  EXPECT_EQ(label_to_string(k->labels()[2]), "a");
  auto id = k->find_labels({VertexLabel(std::string("a")), VertexLabel(1LL)});
  ASSERT_TRUE(id.has_value());
  EXPECT_EQ(k->tuple_string(*id), "[1,a]");
}

TEST(Complex, BoundaryOfBoundaryVanishes) {
  auto k = sphere_boundary(6);
  for (int t = 0; t < k->size(); ++t) {
    if (k->dim_of(t) < 2) continue;
    std::map<int, int> sum;
    for (const auto& f : k->faces(t)) {
      for (const auto& g : k->faces(f.other)) sum[g.other] += f.sign * g.sign;
    }
    for (const auto& [g, v] : sum) EXPECT_EQ(v, 0);
  }
}

TEST(Star, VertexOfTetrahedronBoundary) {
  auto k = sphere_boundary(4);
  SimplexSet st = open_star(k, *k->find({0}));
  EXPECT_EQ(st.size(), 7);
  EXPECT_TRUE(st.is_up_closed());
}

TEST(Star, ApexOfConeAndTopSimplex) {
  auto k = cone_over_triangle_cycle();
  SimplexSet st = open_star(k, *k->find({0}));
  EXPECT_EQ(st.size(), 7);
  EXPECT_EQ(down_closure(st).size(), k->size());
  int top = *k->find({0, 1, 2});
  EXPECT_EQ(open_star(k, top).members(), std::vector<int>{top});
}

TEST(Closure, Basics) {
  auto k = cone_over_triangle_cycle();
  EXPECT_TRUE(down_closure(SimplexSet::none(k)).empty());
  EXPECT_EQ(down_closure(SimplexSet(k, {*k->find({1, 2})})).size(), 3);
}

TEST(Link, TriangleInFourSphere) {
  auto k = sphere_boundary(6);
  auto link = link_of(k, *k->find({0, 1, 2}));
  EXPECT_EQ(link->vertex_count(), 3);
  EXPECT_EQ(link->size(), 6);
  EXPECT_EQ(oracle::cochain_cohomology(*link), (std::map<int, int>{{0, 1}, {1, 1}}));
}

TEST(Link, FacetOfClosedSurfaceIsEmpty) {
  auto k = sphere_boundary(4);
  EXPECT_EQ(link_of(k, *k->find({0, 1, 2}))->size(), 0);
}

TEST(Link, VertexOfTwoSphereIsCycle) {
  auto k = sphere_boundary(4);
  auto link = link_of(k, *k->find({3}));
  EXPECT_EQ(link->size(), 6);
  EXPECT_EQ(oracle::cochain_cohomology(*link), (std::map<int, int>{{0, 1}, {1, 1}}));
}

TEST(Components, Examples) {
  auto two = SimplicialComplex::create(labels(6), {{0, 1, 2}, {3, 4, 5}});
  EXPECT_EQ(components_of(SimplexSet::all(two)).size(), 2u);
  auto k = sphere_boundary(4);
  SimplexSet rest = SimplexSet::all(k).minus(open_star(k, *k->find({0})));
  EXPECT_EQ(components_of(rest).size(), 1u);
  EXPECT_TRUE(components_of(SimplexSet::none(k)).empty());
}

TEST(Chains, TriangleClosure) {
  auto k = SimplicialComplex::create(labels(3), {{0, 1, 2}});
  SimplexSet all = SimplexSet::all(k);
  EXPECT_EQ(order_chains(all, 2).size(), 6u);
  EXPECT_TRUE(order_chains(all, 3).empty());
  SimplexSet one(k, {0});
  EXPECT_EQ(order_chains(one, 0), (std::vector<std::vector<int>>{{0}}));
}

TEST(SimplexSetOps, ClosureFlags) {
  auto k = sphere_boundary(4);
  EXPECT_EQ(SimplexSet::all(k).closure_flag(), ClosureFlag::kClopen);
  EXPECT_EQ(SimplexSet(k, {*k->find({0})}).closure_flag(), ClosureFlag::kDownClosed);
  EXPECT_EQ(SimplexSet(k, {*k->find({0, 1, 2})}).closure_flag(), ClosureFlag::kUpClosed);
  EXPECT_EQ(SimplexSet(k, {*k->find({0, 1})}).closure_flag(), ClosureFlag::kNeither);
}

TEST(Cohomology, SpheresAgreeWithOracle) {
  Field q = Field::rationals();
  for (int v = 3; v <= 7; ++v) {
    auto k = sphere_boundary(v);
    auto lib = simplicial_cohomology(*k, q);
    EXPECT_EQ(lib, oracle::cochain_cohomology(*k));
    EXPECT_EQ(lib, (std::map<int, int>{{0, 1}, {v - 2, 1}}));
  }
  EXPECT_EQ(simplicial_cohomology(*sphere_boundary(4), q, true), (std::map<int, int>{{2, 1}}));
}
