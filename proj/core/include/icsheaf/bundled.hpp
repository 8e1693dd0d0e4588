#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "icsheaf/local_system.hpp"
#include "icsheaf/stratify.hpp"

namespace icsheaf {

// A demonstration space with its minimal stratification and the constant
// rank-one local system.
struct BundledSpace {
  std::string name;
  std::string description;
  ComplexPtr complex;
  Stratification stratification;
  LocalSystemSpec local;
};

// wedge, pinched-torus, susp-s1xs2, nonpure-wedge, fake-surface
const std::vector<std::string>& bundled_names();
BundledSpace make_bundled(const std::string& name);

// Staircase triangulation of |a| x |b|; product vertex (i, j) gets index
// i * b.vertex_count() + j. Vertex orders are the complexes' label orders.
ComplexPtr product_complex(const SimplicialComplex& a, const SimplicialComplex& b);

// Vertices of open strata; the open star then stays inside the stratum.
std::vector<int> fake_point_candidates(const Stratification& strat);
// Vertex quadruples spanning a boundary of a tetrahedron in the 2-skeleton
// whose closure lies in an open stratum of complex dimension at least 2.
std::vector<std::vector<int>> fake_sphere_candidates(const Stratification& strat);
Stratification add_fake_point(const Stratification& strat, int vertex);
Stratification add_fake_sphere(const Stratification& strat, const std::vector<int>& vertices);
// extra-point | fake-sphere | random:<seed>
Stratification refine(const Stratification& strat, const std::string& recipe);

// Writes complex.json, stratification.json and local_system.json.
void write_bundled(const BundledSpace& space, const std::filesystem::path& dir);
// Reads a directory written by write_bundled.
BundledSpace read_bundled(const std::string& name, const std::filesystem::path& dir);
// Cached materialization: generates the files under cache/<name> on first
// use and always reads the result back from disk.
BundledSpace load_bundled(const std::string& name, const std::filesystem::path& cache);

}  // namespace icsheaf
