#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "kstress/geometry.hpp"

namespace kstress {

PolytopeInstance simplex(int d);
/// Vertex i is +e_{i+1}, vertex i + d is -e_{i+1}.
PolytopeInstance cross_polytope(int d);
/// Moment curve at t = 1..n, facets by Gale evenness.
PolytopeInstance cyclic(int n, int d);
/// Simplex followed by `steps` stackings on facets picked by mt19937(seed).
PolytopeInstance stacked(int d, int steps, unsigned seed);
/// Boundary of conv(sigma_i + tau_{d-i}) with both simplices centred at 0 in
/// complementary coordinate blocks; 1 <= i <= d - 1.
PolytopeInstance free_sum(int i, int d);

/// Dispatch by family name: simplex{d}, cross{d}, cyclic{n,d}, stacked{d,steps,seed}, free_sum{i,d}.
PolytopeInstance generate(const std::string& family, const std::map<std::string, long long>& params);

struct ValidationReport {
  bool full_dimensional = false;
  bool facets_strict = false;     // every facet hyperplane has the rest strictly on one side
  bool closure_consistent = false;  // complex equals the brute-force facet complex
  bool simplicial = false;        // no supporting hyperplane holds more than d points
  std::vector<std::string> problems;

  bool ok() const { return full_dimensional && facets_strict && closure_consistent && simplicial; }
};

/// Runs every check and sets `instance.validated` accordingly.
ValidationReport validate(PolytopeInstance& instance);

/// Canonical text document; field order and number format are fixed.
std::string encode(const PolytopeInstance& instance);

/// Inverse of encode. Malformed input throws ParseError naming a JSON pointer
/// or byte offset. The result is not validated.
PolytopeInstance decode(std::string_view text);

PolytopeInstance read_instance(const std::string& path);
void write_instance(const PolytopeInstance& instance, const std::string& path);

/// The instances the test suite sweeps: simplex(2..6), cross(3..5),
/// cyclic(n, d) for d in 2..6 and n <= 10, stacked(3..5, 1..3 steps), and
/// every free_sum(i, d) with d <= 6.
std::vector<PolytopeInstance> standard_corpus();

/// Short name such as "cyclic(7,4)".
std::string instance_name(const PolytopeInstance& instance);

}  // namespace kstress
