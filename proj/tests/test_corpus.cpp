#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "kstress/corpus.hpp"
#include "kstress/error.hpp"
#include "oracles.hpp"

using namespace kstress;

namespace {

std::string fixture(const std::string& name) { return std::string(FIXTURE_DIR) + "/" + name; }

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ErrorCode code_of(const std::string& text) {
  try {
    decode(text);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::InvalidInput;
}

std::string message_of(const std::string& text) {
  try {
    decode(text);
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("generators") {
  const auto octa = cross_polytope(3);
  CHECK(octa.complex.facets().size() == 8);
  CHECK(octa.labels == std::vector<std::string>{"e1", "e2", "e3", "-e1", "-e2", "-e3"});

  const auto c = cyclic(6, 4);
  CHECK(c.complex.f_vector()[2] == 15);
  CHECK(missing_faces(c.complex, 6) == std::vector<Face>{{0, 2, 4}, {1, 3, 5}});

  const auto fs = free_sum(2, 4);
  CHECK(fs.complex.num_vertices() == 6);
  const auto g = fg_vector(fs.complex, 4);
  CHECK(g.g_at(1) == 1);
  CHECK(g.g_at(2) == 1);

  CHECK(stacked(4, 3, 7).complex.num_vertices() == 8);
  CHECK(encode(stacked(4, 3, 7)) == encode(stacked(4, 3, 7)));

  CHECK_THROWS_AS(cyclic(4, 4), Error);
  CHECK_THROWS_AS(free_sum(0, 4), Error);
  CHECK_THROWS_AS(free_sum(4, 4), Error);
  CHECK_THROWS_AS(simplex(0), Error);
  CHECK_THROWS_AS(generate("cube", {{"d", 3}}), Error);
  CHECK_THROWS_AS(generate("cyclic", {{"n", 7}}), Error);
  CHECK(generate("cyclic", {{"n", 7}, {"d", 4}}).complex == cyclic(7, 4).complex);
}

TEST_CASE("every corpus instance validates") {
  const auto corpus = standard_corpus();
  CHECK(corpus.size() == 57);
  for (auto p : corpus) {
    INFO(instance_name(p));
    const auto rep = validate(p);
    CHECK(rep.ok());
    CHECK(p.validated);
    std::vector<long long> f = p.complex.f_vector();
    long long euler = 0;
    for (std::size_t i = 1; i < f.size(); ++i) euler += (i % 2 ? 1 : -1) * f[i];
    CHECK(euler == 1 + (p.d() % 2 ? 1 : -1));
  }
}

TEST_CASE("cyclic facets equal brute force for n <= 10, d <= 6") {
  for (int d = 2; d <= 6; ++d) {
    for (int n = d + 1; n <= 10; ++n) {
      const auto c = cyclic(n, d);
      CHECK(brute_force_facets(c.embedding) == c.complex.facets());
    }
  }
}

TEST_CASE("validation failures") {
  auto moved = read_instance(fixture("invalid/bad_moved_vertex.json"));
  const auto rep = validate(moved);
  CHECK_FALSE(rep.ok());
  CHECK_FALSE(rep.facets_strict);
  CHECK_FALSE(moved.validated);

  // Right points, wrong complex.
  auto mismatch = cross_polytope(3);
  mismatch.complex = build_complex({{0, 1, 2}, {0, 1, 5}, {0, 2, 4}, {1, 2, 3}});
  const auto rep2 = validate(mismatch);
  CHECK_FALSE(rep2.closure_consistent);
  CHECK_FALSE(rep2.ok());

  auto flat = cross_polytope(3);
  for (auto& [v, x] : flat.embedding.coords) x[2] = 0;
  CHECK_FALSE(validate(flat).full_dimensional);
}

TEST_CASE("documents round trip") {
  for (const auto& p : standard_corpus()) {
    const std::string text = encode(p);
    const auto back = decode(text);
    CHECK(back.complex == p.complex);
    CHECK(back.embedding == p.embedding);
    CHECK(back.labels == p.labels);
    CHECK(back.meta == p.meta);
    CHECK(encode(back) == text);
  }
  const auto x4 = cross_polytope(4);
  CHECK(decode(encode(x4)).complex == x4.complex);
}

TEST_CASE("fixtures match the generators byte for byte") {
  const std::vector<std::pair<std::string, PolytopeInstance>> expected{
      {"simplex_3.json", simplex(3)},          {"cross_3.json", cross_polytope(3)},
      {"cross_4.json", cross_polytope(4)},     {"cyclic_6_4.json", cyclic(6, 4)},
      {"cyclic_7_4.json", cyclic(7, 4)},       {"cyclic_9_6.json", cyclic(9, 6)},
      {"stacked_4_3_7.json", stacked(4, 3, 7)}, {"free_sum_2_4.json", free_sum(2, 4)},
      {"free_sum_1_4.json", free_sum(1, 4)}};
  for (const auto& [name, p] : expected) {
    INFO(name);
    CHECK(slurp(fixture(name)) == encode(p));
    auto q = read_instance(fixture(name));
    CHECK(validate(q).ok());
  }
}

TEST_CASE("hand-written document") {
  auto tri = read_instance(fixture("handwritten_triangle.json"));
  CHECK(tri.d() == 2);
  CHECK(tri.embedding.at(2) == Vec{Rational(1, 2), Rational(3, 2)});
  CHECK(tri.labels[2] == "c");
  CHECK(validate(tri).ok());
}

TEST_CASE("parse errors carry a location") {
  CHECK(code_of(slurp(fixture("invalid/bad_zero_denominator.json"))) == ErrorCode::ParseError);
  CHECK(message_of(slurp(fixture("invalid/bad_zero_denominator.json"))).find("/coordinates/1/0") != std::string::npos);
  CHECK(message_of("{\"format\": ").find("byte") != std::string::npos);
  CHECK(code_of("[]") == ErrorCode::ParseError);
  CHECK(code_of(R"({"format":"polytope/2"})") == ErrorCode::ParseError);
  const std::string base = R"({"format":"polytope/1","dimension":1,"labels":["a","b"],"coordinates":[["0"],["1"]],"facets":)";
  CHECK(decode(base + R"([["a"],["b"]]})").complex.facets().size() == 2);
  CHECK(message_of(base + R"([["a"],["z"]]})").find("/facets/1/0") != std::string::npos);
  CHECK(message_of(base + R"([["a","a"]]})").find("/facets/0") != std::string::npos);
  CHECK(message_of(base + "[]}").find("/facets") != std::string::npos);
  CHECK(code_of(R"({"format":"polytope/1","dimension":1,"labels":["a"],"coordinates":[[0]],"facets":[["a"]]})") ==
        ErrorCode::ParseError);
  CHECK_THROWS_AS(read_instance(fixture("does_not_exist.json")), Error);
}

TEST_CASE("write and read back") {
  const auto path = std::filesystem::temp_directory_path() / "kstress_corpus_roundtrip.json";
  write_instance(stacked(3, 2, 7), path.string());
  CHECK(read_instance(path.string()).complex == stacked(3, 2, 7).complex);
  std::filesystem::remove(path);
}
