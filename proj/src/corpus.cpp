#include "kstress/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include <json.hpp>

#include "kstress/error.hpp"

namespace kstress {

using json = nlohmann::ordered_json;

namespace {

Vec unit(int d, int i, int s = 1) {
  Vec x(d, Rational(0));
  x[i] = s;
  return x;
}

PolytopeInstance assemble(int d, std::vector<Vec> pts, std::vector<Face> facets, std::vector<std::string> labels,
                          PolytopeMeta meta) {
  PolytopeInstance p;
  p.embedding.d = d;
  for (std::size_t i = 0; i < pts.size(); ++i) p.embedding.coords[static_cast<Vertex>(i)] = std::move(pts[i]);
  p.complex = build_complex(std::move(facets));
  p.labels = std::move(labels);
  p.meta = std::move(meta);
  validate(p);
  if (!p.validated) throw Error(ErrorCode::InvalidArgument, "generated instance failed validation: " + p.meta.family);
  return p;
}

std::vector<std::string> numbered(int n, int first) {
  std::vector<std::string> out;
  for (int i = 0; i < n; ++i) out.push_back(std::to_string(i + first));
  return out;
}

long long param(const std::map<std::string, long long>& params, const std::string& key) {
  auto it = params.find(key);
  if (it == params.end()) throw Error(ErrorCode::InvalidArgument, "missing parameter '" + key + "'");
  return it->second;
}

}  // namespace

PolytopeInstance simplex(int d) {
  if (d < 1) throw Error(ErrorCode::InvalidArgument, "simplex needs d >= 1");
  std::vector<Vec> pts{Vec(d, Rational(0))};
  for (int i = 0; i < d; ++i) pts.push_back(unit(d, i));
  Face all;
  for (int i = 0; i <= d; ++i) all.push_back(i);
  return assemble(d, std::move(pts), subsets_of_size(all, d), numbered(d + 1, 0), {"simplex", {{"d", d}}});
}

PolytopeInstance cross_polytope(int d) {
  if (d < 1) throw Error(ErrorCode::InvalidArgument, "cross-polytope needs d >= 1");
  std::vector<Vec> pts;
  std::vector<std::string> labels;
  for (int s : {1, -1}) {
    for (int i = 0; i < d; ++i) {
      pts.push_back(unit(d, i, s));
      labels.push_back((s > 0 ? "e" : "-e") + std::to_string(i + 1));
    }
  }
  std::vector<Face> facets;
  for (unsigned mask = 0; mask < (1u << d); ++mask) {
    Face f;
    for (int i = 0; i < d; ++i) f.push_back((mask >> i) & 1u ? i + d : i);
    facets.push_back(make_face(f));
  }
  return assemble(d, std::move(pts), std::move(facets), std::move(labels), {"cross", {{"d", d}}});
}

PolytopeInstance cyclic(int n, int d) {
  if (d < 2 || n <= d) throw Error(ErrorCode::InvalidArgument, "cyclic(n, d) needs d >= 2 and n > d");
  std::vector<Vec> pts;
  for (int t = 1; t <= n; ++t) {
    Vec x;
    Integer power = 1;
    for (int l = 0; l < d; ++l) {
      power *= t;
      x.push_back(Rational(power));
    }
    pts.push_back(std::move(x));
  }
  Face all;
  for (int i = 0; i < n; ++i) all.push_back(i);
  std::vector<Face> facets;
  for (const auto& s : subsets_of_size(all, d)) {
    bool even = true;
    for (int i = 0; i < n && even; ++i) {
      if (std::binary_search(s.begin(), s.end(), i)) continue;
      for (int j = i + 1; j < n; ++j) {
        if (std::binary_search(s.begin(), s.end(), j)) continue;
        const auto between = std::count_if(s.begin(), s.end(), [&](int v) { return v > i && v < j; });
        if (between % 2 != 0) {
          even = false;
          break;
        }
      }
    }
    if (even) facets.push_back(s);
  }
  return assemble(d, std::move(pts), std::move(facets), numbered(n, 1), {"cyclic", {{"n", n}, {"d", d}}});
}

PolytopeInstance stacked(int d, int steps, unsigned seed) {
  if (d < 2 || steps < 0) throw Error(ErrorCode::InvalidArgument, "stacked needs d >= 2 and steps >= 0");
  PolytopeInstance p = simplex(d);
  std::mt19937 rng(seed);
  for (int step = 0; step < steps; ++step) {
    const auto& facets = p.complex.facets();
    const Face target = facets[rng() % facets.size()];

    Vec centroid(d, Rational(0));
    for (Vertex v : target) centroid = centroid + p.embedding.at(v);
    centroid = Rational(1, d) * centroid;
    const Hyperplane h = inward_facet_hyperplane(p, target);
    const Vec out = Rational(-1) * h.normal;

    // Largest admissible height keeps every other facet strictly visible from inside; take half.
    std::optional<Rational> bound;
    for (const auto& f : facets) {
      if (f == target) continue;
      const Hyperplane g = inward_facet_hyperplane(p, f);
      const Rational rate = -dot(g.normal, out);  // growth of the outward slack per unit height
      if (rate <= 0) continue;
      Rational limit = (dot(g.normal, centroid) - g.offset) / rate;
      if (!bound || limit < *bound) bound = std::move(limit);
    }
    const Rational height = bound ? Rational(*bound / 2) : Rational(1);

    const Vertex fresh = static_cast<Vertex>(p.embedding.coords.size());
    p.embedding.coords[fresh] = centroid + height * out;
    std::vector<Face> next;
    for (const auto& f : facets) {
      if (f != target) next.push_back(f);
    }
    for (Vertex drop : target) next.push_back(face_union(face_minus(target, {drop}), {fresh}));
    p.complex = build_complex(std::move(next));
    p.labels.push_back(std::to_string(fresh));
  }
  p.meta = {"stacked", {{"d", d}, {"steps", steps}, {"seed", seed}}};
  validate(p);
  if (!p.validated) throw Error(ErrorCode::InvalidArgument, "stacking produced an invalid instance");
  return p;
}

PolytopeInstance free_sum(int i, int d) {
  if (d < 2 || i < 1 || i > d - 1) throw Error(ErrorCode::InvalidArgument, "free_sum(i, d) needs 1 <= i <= d - 1");
  std::vector<Vec> pts;
  // sigma: vertices 0..i in coordinates 0..i-1; tau: vertices i+1..d+1 in coordinates i..d-1.
  auto block = [&](int offset, int dim) {
    Vec last(d, Rational(0));
    for (int j = 0; j < dim; ++j) {
      pts.push_back(unit(d, offset + j));
      last[offset + j] = -1;
    }
    pts.push_back(std::move(last));
  };
  block(0, i);
  block(i, d - i);
  Face sigma, tau;
  for (int v = 0; v <= i; ++v) sigma.push_back(v);
  for (int v = i + 1; v <= d + 1; ++v) tau.push_back(v);
  std::vector<Face> facets;
  for (Vertex s : sigma) {
    for (Vertex t : tau) facets.push_back(face_union(face_minus(sigma, {s}), face_minus(tau, {t})));
  }
  return assemble(d, std::move(pts), std::move(facets), numbered(d + 2, 0), {"free_sum", {{"i", i}, {"d", d}}});
}

PolytopeInstance generate(const std::string& family, const std::map<std::string, long long>& params) {
  auto get = [&](const std::string& key) { return static_cast<int>(param(params, key)); };
  if (family == "simplex") return simplex(get("d"));
  if (family == "cross") return cross_polytope(get("d"));
  if (family == "cyclic") return cyclic(get("n"), get("d"));
  if (family == "stacked") {
    const long long seed = params.count("seed") ? params.at("seed") : 0;
    return stacked(get("d"), get("steps"), static_cast<unsigned>(seed));
  }
  if (family == "free_sum") return free_sum(get("i"), get("d"));
  throw Error(ErrorCode::InvalidArgument, "unknown family '" + family + "'");
}

ValidationReport validate(PolytopeInstance& instance) {
  ValidationReport r;
  instance.validated = false;
  const int d = instance.d();
  std::vector<Vec> pts;
  for (const auto& [v, x] : instance.embedding.coords) {
    if (static_cast<int>(x.size()) != d) r.problems.push_back("vertex " + instance.label(v) + " has wrong dimension");
    pts.push_back(x);
  }
  if (!r.problems.empty()) return r;
  Face ids;
  for (const auto& [v, x] : instance.embedding.coords) ids.push_back(v);
  const bool same_vertices = instance.complex.vertices() == ids;
  if (!same_vertices) r.problems.push_back("complex and embedding have different vertex sets");

  r.full_dimensional = !pts.empty() && affine_rank(pts) == d;
  if (!r.full_dimensional) {
    r.problems.push_back("points are not full-dimensional");
    return r;
  }

  r.facets_strict = true;
  for (const auto& f : instance.complex.facets()) {
    if (static_cast<int>(f.size()) != d) {
      r.facets_strict = false;
      r.problems.push_back("facet of size " + std::to_string(f.size()));
      continue;
    }
    const auto h = hyperplane_through(instance.embedding.points(f));
    if (!h) {
      r.facets_strict = false;
      r.problems.push_back("facet points affinely dependent");
      continue;
    }
    int pos = 0, neg = 0, zero = 0;
    for (const auto& [v, x] : instance.embedding.coords) {
      if (std::binary_search(f.begin(), f.end(), v)) continue;
      const int s = sign(h->eval(x) - h->offset);
      (s > 0 ? pos : s < 0 ? neg : zero)++;
    }
    if (zero > 0 || (pos > 0 && neg > 0)) {
      r.facets_strict = false;
      std::string name;
      for (Vertex v : f) name += (name.empty() ? "" : " ") + instance.label(v);
      r.problems.push_back("facet {" + name + "} is not strictly supporting");
    }
  }

  try {
    const auto facets = brute_force_facets(instance.embedding);
    r.simplicial = true;
    r.closure_consistent = same_vertices && !facets.empty() && build_complex(facets) == instance.complex;
    if (same_vertices && !r.closure_consistent) r.problems.push_back("complex differs from the facets of the convex hull");
  } catch (const Error& e) {
    r.problems.push_back(e.what());
  }
  instance.validated = r.ok();
  return r;
}

// ---------------------------------------------------------------------------
// Documents

std::string encode(const PolytopeInstance& instance) {
  json doc;
  doc["format"] = "polytope/1";
  doc["dimension"] = instance.d();
  json labels = json::array(), coords = json::array(), facets = json::array();
  for (const auto& [v, x] : instance.embedding.coords) {
    labels.push_back(instance.label(v));
    json row = json::array();
    for (const auto& c : x) row.push_back(format_rational(c));
    coords.push_back(std::move(row));
  }
  for (const auto& f : instance.complex.facets()) {
    json row = json::array();
    for (Vertex v : f) row.push_back(instance.label(v));
    facets.push_back(std::move(row));
  }
  doc["labels"] = std::move(labels);
  doc["coordinates"] = std::move(coords);
  doc["facets"] = std::move(facets);
  json params = json::object();
  for (const auto& [k, v] : instance.meta.params) params[k] = v;
  doc["meta"] = {{"family", instance.meta.family}, {"params", std::move(params)}};
  return doc.dump(1) + "\n";
}

namespace {

[[noreturn]] void parse_fail(const std::string& where, const std::string& what) {
  throw Error(ErrorCode::ParseError, where + ": " + what);
}

const json& field(const json& doc, const std::string& key, json::value_t type) {
  if (!doc.contains(key)) parse_fail("/" + key, "missing field");
  const json& v = doc.at(key);
  const bool ok = type == json::value_t::number_integer ? v.is_number_integer() : v.type() == type;
  if (!ok) parse_fail("/" + key, "wrong type");
  return v;
}

}  // namespace

PolytopeInstance decode(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    parse_fail("byte " + std::to_string(e.byte), "malformed document");
  }
  if (!doc.is_object()) parse_fail("/", "expected an object");
  if (field(doc, "format", json::value_t::string) != "polytope/1") parse_fail("/format", "unsupported format");
  const long long d = field(doc, "dimension", json::value_t::number_integer).get<long long>();
  if (d < 1) parse_fail("/dimension", "must be positive");

  PolytopeInstance p;
  p.embedding.d = static_cast<int>(d);
  std::map<std::string, Vertex> ids;
  const json& labels = field(doc, "labels", json::value_t::array);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const std::string where = "/labels/" + std::to_string(i);
    if (!labels[i].is_string()) parse_fail(where, "label must be a string");
    const std::string name = labels[i].get<std::string>();
    if (!ids.emplace(name, static_cast<Vertex>(i)).second) parse_fail(where, "duplicate label");
    p.labels.push_back(name);
  }
  const json& coords = field(doc, "coordinates", json::value_t::array);
  if (coords.size() != labels.size()) parse_fail("/coordinates", "one row per label expected");
  for (std::size_t i = 0; i < coords.size(); ++i) {
    const std::string where = "/coordinates/" + std::to_string(i);
    if (!coords[i].is_array() || coords[i].size() != static_cast<std::size_t>(d)) parse_fail(where, "expected d entries");
    Vec x;
    for (std::size_t l = 0; l < coords[i].size(); ++l) {
      const json& c = coords[i][l];
      if (!c.is_string()) parse_fail(where + "/" + std::to_string(l), "rational must be a string");
      try {
        x.push_back(parse_rational(c.get<std::string>()));
      } catch (const Error& e) {
        const std::string msg = e.what();
        parse_fail(where + "/" + std::to_string(l), msg.substr(msg.find(": ") + 2));
      }
    }
    p.embedding.coords[static_cast<Vertex>(i)] = std::move(x);
  }
  const json& facets = field(doc, "facets", json::value_t::array);
  if (facets.empty()) parse_fail("/facets", "no facets");
  std::vector<Face> fs;
  for (std::size_t i = 0; i < facets.size(); ++i) {
    const std::string where = "/facets/" + std::to_string(i);
    if (!facets[i].is_array()) parse_fail(where, "facet must be an array");
    std::vector<Vertex> f;
    for (std::size_t l = 0; l < facets[i].size(); ++l) {
      const json& name = facets[i][l];
      if (!name.is_string() || !ids.count(name.get<std::string>())) {
        parse_fail(where + "/" + std::to_string(l), "unknown label");
      }
      f.push_back(ids.at(name.get<std::string>()));
    }
    Face sorted = make_face(f);
    if (sorted.size() != f.size()) parse_fail(where, "repeated vertex");
    fs.push_back(std::move(sorted));
  }
  p.complex = build_complex(std::move(fs));

  if (doc.contains("meta")) {
    const json& meta = field(doc, "meta", json::value_t::object);
    p.meta.family = field(meta, "family", json::value_t::string).get<std::string>();
    for (const auto& [k, v] : field(meta, "params", json::value_t::object).items()) {
      if (!v.is_number_integer()) parse_fail("/meta/params/" + k, "integer expected");
      p.meta.params[k] = v.get<long long>();
    }
  }
  return p;
}

PolytopeInstance read_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidInput, "cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return decode(buf.str());
}

void write_instance(const PolytopeInstance& instance, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::InvalidInput, "cannot write " + path);
  out << encode(instance);
}

std::vector<PolytopeInstance> standard_corpus() {
  std::vector<PolytopeInstance> out;
  for (int d = 2; d <= 6; ++d) out.push_back(simplex(d));
  for (int d = 3; d <= 5; ++d) out.push_back(cross_polytope(d));
  for (int d = 2; d <= 6; ++d) {
    for (int n = d + 2; n <= 10; ++n) out.push_back(cyclic(n, d));
  }
  for (int d = 3; d <= 5; ++d) {
    for (int steps = 1; steps <= 3; ++steps) out.push_back(stacked(d, steps, 7));
  }
  for (int d = 2; d <= 6; ++d) {
    for (int i = 1; i <= d - 1; ++i) out.push_back(free_sum(i, d));
  }
  return out;
}

std::string instance_name(const PolytopeInstance& instance) {
  const auto& m = instance.meta;
  std::string args;
  auto add = [&](const char* key) {
    auto it = m.params.find(key);
    if (it == m.params.end()) return;
    args += (args.empty() ? "" : ",") + std::to_string(it->second);
  };
  if (m.family == "cyclic") {
    add("n");
    add("d");
  } else if (m.family == "stacked") {
    add("d");
    add("steps");
    add("seed");
  } else if (m.family == "free_sum") {
    add("i");
    add("d");
  } else {
    add("d");
  }
  return (m.family.empty() ? std::string("polytope") : m.family) + "(" + args + ")";
}

}  // namespace kstress
