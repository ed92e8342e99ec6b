#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <exception>
#include <optional>
#include <ostream>
#include <sstream>

#include "kstress/corpus.hpp"
#include "kstress/detect.hpp"
#include "kstress/error.hpp"
#include "kstress/reconstruct.hpp"
#include "kstress/stress.hpp"

namespace kstress::cli {

using json = nlohmann::ordered_json;

namespace {

struct Options {
  bool json = false;
  bool timing = false;
  int k = 2;
  std::string output;
  std::string truth;
  bool prime = false;
  bool basis = false;
  bool corpus = false;
  std::vector<std::string> targets;
  std::map<std::string, long long> params;
  // Raw parameter slots; only the ones given end up in `params`.
  long long n = 0, d = 0, i = 0, steps = 0, seed = 0;
};

std::string face_text(const PolytopeInstance& p, const Face& f) {
  std::string s = "{";
  for (std::size_t j = 0; j < f.size(); ++j) s += (j ? " " : "") + p.label(f[j]);
  return s + "}";
}

json face_json(const PolytopeInstance& p, const Face& f) {
  json a = json::array();
  for (Vertex v : f) a.push_back(p.label(v));
  return a;
}

std::string faces_text(const PolytopeInstance& p, const std::vector<Face>& fs) {
  if (fs.empty()) return "(none)";
  std::string s;
  for (const auto& f : fs) s += (s.empty() ? "" : " ") + face_text(p, f);
  return s;
}

json faces_json(const PolytopeInstance& p, const std::vector<Face>& fs) {
  json a = json::array();
  for (const auto& f : fs) a.push_back(face_json(p, f));
  return a;
}

std::string sign_char(int s) { return s > 0 ? "+" : s < 0 ? "-" : "0"; }

PolytopeInstance load(const std::string& path) {
  PolytopeInstance p = read_instance(path);
  const auto report = validate(p);
  if (!report.ok()) {
    std::string why = report.problems.empty() ? "invalid instance" : report.problems.front();
    throw Error(ErrorCode::InvalidInput, path + ": " + why);
  }
  return p;
}

// Everything a subcommand produces; printed in one place so that --json and
// the text form stay in sync.
struct Report {
  std::string command;
  json inputs = json::object();
  json results = json::object();
  std::vector<std::string> lines;
  int status = kOk;
};

int emit(const Report& r, const Options& o, std::ostream& out, double seconds) {
  if (o.json) {
    json doc;
    doc["command"] = r.command;
    doc["inputs"] = r.inputs;
    doc["results"] = r.results;
    if (o.timing) doc["timing_seconds"] = seconds;
    doc["exit"] = r.status;
    out << doc.dump(1) << "\n";
  } else {
    for (const auto& l : r.lines) out << l << "\n";
    if (o.timing) out << "time " << seconds << " s\n";
  }
  return r.status;
}

// ---------------------------------------------------------------------------

Report cmd_gen(const Options& o) {
  if (o.targets.size() != 1) throw Error(ErrorCode::InvalidArgument, "gen takes exactly one family name");
  const PolytopeInstance p = generate(o.targets[0], o.params);
  Report r{"gen"};
  r.inputs["family"] = o.targets[0];
  r.inputs["params"] = o.params;
  const std::string name = instance_name(p);
  r.results["instance"] = name;
  r.results["vertices"] = p.complex.num_vertices();
  r.results["facets"] = p.complex.facets().size();
  if (o.output.empty()) {
    r.results["document"] = json::parse(encode(p));
    r.lines.push_back(encode(p));
    r.lines.back().pop_back();
  } else {
    write_instance(p, o.output);
    r.results["path"] = o.output;
    r.lines.push_back("wrote " + name + " to " + o.output + " (" + std::to_string(p.complex.num_vertices()) +
                      " vertices, " + std::to_string(p.complex.facets().size()) + " facets)");
  }
  return r;
}

Report cmd_validate(const Options& o) {
  Report r{"validate"};
  bool all_ok = true;
  json items = json::array();
  for (const auto& path : o.targets) {
    PolytopeInstance p = read_instance(path);
    const auto v = validate(p);
    json item{{"path", path},
              {"valid", v.ok()},
              {"full_dimensional", v.full_dimensional},
              {"facets_strict", v.facets_strict},
              {"closure_consistent", v.closure_consistent},
              {"simplicial", v.simplicial},
              {"problems", v.problems}};
    items.push_back(std::move(item));
    r.lines.push_back(path + ": " + (v.ok() ? "valid" : "invalid"));
    for (const auto& pr : v.problems) r.lines.push_back("  " + pr);
    all_ok = all_ok && v.ok();
  }
  r.inputs["paths"] = o.targets;
  r.results["instances"] = std::move(items);
  r.status = all_ok ? kOk : kViolated;
  return r;
}

Report cmd_stress(const Options& o) {
  if (o.targets.size() != 1) throw Error(ErrorCode::InvalidArgument, "stress takes one instance file");
  const PolytopeInstance p = load(o.targets[0]);
  const auto basis = stress_basis(p.complex, p.embedding, o.k);
  Report r{"stress"};
  r.inputs = {{"path", o.targets[0]}, {"k", o.k}};
  r.results["instance"] = instance_name(p);
  r.results["dimension"] = basis.size();
  r.lines.push_back("dim Stress_" + std::to_string(o.k) + " = " + std::to_string(basis.size()));
  if (o.k >= 0 && o.k <= (p.d() + 1) / 2 + 1) {
    const auto fg = fg_vector(p.complex, p.d());
    r.results["g"] = fg.g_at(o.k);
    r.lines.push_back("g_" + std::to_string(o.k) + " = " + std::to_string(fg.g_at(o.k)));
  }
  if (o.basis) {
    json all = json::array();
    for (std::size_t j = 0; j < basis.size(); ++j) {
      json entries = json::object();
      std::string line = "  [" + std::to_string(j) + "]";
      for (const auto& [g, x] : basis[j].sf) {
        if (x == 0) continue;
        entries[face_text(p, g)] = format_rational(x);
        line += " " + face_text(p, g) + ":" + format_rational(x);
      }
      all.push_back(std::move(entries));
      r.lines.push_back(line);
    }
    r.results["basis"] = std::move(all);
  }
  return r;
}

Report cmd_rigidity(const Options& o) {
  if (o.targets.size() != 1) throw Error(ErrorCode::InvalidArgument, "rigidity takes one instance file");
  const PolytopeInstance p = load(o.targets[0]);
  const auto rep = is_infinitesimally_rigid(skeleton(p.complex, 1), p.embedding);
  Report r{"rigidity"};
  r.inputs = {{"path", o.targets[0]}};
  r.results = {{"instance", instance_name(p)},
               {"rank", rep.rank},
               {"expected_rank", rep.expected_rank},
               {"stress_dimension", rep.stress_dim},
               {"rigid", rep.rigid}};
  r.lines.push_back("rank R_2 = " + std::to_string(rep.rank) + " (d f_0 - C(d+1,2) = " +
                    std::to_string(rep.expected_rank) + ")");
  r.lines.push_back("dim Stress_2(G) = " + std::to_string(rep.stress_dim));
  r.lines.push_back(rep.rigid ? "infinitesimally rigid" : "NOT infinitesimally rigid");
  r.status = rep.rigid ? kOk : kViolated;
  return r;
}

Report cmd_missing(const Options& o) {
  if (o.targets.size() != 1) throw Error(ErrorCode::InvalidArgument, "missing takes one instance file");
  const PolytopeInstance p = load(o.targets[0]);
  const int d = p.d(), k = o.k;
  if (k < 2 || d < 2 * k) throw Error(ErrorCode::InvalidArgument, "missing needs k >= 2 and d >= 2k");
  const SimplicialComplex skel = skeleton(p.complex, k - 1);
  const auto basis = stress_basis(p.complex, p.embedding, k);
  const auto found = enumerate_missing_faces(skel, basis, d, k);

  std::vector<Face> truth;
  for (auto& m : missing_faces(p.complex, d - k + 1)) {
    if (static_cast<int>(m.size()) >= k + 1) truth.push_back(std::move(m));
  }
  Report r{"missing"};
  r.inputs = {{"path", o.targets[0]}, {"k", k}};
  r.results = {{"instance", instance_name(p)},
               {"certified", faces_json(p, found)},
               {"actual", faces_json(p, truth)},
               {"agree", found == truth}};
  r.lines.push_back("certified missing faces of size " + std::to_string(k + 1) + ".." + std::to_string(d - k + 1) +
                    ": " + faces_text(p, found));
  if (found == truth) {
    r.lines.push_back("agrees with the missing faces of the complex");
  } else {
    r.lines.push_back("DIFFERS from the missing faces of the complex: " + faces_text(p, truth));
    r.status = kViolated;
  }
  return r;
}

void add_diff(Report& r, const PolytopeInstance& names, const ComplexDiff& diff) {
  r.results["diff"] = {{"empty", diff.empty()},
                       {"facets_only_first", faces_json(names, diff.facets_only_first)},
                       {"facets_only_second", faces_json(names, diff.facets_only_second)},
                       {"missing_only_first", faces_json(names, diff.missing_only_first)},
                       {"missing_only_second", faces_json(names, diff.missing_only_second)}};
  if (diff.empty()) {
    r.lines.push_back("diff: empty");
    return;
  }
  r.lines.push_back("diff: facets only in first " + faces_text(names, diff.facets_only_first));
  r.lines.push_back("      facets only in second " + faces_text(names, diff.facets_only_second));
  r.lines.push_back("      missing only in first " + faces_text(names, diff.missing_only_first));
  r.lines.push_back("      missing only in second " + faces_text(names, diff.missing_only_second));
}

Report cmd_reconstruct(const Options& o) {
  if (o.targets.size() != 1) throw Error(ErrorCode::InvalidArgument, "reconstruct takes one instance file");
  const PolytopeInstance p = load(o.targets[0]);
  const int d = p.d(), k = o.k;
  std::optional<PolytopeInstance> truth;
  if (!o.truth.empty()) truth = load(o.truth);

  const SimplicialComplex skel = skeleton(p.complex, k - 1);
  const auto basis = stress_basis(p.complex, p.embedding, k);
  Report r{"reconstruct"};
  r.inputs = {{"path", o.targets[0]}, {"k", k}, {"truth", o.truth}, {"assume_prime", o.prime}};
  r.results["instance"] = instance_name(p);
  try {
    const auto rep = reconstruct(skel, basis, d, k, o.prime, truth ? &truth->complex : nullptr);
    const auto fs = rep.skeleton.f_vector();
    r.results["stress_dimension"] = rep.stress_dim;
    r.results["missing"] = faces_json(p, rep.missing);
    r.results["skeleton_f_vector"] = fs;
    r.results["completion"] = rep.completion == Completion::Full ? "full" : "skeleton-only";
    r.results["guaranteed"] = rep.neighborly_or_k2;
    r.lines.push_back("dim Stress_" + std::to_string(k) + " = " + std::to_string(rep.stress_dim));
    r.lines.push_back("missing faces: " + faces_text(p, rep.missing));
    std::string fline;
    for (auto f : fs) fline += (fline.empty() ? "" : " ") + std::to_string(f);
    r.lines.push_back("recovered " + std::to_string(d - k) + "-skeleton f-vector: " + fline);
    r.lines.push_back(std::string("completion: ") + (rep.completion == Completion::Full ? "full" : "skeleton-only"));
    if (!rep.neighborly_or_k2) r.lines.push_back("note: uncertified candidate sets are undetermined for this k");
    if (rep.complex) r.results["facets"] = faces_json(p, rep.complex->facets());
    if (rep.diff) {
      add_diff(r, p, *rep.diff);
      if (!rep.diff->empty()) r.status = kViolated;
    }
  } catch (const Error& e) {
    if (e.code() != ErrorCode::CompletionFailure) throw;
    r.results["completion"] = "failed";
    r.results["error"] = e.what();
    r.lines.push_back(std::string("completion failed: ") + e.what());
    r.status = kViolated;
  }
  return r;
}

Report cmd_diff(const Options& o) {
  if (o.targets.size() != 2) throw Error(ErrorCode::InvalidArgument, "diff takes two instance files");
  const PolytopeInstance a = read_instance(o.targets[0]);
  const PolytopeInstance b = read_instance(o.targets[1]);
  Report r{"diff"};
  r.inputs = {{"first", o.targets[0]}, {"second", o.targets[1]}};
  // Vertices are matched by label; `names` carries the union of both label sets.
  PolytopeInstance names;
  std::map<std::string, Vertex> ids;
  auto relabel = [&](const PolytopeInstance& p) {
    std::vector<Face> facets;
    for (const auto& f : p.complex.facets()) {
      std::vector<Vertex> g;
      for (Vertex v : f) {
        const std::string l = p.label(v);
        auto [it, fresh] = ids.emplace(l, static_cast<Vertex>(names.labels.size()));
        if (fresh) names.labels.push_back(l);
        g.push_back(it->second);
      }
      facets.push_back(make_face(g));
    }
    return build_complex(std::move(facets));
  };
  const SimplicialComplex ka = relabel(a);
  const SimplicialComplex kb = relabel(b);
  const ComplexDiff diff = compare(ka, kb);
  add_diff(r, names, diff);
  r.status = diff.empty() ? kOk : kViolated;
  return r;
}

// One (G, F) trial of the missing (k-1)-face pattern.
struct ProbeTrial {
  Face g, f;
  bool holds = false;
  bool reverified = false;
  SignVector pattern;
};

struct ProbeResult {
  std::string name;
  bool applicable = false;
  std::vector<ProbeTrial> trials;
  std::string error;
};

ProbeResult probe_instance(const PolytopeInstance& p, int k) {
  ProbeResult res;
  res.name = instance_name(p);
  if (p.d() < 2 * k - 1 || k < 2) return res;
  res.applicable = true;
  const SimplicialComplex skel = skeleton(p.complex, k - 1);
  for (const auto& g : missing_faces(p.complex, k)) {
    if (static_cast<int>(g.size()) != k) continue;
    const SimplicialComplex aug = with_face(skel, g);
    const auto basis = stress_basis(aug, p.embedding, k);
    for (const auto& f : subsets_of_size(g, k - 1)) {
      ProbeTrial t{g, f};
      if (auto c = find_certificate(aug, basis, g, f)) {
        t.holds = true;
        t.pattern = c->pattern;
        t.reverified = certificate_check(*c, aug, p.embedding);
      }
      res.trials.push_back(std::move(t));
    }
  }
  return res;
}

Report cmd_probe(const Options& o) {
  std::vector<PolytopeInstance> instances;
  static const std::set<std::string> families{"simplex", "cross", "cyclic", "stacked", "free_sum"};
  if (o.corpus) {
    for (auto& p : standard_corpus()) instances.push_back(std::move(p));
  }
  if (!o.targets.empty() && families.count(o.targets[0])) {
    if (o.targets.size() != 1) throw Error(ErrorCode::InvalidArgument, "probe takes one family or instance files");
    instances.push_back(generate(o.targets[0], o.params));
  } else {
    for (const auto& path : o.targets) instances.push_back(load(path));
  }
  if (instances.empty()) throw Error(ErrorCode::InvalidArgument, "nothing to probe");

  std::vector<ProbeResult> results(instances.size());
  const long count = static_cast<long>(instances.size());
#pragma omp parallel for schedule(dynamic)
  for (long ii = 0; ii < count; ++ii) {
    const std::size_t i = static_cast<std::size_t>(ii);
    try {
      results[i] = probe_instance(instances[i], o.k);
    } catch (const std::exception& e) {
      results[i].name = instance_name(instances[i]);
      results[i].error = e.what();
    }
  }

  Report r{"probe"};
  r.inputs = {{"k", o.k}, {"targets", o.targets}, {"corpus", o.corpus}};
  json verdicts = json::array();
  for (std::size_t i = 0; i < results.size(); ++i) {
    const auto& res = results[i];
    const auto& p = instances[i];
    json item{{"instance", res.name}};
    std::string verdict;
    if (!res.error.empty()) {
      verdict = "error";
      item["error"] = res.error;
      r.status = kViolated;
    } else if (!res.applicable) {
      verdict = "not-applicable";
    } else {
      std::size_t bad = 0, unverified = 0;
      json trials = json::array();
      for (const auto& t : res.trials) {
        json jt{{"G", face_json(p, t.g)}, {"F", face_json(p, t.f)}, {"holds", t.holds}};
        if (t.holds) {
          std::string pattern;
          for (const auto& [face, s] : t.pattern) pattern += sign_char(s);
          jt["pattern"] = pattern;
          jt["reverified"] = t.reverified;
        }
        if (!t.holds) ++bad;
        if (t.holds && !t.reverified) ++unverified;
        trials.push_back(std::move(jt));
      }
      item["trials"] = std::move(trials);
      verdict = bad ? "violated" : unverified ? "unverified" : "holds";
      if (bad || unverified) r.status = kViolated;
      r.lines.push_back(res.name + ": " + verdict + " (" + std::to_string(res.trials.size()) + " trials" +
                        (bad ? ", " + std::to_string(bad) + " without a stress" : std::string()) + ")");
      for (const auto& t : res.trials) {
        if (!t.holds) r.lines.push_back("  no stress for G = " + face_text(p, t.g) + ", F = " + face_text(p, t.f));
      }
    }
    if (verdict == "not-applicable") r.lines.push_back(res.name + ": not applicable (needs d >= 2k - 1)");
    if (verdict == "error") r.lines.push_back(res.name + ": error: " + res.error);
    item["verdict"] = verdict;
    verdicts.push_back(std::move(item));
  }
  r.results["verdicts"] = std::move(verdicts);
  return r;
}

int exit_code_for(ErrorCode c) {
  switch (c) {
    case ErrorCode::CompletionFailure:
    case ErrorCode::RigidityFailure:
    case ErrorCode::ReconstructionFailure:
      return kViolated;
    default:
      return kInvalid;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Affine k-stresses of simplicial polytopes", "kstress"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_flag("--json", o.json, "Machine-readable report");
  app.add_flag("--timing", o.timing, "Append wall-clock time");

  auto add_params = [&](CLI::App* sub) {
    sub->add_option("--n", o.n, "Number of vertices (cyclic)");
    sub->add_option("--d", o.d, "Dimension");
    sub->add_option("--i", o.i, "Split index (free_sum)");
    sub->add_option("--steps", o.steps, "Stacking steps (stacked)");
    sub->add_option("--seed", o.seed, "Random seed (stacked)");
  };

  auto* gen = app.add_subcommand("gen", "Generate a polytope instance");
  gen->add_option("family", o.targets, "simplex | cross | cyclic | stacked | free_sum")->required();
  add_params(gen);
  gen->add_option("-o,--output", o.output, "Output file (default: stdout)");

  auto* val = app.add_subcommand("validate", "Check instance files");
  val->add_option("files", o.targets)->required();

  auto* st = app.add_subcommand("stress", "Dimension (and basis) of Stress_k");
  st->add_option("--k", o.k, "Degree")->required();
  st->add_option("file", o.targets)->required();
  st->add_flag("--basis", o.basis, "Print a basis");

  auto* rig = app.add_subcommand("rigidity", "Infinitesimal rigidity of the graph");
  rig->add_option("file", o.targets)->required();

  auto* mis = app.add_subcommand("missing", "Certified missing faces from the skeleton and Stress_k");
  mis->add_option("--k", o.k, "Degree")->required();
  mis->add_option("file", o.targets)->required();

  auto* rec = app.add_subcommand("reconstruct", "Rebuild the complex from skel_{k-1} and Stress_k");
  rec->add_option("--k", o.k, "Degree");
  rec->add_option("file", o.targets)->required();
  rec->add_option("--truth", o.truth, "Ground-truth instance to diff against");
  rec->add_flag("--prime", o.prime, "Assert primeness and complete the boundary");

  auto* prb = app.add_subcommand("probe", "Test the missing (k-1)-face stress pattern");
  prb->add_option("--k", o.k, "Degree")->required();
  prb->add_option("targets", o.targets, "Family name (with parameters) or instance files");
  prb->add_flag("--corpus", o.corpus, "Sweep the standard corpus");
  add_params(prb);

  auto* dif = app.add_subcommand("diff", "Compare two complexes");
  dif->add_option("files", o.targets)->required();

  std::vector<std::string> argv_store{"kstress"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kInvalid;
  }

  for (const auto& [key, slot] : std::vector<std::pair<std::string, long long>>{
           {"n", o.n}, {"d", o.d}, {"i", o.i}, {"steps", o.steps}, {"seed", o.seed}}) {
    const auto* sub = app.get_subcommands().front();
    if (sub->get_option_no_throw("--" + key) && sub->count("--" + key)) o.params[key] = slot;
  }

  const auto start = std::chrono::steady_clock::now();
  try {
    Report r;
    if (*gen) r = cmd_gen(o);
    else if (*val) r = cmd_validate(o);
    else if (*st) r = cmd_stress(o);
    else if (*rig) r = cmd_rigidity(o);
    else if (*mis) r = cmd_missing(o);
    else if (*rec) r = cmd_reconstruct(o);
    else if (*prb) r = cmd_probe(o);
    else r = cmd_diff(o);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return emit(r, o, out, secs);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInvalid;
  }
}

}  // namespace kstress::cli
