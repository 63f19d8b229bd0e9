// meshct: build mesh algebras of Dynkin type, construct and mutate their
// gamma-equivariant cluster tilting modules, and check the folded
// skew-symmetrizable matrix combinatorics along the way.

#include <filesystem>
#include <future>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "meshct/endalgebra.hpp"
#include "meshct/identity_suite.hpp"
#include "meshct/serialize.hpp"

using namespace meshct;
namespace fs = std::filesystem;

namespace {

struct Global {
  std::string field = "rat";
  uint64_t seed = 1;
};

void emit(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  fs::path p(path);
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream os(p, std::ios::binary);
  if (!os) throw Error("io", "cannot write " + path);
  os << content;
}

std::string slurp(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error("io", "cannot read " + path);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

std::vector<std::string> split_seq(const std::string& seq) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : seq) {
    if (c == '{') ++depth;
    if (c == '}') --depth;
    if (c == ',' && depth == 0) {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

std::string with_meta(const std::string& json_text, const Global& g, const std::string& field) {
  auto j = nlohmann::ordered_json::parse(json_text);
  nlohmann::ordered_json out;
  out["meta"] = {{"seed", g.seed}, {"field", field}};
  for (auto& [k, v] : j.items()) out[k] = v;
  return out.dump(2) + "\n";
}

template <class Fn>
int with_field(const std::string& field, Fn&& fn) {
  if (field == "rat") return fn(static_cast<Rational*>(nullptr), std::string("rat"));
  if (field == "fp32003") return fn(static_cast<Fp*>(nullptr), std::string("fp32003"));
  throw Error("bad-field", "field must be rat or fp32003, got " + field);
}

template <class F>
std::string start_text(const TiltingContext<F>& ctx, const CTModule<F>& t) {
  std::ostringstream os;
  os << "start module of " << ctx.spec.tag << ": " << t.size() << " summands in "
     << t.orbits.size() << " orbits (positive roots: " << positive_root_count(ctx.spec.tag)
     << ")\n";
  for (int i = 0; i < t.size(); ++i) {
    os << "  " << t.labels[static_cast<size_t>(i)].str()
       << (t.projective_flag[static_cast<size_t>(i)] ? " [proj]" : "       ") << " dim=(";
    for (int v = 0; v < ctx.spec.base_count; ++v) {
      if (v) os << ",";
      os << t.summands[static_cast<size_t>(i)].dims[static_cast<size_t>(v)];
    }
    os << ")  " << loewy_string(t.summands[static_cast<size_t>(i)]) << "\n";
  }
  os << "orbits:";
  for (size_t o = 0; o < t.orbits.size(); ++o) os << " " << t.orbit_name(static_cast<int>(o));
  os << "\n";
  return os.str();
}

template <class F>
int cmd_start(const Global& g, const std::string& field_name, const std::string& type,
              const std::string& format, const std::string& out, bool no_verify) {
  TiltingContext<F> ctx(type, g.seed);
  CTModule<F> t = start_module(ctx, !no_verify);
  if (format == "text") {
    emit(out, start_text(ctx, t));
  } else if (format == "json") {
    emit(out, ct_to_json(ctx, t, field_name).dump(2) + "\n");
  } else if (format == "dot") {
    CTAnalysis<F> an = analyze(ctx, t);
    emit(out, end_quiver_dot(an));
  } else {
    throw Error("bad-format", "format must be text|json|dot");
  }
  return 0;
}

template <class F>
int cmd_mutate(const Global& g, const std::string& field_name, const std::string& type,
               const std::string& seq, const std::string& format, const std::string& out,
               bool verify_each) {
  TiltingContext<F> ctx(type, g.seed);
  CTModule<F> start = start_module(ctx, false);
  CTModule<F> cur = start;
  std::vector<std::string> dirs = split_seq(seq);
  if (dirs.empty()) throw Error("bad-argument", "--seq needs at least one orbit label");
  std::ostringstream text;
  nlohmann::ordered_json steps = nlohmann::ordered_json::array();
  bool all_ok = true;
  for (size_t k = 0; k < dirs.size(); ++k) {
    int o = cur.find_orbit(dirs[k]);
    if (o < 0) throw Error("bad-orbit", "no orbit named " + dirs[k]);
    CTAnalysis<F> before = analyze(ctx, cur);
    auto [next, rec] = mutate(ctx, cur, o, verify_each);
    CTAnalysis<F> after = analyze(ctx, next);
    MutationMatrices mm;
    mm.direction = before.orbit_labels[static_cast<size_t>(o)];
    mm.ctilde_star = after.ctilde;
    mm.btilde_star = after.btilde;
    mm.partition_star = after.partition;
    mm.nonproj_orbits_star = after.nonproj_orbits;
    IdentityReport idr = cartan_identity_suite(before.ctilde, before.btilde, before.partition,
                                               before.nonproj_orbits, &mm);
    all_ok = all_ok && idr.all_pass();
    text << "step " << (k + 1) << ": orbit " << mm.direction
         << " admissible=" << (idr.admissible ? "yes" : "no")
         << " RG=I:" << (idr.rg_identity ? "ok" : "FAIL")
         << " B=R:" << (idr.principal_equal ? "ok" : "FAIL")
         << " G-update:" << (idr.checked_g_update ? (idr.g_update ? "ok" : "FAIL") : "skipped")
         << " B-update:" << (idr.checked_b_update ? (idr.b_update ? "ok" : "FAIL") : "skipped");
    if (verify_each) text << " rigidity:ok";  // mutate() throws otherwise
    text << "\n";
    steps.push_back({{"orbit", mm.direction},
                     {"admissible", idr.admissible},
                     {"rg_identity", idr.rg_identity},
                     {"principal_equal", idr.principal_equal},
                     {"g_update", idr.checked_g_update ? (idr.g_update ? "ok" : "fail") : "skipped"},
                     {"b_update", idr.checked_b_update ? (idr.b_update ? "ok" : "fail") : "skipped"},
                     {"forward_middle", rec.middle_parts},
                     {"backward_middle", rec.back_middle_parts},
                     {"backward_end", rec.back_end_label}});
    cur = std::move(next);
  }
  // summand-wise comparison with the start module
  std::mt19937_64 rng = ctx.fresh_rng(777);
  bool back_to_start = true;
  for (int i = 0; i < cur.size() && back_to_start; ++i) {
    bool found = false;
    for (int j = 0; j < start.size() && !found; ++j) {
      if (cur.summands[static_cast<size_t>(i)].dims == start.summands[static_cast<size_t>(j)].dims &&
          iso_test(cur.summands[static_cast<size_t>(i)], start.summands[static_cast<size_t>(j)], rng))
        found = true;
    }
    back_to_start = found;
  }
  text << "final module summand-wise isomorphic to start: " << (back_to_start ? "yes" : "no")
       << "\n";
  if (back_to_start) text << "involution: ok\n";
  if (format == "json") {
    nlohmann::ordered_json j;
    j["meta"] = {{"type", type}, {"seed", g.seed}, {"field", field_name}, {"seq", dirs}};
    j["steps"] = steps;
    j["back_to_start"] = back_to_start;
    emit(out, j.dump(2) + "\n");
  } else {
    emit(out, text.str());
  }
  return all_ok ? 0 : 1;
}

int cmd_matrix(const Global& g, const std::string& field_name, const std::string& op,
               const std::string& file, const std::string& at,
               const std::string& partition_file, const std::string& out,
               const std::string& format) {
  LabeledIntMatrix m = LabeledIntMatrix::from_csv(slurp(file));
  auto output = [&](const LabeledIntMatrix& r) {
    emit(out, format == "json" ? with_meta(r.to_json(), g, field_name) : r.to_csv());
  };
  if (op == "mutate") {
    if (at.empty()) throw Error("bad-argument", "matrix mutate needs --at");
    output(fz_mutate(m, at));
    return 0;
  }
  if (op == "fold") {
    if (partition_file.empty()) throw Error("bad-argument", "matrix fold needs --partition");
    OrbitPartitionSpec p = OrbitPartitionSpec::from_json(slurp(partition_file));
    output(fold_matrix(m, p));
    return 0;
  }
  if (op == "check") {
    std::ostringstream os;
    os << "square: " << (m.square_labeled() ? "yes" : "no") << "\n";
    bool zero_diag = true;
    for (size_t i = 0; i < std::min(m.rows(), m.cols()); ++i)
      if (m.a[i][i] != 0) zero_diag = false;
    os << "zero-diagonal: " << (zero_diag ? "yes" : "no") << "\n";
    if (!partition_file.empty()) {
      OrbitPartitionSpec p = OrbitPartitionSpec::from_json(slurp(partition_file));
      os << "gamma-action: " << (is_gamma_action(m, p) ? "yes" : "no") << "\n";
      os << "admissible: " << (is_admissible(m, p) ? "yes" : "no") << "\n";
    }
    auto d = skew_symmetrizer(m);
    if (d) {
      os << "skew-symmetrizer: diag(";
      for (size_t i = 0; i < d->size(); ++i) os << (i ? "," : "") << (*d)[i];
      os << ")\n";
    } else {
      os << "skew-symmetrizer: none\n";
    }
    emit(out, os.str());
    return 0;
  }
  throw Error("bad-argument", "matrix op must be mutate|fold|check");
}

int cmd_hammock(const Global& g, const std::string& field_name, const std::string& type,
                const std::string& vertex, const std::string& format,
                const std::string& out) {
  DynkinSpec spec = folding_datum(type);
  // vertices are addressed by orbit-and-level names: v_l is the fiber vertex
  // (l, sigma^l(v)) of the translation quiver
  ZVertex named = parse_zvertex(vertex);
  if (named.v < 0 || named.v >= spec.base_count)
    throw Error("bad-vertex", "vertex out of range: " + vertex);
  ZVertex src{named.level, spec.sigma_pow(named.v, named.level)};
  HammockCache cache(spec);
  const HammockTable& tab = cache.table(src);
  if (format == "json") {
    emit(out, with_meta(hammock_json(tab, spec), g, field_name));
  } else {
    emit(out, hammock_text(tab, spec));
  }
  return 0;
}

template <class F>
int cmd_verify(const Global& g, const std::string& type, const std::string& suite) {
  // each suite builds its own context so the memoized caches stay task-local
  auto run_one = [&](const std::string& name) -> std::pair<bool, std::string> {
    std::ostringstream os;
    TiltingContext<F> ctx(type, g.seed);
    if (name == "rigidity") {
      CTModule<F> t = start_module(ctx, false);
      long v = rigidity_violations(ctx, t);
      os << "suite rigidity: " << (v == 0 ? "PASS" : "FAIL") << " (violations=" << v << ")\n";
      return {v == 0, os.str()};
    }
    if (name == "homprofile") {
      CTModule<F> t = start_module(ctx, false);
      CTAnalysis<F> an = analyze(ctx, t);
      auto [gl, dom] = homological_profile(ctx, t, an);
      bool pass = gl == 3 && dom == 3;
      os << "suite homprofile: " << (pass ? "PASS" : "FAIL") << " (gl.dim=" << gl
         << ", dom.dim=" << dom << ")\n";
      return {pass, os.str()};
    }
    if (name == "involution") {
      CTModule<F> t = start_module(ctx, false);
      int o = -1;
      for (size_t i = 0; i < t.orbits.size(); ++i) {
        if (!t.orbit_projective(static_cast<int>(i))) {
          o = static_cast<int>(i);
          break;
        }
      }
      auto [t1, r1] = mutate(ctx, t, o, false);
      auto [t2, r2] = mutate(ctx, t1, o, false);
      std::mt19937_64 rng = ctx.fresh_rng(5);
      bool pass = true;
      for (int i = 0; i < t.size(); ++i) {
        bool found = false;
        for (int j = 0; j < t.size() && !found; ++j) {
          if (iso_test(t2.summands[static_cast<size_t>(i)], t.summands[static_cast<size_t>(j)], rng))
            found = true;
        }
        pass = pass && found;
      }
      os << "suite involution: " << (pass ? "PASS" : "FAIL") << "\n";
      return {pass, os.str()};
    }
    throw Error("bad-argument", "suite must be rigidity|homprofile|involution|all");
  };
  bool ok = true;
  if (suite == "all") {
    // parallel workers, serialized output assembly
    std::vector<std::string> names{"rigidity", "homprofile", "involution"};
    std::vector<std::future<std::pair<bool, std::string>>> futs;
    for (const std::string& n : names) {
      futs.push_back(std::async(std::launch::async, [&run_one, n] { return run_one(n); }));
    }
    for (auto& f : futs) {
      auto [pass, text] = f.get();
      std::cout << text;
      ok = ok && pass;
    }
  } else {
    auto [pass, text] = run_one(suite);
    std::cout << text;
    ok = pass;
  }
  return ok ? 0 : 1;
}

template <class F>
int cmd_example(const Global& g, const std::string& type, const std::string& out_dir,
                const std::string& fixture_dir) {
  if (type != "b3") throw Error("unsupported-type", "the golden example is b3");
  TiltingContext<F> ctx(type, g.seed);
  CTModule<F> t = start_module(ctx, true);
  CTAnalysis<F> an = analyze(ctx, t);
  int o = t.find_orbit("{1,2}_1");
  auto [tstar, rec] = mutate(ctx, t, o, true);
  CTAnalysis<F> an2 = analyze(ctx, tstar);
  LabeledIntMatrix bp = an.b_principal();
  auto [u, w] = uw_factors(bp, "{1,2}_1");

  std::vector<std::pair<std::string, std::string>> artifacts;
  artifacts.push_back({"end_quiver.dot", end_quiver_dot(an)});
  artifacts.push_back({"btilde_principal.csv", an.btilde_principal().to_csv()});
  artifacts.push_back({"b_principal.csv", bp.to_csv()});
  artifacts.push_back({"u_circ.csv", u.to_csv()});
  artifacts.push_back({"w_circ.csv", w.to_csv()});
  artifacts.push_back({"mu2_b_principal.csv", an2.b_principal().to_csv()});

  bool all_match = true;
  for (const auto& [name, content] : artifacts) {
    emit((fs::path(out_dir) / name).string(), content);
    std::string expect = slurp((fs::path(fixture_dir) / name).string());
    bool okay = content == expect;
    all_match = all_match && okay;
    std::cout << "artifact " << name << ": " << (okay ? "match" : "MISMATCH") << "\n";
  }

  bool counts = t.size() == 15 && t.orbits.size() == 9;
  std::cout << "summands=15 orbits=9: " << (counts ? "ok" : "FAIL") << "\n";
  bool wau = (w * bp * u == fz_mutate(bp, "{1,2}_1"));
  std::cout << "W B U = mu(B): " << (wau ? "ok" : "FAIL") << "\n";
  bool thm = (an2.b_principal().a == fz_mutate(bp, "{1,2}_1").a);
  std::cout << "module-level B equals matrix mutation: " << (thm ? "ok" : "FAIL") << "\n";
  MutationMatrices mm{"{1,2}_1", an2.ctilde, an2.btilde, an2.partition, an2.nonproj_orbits};
  IdentityReport idr =
      cartan_identity_suite(an.ctilde, an.btilde, an.partition, an.nonproj_orbits, &mm);
  std::cout << "cartan identity suite: " << (idr.all_pass() ? "ok" : "FAIL") << "\n";
  bool pass = all_match && counts && wau && thm && idr.all_pass();
  std::cout << (pass ? "example: PASS" : "example: FAIL") << "\n";
  return pass ? 0 : 1;
}

template <class F>
int cmd_export(const Global& g, const std::string& field_name, const std::string& type,
               const std::string& what, int lo, int hi, const std::string& format,
               const std::string& out) {
  if (what == "window") {
    DynkinSpec spec = folding_datum(type);
    emit(out, window_dot(build_window(spec, lo, hi)));
    return 0;
  }
  if (what == "folded") {
    OrbitPresentation p = fold(folding_datum(type));
    emit(out, format == "json" ? with_meta(folded_json(p), g, field_name) : folded_dot(p));
    return 0;
  }
  if (what == "algebra") {
    TiltingContext<F> ctx(type, g.seed);
    nlohmann::ordered_json j;
    j["type"] = type;
    j["dim"] = ctx.lambda.dim();
    j["loewy_length"] = ctx.lambda.loewy_length();
    nlohmann::ordered_json pd = nlohmann::ordered_json::array();
    for (const auto& p : ctx.projectives) pd.push_back(p.total_dim());
    j["projective_dims"] = pd;
    emit(out, j.dump(2) + "\n");
    return 0;
  }
  if (what == "start") {
    TiltingContext<F> ctx(type, g.seed);
    CTModule<F> t = start_module(ctx, false);
    emit(out, ct_to_json(ctx, t, field_name).dump(2) + "\n");
    return 0;
  }
  throw Error("bad-argument", "export target must be window|folded|algebra|start");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mesh algebras of Dynkin type: cluster tilting modules and their mutation"};
  app.require_subcommand(1);

  Global g;
  if (const char* env = std::getenv("MESHCT_FIELD")) g.field = env;
  app.add_option("--field", g.field, "coefficient field: rat or fp32003");
  app.add_option("--seed", g.seed, "seed recorded in artifacts and used for randomized checks");

  std::string type, format = "text", out, seq, suite = "all";
  bool no_verify = false, verify_each = false;

  auto* c_start = app.add_subcommand("start", "build the start module");
  c_start->add_option("type", type)->required();
  c_start->add_option("--format", format);
  c_start->add_option("--out", out);
  c_start->add_flag("--no-verify", no_verify, "skip the rigidity verification");

  auto* c_mut = app.add_subcommand("mutate", "mutate the start module along a sequence");
  c_mut->add_option("type", type)->required();
  c_mut->add_option("--seq", seq)->required();
  c_mut->add_option("--format", format);
  c_mut->add_option("--out", out);
  c_mut->add_flag("--verify-each", verify_each, "check rigidity after every step");

  std::string mop, mfile, mat_at, mpartition;
  auto* c_matrix = app.add_subcommand("matrix", "labeled integer matrix operations");
  c_matrix->add_option("op", mop, "mutate|fold|check")->required();
  c_matrix->add_option("file", mfile)->required();
  c_matrix->add_option("--at", mat_at, "mutation direction label");
  c_matrix->add_option("--partition", mpartition, "orbit partition JSON");
  c_matrix->add_option("--format", format);
  c_matrix->add_option("--out", out);

  std::string vertex;
  auto* c_ham = app.add_subcommand("hammock", "hom dimensions from one vertex");
  c_ham->add_option("type", type)->required();
  c_ham->add_option("vertex", vertex, "orbit-and-level name, e.g. 0_0")->required();
  c_ham->add_option("--format", format);
  c_ham->add_option("--out", out);

  auto* c_ver = app.add_subcommand("verify", "run a verification suite");
  c_ver->add_option("type", type)->required();
  c_ver->add_option("--suite", suite, "rigidity|homprofile|involution|all");

  std::string out_dir = "out/b3", fixture_dir = "fixtures/b3";
  auto* c_ex = app.add_subcommand("example", "reproduce the worked b3 example");
  c_ex->add_option("type", type)->required();
  c_ex->add_option("--out", out_dir);
  c_ex->add_option("--fixtures", fixture_dir);

  std::string what;
  int lo = 0, hi = 2;
  auto* c_exp = app.add_subcommand("export", "export quivers and algebras");
  c_exp->add_option("type", type)->required();
  c_exp->add_option("--what", what)->required();
  c_exp->add_option("--lo", lo);
  c_exp->add_option("--hi", hi);
  c_exp->add_option("--format", format);
  c_exp->add_option("--out", out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    return with_field(g.field, [&](auto* fptr, const std::string& fname) -> int {
      using F = std::remove_pointer_t<decltype(fptr)>;
      if (c_start->parsed()) return cmd_start<F>(g, fname, type, format, out, no_verify);
      if (c_mut->parsed()) return cmd_mutate<F>(g, fname, type, seq, format, out, verify_each);
      if (c_matrix->parsed()) return cmd_matrix(g, fname, mop, mfile, mat_at, mpartition, out, format);
      if (c_ham->parsed()) return cmd_hammock(g, fname, type, vertex, format, out);
      if (c_ver->parsed()) return cmd_verify<F>(g, type, suite);
      if (c_ex->parsed()) return cmd_example<F>(g, type, out_dir, fixture_dir);
      if (c_exp->parsed()) return cmd_export<F>(g, fname, type, what, lo, hi, format, out);
      return 2;
    });
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
