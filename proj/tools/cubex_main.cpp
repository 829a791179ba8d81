// Command-line front end.  Every subcommand assembles an experiment manifest
// (a JSON object) and hands it to the shared library; `run` takes a manifest
// file directly.  The JSON report goes to stdout; --out also writes
// <command>.json and, when the command produces a table, <command>.csv.
#include <CLI11.hpp>
#include <json.hpp>

#include <deque>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <cubex/cubex.h>

using nlohmann::json;

namespace {

struct FieldSpec {
  const char* flag;
  const char* key;  // manifest field the flag feeds
  enum Kind { Int, U64, Str, Flag, FlagFalse, IntList, StrList } kind;
  bool required;
  const char* help;
};

struct SubState {
  std::string name;
  CLI::App* app = nullptr;
  std::vector<FieldSpec> fields;
  // bound storage; deques keep addresses stable while options are added
  std::deque<int64_t> ints;
  std::deque<uint64_t> u64s;
  std::deque<std::string> strs;
  std::deque<bool> bools;
  std::deque<std::vector<int64_t>> intlists;
  std::deque<std::vector<std::string>> strlists;
  std::vector<CLI::Option*> opts;

  void bind() {
    for (const FieldSpec& f : fields) {
      CLI::Option* o = nullptr;
      switch (f.kind) {
        case FieldSpec::Int:
          ints.emplace_back();
          o = app->add_option(f.flag, ints.back(), f.help);
          break;
        case FieldSpec::U64:
          u64s.emplace_back();
          o = app->add_option(f.flag, u64s.back(), f.help);
          break;
        case FieldSpec::Str:
          strs.emplace_back();
          o = app->add_option(f.flag, strs.back(), f.help);
          break;
        case FieldSpec::Flag:
        case FieldSpec::FlagFalse:
          bools.emplace_back(false);
          o = app->add_flag(f.flag, bools.back(), f.help);
          break;
        case FieldSpec::IntList:
          intlists.emplace_back();
          o = app->add_option(f.flag, intlists.back(), f.help);
          break;
        case FieldSpec::StrList:
          strlists.emplace_back();
          o = app->add_option(f.flag, strlists.back(), f.help);
          break;
      }
      if (f.required) o->required();
      opts.push_back(o);
    }
  }

  json manifest() const {
    json m;
    m["command"] = name;
    std::size_t i_int = 0, i_u64 = 0, i_str = 0, i_bool = 0, i_il = 0, i_sl = 0;
    for (std::size_t i = 0; i < fields.size(); ++i) {
      const FieldSpec& f = fields[i];
      const bool given = opts[i]->count() > 0;
      switch (f.kind) {
        case FieldSpec::Int:
          if (given) m[f.key] = ints[i_int];
          ++i_int;
          break;
        case FieldSpec::U64:
          if (given) m[f.key] = u64s[i_u64];
          ++i_u64;
          break;
        case FieldSpec::Str:
          if (given) m[f.key] = strs[i_str];
          ++i_str;
          break;
        case FieldSpec::Flag:
          if (given) m[f.key] = true;
          ++i_bool;
          break;
        case FieldSpec::FlagFalse:
          if (given) m[f.key] = false;
          ++i_bool;
          break;
        case FieldSpec::IntList:
          if (given) m[f.key] = intlists[i_il];
          ++i_il;
          break;
        case FieldSpec::StrList:
          if (given) m[f.key] = strlists[i_sl];
          ++i_sl;
          break;
      }
    }
    return m;
  }
};

// Failures produce a machine-readable record on stdout plus a human line on
// stderr; the exit code distinguishes parse, limit, and I/O classes.
int fail(int rc, const std::string& message) {
  json err;
  err["error"]["status"] = rc;
  err["error"]["kind"] =
      rc == CUBEX_PARSE ? "parse" : rc == CUBEX_LIMIT ? "limit" : "error";
  err["error"]["message"] = message;
  std::cout << err.dump(2) << "\n";
  std::cerr << "error: " << message << "\n";
  return rc;
}

int emit(const std::string& manifest, const std::string& name,
         const std::string& out_dir) {
  char* report = nullptr;
  char* csv = nullptr;
  const int rc = cubex_run_manifest(manifest.c_str(), &report, &csv);
  if (rc != CUBEX_OK) return fail(rc, cubex_last_error());
  // persist artifacts before echoing, so a failed run never half-reports
  if (!out_dir.empty()) {
    {
      std::ofstream f(out_dir + "/" + name + ".json", std::ios::binary);
      f << report;
      if (!f) {
        cubex_free(report);
        cubex_free(csv);
        return fail(CUBEX_ERROR, "cannot write report to " + out_dir);
      }
    }
    if (csv) {
      std::ofstream f(out_dir + "/" + name + ".csv", std::ios::binary);
      f << csv;
      if (!f) {
        cubex_free(report);
        cubex_free(csv);
        return fail(CUBEX_ERROR, "cannot write table to " + out_dir);
      }
    }
  }
  std::cout << report;
  cubex_free(report);
  cubex_free(csv);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact-computation workbench for cube-symmetric measures"};
  app.set_version_flag("--version", cubex_version());
  app.require_subcommand(1);

  std::string out_dir;
  app.add_option("--out", out_dir, "directory for <command>.json / <command>.csv")
      ->expected(1);

  std::deque<SubState> subs;
  auto sub = [&](const char* name, const char* desc,
                 std::vector<FieldSpec> fields) -> SubState& {
    subs.emplace_back();
    SubState& s = subs.back();
    s.name = name;
    s.app = app.add_subcommand(name, desc);
    s.app->fallthrough();  // lets --out appear after the subcommand
    s.fields = std::move(fields);
    s.bind();
    return s;
  };

  sub("group", "isometry group order, generators, config orbits",
      {{"--n", "n", FieldSpec::Int, true, "cube dimension"},
       {"--k", "k", FieldSpec::Int, false, "alphabet size (default 2)"}});
  sub("faces", "enumerate the r-faces of the n-cube",
      {{"--n", "n", FieldSpec::Int, true, "cube dimension"},
       {"--r", "r", FieldSpec::Int, true, "face dimension"},
       {"--max-faces", "max_faces", FieldSpec::U64, false, "table size guard"}});
  sub("anf", "polynomial coefficients and degree of a truth table",
      {{"--n", "n", FieldSpec::Int, true, "cube dimension"},
       {"--table", "table", FieldSpec::Str, true, "hex truth table, 2^n bits"}});
  sub("omega", "verify the face-sum membership rule by exhaustive scan",
      {{"--n", "n", FieldSpec::Int, true, "cube dimension (<= 4)"},
       {"--r-max", "r_max", FieldSpec::Int, false, "largest face order checked"}});
  sub("rm-distance", "Hamming distance to the degree-<=r class",
      {{"--n", "n", FieldSpec::Int, true, "cube dimension"},
       {"--r", "r", FieldSpec::Int, true, "degree bound"},
       {"--table", "table", FieldSpec::Str, true, "hex truth table"}});
  sub("field-search", "scan F_q functions for the zero-sum face property",
      {{"--q", "q", FieldSpec::Int, true, "field size (2, 3 or 5)"},
       {"--d", "d", FieldSpec::Int, true, "domain dimension"},
       {"--r", "r", FieldSpec::Int, true, "face order"},
       {"--mode", "mode", FieldSpec::Str, true, "copy mode: affine | isometric"},
       {"--sampled", "exhaustive", FieldSpec::FlagFalse, false,
        "sample random tables instead of scanning"},
       {"--trials", "trials", FieldSpec::U64, false, "samples when --sampled"},
       {"--seed", "seed", FieldSpec::U64, false, "rng seed when --sampled"},
       {"--max-scan", "max_scan", FieldSpec::U64, false, "exhaustive scan guard"}});
  sub("hyperplane", "level-set measure of a random affine form",
      {{"--n", "n", FieldSpec::Int, true, "cube dimension"},
       {"--p", "p", FieldSpec::Str, true, "coefficient bias, e.g. 1/8"},
       {"--marginal-dim", "marginal_dim", FieldSpec::Int, false,
        "face dimension for the reported marginal (default 3)"},
       {"--save-measure", "save_measure", FieldSpec::Str, false, "output path"}});
  sub("walk", "group random-walk increment measure on the cube",
      {{"--factors", "factors", FieldSpec::IntList, true,
        "cyclic factors of the step group, e.g. 4 or 2 2"},
       {"--nu", "nu", FieldSpec::StrList, true,
        "step distribution, one fraction per element"},
       {"--n", "n", FieldSpec::Int, true, "cube dimension"},
       {"--max-tuples", "max_tuples", FieldSpec::U64, false, "enumeration guard"},
       {"--save-measure", "save_measure", FieldSpec::Str, false, "output path"}});
  sub("nu-check", "symmetry test for a step distribution",
      {{"--factors", "factors", FieldSpec::IntList, true, "cyclic factors"},
       {"--nu", "nu", FieldSpec::StrList, true, "step distribution"}});
  sub("mixture", "windowed combination of two invariant measures",
      {{"--p", "p", FieldSpec::Str, true, "resampling bias, e.g. 1/16"},
       {"--n", "n", FieldSpec::Int, false, "dimension (point-mass endpoints)"},
       {"--mu1", "mu1", FieldSpec::Str, false, "first measure file"},
       {"--mu2", "mu2", FieldSpec::Str, false, "second measure file"},
       {"--window-free", "window_free", FieldSpec::U64, false,
        "free-coordinate mask of the comparison window"},
       {"--window-base", "window_base", FieldSpec::U64, false, "window base point"},
       {"--max-assignments", "max_assignments", FieldSpec::U64, false,
        "chart enumeration guard"},
       {"--save-measure", "save_measure", FieldSpec::Str, false, "output path"}});
  sub("dbar", "exact matching distance between two invariant measures",
      {{"--mu", "mu", FieldSpec::Str, true, "first measure file"},
       {"--nu", "nu", FieldSpec::Str, true, "second measure file"},
       {"--vertex", "vertex", FieldSpec::U64, false, "reference vertex (default 0)"},
       {"--max-pairs", "max_pairs", FieldSpec::U64, false, "pair-space guard"},
       {"--save-coupling", "save_coupling", FieldSpec::Str, false,
        "write the optimal coupling as a paired measure"}});
  sub("decompose", "split an invariant measure into orbit components",
      {{"--measure", "measure", FieldSpec::Str, true, "measure file"}});
  sub("testability", "random face tests against the hard monomial",
      {{"--J", "J", FieldSpec::Int, true, "sampled face dimension"},
       {"--n-list", "n_list", FieldSpec::IntList, true, "cube dimensions"},
       {"--trials", "trials", FieldSpec::U64, true, "samples per dimension"},
       {"--seed", "seed", FieldSpec::U64, true, "rng seed"},
       {"--r", "r", FieldSpec::Int, false, "degree bound (default 1)"},
       {"--brute-max", "brute_max", FieldSpec::Int, false,
        "largest n for brute-force distance (default 5)"}});
  sub("dmt", "matching fraction for double transitivity relaxations",
      {{"--kind", "kind", FieldSpec::Str, true, "hypergraph | cube"},
       {"--k", "k", FieldSpec::Int, false, "edge size (hypergraph only)"},
       {"--n-list", "n_list", FieldSpec::IntList, true, "ground-set sizes"},
       {"--I", "I", FieldSpec::IntList, true, "pinned structures (encodings)"},
       {"--J", "J", FieldSpec::IntList, true, "matched structures (encodings)"},
       {"--mode", "mode", FieldSpec::Str, false, "exhaustive (default) | sampled"},
       {"--trials", "trials", FieldSpec::U64, false, "samples when sampled"},
       {"--seed", "seed", FieldSpec::U64, false, "rng seed when sampled"},
       {"--verify-pairs", "verify_pairs", FieldSpec::Flag, false,
        "re-check every pair by explicit witness search"}});

  CLI::App* run = app.add_subcommand("run", "execute a manifest file");
  run->fallthrough();
  std::string manifest_path;
  run->add_option("--manifest", manifest_path, "manifest JSON file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help / --version
    return fail(CUBEX_PARSE, e.what());  // bad flags get the same error record
  }

  if (run->parsed()) {
    std::ifstream f(manifest_path, std::ios::binary);
    if (!f) return fail(CUBEX_ERROR, "cannot open " + manifest_path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return emit(ss.str(), "run", out_dir);
  }
  for (const SubState& s : subs)
    if (s.app->parsed()) return emit(s.manifest().dump(), s.name, out_dir);
  return CUBEX_ERROR;  // unreachable: a subcommand is required
}
