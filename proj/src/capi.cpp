#include "cubex/cubex.h"

#include <cstdlib>
#include <cstring>
#include <stdexcept>
#include <string>

#include "boolfn.hpp"
#include "errors.hpp"
#include "measure.hpp"
#include "measure_io.hpp"
#include "runner.hpp"

struct cubex_measure {
  cubex::ExactMeasure m;
};

namespace {

thread_local std::string g_last_error;

// Map the C++ exception taxonomy onto status codes.  invalid_argument counts
// as a parse-class failure: the input was well-formed text but violated a
// documented precondition.
template <class F>
int guarded(F&& body) {
  try {
    body();
    return CUBEX_OK;
  } catch (const cubex::ParseError& e) {
    g_last_error = e.what();
    return CUBEX_PARSE;
  } catch (const std::invalid_argument& e) {
    g_last_error = e.what();
    return CUBEX_PARSE;
  } catch (const cubex::LimitError& e) {
    g_last_error = e.what();
    return CUBEX_LIMIT;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return CUBEX_ERROR;
  } catch (...) {
    g_last_error = "unknown error";
    return CUBEX_ERROR;
  }
}

// Copy into a malloc buffer so C callers pair it with cubex_free.
char* dup_string(const std::string& s) {
  char* buf = static_cast<char*>(std::malloc(s.size() + 1));
  if (!buf) throw std::bad_alloc();
  std::memcpy(buf, s.c_str(), s.size() + 1);
  return buf;
}

void require_arg(bool ok, const char* what) {
  if (!ok) throw cubex::ParseError(std::string("null argument: ") + what);
}

}  // namespace

extern "C" {

const char* cubex_version(void) { return "0.1.0"; }

const char* cubex_last_error(void) { return g_last_error.c_str(); }

void cubex_free(char* buf) { std::free(buf); }

int cubex_run_manifest(const char* manifest_json, char** json_report,
                       char** csv_report) {
  return guarded([&] {
    require_arg(manifest_json, "manifest_json");
    require_arg(json_report, "json_report");
    const cubex::RunnerResult res = cubex::run_manifest(manifest_json);
    *json_report = dup_string(res.json);
    if (csv_report) *csv_report = res.csv.empty() ? nullptr : dup_string(res.csv);
  });
}

int cubex_measure_load(const char* path, cubex_measure** out) {
  return guarded([&] {
    require_arg(path, "path");
    require_arg(out, "out");
    *out = new cubex_measure{cubex::load_measure(path)};
  });
}

int cubex_measure_parse(const char* text, cubex_measure** out) {
  return guarded([&] {
    require_arg(text, "text");
    require_arg(out, "out");
    *out = new cubex_measure{cubex::measure_from_text(text)};
  });
}

int cubex_measure_save(const cubex_measure* m, const char* path) {
  return guarded([&] {
    require_arg(m, "measure");
    require_arg(path, "path");
    cubex::save_measure(m->m, path);
  });
}

int cubex_measure_text(const cubex_measure* m, char** out) {
  return guarded([&] {
    require_arg(m, "measure");
    require_arg(out, "out");
    *out = dup_string(cubex::measure_to_text(m->m));
  });
}

void cubex_measure_free(cubex_measure* m) { delete m; }

int cubex_measure_dim(const cubex_measure* m) { return m ? m->m.n() : -1; }

int cubex_measure_alphabet(const cubex_measure* m) { return m ? m->m.k() : -1; }

long long cubex_measure_support(const cubex_measure* m) {
  return m ? static_cast<long long>(m->m.support_size()) : -1;
}

int cubex_measure_invariant(const cubex_measure* m, int* out) {
  return guarded([&] {
    require_arg(m, "measure");
    require_arg(out, "out");
    *out = cubex::is_invariant(m->m) ? 1 : 0;
  });
}

int cubex_fn_degree(int n, const char* hex_table, int* out) {
  return guarded([&] {
    require_arg(hex_table, "hex_table");
    require_arg(out, "out");
    *out = cubex::degree(cubex::BoolFn(cubex::bitvec_from_hex(n, hex_table)));
  });
}

int cubex_fn_rm_distance(int n, int r, const char* hex_table,
                         unsigned long long* out) {
  return guarded([&] {
    require_arg(hex_table, "hex_table");
    require_arg(out, "out");
    *out = cubex::rm_distance(cubex::BoolFn(cubex::bitvec_from_hex(n, hex_table)), r);
  });
}

}  // extern "C"
