// Exercises the shared-library surface exactly as an external client would:
// only the public C header, no internal includes.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstring>
#include <string>

#include <cubex/cubex.h>

static std::string data_file(const char* name) {
  return std::string(CUBEX_DATA_DIR) + "/" + name;
}

TEST_CASE("version and error strings are always available") {
  CHECK(cubex_version() != nullptr);
  CHECK(std::string(cubex_version()) == "0.1.0");
  CHECK(cubex_last_error() != nullptr);
}

TEST_CASE("manifest round trip through the C boundary") {
  char* json = nullptr;
  char* csv = nullptr;
  const int rc =
      cubex_run_manifest(R"({"command":"anf","n":2,"table":"6"})", &json, &csv);
  REQUIRE(rc == CUBEX_OK);
  REQUIRE(json != nullptr);
  CHECK(std::string(json).find("\"roundtrip_ok\": true") != std::string::npos);
  CHECK(csv == nullptr);  // anf emits no table
  cubex_free(json);

  const int rc2 = cubex_run_manifest(R"({"command":"group","n":2})", &json, &csv);
  REQUIRE(rc2 == CUBEX_OK);
  REQUIRE(csv != nullptr);
  CHECK(std::strncmp(csv, "# manifest ", 11) == 0);
  cubex_free(json);
  cubex_free(csv);

  // caller may decline the table
  CHECK(cubex_run_manifest(R"({"command":"group","n":2})", &json, nullptr) ==
        CUBEX_OK);
  cubex_free(json);
}

TEST_CASE("status codes map the failure taxonomy") {
  char* json = nullptr;
  CHECK(cubex_run_manifest("not json", &json, nullptr) == CUBEX_PARSE);
  CHECK(std::string(cubex_last_error()).find("manifest") != std::string::npos);
  CHECK(cubex_run_manifest(R"({"command":"omega","n":9})", &json, nullptr) ==
        CUBEX_LIMIT);
  CHECK(cubex_run_manifest(nullptr, &json, nullptr) == CUBEX_PARSE);

  cubex_measure* m = nullptr;
  CHECK(cubex_measure_load("does_not_exist.measure", &m) == CUBEX_ERROR);
  CHECK(cubex_measure_parse("cubex-measure v1\nn 2\nk 2\n0 999/1000\n", &m) ==
        CUBEX_PARSE);
}

TEST_CASE("measure handles: load, inspect, canonical text, save") {
  cubex_measure* m = nullptr;
  REQUIRE(cubex_measure_load(data_file("half_n2.measure").c_str(), &m) == CUBEX_OK);
  CHECK(cubex_measure_dim(m) == 2);
  CHECK(cubex_measure_alphabet(m) == 2);
  CHECK(cubex_measure_support(m) == 2);
  int inv = 0;
  CHECK(cubex_measure_invariant(m, &inv) == CUBEX_OK);
  CHECK(inv == 1);

  char* text = nullptr;
  REQUIRE(cubex_measure_text(m, &text) == CUBEX_OK);
  cubex_measure* m2 = nullptr;
  REQUIRE(cubex_measure_parse(text, &m2) == CUBEX_OK);
  char* text2 = nullptr;
  REQUIRE(cubex_measure_text(m2, &text2) == CUBEX_OK);
  CHECK(std::string(text) == text2);  // canonical form is a fixed point

  const std::string tmp = "capi_roundtrip.measure";
  CHECK(cubex_measure_save(m, tmp.c_str()) == CUBEX_OK);
  cubex_measure* m3 = nullptr;
  REQUIRE(cubex_measure_load(tmp.c_str(), &m3) == CUBEX_OK);
  CHECK(cubex_measure_support(m3) == 2);
  std::remove(tmp.c_str());

  cubex_free(text);
  cubex_free(text2);
  cubex_measure_free(m);
  cubex_measure_free(m2);
  cubex_measure_free(m3);
  cubex_measure_free(nullptr);  // no-op
}

TEST_CASE("boolean function helpers") {
  int deg = 0;
  REQUIRE(cubex_fn_degree(2, "8", &deg) == CUBEX_OK);
  CHECK(deg == 2);  // x0*x1
  unsigned long long dist = 0;
  REQUIRE(cubex_fn_rm_distance(2, 1, "8", &dist) == CUBEX_OK);
  CHECK(dist == 1);
  CHECK(cubex_fn_degree(2, "zz", &deg) == CUBEX_PARSE);
  CHECK(cubex_fn_degree(2, nullptr, &deg) == CUBEX_PARSE);
}
