// Exercises the shared library through its C header only.
#include <cstdlib>
#include <cstring>
#include <string>

#include "cheblab/cheblab.h"
#include "doctest.h"
#include "json.hpp"

namespace {

std::string take(char* s) {
  std::string out = s ? s : "";
  cheblab_free_string(s);
  return out;
}

}  // namespace

TEST_CASE("groups and bounds") {
  CHECK(std::string(cheblab_version()) == "0.1.0");
  cheblab_group* g = nullptr;
  REQUIRE(cheblab_group_open("S3", &g) == CHEBLAB_OK);
  uint64_t order = 0;
  size_t classes = 0;
  CHECK(cheblab_group_order(g, &order) == CHEBLAB_OK);
  CHECK(cheblab_group_class_count(g, &classes) == CHEBLAB_OK);
  CHECK(order == 6);
  CHECK(classes == 3);

  char* text = nullptr;
  uint64_t bound = 0;
  CHECK(cheblab_bound_report(g, "3/10", CHEBLAB_FORMAT_JSON, &text, &bound) == CHEBLAB_OK);
  CHECK(bound == 12);
  const auto doc = nlohmann::json::parse(take(text));
  CHECK(doc["rows"].size() == 3);

  CHECK(cheblab_bound_report(g, "0", CHEBLAB_FORMAT_TEXT, &text, &bound) == CHEBLAB_ERR_DELTA_OUT_OF_RANGE);
  CHECK(text == nullptr);
  CHECK(std::strlen(cheblab_last_error()) > 0);
  CHECK(cheblab_bound_report(g, "abc", CHEBLAB_FORMAT_TEXT, &text, nullptr) != CHEBLAB_OK);
  CHECK(cheblab_group_report(g, 7, &text) == CHEBLAB_ERR_INVALID_ARGUMENT);
  cheblab_group_free(g);

  CHECK(cheblab_group_open("Q8", &g) == CHEBLAB_ERR_UNKNOWN_GROUP);
  CHECK(g == nullptr);
  CHECK(cheblab_group_open(nullptr, &g) == CHEBLAB_ERR_NULL_POINTER);
  CHECK(cheblab_group_order(nullptr, &order) == CHEBLAB_ERR_NULL_POINTER);
  CHECK(std::string(cheblab_status_name(CHEBLAB_ERR_ZERO_WEIGHT)).size() > 0);
  cheblab_group_free(nullptr);
}

TEST_CASE("sigma rules and euler products") {
  cheblab_sigma* sigma = nullptr;
  REQUIRE(cheblab_sigma_parse(R"({"group": "S3", "kind": "forbid_everywhere", "forbidden_classes": ["3"]})", nullptr,
                              0, &sigma) == CHEBLAB_OK);
  char* text = nullptr;
  REQUIRE(cheblab_euler_report(sigma, 100, CHEBLAB_FORMAT_JSON, &text) == CHEBLAB_OK);
  const auto doc = nlohmann::json::parse(take(text));
  REQUIRE(doc["rows"].size() == 25);
  CHECK(doc["rows"][24]["running_product"] == "33554432/847288609443");
  cheblab_sigma_free(sigma);

  CHECK(cheblab_sigma_parse(R"({"group": "S3", "kind": "forbid_on_ap", "forbidden_classes": ["3"],
                                "modulus": 0, "residues": []})",
                            nullptr, 0, &sigma) == CHEBLAB_ERR_BAD_MODULUS);
  CHECK(std::string(cheblab_last_error()).find("line 2") != std::string::npos);
  CHECK(cheblab_sigma_read("/nonexistent/sigma.json", nullptr, 0, &sigma) == CHEBLAB_ERR_IO);
}

TEST_CASE("simulation through the C API is deterministic across job counts") {
  const char* config = R"({"group": "S3", "M": 3000, "T": 15, "seed": 4,
                           "sigma": {"kind": "forbid_everywhere", "forbidden_classes": ["3"]}})";
  cheblab_sim_config* cfg = nullptr;
  REQUIRE(cheblab_sim_config_parse(config, nullptr, &cfg) == CHEBLAB_OK);
  char* one = nullptr;
  char* four = nullptr;
  REQUIRE(cheblab_simulate(cfg, 1, CHEBLAB_FORMAT_CSV, &one) == CHEBLAB_OK);
  REQUIRE(cheblab_simulate(cfg, 4, CHEBLAB_FORMAT_CSV, &four) == CHEBLAB_OK);
  CHECK(take(one) == take(four));

  const uint64_t seed = 5;
  const uint64_t horizon = 40;
  CHECK(cheblab_sim_config_override(cfg, &seed, &horizon) == CHEBLAB_OK);
  REQUIRE(cheblab_simulate(cfg, 2, CHEBLAB_FORMAT_CSV, &one) == CHEBLAB_OK);
  CHECK(take(one).find("# seed: 5") != std::string::npos);
  cheblab_sim_config_free(cfg);

  CHECK(cheblab_sim_config_parse(R"({"group": "S3", "M": 10, "T": 5, "sigma": {"kind": "allow_all"},
                                     "scenario": {"H": ["1,1,1", "3"], "weight": 0}})",
                                 nullptr, &cfg) == CHEBLAB_ERR_ZERO_WEIGHT);
}

TEST_CASE("cubic fields") {
  cheblab_fields* fields = nullptr;
  REQUIRE(cheblab_fields_enumerate(200, 2, &fields) == CHEBLAB_OK);
  size_t count = 0;
  CHECK(cheblab_fields_count(fields, &count) == CHEBLAB_OK);
  CHECK(count == 23);
  uint64_t counts[3] = {};
  uint64_t ramified = 0;
  CHECK(cheblab_fields_frequencies(fields, 7, counts, &ramified) == CHEBLAB_OK);
  CHECK(counts[0] + counts[1] + counts[2] + ramified == 20);  // the non-cyclic fields
  CHECK(cheblab_fields_frequencies(fields, 8, counts, &ramified) == CHEBLAB_ERR_NOT_PRIME);

  char* text = nullptr;
  REQUIRE(cheblab_fields_records(fields, CHEBLAB_FORMAT_JSON, &text) == CHEBLAB_OK);
  const auto doc = nlohmann::json::parse(take(text));
  CHECK(doc["rows"][0]["disc"] == -23);

  cheblab_group* s3 = nullptr;
  cheblab_sigma* sigma = nullptr;
  REQUIRE(cheblab_group_open("S3", &s3) == CHEBLAB_OK);
  REQUIRE(cheblab_sigma_allow_all(s3, &sigma) == CHEBLAB_OK);
  REQUIRE(cheblab_fields_proportions(fields, sigma, 20, CHEBLAB_FORMAT_CSV, &text) == CHEBLAB_OK);
  CHECK(take(text).find("proportion") != std::string::npos);
  cheblab_sigma_free(sigma);
  cheblab_group_free(s3);
  cheblab_fields_free(fields);

  CHECK(cheblab_fields_read("/nonexistent.csv", &fields) == CHEBLAB_ERR_IO);
}
