// Copyright 2026 The critgraph Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Exercises the shared library through its C header only.
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <string>
#include <vector>

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "critgraph/critgraph.h"
#include "doctest.h"
#include "json.hpp"

namespace {

template <class F>
std::string fetch(F&& call) {
  size_t needed = 0;
  REQUIRE(call(nullptr, 0, &needed) == CG_ERR_BUFFER);
  std::vector<char> buf(needed);
  REQUIRE(call(buf.data(), buf.size(), &needed) == CG_OK);
  return std::string(buf.data());
}

}  // namespace

TEST_CASE("status names and version") {
  CHECK(std::strcmp(cg_status_name(CG_OK), "ok") == 0);
  CHECK(std::strcmp(cg_status_name(CG_ERR_DOMAIN), "domain_error") == 0);
  CHECK(std::strlen(cg_version()) > 0);
}

TEST_CASE("params and envelope") {
  cg_params* p = nullptr;
  REQUIRE(cg_params_create(1000000, 2.0, 0.0, &p) == CG_OK);
  double prob = 0;
  CHECK(cg_params_p(p, &prob) == CG_OK);
  CHECK(prob == doctest::Approx(1e-6));
  double e = 0, a = 0, b = 0;
  CHECK(cg_envelope(p, &e, &a, &b) == CG_OK);
  CHECK(e == -1.0);
  CHECK(std::log(b) == doctest::Approx(-2.0397).epsilon(1e-4));
  const auto j = nlohmann::json::parse(
      fetch([&](char* buf, size_t cap, size_t* need) { return cg_envelope_json(p, buf, cap, need); }));
  CHECK(j.at("exponent") == -1.0);
  const auto pj = nlohmann::json::parse(
      fetch([&](char* buf, size_t cap, size_t* need) { return cg_params_json(p, buf, cap, need); }));
  CHECK(pj.at("T2") == 20000);
  cg_params_destroy(p);
}

TEST_CASE("errors set the thread message") {
  cg_params* p = nullptr;
  CHECK(cg_params_create(0, 1.0, 0.0, &p) == CG_ERR_DOMAIN);
  CHECK(p == nullptr);
  CHECK(std::strlen(cg_last_error()) > 0);
  CHECK(cg_params_create(10, 1.0, 0.0, nullptr) == CG_ERR_NULL);
  CHECK(cg_envelope(nullptr, nullptr, nullptr, nullptr) == CG_ERR_NULL);
  double v = 0;
  CHECK(cg_binomial_tail(-3, 0.5, 1, &v, nullptr) == CG_ERR_DOMAIN);
}

TEST_CASE("binomial tail") {
  double v = 0, lv = 0;
  REQUIRE(cg_binomial_tail(4, 0.5, 3, &v, &lv) == CG_OK);
  CHECK(v == doctest::Approx(5.0 / 16));
  CHECK(lv == doctest::Approx(std::log(5.0 / 16)));
}

TEST_CASE("monte carlo tails") {
  cg_params* p = nullptr;
  REQUIRE(cg_params_create(2000, 1.0, 0.0, &p) == CG_OK);
  const auto t = nlohmann::json::parse(fetch([&](char* buf, size_t cap, size_t* need) {
    return cg_tail_cmax(p, 0, 50, 1, 1, buf, cap, need);
  }));
  CHECK(t.at("estimate") == 1.0);
  const auto c = nlohmann::json::parse(fetch([&](char* buf, size_t cap, size_t* need) {
    return cg_tail_component(p, 2000, 50, 1, 1, buf, cap, need);
  }));
  CHECK(c.at("estimate") == 0.0);
  cg_params_destroy(p);
}

TEST_CASE("lower bound") {
  cg_params* p = nullptr;
  REQUIRE(cg_params_create(1000000000, 4.0, 0.0, &p) == CG_OK);
  const auto j = nlohmann::json::parse(fetch([&](char* buf, size_t cap, size_t* need) {
    return cg_pn_lower_bound(p, 0.0, 0.0, buf, cap, need);
  }));
  CHECK(j.at("value").get<double>() > 0.0);
  CHECK(j.at("exponent_check").get<double>() <= 6.0);
  size_t need = 0;
  char small[4];
  CHECK(cg_pn_lower_bound(p, 0.0, 0.0, small, sizeof small, &need) == CG_ERR_BUFFER);
  CHECK(need > sizeof small);
  cg_params_destroy(p);
}

TEST_CASE("ballot check from json") {
  cg_step_dist* d = nullptr;
  REQUIRE(cg_step_dist_from_json(R"({"support":[-1,1],"probabilities":["1/2","1/2"]})", &d) ==
          CG_OK);
  int holds = 0;
  const auto r = nlohmann::json::parse(fetch([&](char* buf, size_t cap, size_t* need) {
    return cg_ballot_check(d, 4, 2, &holds, buf, cap, need);
  }));
  CHECK(holds == 1);
  CHECK(r.at("lhs") == "1/8");
  cg_step_dist_destroy(d);
  CHECK(cg_step_dist_from_json("{not json", &d) == CG_ERR_DOMAIN);
  CHECK(cg_step_dist_from_json(R"({"support":[1],"probabilities":["1/3"]})", &d) ==
        CG_ERR_DOMAIN);
}

TEST_CASE("config and run") {
  const auto dir = std::filesystem::temp_directory_path() / "critgraph_capi_run";
  std::filesystem::remove_all(dir);
  cg_config* c = nullptr;
  REQUIRE(cg_config_create(&c) == CG_OK);
  CHECK(cg_config_set(c, "mode", "envelope") == CG_OK);
  CHECK(cg_config_set(c, "n", "1000,8000") == CG_OK);
  CHECK(cg_config_set(c, "A", "1,2") == CG_OK);
  CHECK(cg_config_set(c, "out", dir.c_str()) == CG_OK);
  CHECK(cg_config_set(c, "trials", "zero") == CG_ERR_DOMAIN);
  ::setenv("CRITGRAPH_OUT", (dir / "env").c_str(), 1);
  CHECK(cg_config_apply_env(c) == CG_OK);
  ::unsetenv("CRITGRAPH_OUT");
  const auto cfg = nlohmann::json::parse(
      fetch([&](char* buf, size_t cap, size_t* need) { return cg_config_json(c, buf, cap, need); }));
  CHECK(cfg.at("out") == (dir / "env").string());
  CHECK(cg_config_load_file(c, "/nonexistent/run.ini") == CG_ERR_IO);

  cg_summary* s = nullptr;
  REQUIRE(cg_run_experiment(c, &s) == CG_OK);
  CHECK(cg_summary_exit_code(s) == 0);
  const auto sj = nlohmann::json::parse(
      fetch([&](char* buf, size_t cap, size_t* need) { return cg_summary_json(s, buf, cap, need); }));
  CHECK(sj.at("files").size() == 4);
  CHECK(std::filesystem::exists(dir / "env" / "envelope.csv"));
  cg_summary_destroy(s);
  cg_config_destroy(c);
}
