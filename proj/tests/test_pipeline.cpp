// Copyright 2026 The dioph Authors
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

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "dioph/cli.hpp"
#include "dioph/pipeline.hpp"

namespace {

using dioph::seq::RecurrencePair;
namespace pipe = dioph::pipe;
namespace seq = dioph::seq;

std::vector<pipe::SolutionTriple> naive(const RecurrencePair& pair, long k_max, long n_max) {
  std::vector<pipe::SolutionTriple> out;
  for (long k = 1; k <= k_max; ++k) {
    const mpz_class uk = pair.u().term(static_cast<std::size_t>(k));
    for (long m = 1; m <= n_max; ++m) {
      for (long n = m; n <= n_max; ++n) {
        const mpz_class prod = pair.v().term(static_cast<std::size_t>(m)) * pair.v().term(static_cast<std::size_t>(n));
        if (prod == uk) out.push_back({pair.name(), k, m, n, uk});
      }
    }
  }
  return out;
}

TEST(SearchTest, MatchesTripleLoop) {
  for (const RecurrencePair& pair : {RecurrencePair::fpp(), RecurrencePair::ffp()}) {
    EXPECT_EQ(pipe::search(pair, 200, 60), naive(pair, 200, 60)) << pair.name();
  }
  EXPECT_THROW(pipe::search(RecurrencePair::fpp(), 0, 5), dioph::ConfigError);
}

TEST(SearchTest, KnownSporadicSolutions) {
  const auto fpp = pipe::search(RecurrencePair::fpp(), 400, 100);
  EXPECT_NE(std::find(fpp.begin(), fpp.end(), pipe::SolutionTriple{"fpp", 12, 4, 4, 144}), fpp.end());
  EXPECT_EQ(pipe::k_set(fpp), (std::vector<long>{1, 2, 3, 5, 12}));
  const auto ffp = pipe::search(RecurrencePair::ffp(), 400, 100);
  EXPECT_NE(std::find(ffp.begin(), ffp.end(), pipe::SolutionTriple{"ffp", 7, 7, 7, 169}), ffp.end());
  EXPECT_EQ(pipe::k_set(ffp), (std::vector<long>{1, 2, 3, 7}));
  for (const auto* sols : {&fpp, &ffp}) {
    const RecurrencePair pair = sols == &fpp ? RecurrencePair::fpp() : RecurrencePair::ffp();
    for (const pipe::SolutionTriple& t : *sols) {
      const seq::KRange r = seq::k_range(pair, t.m, t.n);
      EXPECT_LE(r.k_lo, t.k);
      EXPECT_GE(r.k_hi, t.k);
    }
  }
}

TEST(VerifyTest, BuiltinBoundsAndDeterminism) {
  const pipe::Certificate fpp = pipe::verify_theorem(pipe::builtin_config("fpp"));
  EXPECT_EQ(fpp.first.reduced, 49);
  EXPECT_LE(fpp.second.reduced, 100);
  EXPECT_EQ(fpp.second.effective, 100);
  EXPECT_TRUE(fpp.k_range_consistent);
  EXPECT_EQ(fpp.ks, (std::vector<long>{1, 2, 3, 5, 12}));
  EXPECT_LE(fpp.k_required, 400);
  EXPECT_FALSE(fpp.seconds.has_value());
  EXPECT_EQ(pipe::render_certificate(fpp), pipe::render_certificate(pipe::verify_theorem(pipe::builtin_config("fpp"))));

  const pipe::Certificate ffp = pipe::verify_theorem(pipe::builtin_config("ffp"));
  EXPECT_LE(ffp.first.effective, 100);
  EXPECT_LE(ffp.second.effective, 100);
  EXPECT_EQ(ffp.ks, (std::vector<long>{1, 2, 3, 7}));
}

TEST(VerifyTest, ExpectationAndBudget) {
  pipe::PipelineConfig c = pipe::builtin_config("ffp");
  c.expect_k = std::vector<long>{1, 2, 3, 7};
  EXPECT_TRUE(pipe::verify_theorem(c).matches_expectation);
  c.expect_k = std::vector<long>{1, 2, 3};
  EXPECT_FALSE(pipe::verify_theorem(c).matches_expectation);
  c.expect_k.reset();
  c.k_max = 100;
  EXPECT_THROW(pipe::verify_theorem(c), dioph::PrecisionError);
  c = pipe::builtin_config("ffp");
  c.lemma_m = 1000;
  EXPECT_THROW(pipe::verify_theorem(c), dioph::PrecisionError);
}

TEST(ConfigTest, RoundTrip) {
  for (const char* eq : {"fpp", "ffp"}) {
    const pipe::PipelineConfig c = pipe::builtin_config(eq);
    const pipe::PipelineConfig back = pipe::parse_config(pipe::render_config(c));
    EXPECT_EQ(pipe::render_config(back), pipe::render_config(c));
    EXPECT_TRUE(back.builtin());
  }
  // a certificate is itself a valid config
  const pipe::Certificate cert = pipe::verify_theorem(pipe::builtin_config("fpp"));
  EXPECT_EQ(pipe::render_config(pipe::parse_config(pipe::render_certificate(cert))),
            pipe::render_config(pipe::builtin_config("fpp")));
}

TEST(ConfigTest, Rejections) {
  EXPECT_THROW(pipe::parse_config(R"({"equation": "fpp", "colour": 3})"), dioph::ConfigError);
  EXPECT_THROW(pipe::parse_config(R"({"equation": "fpp", "search": {"k_max": 10, "k_min": 1}})"), dioph::ConfigError);
  EXPECT_THROW(pipe::parse_config(R"({"equation": "xyz"})"), dioph::ConfigError);
  EXPECT_THROW(pipe::parse_config("not json"), dioph::ConfigError);
  const auto same_field = pipe::parse_config(
      R"({"equation": "fpp", "u": {"a": 1, "b": 1}, "v": {"a": 4, "b": 1}})");
  EXPECT_THROW(pipe::make_pair(same_field), dioph::ConfigError);
  const auto shifted = pipe::parse_config(
      R"({"equation": "fpp", "u": {"a": 1, "b": 1, "u0": 2}, "v": {"a": 2, "b": 1}})");
  EXPECT_THROW(pipe::make_pair(shifted), dioph::ConfigError);
  EXPECT_FALSE(shifted.builtin());
  const auto digits = pipe::parse_config(R"({"equation": "ffp", "search": {"k_max": 500, "n_max": 120}})");
  EXPECT_EQ(digits.k_max, 500);
  EXPECT_EQ(digits.n_max, 120);
  EXPECT_THROW(pipe::parse_config(R"({"equation": "ffp", "search": {"k_max": "500"}})"), dioph::ConfigError);
  const auto big_m = pipe::parse_config(R"({"equation": "ffp", "reduction": {"lemma_m": "40000000000000000000000000000000"}})");
  EXPECT_EQ(big_m.lemma_m, mpz_class("40000000000000000000000000000000"));
}

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun cli(std::vector<std::string> args) {
  args.insert(args.begin(), "dioph");
  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = dioph::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

TEST(CliTest, SuccessPaths) {
  const CliRun v = cli({"verify", "--equation", "ffp", "--expect-k", "1,2,3,7"});
  EXPECT_EQ(v.code, dioph::kExitOk) << v.err;
  EXPECT_NE(v.out.find("\"format\""), std::string::npos);
  EXPECT_NE(v.err.find("k-set {1,2,3,7}"), std::string::npos);
  EXPECT_EQ(cli({"search", "--equation", "fpp", "--k-max", "30", "--n-max", "10"}).code, dioph::kExitOk);
  EXPECT_EQ(cli({"bounds", "--equation", "ffp"}).code, dioph::kExitOk);
  EXPECT_EQ(cli({"reduce", "--tau-pair", "fpp", "--form", "first"}).code, dioph::kExitOk);
  EXPECT_EQ(cli({"--help"}).code, dioph::kExitOk);
}

TEST(CliTest, CertificateFile) {
  const std::filesystem::path path = std::filesystem::temp_directory_path() / "dioph_cli_cert.json";
  const CliRun v = cli({"verify", "--equation", "fpp", "--certificate", path.string()});
  ASSERT_EQ(v.code, dioph::kExitOk) << v.err;
  std::ifstream f(path);
  std::stringstream text;
  text << f.rdbuf();
  EXPECT_EQ(text.str(), pipe::render_certificate(pipe::verify_theorem(pipe::builtin_config("fpp"))));
  // the written certificate replays as a config
  EXPECT_EQ(cli({"verify", "--config", path.string(), "--certificate", path.string()}).code, dioph::kExitOk);
  std::filesystem::remove(path);
}

TEST(CliTest, UsageErrors) {
  EXPECT_EQ(cli({}).code, dioph::kExitUsage);
  EXPECT_EQ(cli({"verify"}).code, dioph::kExitUsage);
  EXPECT_EQ(cli({"verify", "--equation", "xyz"}).code, dioph::kExitUsage);
  EXPECT_EQ(cli({"verify", "--equation", "fpp", "--bogus"}).code, dioph::kExitUsage);
  EXPECT_EQ(cli({"verify", "--equation", "fpp", "--precision", "ten"}).code, dioph::kExitUsage);
  EXPECT_EQ(cli({"verify", "--equation", "fpp", "--first-admissible", "--convergent", "70"}).code, dioph::kExitUsage);
  EXPECT_EQ(cli({"reduce", "--tau-pair", "fpp", "--lemma-m", "3e31"}).code, dioph::kExitUsage);
}

TEST(CliTest, ValidationFailures) {
  EXPECT_EQ(cli({"verify", "--equation", "ffp", "--expect-k", "1,2,3"}).code, dioph::kExitValidation);
  const std::filesystem::path path = std::filesystem::temp_directory_path() / "dioph_cli_bad.json";
  {
    std::ofstream f(path);
    f << R"({"equation": "fpp", "u": {"a": 1, "b": 1}, "v": {"a": 4, "b": 1}})";
  }
  EXPECT_EQ(cli({"verify", "--config", path.string()}).code, dioph::kExitValidation);
  EXPECT_EQ(cli({"verify", "--config", path.string(), "--equation", "ffp"}).code, dioph::kExitValidation);
  std::filesystem::remove(path);
}

TEST(CliTest, PrecisionAndBudgetFailures) {
  EXPECT_EQ(cli({"verify", "--equation", "fpp", "--k-max", "100"}).code, dioph::kExitPrecision);
  ::setenv("DIOPH_PRECISION_CAP", "40", 1);
  const CliRun capped = cli({"verify", "--equation", "fpp"});
  ::unsetenv("DIOPH_PRECISION_CAP");
  EXPECT_EQ(capped.code, dioph::kExitPrecision) << capped.err;
  EXPECT_EQ(cli({"verify", "--equation", "fpp", "--first-admissible"}).code, dioph::kExitPrecision);
}

}  // namespace
