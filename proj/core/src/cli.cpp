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

#include "dioph/cli.hpp"

#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dioph/pipeline.hpp"

namespace dioph {

namespace {

struct CommonOptions {
  std::string equation;
  std::string config_path;
  std::optional<int> precision;
};

void add_common(CLI::App* cmd, CommonOptions& o, bool with_config = true) {
  cmd->add_option("--equation", o.equation, "fpp (F_k = P_m P_n) or ffp (P_k = F_m F_n)")
      ->check(CLI::IsMember({"fpp", "ffp"}));
  if (with_config) cmd->add_option("--config", o.config_path, "config tree (JSON) for a custom pair")->check(CLI::ExistingFile);
  cmd->add_option("--precision", o.precision, "initial working precision in decimal digits")
      ->check(CLI::Range(real::kMinConstantDigits, 1000000));
}

pipe::PipelineConfig resolve(const CommonOptions& o) {
  pipe::PipelineConfig config;
  if (!o.config_path.empty()) {
    config = pipe::load_config(o.config_path);
    if (!o.equation.empty() && o.equation != config.equation) {
      throw ConfigError("--equation " + o.equation + " contradicts config equation " + config.equation);
    }
  } else if (!o.equation.empty()) {
    config = pipe::builtin_config(o.equation);
  } else {
    throw CLI::RequiredError("--equation or --config");
  }
  if (o.precision) config.precision.initial_digits = *o.precision;
  if (config.precision.cap_digits < config.precision.initial_digits) {
    throw PrecisionError("--precision " + std::to_string(config.precision.initial_digits) + " exceeds the cap of " +
                         std::to_string(config.precision.cap_digits) + " digits");
  }
  return config;
}

void write_text(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot write " + path);
  f << text;
}

std::string join(const std::vector<long>& ks) {
  std::ostringstream s;
  for (std::size_t i = 0; i < ks.size(); ++i) s << (i ? "," : "") << ks[i];
  return s.str();
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Certified bound-reduce-search solver for U_k = V_m V_n", "dioph"};
  app.require_subcommand(1);

  CommonOptions verify_opts;
  std::string certificate_path;
  bool first_admissible = false;
  std::optional<std::size_t> convergent;
  std::vector<long> expect_k;
  bool timing = false;
  std::optional<long> verify_k_max, verify_n_max;
  CLI::App* verify = app.add_subcommand("verify", "run all three stages and emit a certificate");
  add_common(verify, verify_opts);
  verify->add_option("--certificate", certificate_path, "write the certificate here (default stdout)");
  auto* fa = verify->add_flag("--first-admissible", first_admissible,
                              "start the reduction at the first convergent with q > 6M");
  verify->add_option("--convergent", convergent, "start the reduction at this convergent index")->excludes(fa);
  verify->add_option("--expect-k", expect_k, "fail validation unless the k-set equals this list")->delimiter(',');
  verify->add_flag("--timing", timing, "record wall time in the certificate");
  verify->add_option("--k-max", verify_k_max, "search budget for k")->check(CLI::PositiveNumber);
  verify->add_option("--n-max", verify_n_max, "search budget for n")->check(CLI::PositiveNumber);

  CommonOptions search_opts;
  long k_max = 400;
  long n_max = 100;
  CLI::App* search = app.add_subcommand("search", "exhaustive search only");
  add_common(search, search_opts);
  search->add_option("--k-max", k_max, "largest k")->check(CLI::PositiveNumber);
  search->add_option("--n-max", n_max, "largest n")->check(CLI::PositiveNumber);

  CommonOptions bounds_opts;
  CLI::App* bounds = app.add_subcommand("bounds", "stage 1 only: Matveev bounds for m and n");
  add_common(bounds, bounds_opts);

  CommonOptions reduce_opts;
  std::string form = "first";
  std::string sign = "both";
  long m_max = 90;
  std::string lemma_m;
  std::optional<long> a_override;
  bool reduce_first_admissible = false;
  std::optional<std::size_t> reduce_convergent;
  CLI::App* reduce = app.add_subcommand("reduce", "run the reduction lemma for one linear form");
  reduce->add_option("--tau-pair", reduce_opts.equation, "pair whose tau is expanded: fpp or ffp")
      ->check(CLI::IsMember({"fpp", "ffp"}));
  reduce->add_option("--config", reduce_opts.config_path, "config tree (JSON) for a custom pair")->check(CLI::ExistingFile);
  reduce->add_option("--precision", reduce_opts.precision, "initial working precision in decimal digits")
      ->check(CLI::Range(real::kMinConstantDigits, 1000000));
  reduce->add_option("--form", form, "first or second linear form")->check(CLI::IsMember({"first", "second"}));
  reduce->add_option("--sign", sign, "positive, negative or both")->check(CLI::IsMember({"positive", "negative", "both"}));
  reduce->add_option("--m-max", m_max, "second form: members m = 1..m-max")->check(CLI::PositiveNumber);
  reduce->add_option("--lemma-m", lemma_m, "M of the lemma (decimal)");
  reduce->add_option("--A", a_override, "override A (integer)")->check(CLI::PositiveNumber);
  auto* rfa = reduce->add_flag("--first-admissible", reduce_first_admissible, "start at the first q > 6M");
  reduce->add_option("--convergent", reduce_convergent, "start at this convergent index")->excludes(rfa);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (verify->parsed()) {
      pipe::PipelineConfig config = resolve(verify_opts);
      if (first_admissible) config.convergent_index.reset();
      if (convergent) config.convergent_index = *convergent;
      if (!expect_k.empty()) {
        std::sort(expect_k.begin(), expect_k.end());
        config.expect_k = expect_k;
      }
      if (verify_k_max) config.k_max = *verify_k_max;
      if (verify_n_max) config.n_max = *verify_n_max;
      config.timing = timing;
      const pipe::Certificate cert = pipe::verify_theorem(config);
      write_text(certificate_path, pipe::render_certificate(cert), out);
      std::ostream& log = certificate_path.empty() || certificate_path == "-" ? err : out;
      log << cert.pair_name << ": m <= " << cert.first.effective.get_str() << ", n <= "
          << cert.second.effective.get_str() << ", k-set {" << join(cert.ks) << "}\n";
      if (!cert.matches_expectation) {
        err << "k-set differs from --expect-k {" << join(*config.expect_k) << "}\n";
        return kExitValidation;
      }
      if (!cert.k_range_consistent) {
        err << "a solution lies outside its k-range\n";
        return kExitValidation;
      }
      return kExitOk;
    }
    if (search->parsed()) {
      const pipe::PipelineConfig config = resolve(search_opts);
      const seq::RecurrencePair pair = pipe::make_pair(config);
      out << pipe::render_solutions(pipe::search(pair, k_max, n_max));
      return kExitOk;
    }
    if (bounds->parsed()) {
      const pipe::PipelineConfig config = resolve(bounds_opts);
      const seq::RecurrencePair pair = pipe::make_pair(config);
      const lin::AbsoluteBound b = lin::absolute_bound(pair, config.precision);
      out << pipe::render_bounds(pair, b, config.precision.initial_digits);
      return kExitOk;
    }
    if (reduce->parsed()) {
      pipe::PipelineConfig config = resolve(reduce_opts);
      if (!lemma_m.empty()) {
        if (config.lemma_m.set_str(lemma_m, 10) != 0) throw CLI::ValidationError("--lemma-m", "not an integer");
      }
      if (reduce_first_admissible) config.convergent_index.reset();
      if (reduce_convergent) config.convergent_index = *reduce_convergent;
      const seq::RecurrencePair pair = pipe::make_pair(config);
      const int digits = config.precision.initial_digits;
      const lin::MBound mb = lin::stage1_m_bound(pair);
      const bool second = form == "second";
      const lin::LinearFormStage stage =
          second ? lin::build_stage(lin::StageKind::kSecond, pair, mb.a1_coefficient) : mb.stage;

      const std::size_t min_terms = (config.convergent_index ? *config.convergent_index + 1 : 0) + 40;
      const red::ConvergentTable table =
          red::expand(red::pair_tau(pair, digits), 6 * config.lemma_m, min_terms, config.precision);
      red::ReducePolicy rp;
      rp.start_index = config.convergent_index;
      rp.precision = config.precision;

      std::vector<red::Sign> signs;
      if (sign != "negative") signs.push_back(red::Sign::kPositive);
      if (sign != "positive") signs.push_back(red::Sign::kNegative);
      std::vector<red::ReductionOutcome> outcomes;
      red::ReductionInstance shown;
      for (red::Sign sg : signs) {
        red::ReductionInstance inst = red::gamma_to_lemma_form(
            stage, pair, sg, config.lemma_m, second ? std::optional<long>(1) : std::nullopt, digits);
        if (a_override) inst.a = real::Expr(*a_override);
        if (second) {
          inst.label = stage.name + (sg == red::Sign::kPositive ? "+" : "-");
          const red::FamilyOutcome f =
              red::reduce_family(inst, red::family_members(stage, pair, sg, m_max, digits), table, rp);
          outcomes.insert(outcomes.end(), f.members.begin(), f.members.end());
        } else {
          outcomes.push_back(red::dp_reduce(inst, table, rp));
        }
        if (sg == signs.front()) shown = inst;
      }
      out << pipe::render_reduction(outcomes, shown);
      return kExitOk;
    }
  } catch (const CLI::Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ConfigError& e) {
    err << "validation error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const PrecisionError& e) {
    err << "precision/budget failure: " << e.what() << "\n";
    return kExitPrecision;
  } catch (const DomainError& e) {
    err << "precision/budget failure: " << e.what() << "\n";
    return kExitPrecision;
  }
  return kExitUsage;
}

}  // namespace dioph
