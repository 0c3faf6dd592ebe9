// Copyright 2026 The procqa Authors.
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

// procqa: recipe QA dataset generation from AMR and action flow graphs.

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "procqa/backend/client.hpp"
#include "procqa/metrics/corpus.hpp"
#include "procqa/metrics/scorers.hpp"
#include "procqa/pipeline/config.hpp"
#include "procqa/pipeline/evaluate.hpp"
#include "procqa/pipeline/record.hpp"
#include "procqa/pipeline/run.hpp"

namespace {

namespace fs = std::filesystem;
using procqa::pipeline::PipelineConfig;
using procqa::pipeline::RunSummary;

// Exit codes: 0 success, 1 the run or check failed, 2 bad usage or config.
constexpr int kFailed = 1;
constexpr int kUsage = 2;

struct Overrides {
  fs::path config;
  std::optional<std::uint64_t> seed;
  std::optional<double> threshold;
  std::optional<int> workers;
  bool offline = false;
  fs::path out;
};

void add_overrides(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--config", o.config, "Pipeline config (JSON)")->required()->check(CLI::ExistingFile);
  cmd->add_option("--seed", o.seed, "Overrides the configured seed");
  cmd->add_option("--threshold", o.threshold, "Round-trip filter threshold")
      ->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--workers", o.workers, "Recipes processed concurrently")->check(CLI::Range(1, 64));
  cmd->add_flag("--offline", o.offline, "Never contact the backend");
  cmd->add_option("--out", o.out, "Overrides the dataset output path");
}

PipelineConfig load(const Overrides& o) {
  PipelineConfig c = procqa::pipeline::load_config(o.config);
  if (o.seed) c.seed = o.seed;
  if (o.threshold) c.threshold = *o.threshold;
  if (o.workers) c.workers = *o.workers;
  if (o.offline) c.offline = true;
  if (!o.out.empty()) c.dataset_out = o.out;
  return c;
}

int report(const RunSummary& s) {
  std::cout << procqa::pipeline::to_json(s).dump(2) << '\n';
  for (const auto& e : s.errors) std::cerr << "error: " << e << '\n';
  return s.exit_code() == 0 ? 0 : kFailed;
}

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Recipe QA dataset generation from AMR and action flow graphs"};
  app.require_subcommand(1);

  Overrides gen_opts;
  auto* gen = app.add_subcommand("gen", "Generate a dataset from a recipe corpus");
  add_overrides(gen, gen_opts);

  Overrides aug_opts;
  fs::path aug_input;
  bool want_paraphrase = false, want_answer = false;
  auto* aug = app.add_subcommand("augment", "Augment the generated pairs of a dataset");
  add_overrides(aug, aug_opts);
  aug->add_option("--input", aug_input, "Dataset JSONL to augment")->required()->check(CLI::ExistingFile);
  aug->add_flag("--paraphrase", want_paraphrase, "Run paraphrase augmentation");
  aug->add_flag("--answer-based", want_answer, "Run answer-based augmentation");

  fs::path generated, reference, eval_out, eval_csv;
  std::string scorer = "rouge1";
  auto* eval = app.add_subcommand("eval", "Diversity and coverage of a question set");
  eval->add_option("--generated", generated, "Generated questions (JSONL)")
      ->required()
      ->check(CLI::ExistingFile);
  eval->add_option("--reference", reference, "Reference questions (JSONL)")->check(CLI::ExistingFile);
  eval->add_option("--scorer", scorer, "Coverage scorer")
      ->check(CLI::IsMember(procqa::metrics::scorer_names()));
  eval->add_option("--out", eval_out, "Report JSON path (default stdout)");
  eval->add_option("--csv", eval_csv, "Per-reference coverage CSV");

  fs::path dataset;
  auto* validate = app.add_subcommand("validate", "Check a dataset file");
  validate->add_option("dataset", dataset, "Dataset JSONL")->required()->check(CLI::ExistingFile);

  auto* backends = app.add_subcommand("backends", "Backend service tools");
  backends->require_subcommand(1);
  fs::path ping_config;
  std::string ping_endpoint;
  auto* ping = backends->add_subcommand("ping", "Query the backend health route");
  auto* ping_cfg_opt = ping->add_option("--config", ping_config, "Pipeline config with a backend")
                           ->check(CLI::ExistingFile);
  ping->add_option("--endpoint", ping_endpoint, "Backend base URL")->excludes(ping_cfg_opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kUsage;
  }

  try {
    if (*gen) return report(procqa::pipeline::run(load(gen_opts)));

    if (*aug) {
      PipelineConfig c = load(aug_opts);
      c.stages.single = c.stages.temporal = false;
      if (want_paraphrase || want_answer) {
        c.stages.paraphrase = want_paraphrase;
        c.stages.answer_based = want_answer;
      } else if (!c.wants_backend()) {
        c.stages.paraphrase = c.stages.answer_based = true;
      }
      return report(procqa::pipeline::augment_dataset(c, aug_input));
    }

    if (*eval) {
      auto gen_qs = procqa::pipeline::load_questions(generated);
      std::optional<std::vector<procqa::metrics::Question>> ref_qs;
      if (!reference.empty()) ref_qs = procqa::pipeline::load_questions(reference);
      auto rep = procqa::pipeline::evaluate(gen_qs, ref_qs, scorer);
      const std::string text = procqa::pipeline::to_json(rep).dump(2) + "\n";
      if (eval_out.empty()) {
        std::cout << text;
      } else {
        write_text(eval_out, text);
      }
      if (!eval_csv.empty()) {
        if (!rep.coverage) {
          std::cerr << "error: --csv needs --reference\n";
          return kUsage;
        }
        std::ostringstream csv;
        procqa::metrics::write_coverage_csv(csv, *rep.coverage);
        write_text(eval_csv, csv.str());
      }
      return 0;
    }

    if (*validate) {
      auto diagnostics = procqa::pipeline::validate_dataset(dataset);
      for (const auto& d : diagnostics) {
        std::cerr << dataset.string() << ":" << d.line << ": " << d.message << '\n';
      }
      if (!diagnostics.empty()) return kFailed;
      std::cout << "ok\n";
      return 0;
    }

    if (*ping) {
      procqa::backend::BackendConfig bc;
      if (!ping_endpoint.empty()) {
        bc.endpoint = ping_endpoint;
        bc.check();
      } else if (!ping_config.empty()) {
        auto c = procqa::pipeline::load_config(ping_config);
        if (!c.backend) {
          std::cerr << "error: no backend in " << ping_config.string() << '\n';
          return kUsage;
        }
        bc = *c.backend;
      } else {
        std::cerr << "error: give --config or --endpoint\n";
        return kUsage;
      }
      try {
        auto h = procqa::backend::http_client(bc)->health();
        std::cout << nlohmann::json{{"endpoint", bc.endpoint}, {"status", h.status}, {"models", h.models}}
                         .dump(2)
                  << '\n';
        return h.status == "ok" ? 0 : kFailed;
      } catch (const procqa::backend::BackendError& e) {
        std::cerr << "error: " << bc.endpoint << ": " << to_string(e.kind()) << ": " << e.what() << '\n';
        return kFailed;
      }
    }
  } catch (const procqa::pipeline::PipelineError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.kind() == procqa::pipeline::PipelineError::Kind::kBadConfig ? kUsage : kFailed;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailed;
  }
  return 0;
}
