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

#include "procqa/pipeline/run.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <set>
#include <thread>

#include "procqa/amr/penman.hpp"
#include "procqa/backend/realizer.hpp"
#include "procqa/flow/flowgraph.hpp"
#include "procqa/qgen/lexicon.hpp"
#include "procqa/qgen/seed.hpp"
#include "procqa/qgen/single.hpp"
#include "procqa/qgen/temporal.hpp"

namespace procqa::pipeline {
namespace {

using json = nlohmann::json;
using Counters = std::map<std::string, std::map<std::string, std::size_t>>;

struct Resources {
  qgen::RuleLexicons lex;
  std::vector<qgen::QuestionTemplate> templates;
};

struct RecipeResult {
  std::vector<DatasetRecord> records;
  Counters stages;
  std::vector<std::string> warnings;
};

std::map<int, amr::Graph> acquire_amrs(const RecipeDoc& doc, const std::map<int, amr::Graph>* sidecar,
                                       const backend::BackendClient* client, RecipeResult& out) {
  auto& st = out.stages["amr"];
  std::map<int, amr::Graph> amrs;
  for (std::size_t i = 0; i < doc.steps.size(); ++i) {
    const int index = static_cast<int>(i);
    if (sidecar) {
      if (auto it = sidecar->find(index); it != sidecar->end()) {
        amrs.emplace(index, it->second);
        ++st["sidecar"];
        continue;
      }
    }
    if (!client) {
      ++st["missing"];
      continue;
    }
    try {
      amrs.emplace(index, amr::parse_penman(client->to_amr(doc.steps[i])));
      ++st["backend"];
    } catch (const backend::BackendError& e) {
      ++st["backend_error"];
      out.warnings.push_back("sentence " + std::to_string(i) + ": " + e.what());
    } catch (const std::exception& e) {
      ++st["parse_error"];
      out.warnings.push_back("sentence " + std::to_string(i) + ": " + e.what());
    }
  }
  return amrs;
}

void temporal_candidates(const PipelineConfig& config, const Resources& res, const RecipeDoc& doc,
                         const std::map<int, amr::Graph>& amrs,
                         std::vector<qgen::QaCandidate>& cands, RecipeResult& out) {
  auto& st = out.stages["temporal"];
  const auto path = config.flow_dir / (doc.id + ".json");
  if (config.flow_dir.empty() || !std::filesystem::exists(path)) {
    ++st["missing_flow_graph"];
    out.warnings.push_back("no flow graph; temporal questions skipped");
    return;
  }
  std::optional<flow::FlowGraph> loaded;
  try {
    loaded.emplace(flow::load_flowgraph(path));
  } catch (const std::exception& e) {
    ++st["bad_flow_graph"];
    out.warnings.push_back(std::string("flow graph: ") + e.what());
    return;
  }
  const flow::FlowGraph& graph = *loaded;
  auto append = [&cands, &st](std::vector<qgen::QaCandidate> more, const char* key) {
    st[key] += more.size();
    cands.insert(cands.end(), std::make_move_iterator(more.begin()),
                 std::make_move_iterator(more.end()));
  };
  append(qgen::gen_mixture_questions(doc.id, graph, res.templates), "mixture");
  std::vector<qgen::ActionAmr> actions;
  try {
    actions = qgen::extract_action_amrs(graph, amrs, &out.warnings);
  } catch (const qgen::TemporalError& e) {
    ++st["missing_action_amr"];
    out.warnings.push_back(std::string("next/prev/order questions skipped: ") + e.what());
    return;
  }
  append(qgen::gen_next_prev_questions(doc.id, graph, res.templates, actions), "next_prev");
  append(qgen::gen_order_questions(doc.id, graph, res.templates, actions), "order");
}

RecipeResult generate_one(const PipelineConfig& config, const Resources& res, const RecipeDoc& doc,
                          const std::map<int, amr::Graph>* sidecar,
                          const backend::BackendClient* client) {
  RecipeResult out;
  std::map<int, amr::Graph> amrs;
  if (config.stages.single || config.stages.temporal) amrs = acquire_amrs(doc, sidecar, client, out);

  std::vector<qgen::QaCandidate> cands;
  if (config.stages.single) {
    auto& st = out.stages["single"];
    std::vector<amr::Graph> pool;
    for (const auto& [i, g] : amrs) pool.push_back(g);
    for (const auto& [i, g] : amrs) {
      qgen::SentenceInput input{doc.id, i, doc.steps[static_cast<std::size_t>(i)], g};
      auto result = qgen::gen_single_questions(
          input, pool, res.lex, qgen::derive_seed(*config.seed, doc.id, static_cast<std::uint64_t>(i)));
      ++st["sentences"];
      st["candidates"] += result.candidates.size();
      st["skipped"] += result.skipped.size();
      cands.insert(cands.end(), std::make_move_iterator(result.candidates.begin()),
                   std::make_move_iterator(result.candidates.end()));
    }
  }
  if (config.stages.temporal) temporal_candidates(config, res, doc, amrs, cands, out);

  auto& rz = out.stages["realization"];
  std::vector<qgen::QaCandidate> realized;
  for (auto& c : cands) {
    try {
      if (client) {
        try {
          backend::realize_with(c, *client);
          ++rz["neural"];
          realized.push_back(std::move(c));
          continue;
        } catch (const backend::BackendError& e) {
          ++rz["backend_error"];
        }
      }
      backend::realize_offline(c);
      ++rz["fallback"];
      realized.push_back(std::move(c));
    } catch (const backend::RealizeError& e) {
      ++rz["failed"];
      out.warnings.push_back(e.what());
    }
  }

  std::stable_sort(realized.begin(), realized.end(),
                   [](const auto& a, const auto& b) { return a.category < b.category; });
  std::map<qgen::Category, std::size_t> next;
  for (const auto& c : realized) {
    const std::string id =
        doc.id + "/" + std::string(qgen::to_string(c.category)) + "/" + std::to_string(next[c.category]++);
    out.records.push_back(record_from_candidate(c, id));
  }
  return out;
}

void merge(Counters& into, const Counters& from) {
  for (const auto& [stage, counts] : from) {
    for (const auto& [key, n] : counts) into[stage][key] += n;
  }
}

// Emission order: recipe id, then category, generated pairs before
// augmented ones; otherwise the order given.
void sort_for_emission(std::vector<DatasetRecord>& records) {
  std::stable_sort(records.begin(), records.end(), [](const auto& a, const auto& b) {
    const bool ga = a.method == "generated", gb = b.method == "generated";
    return std::tie(a.recipe_id, a.category, gb) < std::tie(b.recipe_id, b.category, ga);
  });
}

std::string sentence_context(const RecipeDoc& doc, const DatasetRecord& r) {
  std::optional<int> s = r.answer_sentence;
  if (!s && !r.sentences.empty()) s = r.sentences.front();
  if (s && *s >= 0 && static_cast<std::size_t>(*s) < doc.steps.size()) {
    return doc.steps[static_cast<std::size_t>(*s)];
  }
  return doc.text();
}

void count_audit(const std::vector<augment::AugmentationRecord>& audit, std::map<std::string, std::size_t>& st) {
  for (const auto& a : audit) ++st[a.verdict];
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
    if (!out.flush()) throw std::runtime_error("cannot write " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

// Self-check, then the dataset and audit files. Nothing is written when a
// record fails the check.
void emit(const PipelineConfig& config, const std::vector<DatasetRecord>& records,
          const std::vector<augment::AugmentationRecord>& audit, RunSummary& summary) {
  std::set<std::string> ids;
  for (const auto& r : records) {
    try {
      check_record(r);
      if (!ids.insert(r.id).second) {
        throw PipelineError(PipelineError::Kind::kSchemaViolation, "duplicate id '" + r.id + "'");
      }
    } catch (const PipelineError& e) {
      summary.errors.push_back(std::string("self-check: ") + e.what());
    }
  }
  if (!summary.errors.empty()) return;

  summary.records = records.size();
  for (const auto& r : records) {
    if (r.method == "generated") ++summary.categories[std::string(qgen::to_string(r.category))];
  }
  try {
    std::ostringstream out;
    write_jsonl(out, records);
    write_file(config.dataset_out, out.str());
    if (!config.audit_out.empty()) {
      std::string lines;
      for (const auto& a : audit) lines += augment::to_json(a).dump() + "\n";
      write_file(config.audit_out, lines);
    }
  } catch (const std::exception& e) {
    summary.errors.push_back(e.what());
  }
}

// Resolves the client to use and probes it once. Returns null when the run
// is offline or no backend is configured.
const backend::BackendClient* connect(const PipelineConfig& config,
                                      const backend::BackendClient* client,
                                      std::unique_ptr<backend::BackendClient>& owned,
                                      bool& healthy, RunSummary& summary) {
  healthy = false;
  if (config.offline) return nullptr;
  if (!client && config.backend) {
    owned = backend::http_client(*config.backend);
    client = owned.get();
  }
  if (!client) return nullptr;
  try {
    healthy = client->health().status == "ok";
    if (!healthy) summary.warnings.push_back("backend reports not ok; using offline paths");
  } catch (const backend::BackendError& e) {
    summary.warnings.push_back(std::string("backend unavailable: ") + e.what());
  }
  return client;
}

void write_summary(const PipelineConfig& config, std::chrono::steady_clock::time_point start,
                   RunSummary& summary) {
  summary.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (config.summary_out.empty()) return;
  try {
    write_file(config.summary_out, to_json(summary).dump(2) + "\n");
  } catch (const std::exception& e) {
    summary.errors.push_back(e.what());
  }
}

constexpr const char* kNoBackend =
    "augmentation stages need a backend, but none is configured or the run is offline";

}  // namespace

json to_json(const RunSummary& s) {
  return {{"recipes", s.recipes},       {"records", s.records},   {"categories", s.categories},
          {"stages", s.stages},         {"warnings", s.warnings}, {"errors", s.errors},
          {"wall_seconds", s.wall_seconds}, {"exit_code", s.exit_code()}};
}

std::vector<DatasetRecord> generate(const PipelineConfig& config,
                                    const std::vector<RecipeDoc>& recipes,
                                    const SidecarAmrs& sidecar,
                                    const backend::BackendClient* client, RunSummary& summary) {
  Resources res;
  if (config.stages.single) res.lex = qgen::load_lexicons(config.lexicon_dir);
  if (config.stages.temporal) res.templates = qgen::load_templates(config.templates);

  std::vector<const RecipeDoc*> order;
  for (const auto& r : recipes) order.push_back(&r);
  std::sort(order.begin(), order.end(), [](auto a, auto b) { return a->id < b->id; });

  std::vector<RecipeResult> results(order.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < order.size(); i = next++) {
      const RecipeDoc& doc = *order[i];
      auto it = sidecar.find(doc.id);
      results[i] = generate_one(config, res, doc, it == sidecar.end() ? nullptr : &it->second, client);
    }
  };
  const auto workers = std::min<std::size_t>(static_cast<std::size_t>(config.workers), order.size());
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  }

  std::vector<DatasetRecord> records;
  for (std::size_t i = 0; i < results.size(); ++i) {
    merge(summary.stages, results[i].stages);
    for (auto& w : results[i].warnings) summary.warnings.push_back(order[i]->id + ": " + w);
    records.insert(records.end(), std::make_move_iterator(results[i].records.begin()),
                   std::make_move_iterator(results[i].records.end()));
  }
  summary.recipes += recipes.size();
  return records;
}

void augment_records(const PipelineConfig& config, const std::vector<RecipeDoc>& recipes,
                     const backend::BackendClient* client, bool client_healthy,
                     std::vector<DatasetRecord>& records,
                     std::vector<augment::AugmentationRecord>& audit, RunSummary& summary) {
  if (!config.wants_backend()) return;
  std::map<std::string, const RecipeDoc*> docs;
  for (const auto& r : recipes) docs[r.id] = &r;

  std::map<std::string, const DatasetRecord*> by_id;
  std::vector<augment::SourceQa> para_sources, answer_sources;
  for (const auto& r : records) {
    if (r.method != "generated") continue;
    by_id[r.id] = &r;
    auto doc = docs.find(r.recipe_id);
    std::string context;
    if (doc != docs.end()) {
      context = config.filter_context == FilterContext::kSentence ? sentence_context(*doc->second, r)
                                                                  : doc->second->text();
    }
    augment::SourceQa src{r.id, context, r.question, r.answer};
    para_sources.push_back(src);
    const bool polarity = r.category == qgen::Category::kPolarityYes ||
                          r.category == qgen::Category::kPolarityNo;
    if (!polarity) answer_sources.push_back(std::move(src));
  }

  const bool usable = client != nullptr && client_healthy;
  const std::string identity = client ? client->identity() : "none";
  auto skip_all = [&](const std::vector<augment::SourceQa>& sources, augment::Method method) {
    augment::AugmentResult r;
    for (const auto& s : sources) {
      r.audit.push_back({s.id, method, method == augment::Method::kParaphrase ? s.question : s.answer,
                         "skipped", std::nullopt, identity, "backend unavailable"});
    }
    return r;
  };

  std::vector<DatasetRecord> added;
  auto absorb = [&](augment::AugmentResult result, const char* stage) {
    auto& st = summary.stages[stage];
    st["sources"] += stage == std::string("paraphrase") ? para_sources.size() : answer_sources.size();
    count_audit(result.audit, st);
    for (auto& a : result.added) {
      DatasetRecord r = *by_id.at(a.source_id);
      r.id = a.id;
      r.question = std::move(a.question);
      r.question_amr.clear();
      r.realizer = "neural";
      r.method = std::string(augment::to_string(a.method));
      r.source_id = a.source_id;
      r.filter_score = a.score;
      r.backend = identity;
      added.push_back(std::move(r));
    }
    audit.insert(audit.end(), std::make_move_iterator(result.audit.begin()),
                 std::make_move_iterator(result.audit.end()));
  };

  if (config.stages.paraphrase) {
    absorb(usable ? augment::paraphrase_augment(para_sources, *client, {.k = config.paraphrase_k})
                  : skip_all(para_sources, augment::Method::kParaphrase),
           "paraphrase");
  }
  if (config.stages.answer_based) {
    augment::AnswerBasedOptions opts;
    opts.n_per_answer = config.n_per_answer;
    opts.filter = {config.threshold, config.filter_mode, config.workers};
    absorb(usable ? augment::answer_based_augment(answer_sources, *client, opts)
                  : skip_all(answer_sources, augment::Method::kAnswerBased),
           "answer_based");
  }
  records.insert(records.end(), std::make_move_iterator(added.begin()),
                 std::make_move_iterator(added.end()));
  sort_for_emission(records);
}

RunSummary run(const PipelineConfig& config, const backend::BackendClient* client) {
  const auto start = std::chrono::steady_clock::now();
  RunSummary summary;
  auto finish = [&]() -> RunSummary& {
    write_summary(config, start, summary);
    return summary;
  };

  try {
    config.check();
  } catch (const PipelineError& e) {
    summary.errors.push_back(e.what());
    return finish();
  }

  if (config.wants_backend() && (config.offline || (!client && !config.backend))) {
    summary.errors.push_back(kNoBackend);
    return finish();
  }

  IngestResult input;
  SidecarAmrs sidecar;
  try {
    input = ingest(config.recipes);
    for (const auto& d : input.diagnostics) {
      summary.warnings.push_back(config.recipes.filename().string() + ":" + std::to_string(d.line) +
                                 ": " + d.message);
    }
    if (!config.amr.empty()) {
      std::vector<std::string> notes;
      sidecar = load_sidecar_amrs(config.amr, &notes);
      for (auto& n : notes) summary.warnings.push_back("amr " + n);
    }
  } catch (const PipelineError& e) {
    summary.errors.push_back(e.what());
    return finish();
  }

  std::unique_ptr<backend::BackendClient> owned;
  bool healthy = false;
  client = connect(config, client, owned, healthy, summary);

  std::vector<DatasetRecord> records;
  std::vector<augment::AugmentationRecord> audit;
  try {
    records = generate(config, input.docs, sidecar, healthy ? client : nullptr, summary);
    sort_for_emission(records);
    augment_records(config, input.docs, client, healthy, records, audit, summary);
  } catch (const std::exception& e) {
    summary.errors.push_back(e.what());
    return finish();
  }

  emit(config, records, audit, summary);
  return finish();
}

RunSummary augment_dataset(const PipelineConfig& config, const std::filesystem::path& input,
                           const backend::BackendClient* client) {
  const auto start = std::chrono::steady_clock::now();
  RunSummary summary;
  auto finish = [&]() -> RunSummary& {
    write_summary(config, start, summary);
    return summary;
  };
  try {
    config.check();
  } catch (const PipelineError& e) {
    summary.errors.push_back(e.what());
    return finish();
  }
  if (!config.wants_backend()) {
    summary.errors.push_back("no augmentation stage is enabled");
    return finish();
  }
  if (config.offline || (!client && !config.backend)) {
    summary.errors.push_back(kNoBackend);
    return finish();
  }

  std::vector<DatasetRecord> records;
  IngestResult recipes;
  try {
    std::vector<Diagnostic> diagnostics;
    for (auto& r : read_jsonl(input, &diagnostics)) {
      if (r.method == "generated") records.push_back(std::move(r));
    }
    for (const auto& d : diagnostics) {
      summary.errors.push_back(input.filename().string() + ":" + std::to_string(d.line) + ": " +
                               d.message);
    }
    recipes = ingest(config.recipes);
  } catch (const PipelineError& e) {
    summary.errors.push_back(e.what());
  }
  if (!summary.errors.empty()) return finish();

  std::unique_ptr<backend::BackendClient> owned;
  bool healthy = false;
  client = connect(config, client, owned, healthy, summary);
  std::vector<augment::AugmentationRecord> audit;
  try {
    sort_for_emission(records);
    augment_records(config, recipes.docs, client, healthy, records, audit, summary);
  } catch (const std::exception& e) {
    summary.errors.push_back(e.what());
    return finish();
  }
  emit(config, records, audit, summary);
  return finish();
}

}  // namespace procqa::pipeline
