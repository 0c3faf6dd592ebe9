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

// Acceptance run: one PASS/FAIL line per criterion, exit 1 if any fails.

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "procqa/amr/edit.hpp"
#include "procqa/amr/graph.hpp"
#include "procqa/amr/penman.hpp"
#include "procqa/backend/filter.hpp"
#include "procqa/backend/realizer.hpp"
#include "procqa/flow/flowgraph.hpp"
#include "procqa/metrics/corpus.hpp"
#include "procqa/metrics/scorers.hpp"
#include "procqa/pipeline/evaluate.hpp"
#include "procqa/pipeline/record.hpp"
#include "procqa/pipeline/run.hpp"
#include "procqa/qgen/lexicon.hpp"
#include "procqa/qgen/seed.hpp"
#include "procqa/qgen/single.hpp"
#include "procqa/qgen/temporal.hpp"
#include "support/fake_backend.hpp"
#include "support/fixtures.hpp"
#include "support/flow_oracle.hpp"
#include "support/metrics_oracle.hpp"
#include "support/random_flow.hpp"
#include "support/random_graph.hpp"

namespace {

namespace fs = std::filesystem;
using namespace procqa;
using amr::Graph;
using testing::golden_graph;

struct Outcome {
  bool pass = true;
  std::string detail;

  // Records the first failure only.
  void require(bool ok, const std::string& what) {
    if (!ok && pass) {
      pass = false;
      detail = what;
    }
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string flat(const Graph& g) { return amr::serialize_penman(g, {.indent = false}); }

const std::vector<qgen::QuestionTemplate>& templates() {
  static const auto t = qgen::load_templates(testing::data_path("templates/temporal.penman"));
  return t;
}

const qgen::RuleLexicons& lexicons() {
  static const auto l = qgen::load_lexicons(testing::data_path("lexicons"));
  return l;
}

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(3);
  s << std::fixed << v;
  return s.str();
}

Outcome penman_round_trip() {
  Outcome o;
  const auto t0 = Clock::now();
  std::size_t goldens = 0;
  for (const auto& [id, text] : testing::golden_texts()) {
    Graph g = amr::parse_penman(text);
    for (bool indent : {true, false}) {
      Graph back = amr::parse_penman(amr::serialize_penman(g, {.indent = indent}));
      o.require(amr::isomorphic(g, back), "golden graph " + id + " changed after a round trip");
    }
    ++goldens;
  }
  o.require(testing::golden_texts().count("cook-soup") == 1, "cooking graph missing from the golden set");
  std::mt19937_64 rng(1000);
  for (int i = 0; i < 1000; ++i) {
    Graph g = testing::random_graph(rng);
    g.validate();
    for (bool indent : {true, false}) {
      const std::string text = amr::serialize_penman(g, {.indent = indent});
      o.require(amr::isomorphic(g, amr::parse_penman(text)), "random graph " + std::to_string(i));
    }
  }
  const double s = seconds_since(t0);
  o.require(s < 5.0, "took " + fmt(s) + " s");
  if (o.pass) o.detail = std::to_string(goldens) + " golden graphs + 1000 random graphs in " + fmt(s) + " s";
  return o;
}

Outcome arg2_golden() {
  Outcome o;
  qgen::SentenceInput in{"acceptance", 0, "We mix salt and chicken.", golden_graph("arg2-original")};
  const auto direct = qgen::direct_arg2_question(in);
  o.require(flat(direct.question_amr) == flat(golden_graph("arg2-direct")),
            "direct question " + flat(direct.question_amr));
  const auto swapped = qgen::gen_arg2_questions(in, lexicons());
  o.require(swapped.size() == 1, std::to_string(swapped.size()) + " swapped questions");
  if (swapped.size() == 1) {
    o.require(flat(swapped[0].question_amr) == flat(golden_graph("arg2-swapped")),
              "swapped question " + flat(swapped[0].question_amr));
  }
  if (o.pass) o.detail = "direct and swapped graphs match exactly";
  return o;
}

Outcome single_unknown() {
  Outcome o;
  std::size_t questions = 0, sentences = 0;
  for (const std::string recipe : {"chicken-soup", "shepherds-pie"}) {
    const auto amrs = testing::corpus_amrs(recipe);
    std::vector<Graph> pool;
    for (const auto& [i, g] : amrs) pool.push_back(g);
    std::vector<qgen::QaCandidate> all;
    for (const auto& [i, g] : amrs) {
      ++sentences;
      auto r = qgen::gen_single_questions({recipe, i, "", g}, pool, lexicons(),
                                          qgen::derive_seed(5, recipe, static_cast<std::uint64_t>(i)));
      all.insert(all.end(), r.candidates.begin(), r.candidates.end());
    }
    auto flow = flow::load_flowgraph(testing::fixture_path("corpus/flow/" + recipe + ".json"));
    auto actions = qgen::extract_action_amrs(flow, amrs);
    auto temporal = qgen::gen_temporal_questions(recipe, flow, templates(), actions);
    all.insert(all.end(), temporal.begin(), temporal.end());
    for (const auto& c : all) {
      ++questions;
      const auto n = amr::count_unknowns(c.question_amr);
      o.require(n == 1, c.label() + " has " + std::to_string(n) + " amr-unknown nodes");
    }
  }
  o.require(sentences == 20, std::to_string(sentences) + " corpus sentences");
  if (o.pass) {
    o.detail = std::to_string(questions) + " questions over " + std::to_string(sentences) + " sentences";
  }
  return o;
}

Outcome what_with_golden() {
  Outcome o;
  qgen::SentenceInput in{"acceptance", 0,
                         "Fry the coated chicken wings in oil at 350 degrees for 3-5 mins.",
                         golden_graph("fry-original")};
  const auto cs = qgen::gen_what_with_questions(in);
  o.require(cs.size() == 3, std::to_string(cs.size()) + " questions");
  if (cs.size() == 3) {
    o.require(amr::isomorphic(cs[0].question_amr, golden_graph("fry-what-with-compound")),
              "compound question " + flat(cs[0].question_amr));
    o.require(amr::isomorphic(cs[2].question_amr, golden_graph("fry-what-with-oil")),
              "oil question " + flat(cs[2].question_amr));
  }
  if (o.pass) o.detail = "compound do-02 and oil question graphs match";
  return o;
}

Outcome mixture_oracle() {
  Outcome o;
  const auto t0 = Clock::now();
  std::mt19937_64 rng(500);
  std::size_t named = 0;
  for (int trial = 0; trial < 500; ++trial) {
    flow::FlowGraph g = testing::random_flowgraph(rng, 30);
    o.require(g.size() <= 30, "graph with " + std::to_string(g.size()) + " actions");
    for (const auto& m : g.mixtures()) {
      if (!m.named) continue;
      ++named;
      auto got = flow::ingredients_of(g, m);
      std::set<std::string> as_set(got.begin(), got.end());
      o.require(as_set.size() == got.size(), "duplicate ingredients for " + m.name);
      o.require(as_set == testing::oracle_ingredients(g, m.producing_act),
                "trial " + std::to_string(trial) + " mixture " + m.name);
    }
  }
  auto pie = flow::load_flowgraph(testing::fixture_path("corpus/flow/shepherds-pie.json"));
  bool found = false;
  for (const auto& m : pie.mixtures()) {
    if (m.name != "vegetables" || m.consumer_act != 2) continue;
    found = true;
    auto got = flow::ingredients_of(pie, m);
    o.require(got == std::vector<std::string>{"chopped carrots", "turnips"},
              "vegetables resolve to something else");
  }
  o.require(found, "no vegetables mixture in the pie recipe");
  const double s = seconds_since(t0);
  o.require(s < 10.0, "took " + fmt(s) + " s");
  o.require(named > 0, "no named mixtures generated");
  if (o.pass) {
    o.detail = std::to_string(named) + " named mixtures agree; vegetables -> {chopped carrots, turnips}; " +
               fmt(s) + " s";
  }
  return o;
}

Outcome temporal_counts() {
  Outcome o;
  auto flow = flow::load_flowgraph(testing::fixture_path("corpus/flow/shepherds-pie.json"));
  auto actions = qgen::extract_action_amrs(flow, testing::corpus_amrs("shepherds-pie"));
  const auto order = qgen::gen_order_questions("shepherds-pie", flow, templates(), actions);
  const auto pairs = flow::order_pairs(flow).size();
  o.require(order.size() == 4 * pairs,
            std::to_string(order.size()) + " order questions for " + std::to_string(pairs) + " pairs");

  std::size_t after_chop = 0;
  for (auto c : qgen::gen_next_prev_questions("shepherds-pie", flow, templates(), actions)) {
    if (c.template_info->id != "next-after" ||
        c.template_info->slot_texts.front() != "chopping the potatoes") {
      continue;
    }
    ++after_chop;
    o.require(c.answer_amr && amr::isomorphic(*c.answer_amr, golden_graph("next-answer-mash")),
              "after-chopping answer graph is not the mash action");
    backend::realize_offline(c);
    o.require(c.answer_text == "Mash potatoes with butter and salt.",
              "after-chopping answer realizes as '" + c.answer_text.value_or("") + "'");
  }
  o.require(after_chop == 1, std::to_string(after_chop) + " after-chopping questions");
  if (o.pass) {
    o.detail = std::to_string(order.size()) + " order questions = 4 x " + std::to_string(pairs) +
               "; after chopping -> mash";
  }
  return o;
}

Outcome metrics_oracle() {
  Outcome o;
  std::mt19937_64 rng(200);
  std::size_t corpora = 0;
  for (int trial = 0; trial < 200; ++trial) {
    auto corpus = testing::random_corpus(rng);
    ++corpora;
    double sum = 0.0;
    for (int n = 1; n <= metrics::kMaxN; ++n) {
      const double got = metrics::dist_n(corpus, n);
      o.require(got == testing::oracle_dist(corpus, n),
                "dist_" + std::to_string(n) + " trial " + std::to_string(trial));
      sum += testing::oracle_dist(corpus, n);
    }
    o.require(metrics::ngram_diversity(corpus) == sum / 5, "ngram_diversity trial " + std::to_string(trial));

    auto ref = testing::random_corpus(rng);
    if (ref.empty() || corpus.empty()) continue;
    std::vector<metrics::Question> rq, gq;
    for (std::size_t i = 0; i < ref.size(); ++i) rq.push_back({"r" + std::to_string(i), ref[i]});
    for (std::size_t i = 0; i < corpus.size(); ++i) gq.push_back({"g" + std::to_string(i), corpus[i]});
    std::size_t contained = 0;
    for (const auto& r : ref) {
      for (const auto& g : corpus) {
        if (testing::oracle_tokens(r) == testing::oracle_tokens(g)) {
          ++contained;
          break;
        }
      }
    }
    const double frac = static_cast<double>(contained) / static_cast<double>(ref.size());
    o.require(metrics::coverage(rq, gq, metrics::ExactMatchScorer{}).coverage == frac,
              "exact coverage trial " + std::to_string(trial));
  }
  if (o.pass) o.detail = std::to_string(corpora) + " corpora exact; coverage = containment fraction";
  return o;
}

Outcome rouge_and_filter() {
  Outcome o;
  const double f = metrics::rouge1("chopped carrots and turnips", "carrots and turnips");
  o.require(std::fabs(f - 6.0 / 7.0) <= 1e-9, "F1 = " + std::to_string(f));
  o.require(metrics::rouge1("carrots and turnips", "carrots and turnips") == 1.0, "identity");
  o.require(metrics::rouge1("carrots and turnips", "salt pepper") == 0.0, "disjoint");

  // Predicted answers with F1 against the gold answer of 1, 0.5, 0.25
  // (exactly at the threshold), 0.4 and 0.
  const std::string gold = "chopped carrots and turnips";
  const std::vector<std::pair<std::string, bool>> cases = {
      {"chopped carrots and turnips", true}, {"carrots and the pot", true},
      {"carrots in the pot", false},         {"carrots", true},
      {"salt", false}};
  testing::FakeBackend stub;
  std::map<std::string, std::string> by_question;
  std::vector<backend::QaText> pairs;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const std::string q = "Question " + std::to_string(i) + "?";
    by_question[q] = cases[i].first;
    pairs.push_back({"context", q, gold});
  }
  stub.on_answer = [&by_question](std::string_view, std::string_view q) {
    return by_question.at(std::string(q));
  };
  const auto verdicts = backend::round_trip_filter(pairs, stub, {.threshold = 0.25});
  o.require(verdicts.size() == cases.size(), "verdict count");
  for (std::size_t i = 0; i < verdicts.size() && i < cases.size(); ++i) {
    o.require(verdicts[i].kept == cases[i].second,
              "'" + cases[i].first + "' scored " + std::to_string(verdicts[i].score) +
                  (verdicts[i].kept ? " kept" : " dropped"));
  }
  if (o.pass) o.detail = "6/7, 1.0, 0.0; filter keeps 3 of 5 at 0.25 (strict)";
  return o;
}

pipeline::PipelineConfig corpus_config(const fs::path& dir, const std::string& name) {
  pipeline::PipelineConfig c;
  c.recipes = testing::fixture_path("corpus/recipes.jsonl");
  c.amr = testing::fixture_path("corpus/amr");
  c.flow_dir = testing::fixture_path("corpus/flow");
  c.lexicon_dir = testing::data_path("lexicons");
  c.templates = testing::data_path("templates/temporal.penman");
  c.seed = 2024;
  c.offline = true;
  c.workers = 2;
  c.dataset_out = dir / (name + ".jsonl");
  return c;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome determinism(const fs::path& dir) {
  Outcome o;
  auto a = corpus_config(dir, "first");
  auto b = corpus_config(dir, "second");
  const auto sa = pipeline::run(a);
  const auto sb = pipeline::run(b);
  o.require(sa.exit_code() == 0 && sb.exit_code() == 0, "pipeline run failed");
  const std::string da = slurp(a.dataset_out), db = slurp(b.dataset_out);
  o.require(!da.empty(), "empty dataset");
  o.require(da == db, "datasets differ");
  if (o.pass) o.detail = std::to_string(sa.records) + " records, " + std::to_string(da.size()) + " bytes identical";
  return o;
}

Outcome offline_completeness(const fs::path& dir) {
  Outcome o;
  auto c = corpus_config(dir, "offline");
  const auto s = pipeline::run(c);
  o.require(s.exit_code() == 0, s.errors.empty() ? "run failed" : s.errors.front());
  if (!o.pass) return o;
  auto records = pipeline::read_jsonl(c.dataset_out);
  o.require(pipeline::validate_dataset(c.dataset_out).empty(), "dataset does not validate");
  std::vector<metrics::Question> qs;
  for (const auto& r : records) {
    o.require(r.realizer == "fallback", r.id + " was not realized offline");
    qs.push_back({r.id, r.question});
  }
  for (const char* cat : {"role_specific", "instruction_how", "polarity_yes", "temporal_mixture",
                          "temporal_next", "temporal_order"}) {
    o.require(s.categories.count(cat) && s.categories.at(cat) > 0, std::string("no ") + cat + " pairs");
  }
  auto report = pipeline::evaluate(qs, qs, "exact");
  o.require(report.coverage && report.coverage->coverage == 1.0, "self coverage below 1");
  if (o.pass) {
    o.detail = "single + temporal + evaluate with no backend: " + std::to_string(records.size()) +
               " records, ngram_diversity " + fmt(report.diversity.ngram_diversity);
  }
  return o;
}

}  // namespace

int main() {
  const fs::path dir = fs::temp_directory_path() / "procqa_acceptance";
  fs::remove_all(dir);
  fs::create_directories(dir);

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"penman-round-trip", penman_round_trip},
      {"arg2-golden", arg2_golden},
      {"single-unknown", single_unknown},
      {"what-with-golden", what_with_golden},
      {"mixture-oracle", mixture_oracle},
      {"temporal-counts", temporal_counts},
      {"metrics-oracle", metrics_oracle},
      {"rouge1-and-filter", rouge_and_filter},
      {"determinism", [&] { return determinism(dir); }},
      {"offline-completeness", [&] { return offline_completeness(dir); }},
  };

  int failed = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::cout << (o.pass ? "PASS " : "FAIL ") << name << ": " << o.detail << '\n';
  }
  fs::remove_all(dir);
  std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size()
            << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
