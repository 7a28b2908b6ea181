// Copyright 2026 The Quotegraph Authors.
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

// quotegraph: batch driver for the quotation network pipeline.
//
//   quotegraph run --config corpus.toml --out out/
//   quotegraph ingest --articles a.jsonl --out out/
//   quotegraph synth --size 250 --seed 7 --out fixture/
//
// Every flag may also be set in a TOML config file given with --config;
// flags on the command line win. See README.md for the file format.

#include <cstdint>
#include <exception>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "quotegraph/pipeline.hpp"
#include "quotegraph/synth.hpp"

namespace {

constexpr int kConfigVersion = 1;

}  // namespace

int main(int argc, char **argv) {
  using quotegraph::PipelineConfig;

  CLI::App app{"Build a speaker-to-mentioned-person network from quotations"};
  app.require_subcommand(1);
  app.set_config("--config", "", "TOML config file", false);

  PipelineConfig cfg;
  int config_version = kConfigVersion;
  std::string stopwords;
  std::size_t synth_size = 250;
  std::uint64_t seed = 1;

  app.add_option("--config-version", config_version,
                 "Config format version (must be 1)")
      ->group("");
  app.add_option("--min-quote-words", cfg.preprocess.min_unique_words,
                 "Drop quotations with fewer distinct content words")
      ->capture_default_str();
  app.add_option("--min-shared-substring", cfg.preprocess.min_shared_substring,
                 "Shared content-word run that joins two quotations")
      ->capture_default_str();
  app.add_option("--min-global-probability", cfg.min_global_probability,
                 "Leave quotes unattributed below this summed probability")
      ->capture_default_str();
  app.add_option("--damping", cfg.pagerank.damping, "PageRank damping")
      ->capture_default_str();
  app.add_option("--tolerance", cfg.pagerank.tolerance,
                 "PageRank L1 convergence tolerance")
      ->capture_default_str();
  app.add_option("--max-iter", cfg.pagerank.max_iter,
                 "PageRank iteration cap")
      ->capture_default_str();
  app.add_option("--party-country", cfg.party_countries,
                 "Countries for party mixing")
      ->capture_default_str();
  app.add_option("--threads", cfg.threads, "Worker threads")
      ->capture_default_str();
  app.add_option("--out", cfg.out_dir, "Output directory")
      ->capture_default_str();
  app.add_option("--articles", cfg.articles, "Article records (JSON lines)");
  app.add_option("--aliases", cfg.aliases, "Alias table (surface, QID, prior)");
  app.add_option("--snapshot", cfg.snapshot, "Entity snapshot (JSON lines)");
  app.add_option("--hierarchy", cfg.hierarchy,
                 "Occupation subclass edges (child, parent)");
  app.add_option("--defunct", cfg.defunct, "Defunct country QIDs");
  app.add_option("--stopwords", stopwords, "Stopword list, one per line");
  app.add_option("--seed", seed, "Seed for synth")->capture_default_str();

  std::string selected;
  for (const auto &name : quotegraph::StageNames()) {
    app.add_subcommand(name, "Run the " + name + " stage")
        ->fallthrough()
        ->callback([&selected, name] { selected = name; });
  }
  app.add_subcommand("run", "Run every stage in order")
      ->fallthrough()
      ->callback([&selected] { selected = "run"; });
  auto *synth = app.add_subcommand("synth", "Write a synthetic input bundle")
                    ->fallthrough()
                    ->callback([&selected] { selected = "synth"; });
  synth->add_option("--size", synth_size, "Number of articles")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    return app.exit(e);
  }

  if (config_version != kConfigVersion) {
    std::cerr << "quotegraph: unsupported config version " << config_version
              << " (expected " << kConfigVersion << ")\n";
    return 2;
  }
  if (!stopwords.empty()) cfg.stopwords = stopwords;

  try {
    if (selected == "synth") {
      auto bundle = quotegraph::GenerateSynthetic(cfg.out_dir, synth_size, seed);
      std::cerr << "quotegraph: wrote " << bundle.article_count
                << " articles, " << bundle.quote_count << " quotes, "
                << bundle.person_count << " people to " << cfg.out_dir.string()
                << "\n";
      return 0;
    }
    cfg.Validate();
    if (selected == "run") {
      quotegraph::RunPipeline(cfg);
    } else {
      quotegraph::RunStage(selected, cfg);
    }
  } catch (const quotegraph::StageError &e) {
    std::cerr << "quotegraph: stage " << e.what() << "\n";
    return 1;
  } catch (const std::exception &e) {
    std::cerr << "quotegraph: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
