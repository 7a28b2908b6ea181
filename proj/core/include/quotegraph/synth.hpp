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

// Seeded generator for complete synthetic input bundles: articles, alias
// table, entity snapshot, occupation hierarchy and defunct-country list.
// The corpus carries the noise the pipeline must remove (short quotes,
// unterminated quotes, spurious and non-person mentions, self-quotes,
// unresolvable speakers) alongside quotes that should survive, and the
// generator writes the edges and groups a correct pipeline must produce.

#ifndef QUOTEGRAPH_SYNTH_HPP_
#define QUOTEGRAPH_SYNTH_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>

namespace quotegraph {

struct SyntheticBundle {
  std::filesystem::path articles;
  std::filesystem::path aliases;
  std::filesystem::path snapshot;
  std::filesystem::path hierarchy;
  std::filesystem::path defunct;
  // speaker, target, quote_id, surface; sorted.
  std::filesystem::path truth_edges;
  // member, representative; sorted by member.
  std::filesystem::path truth_groups;
  // Config file pointing `quotegraph run` at the files above.
  std::filesystem::path config;

  std::size_t article_count = 0;
  std::size_t quote_count = 0;    // distinct quote ids, noise included
  std::size_t person_count = 0;
};

// Writes a bundle with `articles` articles into `dir`. The same seed and
// size always produce byte-identical files.
SyntheticBundle GenerateSynthetic(const std::filesystem::path &dir,
                                  std::size_t articles, std::uint64_t seed);

}  // namespace quotegraph

#endif  // QUOTEGRAPH_SYNTH_HPP_
