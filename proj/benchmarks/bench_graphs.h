// Copyright 2026 The QuadArg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Synthetic debate trees for the benchmarks.

#ifndef QUADARG_BENCHMARKS_BENCH_GRAPHS_H_
#define QUADARG_BENCHMARKS_BENCH_GRAPHS_H_

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "quadarg/graph.h"

namespace quadarg::bench {

// Each argument after the first replies to one earlier argument, like a
// threaded debate. Kinds and weights are random.
inline DebateGraph debate_tree(int n, std::uint64_t seed = 1) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Argument> args;
  std::vector<Relation> rels;
  WeightMap weights;
  for (int i = 1; i <= n; ++i) {
    args.push_back({ArgumentId(i), "argument " + std::to_string(i),
                    static_cast<std::size_t>(i - 1)});
    weights[ArgumentId(i)] = unit(rng);
    if (i > 1) {
      const int parent = 1 + static_cast<int>(rng() % static_cast<unsigned>(i - 1));
      rels.push_back({ArgumentId(i), ArgumentId(parent),
                      unit(rng) < 0.5 ? RelationKind::kAttack
                                      : RelationKind::kSupport});
    }
  }
  return build_graph("bench", std::move(args), std::move(rels), weights);
}

}  // namespace quadarg::bench

#endif  // QUADARG_BENCHMARKS_BENCH_GRAPHS_H_
