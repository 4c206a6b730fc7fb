// Copyright 2026 The MEI Metrics Authors
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

#include "mei/pipeline.hpp"

#include "mei/pet.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

namespace mei::pipeline
{

classify::PairKey make_key(std::string scenario_id, std::string a, std::string b)
{
  if (b < a) {
    std::swap(a, b);
  }
  return {std::move(scenario_id), std::move(a), std::move(b)};
}

std::vector<classify::PairKey> enumerate_pairs(const io::Scenario & scenario, const Selector & selector)
{
  std::vector<classify::PairKey> keys;
  if (selector.scenario_id && *selector.scenario_id != scenario.scenario_id) {
    return keys;
  }
  if (selector.pair) {
    const auto & [a, b] = *selector.pair;
    if (a != b && scenario.agents.contains(a) && scenario.agents.contains(b)) {
      keys.push_back(make_key(scenario.scenario_id, a, b));
    }
    return keys;
  }
  for (auto it = scenario.agents.begin(); it != scenario.agents.end(); ++it) {
    for (auto jt = std::next(it); jt != scenario.agents.end(); ++jt) {
      keys.push_back(make_key(scenario.scenario_id, it->first, jt->first));
    }
  }
  return keys;
}

std::vector<metrics::FrameMetrics> compute_pair_frames(
  const io::Scenario & scenario, const classify::PairKey & key, const metrics::MetricsConfig & cfg)
{
  const auto & track_a = scenario.agents.at(key.agent_a);
  const auto & track_b = scenario.agents.at(key.agent_b);
  std::vector<metrics::FrameMetrics> frames;
  auto ia = track_a.begin();
  auto ib = track_b.begin();
  while (ia != track_a.end() && ib != track_b.end()) {
    if (ia->t < ib->t) {
      ++ia;
    } else if (ib->t < ia->t) {
      ++ib;
    } else {
      frames.push_back(metrics::compute_frame(*ia, *ib, cfg));
      ++ia;
      ++ib;
    }
  }
  return frames;
}

PairAnalysis analyze_pair(
  const io::Scenario & scenario, const classify::PairKey & key, const metrics::MetricsConfig & cfg, bool with_pet)
{
  PairAnalysis out;
  out.key = key;
  out.frames = compute_pair_frames(scenario, key, cfg);
  const auto & track_a = scenario.agents.at(key.agent_a);
  const auto & track_b = scenario.agents.at(key.agent_b);
  if (with_pet && track_a.size() >= 2 && track_b.size() >= 2) {
    out.pet = metrics::pet(track_a, track_b, cfg);
  }
  if (out.frames.empty()) {
    out.event.key = key;
    out.event.pet = out.pet;
  } else {
    out.event = classify::extract_event(key, out.frames, out.pet, cfg);
  }
  return out;
}

std::vector<PairAnalysis> analyze_corpus(
  const std::vector<io::Scenario> & scenarios, const metrics::MetricsConfig & cfg, const Selector & selector,
  std::size_t jobs, bool with_pet)
{
  cfg.validate();
  std::vector<std::vector<PairAnalysis>> per_scenario(scenarios.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  const auto worker = [&] {
    for (std::size_t i = next++; i < scenarios.size(); i = next++) {
      try {
        for (const auto & key : enumerate_pairs(scenarios[i], selector)) {
          per_scenario[i].push_back(analyze_pair(scenarios[i], key, cfg, with_pet));
        }
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) {
          failure = std::current_exception();
        }
      }
    }
  };

  const std::size_t threads = std::clamp<std::size_t>(jobs, 1, std::max<std::size_t>(scenarios.size(), 1));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) {
      pool.emplace_back(worker);
    }
  }
  if (failure) {
    std::rethrow_exception(failure);
  }

  std::vector<PairAnalysis> all;
  for (auto & chunk : per_scenario) {
    std::move(chunk.begin(), chunk.end(), std::back_inserter(all));
  }
  std::sort(all.begin(), all.end(), [](const PairAnalysis & l, const PairAnalysis & r) { return l.key < r.key; });
  return all;
}

}  // namespace mei::pipeline
