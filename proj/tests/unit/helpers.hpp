#pragma once

#include <memory>
#include <string>
#include <vector>

#include "gauntlet/classifiers/features.hpp"
#include "gauntlet/core/wire.hpp"
#include "gauntlet/service/api.hpp"
#include "gauntlet/service/service.hpp"
#include "gauntlet/solver/client.hpp"
#include "gauntlet/solver/solver.hpp"

namespace gauntlet::testing {

/// Service plus router on a logical clock, reached in-process.
struct Rig {
  explicit Rig(service::ServiceConfig config = {})
      : service(std::move(config)), router(service), transport(router, clock), client(transport) {}

  SimClock clock;
  service::Service service;
  service::ApiRouter router;
  service::InProcessTransport transport;
  solver::ServiceClient client;
};

/// Tile ids the matched filter assigns to the prompt's category. The default
/// synthetic tiles are separable, so this is the exact answer.
inline std::vector<std::string> exact_answer(const wire::ChallengeView& view, const CategorySet& categories,
                                             const tiles::SynthSpec& spec) {
  const classifiers::MatchedFilter filter(spec);
  const CategoryId target = solver::parse_prompt(view.prompt_text, categories);
  std::vector<std::string> out;
  for (const auto& t : view.tiles) {
    if (filter.detect(t.image) == target) out.push_back(t.tile_id);
  }
  return out;
}

}  // namespace gauntlet::testing
