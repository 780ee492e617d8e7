#include "wordlab/scoring.hpp"

namespace wordlab {

std::string name(const ScorerSpec& spec) {
  std::string out = spec.weighting == Weighting::weighted ? "wht" : "un";
  out += spec.direction == Direction::argmax ? "-max" : "-min";
  if (spec.kind == ScoreKind::kld) out += "-kld";
  if (spec.renormalize) out += "-renorm";
  return out;
}

ScorerSpec parse_scorer(std::string_view text) {
  ScorerSpec spec;
  auto take = [&](std::string_view token) {
    if (text.substr(0, token.size()) != token) return false;
    text.remove_prefix(token.size());
    return true;
  };
  const std::string original(text);
  if (take("un")) {
    spec.weighting = Weighting::unweighted;
  } else if (take("wht")) {
    spec.weighting = Weighting::weighted;
  } else {
    throw std::invalid_argument("unknown scorer '" + original + "'");
  }
  if (take("-max")) {
    spec.direction = Direction::argmax;
  } else if (take("-min")) {
    spec.direction = Direction::argmin;
  } else {
    throw std::invalid_argument("unknown scorer '" + original + "'");
  }
  if (take("-kld")) spec.kind = ScoreKind::kld;
  if (take("-renorm")) spec.renormalize = true;
  if (!text.empty()) throw std::invalid_argument("unknown scorer '" + original + "'");
  return spec;
}

std::vector<std::uint32_t> repeat_free(std::span<const Word> universe, std::span<const std::uint32_t> pool) {
  std::vector<std::uint32_t> out;
  for (auto id : pool) {
    if (!universe[id].has_repeated_symbol()) out.push_back(id);
  }
  return out;
}

}  // namespace wordlab
