#include "retro/gen/generator.hpp"

#include <fstream>

#include <nlohmann/json.hpp>

#include "retro/util/hash.hpp"

namespace retro::gen {

std::int64_t estimate_tokens(std::string_view text) {
  return static_cast<std::int64_t>((text.size() + 3) / 4);
}

GenerationResponse response_from_text(const std::string& text, std::int64_t input_tokens) {
  GenerationResponse resp;
  resp.raw_text = text;
  resp.usage.input_tokens = input_tokens;
  resp.usage.output_tokens = estimate_tokens(text);
  auto parsed = parse_route_response(text);
  resp.pathways = std::move(parsed.pathways);
  resp.no_route_error = !parsed.found_route_block;
  return resp;
}

ScriptedGenerator::ScriptedGenerator(std::vector<std::string> responses)
    : responses_(std::move(responses)) {}

GenerationResponse ScriptedGenerator::generate(
    const chem::MoleculeKey& molecule,
    const std::vector<retrieval::RouteRecord>& examples, const PromptConfig& cfg) {
  std::string text;
  bool exhausted = false;
  {
    std::lock_guard lock(mutex_);
    if (next_ < responses_.size())
      text = responses_[next_++];
    else
      exhausted = true;
  }
  std::string prompt = build_prompt(molecule, examples, cfg);
  if (exhausted) {
    GenerationResponse resp;
    resp.usage.input_tokens = estimate_tokens(prompt);
    resp.no_route_error = true;
    return resp;
  }
  return response_from_text(text, estimate_tokens(prompt));
}

RecordedGenerator RecordedGenerator::load(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("cannot open recorded-response file: " + path);
  RecordedGenerator gen;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty())
      continue;
    auto obj = nlohmann::json::parse(line, nullptr, false);
    if (obj.is_discarded() || !obj.contains("request_hash") || !obj.contains("response"))
      continue;
    gen.responses_[obj["request_hash"].get<std::string>()] =
        obj["response"].get<std::string>();
  }
  return gen;
}

std::string RecordedGenerator::request_hash(const std::string& prompt) {
  std::uint64_t h = hash_bytes(prompt);
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

GenerationResponse RecordedGenerator::generate(
    const chem::MoleculeKey& molecule,
    const std::vector<retrieval::RouteRecord>& examples, const PromptConfig& cfg) {
  std::string prompt = build_prompt(molecule, examples, cfg);
  auto it = responses_.find(request_hash(prompt));
  if (it == responses_.end())
    throw TransportError("no recorded response for prompt hash " + request_hash(prompt));
  return response_from_text(it->second, estimate_tokens(prompt));
}

}  // namespace retro::gen
