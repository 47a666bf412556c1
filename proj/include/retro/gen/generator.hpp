#pragma once

#include <cstdint>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

#include "retro/gen/prompt.hpp"
#include "retro/gen/route_parser.hpp"
#include "retro/mapping/pathway.hpp"
#include "retro/retrieval/route_index.hpp"

namespace retro::gen {

struct TokenUsage {
  std::int64_t input_tokens = 0;
  std::int64_t output_tokens = 0;
};

struct GenerationResponse {
  std::vector<mapping::RawPathway> pathways;
  TokenUsage usage;
  std::string raw_text;
  bool no_route_error = false;  // response contained no route block
};

// Transport-level failure (network, HTTP status, missing fixture entry).
class TransportError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Pathway generation boundary. Implementations must be safely shareable
// across concurrent search tasks; per-call state stays on the stack.
class Generator {
 public:
  virtual ~Generator() = default;
  virtual GenerationResponse generate(const chem::MoleculeKey& molecule,
                                      const std::vector<retrieval::RouteRecord>& examples,
                                      const PromptConfig& cfg) = 0;
  virtual std::string name() const = 0;
};

// Rough byte-based token count used when no real usage numbers exist.
std::int64_t estimate_tokens(std::string_view text);

// Parses a raw response text into a GenerationResponse.
GenerationResponse response_from_text(const std::string& text, std::int64_t input_tokens);

// Replays a fixed queue of raw response texts; calls after exhaustion
// return an empty response.
class ScriptedGenerator : public Generator {
 public:
  explicit ScriptedGenerator(std::vector<std::string> responses);

  GenerationResponse generate(const chem::MoleculeKey& molecule,
                              const std::vector<retrieval::RouteRecord>& examples,
                              const PromptConfig& cfg) override;
  std::string name() const override { return "scripted"; }

 private:
  std::vector<std::string> responses_;
  std::size_t next_ = 0;
  std::mutex mutex_;
};

// Wraps a callback; handy for per-molecule scripted behavior in tests.
class FunctionGenerator : public Generator {
 public:
  using Fn = std::function<GenerationResponse(const chem::MoleculeKey&,
                                              const std::vector<retrieval::RouteRecord>&,
                                              const PromptConfig&)>;
  explicit FunctionGenerator(Fn fn, std::string name = "function")
      : fn_(std::move(fn)), name_(std::move(name)) {}

  GenerationResponse generate(const chem::MoleculeKey& molecule,
                              const std::vector<retrieval::RouteRecord>& examples,
                              const PromptConfig& cfg) override {
    return fn_(molecule, examples, cfg);
  }
  std::string name() const override { return name_; }

 private:
  Fn fn_;
  std::string name_;
};

// Offline replay of recorded responses keyed by a hash of the prompt text.
// File format: one JSON object per line, {"request_hash": "...",
// "response": "..."}; hashes are lower-case hex of the fixed 64-bit prompt
// hash. A missing entry raises TransportError.
class RecordedGenerator : public Generator {
 public:
  static RecordedGenerator load(const std::string& path);

  GenerationResponse generate(const chem::MoleculeKey& molecule,
                              const std::vector<retrieval::RouteRecord>& examples,
                              const PromptConfig& cfg) override;
  std::string name() const override { return "recorded"; }

  static std::string request_hash(const std::string& prompt);

 private:
  std::unordered_map<std::string, std::string> responses_;
};

}  // namespace retro::gen
