#pragma once

#include <memory>
#include <string>

#include "retro/gen/generator.hpp"

namespace retro::gen {

// Chat-completion wire shape over HTTP: a role/content message list with
// temperature and max_tokens, credential read from the named environment
// variable. Retries transport failures and 5xx responses with exponential
// backoff before raising TransportError.
struct HttpConfig {
  std::string endpoint_url;  // full URL, e.g. https://host/v1/chat/completions
  std::string model;
  std::string api_key_env = "RETRO_LLM_API_KEY";
  int timeout_seconds = 120;
  int max_attempts = 3;
  int backoff_ms = 500;          // doubled per retry
  double rate_per_second = 0.0;  // token-bucket rate limit; 0 disables
};

class HttpGenerator : public Generator {
 public:
  explicit HttpGenerator(HttpConfig config);
  ~HttpGenerator() override;

  GenerationResponse generate(const chem::MoleculeKey& molecule,
                              const std::vector<retrieval::RouteRecord>& examples,
                              const PromptConfig& cfg) override;
  std::string name() const override { return "http:" + config_.model; }

  // Exposed for tests: the JSON request body for a prompt.
  std::string request_body(const std::string& prompt, const PromptConfig& cfg) const;

 private:
  struct RateLimiter;
  HttpConfig config_;
  std::unique_ptr<RateLimiter> limiter_;
};

}  // namespace retro::gen
