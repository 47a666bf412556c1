#include "retro/gen/http_generator.hpp"

#include <chrono>
#include <cstdlib>
#include <mutex>
#include <thread>

#include <httplib.h>
#include <nlohmann/json.hpp>

namespace retro::gen {

using nlohmann::json;

struct HttpGenerator::RateLimiter {
  explicit RateLimiter(double rate) : rate_per_second(rate) {}

  void acquire() {
    if (rate_per_second <= 0.0)
      return;
    std::unique_lock lock(mutex);
    auto now = std::chrono::steady_clock::now();
    double elapsed = std::chrono::duration<double>(now - last_refill).count();
    tokens = std::min(burst, tokens + elapsed * rate_per_second);
    last_refill = now;
    if (tokens >= 1.0) {
      tokens -= 1.0;
      return;
    }
    double wait_s = (1.0 - tokens) / rate_per_second;
    lock.unlock();
    std::this_thread::sleep_for(std::chrono::duration<double>(wait_s));
    lock.lock();
    tokens = std::max(0.0, tokens - 1.0);
  }

  double rate_per_second;
  double burst = 4.0;
  double tokens = 4.0;
  std::chrono::steady_clock::time_point last_refill = std::chrono::steady_clock::now();
  std::mutex mutex;
};

HttpGenerator::HttpGenerator(HttpConfig config)
    : config_(std::move(config)),
      limiter_(std::make_unique<RateLimiter>(config_.rate_per_second)) {}

HttpGenerator::~HttpGenerator() = default;

std::string HttpGenerator::request_body(const std::string& prompt,
                                        const PromptConfig& cfg) const {
  json body;
  body["model"] = config_.model;
  body["messages"] = json::array({json{{"role", "user"}, {"content", prompt}}});
  body["temperature"] = cfg.temperature;
  body["max_tokens"] = cfg.max_tokens;
  return body.dump();
}

namespace {

// Splits a URL into the httplib client base (scheme://host[:port]) and path.
std::pair<std::string, std::string> split_url(const std::string& url) {
  auto scheme_end = url.find("://");
  std::size_t host_start = scheme_end == std::string::npos ? 0 : scheme_end + 3;
  auto path_start = url.find('/', host_start);
  if (path_start == std::string::npos)
    return {url, "/"};
  return {url.substr(0, path_start), url.substr(path_start)};
}

}  // namespace

GenerationResponse HttpGenerator::generate(
    const chem::MoleculeKey& molecule,
    const std::vector<retrieval::RouteRecord>& examples, const PromptConfig& cfg) {
  std::string prompt = build_prompt(molecule, examples, cfg);
  std::string body = request_body(prompt, cfg);

  auto [base, path] = split_url(config_.endpoint_url);
  httplib::Client client(base);
  client.set_connection_timeout(config_.timeout_seconds);
  client.set_read_timeout(config_.timeout_seconds);

  httplib::Headers headers;
  if (const char* key = std::getenv(config_.api_key_env.c_str()); key && *key)
    headers.emplace("Authorization", std::string("Bearer ") + key);

  std::string last_error;
  for (int attempt = 0; attempt < config_.max_attempts; ++attempt) {
    if (attempt > 0)
      std::this_thread::sleep_for(
          std::chrono::milliseconds(config_.backoff_ms << (attempt - 1)));
    limiter_->acquire();
    auto res = client.Post(path, headers, body, "application/json");
    if (!res) {
      last_error = "transport: " + httplib::to_string(res.error());
      continue;
    }
    if (res->status >= 500) {
      last_error = "server status " + std::to_string(res->status);
      continue;
    }
    if (res->status != 200)
      throw TransportError("chat endpoint returned status " + std::to_string(res->status));

    auto payload = json::parse(res->body, nullptr, false);
    if (payload.is_discarded())
      throw TransportError("chat endpoint returned invalid JSON");
    std::string content;
    try {
      content = payload.at("choices").at(0).at("message").at("content").get<std::string>();
    } catch (const std::exception&) {
      throw TransportError("chat response missing choices[0].message.content");
    }
    auto resp = response_from_text(content, estimate_tokens(prompt));
    if (payload.contains("usage")) {
      const auto& usage = payload["usage"];
      if (usage.contains("prompt_tokens"))
        resp.usage.input_tokens = usage["prompt_tokens"].get<std::int64_t>();
      if (usage.contains("completion_tokens"))
        resp.usage.output_tokens = usage["completion_tokens"].get<std::int64_t>();
    }
    return resp;
  }
  throw TransportError("generation failed after " + std::to_string(config_.max_attempts) +
                       " attempts: " + last_error);
}

}  // namespace retro::gen
