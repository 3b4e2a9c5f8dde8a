#pragma once

#include "autosg/run_state.hpp"

#include <json.hpp>

#include <filesystem>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <string>

namespace autosg {

/// One chat-completion request; the carrier for every LLM application.
struct ChatRequest {
    std::string system;
    std::string user;
    double temperature = 0.2;
    int max_tokens = 8192;
    Stage stage = Stage::rewrite;

    void validate() const;
};

/// Persisted record of one exchange, written before the response is used.
struct Transcript {
    int seq = 0;
    ChatRequest request;
    std::string response;
    std::string started_at;
    std::string finished_at;
    int attempts = 1;
    std::string backend;
    bool logical_clock = false; ///< deterministic backends stamp "T+<seq>"
};

/// Completion source. Implementations throw TransientError for retryable
/// failures and NetworkError/FixtureError for fatal ones.
class ChatBackend {
public:
    virtual ~ChatBackend() = default;
    virtual std::string complete(const ChatRequest& req) = 0;
    virtual std::string id() const = 0;
    /// Deterministic backends report a logical clock so replayed transcripts
    /// are byte-identical.
    virtual bool deterministic() const { return false; }
};

/// Writes transcripts/NNN.json sequentially within a run directory.
class TranscriptStore {
public:
    explicit TranscriptStore(std::filesystem::path run_dir, int next_seq = 1);

    int persist(Transcript& t); ///< assigns t.seq, writes the file, returns seq
    int next_seq() const { return next_seq_; }
    static std::filesystem::path file_for(const std::filesystem::path& run_dir, int seq);

private:
    std::filesystem::path dir_;
    int next_seq_;
    std::mutex mutex_;
};

struct RetryPolicy {
    int attempts = 3;
    int backoff_ms = 500; ///< doubled per retry, plus jitter
};

/// Chat-completion front end: retries transient failures, persists every
/// exchange, and hands back the transcript.
class LlmGateway {
public:
    LlmGateway(std::shared_ptr<ChatBackend> backend, TranscriptStore* store,
               RetryPolicy retry = {});

    Transcript chat(const ChatRequest& req);

    /// Sleep between retries; disabled in tests.
    void set_sleep_enabled(bool on) { sleep_enabled_ = on; }

private:
    std::shared_ptr<ChatBackend> backend_;
    TranscriptStore* store_;
    RetryPolicy retry_;
    bool sleep_enabled_ = true;
    std::mt19937 jitter_rng_;
};

/// First well-formed JSON object in a response, tolerating prose and fences.
nlohmann::json extract_json_block(const std::string& response);

/// First well-formed JSON object containing `key`.
std::optional<nlohmann::json> find_json_with_key(const std::string& response,
                                                 const std::string& key);

/// Content of the longest fenced code block, byte-exact.
std::string extract_code_block(const std::string& response);

} // namespace autosg
