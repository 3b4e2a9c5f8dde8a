#include "autosg/gateway.hpp"

#include "autosg/errors.hpp"
#include "autosg/util.hpp"

#include <chrono>
#include <cstdio>
#include <thread>

namespace autosg {

using nlohmann::json;

void ChatRequest::validate() const
{
    if (system.empty() || user.empty())
        throw InputError("chat request: system and user texts must be non-empty");
    if (temperature < 0.0)
        throw InputError("chat request: temperature must be >= 0");
    if (max_tokens < 1)
        throw InputError("chat request: max_tokens must be >= 1");
}

TranscriptStore::TranscriptStore(std::filesystem::path run_dir, int next_seq)
    : dir_(std::move(run_dir)), next_seq_(next_seq)
{
}

std::filesystem::path TranscriptStore::file_for(const std::filesystem::path& run_dir,
                                                int seq)
{
    char name[16];
    std::snprintf(name, sizeof(name), "%03d.json", seq);
    return run_dir / "transcripts" / name;
}

int TranscriptStore::persist(Transcript& t)
{
    std::lock_guard<std::mutex> lock(mutex_);
    t.seq = next_seq_++;
    if (t.logical_clock) {
        // Timestamps derive from the sequence number so that replayed and
        // resumed runs produce byte-identical transcripts.
        t.started_at = "T+" + std::to_string(t.seq);
        t.finished_at = t.started_at;
    }
    json j = {
        {"seq", t.seq},
        {"stage", stage_name(t.request.stage)},
        {"request",
         {{"system", t.request.system},
          {"user", t.request.user},
          {"temperature", t.request.temperature},
          {"max_tokens", t.request.max_tokens}}},
        {"response", t.response},
        {"started_at", t.started_at},
        {"finished_at", t.finished_at},
        {"attempts", t.attempts},
        {"backend", t.backend},
    };
    write_file(file_for(dir_, t.seq), j.dump(2) + "\n");
    return t.seq;
}

LlmGateway::LlmGateway(std::shared_ptr<ChatBackend> backend, TranscriptStore* store,
                       RetryPolicy retry)
    : backend_(std::move(backend)), store_(store), retry_(retry),
      jitter_rng_(std::random_device{}())
{
}

Transcript LlmGateway::chat(const ChatRequest& req)
{
    req.validate();
    if (!backend_)
        throw NetworkError("no chat backend configured");

    Transcript t;
    t.request = req;
    t.backend = backend_->id();
    t.logical_clock = backend_->deterministic();
    if (!t.logical_clock)
        t.started_at = iso8601_now();

    std::string last_error;
    for (int attempt = 1; attempt <= retry_.attempts; ++attempt) {
        t.attempts = attempt;
        try {
            t.response = backend_->complete(req);
            if (t.response.empty())
                throw TransientError("backend returned an empty response");
            if (!t.logical_clock)
                t.finished_at = iso8601_now();
            if (store_)
                store_->persist(t);
            return t;
        } catch (const TransientError& e) {
            last_error = e.what();
            if (attempt < retry_.attempts && sleep_enabled_) {
                int base = retry_.backoff_ms << (attempt - 1);
                std::uniform_int_distribution<int> jitter(0, base / 2 + 1);
                std::this_thread::sleep_for(
                    std::chrono::milliseconds(base + jitter(jitter_rng_)));
            }
        }
    }
    throw NetworkError("chat failed after " + std::to_string(retry_.attempts) +
                       " attempts (stage " + stage_name(req.stage) +
                       "): " + last_error);
}

namespace {

/// Find the end of a balanced JSON object starting at `start` ('{'), honoring
/// strings and escapes. Returns npos when unbalanced.
size_t find_object_end(const std::string& s, size_t start)
{
    int depth = 0;
    bool in_string = false;
    for (size_t i = start; i < s.size(); ++i) {
        char c = s[i];
        if (in_string) {
            if (c == '\\')
                ++i;
            else if (c == '"')
                in_string = false;
        } else if (c == '"') {
            in_string = true;
        } else if (c == '{') {
            ++depth;
        } else if (c == '}') {
            if (--depth == 0)
                return i;
        }
    }
    return std::string::npos;
}

std::optional<json> scan_json_objects(const std::string& response,
                                      const std::optional<std::string>& key)
{
    size_t pos = 0;
    while ((pos = response.find('{', pos)) != std::string::npos) {
        size_t end = find_object_end(response, pos);
        if (end == std::string::npos) {
            ++pos;
            continue;
        }
        json parsed =
            json::parse(response.substr(pos, end - pos + 1), nullptr, false);
        if (!parsed.is_discarded() && parsed.is_object()) {
            if (!key || parsed.contains(*key))
                return parsed;
            // Keep scanning past this object for one carrying the key.
            pos = end + 1;
            continue;
        }
        ++pos;
    }
    return std::nullopt;
}

} // namespace

json extract_json_block(const std::string& response)
{
    auto found = scan_json_objects(response, std::nullopt);
    if (!found)
        throw ParseError("no well-formed JSON object found in response");
    return *found;
}

std::optional<json> find_json_with_key(const std::string& response,
                                       const std::string& key)
{
    return scan_json_objects(response, key);
}

std::string extract_code_block(const std::string& response)
{
    std::vector<std::string> lines = split_lines(response);
    std::string best;
    bool found = false;
    bool in_block = false;
    std::string current;
    bool first_line = true;

    for (const std::string& line : lines) {
        std::string stripped = trim(line);
        if (stripped.rfind("```", 0) == 0) {
            if (!in_block) {
                in_block = true;
                current.clear();
                first_line = true;
            } else {
                in_block = false;
                if (!found || current.size() > best.size()) {
                    best = current;
                    found = true;
                }
            }
            continue;
        }
        if (in_block) {
            if (!first_line)
                current += '\n';
            current += line;
            first_line = false;
        }
    }
    if (!found)
        throw ParseError("no fenced code block found in response");
    return best;
}

} // namespace autosg
