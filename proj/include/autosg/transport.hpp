#pragma once

#include <chrono>
#include <map>
#include <mutex>
#include <string>

namespace autosg {

/// Blocking HTTP GET abstraction for literature sources and full texts.
class HttpGetter {
public:
    virtual ~HttpGetter() = default;
    virtual std::string get(const std::string& url) = 0;
};

/// Real transport: bounded retries with exponential backoff and a per-host
/// politeness interval.
class LiveHttpGetter : public HttpGetter {
public:
    LiveHttpGetter(int retry_attempts, int backoff_ms, int rate_limit_ms,
                   int timeout_sec = 60);

    std::string get(const std::string& url) override;

private:
    void wait_politely(const std::string& host);

    int retry_attempts_;
    int backoff_ms_;
    int rate_limit_ms_;
    int timeout_sec_;
    std::mutex mutex_;
    std::map<std::string, std::chrono::steady_clock::time_point> last_request_;
};

} // namespace autosg
