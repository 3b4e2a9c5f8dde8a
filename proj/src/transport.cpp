#include "autosg/transport.hpp"

#include "autosg/errors.hpp"
#include "autosg/http_backend.hpp"

#include <httplib.h>

#include <thread>

namespace autosg {

LiveHttpGetter::LiveHttpGetter(int retry_attempts, int backoff_ms, int rate_limit_ms,
                               int timeout_sec)
    : retry_attempts_(retry_attempts), backoff_ms_(backoff_ms),
      rate_limit_ms_(rate_limit_ms), timeout_sec_(timeout_sec)
{
}

void LiveHttpGetter::wait_politely(const std::string& host)
{
    std::chrono::steady_clock::time_point wait_until;
    {
        std::lock_guard<std::mutex> lock(mutex_);
        auto now = std::chrono::steady_clock::now();
        auto it = last_request_.find(host);
        auto earliest = (it == last_request_.end())
                            ? now
                            : it->second + std::chrono::milliseconds(rate_limit_ms_);
        wait_until = std::max(now, earliest);
        last_request_[host] = wait_until;
    }
    std::this_thread::sleep_until(wait_until);
}

std::string LiveHttpGetter::get(const std::string& url)
{
    auto [host, path] = split_url(url);
    if (host.rfind("https://", 0) == 0)
        throw NetworkError("https requires TLS support; use an http endpoint: " + url);
    if (path.empty())
        path = "/";

    std::string last_error;
    for (int attempt = 1; attempt <= retry_attempts_; ++attempt) {
        wait_politely(host);
        httplib::Client client(host);
        client.set_connection_timeout(timeout_sec_);
        client.set_read_timeout(timeout_sec_);
        client.set_follow_location(true);
        auto res = client.Get(path);
        if (res && res->status == 200)
            return res->body;
        if (res && res->status < 500 && res->status != 429)
            throw NetworkError("GET " + url + " returned HTTP " +
                               std::to_string(res->status));
        last_error = res ? "HTTP " + std::to_string(res->status)
                         : httplib::to_string(res.error());
        if (attempt < retry_attempts_)
            std::this_thread::sleep_for(
                std::chrono::milliseconds(backoff_ms_ << (attempt - 1)));
    }
    throw NetworkError("GET " + url + " failed after " +
                       std::to_string(retry_attempts_) + " attempts: " + last_error);
}

} // namespace autosg
