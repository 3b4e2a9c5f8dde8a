#pragma once

#include "autosg/gateway.hpp"

#include <string>

namespace autosg {

/// Live chat-completions backend (OpenAI-style JSON API). The API key is
/// read from the named environment variable at request time.
class HttpChatBackend : public ChatBackend {
public:
    HttpChatBackend(std::string endpoint, std::string model,
                    std::string credential_env, int timeout_sec = 120);

    std::string complete(const ChatRequest& req) override;
    std::string id() const override;

private:
    std::string endpoint_;
    std::string model_;
    std::string credential_env_;
    int timeout_sec_;
};

/// Split "http://host:port/base" into (scheme_host_port, path_prefix).
std::pair<std::string, std::string> split_url(const std::string& url);

} // namespace autosg
