#include "autosg/http_backend.hpp"

#include "autosg/errors.hpp"

#include <httplib.h>

#include <cstdlib>

namespace autosg {

using nlohmann::json;

std::pair<std::string, std::string> split_url(const std::string& url)
{
    size_t scheme = url.find("://");
    if (scheme == std::string::npos)
        throw InputError("URL missing scheme: " + url);
    size_t path = url.find('/', scheme + 3);
    if (path == std::string::npos)
        return {url, ""};
    return {url.substr(0, path), url.substr(path)};
}

HttpChatBackend::HttpChatBackend(std::string endpoint, std::string model,
                                 std::string credential_env, int timeout_sec)
    : endpoint_(std::move(endpoint)), model_(std::move(model)),
      credential_env_(std::move(credential_env)), timeout_sec_(timeout_sec)
{
    if (endpoint_.empty())
        throw InputError("llm_endpoint is not configured");
}

std::string HttpChatBackend::id() const
{
    return "http:" + model_;
}

std::string HttpChatBackend::complete(const ChatRequest& req)
{
    const char* key = credential_env_.empty() ? nullptr
                                              : std::getenv(credential_env_.c_str());
    if (!key || !*key)
        throw NetworkError("credential missing: environment variable " +
                           credential_env_ + " is not set");

    auto [host, base] = split_url(endpoint_);
    if (host.rfind("https://", 0) == 0)
        throw NetworkError("https endpoints require TLS support; "
                           "configure an http endpoint or a local gateway");

    httplib::Client client(host);
    client.set_connection_timeout(timeout_sec_);
    client.set_read_timeout(timeout_sec_);

    json body = {
        {"model", model_},
        {"messages",
         json::array({json{{"role", "system"}, {"content", req.system}},
                      json{{"role", "user"}, {"content", req.user}}})},
        {"temperature", req.temperature},
        {"max_tokens", req.max_tokens},
    };

    httplib::Headers headers = {{"Authorization", std::string("Bearer ") + key}};
    auto res = client.Post(base + "/chat/completions", headers, body.dump(),
                           "application/json");
    if (!res)
        throw TransientError("connection failed: " + httplib::to_string(res.error()));
    if (res->status >= 500 || res->status == 429)
        throw TransientError("backend returned HTTP " + std::to_string(res->status));
    if (res->status != 200)
        throw NetworkError("backend returned HTTP " + std::to_string(res->status) +
                           ": " + res->body.substr(0, 200));

    json parsed = json::parse(res->body, nullptr, false);
    if (parsed.is_discarded())
        throw TransientError("backend returned unparseable JSON");
    try {
        return parsed.at("choices").at(0).at("message").at("content").get<std::string>();
    } catch (const json::exception&) {
        throw TransientError("backend response missing choices[0].message.content");
    }
}

} // namespace autosg
