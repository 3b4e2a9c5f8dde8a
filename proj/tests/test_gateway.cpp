#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "autosg/errors.hpp"
#include "autosg/gateway.hpp"
#include "autosg/http_backend.hpp"
#include "autosg/scripted_backend.hpp"
#include "autosg/util.hpp"

#include <httplib.h>

#include "support.hpp"

#include <atomic>
#include <thread>

using namespace autosg;

namespace {

ChatRequest make_request(Stage stage = Stage::rewrite)
{
    ChatRequest req;
    req.system = "You are a test.";
    req.user = "hello";
    req.stage = stage;
    return req;
}

std::shared_ptr<ScriptedBackend> one_stage_backend()
{
    std::map<std::string, ScriptedBackend::StageScript> stages;
    stages["rewrite"] = {{R"({"search_queries": ["a","b"]})", "second"}, false};
    stages["tournament"] = {{R"({"winner": "Algorithm A"})"}, true};
    return std::make_shared<ScriptedBackend>("t", std::move(stages));
}

} // namespace

TEST_CASE("scripted backend replays by stage and sequence")
{
    testsup::TempDir tmp("gw");
    TranscriptStore store(tmp.path());
    LlmGateway gateway(one_stage_backend(), &store);

    Transcript t = gateway.chat(make_request());
    CHECK(t.attempts == 1);
    CHECK(t.seq == 1);
    CHECK(t.response == R"({"search_queries": ["a","b"]})");
    CHECK(std::filesystem::exists(tmp.path() / "transcripts" / "001.json"));

    Transcript t2 = gateway.chat(make_request());
    CHECK(t2.response == "second");

    // Sequence exhausted and the stage is not cyclic.
    CHECK_THROWS_AS(gateway.chat(make_request()), FixtureError);

    // Cyclic stages wrap around.
    for (int i = 0; i < 5; ++i)
        CHECK(gateway.chat(make_request(Stage::tournament)).response ==
              R"({"winner": "Algorithm A"})");
}

TEST_CASE("missing fixture stage is a defined error")
{
    testsup::TempDir tmp("gw2");
    TranscriptStore store(tmp.path());
    LlmGateway gateway(one_stage_backend(), &store);
    CHECK_THROWS_WITH_AS(gateway.chat(make_request(Stage::rerank)),
                         doctest::Contains("rerank"), FixtureError);
}

TEST_CASE("scripted transcripts are byte-identical across runs")
{
    auto run_once = [](const std::filesystem::path& dir) {
        TranscriptStore store(dir);
        LlmGateway gateway(one_stage_backend(), &store);
        gateway.chat(make_request());
        gateway.chat(make_request(Stage::tournament));
        return read_file(dir / "transcripts" / "001.json") +
               read_file(dir / "transcripts" / "002.json");
    };
    testsup::TempDir a("gwa"), b("gwb");
    CHECK(run_once(a.path()) == run_once(b.path()));
}

TEST_CASE("chat request validation")
{
    ChatRequest req = make_request();
    req.user.clear();
    CHECK_THROWS_AS(req.validate(), InputError);
    req = make_request();
    req.temperature = -1;
    CHECK_THROWS_AS(req.validate(), InputError);
}

TEST_CASE("live backend retries a transient failure then succeeds")
{
    httplib::Server server;
    std::atomic<int> hits{0};
    server.Post("/v1/chat/completions",
                [&hits](const httplib::Request& req, httplib::Response& res) {
                    if (++hits == 1) {
                        res.status = 503;
                        return;
                    }
                    auto body = nlohmann::json::parse(req.body);
                    std::string user =
                        body.at("messages").at(1).at("content").get<std::string>();
                    nlohmann::json out = {
                        {"choices",
                         {{{"message", {{"content", "echo: " + user}}}}}}};
                    res.set_content(out.dump(), "application/json");
                });
    int port = server.bind_to_any_port("127.0.0.1");
    REQUIRE(port > 0);
    std::thread server_thread([&server] { server.listen_after_bind(); });
    server.wait_until_ready();

    setenv("AUTOSG_TEST_KEY", "sk-test", 1);
    auto backend = std::make_shared<HttpChatBackend>(
        "http://127.0.0.1:" + std::to_string(port) + "/v1", "test-model",
        "AUTOSG_TEST_KEY", 5);

    testsup::TempDir tmp("live");
    TranscriptStore store(tmp.path());
    LlmGateway gateway(backend, &store, RetryPolicy{3, 1});
    gateway.set_sleep_enabled(false);

    Transcript t = gateway.chat(make_request());
    CHECK(t.attempts == 2);
    CHECK(t.response == "echo: hello");
    CHECK(hits == 2);

    server.stop();
    server_thread.join();
}

TEST_CASE("missing credential fails without touching the network")
{
    unsetenv("AUTOSG_MISSING_KEY");
    auto backend = std::make_shared<HttpChatBackend>("http://127.0.0.1:1/v1", "m",
                                                     "AUTOSG_MISSING_KEY", 1);
    testsup::TempDir tmp("cred");
    TranscriptStore store(tmp.path());
    LlmGateway gateway(backend, &store, RetryPolicy{1, 1});
    CHECK_THROWS_WITH_AS(gateway.chat(make_request()),
                         doctest::Contains("AUTOSG_MISSING_KEY"), NetworkError);
}

TEST_CASE("json extraction tolerates prose and fences")
{
    nlohmann::json q = extract_json_block(
        "Here are the queries you asked for:\n```json\n"
        R"({"search_queries": ["a","b","c","d","e","f","g","h"]})"
        "\n```\nHope that helps!");
    CHECK(q["search_queries"].size() == 8);

    nlohmann::json w = extract_json_block(R"(prose {"winner": "Algorithm A"} more)");
    CHECK(w["winner"] == "Algorithm A");

    CHECK_THROWS_AS(extract_json_block("no objects here"), ParseError);
    // Unbalanced braces before a valid object are skipped.
    nlohmann::json later = extract_json_block("{oops {\"k\": 1}");
    CHECK(later["k"] == 1);
}

TEST_CASE("keyed json scan skips objects without the key")
{
    std::string response = R"(analysis: {"note": "x"} and then {"winner": "Algorithm B"})";
    auto found = find_json_with_key(response, "winner");
    REQUIRE(found.has_value());
    CHECK((*found)["winner"] == "Algorithm B");
    CHECK_FALSE(find_json_with_key(response, "absent").has_value());
}

TEST_CASE("code block extraction takes the longest fence byte-exactly")
{
    std::string small = "print('hi')  # comment stays";
    std::string big;
    for (int i = 0; i < 200; ++i)
        big += "x = " + std::to_string(i) + "\n";
    big.pop_back();

    std::string response = "Intro.\n```python\n" + small + "\n```\nmiddle\n```\n" +
                           big + "\n```\nend";
    CHECK(extract_code_block(response) == big);

    std::string single = "One block:\n```python\n" + small + "\n```\n";
    CHECK(extract_code_block(single) == small);

    CHECK_THROWS_AS(extract_code_block("prose only, no fences"), ParseError);
    // An unterminated fence is not a block.
    CHECK_THROWS_AS(extract_code_block("```python\nunclosed"), ParseError);
}
