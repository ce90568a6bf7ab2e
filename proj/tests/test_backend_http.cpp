#include <gtest/gtest.h>

#include <cstdlib>
#include <mutex>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "entigraph/corpus/backend.hpp"
#include "entigraph/corpus/plan.hpp"

using namespace entigraph::corpus;

namespace {

class FakeEndpoint {
  public:
    FakeEndpoint() {
        server_.Post("/v1/chat/completions", [this](const httplib::Request& req, httplib::Response& res) {
            std::lock_guard lock(mu_);
            bodies_.push_back(nlohmann::json::parse(req.body));
            auth_ = req.get_header_value("Authorization");
            if (status_ != 200) {
                res.status = status_;
                res.set_content("overloaded", "text/plain");
                return;
            }
            const nlohmann::json reply{{"choices", {{{"message", {{"role", "assistant"}, {"content", content_}}}}}}};
            res.set_content(reply.dump(), "application/json");
        });
        port_ = server_.bind_to_any_port("127.0.0.1");
        thread_ = std::thread([this] { server_.listen_after_bind(); });
        server_.wait_until_ready();
    }
    ~FakeEndpoint() {
        server_.stop();
        thread_.join();
    }

    std::string url() const { return "http://127.0.0.1:" + std::to_string(port_) + "/v1/chat/completions"; }
    void reply_with(std::string content, int status = 200) {
        std::lock_guard lock(mu_);
        content_ = std::move(content);
        status_ = status;
    }
    nlohmann::json last_body() {
        std::lock_guard lock(mu_);
        return bodies_.back();
    }
    std::string last_auth() {
        std::lock_guard lock(mu_);
        return auth_;
    }

  private:
    httplib::Server server_;
    std::thread thread_;
    int port_ = 0;
    std::mutex mu_;
    std::vector<nlohmann::json> bodies_;
    std::string auth_;
    std::string content_;
    int status_ = 200;
};

HttpBackendConfig config_for(const FakeEndpoint& ep) {
    HttpBackendConfig cfg;
    cfg.url = ep.url();
    cfg.model = "test-model";
    cfg.api_key_env = "ENTIGRAPH_TEST_KEY";
    cfg.timeout = std::chrono::seconds(10);
    return cfg;
}

}  // namespace

TEST(ParseEntityResponse, PlainFencedAndProse) {
    EXPECT_EQ(parse_entity_response(R"({"summary":"s","entities":["A","B"]})"), (std::vector<std::string>{"A", "B"}));
    EXPECT_EQ(parse_entity_response("```json\n{\"summary\": \"s\", \"entities\": [\"X\"]}\n```"),
              (std::vector<std::string>{"X"}));
    EXPECT_EQ(parse_entity_response("Sure! {\"entities\": []} Hope that helps."), std::vector<std::string>{});
    EXPECT_THROW(parse_entity_response("no json"), BackendError);
    EXPECT_THROW(parse_entity_response("{\"summary\": 1}"), BackendError);
}

TEST(HttpBackend, RejectsBadConfig) {
    HttpBackendConfig cfg;
    cfg.url = "localhost:80/x";
    cfg.model = "m";
    EXPECT_THROW(HttpBackend{cfg}, std::invalid_argument);
    cfg.url = "https://example.com/v1";
    EXPECT_THROW(HttpBackend{cfg}, std::invalid_argument);
    cfg.url = "http://example.com/v1";
    cfg.model = "";
    EXPECT_THROW(HttpBackend{cfg}, std::invalid_argument);
}

TEST(HttpBackend, RequestShapeAndEntityExtraction) {
    FakeEndpoint ep;
    ::setenv("ENTIGRAPH_TEST_KEY", "sekret", 1);
    HttpBackend backend(config_for(ep));
    ep.reply_with(R"({"summary": "about two people", "entities": ["Alice", "Bob", "Alice"]})");
    const auto plan = extract_entities(Document::make("d", "Alice met Bob."), backend);
    EXPECT_EQ(plan.entities, (std::vector<std::string>{"Alice", "Bob"}));

    const auto body = ep.last_body();
    EXPECT_EQ(body["model"], "test-model");
    EXPECT_EQ(body["temperature"], 1.0);
    EXPECT_EQ(body["max_tokens"], 2048);
    ASSERT_EQ(body["messages"].size(), 1u);
    EXPECT_EQ(body["messages"][0]["role"], "user");
    const std::string prompt = body["messages"][0]["content"];
    EXPECT_EQ(prompt.rfind("As a knowledge analyzer", 0), 0u);
    EXPECT_NE(prompt.find("Alice met Bob."), std::string::npos);
    EXPECT_EQ(ep.last_auth(), "Bearer sekret");
    ::unsetenv("ENTIGRAPH_TEST_KEY");
}

TEST(HttpBackend, GenerateUsesRelationPrompt) {
    FakeEndpoint ep;
    HttpBackend backend(config_for(ep));
    ep.reply_with("Alice and Bob interact.");
    const std::vector<std::string> names{"Alice", "Bob"};
    EXPECT_EQ(backend.generate(Document::make("d", "Alice met Bob."), names), "Alice and Bob interact.");
    const std::string prompt = ep.last_body()["messages"][0]["content"];
    EXPECT_NE(prompt.find("in relation to Bob"), std::string::npos);
    EXPECT_EQ(ep.last_auth(), "");
}

TEST(HttpBackend, ErrorsSurfaceAsBackendError) {
    FakeEndpoint ep;
    HttpBackend backend(config_for(ep));
    ep.reply_with("", 503);
    try {
        backend.complete("hi");
        FAIL() << "expected BackendError";
    } catch (const BackendError& e) {
        EXPECT_NE(std::string(e.what()).find("503"), std::string::npos);
    }
    ep.reply_with("not entities");
    EXPECT_THROW(backend.extract_entities(Document::make("d", "x")), BackendError);

    HttpBackendConfig dead = config_for(ep);
    dead.url = "http://127.0.0.1:1/v1";
    dead.timeout = std::chrono::seconds(2);
    EXPECT_THROW(HttpBackend(dead).complete("hi"), BackendError);
}
