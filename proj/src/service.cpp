#include "confsel/service.hpp"

#include <httplib.h>

#include <map>
#include <mutex>
#include <thread>

#include "confsel/errors.hpp"
#include "confsel/wire.hpp"

namespace confsel {

namespace {

using wire::Json;

struct SessionEntry {
    explicit SessionEntry(LiveSession s) : session(std::move(s)) {}
    std::mutex mutex;
    LiveSession session;
};

HttpResponse json_response(int status, const Json& j) { return HttpResponse{status, "application/json", j.dump()}; }

HttpResponse error_response(int status, const std::string& kind, const std::string& message) {
    Json j;
    j["error"] = kind;
    j["message"] = message;
    return json_response(status, j);
}

Json state_json(const std::string& id, const LiveSession& s) {
    Json j;
    j["id"] = id;
    j["x"] = s.x().name();
    j["y"] = s.y().name();
    j["status"] = to_string(s.status());
    if (const auto& p = s.pending()) {
        Json q;
        q["query_id"] = p->id;
        q["query"] = wire::encode(p->query);
        q["question"] = describe_question(p->query);
        j["pending"] = q;
    } else {
        j["pending"] = nullptr;
    }
    if (auto st = s.current_state()) {
        Json c = wire::encode(*st);
        c["b_u"] = wire::encode(uncertain_pairs(*st, s.x(), s.y()));
        c["mincut"] = wire::encode(min_cut_index(*st, s.x(), s.y()));
        j["current"] = c;
    } else {
        j["current"] = nullptr;
    }
    Json queue;
    queue["pushed"] = s.states_pushed();
    queue["popped"] = s.states_popped();
    j["queue"] = queue;
    const VertexSetFamily found = s.sufficient_sets();
    j["sufficient_sets"] = wire::encode(found);
    j["minimal_sets"] = wire::encode(found.minimal_members());
    j["events"] = s.events().size();
    return j;
}

Json parse_body(const std::string& body) {
    try {
        return Json::parse(body.empty() ? std::string("{}") : body);
    } catch (const Json::exception& e) {
        throw Error(std::string("malformed JSON body: ") + e.what());
    }
}

}  // namespace

struct SessionService::Impl {
    std::mutex registry_mutex;
    std::map<std::string, std::shared_ptr<SessionEntry>> sessions;
    std::size_t next_id = 1;

    httplib::Server server;
    std::thread thread;

    std::shared_ptr<SessionEntry> find(const std::string& id) {
        std::lock_guard lock(registry_mutex);
        auto it = sessions.find(id);
        return it == sessions.end() ? nullptr : it->second;
    }

    HttpResponse create(const std::string& body) {
        Json j = parse_body(body);
        wire::expect_keys(j, {"x", "y"}, {"config"});
        VertexId x = wire::decode_vertex(j["x"]);
        VertexId y = wire::decode_vertex(j["y"]);
        ExpansionConfig config = j.contains("config") ? wire::decode_config(j["config"]) : ExpansionConfig{};
        auto entry = std::make_shared<SessionEntry>(LiveSession(x, y, config));
        std::string id;
        {
            std::lock_guard lock(registry_mutex);
            id = "s" + std::to_string(next_id++);
            sessions.emplace(id, entry);
        }
        std::lock_guard lock(entry->mutex);
        return json_response(201, state_json(id, entry->session));
    }

    HttpResponse answer(const std::string& id, SessionEntry& e, const std::string& body) {
        Json j = parse_body(body);
        wire::expect_keys(j, {"query_id"}, {"answer", "text"});
        if (!j["query_id"].is_number_unsigned()) throw Error("'query_id' must be a positive integer");
        if (j.contains("answer") == j.contains("text")) throw Error("give exactly one of 'answer' or 'text'");
        const auto query_id = j["query_id"].get<std::size_t>();
        std::lock_guard lock(e.mutex);
        OracleAnswer a;
        if (j.contains("answer")) {
            a = wire::decode_answer(j["answer"]);
        } else {
            if (!j["text"].is_string()) throw Error("'text' must be a string");
            const auto& p = e.session.pending();
            if (!p || p->id != query_id)
                throw SessionConflict("free-text answers are only accepted for the pending question");
            a = parse_answer_text(p->query, j["text"].get<std::string>());
        }
        e.session.answer(query_id, a);
        return json_response(200, state_json(id, e.session));
    }

    HttpResponse route(const std::string& method, const std::string& path, const std::string& body) {
        std::vector<std::string> parts;
        for (std::size_t i = 0; i <= path.size();) {
            std::size_t j = path.find('/', i);
            if (j == std::string::npos) j = path.size();
            if (j > i) parts.push_back(path.substr(i, j - i));
            i = j + 1;
        }
        if (parts.empty() || parts[0] != "sessions") return error_response(404, "not_found", "no such route");
        if (parts.size() == 1) {
            if (method == "POST") return create(body);
            return error_response(405, "method_not_allowed", method + " " + path);
        }
        auto entry = find(parts[1]);
        if (!entry) return error_response(404, "not_found", "no session '" + parts[1] + "'");
        if (parts.size() == 2) {
            if (method == "GET") {
                std::lock_guard lock(entry->mutex);
                return json_response(200, state_json(parts[1], entry->session));
            }
            if (method == "DELETE") {
                std::lock_guard lock(entry->mutex);
                entry->session.abort();
                return json_response(200, state_json(parts[1], entry->session));
            }
            return error_response(405, "method_not_allowed", method + " " + path);
        }
        if (parts.size() == 3 && parts[2] == "answers") {
            if (method == "POST") return answer(parts[1], *entry, body);
            return error_response(405, "method_not_allowed", method + " " + path);
        }
        if (parts.size() == 3 && parts[2] == "transcript") {
            if (method != "GET") return error_response(405, "method_not_allowed", method + " " + path);
            std::lock_guard lock(entry->mutex);
            return HttpResponse{200, "application/x-ndjson", encode_transcript(entry->session.transcript())};
        }
        return error_response(404, "not_found", "no such route");
    }

    void install_routes() {
        auto bridge = [this](const httplib::Request& req, httplib::Response& res) {
            HttpResponse r = handle_safely(req.method, req.path, req.body);
            res.status = r.status;
            res.set_content(r.body, r.content_type);
        };
        server.Get(".*", bridge);
        server.Post(".*", bridge);
        server.Delete(".*", bridge);
        server.Put(".*", bridge);
        server.Patch(".*", bridge);
    }

    HttpResponse handle_safely(const std::string& method, const std::string& path, const std::string& body) {
        try {
            return route(method, path, body);
        } catch (const SessionConflict& e) {
            return error_response(409, "conflict", e.what());
        } catch (const InvalidName& e) {
            return error_response(400, "invalid_name", e.what());
        } catch (const Error& e) {
            return error_response(400, "validation", e.what());
        } catch (const std::exception& e) {
            return error_response(500, "internal", e.what());
        }
    }
};

SessionService::SessionService() : impl_(std::make_unique<Impl>()) { impl_->install_routes(); }

SessionService::~SessionService() { stop(); }

HttpResponse SessionService::handle(const std::string& method, const std::string& path,
                                    const std::string& body) {
    return impl_->handle_safely(method, path, body);
}

int SessionService::start(const std::string& host, int port) {
    int bound = port == 0 ? impl_->server.bind_to_any_port(host) : (impl_->server.bind_to_port(host, port) ? port : -1);
    if (bound < 0) throw Error("cannot bind " + host + ":" + std::to_string(port));
    impl_->thread = std::thread([this] { impl_->server.listen_after_bind(); });
    impl_->server.wait_until_ready();
    return bound;
}

void SessionService::serve(const std::string& host, int port) {
    if (!impl_->server.bind_to_port(host, port)) throw Error("cannot bind " + host + ":" + std::to_string(port));
    impl_->server.listen_after_bind();
}

void SessionService::stop() {
    impl_->server.stop();
    if (impl_->thread.joinable()) impl_->thread.join();
}

}  // namespace confsel
