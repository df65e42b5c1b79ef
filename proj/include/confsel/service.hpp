#pragma once

#include <memory>
#include <string>

#include "confsel/session.hpp"

namespace confsel {

struct HttpResponse {
    int status = 200;
    std::string content_type = "application/json";
    std::string body;
};

// In-memory session registry behind a small JSON-over-HTTP interface:
//   POST   /sessions                  {"x","y","config"?}        -> 201 state
//   GET    /sessions/{id}                                        -> state
//   POST   /sessions/{id}/answers     {"query_id", "answer"|"text"} -> state
//   GET    /sessions/{id}/transcript                             -> JSON lines
//   DELETE /sessions/{id}                                        -> state (aborted)
// Errors: 400 malformed request, 404 unknown session or route, 409 request
// that does not fit the session's phase. Each session is guarded by its own
// mutex; distinct sessions proceed concurrently.
class SessionService {
public:
    SessionService();
    ~SessionService();
    SessionService(const SessionService&) = delete;
    SessionService& operator=(const SessionService&) = delete;

    HttpResponse handle(const std::string& method, const std::string& path, const std::string& body);

    // Binds host:port (port 0 picks a free port) and serves in a background
    // thread; returns the bound port. Throws Error if binding fails.
    int start(const std::string& host, int port);
    // Binds and serves on the calling thread until stop() is called.
    void serve(const std::string& host, int port);
    void stop();

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace confsel
