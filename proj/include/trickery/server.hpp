#pragma once

// WebSocket + HTTP front end for SessionService. One port serves:
//   GET  /health      -> "ok"
//   POST /api         -> one JSON request, one JSON response
//   WebSocket upgrade -> one JSON response per text frame

#include "trickery/service.hpp"

#include <atomic>
#include <cstdint>
#include <functional>

namespace trickery {

struct ServerOptions {
    std::string address = "0.0.0.0";
    uint16_t port = 8080;
};

// Blocks until `stop` becomes true. `on_listen` receives the bound port
// (useful with port 0).
void run_server(SessionService& service, const ServerOptions& options, const std::atomic<bool>& stop,
                const std::function<void(uint16_t)>& on_listen = {});

}  // namespace trickery
