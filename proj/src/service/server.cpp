#include "trickery/server.hpp"

#include <boost/asio.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/http.hpp>
#include <boost/beast/websocket.hpp>
#include <sys/socket.h>

#include <chrono>
#include <list>
#include <mutex>
#include <thread>

namespace trickery {

namespace asio = boost::asio;
namespace beast = boost::beast;
namespace http = beast::http;
namespace websocket = beast::websocket;
using tcp = asio::ip::tcp;

namespace {

// Native handles of open connections, so stop can unblock their reads.
class ConnectionRegistry {
public:
    void add(int fd) {
        std::lock_guard lock(mu_);
        fds_.push_back(fd);
    }
    void remove(int fd) {
        std::lock_guard lock(mu_);
        fds_.remove(fd);
    }
    void shutdown_all() {
        std::lock_guard lock(mu_);
        for (int fd : fds_) ::shutdown(fd, SHUT_RDWR);
    }

private:
    std::mutex mu_;
    std::list<int> fds_;
};

http::response<http::string_body> respond(const http::request<http::string_body>& req, http::status status,
                                          std::string body, std::string_view content_type) {
    http::response<http::string_body> res{status, req.version()};
    res.set(http::field::server, "trickery");
    res.set(http::field::content_type, std::string(content_type));
    res.set(http::field::access_control_allow_origin, "*");
    res.keep_alive(req.keep_alive());
    res.body() = std::move(body);
    res.prepare_payload();
    return res;
}

void serve_websocket(SessionService& service, beast::tcp_stream stream, const http::request<http::string_body>& req) {
    websocket::stream<beast::tcp_stream> ws(std::move(stream));
    ws.accept(req);
    beast::flat_buffer buffer;
    for (;;) {
        beast::error_code ec;
        ws.read(buffer, ec);
        if (ec) return;
        const std::string reply = service.handle_text(beast::buffers_to_string(buffer.data()));
        buffer.consume(buffer.size());
        ws.text(true);
        ws.write(asio::buffer(reply), ec);
        if (ec) return;
    }
}

void serve_connection(SessionService& service, tcp::socket socket) {
    beast::tcp_stream stream(std::move(socket));
    beast::flat_buffer buffer;
    for (;;) {
        http::request<http::string_body> req;
        beast::error_code ec;
        http::read(stream, buffer, req, ec);
        if (ec) return;
        if (websocket::is_upgrade(req)) {
            serve_websocket(service, std::move(stream), req);
            return;
        }
        http::response<http::string_body> res;
        if (req.method() == http::verb::get && req.target() == "/health") {
            res = respond(req, http::status::ok, "ok", "text/plain");
        } else if (req.method() == http::verb::post && req.target() == "/api") {
            res = respond(req, http::status::ok, service.handle_text(req.body()), "application/json");
        } else {
            res = respond(req, http::status::not_found,
                          error_response("not_found", std::string(req.target())).dump(), "application/json");
        }
        http::write(stream, res, ec);
        if (ec || !res.keep_alive()) break;
    }
    beast::error_code ignored;
    stream.socket().shutdown(tcp::socket::shutdown_send, ignored);
}

}  // namespace

void run_server(SessionService& service, const ServerOptions& options, const std::atomic<bool>& stop,
                const std::function<void(uint16_t)>& on_listen) {
    asio::io_context ioc;
    tcp::acceptor acceptor(ioc, {asio::ip::make_address(options.address), options.port});
    if (on_listen) on_listen(acceptor.local_endpoint().port());

    ConnectionRegistry registry;
    std::mutex threads_mu;
    std::vector<std::thread> threads;

    std::function<void()> accept_next = [&] {
        acceptor.async_accept([&](beast::error_code ec, tcp::socket socket) {
            if (ec) return;
            const int fd = socket.native_handle();
            registry.add(fd);
            {
                std::lock_guard lock(threads_mu);
                threads.emplace_back([&service, &registry, fd, s = std::move(socket)]() mutable {
                    try {
                        serve_connection(service, std::move(s));
                    } catch (const std::exception&) {
                    }
                    registry.remove(fd);
                });
            }
            accept_next();
        });
    };
    accept_next();

    while (!stop.load()) ioc.run_for(std::chrono::milliseconds(50));

    beast::error_code ignored;
    acceptor.close(ignored);
    registry.shutdown_all();
    std::lock_guard lock(threads_mu);
    for (auto& t : threads) t.join();
}

}  // namespace trickery
