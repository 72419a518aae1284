#include "gesturequad/server.hpp"

#include "gesturequad/error.hpp"
#include "gesturequad/session.hpp"
#include "gesturequad/wire.hpp"

#include <boost/asio.hpp>
#include <boost/beast.hpp>

#include <csignal>
#include <deque>
#include <future>
#include <mutex>
#include <thread>

namespace gq {

namespace {

namespace beast = boost::beast;
namespace http = beast::http;
namespace websocket = beast::websocket;
namespace net = boost::asio;
using tcp = net::ip::tcp;

using Request = http::request<http::string_body>;

std::string close_text(ErrorCode code, std::string_view detail) {
    std::string r = "error[" + std::string(to_string(code)) + "]: " + std::string(detail);
    if (r.size() > 123) {  // websocket close reason limit
        r.resize(123);
    }
    return r;
}

websocket::stream_base::timeout ws_timeouts() {
    websocket::stream_base::timeout t{};
    t.handshake_timeout = std::chrono::seconds(5);
    t.idle_timeout = websocket::stream_base::none();
    t.keep_alive_pings = false;
    return t;
}

std::string_view mime_type(const std::filesystem::path& p) {
    const auto ext = p.extension().string();
    if (ext == ".html" || ext == ".htm") return "text/html";
    if (ext == ".js" || ext == ".mjs") return "application/javascript";
    if (ext == ".css") return "text/css";
    if (ext == ".json") return "application/json";
    if (ext == ".png") return "image/png";
    if (ext == ".svg") return "image/svg+xml";
    if (ext == ".wasm") return "application/wasm";
    if (ext == ".ico") return "image/x-icon";
    return "application/octet-stream";
}

class Observer : public std::enable_shared_from_this<Observer> {
public:
    Observer(tcp::socket&& socket, std::size_t capacity)
        : ws_(std::move(socket)), capacity_(capacity) {}

    template <typename OnOpen>
    void run(Request req, OnOpen on_open) {
        ws_.set_option(ws_timeouts());
        ws_.async_accept(req, [self = shared_from_this(), on_open](beast::error_code ec) {
            if (ec) {
                return;
            }
            self->open_ = true;
            on_open(self);
            self->read();
            self->flush();
        });
    }

    void send(std::shared_ptr<const std::string> msg) {
        if (closing_) {
            return;
        }
        if (pending_.size() >= capacity_) {
            pending_.pop_front();
        }
        pending_.push_back(std::move(msg));
        if (open_) {
            flush();
        }
    }

    void close() {
        if (closing_) {
            return;
        }
        closing_ = true;
        pending_.clear();
        if (open_ && !writing_) {
            do_close();
        }
    }

    bool alive() const { return !closing_; }

private:
    void flush() {
        if (writing_ || closing_ || pending_.empty()) {
            return;
        }
        writing_ = true;
        inflight_ = pending_.front();
        pending_.pop_front();
        ws_.text(true);
        ws_.async_write(net::buffer(*inflight_),
                        [self = shared_from_this()](beast::error_code ec, std::size_t) {
                            self->writing_ = false;
                            self->inflight_.reset();
                            if (ec) {
                                self->closing_ = true;
                                return;
                            }
                            if (self->closing_) {
                                self->do_close();
                                return;
                            }
                            self->flush();
                        });
    }

    void read() {
        ws_.async_read(buf_, [self = shared_from_this()](beast::error_code ec, std::size_t) {
            if (ec) {
                self->closing_ = true;
                return;
            }
            // Observers have nothing to say; discard.
            self->buf_.consume(self->buf_.size());
            self->read();
        });
    }

    void do_close() {
        ws_.async_close(websocket::close_code::going_away,
                        [self = shared_from_this()](beast::error_code) {});
    }

    websocket::stream<beast::tcp_stream> ws_;
    beast::flat_buffer buf_;
    std::size_t capacity_;
    std::deque<std::shared_ptr<const std::string>> pending_;
    std::shared_ptr<const std::string> inflight_;
    bool open_ = false;
    bool writing_ = false;
    bool closing_ = false;
};

}  // namespace

struct Server::Impl : std::enable_shared_from_this<Server::Impl> {
    explicit Impl(ServerOptions o) : opt(std::move(o)) {}

    class Producer;
    class HttpSession;

    ServerOptions opt;
    net::io_context ioc{1};
    tcp::acceptor acceptor{ioc};
    net::steady_timer snapshot_timer{ioc};
    net::steady_timer shutdown_timer{ioc};
    std::thread thread;
    std::unique_ptr<SessionEngine> engine;
    std::unique_ptr<SessionRecorder> recorder;
    std::vector<std::weak_ptr<Observer>> observers;
    std::weak_ptr<Producer> producer;
    bool shutting_down = false;
    bool started = false;
    bool stopped = false;

    mutable std::mutex mu;
    Snapshot snap;
    RunSummary summ;
    std::string log;
    std::size_t frames = 0;
    std::size_t live_observers = 0;
    std::function<void(const std::string&)> diag;

    void report(const std::string& msg) {
        std::function<void(const std::string&)> d;
        {
            std::lock_guard lock(mu);
            d = diag;
        }
        if (d) {
            d(msg);
        }
    }

    void broadcast(std::string text) {
        auto msg = std::make_shared<const std::string>(std::move(text));
        std::size_t alive = 0;
        std::erase_if(observers, [&](const std::weak_ptr<Observer>& w) {
            auto o = w.lock();
            if (!o || !o->alive()) {
                return true;
            }
            o->send(msg);
            ++alive;
            return false;
        });
        std::lock_guard lock(mu);
        live_observers = alive;
    }

    void on_event(const SessionEvent& e) {
        if (recorder) {
            recorder->record(e);
        }
        if (std::holds_alternative<CommandEvent>(e)) {
            const auto line = wire::encode(e);
            {
                std::lock_guard lock(mu);
                log += line;
                log += '\n';
            }
            broadcast(line);
        } else if (std::holds_alternative<RobotStateEvent>(e) ||
                   std::holds_alternative<CourseStatusEvent>(e)) {
            broadcast(wire::encode(e));
        }
    }

    void publish() {
        const Snapshot s = engine->snapshot();
        {
            std::lock_guard lock(mu);
            snap = s;
            summ = engine->summary();
        }
        broadcast(wire::encode(s));
    }

    /// Returns a close reason when the producer must be disconnected.
    std::optional<std::string> on_producer_message(std::string_view text) {
        try {
            engine->submit(wire::decode_producer(text));
        } catch (const Error& e) {
            report("warning[" + std::string(to_string(e.code())) + "]: producer: " + e.what());
            return close_text(e.code(), e.what());
        }
        {
            std::lock_guard lock(mu);
            ++frames;
        }
        publish();
        return std::nullopt;
    }

    void add_observer(const std::shared_ptr<Observer>& o) {
        observers.push_back(o);
        o->send(std::make_shared<const std::string>(wire::encode_course(opt.course)));
        o->send(std::make_shared<const std::string>(wire::encode(engine->snapshot())));
        std::lock_guard lock(mu);
        ++live_observers;
    }

    void arm_snapshot_timer() {
        snapshot_timer.expires_after(std::chrono::milliseconds(opt.snapshot_period_ms));
        snapshot_timer.async_wait([self = shared_from_this()](beast::error_code ec) {
            if (ec || self->shutting_down) {
                return;
            }
            self->broadcast(wire::encode(self->engine->snapshot()));
            self->arm_snapshot_timer();
        });
    }

    void do_accept();
    void shutdown();
};

class Server::Impl::Producer : public std::enable_shared_from_this<Server::Impl::Producer> {
public:
    Producer(tcp::socket&& socket, std::shared_ptr<Impl> impl)
        : ws_(std::move(socket)), impl_(std::move(impl)) {}

    void run(Request req) {
        ws_.set_option(ws_timeouts());
        ws_.read_message_max(1 << 20);
        ws_.async_accept(req, [self = shared_from_this()](beast::error_code ec) {
            if (ec) {
                return;
            }
            auto& impl = *self->impl_;
            if (impl.shutting_down) {
                self->close_with(websocket::close_code::going_away, "server shutting down");
                return;
            }
            if (auto current = impl.producer.lock(); current && current->active_) {
                self->close_with(websocket::close_code::try_again_later,
                                 close_text(ErrorCode::Busy, "a producer is already connected"));
                return;
            }
            self->active_ = true;
            impl.producer = self;
            self->read();
        });
    }

    void close_with(websocket::close_code code, const std::string& reason) {
        active_ = false;
        if (closing_) {
            return;
        }
        closing_ = true;
        ws_.async_close(websocket::close_reason(code, reason),
                        [self = shared_from_this()](beast::error_code) {});
    }

private:
    void read() {
        ws_.async_read(buf_, [self = shared_from_this()](beast::error_code ec, std::size_t) {
            if (ec) {
                self->active_ = false;
                return;
            }
            const std::string text = beast::buffers_to_string(self->buf_.data());
            self->buf_.consume(self->buf_.size());
            if (self->closing_) {
                return;
            }
            if (auto reason = self->impl_->on_producer_message(text)) {
                self->close_with(websocket::close_code::policy_error, *reason);
                return;
            }
            self->read();
        });
    }

    websocket::stream<beast::tcp_stream> ws_;
    beast::flat_buffer buf_;
    std::shared_ptr<Impl> impl_;
    bool active_ = false;
    bool closing_ = false;
};

class Server::Impl::HttpSession : public std::enable_shared_from_this<Server::Impl::HttpSession> {
public:
    HttpSession(tcp::socket&& socket, std::shared_ptr<Impl> impl)
        : stream_(std::move(socket)), impl_(std::move(impl)) {}

    void run() {
        stream_.expires_after(std::chrono::seconds(30));
        http::async_read(stream_, buf_, req_,
                         [self = shared_from_this()](beast::error_code ec, std::size_t) {
                             if (ec) {
                                 return;
                             }
                             self->dispatch();
                         });
    }

private:
    void dispatch() {
        const std::string target(req_.target());
        if (websocket::is_upgrade(req_)) {
            stream_.expires_never();
            if (target == "/ingest") {
                std::make_shared<Producer>(stream_.release_socket(), impl_)->run(std::move(req_));
                return;
            }
            if (target == "/telemetry") {
                auto impl = impl_;
                std::make_shared<Observer>(stream_.release_socket(), impl_->opt.observer_queue)
                    ->run(std::move(req_),
                          [impl](const std::shared_ptr<Observer>& o) { impl->add_observer(o); });
                return;
            }
            respond_text(http::status::not_found, "unknown websocket path\n");
            return;
        }
        serve_file(target);
    }

    void serve_file(std::string target) {
        if (req_.method() != http::verb::get && req_.method() != http::verb::head) {
            respond_text(http::status::method_not_allowed, "method not allowed\n");
            return;
        }
        if (!impl_->opt.console_dir) {
            respond_text(http::status::not_found, "no console directory configured\n");
            return;
        }
        if (const auto q = target.find('?'); q != std::string::npos) {
            target.resize(q);
        }
        if (target.empty() || target.front() != '/' || target.find("..") != std::string::npos) {
            respond_text(http::status::bad_request, "bad path\n");
            return;
        }
        if (target.back() == '/') {
            target += "index.html";
        }
        const auto path = *impl_->opt.console_dir / target.substr(1);
        http::file_body::value_type body;
        beast::error_code ec;
        body.open(path.string().c_str(), beast::file_mode::scan, ec);
        if (ec) {
            respond_text(http::status::not_found, "not found\n");
            return;
        }
        auto res = std::make_shared<http::response<http::file_body>>(
            std::piecewise_construct, std::make_tuple(std::move(body)),
            std::make_tuple(http::status::ok, req_.version()));
        res->set(http::field::content_type, std::string(mime_type(path)));
        res->keep_alive(false);
        res->prepare_payload();
        http::async_write(stream_, *res,
                          [self = shared_from_this(), res](beast::error_code, std::size_t) {
                              beast::error_code ignored;
                              self->stream_.socket().shutdown(tcp::socket::shutdown_send, ignored);
                          });
    }

    void respond_text(http::status status, std::string text) {
        auto res = std::make_shared<http::response<http::string_body>>(status, req_.version());
        res->set(http::field::content_type, "text/plain");
        res->keep_alive(false);
        res->body() = std::move(text);
        res->prepare_payload();
        http::async_write(stream_, *res,
                          [self = shared_from_this(), res](beast::error_code, std::size_t) {
                              beast::error_code ignored;
                              self->stream_.socket().shutdown(tcp::socket::shutdown_send, ignored);
                          });
    }

    beast::tcp_stream stream_;
    beast::flat_buffer buf_;
    Request req_;
    std::shared_ptr<Impl> impl_;
};

void Server::Impl::do_accept() {
    acceptor.async_accept([self = shared_from_this()](beast::error_code ec, tcp::socket socket) {
        if (self->shutting_down || !self->acceptor.is_open()) {
            return;
        }
        if (!ec) {
            std::make_shared<HttpSession>(std::move(socket), self)->run();
        }
        self->do_accept();
    });
}

void Server::Impl::shutdown() {
    if (shutting_down) {
        return;
    }
    shutting_down = true;
    beast::error_code ignored;
    acceptor.close(ignored);
    snapshot_timer.cancel();
    if (auto p = producer.lock()) {
        p->close_with(websocket::close_code::going_away, "server shutting down");
    }
    for (auto& w : observers) {
        if (auto o = w.lock()) {
            o->close();
        }
    }
    observers.clear();
    // Peers get a moment to finish the close handshake.
    shutdown_timer.expires_after(std::chrono::milliseconds(300));
    shutdown_timer.async_wait([self = shared_from_this()](beast::error_code) { self->ioc.stop(); });
}

Server::Server(ServerOptions options) : impl_(std::make_shared<Impl>(std::move(options))) {
    auto& impl = *impl_;
    impl.engine = std::make_unique<SessionEngine>(
        impl.opt.mode, impl.opt.config, impl.opt.course,
        [raw = impl_.get()](const SessionEvent& e) { raw->on_event(e); });
    impl.engine->set_session_id(impl.opt.session_id);
    impl.engine->set_diagnostic([raw = impl_.get()](const std::string& m) { raw->report(m); });
    impl.snap = impl.engine->snapshot();
    impl.summ = impl.engine->summary();
}

Server::~Server() {
    try {
        stop();
    } catch (...) {
    }
}

std::uint16_t Server::start() {
    auto& impl = *impl_;
    if (impl.started) {
        throw Error(ErrorCode::InvalidArgument, "server already started");
    }
    if (impl.opt.record) {
        SessionHeader h;
        h.session_id = impl.opt.session_id;
        h.mode = impl.opt.mode;
        h.config_hash = config_hash(impl.opt.config);
        h.created_at = impl.opt.created_at;
        impl.recorder = std::make_unique<SessionRecorder>(*impl.opt.record, h);
    }
    try {
        const tcp::endpoint ep(net::ip::make_address(impl.opt.address), impl.opt.port);
        impl.acceptor.open(ep.protocol());
        impl.acceptor.set_option(net::socket_base::reuse_address(true));
        impl.acceptor.bind(ep);
        impl.acceptor.listen(net::socket_base::max_listen_connections);
    } catch (const boost::system::system_error& e) {
        throw Error(ErrorCode::Io, "cannot listen on " + impl.opt.address + ":" +
                                       std::to_string(impl.opt.port) + ": " + e.what());
    }
    impl.started = true;
    impl.do_accept();
    impl.arm_snapshot_timer();
    impl.thread = std::thread([raw = impl_.get()] { raw->ioc.run(); });
    return impl.acceptor.local_endpoint().port();
}

void Server::stop() {
    auto& impl = *impl_;
    if (!impl.started || impl.stopped) {
        return;
    }
    impl.stopped = true;
    net::post(impl.ioc, [raw = impl_.get()] { raw->shutdown(); });
    if (impl.thread.joinable()) {
        impl.thread.join();
    }
    if (impl.recorder) {
        impl.recorder->close();
    }
    std::lock_guard lock(impl.mu);
    impl.summ = impl.engine->summary();
    impl.live_observers = 0;
}

void Server::run_until_signal() {
    auto& impl = *impl_;
    auto done = std::make_shared<std::promise<void>>();
    auto signals = std::make_shared<net::signal_set>(impl.ioc, SIGINT, SIGTERM);
    auto once = std::make_shared<std::once_flag>();
    signals->async_wait([done, once, signals](beast::error_code, int) {
        std::call_once(*once, [&] { done->set_value(); });
    });
    done->get_future().wait();
    stop();
}

std::size_t Server::frames_processed() const {
    std::lock_guard lock(impl_->mu);
    return impl_->frames;
}

std::size_t Server::observer_count() const {
    std::lock_guard lock(impl_->mu);
    return impl_->live_observers;
}

Snapshot Server::snapshot() const {
    std::lock_guard lock(impl_->mu);
    return impl_->snap;
}

RunSummary Server::summary() const {
    std::lock_guard lock(impl_->mu);
    return impl_->summ;
}

std::string Server::command_log() const {
    std::lock_guard lock(impl_->mu);
    return impl_->log;
}

void Server::set_diagnostic(std::function<void(const std::string&)> d) {
    std::lock_guard lock(impl_->mu);
    impl_->diag = std::move(d);
}

}  // namespace gq
