#pragma once

#include "gesturequad/course.hpp"
#include "gesturequad/engine.hpp"
#include "gesturequad/gesture_config.hpp"

#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <string>

namespace gq {

/// Live session over websockets.
///
///   ws://host:port/ingest     one producer sends body_frame / hand_frame
///   ws://host:port/telemetry  any number of observers receive a course
///                             message on connect, then state snapshots
///                             (periodic and after every frame) plus
///                             command, robot_state and course_status events
///
/// Other GET requests are answered from the console directory when one is
/// configured. A rejected or misbehaving connection is closed with a
/// reason of the form "error[Code]: detail"; the session itself continues.
struct ServerOptions {
    std::string address = "127.0.0.1";
    /// 0 picks a free port.
    std::uint16_t port = 8765;
    GestureKind mode = GestureKind::Body;
    GestureConfig config;
    Course course;
    std::string session_id = "live";
    std::string created_at;
    std::optional<std::filesystem::path> record;
    std::optional<std::filesystem::path> console_dir;
    std::size_t observer_queue = 256;
    int snapshot_period_ms = 50;
};

class Server {
public:
    explicit Server(ServerOptions options);
    ~Server();

    Server(const Server&) = delete;
    Server& operator=(const Server&) = delete;

    /// Bind, listen and start the io thread. Returns the bound port.
    std::uint16_t start();
    /// Close every connection, flush the recording and join the io thread.
    void stop();
    /// Block until stop() is called or SIGINT/SIGTERM arrives, then stop.
    void run_until_signal();

    /// Thread-safe views, updated by the event loop.
    std::size_t frames_processed() const;
    std::size_t observer_count() const;
    Snapshot snapshot() const;
    RunSummary summary() const;
    std::string command_log() const;

    void set_diagnostic(std::function<void(const std::string&)> d);

private:
    struct Impl;
    std::shared_ptr<Impl> impl_;
};

}  // namespace gq
