#include "gesturequad/course.hpp"
#include "gesturequad/derive.hpp"
#include "gesturequad/error.hpp"
#include "gesturequad/gesture_config.hpp"
#include "gesturequad/server.hpp"
#include "gesturequad/session.hpp"
#include "gesturequad/stats.hpp"
#include "gesturequad/ueq.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>

#ifndef GESTUREQUAD_VERSION
#define GESTUREQUAD_VERSION "0.0.0"
#endif
#ifndef GESTUREQUAD_DATA_DIR
#define GESTUREQUAD_DATA_DIR "data"
#endif

namespace {

using gq::Error;
using gq::ErrorCode;
using nlohmann::ordered_json;

gq::GestureConfig resolve_config(const std::string& flag) {
    if (!flag.empty()) {
        return gq::load_config(flag);
    }
    if (const char* env = std::getenv("GESTUREQUAD_CONFIG"); env && *env) {
        return gq::load_config(env);
    }
    return gq::bundled_default_config();
}

gq::Course resolve_course(const std::string& flag) {
    return flag.empty() ? gq::default_zigzag_course() : gq::load_course(flag);
}

gq::GestureKind parse_mode(const std::string& s) {
    const auto m = gq::parse_gesture_kind(s);
    if (!m) {
        throw Error(ErrorCode::InvalidArgument, "mode must be 'body' or 'hand'");
    }
    return *m;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error(ErrorCode::Io, "cannot write '" + path + "'");
    }
    out << text;
    if (!out.flush()) {
        throw Error(ErrorCode::Io, "write to '" + path + "' failed");
    }
}

std::string fixed(double v, int digits = 3) {
    std::ostringstream s;
    s << std::fixed << std::setprecision(digits) << v;
    return s.str();
}

ordered_json summary_json(const gq::RunSummary& s) {
    ordered_json counts = ordered_json::object();
    for (const auto& [name, n] : s.dispatch_counts) {
        counts[std::string(gq::to_string(name))] = n;
    }
    return {{"session_id", s.session_id},
            {"mode", gq::to_string(s.mode)},
            {"completed", s.completed},
            {"elapsed", gq::format_mss(static_cast<double>(s.elapsed_ms) / 1000.0)},
            {"elapsed_ms", s.elapsed_ms},
            {"commands", s.command_count},
            {"dispatch_counts", counts}};
}

// ---- ueq helpers

std::vector<gq::ScaleScores> score_all(const std::vector<gq::UeqResponse>& rs,
                                       const gq::UeqItemMap& map) {
    std::vector<gq::ScaleScores> out;
    out.reserve(rs.size());
    for (const auto& r : rs) {
        out.push_back(gq::score(r, map));
    }
    return out;
}

void print_scores(const std::vector<gq::UeqResponse>& rs, const std::vector<gq::ScaleScores>& ss,
                  bool json) {
    if (json) {
        ordered_json arr = ordered_json::array();
        for (std::size_t i = 0; i < rs.size(); ++i) {
            ordered_json row{{"participant_id", rs[i].participant_id},
                             {"condition", rs[i].condition}};
            for (auto s : gq::kAllUeqScales) {
                row[std::string(gq::to_string(s))] = ss[i][s];
            }
            row["pragmatic"] = ss[i].pragmatic;
            row["hedonic"] = ss[i].hedonic;
            arr.push_back(row);
        }
        std::cout << arr.dump(2) << "\n";
        return;
    }
    std::cout << std::left << std::setw(14) << "participant" << std::setw(10) << "condition";
    for (auto s : gq::kAllUeqScales) {
        std::cout << std::right << std::setw(16) << gq::to_string(s);
    }
    std::cout << std::setw(11) << "pragmatic" << std::setw(9) << "hedonic" << "\n";
    for (std::size_t i = 0; i < rs.size(); ++i) {
        std::cout << std::left << std::setw(14) << rs[i].participant_id << std::setw(10)
                  << rs[i].condition << std::right;
        for (auto s : gq::kAllUeqScales) {
            std::cout << std::setw(16) << fixed(ss[i][s]);
        }
        std::cout << std::setw(11) << fixed(ss[i].pragmatic) << std::setw(9)
                  << fixed(ss[i].hedonic) << "\n";
    }
}

void print_comparison(const std::vector<gq::ScaleComparison>& rows, double alpha, bool student,
                      bool json) {
    if (json) {
        ordered_json arr = ordered_json::array();
        for (const auto& r : rows) {
            arr.push_back({{"scale", r.scale},
                           {"mean_a", r.mean_a},
                           {"mean_b", r.mean_b},
                           {"t", r.test.t},
                           {"df", r.test.df},
                           {"p", r.test.p},
                           {"significant", r.significant}});
        }
        std::cout << ordered_json{{"test", student ? "student" : "welch"},
                                  {"alpha", alpha},
                                  {"scales", arr}}
                         .dump(2)
                  << "\n";
        return;
    }
    std::cout << (student ? "Student" : "Welch") << " t test, alpha " << alpha << "\n";
    std::cout << std::left << std::setw(16) << "scale" << std::right << std::setw(9) << "mean A"
              << std::setw(9) << "mean B" << std::setw(9) << "t" << std::setw(9) << "df"
              << std::setw(9) << "p" << "  sig\n";
    for (const auto& r : rows) {
        std::cout << std::left << std::setw(16) << r.scale << std::right << std::setw(9)
                  << fixed(r.mean_a) << std::setw(9) << fixed(r.mean_b) << std::setw(9)
                  << fixed(r.test.t) << std::setw(9) << fixed(r.test.df, 2) << std::setw(9)
                  << fixed(r.test.p, 4) << "  " << (r.significant ? "yes" : "no") << "\n";
    }
}

void print_times(const std::map<std::string, gq::TimeStats>& groups, const std::string& key,
                 bool json) {
    if (json) {
        ordered_json arr = ordered_json::array();
        for (const auto& [g, st] : groups) {
            arr.push_back({{key, g},
                           {"n", st.n},
                           {"mean_s", st.mean},
                           {"mean", gq::format_mss(st.mean)},
                           {"median_s", st.median},
                           {"median", gq::format_mss(st.median)},
                           {"q1_s", st.q1},
                           {"q3_s", st.q3},
                           {"outliers_s", st.outliers}});
        }
        std::cout << arr.dump(2) << "\n";
        return;
    }
    std::cout << std::left << std::setw(12) << key << std::right << std::setw(5) << "n"
              << std::setw(8) << "mean" << std::setw(8) << "median" << "  outliers\n";
    for (const auto& [g, st] : groups) {
        std::cout << std::left << std::setw(12) << g << std::right << std::setw(5) << st.n
                  << std::setw(8) << gq::format_mss(st.mean) << std::setw(8)
                  << gq::format_mss(st.median) << "  ";
        if (st.outliers.empty()) {
            std::cout << "-";
        }
        for (std::size_t i = 0; i < st.outliers.size(); ++i) {
            std::cout << (i ? ", " : "") << gq::format_mss(st.outliers[i]);
        }
        std::cout << "\n";
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Gesture-controlled quadruped: live sessions, replay and evaluation tools"};
    app.set_version_flag("--version", std::string("gesturequad ") + GESTUREQUAD_VERSION);
    app.require_subcommand(1);

    // serve
    auto* serve = app.add_subcommand("serve", "Run a live session over websockets");
    std::uint16_t port = 8765;
    std::string address = "127.0.0.1";
    std::string mode = "body";
    std::string config_path;
    std::string course_path;
    std::string record_path;
    std::string console_dir;
    std::string session_id = "live";
    serve->add_option("--port", port, "TCP port (0 picks a free one)")->capture_default_str();
    serve->add_option("--address", address, "Listen address")->capture_default_str();
    serve->add_option("--mode", mode, "Gesture vocabulary")
        ->check(CLI::IsMember({"body", "hand"}))
        ->capture_default_str();
    serve->add_option("--config", config_path, "Gesture config file");
    serve->add_option("--course", course_path, "Course file");
    serve->add_option("--record", record_path, "Record the session to this file");
    serve->add_option("--console", console_dir, "Serve static console files from DIR")
        ->check(CLI::ExistingDirectory);
    serve->add_option("--session-id", session_id)->capture_default_str();

    // replay
    auto* replay = app.add_subcommand("replay", "Replay a recorded session");
    std::string replay_file;
    bool max_speed = false;
    std::string command_log_path;
    bool replay_json = false;
    replay->add_option("FILE", replay_file, "Session file")->required();
    replay->add_flag("--max-speed", max_speed, "Ignore wall time");
    replay->add_option("--config", config_path, "Gesture config file");
    replay->add_option("--course", course_path, "Course file");
    replay->add_option("--command-log", command_log_path, "Write the command log to FILE");
    replay->add_flag("--json", replay_json, "Print the summary as JSON");

    // derive-config
    auto* derive = app.add_subcommand("derive-config",
                                      "Derive angle bounds from synthetic skeletons");
    std::string derive_out;
    std::uint64_t seed = 0;
    derive->add_option("--out", derive_out, "Output config file")->required();
    derive->add_option("--seed", seed, "Noise seed")->capture_default_str();

    // script-course
    auto* script = app.add_subcommand(
        "script-course", "Write a synthetic landmark session that drives the zigzag course");
    std::string script_out;
    script->add_option("--out", script_out, "Output session file")->required();
    script->add_option("--mode", mode)->check(CLI::IsMember({"body", "hand"}))->capture_default_str();
    script->add_option("--config", config_path, "Gesture config file");
    script->add_option("--session-id", session_id);
    std::string course_out;
    script->add_option("--course-out", course_out, "Also write the course file used");

    // ueq
    auto* ueq = app.add_subcommand("ueq", "Questionnaire and completion-time statistics");
    ueq->require_subcommand(1);
    std::string map_path = std::string(GESTUREQUAD_DATA_DIR) + "/ueq_items.csv";
    bool json = false;

    auto* ueq_score = ueq->add_subcommand("score", "Score responses into the six scales");
    std::string responses_path;
    ueq_score->add_option("--responses", responses_path, "Responses CSV")->required();
    ueq_score->add_option("--map", map_path, "Item map CSV")->capture_default_str();
    ueq_score->add_flag("--json", json);

    auto* ueq_compare = ueq->add_subcommand("compare", "Compare two groups scale by scale");
    std::string a_path;
    std::string b_path;
    double alpha = 0.05;
    bool student = false;
    ueq_compare->add_option("--a", a_path, "Responses CSV for group A")->required();
    ueq_compare->add_option("--b", b_path, "Responses CSV for group B")->required();
    ueq_compare->add_option("--alpha", alpha)->check(CLI::Range(0.0, 1.0))->capture_default_str();
    ueq_compare->add_flag("--student", student, "Pooled-variance t test instead of Welch");
    ueq_compare->add_option("--map", map_path, "Item map CSV")->capture_default_str();
    ueq_compare->add_flag("--json", json);

    auto* ueq_times = ueq->add_subcommand("times", "Completion time statistics");
    std::string times_path;
    std::string group_by = "condition";
    ueq_times->add_option("--file", times_path, "Times CSV")->required();
    ueq_times->add_option("--group-by", group_by)
        ->check(CLI::IsMember({"condition", "iteration"}))
        ->capture_default_str();
    ueq_times->add_flag("--json", json);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (*serve) {
            gq::ServerOptions opt;
            opt.address = address;
            opt.port = port;
            opt.mode = parse_mode(mode);
            opt.config = resolve_config(config_path);
            opt.course = resolve_course(course_path);
            opt.session_id = session_id;
            if (!record_path.empty()) {
                opt.record = record_path;
            }
            if (!console_dir.empty()) {
                opt.console_dir = console_dir;
            }
            gq::Server server(opt);
            server.set_diagnostic([](const std::string& m) { std::cerr << m << "\n"; });
            const auto bound = server.start();
            std::cerr << "listening on ws://" << address << ":" << bound
                      << " (/ingest, /telemetry)\n";
            server.run_until_signal();
            std::cout << gq::format_summary(server.summary());
            return 0;
        }
        if (*replay) {
            const auto record = gq::read_session(replay_file);
            const auto config = resolve_config(config_path);
            if (!record.header.config_hash.empty() &&
                record.header.config_hash != gq::config_hash(config)) {
                std::cerr << "warning[InvalidConfig]: session was recorded with config "
                          << record.header.config_hash << ", replaying with "
                          << gq::config_hash(config) << "\n";
            }
            const auto result = gq::replay(record, config, resolve_course(course_path),
                                           max_speed ? gq::ReplaySpeed::Max
                                                     : gq::ReplaySpeed::Realtime);
            if (!command_log_path.empty()) {
                write_text(command_log_path, result.command_log);
            }
            if (replay_json) {
                std::cout << summary_json(result.summary).dump(2) << "\n";
            } else {
                std::cout << gq::format_summary(result.summary);
            }
            return 0;
        }
        if (*derive) {
            gq::DerivationOptions opts;
            opts.seed = seed;
            const auto d = gq::derive_default_config(opts);
            gq::save_config(d.config, derive_out);
            for (const auto& p : d.poses) {
                std::cout << std::left << std::setw(14) << gq::to_string(p.name)
                          << " half-width " << fixed(p.half_width_deg, 1) << " stability "
                          << fixed(p.stability, 3) << "\n";
            }
            std::cout << "separated: " << (d.separated ? "true" : "false") << "\n"
                      << "config hash: " << gq::config_hash(d.config) << "\n";
            return d.separated ? 0 : 2;
        }
        if (*script) {
            gq::ScriptOptions opts;
            opts.mode = parse_mode(mode);
            opts.session_id = session_id == "live" ? "zigzag-" + mode : session_id;
            const auto record = gq::scripted_session(gq::default_zigzag_course(),
                                                     gq::default_zigzag_plan(),
                                                     resolve_config(config_path), opts);
            write_text(script_out, gq::write_session(record));
            if (!course_out.empty()) {
                gq::save_course(gq::default_zigzag_course(), course_out);
            }
            std::cout << "wrote " << record.events.size() << " events to " << script_out << "\n";
            return 0;
        }
        if (*ueq_score) {
            const auto map = gq::load_item_map(map_path);
            const auto rs = gq::load_responses(responses_path);
            print_scores(rs, score_all(rs, map), json);
            return 0;
        }
        if (*ueq_compare) {
            const auto map = gq::load_item_map(map_path);
            const auto a = score_all(gq::load_responses(a_path), map);
            const auto b = score_all(gq::load_responses(b_path), map);
            print_comparison(gq::compare(a, b, alpha, student ? gq::TTest::Student : gq::TTest::Welch),
                             alpha, student, json);
            return 0;
        }
        if (*ueq_times) {
            const auto records = gq::load_times(times_path);
            std::map<std::string, std::vector<double>> groups;
            for (const auto& r : records) {
                groups[group_by == "condition" ? r.condition : std::to_string(r.iteration)]
                    .push_back(r.seconds);
            }
            if (groups.empty()) {
                throw Error(ErrorCode::EmptyDataset, "no time records");
            }
            std::map<std::string, gq::TimeStats> stats;
            for (const auto& [g, xs] : groups) {
                stats[g] = gq::time_stats(xs);
            }
            print_times(stats, group_by, json);
            return 0;
        }
    } catch (const Error& e) {
        std::cerr << "error[" << gq::to_string(e.code()) << "]: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error[Internal]: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
