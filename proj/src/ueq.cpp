#include "gesturequad/ueq.hpp"

#include "gesturequad/error.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

namespace gq {

namespace {

constexpr std::array<std::string_view, 6> kScaleNames = {
    "attractiveness", "perspicuity", "efficiency", "dependability", "stimulation", "novelty",
};

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorCode::Io, "cannot open '" + path.string() + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

// Non-empty lines with their 1-based line numbers.
std::vector<std::pair<std::size_t, std::string>> lines_of(std::string_view text) {
    std::vector<std::pair<std::size_t, std::string>> out;
    std::size_t lineno = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto nl = text.find('\n', pos);
        const auto end = nl == std::string_view::npos ? text.size() : nl;
        ++lineno;
        const auto line = trim(text.substr(pos, end - pos));
        if (!line.empty()) {
            out.emplace_back(lineno, std::string(line));
        }
        if (nl == std::string_view::npos) {
            break;
        }
        pos = nl + 1;
    }
    return out;
}

template <typename T>
bool parse_number(std::string_view s, T& out) {
    const auto r = std::from_chars(s.data(), s.data() + s.size(), out);
    return r.ec == std::errc{} && r.ptr == s.data() + s.size();
}

[[noreturn]] void bad_row(ErrorCode code, std::size_t lineno, const std::string& msg) {
    throw Error(code, "line " + std::to_string(lineno) + ": " + msg);
}

}  // namespace

std::string_view to_string(UeqScale s) { return kScaleNames[static_cast<std::size_t>(s)]; }

std::optional<UeqScale> parse_ueq_scale(std::string_view s) {
    for (std::size_t i = 0; i < kScaleNames.size(); ++i) {
        if (kScaleNames[i] == s) {
            return static_cast<UeqScale>(i);
        }
    }
    return std::nullopt;
}

std::vector<std::string> split_csv_line(std::string_view line) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (true) {
        const auto comma = line.find(',', pos);
        const auto end = comma == std::string_view::npos ? line.size() : comma;
        out.emplace_back(trim(line.substr(pos, end - pos)));
        if (comma == std::string_view::npos) {
            break;
        }
        pos = comma + 1;
    }
    return out;
}

void validate(const UeqItemMap& map) {
    std::array<int, 6> counts{};
    for (std::size_t i = 0; i < kUeqItemCount; ++i) {
        if (map.items[i].index != static_cast<int>(i + 1)) {
            throw Error(ErrorCode::InvalidConfig,
                        "item map entry " + std::to_string(i + 1) + " is missing or misplaced");
        }
        ++counts[static_cast<std::size_t>(map.items[i].scale)];
    }
    for (UeqScale s : kAllUeqScales) {
        const int want = s == UeqScale::Attractiveness ? 6 : 4;
        if (counts[static_cast<std::size_t>(s)] != want) {
            throw Error(ErrorCode::InvalidConfig, "scale " + std::string(to_string(s)) + " has " +
                                                      std::to_string(counts[static_cast<std::size_t>(s)]) +
                                                      " items, expected " + std::to_string(want));
        }
    }
}

UeqItemMap item_map_from_csv(std::string_view text) {
    const auto lines = lines_of(text);
    if (lines.empty() || split_csv_line(lines[0].second).size() < 3 ||
        split_csv_line(lines[0].second)[0] != "item") {
        throw Error(ErrorCode::InvalidConfig, "item map: expected header item,scale,reversed");
    }
    UeqItemMap map;
    std::set<int> seen;
    for (std::size_t k = 1; k < lines.size(); ++k) {
        const auto [lineno, line] = lines[k];
        const auto f = split_csv_line(line);
        if (f.size() < 3) {
            bad_row(ErrorCode::InvalidConfig, lineno, "expected at least 3 fields");
        }
        int index = 0;
        if (!parse_number(f[0], index) || index < 1 || index > static_cast<int>(kUeqItemCount)) {
            bad_row(ErrorCode::InvalidConfig, lineno, "item index must be 1..26");
        }
        if (!seen.insert(index).second) {
            bad_row(ErrorCode::InvalidConfig, lineno, "duplicate item " + f[0]);
        }
        const auto scale = parse_ueq_scale(f[1]);
        if (!scale) {
            bad_row(ErrorCode::InvalidConfig, lineno, "unknown scale '" + f[1] + "'");
        }
        if (f[2] != "0" && f[2] != "1") {
            bad_row(ErrorCode::InvalidConfig, lineno, "reversed must be 0 or 1");
        }
        UeqItem& item = map.items[static_cast<std::size_t>(index - 1)];
        item.index = index;
        item.scale = *scale;
        item.reversed = f[2] == "1";
        item.left = f.size() > 3 ? f[3] : "";
        item.right = f.size() > 4 ? f[4] : "";
    }
    validate(map);
    return map;
}

UeqItemMap load_item_map(const std::filesystem::path& path) {
    return item_map_from_csv(read_file(path));
}

ScaleScores score(const UeqResponse& response, const UeqItemMap& map) {
    if (response.answers.size() != kUeqItemCount) {
        throw Error(ErrorCode::WrongItemCount,
                    "response '" + response.participant_id + "' has " +
                        std::to_string(response.answers.size()) + " answers, expected 26");
    }
    std::array<double, 6> sums{};
    std::array<int, 6> counts{};
    for (std::size_t i = 0; i < kUeqItemCount; ++i) {
        const int answer = response.answers[i];
        if (answer < 1 || answer > 7) {
            throw Error(ErrorCode::OutOfRangeAnswer,
                        "response '" + response.participant_id + "' q" + std::to_string(i + 1) +
                            " = " + std::to_string(answer) + " outside 1..7");
        }
        const int a = map.items[i].reversed ? 4 - answer : answer - 4;
        const auto s = static_cast<std::size_t>(map.items[i].scale);
        sums[s] += a;
        ++counts[s];
    }
    ScaleScores out;
    for (std::size_t s = 0; s < 6; ++s) {
        out.scales[s] = sums[s] / counts[s];
    }
    out.pragmatic = (out[UeqScale::Perspicuity] + out[UeqScale::Efficiency] +
                     out[UeqScale::Dependability]) /
                    3.0;
    out.hedonic = (out[UeqScale::Stimulation] + out[UeqScale::Novelty]) / 2.0;
    return out;
}

std::vector<UeqResponse> responses_from_csv(std::string_view text) {
    const auto lines = lines_of(text);
    if (lines.empty()) {
        throw Error(ErrorCode::EmptyDataset, "responses: empty file");
    }
    const auto header = split_csv_line(lines[0].second);
    if (header.size() < 2 || header[0] != "participant_id" || header[1] != "condition") {
        throw Error(ErrorCode::InvalidArgument,
                    "responses: expected header participant_id,condition,q1..q26");
    }
    std::vector<UeqResponse> out;
    for (std::size_t k = 1; k < lines.size(); ++k) {
        const auto [lineno, line] = lines[k];
        const auto f = split_csv_line(line);
        if (f.size() < 2) {
            bad_row(ErrorCode::WrongItemCount, lineno, "missing fields");
        }
        UeqResponse r;
        r.participant_id = f[0];
        r.condition = f[1];
        for (std::size_t i = 2; i < f.size(); ++i) {
            int a = 0;
            if (!parse_number(f[i], a)) {
                bad_row(ErrorCode::OutOfRangeAnswer, lineno, "answer '" + f[i] + "' is not an integer");
            }
            r.answers.push_back(a);
        }
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<UeqResponse> load_responses(const std::filesystem::path& path) {
    return responses_from_csv(read_file(path));
}

std::vector<ScaleComparison> compare(const std::vector<ScaleScores>& a,
                                     const std::vector<ScaleScores>& b, double alpha,
                                     TTest kind) {
    if (a.size() < 2 || b.size() < 2) {
        throw Error(ErrorCode::InsufficientData,
                    "compare needs at least 2 responses per group (got " +
                        std::to_string(a.size()) + " and " + std::to_string(b.size()) + ")");
    }
    auto row = [&](std::string name, auto pick) {
        std::vector<double> xa;
        std::vector<double> xb;
        for (const auto& s : a) {
            xa.push_back(pick(s));
        }
        for (const auto& s : b) {
            xb.push_back(pick(s));
        }
        ScaleComparison c;
        c.scale = std::move(name);
        c.mean_a = mean(xa);
        c.mean_b = mean(xb);
        c.test = t_test(xa, xb, kind);
        c.significant = c.test.p < alpha;
        return c;
    };
    std::vector<ScaleComparison> out;
    for (UeqScale s : kAllUeqScales) {
        out.push_back(row(std::string(to_string(s)), [s](const ScaleScores& x) { return x[s]; }));
    }
    out.push_back(row("pragmatic", [](const ScaleScores& x) { return x.pragmatic; }));
    out.push_back(row("hedonic", [](const ScaleScores& x) { return x.hedonic; }));
    return out;
}

std::vector<TimeRecord> times_from_csv(std::string_view text) {
    const auto lines = lines_of(text);
    if (lines.empty()) {
        throw Error(ErrorCode::EmptyDataset, "times: empty file");
    }
    const auto header = split_csv_line(lines[0].second);
    if (header != std::vector<std::string>{"participant_id", "condition", "iteration", "seconds"}) {
        throw Error(ErrorCode::InvalidArgument,
                    "times: expected header participant_id,condition,iteration,seconds");
    }
    std::vector<TimeRecord> out;
    for (std::size_t k = 1; k < lines.size(); ++k) {
        const auto [lineno, line] = lines[k];
        const auto f = split_csv_line(line);
        if (f.size() != 4) {
            bad_row(ErrorCode::InvalidArgument, lineno, "expected 4 fields");
        }
        TimeRecord r;
        r.participant_id = f[0];
        r.condition = f[1];
        if (!parse_number(f[2], r.iteration)) {
            bad_row(ErrorCode::InvalidArgument, lineno, "iteration must be an integer");
        }
        if (f[3].find(':') != std::string::npos) {
            r.seconds = parse_mss(f[3]);
        } else if (!parse_number(f[3], r.seconds)) {
            bad_row(ErrorCode::InvalidArgument, lineno, "seconds must be a number or m:ss");
        }
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<TimeRecord> load_times(const std::filesystem::path& path) {
    return times_from_csv(read_file(path));
}

}  // namespace gq
