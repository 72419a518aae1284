#pragma once

#include "gesturequad/stats.hpp"

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace gq {

enum class UeqScale : std::uint8_t {
    Attractiveness,
    Perspicuity,
    Efficiency,
    Dependability,
    Stimulation,
    Novelty,
};

inline constexpr std::array<UeqScale, 6> kAllUeqScales = {
    UeqScale::Attractiveness, UeqScale::Perspicuity, UeqScale::Efficiency,
    UeqScale::Dependability,  UeqScale::Stimulation, UeqScale::Novelty,
};
inline constexpr std::size_t kUeqItemCount = 26;

std::string_view to_string(UeqScale s);
std::optional<UeqScale> parse_ueq_scale(std::string_view s);

struct UeqItem {
    int index = 0;
    UeqScale scale = UeqScale::Attractiveness;
    bool reversed = false;
    std::string left;
    std::string right;
};

/// items[i] describes question i + 1.
struct UeqItemMap {
    std::array<UeqItem, kUeqItemCount> items;
};

/// Throws InvalidConfig unless every index 1..26 appears once, attractiveness
/// has 6 items and every other scale 4.
void validate(const UeqItemMap& map);

/// CSV with header item,scale,reversed[,left,right].
UeqItemMap item_map_from_csv(std::string_view text);
UeqItemMap load_item_map(const std::filesystem::path& path);

struct UeqResponse {
    std::string participant_id;
    std::string condition;
    std::vector<int> answers;
};

struct ScaleScores {
    std::array<double, 6> scales{};
    double pragmatic = 0.0;
    double hedonic = 0.0;

    double operator[](UeqScale s) const { return scales[static_cast<std::size_t>(s)]; }
};

/// Throws WrongItemCount and OutOfRangeAnswer.
ScaleScores score(const UeqResponse& response, const UeqItemMap& map);

/// CSV with header participant_id,condition,q1,...,q26.
std::vector<UeqResponse> responses_from_csv(std::string_view text);
std::vector<UeqResponse> load_responses(const std::filesystem::path& path);

struct ScaleComparison {
    std::string scale;
    double mean_a = 0.0;
    double mean_b = 0.0;
    TTestResult test;
    bool significant = false;
};

/// One row per scale plus "pragmatic" and "hedonic". Throws
/// InsufficientData when a group has fewer than 2 responses.
std::vector<ScaleComparison> compare(const std::vector<ScaleScores>& a,
                                     const std::vector<ScaleScores>& b, double alpha = 0.05,
                                     TTest kind = TTest::Welch);

struct TimeRecord {
    std::string participant_id;
    std::string condition;
    int iteration = 0;
    double seconds = 0.0;
};

/// CSV with header participant_id,condition,iteration,seconds. Seconds may
/// also be given as m:ss.
std::vector<TimeRecord> times_from_csv(std::string_view text);
std::vector<TimeRecord> load_times(const std::filesystem::path& path);

/// Split on commas and trim surrounding whitespace. Fields are not quoted.
std::vector<std::string> split_csv_line(std::string_view line);

}  // namespace gq
