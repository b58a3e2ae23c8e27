#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

namespace betasplit::verify {

/// One check. A row passes when metric <= bound, so pass/fail can be
/// recomputed from the stored numbers alone.
struct Row {
    std::string quantity;
    std::int64_t n = 0;  // 0 when no single n applies
    std::map<std::string, double> values;
    double metric = 0.0;
    double bound = 0.0;
    bool pass = false;
};

struct Report {
    std::string suite;
    std::vector<Row> rows;

    bool passed() const;
    nlohmann::json to_json() const;
    static Report from_json(const nlohmann::json& j);
    std::string table() const;
};

const std::vector<std::string>& suite_names();

/// Runs one suite; throws UsageError for unknown names.
Report run_suite(const std::string& suite, int threads = 0);

/// Round to 15 significant digits so serialized numbers are stable.
double round15(double x);

// Pinned tolerances shared with the acceptance binary.
inline constexpr double kMgfDeviationConstant = 0.1;
inline constexpr double kScaledErrorFactor = 5.0;
inline constexpr std::uint64_t kSeedHarmonic2 = 20240101;
inline constexpr std::uint64_t kSeedHarmonic100 = 20240102;
inline constexpr std::uint64_t kSeedSplit = 20240103;
inline constexpr std::uint64_t kSeedOccupancy = 20240104;
inline constexpr std::uint64_t kSeedPaintbox = 20240105;
inline constexpr std::uint64_t kSeedClt = 20240106;

}  // namespace betasplit::verify
