#ifndef cdok_cli_commands_hpp
#define cdok_cli_commands_hpp

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cli/generators.hpp"
#include "cli/io.hpp"
#include "cli/serialize.hpp"
#include "json.hpp"

namespace cdok::cli {

struct BuildConfig {
    OracleKind kind = OracleKind::points;
    double epsilon = 0.5;
    std::optional<std::int64_t> tau;
    double tau_exponent = 0.5;
    std::optional<std::int64_t> w;
    double omega = 3.0;
    OracleMode mode = OracleMode::approximate;
};

struct BuildResult {
    LoadedOracle oracle;
    nlohmann::ordered_json stats;
};

/// Parses `path` as `config.kind` and builds the oracle. Rejects tau outside [1, n].
BuildResult build_from_file(const std::string& path, const BuildConfig& config);

BuildResult build_points(std::vector<RawPoint> raw, const BuildConfig& config);
BuildResult build_hierarchy(const LoadedHierarchy& h, const BuildConfig& config);
BuildResult build_text(std::string text, const BuildConfig& config);

/// One query line answered as a JSON object: distance, witness_a, witness_b,
/// exact, or an "error" member. Infinite distances become null.
nlohmann::ordered_json answer_line(const LoadedOracle& oracle, std::string_view line);

struct BenchConfig {
    gen::PointSpec points;
    std::vector<double> tau_exponents{0.5, 0.6, 0.75};
    std::vector<OracleMode> modes{OracleMode::approximate, OracleMode::exact};
    double epsilon = 0.5;
    int repetitions = 5;
    std::size_t queries = 2000;
    std::uint64_t query_seed = 7;
};

struct BenchRow {
    std::size_t n = 0;
    std::int64_t tau = 0;
    std::int64_t w = 0;
    std::int64_t build_ns = 0;
    std::int64_t query_ns_p50 = 0;
    std::int64_t query_ns_p99 = 0;
    OracleMode mode = OracleMode::approximate;
};

/// One row per (mode, tau); every figure is the median over the repetitions.
/// Query pairs are drawn by picking random points, so big colors dominate.
std::vector<BenchRow> run_bench(const BenchConfig& config);

std::string bench_csv_header();
std::string bench_csv_row(const BenchRow& row);

/// Applies CDOK_THREADS, if set, as the OpenMP thread cap.
void apply_thread_cap();

/// Entry point of the `cdok` tool. Exit codes: 0 ok, 1 validation or parse
/// failure, 2 corrupt oracle file.
int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err);

}

#endif /* cdok_cli_commands_hpp */
