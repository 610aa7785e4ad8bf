#ifndef LCL_RESULTS_HPP
#define LCL_RESULTS_HPP

#include <string>
#include <utility>
#include <vector>

namespace lcl {

// Flat result record shared by every subcommand: an echo of the parsed
// configuration, a provenance block, and a numeric table (columns + rows).
// Re-running the same configuration and seed reproduces the numeric payload
// bit for bit; every number is printed with %.17g in both CSV and JSON so the
// two formats agree to the last digit.
struct ResultRecord {
    int schema_version = 1;
    std::string subcommand;
    std::vector<std::pair<std::string, std::string>> config;      // ordered echo
    std::vector<std::pair<std::string, std::string>> provenance;  // version, seed, timestamp, ...
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    void add_config(const std::string& key, const std::string& value);
    void add_config(const std::string& key, double value);
    void add_config(const std::string& key, std::uint64_t value);
    void add_provenance(const std::string& key, const std::string& value);
};

// 17-significant-digit decimal form used for every emitted number.
std::string format_double(double v);

std::string to_csv(const ResultRecord& record);
std::string to_json(const ResultRecord& record);

// Writes the chosen format to path ("-" for stdout).
void emit_results(const ResultRecord& record, const std::string& format, const std::string& path);

}  // namespace lcl

#endif
