// output.hpp
// Result records and their CSV / JSON serialization.  Field order is fixed
// and shared by both formats so downstream parsers can rely on it.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace bellmc {

// One emitted result row.  Not every field applies to every command; theta
// is empty unless the run pins a Schmidt angle, and wall_time_seconds is 0
// unless timing output was requested (so default output is byte-stable).
struct OutputRecord {
    std::string command;
    int n = 0;
    std::string mode;       // "rim", "rom", or "" when not applicable
    std::string criterion;  // e.g. "mabk-orbit"
    std::optional<double> theta;
    double p_hat = 0.0;
    double stderr_value = 0.0;
    double wilson_low = 0.0;
    double wilson_high = 0.0;
    std::uint64_t trials = 0;
    std::uint64_t invalid_trials = 0;
    std::uint64_t master_seed = 0;
    double wall_time_seconds = 0.0;
};

// Shortest decimal string that round-trips to the same double.  Used by
// every writer so the two formats never disagree on a value.
std::string format_double(double value);

// Header line plus one line per record.  Empty optional fields stay empty.
void write_csv(std::span<const OutputRecord> records, std::ostream& os);

// A JSON array of objects with the same fields in the same order; theta is
// null when absent.
void write_json(std::span<const OutputRecord> records, std::ostream& os);

}  // namespace bellmc
