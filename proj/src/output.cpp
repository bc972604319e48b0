// output.cpp

#include "bellmc/output.hpp"

#include <charconv>
#include <ostream>
#include <stdexcept>
#include <system_error>

namespace bellmc {

std::string format_double(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    if (res.ec != std::errc{})
        throw std::runtime_error("double formatting failed");
    return std::string(buf, res.ptr);
}

namespace {

constexpr const char* kHeader =
    "command,n,mode,criterion,theta,p_hat,stderr,wilson_lo,wilson_hi,trials,"
    "invalid_trials,master_seed,wall_time_seconds";

std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (const char c : s) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    return out;
}

}  // namespace

void write_csv(std::span<const OutputRecord> records, std::ostream& os) {
    os << kHeader << '\n';
    for (const OutputRecord& r : records) {
        os << r.command << ',' << r.n << ',' << r.mode << ',' << r.criterion
           << ',';
        if (r.theta) os << format_double(*r.theta);
        os << ',' << format_double(r.p_hat) << ',' << format_double(r.stderr_value)
           << ',' << format_double(r.wilson_low) << ','
           << format_double(r.wilson_high) << ',' << r.trials << ','
           << r.invalid_trials << ',' << r.master_seed << ','
           << format_double(r.wall_time_seconds) << '\n';
    }
}

void write_json(std::span<const OutputRecord> records, std::ostream& os) {
    os << "[\n";
    for (std::size_t i = 0; i < records.size(); ++i) {
        const OutputRecord& r = records[i];
        os << "  {\"command\":\"" << json_escape(r.command) << "\",\"n\":" << r.n
           << ",\"mode\":\"" << json_escape(r.mode) << "\",\"criterion\":\""
           << json_escape(r.criterion) << "\",\"theta\":";
        if (r.theta)
            os << format_double(*r.theta);
        else
            os << "null";
        os << ",\"p_hat\":" << format_double(r.p_hat)
           << ",\"stderr\":" << format_double(r.stderr_value)
           << ",\"wilson_lo\":" << format_double(r.wilson_low)
           << ",\"wilson_hi\":" << format_double(r.wilson_high)
           << ",\"trials\":" << r.trials
           << ",\"invalid_trials\":" << r.invalid_trials
           << ",\"master_seed\":" << r.master_seed
           << ",\"wall_time_seconds\":" << format_double(r.wall_time_seconds)
           << "}" << (i + 1 < records.size() ? "," : "") << '\n';
    }
    os << "]\n";
}

}  // namespace bellmc
