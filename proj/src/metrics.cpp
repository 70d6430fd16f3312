#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "pathtrack/metrics/metrics.hpp"

namespace pathtrack {

double speedup(double t1, double tp)
{
    if (!(t1 > 0.0) || !(tp > 0.0)) {
        throw std::invalid_argument("speedup needs positive times");
    }
    return t1 / tp;
}

int cores_for_fixed_time(double t_high, double t_budget, int p)
{
    if (!(t_high > 0.0) || !(t_budget > 0.0) || p < 1) {
        throw std::invalid_argument("cores_for_fixed_time needs positive inputs");
    }
    return static_cast<int>(std::ceil(static_cast<double>(p) * t_high / t_budget));
}

QualityUpResult quality_up_factor(int p, int cores_needed)
{
    if (p < 1 || cores_needed < 1) {
        throw std::invalid_argument("quality_up_factor needs p >= 1 and cores_needed >= 1");
    }
    if (cores_needed == 1) {
        return {1, 2.0, true};
    }
    return {cores_needed, 1.0 + static_cast<double>(p - 1) / static_cast<double>(cores_needed - 1), false};
}

TableFormat parse_table_format(std::string_view text)
{
    if (text == "csv") {
        return TableFormat::Csv;
    }
    if (text == "table") {
        return TableFormat::Table;
    }
    throw std::invalid_argument("unknown format '" + std::string(text) + "' (expected csv or table)");
}

std::string Table::render(TableFormat format, std::string_view title) const
{
    std::ostringstream out;
    if (format == TableFormat::Csv) {
        auto line = [&out](const std::vector<std::string>& cells) {
            for (std::size_t c = 0; c < cells.size(); ++c) {
                out << (c ? "," : "") << cells[c];
            }
            out << '\n';
        };
        line(header_);
        for (const auto& r : rows_) {
            line(r);
        }
        return out.str();
    }

    std::vector<std::size_t> width(header_.size());
    for (std::size_t c = 0; c < header_.size(); ++c) {
        width[c] = header_[c].size();
        for (const auto& r : rows_) {
            if (c < r.size()) {
                width[c] = std::max(width[c], r[c].size());
            }
        }
    }
    std::size_t total = 0;
    for (auto w : width) {
        total += w + 3;
    }
    if (!title.empty()) {
        out << title << '\n';
    }
    auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t c = 0; c < width.size(); ++c) {
            const std::string& cell = c < cells.size() ? cells[c] : std::string();
            out << (c ? " | " : "");
            out << std::string(width[c] - cell.size(), ' ') << cell;
        }
        out << '\n';
    };
    line(header_);
    out << std::string(total > 3 ? total - 3 : total, '-') << '\n';
    for (const auto& r : rows_) {
        line(r);
    }
    return out.str();
}

std::string format_seconds(double seconds)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3fs", seconds);
    return buf;
}

std::string format_fixed(double value, int decimals)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
    return buf;
}

std::string format_sci(double value, int digits)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*E", digits, value);
    return buf;
}

unsigned hardware_cores()
{
    return std::max(1u, std::thread::hardware_concurrency());
}

std::string hardware_description()
{
    std::string model = "unknown CPU";
    std::ifstream cpuinfo("/proc/cpuinfo");
    std::string line;
    while (std::getline(cpuinfo, line)) {
        if (line.rfind("model name", 0) == 0) {
            const auto colon = line.find(':');
            if (colon != std::string::npos) {
                model = line.substr(colon + 2);
            }
            break;
        }
    }
    return std::to_string(hardware_cores()) + " logical core(s), " + model;
}

double median(std::vector<double> sample)
{
    if (sample.empty()) {
        throw std::invalid_argument("median of an empty sample");
    }
    std::sort(sample.begin(), sample.end());
    const std::size_t mid = sample.size() / 2;
    return sample.size() % 2 ? sample[mid] : 0.5 * (sample[mid - 1] + sample[mid]);
}

} // namespace pathtrack
