#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace pathtrack {

/// T1 / Tp. Throws std::invalid_argument for nonpositive times.
double speedup(double t1, double tp);

/// Workers needed to run the higher-precision job within the budget,
/// assuming optimal speedup: ceil(p * t_high / t_budget).
int cores_for_fixed_time(double t_high, double t_budget, int p);

struct QualityUpResult {
    int cores_needed = 0;
    double factor = 1.0;
    // cores_needed == 1: the doubled precision costs nothing extra
    bool degenerate = false;
};

/// Linear model y(1) = 1, y(cores_needed) = 2 evaluated at p:
/// 1 + (p - 1) / (cores_needed - 1).
QualityUpResult quality_up_factor(int p, int cores_needed);

struct TimingRecord {
    std::string label;
    int workers = 1;
    double wall = 0.0;
    std::map<std::string, double> breakdown;
};

enum class TableFormat { Csv, Table };

TableFormat parse_table_format(std::string_view text);

/// Simple column table rendered as comma-separated values or aligned text.
class Table {
public:
    explicit Table(std::vector<std::string> header) : header_(std::move(header)) {}

    void add_row(std::vector<std::string> row) { rows_.push_back(std::move(row)); }
    std::string render(TableFormat format, std::string_view title = {}) const;

private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

std::string format_seconds(double seconds);
std::string format_fixed(double value, int decimals);
std::string format_sci(double value, int digits = 2);

/// Logical core count plus the CPU model when it can be read.
std::string hardware_description();
unsigned hardware_cores();

/// Median of a nonempty sample (by copy).
double median(std::vector<double> sample);

} // namespace pathtrack
