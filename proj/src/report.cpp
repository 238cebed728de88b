#include "snnsim/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace snnsim {

namespace {

std::string format_double(double value)
{
    char buf[32];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return {buf, ptr};
}

double parse_double(const std::string &field, const std::string &name)
{
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || ptr != field.data() + field.size()) {
        throw std::runtime_error("csv: bad " + name + " value '" + field + "'");
    }
    return value;
}

std::uint64_t parse_u64(const std::string &field, const std::string &name)
{
    std::uint64_t value = 0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || ptr != field.data() + field.size()) {
        throw std::runtime_error("csv: bad " + name + " value '" + field + "'");
    }
    return value;
}

constexpr const char *kCsvHeader =
        "policy,network,rate,map_seed,accuracy,latency_s,energy_j,area_norm";

} // namespace

std::string sweep_to_csv(const SweepResult &result)
{
    std::ostringstream out;
    out << kCsvHeader << "\n";
    for (const SweepRow &row : result.rows) {
        out << to_string(row.policy) << ',' << row.network << ','
            << format_double(row.fault_rate) << ',' << row.map_seed << ','
            << format_double(row.accuracy) << ',' << format_double(row.latency_s) << ','
            << format_double(row.energy_j) << ',' << format_double(row.area_norm) << "\n";
    }
    return out.str();
}

SweepResult sweep_from_csv(const std::string &csv)
{
    std::istringstream in(csv);
    std::string line;
    if (!std::getline(in, line) || line != kCsvHeader) {
        throw std::runtime_error("csv: missing or wrong header line");
    }

    SweepResult result;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        std::vector<std::string> fields;
        std::istringstream row_in(line);
        std::string field;
        while (std::getline(row_in, field, ',')) {
            fields.push_back(field);
        }
        if (fields.size() != 8) {
            throw std::runtime_error("csv: expected 8 fields, got " +
                    std::to_string(fields.size()) + " in line '" + line + "'");
        }
        SweepRow row;
        row.policy = policy_kind_from_string(fields[0]);
        row.network = static_cast<int>(parse_u64(fields[1], "network"));
        row.fault_rate = parse_double(fields[2], "rate");
        row.map_seed = parse_u64(fields[3], "map_seed");
        row.accuracy = parse_double(fields[4], "accuracy");
        row.latency_s = parse_double(fields[5], "latency_s");
        row.energy_j = parse_double(fields[6], "energy_j");
        row.area_norm = parse_double(fields[7], "area_norm");
        result.rows.push_back(row);
    }
    return result;
}

void write_csv(const SweepResult &result, const std::string &path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("csv: cannot open '" + path + "' for writing");
    }
    out << sweep_to_csv(result);
    if (!out) {
        throw std::runtime_error("csv: write to '" + path + "' failed");
    }
}

SweepResult read_csv(const std::string &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("csv: cannot open '" + path + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return sweep_from_csv(buffer.str());
}

namespace {

constexpr int kWidth = 640;
constexpr int kHeight = 420;
constexpr int kMarginLeft = 60;
constexpr int kMarginRight = 140;
constexpr int kMarginTop = 30;
constexpr int kMarginBottom = 50;

const char *policy_color(PolicyKind kind)
{
    switch (kind) {
    case PolicyKind::NoMitigation: return "#d62728";
    case PolicyKind::BnP1: return "#1f77b4";
    case PolicyKind::BnP2: return "#2ca02c";
    case PolicyKind::BnP3: return "#9467bd";
    case PolicyKind::ReExecutionTMR: return "#7f7f7f";
    }
    return "#000000";
}

void write_text_file(const std::string &path, const std::string &content)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("svg: cannot open '" + path + "' for writing");
    }
    out << content;
    if (!out) {
        throw std::runtime_error("svg: write to '" + path + "' failed");
    }
}

std::string svg_header(const std::string &title, const std::string &x_label,
        const std::string &y_label)
{
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
        << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight
        << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << kWidth / 2 << "\" y=\"18\" text-anchor=\"middle\" "
           "font-family=\"sans-serif\" font-size=\"14\">"
        << title << "</text>\n";
    out << "<text x=\"" << (kMarginLeft + (kWidth - kMarginLeft - kMarginRight) / 2)
        << "\" y=\"" << kHeight - 12
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
        << x_label << "</text>\n";
    out << "<text x=\"16\" y=\"" << kHeight / 2
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" "
           "transform=\"rotate(-90 16 "
        << kHeight / 2 << ")\">" << y_label << "</text>\n";
    // axes
    out << "<line x1=\"" << kMarginLeft << "\" y1=\"" << kMarginTop << "\" x2=\""
        << kMarginLeft << "\" y2=\"" << kHeight - kMarginBottom
        << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << kMarginLeft << "\" y1=\"" << kHeight - kMarginBottom
        << "\" x2=\"" << kWidth - kMarginRight << "\" y2=\"" << kHeight - kMarginBottom
        << "\" stroke=\"black\"/>\n";
    return out.str();
}

} // namespace

void write_svg_plots(const SweepResult &result, const std::string &out_dir)
{
    if (result.rows.empty()) {
        throw std::invalid_argument("svg: empty sweep result");
    }
    std::filesystem::create_directories(out_dir);

    // Mean accuracy per (policy, rate).
    std::map<PolicyKind, std::map<double, std::pair<double, int>>> acc;
    std::set<double> rates;
    std::map<PolicyKind, SweepRow> cost_row;
    for (const SweepRow &row : result.rows) {
        auto &[sum, n] = acc[row.policy][row.fault_rate];
        sum += row.accuracy;
        n += 1;
        rates.insert(row.fault_rate);
        cost_row[row.policy] = row;
    }

    const double plot_w = kWidth - kMarginLeft - kMarginRight;
    const double plot_h = kHeight - kMarginTop - kMarginBottom;
    const double rate_min = *rates.begin();
    const double rate_max = *rates.rbegin();
    const double rate_span = rate_max > rate_min ? rate_max - rate_min : 1.0;

    {
        std::ostringstream out;
        out << svg_header("Accuracy vs fault rate", "fault rate", "accuracy");
        for (const auto &[policy, by_rate] : acc) {
            std::ostringstream points;
            for (const auto &[rate, sum_n] : by_rate) {
                const double mean = sum_n.first / sum_n.second;
                const double x = kMarginLeft + (rate - rate_min) / rate_span * plot_w;
                const double y = kMarginTop + (1.0 - mean) * plot_h;
                points << format_double(x) << ',' << format_double(y) << ' ';
            }
            out << "<polyline fill=\"none\" stroke=\"" << policy_color(policy)
                << "\" stroke-width=\"2\" data-policy=\"" << to_string(policy)
                << "\" points=\"" << points.str() << "\"/>\n";
        }
        int legend_y = kMarginTop + 10;
        for (const auto &[policy, by_rate] : acc) {
            out << "<rect x=\"" << kWidth - kMarginRight + 10 << "\" y=\"" << legend_y - 9
                << "\" width=\"12\" height=\"12\" fill=\"" << policy_color(policy)
                << "\"/>\n";
            out << "<text x=\"" << kWidth - kMarginRight + 26 << "\" y=\"" << legend_y
                << "\" font-family=\"sans-serif\" font-size=\"11\">" << to_string(policy)
                << "</text>\n";
            legend_y += 18;
        }
        out << "</svg>\n";
        write_text_file(out_dir + "/accuracy_vs_rate.svg", out.str());
    }

    const struct {
        const char *file;
        const char *title;
        double SweepRow::*field;
    } bars[] = {
            {"latency.svg", "Latency per inference (s)", &SweepRow::latency_s},
            {"energy.svg", "Energy per inference (J)", &SweepRow::energy_j},
            {"area.svg", "Area (normalized)", &SweepRow::area_norm},
    };
    for (const auto &chart : bars) {
        double max_value = 0.0;
        for (const auto &[policy, row] : cost_row) {
            max_value = std::max(max_value, row.*(chart.field));
        }
        std::ostringstream out;
        out << svg_header(chart.title, "policy", "value");
        const double slot = plot_w / static_cast<double>(cost_row.size());
        int k = 0;
        for (const auto &[policy, row] : cost_row) {
            const double value = row.*(chart.field);
            const double height = max_value > 0.0 ? value / max_value * plot_h : 0.0;
            const double x = kMarginLeft + k * slot + slot * 0.15;
            const double y = kMarginTop + plot_h - height;
            out << "<rect x=\"" << format_double(x) << "\" y=\"" << format_double(y)
                << "\" width=\"" << format_double(slot * 0.7) << "\" height=\""
                << format_double(height) << "\" fill=\"" << policy_color(policy)
                << "\" data-policy=\"" << to_string(policy) << "\" data-value=\""
                << format_double(value) << "\"/>\n";
            out << "<text x=\"" << format_double(x + slot * 0.35) << "\" y=\""
                << kHeight - kMarginBottom + 16
                << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
                   "font-size=\"10\">"
                << to_string(policy) << "</text>\n";
            k += 1;
        }
        out << "</svg>\n";
        write_text_file(out_dir + "/" + chart.file, out.str());
    }
}

} // namespace snnsim
