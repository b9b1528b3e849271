#include "lightfl/csv.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <system_error>

namespace lightfl::sim {

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    if (res.ec != std::errc()) throw std::runtime_error("format_double: conversion failed");
    return std::string(buf, res.ptr);
}

namespace {

double parse_double(const std::string& field) {
    double v = 0;
    const auto res = std::from_chars(field.data(), field.data() + field.size(), v);
    if (res.ec != std::errc() || res.ptr != field.data() + field.size())
        throw std::runtime_error("csv: bad numeric field '" + field + "'");
    return v;
}

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (const char c : line) {
        if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    fields.push_back(cur);
    return fields;
}

} // namespace

void emit_csv(const ExperimentResult& result, std::ostream& out) {
    std::vector<ResultRow> rows = result.rows;
    std::stable_sort(rows.begin(), rows.end(), [](const ResultRow& a, const ResultRow& b) {
        if (a.sweep_value != b.sweep_value) return a.sweep_value < b.sweep_value;
        if (a.device != b.device) return a.device < b.device;
        return a.metric < b.metric;
    });
    out << "experiment,sweep_name,sweep_value,device,metric,mean,std,q05,q95,n_feasible,n_total\n";
    for (const auto& r : rows) {
        out << result.experiment << ',' << r.sweep_name << ',' << format_double(r.sweep_value) << ','
            << r.device << ',' << r.metric << ',' << format_double(r.agg.mean) << ','
            << format_double(r.agg.std) << ',' << format_double(r.agg.q05) << ','
            << format_double(r.agg.q95) << ',' << r.agg.n_feasible << ',' << r.agg.n_total << '\n';
    }
}

void emit_csv(const ExperimentResult& result, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("csv: cannot open '" + path + "' for writing");
    emit_csv(result, out);
}

ExperimentResult parse_csv(std::istream& in) {
    ExperimentResult result;
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("csv: missing header");
    if (line != "experiment,sweep_name,sweep_value,device,metric,mean,std,q05,q95,n_feasible,n_total")
        throw std::runtime_error("csv: unexpected header '" + line + "'");
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto f = split_line(line);
        if (f.size() != 11) throw std::runtime_error("csv: expected 11 fields, got line '" + line + "'");
        result.experiment = f[0];
        ResultRow row;
        row.sweep_name = f[1];
        row.sweep_value = parse_double(f[2]);
        row.device = static_cast<int>(parse_double(f[3]));
        row.metric = f[4];
        row.agg.mean = parse_double(f[5]);
        row.agg.std = parse_double(f[6]);
        row.agg.q05 = parse_double(f[7]);
        row.agg.q95 = parse_double(f[8]);
        row.agg.n_feasible = static_cast<long>(parse_double(f[9]));
        row.agg.n_total = static_cast<long>(parse_double(f[10]));
        result.rows.push_back(std::move(row));
    }
    return result;
}

} // namespace lightfl::sim
