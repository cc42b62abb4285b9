#pragma once

#include <charconv>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <system_error>
#include <vector>

namespace rmfrac {

/// Shortest decimal form that round-trips to the same double (at most 17
/// significant digits), e.g. 1.3 -> "1.3".
inline std::string format_number(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    if (res.ec != std::errc{}) {
        throw std::runtime_error("format_number: conversion failed");
    }
    return std::string(buf, res.ptr);
}

/// Fixed 17 significant digits in scientific notation.
inline std::string format_sci17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.16e", v);
    return buf;
}

/// Writes one CSV row with LF ending.
inline void write_csv_row(std::ostream& os, const std::vector<double>& values) {
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) {
            os << ',';
        }
        os << format_number(values[i]);
    }
    os << '\n';
}

// Writes content to path in binary mode so line endings stay LF.
inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error("cannot open '" + path + "' for writing");
    }
    out << content;
    out.flush();
    if (!out) {
        throw std::runtime_error("write to '" + path + "' failed");
    }
}

} // namespace rmfrac
