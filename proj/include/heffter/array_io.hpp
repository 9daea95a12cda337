#pragma once

#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "heffter/error.hpp"
#include "heffter/pfarray.hpp"

namespace heffter {

namespace detail {

inline std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

inline long long parse_int(std::string_view tok, std::string_view what) {
    tok = trim(tok);
    if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
    long long value = 0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (tok.empty() || ec != std::errc{} || ptr != tok.data() + tok.size())
        throw ParseError("non-integer " + std::string(what) + " '" + std::string(tok) + "'");
    return value;
}

inline int checked_int(long long x, std::string_view what) {
    if (x < 1 || x > 1'000'000'000) throw ParseError(std::string(what) + " out of range: " + std::to_string(x));
    return static_cast<int>(x);
}

inline PartiallyFilledArray array_from_json(const nlohmann::json& j) {
    try {
        const auto& rows = j.at("cells");
        if (!rows.is_array() || rows.empty()) throw ParseError("JSON array: 'cells' must be a nonempty list of rows");
        const int m = static_cast<int>(rows.size());
        const int n = static_cast<int>(rows.front().size());
        if (j.contains("m") && j.at("m").get<int>() != m) throw ParseError("JSON array: m does not match row count");
        if (j.contains("n") && j.at("n").get<int>() != n) throw ParseError("JSON array: n does not match row length");
        const int v = checked_int(j.at("v").get<long long>(), "v");
        const int t = checked_int(j.value("t", 1LL), "t");
        const int lambda = checked_int(j.value("lambda", 1LL), "lambda");
        if (v % t != 0) throw ParseError("t=" + std::to_string(t) + " does not divide v=" + std::to_string(v));
        PartiallyFilledArray a(m, n, v, t, lambda);
        for (int i = 0; i < m; ++i) {
            const auto& row = rows[static_cast<std::size_t>(i)];
            if (!row.is_array() || static_cast<int>(row.size()) != n) throw ParseError("JSON array: ragged rows");
            for (int c = 0; c < n; ++c) {
                const auto& cell = row[static_cast<std::size_t>(c)];
                if (cell.is_null()) continue;
                if (!cell.is_number_integer()) throw ParseError("JSON array: non-integer cell");
                a.set(i + 1, c + 1, cell.get<long long>());
            }
        }
        return a;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("JSON array: ") + e.what());
    }
}

} // namespace detail

/// Parses the array text format:
///
///     v=207 t=9 m=11 n=11
///     10,55,101,-90,,13,-22,,-78,67,-56
///     ...
///
/// Header keys are `v`, `t`, `lambda` (or `λ`), `m`, `n`; `t` and `lambda`
/// default to 1 and `m`, `n` are inferred from the rows when absent. An empty
/// field is an empty cell. Blank lines and lines starting with `#` are
/// ignored. Content starting with `{` is read as the JSON mirror instead.
inline PartiallyFilledArray parse_array(std::string_view text) {
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string_view::npos && text[first] == '{') {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(text);
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(std::string("malformed JSON: ") + e.what());
        }
        return detail::array_from_json(j);
    }

    std::vector<std::string_view> lines;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto nl = text.find('\n', pos);
        if (nl == std::string_view::npos) nl = text.size();
        const auto line = detail::trim(text.substr(pos, nl - pos));
        if (!line.empty() && line.front() != '#') lines.push_back(line);
        pos = nl + 1;
    }
    if (lines.empty()) throw ParseError("missing header line");

    std::optional<long long> v, t, lambda, m, n;
    {
        std::string header(lines.front());
        std::istringstream is(header);
        std::string tok;
        while (is >> tok) {
            const auto eq = tok.find('=');
            if (eq == std::string::npos) throw ParseError("malformed header token '" + tok + "'");
            const std::string key = tok.substr(0, eq);
            const long long val = detail::parse_int(std::string_view(tok).substr(eq + 1), "header value");
            if (key == "v") v = val;
            else if (key == "t") t = val;
            else if (key == "lambda" || key == "λ") lambda = val;
            else if (key == "m") m = val;
            else if (key == "n") n = val;
            else throw ParseError("unknown header key '" + key + "'");
        }
    }
    if (!v) throw ParseError("header is missing v");
    const int vi = detail::checked_int(*v, "v");
    const int ti = detail::checked_int(t.value_or(1), "t");
    const int li = detail::checked_int(lambda.value_or(1), "lambda");
    if (vi % ti != 0) throw ParseError("t=" + std::to_string(ti) + " does not divide v=" + std::to_string(vi));

    std::vector<std::vector<std::optional<long long>>> grid;
    for (std::size_t r = 1; r < lines.size(); ++r) {
        std::vector<std::optional<long long>> row;
        std::size_t p = 0;
        const auto line = lines[r];
        while (true) {
            auto comma = line.find(',', p);
            const auto field = detail::trim(line.substr(p, comma == std::string_view::npos ? std::string_view::npos : comma - p));
            if (field.empty()) row.emplace_back(std::nullopt);
            else row.emplace_back(detail::parse_int(field, "cell"));
            if (comma == std::string_view::npos) break;
            p = comma + 1;
        }
        if (!grid.empty() && row.size() != grid.front().size())
            throw ParseError("ragged rows: row " + std::to_string(grid.size() + 1) + " has " + std::to_string(row.size()) +
                             " fields, expected " + std::to_string(grid.front().size()));
        grid.push_back(std::move(row));
    }
    if (grid.empty()) throw ParseError("array has no rows");
    const int mi = static_cast<int>(grid.size());
    const int ni = static_cast<int>(grid.front().size());
    if (m && *m != mi) throw ParseError("header m=" + std::to_string(*m) + " but found " + std::to_string(mi) + " rows");
    if (n && *n != ni) throw ParseError("header n=" + std::to_string(*n) + " but rows have " + std::to_string(ni) + " fields");

    PartiallyFilledArray a(mi, ni, vi, ti, li);
    for (int i = 0; i < mi; ++i)
        for (int j = 0; j < ni; ++j)
            a.set(i + 1, j + 1, grid[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
    return a;
}

inline PartiallyFilledArray load_array(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_array(ss.str());
}

/// Text form with entries printed in symmetric representation.
inline std::string format_array(const PartiallyFilledArray& a) {
    std::ostringstream os;
    os << "v=" << a.modulus() << " t=" << a.subgroup_order();
    if (a.fold() != 1) os << " lambda=" << a.fold();
    os << " m=" << a.rows() << " n=" << a.cols() << '\n';
    for (int i = 1; i <= a.rows(); ++i) {
        for (int j = 1; j <= a.cols(); ++j) {
            if (j > 1) os << ',';
            if (auto x = a.at(i, j)) os << symmetric(*x, a.modulus());
        }
        os << '\n';
    }
    return os.str();
}

inline nlohmann::json to_json(const PartiallyFilledArray& a) {
    nlohmann::json cells = nlohmann::json::array();
    for (int i = 1; i <= a.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (int j = 1; j <= a.cols(); ++j) {
            if (auto x = a.at(i, j)) row.push_back(symmetric(*x, a.modulus()));
            else row.push_back(nullptr);
        }
        cells.push_back(std::move(row));
    }
    return {{"v", a.modulus()}, {"t", a.subgroup_order()}, {"lambda", a.fold()},
            {"m", a.rows()},    {"n", a.cols()},           {"cells", std::move(cells)}};
}

} // namespace heffter
