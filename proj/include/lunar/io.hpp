#pragma once

/**
 * @file io.hpp
 * @brief JSON grid/cube documents and line-delimited search records.
 *
 * Grid document:
 *
 *     {"base": 10, "rows": [["12","0","20"], ["1","22","10"], ["21","20","2"]]}
 *
 * Cube document adds the line set and three layers of rows:
 *
 *     {"base": 2, "line_set": "axes_and_space_diagonals", "layers": [rows, rows, rows]}
 *
 * Entries are always digit strings so bases above 10 stay unambiguous.
 */

#include <array>
#include <string>

#include "json.hpp"
#include "lunar/magic.hpp"
#include "lunar/number.hpp"
#include "lunar/search.hpp"

namespace lunar::io {

using json = nlohmann::json;

inline constexpr const char* version = "0.1.0";

namespace detail {

[[noreturn]] inline void malformed(const std::string& what) { throw error(errc::malformed_document, what); }

inline unsigned read_base(const json& doc) {
    if (!doc.is_object()) malformed("document must be a JSON object");
    auto it = doc.find("base");
    if (it == doc.end() || !it->is_number_unsigned()) malformed("missing integer field 'base'");
    auto base = it->get<unsigned>();
    if (base < 2 || base > max_text_base) malformed("base must be in 2..36");
    return base;
}

inline std::array<number, 9> read_rows(const json& rows, unsigned base) {
    if (!rows.is_array() || rows.size() != 3) malformed("'rows' must be an array of 3 rows");
    std::array<number, 9> cells;
    for (std::size_t r = 0; r < 3; ++r) {
        const json& row = rows[r];
        if (!row.is_array() || row.size() != 3) malformed("row " + std::to_string(r + 1) + " must have 3 entries");
        for (std::size_t c = 0; c < 3; ++c) {
            if (!row[c].is_string()) malformed("entries must be digit strings");
            cells[r * 3 + c] = parse(row[c].get<std::string>(), base);
        }
    }
    return cells;
}

inline json rows_json(const grid3& g) {
    json rows = json::array();
    for (std::size_t r = 0; r < 3; ++r) {
        rows.push_back({format(g.at(r, 0)), format(g.at(r, 1)), format(g.at(r, 2))});
    }
    return rows;
}

}  // namespace detail

inline json to_json(const grid3& g) { return {{"base", g.base}, {"rows", detail::rows_json(g)}}; }

inline grid3 grid_from_json(const json& doc) {
    unsigned base = detail::read_base(doc);
    auto it = doc.find("rows");
    if (it == doc.end()) detail::malformed("missing field 'rows'");
    return grid3(base, detail::read_rows(*it, base));
}

inline grid3 parse_grid(const std::string& text) {
    json doc = json::parse(text, nullptr, false);
    if (doc.is_discarded()) detail::malformed("not valid JSON");
    return grid_from_json(doc);
}

inline json to_json(const cube3& c) {
    json layers = json::array();
    for (std::size_t z = 0; z < 3; ++z) layers.push_back(detail::rows_json(c.layer(z)));
    return {{"base", c.base}, {"line_set", to_string(c.line_set)}, {"layers", layers}};
}

inline cube3 cube_from_json(const json& doc) {
    unsigned base = detail::read_base(doc);
    cube_line_set set = cube_line_set::axes_and_space_diagonals;
    if (auto it = doc.find("line_set"); it != doc.end()) {
        if (!it->is_string()) detail::malformed("'line_set' must be a string");
        auto parsed = parse_cube_line_set(it->get<std::string>());
        if (!parsed) detail::malformed("unknown line_set '" + it->get<std::string>() + "'");
        set = *parsed;
    }
    auto it = doc.find("layers");
    if (it == doc.end() || !it->is_array() || it->size() != 3) detail::malformed("'layers' must hold 3 grids");
    std::array<number, 27> cells;
    for (std::size_t z = 0; z < 3; ++z) {
        auto layer = detail::read_rows((*it)[z], base);
        for (std::size_t k = 0; k < 9; ++k) cells[z * 9 + k] = std::move(layer[k]);
    }
    return cube3(base, std::move(cells), set);
}

inline cube3 parse_cube(const std::string& text) {
    json doc = json::parse(text, nullptr, false);
    if (doc.is_discarded()) detail::malformed("not valid JSON");
    return cube_from_json(doc);
}

inline json to_json(const search_spec& spec) {
    json j = {
        {"base", spec.base},
        {"entries", to_string(spec.entries)},
        {"distinct", spec.require_distinct},
        {"max_total_digits", spec.max_total_digits},
        {"budget", spec.budget},
        {"canonical", spec.canonical},
        {"threads", spec.threads},
    };
    j["total"] = spec.total ? json(format(*spec.total)) : json(nullptr);
    j["limit"] = spec.emit_limit == unlimited ? json(nullptr) : json(spec.emit_limit);
    return j;
}

/// One self-contained result record.
inline json result_record(const grid3& g, std::size_t index) {
    json j = {{"type", "result"}, {"index", index}, {"base", g.base}, {"rows", detail::rows_json(g)}};
    if (auto t = magic_total(g)) j["total"] = format(*t);
    return j;
}

inline json result_record(const cube3& c, std::size_t index) {
    json j = to_json(c);
    j["type"] = "cube";
    j["index"] = index;
    if (auto t = cube_magic_total(c)) j["total"] = format(*t);
    return j;
}

inline json result_record(const sum_pair& p, std::size_t index) {
    return {{"type", "pair"},
            {"index", index},
            {"base", p.first.base},
            {"first", detail::rows_json(p.first)},
            {"second", detail::rows_json(p.second)},
            {"sum", detail::rows_json(p.sum)}};
}

}  // namespace lunar::io
