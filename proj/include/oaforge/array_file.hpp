#pragma once

// Plain-text array files:
//
//   OA N n q t
//   <N lines of n symbols; the first character is coordinate 1>
//   # key=<hex>            (optional)
//
// Blank lines and other '#' lines are ignored. Repeated lines form a multiset.

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "oaforge/algebra.hpp"
#include "oaforge/cube.hpp"

namespace oaforge {

struct ArrayFile {
    OAParams params;
    VertexSet rows;
    std::optional<std::string> key_hex;
};

// Throws ParseError carrying the 1-based line number.
ArrayFile read_array_file(std::istream& in);
ArrayFile read_array_file(const std::filesystem::path& path);

void write_array_file(std::ostream& out, const VertexSet& rows, int t, const std::optional<std::string>& key_hex = {});
std::string array_file_text(const VertexSet& rows, int t, const std::optional<std::string>& key_hex = {});

}  // namespace oaforge
