#pragma once

#include <filesystem>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qlbm/lattice.hpp"
#include "qlbm/realizability.hpp"
#include "qlbm/simulator.hpp"
#include "qlbm/spacetime.hpp"

namespace qlbm {

/// Parsed .win file: a lattice name, either a vicinity extent (window mode)
/// or grid extents (full-grid mode), and one entry per occupied
/// (coordinates..., direction) pair. The format is line oriented:
///
///   lattice d2q4
///   extent 1          # or: grid 4 4
///   0 0 0             # coordinates then direction index
///   -1 0 2
///
/// '#' starts a comment; blank lines are ignored.
struct WindowFile {
    std::string lattice;
    std::optional<int> extent;
    std::optional<std::vector<int>> grid;
    std::vector<std::pair<std::vector<int>, int>> entries;
};

WindowFile parse_window_file(const std::string& text);
std::string serialize_window_file(const WindowFile& file);
WindowFile load_window_file(const std::filesystem::path& path);

/// Window-mode bits for the layout; entries outside the vicinity or with a
/// bad direction raise ParseError.
WindowBits window_bits_from_file(const WindowFile& file, const VicinityLayout& layout);

/// Full-grid occupancy from a grid-mode file.
OccupancyField field_from_file(const WindowFile& file);

/// Deterministic JSON serialization: keys in sorted order, floating point
/// numbers at 17 significant digits, no whitespace. Re-parsing and
/// re-serializing the output is byte-identical.
std::string canonical_json(const nlohmann::json& value);

nlohmann::json to_json(const std::complex<double>& z);
nlohmann::json to_json(const GramReport& report);
nlohmann::json to_json(const FocalDistribution& dist);
nlohmann::json to_json(const ComparisonReport& report);

} // namespace qlbm
