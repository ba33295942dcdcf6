#include "qlbm/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "qlbm/errors.hpp"

namespace qlbm {

namespace {

std::vector<std::string> tokenize(const std::string& line) {
    std::istringstream in(line);
    std::vector<std::string> tokens;
    std::string tok;
    while (in >> tok) tokens.push_back(tok);
    return tokens;
}

int parse_int(const std::string& tok) {
    std::size_t consumed = 0;
    int value = 0;
    try {
        value = std::stoi(tok, &consumed);
    } catch (const std::exception&) {
        throw ParseError("expected an integer, got \"" + tok + "\"");
    }
    if (consumed != tok.size()) throw ParseError("expected an integer, got \"" + tok + "\"");
    return value;
}

} // namespace

WindowFile parse_window_file(const std::string& text) {
    WindowFile file;
    std::istringstream in(text);
    std::string raw;
    int header_lines = 0;
    std::optional<int> dimension;
    while (std::getline(in, raw)) {
        const std::size_t hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        const auto tokens = tokenize(raw);
        if (tokens.empty()) continue;

        if (header_lines == 0) {
            if (tokens[0] != "lattice" || tokens.size() != 2)
                throw ParseError("first directive must be: lattice <name>");
            file.lattice = tokens[1];
            dimension = build_descriptor(file.lattice).dimension; // validates the name
            header_lines = 1;
            continue;
        }
        if (header_lines == 1) {
            if (tokens[0] == "extent") {
                if (tokens.size() != 2) throw ParseError("usage: extent <steps>");
                file.extent = parse_int(tokens[1]);
                if (*file.extent < 0) throw ParseError("extent must be nonnegative");
            } else if (tokens[0] == "grid") {
                if (tokens.size() != 1 + static_cast<std::size_t>(*dimension))
                    throw ParseError("grid needs one extent per lattice axis");
                std::vector<int> extents;
                for (std::size_t i = 1; i < tokens.size(); ++i) {
                    extents.push_back(parse_int(tokens[i]));
                    if (extents.back() <= 0) throw ParseError("grid extents must be positive");
                }
                file.grid = std::move(extents);
            } else {
                throw ParseError("second directive must be: extent <steps> or grid <dims...>");
            }
            header_lines = 2;
            continue;
        }

        if (tokens.size() != static_cast<std::size_t>(*dimension) + 1)
            throw ParseError("entry needs " + std::to_string(*dimension) +
                             " coordinates and a direction index");
        std::vector<int> coords;
        for (int a = 0; a < *dimension; ++a)
            coords.push_back(parse_int(tokens[static_cast<std::size_t>(a)]));
        file.entries.push_back({std::move(coords), parse_int(tokens.back())});
    }
    if (header_lines < 2) throw ParseError("window file is missing its header");
    return file;
}

std::string serialize_window_file(const WindowFile& file) {
    std::ostringstream out;
    out << "lattice " << file.lattice << "\n";
    if (file.extent) {
        out << "extent " << *file.extent << "\n";
    } else if (file.grid) {
        out << "grid";
        for (int L : *file.grid) out << ' ' << L;
        out << "\n";
    } else {
        throw std::invalid_argument("window file needs an extent or grid header");
    }
    auto entries = file.entries;
    std::sort(entries.begin(), entries.end());
    for (const auto& [coords, direction] : entries) {
        for (int c : coords) out << c << ' ';
        out << direction << "\n";
    }
    return out.str();
}

WindowFile load_window_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open \"" + path.string() + "\"");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_window_file(buffer.str());
}

WindowBits window_bits_from_file(const WindowFile& file, const VicinityLayout& layout) {
    if (!file.extent) throw ParseError("window mode requires an `extent` header");
    const int m = layout.descriptor().num_directions();
    WindowBits bits(layout.num_qubits(), 0);
    for (const auto& [coords, direction] : file.entries) {
        if (direction < 0 || direction >= m)
            throw ParseError("direction index " + std::to_string(direction) + " out of range");
        if (!layout.contains(coords))
            throw ParseError("window entry lies outside the vicinity");
        bits[layout.qubit(coords, direction)] = 1;
    }
    return bits;
}

OccupancyField field_from_file(const WindowFile& file) {
    if (!file.grid) throw ParseError("full-grid mode requires a `grid` header");
    const LatticeDescriptor descriptor = build_descriptor(file.lattice);
    OccupancyField field(descriptor, *file.grid);
    for (const auto& [coords, direction] : file.entries) {
        if (direction < 0 || direction >= descriptor.num_directions())
            throw ParseError("direction index " + std::to_string(direction) + " out of range");
        for (std::size_t a = 0; a < coords.size(); ++a)
            if (coords[a] < 0 || coords[a] >= (*file.grid)[a])
                throw ParseError("site coordinate outside the grid");
        field.set(field.site_index(coords), direction, true);
    }
    return field;
}

namespace {

void write_json(std::string& out, const nlohmann::json& value) {
    using nlohmann::json;
    switch (value.type()) {
    case json::value_t::null:
        out += "null";
        break;
    case json::value_t::boolean:
        out += value.get<bool>() ? "true" : "false";
        break;
    case json::value_t::number_integer:
        out += std::to_string(value.get<std::int64_t>());
        break;
    case json::value_t::number_unsigned:
        out += std::to_string(value.get<std::uint64_t>());
        break;
    case json::value_t::number_float: {
        const double d = value.get<double>();
        if (!std::isfinite(d)) {
            out += "null";
            break;
        }
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.17g", d);
        out += buf;
        break;
    }
    case json::value_t::string: {
        out += '"';
        for (char c : value.get_ref<const std::string&>()) {
            switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\b': out += "\\b"; break;
            case '\f': out += "\\f"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
            }
        }
        out += '"';
        break;
    }
    case json::value_t::array: {
        out += '[';
        bool first = true;
        for (const auto& item : value) {
            if (!first) out += ',';
            first = false;
            write_json(out, item);
        }
        out += ']';
        break;
    }
    case json::value_t::object: {
        // nlohmann's object storage is a std::map, so iteration is already
        // in sorted key order.
        out += '{';
        bool first = true;
        for (auto it = value.begin(); it != value.end(); ++it) {
            if (!first) out += ',';
            first = false;
            write_json(out, nlohmann::json(it.key()));
            out += ':';
            write_json(out, it.value());
        }
        out += '}';
        break;
    }
    default:
        throw std::invalid_argument("unsupported JSON value type");
    }
}

} // namespace

std::string canonical_json(const nlohmann::json& value) {
    std::string out;
    write_json(out, value);
    return out;
}

nlohmann::json to_json(const std::complex<double>& z) {
    return nlohmann::json::array({z.real(), z.imag()});
}

nlohmann::json to_json(const GramReport& report) {
    nlohmann::json j;
    j["realizable"] = report.realizable;
    j["tolerance"] = report.tolerance;
    auto matrix = [](const Eigen::MatrixXcd& mat) {
        nlohmann::json rows = nlohmann::json::array();
        for (Eigen::Index i = 0; i < mat.rows(); ++i) {
            nlohmann::json row = nlohmann::json::array();
            for (Eigen::Index k = 0; k < mat.cols(); ++k) row.push_back(to_json(mat(i, k)));
            rows.push_back(row);
        }
        return rows;
    };
    j["gram_in"] = matrix(report.gram_in);
    j["gram_out"] = matrix(report.gram_out);
    nlohmann::json violations = nlohmann::json::array();
    for (const auto& v : report.violations) {
        nlohmann::json item;
        item["i"] = v.i;
        item["j"] = v.j;
        item["inner_in"] = to_json(v.inner_in);
        item["inner_out"] = to_json(v.inner_out);
        item["abs_difference"] = v.abs_difference;
        violations.push_back(item);
    }
    j["violations"] = violations;
    return j;
}

nlohmann::json to_json(const FocalDistribution& dist) {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& [pattern, p] : dist.probs)
        j[pattern_to_string(pattern, dist.num_directions)] = p;
    return j;
}

nlohmann::json to_json(const ComparisonReport& report) {
    nlohmann::json j;
    j["tv_distance"] = report.tv_distance;
    j["tolerance"] = report.tolerance;
    j["pass"] = report.pass;
    j["interference_detected"] = report.interference_detected;
    j["branching_events"] = report.branching_events;
    nlohmann::json deltas = nlohmann::json::object();
    for (const auto& [pattern, d] : report.per_pattern_delta)
        deltas[pattern_to_string(pattern, report.num_directions)] = d;
    j["per_pattern_delta"] = deltas;
    return j;
}

} // namespace qlbm
