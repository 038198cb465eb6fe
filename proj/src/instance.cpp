#include "somtsp/instance.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>

#include "somtsp/errors.hpp"
#include "somtsp/io.hpp"
#include "somtsp/rng.hpp"

namespace somtsp {

void validate_instance(const Instance& instance) {
    if (instance.cities.empty()) {
        throw ValidationError("instance '" + instance.id + "' has no cities");
    }
    for (std::size_t i = 0; i < instance.cities.size(); ++i) {
        const Point& p = instance.cities[i];
        if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
            throw ValidationError("city " + std::to_string(i) + " has a non-finite coordinate");
        }
    }
}

std::string_view to_string(AnchorStrategy strategy) {
    switch (strategy) {
    case AnchorStrategy::Random:
        return "random";
    case AnchorStrategy::Centermost:
        return "centermost";
    case AnchorStrategy::FurthestFromCentroid:
        return "furthest";
    }
    return "unknown";
}

AnchorStrategy parse_anchor_strategy(std::string_view text) {
    if (text == "random") {
        return AnchorStrategy::Random;
    }
    if (text == "centermost") {
        return AnchorStrategy::Centermost;
    }
    if (text == "furthest" || text == "furthest_from_centroid") {
        return AnchorStrategy::FurthestFromCentroid;
    }
    throw ValidationError("unknown anchor strategy '" + std::string(text) + "'");
}

Instance generate_instance(std::size_t n, std::uint64_t seed, double bounds) {
    if (n == 0) {
        throw ValidationError("city count must be at least 1");
    }
    if (!(bounds > 0.0) || !std::isfinite(bounds)) {
        throw ValidationError("bounds must be a positive finite number");
    }

    Rng rng(seed);
    Instance instance;
    instance.id = "uniform_n" + std::to_string(n) + "_s" + std::to_string(seed);
    instance.cities.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = bounds * rng.uniform01();
        const double y = bounds * rng.uniform01();
        instance.cities.push_back({x, y});
    }
    return instance;
}

Point centroid(const Instance& instance) {
    validate_instance(instance);
    double sx = 0.0;
    double sy = 0.0;
    for (const Point& p : instance.cities) {
        sx += p.x;
        sy += p.y;
    }
    const auto n = static_cast<double>(instance.size());
    return {sx / n, sy / n};
}

std::size_t select_anchor(const Instance& instance, AnchorStrategy strategy, std::uint64_t seed) {
    validate_instance(instance);
    if (strategy == AnchorStrategy::Random) {
        Rng rng(seed);
        return rng.uniform_index(instance.size());
    }

    const Point center = centroid(instance);
    const bool nearest = strategy == AnchorStrategy::Centermost;
    std::size_t best = 0;
    double best_d2 = squared_distance(instance.cities[0], center);
    for (std::size_t i = 1; i < instance.size(); ++i) {
        const double d2 = squared_distance(instance.cities[i], center);
        if (nearest ? d2 < best_d2 : d2 > best_d2) {
            best = i;
            best_d2 = d2;
        }
    }
    return best;
}

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::optional<double> parse_double(std::string_view text) {
    text = trim(text);
    if (!text.empty() && text.front() == '+') {
        text.remove_prefix(1);
    }
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(value)) {
        return std::nullopt;
    }
    return value;
}

std::optional<std::size_t> parse_index(std::string_view text) {
    text = trim(text);
    std::size_t value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
        return std::nullopt;
    }
    return value;
}

std::vector<std::string_view> split_whitespace(std::string_view line) {
    std::vector<std::string_view> tokens;
    std::size_t pos = 0;
    while (pos < line.size()) {
        const auto start = line.find_first_not_of(" \t\r", pos);
        if (start == std::string_view::npos) {
            break;
        }
        auto end = line.find_first_of(" \t\r", start);
        if (end == std::string_view::npos) {
            end = line.size();
        }
        tokens.push_back(line.substr(start, end - start));
        pos = end;
    }
    return tokens;
}

Instance read_csv(std::istream& in, std::string id) {
    Instance instance;
    instance.id = std::move(id);
    std::string line;
    std::size_t line_no = 0;
    std::optional<std::size_t> blank_line;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string_view body = trim(line);
        if (body.empty()) {
            blank_line = blank_line.value_or(line_no);
            continue;
        }
        if (blank_line) {
            throw ParseError(*blank_line, "blank line inside CSV instance");
        }
        const auto comma = body.find(',');
        if (comma == std::string_view::npos) {
            throw ParseError(line_no, "expected 'x,y'");
        }
        const auto x = parse_double(body.substr(0, comma));
        const auto y = parse_double(body.substr(comma + 1));
        if (!x || !y) {
            throw ParseError(line_no, "non-numeric coordinate");
        }
        instance.cities.push_back({*x, *y});
    }
    if (instance.cities.empty()) {
        throw ParseError("CSV instance has no cities");
    }
    return instance;
}

Instance read_tsplib(std::istream& in, std::string id) {
    std::optional<std::size_t> dimension;
    std::optional<std::string> name;
    bool have_weight_type = false;
    bool in_coords = false;
    std::vector<std::optional<Point>> coords;

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string_view body = trim(line);
        if (body.empty()) {
            continue;
        }
        if (body == "EOF") {
            break;
        }

        if (in_coords) {
            const auto tokens = split_whitespace(body);
            if (tokens.size() != 3) {
                throw ParseError(line_no, "expected '<index> <x> <y>'");
            }
            const auto index = parse_index(tokens[0]);
            if (!index || *index < 1 || *index > coords.size()) {
                throw ParseError(line_no, "node index out of range 1.." + std::to_string(coords.size()));
            }
            const auto x = parse_double(tokens[1]);
            const auto y = parse_double(tokens[2]);
            if (!x || !y) {
                throw ParseError(line_no, "non-numeric coordinate");
            }
            auto& slot = coords[*index - 1];
            if (slot) {
                throw ParseError(line_no, "duplicate node index " + std::to_string(*index));
            }
            slot = Point{*x, *y};
            continue;
        }

        if (body == "NODE_COORD_SECTION") {
            if (!dimension) {
                throw ParseError(line_no, "NODE_COORD_SECTION before DIMENSION");
            }
            if (!have_weight_type) {
                throw ParseError(line_no, "missing EDGE_WEIGHT_TYPE");
            }
            coords.assign(*dimension, std::nullopt);
            in_coords = true;
            continue;
        }

        const auto colon = body.find(':');
        if (colon == std::string_view::npos) {
            throw ParseError(line_no, "malformed header line");
        }
        const std::string_view key = trim(body.substr(0, colon));
        const std::string_view value = trim(body.substr(colon + 1));
        if (key == "NAME") {
            name = std::string(value);
        } else if (key == "COMMENT") {
            // ignored
        } else if (key == "TYPE") {
            if (value != "TSP") {
                throw UnsupportedFormatError("unsupported TSPLIB TYPE '" + std::string(value) + "'");
            }
        } else if (key == "DIMENSION") {
            const auto dim = parse_index(value);
            if (!dim || *dim == 0) {
                throw ParseError(line_no, "DIMENSION must be a positive integer");
            }
            dimension = *dim;
        } else if (key == "EDGE_WEIGHT_TYPE") {
            if (value != "EUC_2D") {
                throw UnsupportedFormatError("unsupported EDGE_WEIGHT_TYPE '" + std::string(value) + "'");
            }
            have_weight_type = true;
        } else {
            throw ParseError(line_no, "unknown header key '" + std::string(key) + "'");
        }
    }

    if (!in_coords) {
        throw ParseError(line_no, "missing NODE_COORD_SECTION");
    }
    Instance instance;
    instance.id = !id.empty() ? std::move(id) : name.value_or("");
    instance.cities.reserve(coords.size());
    for (std::size_t i = 0; i < coords.size(); ++i) {
        if (!coords[i]) {
            throw ParseError(line_no, "missing coordinates for node " + std::to_string(i + 1));
        }
        instance.cities.push_back(*coords[i]);
    }
    return instance;
}

} // namespace

Instance read_instance(std::istream& in, InstanceFormat format, std::string id) {
    Instance instance = format == InstanceFormat::Csv ? read_csv(in, std::move(id))
                                                      : read_tsplib(in, std::move(id));
    validate_instance(instance);
    return instance;
}

void write_instance(std::ostream& out, const Instance& instance, InstanceFormat format) {
    validate_instance(instance);
    if (format == InstanceFormat::Csv) {
        for (const Point& p : instance.cities) {
            out << format_double(p.x) << ',' << format_double(p.y) << '\n';
        }
        return;
    }
    out << "NAME : " << (instance.id.empty() ? "unnamed" : instance.id) << '\n'
        << "TYPE : TSP\n"
        << "DIMENSION : " << instance.size() << '\n'
        << "EDGE_WEIGHT_TYPE : EUC_2D\n"
        << "NODE_COORD_SECTION\n";
    for (std::size_t i = 0; i < instance.size(); ++i) {
        out << (i + 1) << ' ' << format_double(instance.cities[i].x) << ' '
            << format_double(instance.cities[i].y) << '\n';
    }
    out << "EOF\n";
}

InstanceFormat format_for_path(const std::filesystem::path& path) {
    return path.extension() == ".tsp" ? InstanceFormat::TsplibEuc2d : InstanceFormat::Csv;
}

Instance load_instance(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ValidationError("cannot open instance file '" + path.string() + "'");
    }
    return read_instance(in, format_for_path(path), path.stem().string());
}

} // namespace somtsp
