#include "somtsp/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <sstream>

#include "somtsp/errors.hpp"
#include "somtsp/io.hpp"

namespace somtsp {

ViewportTransform::ViewportTransform(const Instance& instance, const std::vector<RingSnapshot>& snapshots) {
    double min_x = std::numeric_limits<double>::infinity();
    double min_y = min_x;
    double max_x = -min_x;
    double max_y = -min_x;
    auto extend = [&](Point p) {
        min_x = std::min(min_x, p.x);
        min_y = std::min(min_y, p.y);
        max_x = std::max(max_x, p.x);
        max_y = std::max(max_y, p.y);
    };
    for (Point p : instance.cities) {
        extend(p);
    }
    for (const RingSnapshot& snapshot : snapshots) {
        for (Point p : snapshot.positions) {
            extend(p);
        }
    }

    const double span = std::max(max_x - min_x, max_y - min_y);
    const double drawable = kSvgViewport - 2.0 * kSvgMargin;
    scale_ = span > 0.0 ? drawable / span : 1.0;
    min_x_ = min_x;
    min_y_ = min_y;
    // Center the shorter axis.
    offset_x_ = kSvgMargin + (drawable - (max_x - min_x) * scale_) / 2.0;
    offset_y_ = kSvgMargin + (drawable - (max_y - min_y) * scale_) / 2.0;
}

Point ViewportTransform::apply(Point p) const noexcept {
    // SVG y grows downward.
    return {offset_x_ + (p.x - min_x_) * scale_, kSvgViewport - (offset_y_ + (p.y - min_y_) * scale_)};
}

namespace {

std::string fixed(double value) {
    char buffer[32];
    std::snprintf(buffer, sizeof buffer, "%.3f", value);
    return buffer;
}

} // namespace

std::string render_frame(const RingSnapshot& snapshot, const Instance& instance,
                         const ViewportTransform& transform) {
    std::ostringstream svg;
    const std::string size = fixed(kSvgViewport);
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << size << "\" height=\""
        << size << "\" viewBox=\"0 0 " << size << ' ' << size << "\">\n"
        << "  <rect x=\"0\" y=\"0\" width=\"" << size << "\" height=\"" << size << "\" fill=\"white\"/>\n";

    if (!snapshot.positions.empty()) {
        svg << "  <polyline class=\"ring\" fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\" points=\"";
        for (Point p : snapshot.positions) {
            const Point q = transform.apply(p);
            svg << fixed(q.x) << ',' << fixed(q.y) << ' ';
        }
        const Point first = transform.apply(snapshot.positions.front());
        svg << fixed(first.x) << ',' << fixed(first.y) << "\"/>\n";
    }

    for (Point p : instance.cities) {
        const Point q = transform.apply(p);
        svg << "  <circle class=\"city\" cx=\"" << fixed(q.x) << "\" cy=\"" << fixed(q.y)
            << "\" r=\"4\" fill=\"#d62728\"/>\n";
    }

    svg << "  <text x=\"" << fixed(kSvgMargin) << "\" y=\"" << fixed(kSvgMargin)
        << "\" font-family=\"sans-serif\" font-size=\"16\">step " << snapshot.step << "</text>\n"
        << "</svg>\n";
    return svg.str();
}

std::vector<std::filesystem::path> render_frames(const std::vector<RingSnapshot>& snapshots,
                                                 const Instance& instance,
                                                 const std::filesystem::path& out_dir) {
    if (snapshots.empty()) {
        throw ValidationError("no snapshots to render");
    }
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) {
        throw std::runtime_error("cannot create '" + out_dir.string() + "': " + ec.message());
    }

    const ViewportTransform transform(instance, snapshots);
    std::vector<std::filesystem::path> written;
    for (const RingSnapshot& snapshot : snapshots) {
        char name[48];
        std::snprintf(name, sizeof name, "frame_%08llu.svg", static_cast<unsigned long long>(snapshot.step));
        const auto path = out_dir / name;
        write_file_atomic(path, render_frame(snapshot, instance, transform));
        written.push_back(path);
    }
    return written;
}

std::vector<std::uint64_t> default_snapshot_steps(std::uint64_t iterations) {
    std::vector<std::uint64_t> steps{0, iterations / 100, iterations / 20, iterations / 4, iterations};
    std::sort(steps.begin(), steps.end());
    steps.erase(std::unique(steps.begin(), steps.end()), steps.end());
    return steps;
}

} // namespace somtsp
