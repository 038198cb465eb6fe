#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "somtsp/instance.hpp"
#include "somtsp/som_solver.hpp"

namespace somtsp {

inline constexpr double kSvgViewport = 800.0;
inline constexpr double kSvgMargin = 20.0;

/// Maps plane coordinates into the square viewport, preserving aspect ratio.
class ViewportTransform {
  public:
    ViewportTransform(const Instance& instance, const std::vector<RingSnapshot>& snapshots);

    Point apply(Point p) const noexcept;
    double scale() const noexcept { return scale_; }

  private:
    double min_x_ = 0.0;
    double min_y_ = 0.0;
    double scale_ = 1.0;
    double offset_x_ = 0.0;
    double offset_y_ = 0.0;
};

/// One SVG 1.1 document: city dots, the ring as a closed polyline, a step caption.
std::string render_frame(const RingSnapshot& snapshot, const Instance& instance,
                         const ViewportTransform& transform);

/// Writes frame_<step>.svg per snapshot into `out_dir` and returns the paths.
std::vector<std::filesystem::path> render_frames(const std::vector<RingSnapshot>& snapshots,
                                                 const Instance& instance,
                                                 const std::filesystem::path& out_dir);

/// 0, 1%, 5%, 25% and 100% of `iterations`, deduplicated.
std::vector<std::uint64_t> default_snapshot_steps(std::uint64_t iterations);

} // namespace somtsp
