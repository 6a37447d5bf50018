#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "mrpca/volume.hpp"

namespace mrpca {

// One moving foreground shape. Positions are in pixels (x along columns,
// y along rows), velocities in pixels per frame; the support is clipped to
// the frame. Rectangles are anchored at their top-left corner, disks at
// their center.
struct ShapeSpec {
    enum class Kind { Rect, Disk };
    Kind kind = Kind::Rect;
    double x0 = 0.0, y0 = 0.0;
    double vx = 0.0, vy = 0.0;
    int width = 0, height = 0;  // rect
    double radius = 0.0;        // disk
    double intensity = 0.9;
};

// Scene description for the overlaying-model generator
// X = (1-W) o L + W o S + E + noise, clamped to [0,1].
struct SceneSpec {
    Dims dims{32, 32, 40};
    int bg_rank = 2;
    double bg_base = 0.5;      // mean background level
    double bg_contrast = 0.15; // spatial contrast of the main component
    double bg_flicker = 0.03;  // temporal modulation of the main component
    double bg_amp = 0.05;      // amplitude of secondary rank components
    std::vector<ShapeSpec> shapes;
    double sp_density = 0.0;    // salt-pepper perturbation density in [0,1]
    double sp_magnitude = 0.25; // salt-pepper magnitude
    std::optional<double> snr_db;  // additive Gaussian noise level; none = clean
    std::uint64_t seed = 1;

    void validate() const;

    // key=value (de)serialization; shapes use the repeatable key
    //   shape=rect:x0:y0:vx:vy:width:height:intensity
    //   shape=disk:x0:y0:vx:vy:radius:intensity
    static SceneSpec parse(const std::string& text);
    static SceneSpec parse_file(const std::string& path);
    std::string format() const;
};

// Generated scene with ground truth. Before noise injection the components
// satisfy the overlay identity exactly:
//   (1 - w_true) o (x_clean - l_true) = e_true,  w_true o (x_clean - s) = 0.
// e_true is the effective perturbation after the [0,1] clamp (equal to the
// raw salt-pepper field whenever the composite stays in range).
struct Scene {
    Dims dims;
    Mat x;        // observed volume (clean + noise, clamped)
    Mat x_clean;  // composite before noise
    Mat l_true;
    Mat w_true;  // binary
    Mat e_true;
    double snr_db = std::numeric_limits<double>::quiet_NaN();  // realized; NaN when clean
};

// Deterministic for a fixed spec (including seed). When snr_db is requested
// the noise scale is solved so that the realized post-clamp SNR matches the
// request within 0.01 dB.
Scene generate_scene(const SceneSpec& spec);

}  // namespace mrpca
