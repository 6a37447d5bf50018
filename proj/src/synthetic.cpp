#include "mrpca/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "mrpca/errors.hpp"
#include "mrpca/metrics.hpp"
#include "mrpca/prox.hpp"

namespace mrpca {

void SceneSpec::validate() const {
    dims.validate();
    if (bg_rank < 1 || bg_rank > std::min(dims.pixels(), dims.k))
        throw std::invalid_argument("bg_rank must lie in [1, min(mn,k)]");
    if (sp_density < 0 || sp_density > 1)
        throw std::invalid_argument("sp_density must lie in [0,1]");
    if (sp_magnitude < 0) throw std::invalid_argument("sp_magnitude must be nonnegative");
    for (const auto& sh : shapes) {
        if (sh.intensity < 0 || sh.intensity > 1)
            throw std::invalid_argument("shape intensity must lie in [0,1]");
        if (sh.kind == ShapeSpec::Kind::Rect) {
            if (sh.width <= 0 || sh.height <= 0)
                throw std::invalid_argument("rect shape needs positive width and height");
            if (sh.width > dims.n || sh.height > dims.m)
                throw std::invalid_argument("rect shape larger than frame");
        } else {
            if (sh.radius <= 0) throw std::invalid_argument("disk shape needs positive radius");
            if (2.0 * sh.radius > std::min(dims.m, dims.n))
                throw std::invalid_argument("disk shape larger than frame");
        }
    }
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(item);
    return out;
}

double to_double(const std::string& s, int line) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ParseError("expected a number, got '" + s + "'", line);
    }
}

int to_int(const std::string& s, int line) {
    const double v = to_double(s, line);
    if (v != std::floor(v)) throw ParseError("expected an integer, got '" + s + "'", line);
    return static_cast<int>(v);
}

ShapeSpec parse_shape(const std::string& value, int line) {
    const auto parts = split(value, ':');
    ShapeSpec sh;
    if (parts.empty()) throw ParseError("empty shape spec", line);
    if (parts[0] == "rect") {
        if (parts.size() != 8)
            throw ParseError("rect shape wants rect:x0:y0:vx:vy:width:height:intensity", line);
        sh.kind = ShapeSpec::Kind::Rect;
        sh.x0 = to_double(parts[1], line);
        sh.y0 = to_double(parts[2], line);
        sh.vx = to_double(parts[3], line);
        sh.vy = to_double(parts[4], line);
        sh.width = to_int(parts[5], line);
        sh.height = to_int(parts[6], line);
        sh.intensity = to_double(parts[7], line);
    } else if (parts[0] == "disk") {
        if (parts.size() != 7)
            throw ParseError("disk shape wants disk:x0:y0:vx:vy:radius:intensity", line);
        sh.kind = ShapeSpec::Kind::Disk;
        sh.x0 = to_double(parts[1], line);
        sh.y0 = to_double(parts[2], line);
        sh.vx = to_double(parts[3], line);
        sh.vy = to_double(parts[4], line);
        sh.radius = to_double(parts[5], line);
        sh.intensity = to_double(parts[6], line);
    } else {
        throw ParseError("unknown shape kind '" + parts[0] + "'", line);
    }
    return sh;
}

}  // namespace

SceneSpec SceneSpec::parse(const std::string& text) {
    SceneSpec spec;
    spec.shapes.clear();
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::string t = line;
        t.erase(0, t.find_first_not_of(" \t"));
        if (t.empty() || t[0] == '#') continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos) throw ParseError("expected key=value", line_no);
        std::string key = t.substr(0, eq);
        std::string value = t.substr(eq + 1);
        key.erase(key.find_last_not_of(" \t") + 1);
        value.erase(0, value.find_first_not_of(" \t"));
        value.erase(value.find_last_not_of(" \t") + 1);

        if (key == "m")
            spec.dims.m = to_int(value, line_no);
        else if (key == "n")
            spec.dims.n = to_int(value, line_no);
        else if (key == "k")
            spec.dims.k = to_int(value, line_no);
        else if (key == "bg_rank")
            spec.bg_rank = to_int(value, line_no);
        else if (key == "bg_base")
            spec.bg_base = to_double(value, line_no);
        else if (key == "bg_contrast")
            spec.bg_contrast = to_double(value, line_no);
        else if (key == "bg_flicker")
            spec.bg_flicker = to_double(value, line_no);
        else if (key == "bg_amp")
            spec.bg_amp = to_double(value, line_no);
        else if (key == "sp_density")
            spec.sp_density = to_double(value, line_no);
        else if (key == "sp_magnitude")
            spec.sp_magnitude = to_double(value, line_no);
        else if (key == "snr_db") {
            if (value == "none" || value == "inf")
                spec.snr_db.reset();
            else
                spec.snr_db = to_double(value, line_no);
        } else if (key == "seed")
            spec.seed = static_cast<std::uint64_t>(to_double(value, line_no));
        else if (key == "shape")
            spec.shapes.push_back(parse_shape(value, line_no));
        else
            throw ParseError("unknown scene key '" + key + "'", line_no);
    }
    spec.validate();
    return spec;
}

SceneSpec SceneSpec::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open scene spec: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

std::string SceneSpec::format() const {
    std::ostringstream out;
    out.precision(17);
    out << "m=" << dims.m << "\nn=" << dims.n << "\nk=" << dims.k << "\n";
    out << "bg_rank=" << bg_rank << "\nbg_base=" << bg_base << "\nbg_contrast=" << bg_contrast
        << "\nbg_flicker=" << bg_flicker << "\nbg_amp=" << bg_amp << "\n";
    for (const auto& sh : shapes) {
        if (sh.kind == ShapeSpec::Kind::Rect)
            out << "shape=rect:" << sh.x0 << ":" << sh.y0 << ":" << sh.vx << ":" << sh.vy << ":"
                << sh.width << ":" << sh.height << ":" << sh.intensity << "\n";
        else
            out << "shape=disk:" << sh.x0 << ":" << sh.y0 << ":" << sh.vx << ":" << sh.vy << ":"
                << sh.radius << ":" << sh.intensity << "\n";
    }
    out << "sp_density=" << sp_density << "\nsp_magnitude=" << sp_magnitude << "\n";
    if (snr_db) out << "snr_db=" << *snr_db << "\n";
    out << "seed=" << seed << "\n";
    return out.str();
}

namespace {

// Rank-limited smooth background: a base luminance component plus low-order
// sinusoidal components with seeded phases. Values are budgeted to stay
// inside [0,1] so the later clamp only ever acts on injected noise.
Mat make_background(const SceneSpec& spec, std::mt19937_64& rng) {
    const Dims& d = spec.dims;
    std::uniform_real_distribution<double> phase(0.0, 2.0 * std::acos(-1.0));
    const double pi = std::acos(-1.0);

    Mat bg = Mat::Zero(d.pixels(), d.k);

    // Component 1: spatial ramp around bg_base, slow temporal flicker.
    {
        const double ph = phase(rng);
        Eigen::VectorXd u(d.pixels());
        for (int j = 0; j < d.n; ++j)
            for (int i = 0; i < d.m; ++i)
                u(i + j * d.m) =
                    spec.bg_base +
                    spec.bg_contrast *
                        std::sin(2.0 * pi * (static_cast<double>(i) / d.m +
                                             0.7 * static_cast<double>(j) / d.n) +
                                 ph);
        Eigen::VectorXd v(d.k);
        for (int t = 0; t < d.k; ++t)
            v(t) = 1.0 + spec.bg_flicker * std::sin(2.0 * pi * t / d.k);
        bg.noalias() += u * v.transpose();
    }

    // Secondary components: higher-frequency patterns with their own
    // temporal modulation.
    for (int c = 1; c < spec.bg_rank; ++c) {
        const double ph_s = phase(rng);
        const double ph_t = phase(rng);
        Eigen::VectorXd u(d.pixels());
        for (int j = 0; j < d.n; ++j)
            for (int i = 0; i < d.m; ++i)
                u(i + j * d.m) =
                    spec.bg_amp *
                    std::sin(2.0 * pi * (c + 1) * static_cast<double>(i) / d.m + ph_s) *
                    std::cos(2.0 * pi * c * static_cast<double>(j) / d.n);
        Eigen::VectorXd v(d.k);
        for (int t = 0; t < d.k; ++t) v(t) = std::sin(2.0 * pi * (c + 1) * t / d.k + ph_t);
        bg.noalias() += u * v.transpose();
    }
    return bg;
}

void paint_shapes(const SceneSpec& spec, Mat& w, Mat& s_fg) {
    const Dims& d = spec.dims;
    for (const auto& sh : spec.shapes) {
        for (int t = 0; t < d.k; ++t) {
            const double cx = sh.x0 + sh.vx * t;
            const double cy = sh.y0 + sh.vy * t;
            if (sh.kind == ShapeSpec::Kind::Rect) {
                const int left = static_cast<int>(std::lround(cx));
                const int top = static_cast<int>(std::lround(cy));
                for (int j = std::max(0, left); j < std::min(d.n, left + sh.width); ++j)
                    for (int i = std::max(0, top); i < std::min(d.m, top + sh.height); ++i) {
                        w(i + j * d.m, t) = 1.0;
                        s_fg(i + j * d.m, t) = sh.intensity;
                    }
            } else {
                const double r2 = sh.radius * sh.radius;
                const int j_lo = std::max(0, static_cast<int>(std::floor(cx - sh.radius)));
                const int j_hi = std::min(d.n - 1, static_cast<int>(std::ceil(cx + sh.radius)));
                const int i_lo = std::max(0, static_cast<int>(std::floor(cy - sh.radius)));
                const int i_hi = std::min(d.m - 1, static_cast<int>(std::ceil(cy + sh.radius)));
                for (int j = j_lo; j <= j_hi; ++j)
                    for (int i = i_lo; i <= i_hi; ++i)
                        if ((j - cx) * (j - cx) + (i - cy) * (i - cy) <= r2) {
                            w(i + j * d.m, t) = 1.0;
                            s_fg(i + j * d.m, t) = sh.intensity;
                        }
            }
        }
    }
}

}  // namespace

Scene generate_scene(const SceneSpec& spec) {
    spec.validate();
    const Dims& d = spec.dims;
    std::mt19937_64 rng(spec.seed);

    Scene scene;
    scene.dims = d;
    scene.l_true = make_background(spec, rng);
    scene.w_true = Mat::Zero(d.pixels(), d.k);
    Mat s_fg = Mat::Zero(d.pixels(), d.k);
    paint_shapes(spec, scene.w_true, s_fg);

    // Salt-pepper perturbation restricted to the background region.
    Mat e_raw = Mat::Zero(d.pixels(), d.k);
    if (spec.sp_density > 0 && spec.sp_magnitude > 0) {
        std::uniform_real_distribution<double> coin(0.0, 1.0);
        for (Eigen::Index idx = 0; idx < e_raw.size(); ++idx) {
            if (scene.w_true(idx) != 0.0) continue;
            const double u = coin(rng);
            if (u < 0.5 * spec.sp_density)
                e_raw(idx) = spec.sp_magnitude;
            else if (u < spec.sp_density)
                e_raw(idx) = -spec.sp_magnitude;
        }
    }

    const Mat overlay = ((1.0 - scene.w_true.array()) * scene.l_true.array() +
                         scene.w_true.array() * s_fg.array())
                            .matrix();
    scene.x_clean = project_unit_interval(overlay + e_raw);
    // Effective perturbation after the clamp; equals e_raw when the
    // composite stays in range.
    scene.e_true = scene.x_clean - overlay;

    if (!spec.snr_db) {
        scene.x = scene.x_clean;
        return scene;
    }

    // Solve the noise scale so the realized post-clamp SNR hits the request.
    Mat noise(d.pixels(), d.k);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (Eigen::Index idx = 0; idx < noise.size(); ++idx) noise(idx) = gauss(rng);

    const double target = *spec.snr_db;
    const double signal_sq = scene.x_clean.squaredNorm();
    auto realized = [&](double s) {
        const Mat x = (scene.x_clean + s * noise).array().max(0.0).min(1.0);
        const double noise_sq = (x - scene.x_clean).squaredNorm();
        return 10.0 * std::log10(signal_sq / std::max(noise_sq, 1e-300));
    };

    double lo = 0.0, hi = 1.0;
    while (realized(hi) > target && hi < 64.0) hi *= 2.0;
    if (realized(hi) > target)
        throw std::invalid_argument("requested SNR unreachable (too low after clamping)");
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (realized(mid) > target)
            lo = mid;
        else
            hi = mid;
        if (std::abs(realized(mid) - target) < 0.01) break;
    }
    const double s = 0.5 * (lo + hi);
    scene.x = (scene.x_clean + s * noise).array().max(0.0).min(1.0);
    scene.snr_db = measure_snr_db(scene.x, scene.x_clean);
    return scene;
}

}  // namespace mrpca
