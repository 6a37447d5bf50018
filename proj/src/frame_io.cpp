#include "mrpca/frame_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "mrpca/errors.hpp"

namespace fs = std::filesystem;

namespace mrpca {

namespace {

// Skips PGM whitespace and '#' comment lines, then reads one nonnegative
// integer token.
int read_pgm_int(std::istream& in, const std::string& path) {
    int ch;
    while ((ch = in.get()) != EOF) {
        if (ch == '#') {
            while ((ch = in.get()) != EOF && ch != '\n') {
            }
        } else if (!std::isspace(ch)) {
            break;
        }
    }
    if (ch == EOF) throw IoError("truncated PGM header: " + path);
    int value = 0;
    bool any = false;
    while (ch != EOF && std::isdigit(ch)) {
        value = value * 10 + (ch - '0');
        any = true;
        ch = in.get();
    }
    if (!any) throw IoError("malformed PGM header token: " + path);
    return value;
}

}  // namespace

Mat load_pgm(const std::string& path, int* rows, int* cols) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open PGM file: " + path);

    char magic[2] = {0, 0};
    in.read(magic, 2);
    if (!in || magic[0] != 'P' || magic[1] != '5')
        throw IoError("not a binary PGM (P5) file: " + path);

    const int width = read_pgm_int(in, path);
    const int height = read_pgm_int(in, path);
    const int maxval = read_pgm_int(in, path);
    if (width <= 0 || height <= 0) throw IoError("bad PGM dimensions: " + path);
    if (maxval != 255)
        throw IoError("unsupported PGM pixel depth (want maxval 255): " + path);

    std::vector<unsigned char> raster(static_cast<std::size_t>(width) * height);
    in.read(reinterpret_cast<char*>(raster.data()), static_cast<std::streamsize>(raster.size()));
    if (!in) throw IoError("truncated PGM raster: " + path);

    Mat frame(height, width);
    for (int i = 0; i < height; ++i)
        for (int j = 0; j < width; ++j)
            frame(i, j) = raster[static_cast<std::size_t>(i) * width + j] / 255.0;
    if (rows) *rows = height;
    if (cols) *cols = width;
    return frame;
}

void save_pgm(const std::string& path, const Mat& frame) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open PGM file for writing: " + path);
    const int height = static_cast<int>(frame.rows());
    const int width = static_cast<int>(frame.cols());
    out << "P5\n" << width << " " << height << "\n255\n";
    std::vector<unsigned char> raster(static_cast<std::size_t>(width) * height);
    for (int i = 0; i < height; ++i)
        for (int j = 0; j < width; ++j) {
            const double v = std::clamp(frame(i, j), 0.0, 1.0);
            raster[static_cast<std::size_t>(i) * width + j] =
                static_cast<unsigned char>(std::lround(v * 255.0));
        }
    out.write(reinterpret_cast<const char*>(raster.data()),
              static_cast<std::streamsize>(raster.size()));
    if (!out) throw IoError("failed writing PGM raster: " + path);
}

Volume load_pgm_dir(const std::string& dir) {
    if (!fs::is_directory(dir)) throw IoError("not a directory: " + dir);
    std::vector<std::string> paths;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".pgm")
            paths.push_back(entry.path().string());
    }
    if (paths.size() < 2) throw IoError("need at least 2 PGM frames in: " + dir);
    std::sort(paths.begin(), paths.end());

    int m = 0, n = 0;
    Mat data;
    for (std::size_t t = 0; t < paths.size(); ++t) {
        int fm = 0, fn = 0;
        const Mat frame = load_pgm(paths[t], &fm, &fn);
        if (t == 0) {
            m = fm;
            n = fn;
            data.resize(static_cast<Eigen::Index>(m) * n, static_cast<Eigen::Index>(paths.size()));
        } else if (fm != m || fn != n) {
            throw IoError("frame dimensions differ across sequence: " + paths[t]);
        }
        // Column-major vectorization: pixel (i,j) -> i + j*m.
        data.col(static_cast<Eigen::Index>(t)) =
            Eigen::Map<const Eigen::VectorXd>(frame.data(), frame.size());
    }
    return Volume({m, n, static_cast<int>(paths.size())}, std::move(data));
}

void save_pgm_frames(const Volume& v, const std::string& dir, const std::string& prefix) {
    fs::create_directories(dir);
    const Dims& d = v.dims();
    char name[64];
    for (int t = 0; t < d.k; ++t) {
        std::snprintf(name, sizeof(name), "%s_%04d.pgm", prefix.c_str(), t);
        const Eigen::Map<const Mat> frame(v.matrix().col(t).data(), d.m, d.n);
        save_pgm((fs::path(dir) / name).string(), frame);
    }
    KvPairs kv;
    kv.emplace_back("m", std::to_string(d.m));
    kv.emplace_back("n", std::to_string(d.n));
    kv.emplace_back("k", std::to_string(d.k));
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v.matrix().minCoeff());
    kv.emplace_back("min", buf);
    std::snprintf(buf, sizeof(buf), "%.17g", v.matrix().maxCoeff());
    kv.emplace_back("max", buf);
    write_kv((fs::path(dir) / (prefix + "_frames.txt")).string(), kv);
}

Volume load_raw(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open raw volume: " + path);
    std::uint64_t hdr[3];
    in.read(reinterpret_cast<char*>(hdr), sizeof(hdr));
    if (!in) throw IoError("truncated raw volume header: " + path);
    if (hdr[0] == 0 || hdr[1] == 0 || hdr[2] == 0 || hdr[0] > (1u << 20) ||
        hdr[1] > (1u << 20) || hdr[2] > (1u << 20))
        throw IoError("implausible raw volume dims: " + path);
    const Dims d{static_cast<int>(hdr[0]), static_cast<int>(hdr[1]), static_cast<int>(hdr[2])};
    Mat data(d.pixels(), d.k);
    in.read(reinterpret_cast<char*>(data.data()),
            static_cast<std::streamsize>(sizeof(double) * static_cast<std::size_t>(d.voxels())));
    if (!in) throw IoError("truncated raw volume data: " + path);
    return Volume(d, std::move(data));
}

void save_raw(const Volume& v, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open raw volume for writing: " + path);
    const std::uint64_t hdr[3] = {static_cast<std::uint64_t>(v.dims().m),
                                  static_cast<std::uint64_t>(v.dims().n),
                                  static_cast<std::uint64_t>(v.dims().k)};
    out.write(reinterpret_cast<const char*>(hdr), sizeof(hdr));
    out.write(reinterpret_cast<const char*>(v.matrix().data()),
              static_cast<std::streamsize>(sizeof(double) *
                                           static_cast<std::size_t>(v.dims().voxels())));
    if (!out) throw IoError("failed writing raw volume: " + path);
}

Volume load_volume_any(const std::string& path) {
    if (fs::is_directory(path)) return load_pgm_dir(path);
    return load_raw(path);
}

void write_kv(const std::string& path, const KvPairs& kv) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open file for writing: " + path);
    for (const auto& [key, value] : kv) out << key << "=" << value << "\n";
    if (!out) throw IoError("failed writing: " + path);
}

KvPairs read_kv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open file: " + path);
    KvPairs kv;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::string trimmed = line;
        trimmed.erase(0, trimmed.find_first_not_of(" \t"));
        if (trimmed.empty() || trimmed[0] == '#') continue;
        const auto eq = trimmed.find('=');
        if (eq == std::string::npos)
            throw ParseError("expected key=value in " + path, line_no);
        std::string key = trimmed.substr(0, eq);
        std::string value = trimmed.substr(eq + 1);
        key.erase(key.find_last_not_of(" \t") + 1);
        value.erase(0, value.find_first_not_of(" \t"));
        value.erase(value.find_last_not_of(" \t") + 1);
        kv.emplace_back(std::move(key), std::move(value));
    }
    return kv;
}

}  // namespace mrpca
