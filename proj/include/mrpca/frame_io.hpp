#pragma once

#include <string>
#include <utility>
#include <vector>

#include "mrpca/volume.hpp"

namespace mrpca {

// Native frame format is binary PGM (P5, 8-bit, maxval 255). A volume saved
// as frames becomes <prefix>_0000.pgm ... plus a sidecar <prefix>_frames.txt
// manifest with dims and value range. Raw volumes are a 3 x uint64
// little-endian dims header (m, n, k) followed by the float64 buffer in
// storage order (row index fastest, then column, then frame).

// Single frame, values scaled from [0,255] bytes to [0,1].
Mat load_pgm(const std::string& path, int* rows, int* cols);
void save_pgm(const std::string& path, const Mat& frame_rows_by_cols);

// Directory of *.pgm frames, lexicographic order; requires k >= 2 and
// identical frame dimensions.
Volume load_pgm_dir(const std::string& dir);
void save_pgm_frames(const Volume& v, const std::string& dir, const std::string& prefix);

Volume load_raw(const std::string& path);
void save_raw(const Volume& v, const std::string& path);

// Loads either a .raw volume file or a directory of PGM frames.
Volume load_volume_any(const std::string& path);

// Plain key=value files (manifests, reports). Order-preserving writer.
using KvPairs = std::vector<std::pair<std::string, std::string>>;
void write_kv(const std::string& path, const KvPairs& kv);
KvPairs read_kv(const std::string& path);

}  // namespace mrpca
