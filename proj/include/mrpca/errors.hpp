#pragma once

#include <stdexcept>
#include <string>

namespace mrpca {

// File or directory level failure (missing file, short read, bad magic).
struct IoError : std::runtime_error {
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed config / scene spec text. `line` is 1-based, 0 when unknown.
struct ParseError : std::runtime_error {
    ParseError(const std::string& what, int line_no = 0)
        : std::runtime_error(line_no > 0 ? what + " (line " + std::to_string(line_no) + ")" : what),
          line(line_no) {}
    int line;
};

}  // namespace mrpca
