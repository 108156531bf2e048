#pragma once

#include <fstream>
#include <sstream>
#include <string>

inline std::string golden_path(const std::string& name) { return std::string(GCDH_GOLDEN_DIR) + "/" + name; }

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}
