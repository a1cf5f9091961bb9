#pragma once

#include "gdlog/parser.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace testutil {

inline std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

inline std::string corpus(const std::string& name) {
    return std::string(CORPUS_DIR) + "/" + name;
}

inline gdlog::Program load_program(const std::string& name) {
    gdlog::Program p = gdlog::parse_program(slurp(corpus(name)), name);
    auto diags = gdlog::validate_program(p);
    if (!diags.empty()) throw std::runtime_error(name + ": " + diags.front().message);
    return p;
}

inline gdlog::Instance load_facts(const std::string& name) {
    return gdlog::parse_facts(slurp(corpus(name)), name);
}

}  // namespace testutil
