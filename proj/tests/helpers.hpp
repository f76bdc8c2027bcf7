#pragma once

#include <string>

#include "smg/io.hpp"

namespace testutil {

// Graph from the text format, without role marks.
inline smg::MixedGraph g(const std::string& text) { return smg::parse_graph(text).graph; }

inline std::string fixture(const std::string& name) { return std::string(SMG_FIXTURE_DIR) + "/" + name; }

}  // namespace testutil
