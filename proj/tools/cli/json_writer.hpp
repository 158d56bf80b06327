#pragma once

#include "json.hpp"
#include <string>

namespace fraclyap::cli {

using Json = nlohmann::ordered_json;

// Two-space indented JSON with insertion-ordered keys and every float
// printed with 17 significant digits, so identical inputs give identical
// bytes and every double round-trips.
std::string dump_json(const Json& value);

std::string format_double(double x);

}  // namespace fraclyap::cli
