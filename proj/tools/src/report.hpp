#pragma once

#include <iosfwd>
#include <string>

#include "json.hpp"

namespace gibbscert::cli {

using Json = nlohmann::ordered_json;

/// Fixed-precision text form of a double; "nan" and "inf" spelled out.
std::string format_number(double v);

/// key: value lines; nested objects flatten to dotted keys, arrays of
/// objects become whitespace-aligned tables.
void render_text(const Json& doc, std::ostream& out);

void render_json(const Json& doc, std::ostream& out);

}  // namespace gibbscert::cli
