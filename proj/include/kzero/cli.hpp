#pragma once

// Command-line frontend. Every subcommand reads one JSON document (file,
// stdin, inline, or preset) and writes one JSON document. Exit status 0 on
// success, 1 on a domain error, 2 on a schema or usage error; errors are
// reported as {"error": {"kind", "message"}}.

#include "kzero/io.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace kzero::cli {

struct Outcome {
  int status = 0;
  std::string output;
};

/// args excludes the program name.
Outcome run(const std::vector<std::string>& args, std::istream& input);

/// Lossy aligned-text rendering of an output document.
std::string render_text(const io::Json& doc);

const std::vector<std::string>& subcommands();

}  // namespace kzero::cli
