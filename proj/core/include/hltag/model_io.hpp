#pragma once

#include <filesystem>
#include <iosfwd>

#include "hltag/model.hpp"

namespace hltag {

inline constexpr int kModelFormatVersion = 1;

/// JSON container: format tag, version, dims, use_crf, vocabulary, domain
/// list and every parameter tensor as {name, rows, cols, data (column-major)}.
/// Doubles are written in shortest round-trip form, so save -> load -> save is
/// byte-identical.
void save_model(const TaggerModel& model, std::ostream& out);
void save_model(const TaggerModel& model, const std::filesystem::path& path);

/// Throws hltag::ParseError on malformed files, unsupported versions, or
/// tensors whose names or shapes disagree with the declared dims.
TaggerModel load_model(std::istream& in);
TaggerModel load_model(const std::filesystem::path& path);

}  // namespace hltag
