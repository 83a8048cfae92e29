#pragma once

// Text model files: either explicit function tables or a generator block.
// The grammar is documented in docs/model-file.md.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gwt/errors.hpp"
#include "gwt/refmodels.hpp"
#include "gwt/structure.hpp"

namespace gwt {

struct Diagnostic {
  std::size_t line = 0;  // 0 when the problem concerns the whole file
  std::size_t column = 0;
  std::string message;
};

/// Every problem found in one pass over a file.
class ParseError : public Error {
 public:
  ParseError(std::string source, std::vector<Diagnostic> diags);
  const std::vector<Diagnostic>& diagnostics() const { return diags_; }
  const std::string& source() const { return source_; }

 private:
  std::string source_;
  std::vector<Diagnostic> diags_;
};

struct ModelFile {
  std::optional<HeatParams> generator;
  ThermoModel model;
};

ModelFile parse_model(std::string_view text, const std::string& source = "<input>");
/// Reads a file ("-" for standard input).
ModelFile load_model(const std::string& path);

/// Explicit tables; parse_model(emit_model(m)).model == m.
std::string emit_model(const ThermoModel& m);
/// A generator block.
std::string emit_generator(const HeatParams& p);

}  // namespace gwt
