#pragma once

// Line-oriented path language. One statement per line, '#' starts a comment:
//
//   loop   theta=<rad> [phi0=<rad>] B=<val> alpha=<val> T=<val> steps=<int>
//   ramp   alpha from=<val> to=<val> B=(<x>,<y>,<z>) T=<val> steps=<int>
//   spiral theta=<rad> B=<val> alpha_from=<val> alpha_to=<val> turns=<int> T=<val> steps=<int>
//   const  B=(<x>,<y>,<z>) alpha=<val> T=<val> steps=<int>

#include <array>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cstar/path.hpp"

namespace cstar {

enum class GeneratorKind { Loop, Ramp, Spiral, Const };

struct PathDescriptor {
  GeneratorKind kind = GeneratorKind::Const;
  double theta = 0.0;
  double phi0 = 0.0;
  double B = 0.0;                       // loop, spiral
  std::array<double, 3> field{};        // ramp, const
  double alpha = 0.0;                   // loop, const
  double alpha_from = 0.0;              // ramp (from), spiral
  double alpha_to = 0.0;                // ramp (to), spiral
  int turns = 1;
  double T = 1.0;
  int steps = 2;

  bool operator==(const PathDescriptor&) const = default;
};

struct ParseError {
  int line = 0;
  int column = 0;
  std::string message;
};

std::string format_error(const ParseError& e);

struct ParseResult {
  std::vector<PathDescriptor> descriptors;
  std::vector<int> lines;  // source line of each descriptor
  std::vector<ParseError> errors;
  bool ok() const { return errors.empty(); }
};

class PathSpecError : public std::runtime_error {
 public:
  explicit PathSpecError(std::vector<ParseError> errors);
  const std::vector<ParseError>& errors() const { return errors_; }

 private:
  std::vector<ParseError> errors_;
};

/// Parses every line, collecting all diagnostics.
ParseResult parse_descriptors(std::string_view text);

/// Parses and samples; throws PathSpecError listing every problem.
std::vector<ParamPath> parse(std::string_view text);

/// Reads a file; throws std::runtime_error if it cannot be opened.
std::string read_text_file(const std::string& filename);

ParamPath sample(const PathDescriptor& d);

/// Canonical one-line form; doubles use the shortest round-tripping spelling.
std::string serialize(const PathDescriptor& d);
std::string serialize(const std::vector<PathDescriptor>& ds);

}  // namespace cstar
