#include "cstar/pathspec.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <optional>
#include <set>
#include <sstream>

namespace cstar {

std::string format_error(const ParseError& e) {
  return "line " + std::to_string(e.line) + ", column " + std::to_string(e.column) + ": " + e.message;
}

namespace {

std::string join_errors(const std::vector<ParseError>& errors) {
  std::string s;
  for (const auto& e : errors) {
    if (!s.empty()) s += '\n';
    s += format_error(e);
  }
  return s;
}

struct Token {
  std::string text;
  int column;  // 1-based
};

// Whitespace split; a '(' group is kept together even if it contains blanks.
std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i >= line.size()) break;
    const std::size_t start = i;
    int depth = 0;
    std::string text;
    while (i < line.size()) {
      const char c = line[i];
      if (c == '(') ++depth;
      if (c == ')') --depth;
      if (std::isspace(static_cast<unsigned char>(c))) {
        if (depth <= 0) break;
      } else {
        text += c;
      }
      ++i;
    }
    out.push_back({text, static_cast<int>(start) + 1});
  }
  return out;
}

std::optional<double> to_double(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  if (s.empty()) return std::nullopt;
  double v = 0.0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

std::optional<int> to_int(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  if (s.empty()) return std::nullopt;
  int v = 0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size()) return std::nullopt;
  return v;
}

std::optional<std::array<double, 3>> to_triple(std::string_view s) {
  if (s.size() < 2 || s.front() != '(' || s.back() != ')') return std::nullopt;
  s = s.substr(1, s.size() - 2);
  std::array<double, 3> r{};
  for (int k = 0; k < 3; ++k) {
    const std::size_t comma = s.find(',');
    if ((k < 2) != (comma != std::string_view::npos)) return std::nullopt;
    const auto v = to_double(s.substr(0, k < 2 ? comma : s.size()));
    if (!v) return std::nullopt;
    r[k] = *v;
    if (k < 2) s.remove_prefix(comma + 1);
  }
  return r;
}

enum class ValueType { Real, Integer, Triple };

struct KeySpec {
  ValueType type;
  bool required;
};

const std::map<std::string, KeySpec>& keys_for(GeneratorKind k) {
  static const std::map<std::string, KeySpec> loop{{"theta", {ValueType::Real, true}},
                                                   {"phi0", {ValueType::Real, false}},
                                                   {"B", {ValueType::Real, true}},
                                                   {"alpha", {ValueType::Real, true}},
                                                   {"T", {ValueType::Real, true}},
                                                   {"steps", {ValueType::Integer, true}}};
  static const std::map<std::string, KeySpec> ramp{{"from", {ValueType::Real, true}},
                                                   {"to", {ValueType::Real, true}},
                                                   {"B", {ValueType::Triple, true}},
                                                   {"T", {ValueType::Real, true}},
                                                   {"steps", {ValueType::Integer, true}}};
  static const std::map<std::string, KeySpec> spiral{{"theta", {ValueType::Real, true}},
                                                     {"B", {ValueType::Real, true}},
                                                     {"alpha_from", {ValueType::Real, true}},
                                                     {"alpha_to", {ValueType::Real, true}},
                                                     {"turns", {ValueType::Integer, true}},
                                                     {"T", {ValueType::Real, true}},
                                                     {"steps", {ValueType::Integer, true}}};
  static const std::map<std::string, KeySpec> cnst{{"B", {ValueType::Triple, true}},
                                                   {"alpha", {ValueType::Real, true}},
                                                   {"T", {ValueType::Real, true}},
                                                   {"steps", {ValueType::Integer, true}}};
  switch (k) {
    case GeneratorKind::Loop: return loop;
    case GeneratorKind::Ramp: return ramp;
    case GeneratorKind::Spiral: return spiral;
    case GeneratorKind::Const: break;
  }
  return cnst;
}

struct Value {
  double real = 0.0;
  int integer = 0;
  std::array<double, 3> triple{};
  int column = 0;
};

std::optional<PathDescriptor> parse_line(std::string_view line, int lineno, std::vector<ParseError>& errors) {
  const auto tokens = tokenize(line);
  if (tokens.empty()) return std::nullopt;
  auto fail = [&](int col, std::string msg) { errors.push_back({lineno, col, std::move(msg)}); };

  PathDescriptor d;
  const std::string& head = tokens[0].text;
  std::size_t first = 1;
  if (head == "loop") {
    d.kind = GeneratorKind::Loop;
  } else if (head == "ramp") {
    d.kind = GeneratorKind::Ramp;
    if (tokens.size() < 2 || tokens[1].text != "alpha") {
      fail(tokens.size() < 2 ? static_cast<int>(line.size()) + 1 : tokens[1].column,
           "expected 'alpha' after 'ramp'");
      return std::nullopt;
    }
    first = 2;
  } else if (head == "spiral") {
    d.kind = GeneratorKind::Spiral;
  } else if (head == "const") {
    d.kind = GeneratorKind::Const;
  } else {
    fail(tokens[0].column, "unknown statement '" + head + "'");
    return std::nullopt;
  }

  const auto& spec = keys_for(d.kind);
  std::map<std::string, Value> values;
  std::set<std::string> seen;
  const std::size_t errors_before = errors.size();
  for (std::size_t i = first; i < tokens.size(); ++i) {
    const auto& tok = tokens[i];
    const std::size_t eq = tok.text.find('=');
    if (eq == std::string::npos || eq == 0) {
      fail(tok.column, "expected key=value, got '" + tok.text + "'");
      continue;
    }
    const std::string key = tok.text.substr(0, eq);
    const std::string_view val = std::string_view(tok.text).substr(eq + 1);
    const int vcol = tok.column + static_cast<int>(eq) + 1;
    const auto it = spec.find(key);
    if (it == spec.end()) {
      fail(tok.column, "unknown key '" + key + "' for " + head);
      continue;
    }
    if (!seen.insert(key).second) {
      fail(tok.column, "duplicate key '" + key + "'");
      continue;
    }
    Value v;
    v.column = vcol;
    switch (it->second.type) {
      case ValueType::Real: {
        const auto r = to_double(val);
        if (!r) {
          fail(vcol, "invalid number for '" + key + "'");
          continue;
        }
        v.real = *r;
        break;
      }
      case ValueType::Integer: {
        const auto r = to_int(val);
        if (!r) {
          fail(vcol, "invalid integer for '" + key + "'");
          continue;
        }
        v.integer = *r;
        break;
      }
      case ValueType::Triple: {
        const auto r = to_triple(val);
        if (!r) {
          fail(vcol, "expected (x,y,z) for '" + key + "'");
          continue;
        }
        v.triple = *r;
        break;
      }
    }
    values.emplace(key, v);
  }
  for (const auto& [key, ks] : spec)
    if (ks.required && !seen.count(key)) fail(tokens[0].column, "missing required key '" + key + "'");

  auto positive_alpha = [&](const char* key) {
    const auto it = values.find(key);
    if (it != values.end() && !(it->second.real > 0.0)) fail(it->second.column, "alpha must be > 0");
  };
  auto get = [&](const char* key, double fallback) {
    const auto it = values.find(key);
    return it == values.end() ? fallback : it->second.real;
  };

  switch (d.kind) {
    case GeneratorKind::Loop:
    case GeneratorKind::Const:
      positive_alpha("alpha");
      break;
    case GeneratorKind::Ramp:
      positive_alpha("from");
      positive_alpha("to");
      break;
    case GeneratorKind::Spiral:
      positive_alpha("alpha_from");
      positive_alpha("alpha_to");
      break;
  }
  if (const auto it = values.find("steps"); it != values.end() && it->second.integer < 2)
    fail(it->second.column, "steps must be >= 2");
  if (const auto it = values.find("T"); it != values.end() && !(it->second.real > 0.0))
    fail(it->second.column, "T must be > 0");
  if (const auto it = values.find("B"); it != values.end() && spec.at("B").type == ValueType::Real &&
                                        it->second.real < 0.0)
    fail(it->second.column, "B must be >= 0");
  if (const auto it = values.find("turns"); it != values.end() && it->second.integer < 1)
    fail(it->second.column, "turns must be >= 1");

  if (errors.size() != errors_before) return std::nullopt;

  d.T = get("T", 1.0);
  d.steps = values.at("steps").integer;
  switch (d.kind) {
    case GeneratorKind::Loop:
      d.theta = get("theta", 0.0);
      d.phi0 = get("phi0", 0.0);
      d.B = get("B", 0.0);
      d.alpha = get("alpha", 0.0);
      break;
    case GeneratorKind::Ramp:
      d.alpha_from = get("from", 0.0);
      d.alpha_to = get("to", 0.0);
      d.field = values.at("B").triple;
      break;
    case GeneratorKind::Spiral:
      d.theta = get("theta", 0.0);
      d.B = get("B", 0.0);
      d.alpha_from = get("alpha_from", 0.0);
      d.alpha_to = get("alpha_to", 0.0);
      d.turns = values.at("turns").integer;
      break;
    case GeneratorKind::Const:
      d.field = values.at("B").triple;
      d.alpha = get("alpha", 0.0);
      break;
  }
  return d;
}

std::string num(double v) {
  char buf[64];
  const auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, p);
}

std::string triple(const std::array<double, 3>& f) {
  return "(" + num(f[0]) + "," + num(f[1]) + "," + num(f[2]) + ")";
}

ParamPoint on_cone(double b, double theta, double phi, double alpha) {
  return {b * std::sin(theta) * std::cos(phi), b * std::sin(theta) * std::sin(phi), b * std::cos(theta), alpha};
}

}  // namespace

PathSpecError::PathSpecError(std::vector<ParseError> errors)
    : std::runtime_error(join_errors(errors)), errors_(std::move(errors)) {}

ParseResult parse_descriptors(std::string_view text) {
  ParseResult r;
  int lineno = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    if (auto d = parse_line(line, lineno, r.errors)) {
      r.descriptors.push_back(*d);
      r.lines.push_back(lineno);
    }
    if (end == text.size()) break;
    pos = end + 1;
  }
  return r;
}

std::vector<ParamPath> parse(std::string_view text) {
  auto r = parse_descriptors(text);
  if (!r.ok()) throw PathSpecError(std::move(r.errors));
  std::vector<ParamPath> paths;
  for (std::size_t i = 0; i < r.descriptors.size(); ++i) {
    try {
      paths.push_back(sample(r.descriptors[i]));
    } catch (const std::invalid_argument& e) {
      r.errors.push_back({r.lines[i], 1, e.what()});
    }
  }
  if (!r.errors.empty()) throw PathSpecError(std::move(r.errors));
  return paths;
}

std::string read_text_file(const std::string& filename) {
  std::ifstream in(filename, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open path file '" + filename + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ParamPath sample(const PathDescriptor& d) {
  if (d.steps < 2) throw std::invalid_argument("steps must be >= 2");
  if (!(d.T > 0.0)) throw std::invalid_argument("T must be > 0");
  const std::size_t n = static_cast<std::size_t>(d.steps);
  std::vector<double> times(n + 1);
  std::vector<ParamPoint> pts(n + 1);
  constexpr double two_pi = 2.0 * std::numbers::pi;
  for (std::size_t k = 0; k <= n; ++k) {
    const double f = static_cast<double>(k) / static_cast<double>(n);
    times[k] = k == n ? d.T : d.T * f;
    switch (d.kind) {
      case GeneratorKind::Loop:
        pts[k] = on_cone(d.B, d.theta, d.phi0 + two_pi * f, d.alpha);
        break;
      case GeneratorKind::Ramp:
        pts[k] = {d.field[0], d.field[1], d.field[2], (1.0 - f) * d.alpha_from + f * d.alpha_to};
        break;
      case GeneratorKind::Spiral:
        pts[k] = on_cone(d.B, d.theta, two_pi * d.turns * f, (1.0 - f) * d.alpha_from + f * d.alpha_to);
        break;
      case GeneratorKind::Const:
        pts[k] = {d.field[0], d.field[1], d.field[2], d.alpha};
        break;
    }
  }
  return ParamPath(std::move(times), std::move(pts), serialize(d));
}

std::string serialize(const PathDescriptor& d) {
  const std::string tail = " T=" + num(d.T) + " steps=" + std::to_string(d.steps);
  switch (d.kind) {
    case GeneratorKind::Loop:
      return "loop theta=" + num(d.theta) + " phi0=" + num(d.phi0) + " B=" + num(d.B) + " alpha=" + num(d.alpha) +
             tail;
    case GeneratorKind::Ramp:
      return "ramp alpha from=" + num(d.alpha_from) + " to=" + num(d.alpha_to) + " B=" + triple(d.field) + tail;
    case GeneratorKind::Spiral:
      return "spiral theta=" + num(d.theta) + " B=" + num(d.B) + " alpha_from=" + num(d.alpha_from) +
             " alpha_to=" + num(d.alpha_to) + " turns=" + std::to_string(d.turns) + tail;
    case GeneratorKind::Const:
      break;
  }
  return "const B=" + triple(d.field) + " alpha=" + num(d.alpha) + tail;
}

std::string serialize(const std::vector<PathDescriptor>& ds) {
  std::string s;
  for (const auto& d : ds) s += serialize(d) + "\n";
  return s;
}

}  // namespace cstar
