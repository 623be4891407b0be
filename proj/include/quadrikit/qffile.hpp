#pragma once

// Quadratic-form input files (.qf):
//
//   # comment
//   base_vars = [a, b, c]
//   fiber_rank = 4
//   q = "x1*x2 + a*x3^2 + b*x3*x4 + c*x4^2"
//   order = grevlex        (optional: grevlex | lex)
//
// Fiber variables are x1..x<fiber_rank>.

#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"
#include "quadform.hpp"

namespace quadrikit {

namespace detail {

inline std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos)
    return "";
  auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

} // namespace detail

inline QuadraticForm parse_qf(std::string_view text, const std::string &origin = "<input>") {
  std::optional<std::vector<std::string>> vars;
  std::optional<std::size_t> rank;
  std::optional<std::string> expr;
  MonomialOrder order = MonomialOrder::grevlex;
  std::istringstream in{std::string(text)};
  std::string line;
  for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
    auto where = [&] { return origin + ":" + std::to_string(lineno) + ": "; };
    // Strip comments outside quotes.
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
      if (line[i] == '"')
        quoted = !quoted;
      if (line[i] == '#' && !quoted) {
        line.resize(i);
        break;
      }
    }
    std::string t = detail::trim(line);
    if (t.empty())
      continue;
    auto eq = t.find('=');
    if (eq == std::string::npos)
      throw ParseError(where() + "expected 'key = value'");
    std::string key = detail::trim(std::string_view(t).substr(0, eq));
    std::string value = detail::trim(std::string_view(t).substr(eq + 1));
    if (key == "base_vars") {
      if (value.size() < 2 || value.front() != '[' || value.back() != ']')
        throw ParseError(where() + "base_vars must be a bracketed list");
      std::vector<std::string> names;
      std::string inner = value.substr(1, value.size() - 2);
      std::istringstream parts(inner);
      std::string part;
      while (std::getline(parts, part, ',')) {
        std::string name = detail::trim(part);
        if (name.empty()) {
          if (detail::trim(inner).empty())
            break;
          throw ParseError(where() + "empty name in base_vars");
        }
        bool ok = std::isalpha(static_cast<unsigned char>(name[0])) || name[0] == '_';
        for (char c : name)
          ok = ok && (std::isalnum(static_cast<unsigned char>(c)) || c == '_');
        if (!ok)
          throw ParseError(where() + "invalid variable name '" + name + "'");
        names.push_back(name);
      }
      vars = names;
    } else if (key == "fiber_rank") {
      if (value.empty() || value.find_first_not_of("0123456789") != std::string::npos)
        throw ParseError(where() + "fiber_rank must be a positive integer");
      rank = std::stoul(value);
      if (*rank == 0 || *rank > 16)
        throw ParseError(where() + "fiber_rank must be between 1 and 16");
    } else if (key == "q") {
      if (value.size() < 2 || value.front() != '"' || value.back() != '"')
        throw ParseError(where() + "q must be a quoted expression");
      expr = value.substr(1, value.size() - 2);
    } else if (key == "order") {
      if (value == "grevlex")
        order = MonomialOrder::grevlex;
      else if (value == "lex")
        order = MonomialOrder::lex;
      else
        throw ParseError(where() + "order must be grevlex or lex");
    } else {
      throw ParseError(where() + "unknown key '" + key + "'");
    }
  }
  if (!vars)
    throw ParseError(origin + ": missing base_vars");
  if (!rank)
    throw ParseError(origin + ": missing fiber_rank");
  if (!expr)
    throw ParseError(origin + ": missing q");
  RingPtr base;
  try {
    base = make_ring(*vars, order);
  } catch (const PreconditionError &e) {
    throw ParseError(origin + ": " + e.what());
  }
  return QuadraticForm::parse(*expr, base, *rank);
}

inline QuadraticForm read_qf(const std::string &path) {
  std::ifstream f(path);
  if (!f)
    throw ParseError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_qf(ss.str(), path);
}

} // namespace quadrikit
