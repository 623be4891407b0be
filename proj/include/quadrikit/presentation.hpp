#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "groebner.hpp"
#include "poly.hpp"

namespace quadrikit {

// A subscheme given by a variable list and ideal generators.
struct SchemePresentation {
  RingPtr ring;
  std::vector<Poly> generators;
  std::string label;

  Ideal ideal() const { return Ideal(ring, generators); }
  bool empty() const { return generators.empty(); }

  // "Ideal over Q[a,b,c,x3,x4]: g1; g2"
  std::string str() const {
    std::ostringstream os;
    os << "Ideal over " << ring->str() << ":";
    if (generators.empty())
      os << " (no generators)";
    for (std::size_t i = 0; i < generators.size(); ++i)
      os << (i ? "; " : " ") << generators[i].str();
    return os.str();
  }

  // str() preceded by a label and a variables preamble.
  std::string serialize() const {
    std::ostringstream os;
    if (!label.empty())
      os << "# " << label << "\n";
    os << "variables: ";
    const auto &v = ring->variables();
    for (std::size_t i = 0; i < v.size(); ++i)
      os << (i ? ", " : "") << v[i];
    os << "\n" << str() << "\n";
    return os.str();
  }
};

} // namespace quadrikit
