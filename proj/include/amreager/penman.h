#ifndef AMREAGER_PENMAN_H_
#define AMREAGER_PENMAN_H_

#include <string>

#include "amreager/amr_graph.h"

namespace amreager {

class PenmanError : public AmrError {
 public:
  PenmanError(const std::string &message, int line, int column);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

// Parses one parenthesized annotation. Variable references may point
// forward; a bare symbol shaped like a variable that is never defined is an
// error, any other bare symbol is a constant. Alignment markers such as
// "~e.3" are stripped.
AmrGraph ParsePenman(const std::string &text);

struct PenmanOptions {
  bool pretty = false;       // one relation per line
  int indent = 4;            // spaces per depth level when pretty
  bool keep_variables = true;  // reuse node variables when unique
};

// Depth-first traversal from top, children in edge-insertion order. Nodes
// reachable only against edge direction are written with inverted roles.
std::string SerializePenman(const AmrGraph &g, const PenmanOptions &options = {});

// Serialization with variables renamed v0, v1, ... in discovery order.
std::string CanonicalPenman(const AmrGraph &g);

// ":ARG0" <-> ":ARG0-of".
std::string InvertRole(const std::string &label);
bool IsInverseRole(const std::string &label);

}  // namespace amreager

#endif  // AMREAGER_PENMAN_H_
