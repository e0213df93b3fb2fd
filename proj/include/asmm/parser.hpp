#ifndef ASMM_PARSER_HPP_
#define ASMM_PARSER_HPP_

#include <stdexcept>
#include <string>

#include "asmm/lang.hpp"

namespace asmm {

struct ParseError : std::runtime_error {
  ParseError(const std::string& msg, int line, int col)
      : std::runtime_error("parse error at " + std::to_string(line) + ":" +
                           std::to_string(col) + ": " + msg),
        line(line),
        col(col) {}
  int line;
  int col;
};

/// Parses the litmus text format:
///
///   test MP-NT
///   thread 0:
///     asm movnt [x] 1;
///     W[rel] [y] 1
///   thread 1:
///     a := R[acq] [y];
///     b := R[rlx] [x]
///   expect rc11ext allowed: a=1 /\ b=0
///
/// Locations are identifiers bound to distinct naturals in order of first
/// appearance. Mode legality is enforced per command. Throws ParseError.
LitmusTest parse_litmus(const std::string& text);

}  // namespace asmm

#endif  // ASMM_PARSER_HPP_
