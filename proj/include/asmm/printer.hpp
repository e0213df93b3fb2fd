#ifndef ASMM_PRINTER_HPP_
#define ASMM_PRINTER_HPP_

#include <map>
#include <string>

#include "asmm/lang.hpp"

namespace asmm {

/// Canonical pretty-printer for the litmus text format. parse ∘ print is
/// the identity on ASTs; print ∘ parse canonicalizes the text.
std::string print_litmus(const LitmusTest& t);

std::string print_program(const Program& p,
                          const std::map<std::string, Loc>& loc_names);

std::string print_cmd(const CmdPtr& c,
                      const std::map<Loc, std::string>& names, int indent);

std::string print_expr(const ExprPtr& e,
                       const std::map<Loc, std::string>& names);

std::string print_outcome(const OutcomePredicate& o,
                          const std::map<Loc, std::string>& names);

std::map<Loc, std::string> invert_loc_names(
    const std::map<std::string, Loc>& loc_names);

}  // namespace asmm

#endif  // ASMM_PRINTER_HPP_
