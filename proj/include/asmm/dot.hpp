#ifndef ASMM_DOT_HPP_
#define ASMM_DOT_HPP_

#include <string>

#include "asmm/mixed.hpp"
#include "asmm/models.hpp"

namespace asmm {

/// Graphviz rendering of a candidate execution. Fixed palette: po black,
/// rf green, mo orange, rb red dashed, ppo_asm blue.
std::string execution_to_dot(const CandidateExecution& x, ModelId model,
                             const std::string& name);

/// Mixed graphs render nodes as source/target "dominoes".
std::string mixed_to_dot(const MixedGraph& m, const std::string& name);

}  // namespace asmm

#endif  // ASMM_DOT_HPP_
