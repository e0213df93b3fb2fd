#ifndef ASMM_TESTS_SC_ORACLE_HPP_
#define ASMM_TESTS_SC_ORACLE_HPP_

#include <set>

#include "asmm/models.hpp"

namespace asmm::testing {

/// Independent brute-force oracle: directly executes the program over all
/// interleavings against a single shared memory (reads return the current
/// contents; RMWs succeed exactly when memory holds the expected value).
/// Returns the exact set of (final memory, final registers) outcomes.
/// Deliberately shares nothing with the execution-graph pipeline beyond
/// the AST and expression evaluation.
std::set<Behavior> sc_interleaving_behaviors(const Program& p,
                                             std::size_t step_bound = 100000);

}  // namespace asmm::testing

#endif  // ASMM_TESTS_SC_ORACLE_HPP_
