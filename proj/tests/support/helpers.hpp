#ifndef ASMM_TESTS_HELPERS_HPP_
#define ASMM_TESTS_HELPERS_HPP_

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "asmm/models.hpp"
#include "asmm/parser.hpp"

namespace asmm::testing {

/// All complete candidate executions of a program.
std::vector<CandidateExecution> all_candidates(
    const Program& p, const ValueDomain& values = {0, 1});

/// The candidate executions whose final registers match every (name, value)
/// pair, searching all threads for the register name.
std::vector<CandidateExecution> candidates_with_registers(
    const Program& p, const std::vector<std::pair<std::string, Value>>& regs,
    const ValueDomain& values = {0, 1});

bool cmd_equal(const CmdPtr& a, const CmdPtr& b);
bool program_equal(const Program& a, const Program& b);

/// Random loop-free programs (≤ max_threads threads, ≤ max_cmds top-level
/// commands each; at most three writes per location so candidate counts
/// stay small).
enum class ProgKind { PureRc11, PureAsm, Mixed };
Program random_program(std::mt19937& rng, ProgKind kind, int max_threads = 3,
                       int max_cmds = 3);

/// Random litmus test with canonical AST shape, for parser round-trips.
/// May contain control flow.
LitmusTest random_litmus(std::mt19937& rng);

}  // namespace asmm::testing

#endif  // ASMM_TESTS_HELPERS_HPP_
