#ifndef ASMM_CORPUS_HPP_
#define ASMM_CORPUS_HPP_

#include <optional>
#include <string>
#include <vector>

#include "asmm/lang.hpp"

namespace asmm {

struct CorpusEntry {
  std::string name;
  std::string note;  // what the test exercises
  std::string text;  // litmus source
  LitmusTest test;
  /// When set, `check-drf` is expected to report this data-race-freedom
  /// verdict for the test.
  std::optional<bool> drf;
};

/// The built-in litmus corpus with expected verdicts.
const std::vector<CorpusEntry>& corpus();

const CorpusEntry& corpus_entry(const std::string& name);

}  // namespace asmm

#endif  // ASMM_CORPUS_HPP_
