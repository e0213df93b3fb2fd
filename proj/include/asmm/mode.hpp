#ifndef ASMM_MODE_HPP_
#define ASMM_MODE_HPP_

#include <array>
#include <vector>

#include "asmm/event.hpp"

namespace asmm {

/// The nine access modes, for exhaustive sweeps.
constexpr std::array<Mode, 9> kAllModes = {
    Mode::na,  Mode::rlx, Mode::rel, Mode::acq, Mode::acqrel,
    Mode::sc,  Mode::nt,  Mode::sf,  Mode::tso};

/// m1 ⊑ m2 in the access-mode diagram: the reflexive-transitive closure of
/// the Hasse edges na→rlx, nt→rlx, rlx→rel, rlx→acq, rel→acqrel,
/// acq→acqrel, acqrel→sf, sf→sc, acqrel→tso. Consequently tso ⋢ sc,
/// sc ⋢ tso, and na, nt are incomparable.
bool mode_leq(Mode m1, Mode m2);

bool is_rc11_mode(Mode m);
bool is_asm_mode(Mode m);

/// Surface-mode legality per command kind.
bool legal_write_mode(Mode m);   // na, rlx, rel, sc
bool legal_read_mode(Mode m);    // na, rlx, acq, sc
bool legal_fence_mode(Mode m);   // acq, rel, acqrel, sc
bool legal_rmw_mode(Mode m);     // rlx, acq, rel, acqrel, sc

}  // namespace asmm

#endif  // ASMM_MODE_HPP_
