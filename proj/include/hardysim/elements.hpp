#pragma once

#include <string>
#include <vector>

#include "hardysim/fock.hpp"

namespace hardysim {

// Beam splitter with transmission amplitude t in [0, 1]; the reflection
// amplitude r = sqrt(1 - t^2) is implied.  Creation-operator convention,
// fixed for the whole library:
//
//     a+ -> t a+ + i r b+,    b+ -> i r a+ + t b+
//
// with a = port_a, b = port_b.  Reflection carries phase i on both cross
// terms.
struct BeamSplitterSpec {
    double t = 1.0;
    std::string port_a;
    std::string port_b;
};

struct PhaseShiftSpec {
    double theta = 0.0;
    std::string port;
};

// Mirror = phase i per photon (theta = pi/2), applied exactly.
struct MirrorSpec {
    std::string port;
};

// Applies the beam splitter per basis term by binomial expansion with exact
// factorial-ratio coefficients.  The two port cutoffs are both raised to
// cutoff_a + cutoff_b before application, so no occupation can overflow and
// the map is exactly unitary.
PureState apply_beam_splitter(const PureState& s, const BeamSplitterSpec& spec);

// Multiplies each term by e^{i theta n}, n the occupation of `port`.
PureState apply_phase(const PureState& s, const PhaseShiftSpec& spec);

// Multiplies each term by i^n, n the occupation of `port`.
PureState apply_mirror(const PureState& s, const MirrorSpec& spec);

// Independent dense verification oracle: the full two-mode unitary on the
// (cutoff+1)^2 occupancy-capped space, computed as the power-series
// exponential of i theta (a+b + a b+) with theta = arccos(t); evaluated by
// scaling and squaring, each Taylor series truncated when the next term's
// norm falls below 1e-16.  Row-major over index m*(cutoff+1)+n.
//
// Note the capped generator agrees with the physical element exactly on the
// total-photon <= cutoff sectors; higher sectors would spill past the cap.
std::vector<Complex> bs_unitary_oracle(int cutoff, double t);

}  // namespace hardysim
