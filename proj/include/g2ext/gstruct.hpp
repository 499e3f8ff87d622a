#pragma once

// SU(3)- and G2-structures: canonical forms, classification predicates,
// induced metrics and almost complex structure, the twisted-extension
// builders and their reductions.
//
// Sign conventions, fixed once and verified computationally against every
// worked example:
//   psi_minus   = e^{136}+e^{145}+e^{235}-e^{246}
//   phi_closed  = omega ^ e^7 + psi_plus
//   phi_coclosed= omega ^ e^7 - psi_minus,  *phi_coclosed = 1/2 omega^2 + psi_plus ^ e^7

#include <utility>

#include "g2ext/liealg.hpp"

namespace g2ext {

// Compatible triple on a 6-dimensional space.  Construction verifies
// omega ^ psi+- = 0 and psi+ ^ psi- = (2/3) omega^3.
struct SU3Structure {
    KForm omega;
    KForm psi_plus;
    KForm psi_minus;

    static SU3Structure make(KForm omega, KForm psi_plus, KForm psi_minus);
};

SU3Structure canonical_su3();

struct G2Structure {
    KForm phi;       // degree 3, dim 7
    KForm star_phi;  // cached hodge_star(phi) in the adapted coframe

    static G2Structure from_phi(KForm phi);
};

G2Structure canonical_g2_closed_candidate();    // omega ^ e^7 + psi_plus
G2Structure canonical_g2_coclosed_candidate();  // omega ^ e^7 - psi_minus

struct MetricMatrix {
    int dim;
    std::vector<std::vector<FieldElement>> entries;  // symmetric, 0-based

    static MetricMatrix from_entries(std::vector<std::vector<FieldElement>> e);
    bool is_identity() const;
};

// g(X,Y) vol = (1/6) i_X phi ^ i_Y phi ^ phi, read off against vol = e^{1..7}.
// The canonical phi yields the identity; degenerate phi (vanishing induced
// volume, det = 0) is an error.
MetricMatrix g2_metric(const KForm& phi);

// g(X,Y) omega^3 = -3 i_X omega ^ i_Y psi_plus ^ psi_plus.
MetricMatrix su3_metric(const KForm& omega, const KForm& psi_plus);

// Matrix of J* on the coframe, row i = image of e^i, normalized so that
// (J*)^2 = -id and the canonical psi_plus gives J* e^1 = e^2, J* e^3 = e^4,
// J* e^5 = e^6.
SquareMatrix su3_acs(const KForm& psi_plus, const KForm& omega);

struct SU3Class {
    bool symplectic_half_flat;  // d omega = d psi+ = 0
    bool half_flat;             // d omega^2 = d psi+ = 0
    KForm d_omega;
    KForm d_omega2;
    KForm d_psi_plus;
};

SU3Class classify_su3(const LieAlgebra& h, const SU3Structure& s);

struct G2Class {
    bool closed;    // d phi = 0
    bool coclosed;  // d *phi = 0
    KForm d_phi;
    KForm d_star_phi;
};

G2Class classify_g2(const LieAlgebra& g, const G2Structure& G);

// Extension with phi = omega ^ e^7 + psi_plus.  Preconditions: (h, s) is
// symplectic half-flat and D lies in the sl(3,C) solution space of h (shape
// plus derivation property); d phi = 0 is asserted, symbolically when D is
// parametric.
std::pair<LieAlgebra, G2Structure> build_closed(const LieAlgebra& h, const SU3Structure& s,
                                                const SquareMatrix& D);

// Extension with phi = omega ^ e^7 - psi_minus; requires half-flat and an
// sp(6,R)-shaped derivation; d *phi = 0 is asserted.
std::pair<LieAlgebra, G2Structure> build_coclosed(const LieAlgebra& h, const SU3Structure& s,
                                                  const SquareMatrix& D);

// From a closed G2 form on g = h +_D R e_7 with sl(3,C)-shaped D:
// omega = i_{e7} phi, psi_plus = phi|_h, psi_minus recovered through the
// almost complex structure.  The result classifies symplectic half-flat.
SU3Structure reduce_closed(const LieAlgebra& g, const G2Structure& G);

// From a coclosed G2 form with sp(6,R)-shaped D: omega = i_{e7} phi,
// psi_minus = -phi|_h, psi_plus = +-*psi_minus with the sign fixed by
// psi+ ^ psi- = (2/3) omega^3 on the e^{123456} coefficient.  The result
// classifies half-flat.
SU3Structure reduce_coclosed(const LieAlgebra& g, const G2Structure& G);

}  // namespace g2ext
