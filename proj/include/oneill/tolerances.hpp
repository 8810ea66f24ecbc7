// Four-tier tolerance set plus the slack/equality tolerance.
#pragma once

namespace oneill {

struct Tolerances {
    double alg = 1e-10;     // algebraic identities
    double d1 = 1e-8;       // one derivative deep
    double curv = 1e-7;     // curvature level
    double d2curv = 1e-6;   // curvature mixed with derivatives of T
    double equality = 1e-9; // slack sign and equality-condition norms
    double sharpness = 1e-6;
};

}  // namespace oneill
