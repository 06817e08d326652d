#pragma once

#include "axbmellin/types.hpp"

namespace axb {

// Gamma function for complex argument (Lanczos approximation, g = 7).
// Relative accuracy ~1e-13 on the right half plane; reflection formula
// for Re z < 1/2.
cplx gamma_complex(cplx z);

} // namespace axb
