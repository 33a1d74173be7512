#pragma once

#include <cstdio>
#include <cstdlib>
#include <string>

namespace platsim {

/// Fixed 9-significant-digit rendering used for every real value we
/// serialize, so determinism checks can diff output files byte-wise.
inline std::string fmt9(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

/// The double that fmt9(v) round-trips to. Outcome traits are stored at
/// this precision so summaries recomputed from a dumped CSV equal the
/// in-memory ones bit for bit.
inline double canonical9(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return std::strtod(buf, nullptr);
}

} // namespace platsim
