#pragma once

// Narrated counterexamples. Every claim is recomputed when the demo runs.

#include "isphere/io.hpp"

#include <string>
#include <vector>

namespace isphere::cli {

struct Claim {
    std::string statement;
    bool ok = false;
    io::Json detail;
};

struct Transcript {
    std::string name;
    std::vector<Claim> claims;
    bool ok() const;
    io::Json to_json() const;
    std::string to_text() const;
};

std::vector<std::string> demo_names();
/// Throws UsageError for unknown names.
Transcript run_demo(const std::string& name);

Transcript demo_not_projective();
Transcript demo_closed_interval();
Transcript demo_j_pushout_weq();

} // namespace isphere::cli
