#ifndef NORMALFAM_VERIFY_HPP
#define NORMALFAM_VERIFY_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "normalfam/json_io.hpp"

namespace normalfam {

inline constexpr const char* tool_version = "normalfam 0.1.0";

struct CheckRecord {
    std::string id;
    std::string family;
    ojson params;
    ojson measured;
    std::string threshold;
    bool pass = false;
};

struct VerificationReport {
    std::string version;
    uint64_t seed = 0;
    long budget = 0;
    std::vector<CheckRecord> records;
    bool overall = false;
};

/// Runs the whole example registry: the canned criterion profiles, the
/// counterexample families with their growth/rescaling/probe checks, the
/// Weierstrass identities, and the rational-function suite. Deterministic
/// for fixed (budget, seed). `threads` caps record-level parallelism.
VerificationReport verify_examples(long budget, uint64_t seed, int threads = 1);

ojson report_to_json(const VerificationReport& r);

// Example-family builders shared by tests and the registry.

/// f_n = ((n+1)/2n) e^(nz) + ((n-1)/2n) e^(-nz): the analytic family sharing
/// the set {1,-1} with its derivative: n^2 (f^2 - 1) = (f')^2 - 1.
FunctionHandle exp_pair_member(int n);

/// 1/f_n: keeps the partial set sharing, has no zeros at all.
FunctionHandle recip_exp_pair_member(int n);

} // namespace normalfam

#endif
