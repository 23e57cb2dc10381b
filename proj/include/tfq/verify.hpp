#pragma once

// Built-in verification battery: a fixed set of groups, every aligned
// subgroup of each plus deterministic generated samples, and property
// suites covering the library's contracts.  The CLI `verify` command runs
// these; the test binaries reuse the enumeration helpers.

#include <string>
#include <vector>

#include "tfq/group.hpp"
#include "tfq/transforms.hpp"

namespace tfq {

struct CheckResult {
    std::string suite;
    std::string name;        // includes the group/subgroup context
    double deviation = 0.0;  // worst value observed across the check's samples
    double tolerance = 0.0;
    bool pass = false;
    std::string note;        // e.g. the best row relabeling when not canonical
};

struct SuiteReport {
    std::string suite;       // as requested, "all" included
    std::vector<CheckResult> checks;
    bool all_pass = true;
    double max_deviation = 0.0;
};

// Sample counts; tol_override > 0 replaces every per-check tolerance (the
// CLI --tol flag).  Defaults are the sizes the acceptance bar uses.
struct VerifyConfig {
    double tol_override = 0.0;
    int random_signals = 100;
    int random_windows = 50;
    int broken_windows = 10;
    int fgp_pairs = 100;
    int qwht_windows = 10;
    int generated_per_group = 3;
};

// Z4, Z6, Z8, Z12, Z2xZ4, Z2xZ2xZ3, Z3xZ9.
std::vector<FiniteAbelianGroup> battery_groups();

// Every divisor tuple, lexicographic over per-factor divisor lists.
std::vector<Subgroup> all_aligned_subgroups(const FiniteAbelianGroup& g);

// Deterministic pseudo-random generator lists, distinct by element set.
std::vector<Subgroup> sample_generated_subgroups(const FiniteAbelianGroup& g, int count);

// Unit-norm signal whose restricted Zak table has one entry forced to zero.
// Fails the constant-modulus criterion by ~sqrt(|B|/|A|), far above any
// reasonable tolerance, whenever |A| > 1.
Signal broken_window_signal(const Subgroup& sub, int index);

bool suite_name_valid(const std::string& suite);

SuiteReport run_suites(const std::string& suite, const VerifyConfig& cfg);

std::string report_to_json(const SuiteReport& report);

}  // namespace tfq
