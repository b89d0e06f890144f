#pragma once

#include <string>
#include <vector>

#include "digraph.hpp"
#include "rat.hpp"

namespace pibound {

enum class Profile { Quick, Full };

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string observed;
    std::string bound;
    double ms = 0;
};

/// Runs the named verification checks (figure reproduction, extremal
/// counts, brute-force maxima, PI-DAG path-bound audits, 2-state caps,
/// exactness core, structure lemma). Quick trims the instance counts;
/// Full runs the stated ranges. All randomness is seeded, so results are
/// reproducible across runs.
std::vector<CheckResult> run_suite(Profile profile);

bool suite_passed(const std::vector<CheckResult>& results);
std::string suite_to_json_string(const std::vector<CheckResult>& results, Profile profile);

/// Exhaustive sweep behind the structure lemma: all loop-free digraphs
/// with in- and outdegree exactly 2 and no multi-edges, with the two
/// 3-vertex obstructions excluded. Verifies that at most n edges are not
/// in-contractible, with equality exactly for disjoint unions of the
/// shift-circulants on >= 4 vertices.
struct StructureScan {
    long candidates = 0;      // out-neighbourhood assignments visited
    long two_regular = 0;     // survivors of the indegree filter
    long admissible = 0;      // survivors of the obstruction filter
    long equality_cases = 0;  // graphs attaining the bound n
    bool pass = false;
};
StructureScan lemma_structure_scan(int n);

}  // namespace pibound
