#ifndef cdok_tests_checks_hpp
#define cdok_tests_checks_hpp

#include <cstdint>
#include <string>
#include <vector>

#include "cdok/acdo.hpp"
#include "cdok/amcdoch.hpp"
#include "cdok/estar.hpp"
#include "cdok/snippets.hpp"

namespace checks {

using namespace cdok;

/// Tally of one property over many queries; `first` describes the first
/// failure so a red test says what broke.
struct Tally {
    std::size_t checked = 0;
    std::size_t failed = 0;
    std::string first;
    double max_ratio = 1.0;

    void fail(const std::string& what) {
        if (failed++ == 0) first = what;
    }
    void merge(const Tally& o);
    bool ok() const { return failed == 0; }
};

struct EStarTally {
    Tally monotone;
    Tally coverage;
    Tally lower_bound;
    Tally upper_bound;
    Tally base_case;
    Tally unique_level;
    Tally ratio;
    Tally witness;
    std::size_t builds = 0;
    std::size_t far_pairs = 0;

    void merge(const EStarTally& o);
    bool ok() const;
};

/// Builds E* with a level observer and checks the per-level bounds, the
/// final ratio and the witnesses against exact distances.
EStarTally check_estar(const ColoredPointSet& s, const EStarParams& params);

bool within(Distance exact, Distance reported, double epsilon);
double ratio(Distance exact, Distance reported);

struct QueryTally {
    Tally bounds;    // exact <= reported <= (1 + eps) exact
    Tally witness;   // witnesses on the right colors, gap <= reported, equal when exact
    Tally nns;       // heavy-heavy: no scans and one lookup; light: <= tau scans
    Tally symmetry;
    Tally special;   // nested -> 0, short -> exact, same color -> 0

    void merge(const QueryTally& o);
    bool ok() const;
};

/// Every ordered color pair of a CdoOracle against the sorted-merge oracle.
/// epsilon = 0 demands equality.
QueryTally check_cdo(const CdoOracle& o, double epsilon);

/// Every ordered color pair of a HierarchyOracle against brute force.
QueryTally check_hierarchy(const HierarchyOracle& o, double epsilon);

/// Structural identity of every color's prefix, blocks and suffix.
Tally check_partitions(const HierarchyOracle& o);

/// Every block matrix entry against the exact block distance.
Tally check_block_matrix(const HierarchyOracle& o, double epsilon);

}

#endif
