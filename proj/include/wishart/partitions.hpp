#pragma once

// Set partitions of [n] = {1,...,n}: enumeration by class, crossing tests,
// the closure / concatenation / complement constructions, and block statistics.

#include <compare>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "wishart/rational.hpp"

namespace wishart {

// Blocks are canonical: each block sorted ascending, blocks ordered by their
// smallest element. The empty partition (n = 0, no blocks) is a valid value.
struct SetPartition {
    int n = 0;
    std::vector<std::vector<int>> blocks;

    static SetPartition null_partition() { return {}; }
    // Validates disjointness/coverage and canonicalizes the block order.
    static SetPartition from_blocks(int n, std::vector<std::vector<int>> blocks);
    // From a restricted growth string: a[0] = 1, a[i] <= 1 + max(a[0..i-1]).
    static SetPartition from_alpha(const std::vector<int>& a);
    static SetPartition parse_json(const std::string& text);

    int block_count() const { return static_cast<int>(blocks.size()); }
    // alpha()[i-1] is the 1-based index of the block containing i.
    std::vector<int> alpha() const;
    std::string to_json() const;   // [[1,4],[2,3],[5],[6,7]]
    std::string to_string() const; // {1,4}{2,3}{5}{6,7}

    bool operator==(const SetPartition&) const = default;
    auto operator<=>(const SetPartition&) const = default;
};

// mu[k-1] = number of blocks of size k. This doubles as the r-vector
// (r_i = mu_i); the two views differ only in name.
struct PartitionType {
    std::vector<int> mu;

    int size() const; // n = sum k * mu_k
    int block_count() const;
    bool operator==(const PartitionType&) const = default;
};

enum class PartitionClass {
    ALL,          // every partition
    NC,           // non-crossing
    NOSING,       // no singleton block
    NOSING_NC,    // no singleton, non-crossing
    NOSING_CROSS, // no singleton, crossing
    CROSS,        // crossing
};

PartitionClass partition_class_from_string(const std::string& name);
std::string to_string(PartitionClass cls);

// True iff some i < j < k < l has {i,k} in one block and {j,l} in another.
bool is_crossing(const SetPartition& p);
bool has_singleton(const SetPartition& p);
bool in_class(const SetPartition& p, PartitionClass cls);

// Number of outermost blocks: blocks whose span [min,max] is not strictly
// contained in the span of another block. Defined for non-crossing input only;
// crossing input is refused.
int iota(const SetPartition& p);

// Shift every element by one, then join 1 to the block that held n.
// Keeps the block count, grows the ground set by one, and the result always
// has a single outermost block. Input must be non-crossing.
SetPartition closure(const SetPartition& p);

// Place q after p: blocks of p, then blocks of q shifted by p.n.
SetPartition oplus(const SetPartition& p, const SetPartition& q);

// Complement partition on the interleaved nodes 1..n, where node k sits
// between k and k+1 (cyclically). Node i and node j share a block iff the
// chord between them crosses no chord of p; blocks are the maximal such sets.
// Sends an m-block non-crossing partition to an (n+1-m)-block one, and the
// size of the block holding node n equals iota(p). Crossing input is refused.
SetPartition kreweras(const SetPartition& p);

PartitionType partition_type(const SetPartition& p);

// Streaming enumeration in lexicographic order of the alpha-vector.
// The visitor returns false to stop early. Ground sets above 14 are refused
// (the full partition lattice gets too large to scan).
void enumerate(int n, std::optional<int> m, PartitionClass cls,
               const std::function<bool(const SetPartition&)>& visit);

std::vector<SetPartition> enumerate_all(int n, std::optional<int> m, PartitionClass cls);
Int count_partitions(int n, std::optional<int> m, PartitionClass cls);

// Independent route to the non-crossing family: build N(n,m) recursively by
// concatenating a smaller non-crossing partition with the closure of another.
// Used to cross-check the filtered stream. Materializes its output, so the
// ground set is capped at 12.
std::vector<SetPartition> noncrossing_by_recursion(int n, int m);

} // namespace wishart
