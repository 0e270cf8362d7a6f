#include "wishart/partitions.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "wishart/errors.hpp"

namespace wishart {

SetPartition SetPartition::from_blocks(int n, std::vector<std::vector<int>> blocks) {
    std::vector<char> seen(static_cast<size_t>(n) + 1, 0);
    size_t total = 0;
    for (auto& b : blocks) {
        if (b.empty()) throw InputError("empty block");
        std::sort(b.begin(), b.end());
        for (int x : b) {
            if (x < 1 || x > n) throw InputError("element out of range: " + std::to_string(x));
            if (seen[static_cast<size_t>(x)]) throw InputError("duplicate element: " + std::to_string(x));
            seen[static_cast<size_t>(x)] = 1;
        }
        total += b.size();
    }
    if (total != static_cast<size_t>(n)) throw InputError("blocks do not cover the ground set");
    std::sort(blocks.begin(), blocks.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    SetPartition p;
    p.n = n;
    p.blocks = std::move(blocks);
    return p;
}

SetPartition SetPartition::from_alpha(const std::vector<int>& a) {
    int maxv = 0;
    for (int v : a) {
        if (v < 1 || v > maxv + 1) throw InputError("not a restricted growth string");
        maxv = std::max(maxv, v);
    }
    SetPartition p;
    p.n = static_cast<int>(a.size());
    p.blocks.resize(static_cast<size_t>(maxv));
    for (int i = 0; i < p.n; ++i) p.blocks[static_cast<size_t>(a[static_cast<size_t>(i)] - 1)].push_back(i + 1);
    return p;
}

std::vector<int> SetPartition::alpha() const {
    std::vector<int> a(static_cast<size_t>(n), 0);
    for (size_t bi = 0; bi < blocks.size(); ++bi)
        for (int x : blocks[bi]) a[static_cast<size_t>(x - 1)] = static_cast<int>(bi) + 1;
    return a;
}

SetPartition SetPartition::parse_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("bad partition JSON: ") + e.what());
    }
    if (!j.is_array()) throw InputError("partition JSON must be an array of arrays");
    std::vector<std::vector<int>> blocks;
    int n = 0;
    for (const auto& jb : j) {
        if (!jb.is_array()) throw InputError("partition JSON must be an array of arrays");
        std::vector<int> b;
        for (const auto& je : jb) {
            if (!je.is_number_integer()) throw InputError("partition elements must be integers");
            int x = je.get<int>();
            b.push_back(x);
            n = std::max(n, x);
        }
        blocks.push_back(std::move(b));
    }
    return from_blocks(n, std::move(blocks));
}

std::string SetPartition::to_json() const {
    std::string out = "[";
    for (size_t bi = 0; bi < blocks.size(); ++bi) {
        if (bi) out += ",";
        out += "[";
        for (size_t i = 0; i < blocks[bi].size(); ++i) {
            if (i) out += ",";
            out += std::to_string(blocks[bi][i]);
        }
        out += "]";
    }
    return out + "]";
}

std::string SetPartition::to_string() const {
    if (blocks.empty()) return "{}";
    std::string out;
    for (const auto& b : blocks) {
        out += "{";
        for (size_t i = 0; i < b.size(); ++i) {
            if (i) out += ",";
            out += std::to_string(b[i]);
        }
        out += "}";
    }
    return out;
}

int PartitionType::size() const {
    int n = 0;
    for (size_t k = 0; k < mu.size(); ++k) n += static_cast<int>(k + 1) * mu[k];
    return n;
}

int PartitionType::block_count() const {
    int m = 0;
    for (int c : mu) m += c;
    return m;
}

PartitionClass partition_class_from_string(const std::string& name) {
    if (name == "all") return PartitionClass::ALL;
    if (name == "nc") return PartitionClass::NC;
    if (name == "nosing") return PartitionClass::NOSING;
    if (name == "nosing-nc") return PartitionClass::NOSING_NC;
    if (name == "nosing-cross") return PartitionClass::NOSING_CROSS;
    if (name == "cross") return PartitionClass::CROSS;
    throw InputError("unknown partition class: '" + name + "'");
}

std::string to_string(PartitionClass cls) {
    switch (cls) {
        case PartitionClass::ALL: return "all";
        case PartitionClass::NC: return "nc";
        case PartitionClass::NOSING: return "nosing";
        case PartitionClass::NOSING_NC: return "nosing-nc";
        case PartitionClass::NOSING_CROSS: return "nosing-cross";
        case PartitionClass::CROSS: return "cross";
    }
    throw InputError("bad partition class value");
}

bool is_crossing(const SetPartition& p) {
    // Scan left to right keeping the open blocks on a stack. Re-entering a
    // block that is not on top means some other block straddles it.
    auto a = p.alpha();
    std::vector<int> last(static_cast<size_t>(p.block_count()) + 1, 0);
    for (int i = 1; i <= p.n; ++i) last[static_cast<size_t>(a[static_cast<size_t>(i - 1)])] = i;
    std::vector<int> stack;
    std::vector<char> seen(static_cast<size_t>(p.block_count()) + 1, 0);
    for (int i = 1; i <= p.n; ++i) {
        int b = a[static_cast<size_t>(i - 1)];
        if (!seen[static_cast<size_t>(b)]) {
            seen[static_cast<size_t>(b)] = 1;
            stack.push_back(b);
        } else if (stack.back() != b) {
            return true;
        }
        if (last[static_cast<size_t>(b)] == i) stack.pop_back();
    }
    return false;
}

bool has_singleton(const SetPartition& p) {
    for (const auto& b : p.blocks)
        if (b.size() == 1) return true;
    return false;
}

bool in_class(const SetPartition& p, PartitionClass cls) {
    switch (cls) {
        case PartitionClass::ALL: return true;
        case PartitionClass::NC: return !is_crossing(p);
        case PartitionClass::NOSING: return !has_singleton(p);
        case PartitionClass::NOSING_NC: return !has_singleton(p) && !is_crossing(p);
        case PartitionClass::NOSING_CROSS: return !has_singleton(p) && is_crossing(p);
        case PartitionClass::CROSS: return is_crossing(p);
    }
    throw InputError("bad partition class value");
}

int iota(const SetPartition& p) {
    if (is_crossing(p)) throw InputError("iota is undefined for crossing partitions");
    int count = 0;
    for (const auto& b : p.blocks) {
        bool outer = true;
        for (const auto& c : p.blocks) {
            if (&b == &c) continue;
            if (c.front() < b.front() && b.back() < c.back()) {
                outer = false;
                break;
            }
        }
        if (outer) ++count;
    }
    return count;
}

SetPartition closure(const SetPartition& p) {
    if (is_crossing(p)) throw InputError("closure is defined for non-crossing partitions only");
    if (p.n == 0) return SetPartition::from_blocks(1, {{1}});
    std::vector<std::vector<int>> blocks;
    for (const auto& b : p.blocks) {
        std::vector<int> nb;
        for (int x : b) nb.push_back(x + 1);
        if (nb.back() == p.n + 1) nb.insert(nb.begin(), 1);
        blocks.push_back(std::move(nb));
    }
    return SetPartition::from_blocks(p.n + 1, std::move(blocks));
}

SetPartition oplus(const SetPartition& p, const SetPartition& q) {
    std::vector<std::vector<int>> blocks = p.blocks;
    for (const auto& b : q.blocks) {
        std::vector<int> nb;
        for (int x : b) nb.push_back(x + p.n);
        blocks.push_back(std::move(nb));
    }
    return SetPartition::from_blocks(p.n + q.n, std::move(blocks));
}

namespace {

// Does the chord between node i and node j (nodes sit after their index,
// i < j) avoid every block of p? It does iff no block has elements both in
// {i+1,...,j} and outside.
bool chord_admissible(const SetPartition& p, int i, int j) {
    for (const auto& b : p.blocks) {
        bool inside = false, outside = false;
        for (int x : b)
            ((x > i && x <= j) ? inside : outside) = true;
        if (inside && outside) return false;
    }
    return true;
}

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(static_cast<size_t>(n)) {
        for (int i = 0; i < n; ++i) parent[static_cast<size_t>(i)] = i;
    }
    int find(int x) {
        while (parent[static_cast<size_t>(x)] != x) {
            parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
            x = parent[static_cast<size_t>(x)];
        }
        return x;
    }
    void unite(int a, int b) { parent[static_cast<size_t>(find(a))] = find(b); }
};

} // namespace

SetPartition kreweras(const SetPartition& p) {
    if (is_crossing(p)) throw InputError("complement is defined for non-crossing partitions only");
    int n = p.n;
    if (n == 0) return SetPartition::null_partition();
    UnionFind uf(n);
    for (int i = 1; i < n; ++i)
        for (int j = i + 1; j <= n; ++j)
            if (chord_admissible(p, i, j)) uf.unite(i - 1, j - 1);
    std::map<int, std::vector<int>> groups;
    for (int i = 1; i <= n; ++i) groups[uf.find(i - 1)].push_back(i);
    std::vector<std::vector<int>> blocks;
    for (auto& [root, b] : groups) blocks.push_back(std::move(b));
    return SetPartition::from_blocks(n, std::move(blocks));
}

PartitionType partition_type(const SetPartition& p) {
    PartitionType t;
    t.mu.assign(static_cast<size_t>(std::max(p.n, 0)), 0);
    for (const auto& b : p.blocks) ++t.mu[b.size() - 1];
    return t;
}

namespace {

constexpr int kStreamCap = 14;

bool emit(const std::vector<int>& a, std::optional<int> m, PartitionClass cls,
          const std::function<bool(const SetPartition&)>& visit) {
    SetPartition p = SetPartition::from_alpha(a);
    if (m && p.block_count() != *m) return true;
    if (!in_class(p, cls)) return true;
    return visit(p);
}

// Depth-first walk over restricted growth strings; yields the alpha-vectors
// in lexicographic order.
bool walk(std::vector<int>& a, int i, int used, int n, std::optional<int> m,
          PartitionClass cls, const std::function<bool(const SetPartition&)>& visit) {
    if (i == n) return emit(a, m, cls, visit);
    if (m) {
        if (used > *m) return true;
        if (used + (n - i) < *m) return true;
    }
    for (int v = 1; v <= used + 1; ++v) {
        a[static_cast<size_t>(i)] = v;
        if (!walk(a, i + 1, std::max(used, v), n, m, cls, visit)) return false;
    }
    return true;
}

} // namespace

void enumerate(int n, std::optional<int> m, PartitionClass cls,
               const std::function<bool(const SetPartition&)>& visit) {
    if (n < 0) throw InputError("ground set size must be nonnegative");
    if (m && (*m < 0 || *m > n)) throw InputError("block count out of range");
    if (n > kStreamCap)
        throw SizeCapError("partition streams are capped at n = " + std::to_string(kStreamCap) +
                           " (got n = " + std::to_string(n) + ")");
    if (n == 0) {
        emit({}, m, cls, visit);
        return;
    }
    std::vector<int> a(static_cast<size_t>(n));
    walk(a, 0, 0, n, m, cls, visit);
}

std::vector<SetPartition> enumerate_all(int n, std::optional<int> m, PartitionClass cls) {
    std::vector<SetPartition> out;
    enumerate(n, m, cls, [&](const SetPartition& p) {
        out.push_back(p);
        return true;
    });
    return out;
}

Int count_partitions(int n, std::optional<int> m, PartitionClass cls) {
    Int count = 0;
    enumerate(n, m, cls, [&](const SetPartition&) {
        ++count;
        return true;
    });
    return count;
}

namespace {

constexpr int kRecursionCap = 12;

using NCKey = std::pair<int, int>;

const std::vector<SetPartition>& nc_memo(int n, int m, std::map<NCKey, std::vector<SetPartition>>& memo) {
    auto it = memo.find({n, m});
    if (it != memo.end()) return it->second;

    std::set<SetPartition> out;
    if (n == 0 && m == 0) {
        out.insert(SetPartition::null_partition());
    } else if (n >= 1 && m >= 1 && m <= n) {
        // Split off the tail piece holding the last element: either a lone
        // singleton appended to N(n-1, m-1), or the closure of a smaller
        // partition concatenated after a (possibly empty) prefix partition.
        for (const auto& head : nc_memo(n - 1, m - 1, memo))
            out.insert(oplus(head, SetPartition::from_blocks(1, {{1}})));
        for (int n2 = 1; n2 <= n - 1; ++n2) {
            int n1 = n - 1 - n2;
            for (int m2 = 1; m2 <= n2; ++m2) {
                int m1 = m - m2;
                if (m1 < 0 || m1 > n1) continue;
                for (const auto& head : nc_memo(n1, m1, memo))
                    for (const auto& tail : nc_memo(n2, m2, memo))
                        out.insert(oplus(head, closure(tail)));
            }
        }
    }
    auto [pos, inserted] = memo.emplace(NCKey{n, m}, std::vector<SetPartition>(out.begin(), out.end()));
    return pos->second;
}

} // namespace

std::vector<SetPartition> noncrossing_by_recursion(int n, int m) {
    if (n < 0 || m < 0) throw InputError("indices must be nonnegative");
    if (n > kRecursionCap)
        throw SizeCapError("recursive non-crossing generation is capped at n = " +
                           std::to_string(kRecursionCap));
    std::map<NCKey, std::vector<SetPartition>> memo;
    return nc_memo(n, m, memo);
}

} // namespace wishart
