#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "dioph/ffcore.hpp"

namespace dioph {

// Graph on F_q^* with an edge (a, b) exactly when a*b + 1 is a square.
// Vertices are element codes 1..q-1; adjacency is a packed symmetric bitset.
class DiophGraph {
public:
    DiophGraph(int vertex_count, std::string field_id);

    int vertex_count() const { return nv_; }
    const std::string& field_id() const { return field_id_; }
    std::int64_t edge_count() const { return edges_; }
    int degree(int v) const { return degree_[v]; }

    // v, u are 0-based vertex indices; code = index + 1
    bool edge(int v, int u) const {
        return (adj_[static_cast<std::size_t>(v) * words_ + u / 64] >> (u % 64)) & 1;
    }
    void add_edge(int v, int u);
    const std::uint64_t* row(int v) const { return adj_.data() + static_cast<std::size_t>(v) * words_; }
    std::size_t row_words() const { return words_; }

private:
    int nv_;
    std::size_t words_;
    std::int64_t edges_ = 0;
    std::string field_id_;
    std::vector<std::uint64_t> adj_;
    std::vector<int> degree_;
};

inline constexpr std::int64_t kOracleDefaultMaxQ = 5000;

// O(q^2) pairwise scan. Fields beyond max_q are refused with guidance.
DiophGraph build_graph(const Field& F, std::int64_t max_q = kOracleDefaultMaxQ);

struct CliqueResult {
    int size = 0;
    std::vector<std::int64_t> witness;  // element codes, ascending
    std::uint64_t nodes_explored = 0;
};

// Exact maximum clique: branch and bound with greedy-coloring upper bounds,
// vertices ordered by descending degree (ties by code). Deterministic.
CliqueResult max_clique(const DiophGraph& g);

// Every maximal clique, via Bron-Kerbosch with pivoting; the visitor receives
// ascending element codes. Intended for small fields.
void enumerate_maximal_cliques(const DiophGraph& g,
                               const std::function<void(const std::vector<std::int64_t>&)>& visit);

// JSON-lines backed memo of exact_M results, keyed by the field identity.
class MCache {
public:
    void load(const std::string& path);   // missing file is fine
    void save(const std::string& path) const;
    bool lookup(const std::string& field_id, CliqueResult& out) const;
    void store(const std::string& field_id, const CliqueResult& r);

private:
    mutable std::mutex mu_;
    std::map<std::string, CliqueResult> entries_;
};

// build_graph + max_clique with optional persistent cache.
CliqueResult exact_M(const Field& F, std::int64_t max_q = kOracleDefaultMaxQ, MCache* cache = nullptr);

}  // namespace dioph
