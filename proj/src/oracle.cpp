#include "dioph/oracle.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <stdexcept>

#include "json.hpp"

namespace dioph {

namespace {

struct Bits {
    std::vector<std::uint64_t> w;

    explicit Bits(std::size_t words = 0) : w(words, 0) {}

    void set(int i) { w[i / 64] |= std::uint64_t(1) << (i % 64); }
    void clear(int i) { w[i / 64] &= ~(std::uint64_t(1) << (i % 64)); }
    bool test(int i) const { return (w[i / 64] >> (i % 64)) & 1; }
    bool empty() const {
        for (auto v : w)
            if (v) return false;
        return true;
    }
    int count() const {
        int c = 0;
        for (auto v : w) c += __builtin_popcountll(v);
        return c;
    }
    int lowest() const {  // -1 when empty
        for (std::size_t i = 0; i < w.size(); ++i) {
            if (w[i]) return static_cast<int>(i * 64 + __builtin_ctzll(w[i]));
        }
        return -1;
    }
    void and_row(const std::uint64_t* row) {
        for (std::size_t i = 0; i < w.size(); ++i) w[i] &= row[i];
    }
    void andnot_row(const std::uint64_t* row) {
        for (std::size_t i = 0; i < w.size(); ++i) w[i] &= ~row[i];
    }
};

}  // namespace

DiophGraph::DiophGraph(int vertex_count, std::string field_id)
    : nv_(vertex_count),
      words_((static_cast<std::size_t>(vertex_count) + 63) / 64),
      field_id_(std::move(field_id)),
      adj_(static_cast<std::size_t>(vertex_count) * words_, 0),
      degree_(vertex_count, 0) {}

void DiophGraph::add_edge(int v, int u) {
    if (v == u) throw std::invalid_argument("no self loops");
    adj_[static_cast<std::size_t>(v) * words_ + u / 64] |= std::uint64_t(1) << (u % 64);
    adj_[static_cast<std::size_t>(u) * words_ + v / 64] |= std::uint64_t(1) << (v % 64);
    ++degree_[v];
    ++degree_[u];
    ++edges_;
}

DiophGraph build_graph(const Field& F, std::int64_t max_q) {
    if (F.q() > max_q) {
        throw std::invalid_argument("field size " + std::to_string(F.q()) +
                                    " exceeds the oracle policy (max q " + std::to_string(max_q) +
                                    "); raise the limit explicitly if the runtime is acceptable");
    }
    const int nv = static_cast<int>(F.q() - 1);
    DiophGraph g(nv, F.id());
    for (int v = 0; v < nv; ++v) {
        const std::int64_t a = v + 1;
        for (int u = v + 1; u < nv; ++u) {
            if (F.is_square(F.add(F.mul(a, u + 1), 1))) g.add_edge(v, u);
        }
    }
    return g;
}

namespace {

// Tomita-style search in rank space (vertices reordered by descending degree).
class MaxCliqueSearch {
public:
    explicit MaxCliqueSearch(const DiophGraph& g) : g_(g), nv_(g.vertex_count()) {
        rank_of_.resize(nv_);
        vertex_of_.resize(nv_);
        std::iota(vertex_of_.begin(), vertex_of_.end(), 0);
        std::sort(vertex_of_.begin(), vertex_of_.end(), [&](int a, int b) {
            if (g_.degree(a) != g_.degree(b)) return g_.degree(a) > g_.degree(b);
            return a < b;
        });
        for (int r = 0; r < nv_; ++r) rank_of_[vertex_of_[r]] = r;
        words_ = (static_cast<std::size_t>(nv_) + 63) / 64;
        radj_.assign(static_cast<std::size_t>(nv_) * words_, 0);
        for (int v = 0; v < nv_; ++v) {
            for (int u = 0; u < nv_; ++u) {
                if (g_.edge(v, u)) {
                    const int rv = rank_of_[v], ru = rank_of_[u];
                    radj_[static_cast<std::size_t>(rv) * words_ + ru / 64] |=
                        std::uint64_t(1) << (ru % 64);
                }
            }
        }
    }

    CliqueResult run() {
        Bits all(words_);
        for (int r = 0; r < nv_; ++r) all.set(r);
        current_.clear();
        best_.clear();
        nodes_ = 0;
        expand(all);
        CliqueResult res;
        res.size = static_cast<int>(best_.size());
        res.nodes_explored = nodes_;
        for (int r : best_) res.witness.push_back(vertex_of_[r] + 1);
        std::sort(res.witness.begin(), res.witness.end());
        return res;
    }

private:
    const std::uint64_t* row(int r) const { return radj_.data() + static_cast<std::size_t>(r) * words_; }

    void expand(Bits P) {
        ++nodes_;
        if (P.empty()) {
            if (current_.size() > best_.size()) best_ = current_;
            return;
        }
        // greedy coloring in ascending rank order; colors bound the clique
        std::vector<std::pair<int, int>> order;  // (rank, color)
        Bits uncolored = P;
        int color = 0;
        while (!uncolored.empty()) {
            ++color;
            Bits cls = uncolored;
            while (true) {
                int v = cls.lowest();
                if (v < 0) break;
                order.emplace_back(v, color);
                uncolored.clear(v);
                cls.clear(v);
                cls.andnot_row(row(v));
            }
        }
        for (auto it = order.rbegin(); it != order.rend(); ++it) {
            const auto [v, c] = *it;
            if (current_.size() + c <= best_.size()) return;
            current_.push_back(v);
            Bits next = P;
            next.and_row(row(v));
            expand(std::move(next));
            current_.pop_back();
            P.clear(v);
        }
    }

    const DiophGraph& g_;
    int nv_;
    std::size_t words_;
    std::vector<int> rank_of_, vertex_of_;
    std::vector<std::uint64_t> radj_;
    std::vector<int> current_, best_;
    std::uint64_t nodes_ = 0;
};

}  // namespace

CliqueResult max_clique(const DiophGraph& g) {
    if (g.vertex_count() == 0) return {};
    MaxCliqueSearch search(g);
    return search.run();
}

namespace {

void bron_kerbosch(const DiophGraph& g, Bits R, Bits P, Bits X,
                   const std::function<void(const std::vector<std::int64_t>&)>& visit) {
    if (P.empty() && X.empty()) {
        std::vector<std::int64_t> clique;
        for (int v = 0; v < g.vertex_count(); ++v) {
            if (R.test(v)) clique.push_back(v + 1);
        }
        visit(clique);
        return;
    }
    // pivot: vertex of P union X with the most neighbours in P
    int pivot = -1, best = -1;
    for (int v = 0; v < g.vertex_count(); ++v) {
        if (!P.test(v) && !X.test(v)) continue;
        Bits t = P;
        t.and_row(g.row(v));
        int c = t.count();
        if (c > best) {
            best = c;
            pivot = v;
        }
    }
    Bits candidates = P;
    if (pivot >= 0) candidates.andnot_row(g.row(pivot));
    for (int v = 0; v < g.vertex_count(); ++v) {
        if (!candidates.test(v)) continue;
        Bits R2 = R;
        R2.set(v);
        Bits P2 = P;
        P2.and_row(g.row(v));
        Bits X2 = X;
        X2.and_row(g.row(v));
        bron_kerbosch(g, std::move(R2), std::move(P2), std::move(X2), visit);
        P.clear(v);
        X.set(v);
    }
}

}  // namespace

void enumerate_maximal_cliques(const DiophGraph& g,
                               const std::function<void(const std::vector<std::int64_t>&)>& visit) {
    const std::size_t words = (static_cast<std::size_t>(g.vertex_count()) + 63) / 64;
    Bits R(words), P(words), X(words);
    for (int v = 0; v < g.vertex_count(); ++v) P.set(v);
    bron_kerbosch(g, std::move(R), std::move(P), std::move(X), visit);
}

void MCache::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) return;
    std::string line;
    std::lock_guard<std::mutex> lock(mu_);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
        if (j.is_discarded() || !j.contains("field") || !j.contains("M") || !j.contains("witness")) {
            continue;
        }
        CliqueResult r;
        r.size = j["M"].get<int>();
        r.nodes_explored = j.value("nodes", std::uint64_t(0));
        r.witness = j["witness"].get<std::vector<std::int64_t>>();
        if (static_cast<int>(r.witness.size()) == r.size) {
            entries_[j["field"].get<std::string>()] = std::move(r);
        }
    }
}

void MCache::save(const std::string& path) const {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write cache file " + path);
    std::lock_guard<std::mutex> lock(mu_);
    for (const auto& [id, r] : entries_) {
        nlohmann::json j{{"field", id}, {"M", r.size}, {"witness", r.witness}, {"nodes", r.nodes_explored}};
        out << j.dump() << '\n';
    }
}

bool MCache::lookup(const std::string& field_id, CliqueResult& out) const {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = entries_.find(field_id);
    if (it == entries_.end()) return false;
    out = it->second;
    return true;
}

void MCache::store(const std::string& field_id, const CliqueResult& r) {
    std::lock_guard<std::mutex> lock(mu_);
    entries_[field_id] = r;
}

CliqueResult exact_M(const Field& F, std::int64_t max_q, MCache* cache) {
    if (cache) {
        CliqueResult hit;
        if (cache->lookup(F.id(), hit)) return hit;
    }
    CliqueResult res = max_clique(build_graph(F, max_q));
    if (cache) cache->store(F.id(), res);
    return res;
}

}  // namespace dioph
