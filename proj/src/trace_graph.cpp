#include "brwlab/trace_graph.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

#include "brwlab/errors.hpp"

namespace brw {

namespace {

inline std::uint64_t hash_point(const Coord* p, std::uint32_t d) {
  std::uint64_t h = 0x9e3779b97f4a7c15ULL;
  for (std::uint32_t i = 0; i < d; ++i) {
    h ^= static_cast<std::uint64_t>(static_cast<std::uint32_t>(p[i]));
    h *= 0xbf58476d1ce4e5b9ULL;
    h ^= h >> 29;
  }
  return h;
}

// Open-addressing map from lattice point to vertex id; points live in the
// growing `points` array so probes compare raw coordinates.
class PointInterner {
 public:
  PointInterner(std::uint32_t d, std::size_t expected, std::vector<Coord>& points)
      : d_(d), points_(points) {
    std::size_t cap = 16;
    while (cap < expected * 2) cap <<= 1;
    table_.assign(cap, EMPTY);
    mask_ = cap - 1;
  }

  // returns vertex id, inserting if new
  std::uint32_t intern(const Coord* p, bool* inserted) {
    if ((count_ + 1) * 2 > table_.size()) grow();
    std::size_t slot = hash_point(p, d_) & mask_;
    for (;;) {
      std::uint32_t id = table_[slot];
      if (id == EMPTY) {
        id = static_cast<std::uint32_t>(points_.size() / d_);
        points_.insert(points_.end(), p, p + d_);
        table_[slot] = id;
        ++count_;
        *inserted = true;
        return id;
      }
      if (std::equal(p, p + d_, points_.data() + std::size_t(id) * d_)) {
        *inserted = false;
        return id;
      }
      slot = (slot + 1) & mask_;
    }
  }

 private:
  static constexpr std::uint32_t EMPTY = UINT32_MAX;
  void grow() {
    std::vector<std::uint32_t> old = std::move(table_);
    table_.assign(old.size() * 2, EMPTY);
    mask_ = table_.size() - 1;
    for (std::uint32_t id : old) {
      if (id == EMPTY) continue;
      std::size_t slot = hash_point(points_.data() + std::size_t(id) * d_, d_) & mask_;
      while (table_[slot] != EMPTY) slot = (slot + 1) & mask_;
      table_[slot] = id;
    }
  }
  std::uint32_t d_;
  std::vector<Coord>& points_;
  std::vector<std::uint32_t> table_;
  std::size_t mask_ = 0;
  std::size_t count_ = 0;
};

class EdgeSet {
 public:
  explicit EdgeSet(std::size_t expected) {
    std::size_t cap = 16;
    while (cap < expected * 2) cap <<= 1;
    table_.assign(cap, EMPTY);
    mask_ = cap - 1;
  }
  bool insert(std::uint32_t a, std::uint32_t b) {
    if ((count_ + 1) * 2 > table_.size()) grow();
    std::uint64_t key = pack(a, b);
    std::size_t slot = mix(key) & mask_;
    for (;;) {
      std::uint64_t k = table_[slot];
      if (k == EMPTY) {
        table_[slot] = key;
        ++count_;
        return true;
      }
      if (k == key) return false;
      slot = (slot + 1) & mask_;
    }
  }

 private:
  static constexpr std::uint64_t EMPTY = UINT64_MAX;
  static std::uint64_t pack(std::uint32_t a, std::uint32_t b) {
    if (a > b) std::swap(a, b);
    return (std::uint64_t(a) << 32) | b;
  }
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  void grow() {
    std::vector<std::uint64_t> old = std::move(table_);
    table_.assign(old.size() * 2, EMPTY);
    mask_ = table_.size() - 1;
    for (std::uint64_t k : old) {
      if (k == EMPTY) continue;
      std::size_t slot = mix(k) & mask_;
      while (table_[slot] != EMPTY) slot = (slot + 1) & mask_;
      table_[slot] = k;
    }
  }
  std::vector<std::uint64_t> table_;
  std::size_t mask_ = 0;
  std::size_t count_ = 0;
};

void finish_adjacency(TraceGraph& g) {
  g.num_vertices = static_cast<std::uint32_t>(g.points.size() / g.d);
  g.adj_off.assign(g.num_vertices + 1, 0);
  for (std::size_t e = 0; e < g.edge_u.size(); ++e) {
    ++g.adj_off[g.edge_u[e] + 1];
    ++g.adj_off[g.edge_v[e] + 1];
  }
  for (std::uint32_t v = 0; v < g.num_vertices; ++v) g.adj_off[v + 1] += g.adj_off[v];
  g.adj.resize(2 * g.edge_u.size());
  g.adj_edge.resize(2 * g.edge_u.size());
  std::vector<std::uint32_t> cursor(g.adj_off.begin(), g.adj_off.end() - 1);
  for (std::uint32_t e = 0; e < g.num_edges(); ++e) {
    std::uint32_t a = g.edge_u[e], b = g.edge_v[e];
    g.adj[cursor[a]] = b;
    g.adj_edge[cursor[a]++] = e;
    g.adj[cursor[b]] = a;
    g.adj_edge[cursor[b]++] = e;
  }
}

}  // namespace

bool TraceGraph::point_less(std::uint32_t a, std::uint32_t b) const {
  const Coord* pa = points.data() + std::size_t(a) * d;
  const Coord* pb = points.data() + std::size_t(b) * d;
  return std::lexicographical_compare(pa, pa + d, pb, pb + d);
}

TraceGraph build_trace(const SpatialTree& st) {
  SpatialTree const* one = &st;
  std::vector<std::uint32_t> roots;
  return build_trace_union({one, 1}, {}, &roots);
}

TraceGraph build_trace_union(std::span<const SpatialTree> trees,
                             std::span<const std::pair<std::uint32_t, std::uint32_t>> root_edges,
                             std::vector<std::uint32_t>* roots) {
  if (trees.empty()) throw Error("empty tree union");
  TraceGraph g;
  g.d = trees[0].d;
  std::size_t total = 0;
  for (const auto& t : trees) total += t.tree.n;
  g.points.reserve(total * g.d / 2);
  PointInterner interner(g.d, total, g.points);
  EdgeSet edges(total);
  g.edge_u.reserve(total);
  g.edge_v.reserve(total);
  std::vector<std::uint32_t> root_ids;
  root_ids.reserve(trees.size());
  bool first_tree = true;
  for (const auto& st : trees) {
    if (st.d != g.d) throw Error("dimension mismatch in union");
    std::vector<std::uint32_t> map(st.tree.n);
    for (std::uint32_t v = 0; v < st.tree.n; ++v) {
      bool inserted;
      map[v] = interner.intern(st.pos.data() + std::size_t(v) * g.d, &inserted);
      if (v > 0) {
        std::uint32_t a = map[st.tree.parent[v]], b = map[v];
        if (edges.insert(a, b)) {
          g.edge_u.push_back(a);
          g.edge_v.push_back(b);
        }
      }
    }
    root_ids.push_back(map[0]);
    if (first_tree) {
      g.tree_to_graph = std::move(map);
      g.origin = g.tree_to_graph[0];
      first_tree = false;
    }
  }
  for (auto [ta, tb] : root_edges) {
    std::uint32_t a = root_ids.at(ta), b = root_ids.at(tb);
    if (a != b && edges.insert(a, b)) {
      g.edge_u.push_back(a);
      g.edge_v.push_back(b);
    }
  }
  if (roots) *roots = std::move(root_ids);
  finish_adjacency(g);
  return g;
}

std::vector<std::int32_t> bfs_distances(const TraceGraph& g, std::uint32_t source) {
  std::vector<std::int32_t> dist(g.num_vertices, -1);
  std::vector<std::uint32_t> queue;
  queue.reserve(g.num_vertices);
  dist[source] = 0;
  queue.push_back(source);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    std::uint32_t v = queue[head];
    for (std::uint32_t i = g.adj_off[v]; i < g.adj_off[v + 1]; ++i) {
      std::uint32_t w = g.adj[i];
      if (dist[w] < 0) {
        dist[w] = dist[v] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

VolumeProfiles cumulative_volumes(const SpatialTree& st) {
  VolumeProfiles prof;
  const std::uint32_t n = st.tree.n;
  prof.vertices.assign(n + 1, 0);
  prof.edges.assign(n + 1, 0);
  std::vector<Coord> pts;
  pts.reserve(std::size_t(n) * st.d);
  PointInterner interner(st.d, n, pts);
  EdgeSet edges(n);
  std::vector<std::uint32_t> map(n);
  std::uint32_t vcount = 0, ecount = 0;
  for (std::uint32_t v = 0; v < n; ++v) {
    bool inserted;
    map[v] = interner.intern(st.pos.data() + std::size_t(v) * st.d, &inserted);
    if (inserted) ++vcount;
    if (v > 0 && edges.insert(map[st.tree.parent[v]], map[v])) ++ecount;
    prof.vertices[v + 1] = vcount;
    prof.edges[v + 1] = ecount;
  }
  return prof;
}

void write_trace(std::ostream& os, const TraceGraph& g, const std::string& tag) {
  os << "trace v1 " << tag << "\n";
  os << g.d << " " << g.num_vertices << " " << g.num_edges() << " " << g.origin << "\n";
  for (std::uint32_t v = 0; v < g.num_vertices; ++v) {
    auto p = g.point(v);
    for (std::uint32_t i = 0; i < g.d; ++i) os << p[i] << (i + 1 == g.d ? "" : " ");
    os << "\n";
  }
  for (std::uint32_t e = 0; e < g.num_edges(); ++e) os << g.edge_u[e] << " " << g.edge_v[e] << "\n";
}

TraceGraph read_trace(std::istream& is) {
  std::string magic, version, tag;
  is >> magic >> version;
  std::getline(is, tag);
  if (magic != "trace" || version != "v1") throw Error("bad trace header");
  TraceGraph g;
  std::uint32_t ne = 0;
  is >> g.d >> g.num_vertices >> ne >> g.origin;
  g.points.resize(std::size_t(g.num_vertices) * g.d);
  for (auto& c : g.points) is >> c;
  g.edge_u.resize(ne);
  g.edge_v.resize(ne);
  for (std::uint32_t e = 0; e < ne; ++e) is >> g.edge_u[e] >> g.edge_v[e];
  if (!is) throw Error("truncated trace file");
  finish_adjacency(g);
  return g;
}

void write_tree(std::ostream& os, const PlaneTree& t, const std::string& law_name,
                std::uint64_t seed) {
  os << "tree v1 " << t.n << " " << law_name << " " << seed << "\n";
  for (std::uint32_t v = 0; v < t.n; ++v) os << t.parent[v] << (v + 1 == t.n ? "\n" : " ");
}

PlaneTree read_tree(std::istream& is) {
  std::string magic, version, law;
  std::uint32_t n;
  std::uint64_t seed;
  is >> magic >> version >> n >> law >> seed;
  if (magic != "tree" || version != "v1") throw Error("bad tree header");
  std::vector<std::int32_t> parent(n);
  for (auto& p : parent) is >> p;
  if (!is) throw Error("truncated tree file");
  return PlaneTree::from_parent_array(parent);
}

}  // namespace brw
