#include "brwlab/graph_spatial_tree.hpp"

#include <algorithm>
#include <cmath>

#include "brwlab/errors.hpp"

namespace brw {

namespace {

struct CodeBuilder {
  const GraphSpatialTree& t;
  std::vector<std::vector<std::uint32_t>> kids;

  explicit CodeBuilder(const GraphSpatialTree& tree) : t(tree), kids(tree.n) {
    for (std::uint32_t v = 1; v < t.n; ++v) kids[t.parent[v]].push_back(v);
  }

  std::string code(std::uint32_t v, std::vector<std::uint32_t>* edge_order) const {
    std::vector<std::uint32_t> marks = t.labels.empty() ? std::vector<std::uint32_t>{} : t.labels[v];
    std::sort(marks.begin(), marks.end());
    std::string s = "(";
    for (std::size_t i = 0; i < marks.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(marks[i]);
    }
    std::vector<std::pair<std::string, std::uint32_t>> child_codes;
    std::vector<std::vector<std::uint32_t>> child_orders(kids[v].size());
    for (std::size_t i = 0; i < kids[v].size(); ++i) {
      std::vector<std::uint32_t> sub;
      child_codes.push_back({code(kids[v][i], &sub), kids[v][i]});
      child_orders[i] = std::move(sub);
    }
    std::vector<std::size_t> idx(child_codes.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
      return child_codes[a].first < child_codes[b].first;
    });
    for (std::size_t i : idx) {
      s += child_codes[i].first;
      if (edge_order) {
        edge_order->push_back(child_codes[i].second);
        for (auto e : child_orders[i]) edge_order->push_back(e);
      }
    }
    s += ")";
    return s;
  }
};

}  // namespace

std::string GraphSpatialTree::shape_code() const {
  if (n == 0) return "()";
  CodeBuilder cb(*this);
  return cb.code(0, nullptr);
}

double GraphSpatialTree::total_length() const {
  double s = 0.0;
  for (std::uint32_t v = 1; v < n; ++v) s += length[v];
  return s;
}

double spatial_tree_distance_D(const GraphSpatialTree& a, const GraphSpatialTree& b,
                               std::uint32_t samples_per_edge) {
  if (a.dim != b.dim) throw Error("dimension mismatch in D metric");
  // canonical edge order is the child list of the code traversal
  CodeBuilder ca(a), cb(b);
  std::vector<std::uint32_t> ea, eb;
  std::string code_a = ca.code(0, &ea);
  std::string code_b = cb.code(0, &eb);
  if (code_a != code_b) return 1.0;  // d_1 = infinity, capped
  double d1 = 0.0;
  for (std::size_t i = 0; i < ea.size(); ++i)
    d1 = std::max(d1, std::abs(a.length[ea[i]] - b.length[eb[i]]));
  auto point = [](const GraphSpatialTree& t, std::uint32_t v, double alpha, std::uint32_t i) {
    // position at fraction alpha along the parent->v edge, coordinate i
    const double* pv = t.embedding.data() + std::size_t(v) * t.dim;
    const double* pp = t.embedding.data() + std::size_t(t.parent[v]) * t.dim;
    return pp[i] + alpha * (pv[i] - pp[i]);
  };
  double d2 = 0.0;
  // the homeomorphism maps fraction alpha of edge e_i to fraction alpha of
  // the corresponding edge, so sampling matched fractions suffices; vertex
  // ends are alpha = 0, 1
  for (std::size_t i = 0; i < ea.size(); ++i) {
    for (std::uint32_t s = 0; s <= samples_per_edge; ++s) {
      double alpha = double(s) / double(samples_per_edge);
      double dist2 = 0.0;
      for (std::uint32_t c = 0; c < a.dim; ++c) {
        double diff = point(a, ea[i], alpha, c) - point(b, eb[i], alpha, c);
        dist2 += diff * diff;
      }
      d2 = std::max(d2, std::sqrt(dist2));
    }
  }
  if (a.n == 1) {
    // single-vertex trees: compare root embeddings directly
    double dist2 = 0.0;
    for (std::uint32_t c = 0; c < a.dim; ++c) {
      double diff = a.embedding[c] - b.embedding[c];
      dist2 += diff * diff;
    }
    d2 = std::sqrt(dist2);
  }
  return std::min(d1 + d2, 1.0);
}

}  // namespace brw
