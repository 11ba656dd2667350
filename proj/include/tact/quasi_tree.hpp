#pragma once

#include <algorithm>
#include <cstdint>
#include <queue>
#include <sstream>

#include "tact/projection.hpp"
#include "tact/rng.hpp"

namespace tact {

/// Finite window of the projection complex C_K: one abstract copy of each
/// axis (integer positions in [-R, R]) with unit intra-axis edges, and, for
/// every pair with no K-large projection, edges of length K joining every
/// point of pi_Y(X) to every point of pi_X(Y).
///
/// Metric queries run on an equivalent "portal" graph: a hub node per pair,
/// legs of doubled weight K to both projection intervals. A hub path between
/// two points of one interval costs K in true units, never shorter than the
/// intra-axis route through an interval of diameter <= theta < K, so shortest
/// paths agree with the expanded complex.
struct QuasiTreeGraph {
  std::int64_t K = 1;
  std::int64_t window_radius = 0;
  std::size_t n_axes = 0;
  std::size_t truncated_pairs = 0;
  std::vector<std::string> warnings;

  struct Portal {
    std::size_t x, y;
    std::int64_t x_lo, x_hi;  // interval pi_X(Y) on axis x, clamped
    std::int64_t y_lo, y_hi;  // interval pi_Y(X) on axis y, clamped
  };
  std::vector<Portal> portals;

  // CSR index: axis node -> portal ids covering it
  std::vector<std::size_t> node_portal_offset;
  std::vector<std::uint32_t> node_portal_items;

  std::int64_t nodes_per_axis() const { return 2 * window_radius + 1; }
  std::size_t axis_nodes() const { return n_axes * std::size_t(nodes_per_axis()); }
  std::size_t total_nodes() const { return axis_nodes() + portals.size(); }
  std::size_t node_id(std::size_t axis, std::int64_t pos) const {
    return axis * std::size_t(nodes_per_axis()) + std::size_t(pos + window_radius);
  }
  std::size_t axis_of_node(std::size_t id) const { return id / std::size_t(nodes_per_axis()); }
  std::int64_t pos_of_node(std::size_t id) const {
    return std::int64_t(id % std::size_t(nodes_per_axis())) - window_radius;
  }
};

inline QuasiTreeGraph build_complex(const ProjectionFamily& fam, const ProjectionTable& t,
                                    std::int64_t K, std::int64_t window_radius,
                                    std::int64_t theta_hint = -1) {
  if (K < 1) throw std::invalid_argument("build_complex: K must be at least 1");
  if (window_radius < 0 || fam.size() == 0)
    throw std::invalid_argument("build_complex: empty window");
  QuasiTreeGraph g;
  g.K = K;
  g.window_radius = window_radius;
  g.n_axes = fam.size();
  if (theta_hint >= 0 && K < 4 * theta_hint)
    g.warnings.push_back("K below 4*theta; hyperbolicity of the window is not promised");
  std::size_t n = fam.size();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = x + 1; y < n; ++y) {
      bool large = false;
      for (std::size_t u = 0; u < n && !large; ++u) {
        if (u == x || u == y) continue;
        if (t.d(u, x, y) > K) large = true;
      }
      if (large) continue;
      QuasiTreeGraph::Portal p;
      p.x = x;
      p.y = y;
      p.x_lo = std::max(t.lo_at(x, y), -window_radius);
      p.x_hi = std::min(t.hi_at(x, y), window_radius);
      p.y_lo = std::max(t.lo_at(y, x), -window_radius);
      p.y_hi = std::min(t.hi_at(y, x), window_radius);
      if (p.x_lo > p.x_hi || p.y_lo > p.y_hi) {
        ++g.truncated_pairs;
        continue;
      }
      g.portals.push_back(p);
    }
  // CSR of portals per axis node
  std::vector<std::size_t> counts(g.axis_nodes() + 1, 0);
  auto touch = [&](std::size_t axis, std::int64_t lo, std::int64_t hi, auto&& fn) {
    for (std::int64_t q = lo; q <= hi; ++q) fn(g.node_id(axis, q));
  };
  for (const auto& p : g.portals) {
    touch(p.x, p.x_lo, p.x_hi, [&](std::size_t id) { ++counts[id + 1]; });
    touch(p.y, p.y_lo, p.y_hi, [&](std::size_t id) { ++counts[id + 1]; });
  }
  for (std::size_t i = 1; i < counts.size(); ++i) counts[i] += counts[i - 1];
  g.node_portal_offset = counts;
  g.node_portal_items.resize(counts.back());
  std::vector<std::size_t> cursor = g.node_portal_offset;
  for (std::size_t pid = 0; pid < g.portals.size(); ++pid) {
    const auto& p = g.portals[pid];
    touch(p.x, p.x_lo, p.x_hi,
          [&](std::size_t id) { g.node_portal_items[cursor[id]++] = std::uint32_t(pid); });
    touch(p.y, p.y_lo, p.y_hi,
          [&](std::size_t id) { g.node_portal_items[cursor[id]++] = std::uint32_t(pid); });
  }
  return g;
}

struct DijkstraResult {
  std::vector<std::int64_t> dist2;  // doubled weights; -1 unreachable
  std::vector<std::int64_t> parent;
};

inline DijkstraResult dijkstra(const QuasiTreeGraph& g, std::size_t source) {
  DijkstraResult res;
  res.dist2.assign(g.total_nodes(), -1);
  res.parent.assign(g.total_nodes(), -1);
  using Item = std::pair<std::int64_t, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
  auto relax = [&](std::size_t to, std::int64_t d, std::size_t from) {
    if (res.dist2[to] < 0 || d < res.dist2[to]) {
      res.dist2[to] = d;
      res.parent[to] = std::int64_t(from);
      heap.push({d, to});
    }
  };
  res.dist2[source] = 0;
  heap.push({0, source});
  std::size_t axis_count = g.axis_nodes();
  while (!heap.empty()) {
    auto [d, v] = heap.top();
    heap.pop();
    if (d != res.dist2[v]) continue;
    if (v < axis_count) {
      std::int64_t pos = g.pos_of_node(v);
      if (pos + 1 <= g.window_radius) relax(v + 1, d + 2, v);
      if (pos - 1 >= -g.window_radius) relax(v - 1, d + 2, v);
      for (std::size_t i = g.node_portal_offset[v]; i < g.node_portal_offset[v + 1]; ++i)
        relax(axis_count + g.node_portal_items[i], d + g.K, v);
    } else {
      const auto& p = g.portals[v - axis_count];
      for (std::int64_t q = p.x_lo; q <= p.x_hi; ++q) relax(g.node_id(p.x, q), d + g.K, v);
      for (std::int64_t q = p.y_lo; q <= p.y_hi; ++q) relax(g.node_id(p.y, q), d + g.K, v);
    }
  }
  return res;
}

/// Connected components over axis nodes (portal nodes assigned alongside).
inline std::vector<std::int32_t> components(const QuasiTreeGraph& g) {
  std::vector<std::int32_t> comp(g.total_nodes(), -1);
  std::int32_t next = 0;
  std::size_t axis_count = g.axis_nodes();
  for (std::size_t s = 0; s < g.total_nodes(); ++s) {
    if (comp[s] >= 0) continue;
    std::vector<std::size_t> stack{s};
    comp[s] = next;
    while (!stack.empty()) {
      std::size_t v = stack.back();
      stack.pop_back();
      auto push = [&](std::size_t w) {
        if (comp[w] < 0) {
          comp[w] = next;
          stack.push_back(w);
        }
      };
      if (v < axis_count) {
        std::int64_t pos = g.pos_of_node(v);
        if (pos + 1 <= g.window_radius) push(v + 1);
        if (pos - 1 >= -g.window_radius) push(v - 1);
        for (std::size_t i = g.node_portal_offset[v]; i < g.node_portal_offset[v + 1]; ++i)
          push(axis_count + g.node_portal_items[i]);
      } else {
        const auto& p = g.portals[v - axis_count];
        for (std::int64_t q = p.x_lo; q <= p.x_hi; ++q) push(g.node_id(p.x, q));
        for (std::int64_t q = p.y_lo; q <= p.y_hi; ++q) push(g.node_id(p.y, q));
      }
    }
    ++next;
  }
  return comp;
}

/// Distance sandwich for same-axis pairs: rho/4 <= d_C <= 2 rho + 3K in the
/// proof regime K > 11 theta. Samples whose shortest path touches the window
/// boundary are counted as window artifacts and excluded from the verdict.
inline CheckReport distance_sandwich_check(const QuasiTreeGraph& g, std::int64_t theta,
                                           int samples, std::uint64_t seed) {
  CheckReport r;
  r.lemma_id = "distance-sandwich";
  r.inputs = {{"K", g.K}, {"theta", theta}, {"samples", samples}};
  if (g.K <= 11 * theta) {
    r.verdict = "skipped";
    r.reason = "regime requires K > 11 theta";
    return r;
  }
  auto rng = make_rng(seed);
  int per_source = 25;
  int artifacts = 0, violations = 0, checked = 0;
  while (checked + artifacts < samples) {
    std::size_t axis = std::size_t(uniform_int(rng, 0, std::int64_t(g.n_axes) - 1));
    std::int64_t p = uniform_int(rng, -g.window_radius, g.window_radius);
    std::size_t src = g.node_id(axis, p);
    DijkstraResult d = dijkstra(g, src);
    for (int j = 0; j < per_source && checked + artifacts < samples; ++j) {
      std::int64_t q = uniform_int(rng, -g.window_radius, g.window_radius);
      std::size_t dst = g.node_id(axis, q);
      std::int64_t rho = std::abs(p - q);
      std::int64_t dc2 = d.dist2[dst];
      if (dc2 < 0) continue;
      bool artifact = false;
      for (std::int64_t at = std::int64_t(dst); at >= 0; at = d.parent[std::size_t(at)]) {
        if (std::size_t(at) < g.axis_nodes() &&
            std::abs(g.pos_of_node(std::size_t(at))) == g.window_radius) {
          artifact = true;
          break;
        }
        if (at == std::int64_t(src)) break;
      }
      if (artifact) {
        ++artifacts;
        continue;
      }
      ++checked;
      // dc2 = 2 d_C: the sandwich reads rho <= 2 dc2 and dc2 <= 4 rho + 6K
      if (!(rho <= 2 * dc2 && dc2 <= 4 * rho + 6 * g.K)) ++violations;
    }
  }
  r.computed = {{"checked", checked}, {"window_artifacts", artifacts}, {"violations", violations}};
  r.verdict = violations == 0 ? "pass" : "fail";
  return r;
}

struct HyperbolicityEstimate {
  double delta_hat = 0;
  int component_count = 0;
  int quadruples = 0;
};

/// Four-point condition probe: delta_hat = max over sampled quadruples of
/// (largest pair-sum - middle pair-sum) / 2, per connected component.
inline HyperbolicityEstimate hyperbolicity_probe(const QuasiTreeGraph& g, int quadruples,
                                                 std::uint64_t seed) {
  HyperbolicityEstimate est;
  auto comp = components(g);
  std::int32_t ncomp = 0;
  for (auto c : comp) ncomp = std::max(ncomp, c + 1);
  est.component_count = int(ncomp);
  auto rng = make_rng(seed);

  // source pool per component, capped
  std::map<std::int32_t, std::vector<std::size_t>> pools;
  std::size_t axis_count = g.axis_nodes();
  for (int tries = 0; tries < 4000; ++tries) {
    std::size_t v = std::size_t(uniform_int(rng, 0, std::int64_t(axis_count) - 1));
    auto& pool = pools[comp[v]];
    if (pool.size() < 48 && std::find(pool.begin(), pool.end(), v) == pool.end())
      pool.push_back(v);
  }
  for (auto& [c, pool] : pools) {
    if (pool.size() < 4) continue;
    std::vector<DijkstraResult> maps;
    maps.reserve(pool.size());
    for (std::size_t v : pool) maps.push_back(dijkstra(g, v));
    auto dd = [&](std::size_t i, std::size_t j) { return maps[i].dist2[pool[j]]; };
    int per_comp = quadruples / std::max(1, int(pools.size()));
    int made = 0;
    for (std::int64_t guard = 0; made < per_comp && guard < std::int64_t(per_comp) * 20;
         ++guard) {
      std::size_t i = std::size_t(uniform_int(rng, 0, std::int64_t(pool.size()) - 1));
      std::size_t j = std::size_t(uniform_int(rng, 0, std::int64_t(pool.size()) - 1));
      std::size_t k = std::size_t(uniform_int(rng, 0, std::int64_t(pool.size()) - 1));
      std::size_t l = std::size_t(uniform_int(rng, 0, std::int64_t(pool.size()) - 1));
      if (i == j || i == k || i == l || j == k || j == l || k == l) continue;
      ++made;
      std::int64_t s1 = dd(i, j) + dd(k, l);
      std::int64_t s2 = dd(i, k) + dd(j, l);
      std::int64_t s3 = dd(i, l) + dd(j, k);
      std::int64_t hi = std::max({s1, s2, s3});
      std::int64_t mid = s1 + s2 + s3 - hi - std::min({s1, s2, s3});
      est.delta_hat = std::max(est.delta_hat, double(hi - mid) / 4.0);
      ++est.quadruples;
    }
  }
  return est;
}

// --- exports ------------------------------------------------------------

inline std::string complex_to_dot(const QuasiTreeGraph& g) {
  std::ostringstream os;
  os << "graph quasi_tree {\n";
  for (std::size_t a = 0; a < g.n_axes; ++a)
    for (std::int64_t p = -g.window_radius; p < g.window_radius; ++p)
      os << "  y" << a << "_" << (p + g.window_radius) << " -- y" << a << "_"
         << (p + 1 + g.window_radius) << " [weight=1];\n";
  for (const auto& p : g.portals)
    for (std::int64_t qx = p.x_lo; qx <= p.x_hi; ++qx)
      for (std::int64_t qy = p.y_lo; qy <= p.y_hi; ++qy)
        os << "  y" << p.x << "_" << (qx + g.window_radius) << " -- y" << p.y << "_"
           << (qy + g.window_radius) << " [weight=" << g.K << "];\n";
  os << "}\n";
  return os.str();
}

inline std::string complex_to_adjacency(const QuasiTreeGraph& g) {
  std::ostringstream os;
  os << "# node node weight\n";
  for (std::size_t a = 0; a < g.n_axes; ++a)
    for (std::int64_t p = -g.window_radius; p < g.window_radius; ++p)
      os << g.node_id(a, p) << " " << g.node_id(a, p + 1) << " 1\n";
  for (const auto& p : g.portals)
    for (std::int64_t qx = p.x_lo; qx <= p.x_hi; ++qx)
      for (std::int64_t qy = p.y_lo; qy <= p.y_hi; ++qy)
        os << g.node_id(p.x, qx) << " " << g.node_id(p.y, qy) << " " << g.K << "\n";
  return os.str();
}

}  // namespace tact
