#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "tact/presentation.hpp"
#include "tact/rational.hpp"
#include "tact/word.hpp"

namespace tact {

/// Finite connected graph with oriented edge pairs, rational edge lengths and
/// a marking: one closed tightened edge path per free generator, based at the
/// basepoint. Oriented edges are indexed 0..2m-1 with inv(e) = e ^ 1; the
/// geometric edge of e is e / 2 and even indices are the positive orientation.
struct MarkedGraph {
  int num_vertices = 0;
  std::vector<int> efrom;           // size 2m
  std::vector<int> eto;             // size 2m
  std::vector<Rational> elen;       // size m (per geometric edge)
  int basepoint = 0;
  std::vector<std::vector<int>> marking;

  int num_oriented() const { return int(efrom.size()); }
  int num_edges() const { return int(elen.size()); }
  static int inv(int e) { return e ^ 1; }
  int from(int e) const { return efrom[std::size_t(e)]; }
  int to(int e) const { return eto[std::size_t(e)]; }
  const Rational& length(int e) const { return elen[std::size_t(e / 2)]; }

  /// Appends a geometric edge a->b; returns the positive oriented index.
  int add_edge(int a, int b, Rational len) {
    efrom.push_back(a);
    eto.push_back(b);
    efrom.push_back(b);
    eto.push_back(a);
    elen.push_back(std::move(len));
    return num_oriented() - 2;
  }
};

inline void tighten_path(std::vector<int>& path) {
  std::vector<int> out;
  out.reserve(path.size());
  for (int e : path) {
    if (!out.empty() && out.back() == MarkedGraph::inv(e)) out.pop_back();
    else out.push_back(e);
  }
  path = std::move(out);
}

inline std::vector<int> tightened(std::vector<int> path) {
  tighten_path(path);
  return path;
}

inline std::vector<int> inverse_path(const std::vector<int>& path) {
  std::vector<int> out;
  out.reserve(path.size());
  for (auto it = path.rbegin(); it != path.rend(); ++it) out.push_back(MarkedGraph::inv(*it));
  return out;
}

inline bool path_connected_at(const MarkedGraph& g, const std::vector<int>& path, int start) {
  int at = start;
  for (int e : path) {
    if (e < 0 || e >= g.num_oriented()) return false;
    if (g.from(e) != at) return false;
    at = g.to(e);
  }
  return true;
}

inline int path_endpoint(const MarkedGraph& g, const std::vector<int>& path, int start) {
  int at = start;
  for (int e : path) at = g.to(e);
  return at;
}

inline Rational path_length(const MarkedGraph& g, const std::vector<int>& path) {
  Rational r;
  for (int e : path) r += g.length(e);
  return r;
}

inline Rational volume(const MarkedGraph& g) {
  Rational r;
  for (const Rational& l : g.elen) r += l;
  return r;
}

inline int graph_rank(const MarkedGraph& g) { return g.num_edges() - g.num_vertices + 1; }

inline bool is_connected(const MarkedGraph& g) {
  if (g.num_vertices == 0) return false;
  std::vector<char> seen(std::size_t(g.num_vertices), 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int e = 0; e < g.num_oriented(); ++e)
      if (g.from(e) == v && !seen[std::size_t(g.to(e))]) {
        seen[std::size_t(g.to(e))] = 1;
        stack.push_back(g.to(e));
      }
  }
  return std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; });
}

inline void validate_marked_graph(const MarkedGraph& g, const GroupPresentation& pres) {
  if (pres.num_finite() != 0)
    throw std::invalid_argument("marked graph: presentation must be a pure free group");
  if (g.num_vertices <= 0) throw std::invalid_argument("marked graph: no vertices");
  if (g.basepoint < 0 || g.basepoint >= g.num_vertices)
    throw std::invalid_argument("marked graph: bad basepoint");
  for (const Rational& l : g.elen)
    if (!(Rational(0) < l)) throw std::invalid_argument("marked graph: nonpositive edge length");
  if (!is_connected(g)) throw std::invalid_argument("marked graph: disconnected");
  if (graph_rank(g) != pres.free_rank)
    throw std::invalid_argument("marked graph: rank mismatch");
  if (int(g.marking.size()) != pres.free_rank)
    throw std::invalid_argument("marked graph: marking must cover every generator");
  for (const auto& loop : g.marking) {
    if (!path_connected_at(g, loop, g.basepoint))
      throw std::invalid_argument("marked graph: marking path broken");
    if (path_endpoint(g, loop, g.basepoint) != g.basepoint)
      throw std::invalid_argument("marked graph: marking path not closed");
    if (tightened(loop) != loop)
      throw std::invalid_argument("marked graph: marking path not tightened");
    if (loop.empty()) throw std::invalid_argument("marked graph: trivial marking loop");
  }
}

/// Rose with one petal per generator, marking x_i -> petal i.
inline MarkedGraph rose_graph(const GroupPresentation& pres, std::vector<Rational> lengths = {}) {
  MarkedGraph g;
  g.num_vertices = 1;
  g.basepoint = 0;
  for (int i = 0; i < pres.free_rank; ++i) {
    Rational len = lengths.empty() ? Rational(1) : lengths[std::size_t(i)];
    int e = g.add_edge(0, 0, len);
    g.marking.push_back({e});
  }
  return g;
}

/// Theta graph for rank two: two vertices joined by three edges.
inline MarkedGraph theta_graph() {
  MarkedGraph g;
  g.num_vertices = 2;
  g.basepoint = 0;
  int e0 = g.add_edge(0, 1, Rational(1));
  int e1 = g.add_edge(0, 1, Rational(1));
  int e2 = g.add_edge(0, 1, Rational(1));
  g.marking.push_back({e0, MarkedGraph::inv(e1)});
  g.marking.push_back({e1, MarkedGraph::inv(e2)});
  return g;
}

/// Two loops joined by a bridge edge ("dumbbell") for rank two.
inline MarkedGraph dumbbell_graph() {
  MarkedGraph g;
  g.num_vertices = 2;
  g.basepoint = 0;
  int a = g.add_edge(0, 0, Rational(1));
  int br = g.add_edge(0, 1, Rational(1));
  int b = g.add_edge(1, 1, Rational(1));
  g.marking.push_back({a});
  g.marking.push_back({br, b, MarkedGraph::inv(br)});
  return g;
}

/// Tightened edge path spelling the word through the marking.
inline std::vector<int> marking_loop(const MarkedGraph& g, const ReducedWord& w) {
  std::vector<int> path;
  for (const Letter& l : w.letters) {
    const auto& m = g.marking[std::size_t(l.factor)];
    if (l.exp > 0) path.insert(path.end(), m.begin(), m.end());
    else {
      auto r = inverse_path(m);
      path.insert(path.end(), r.begin(), r.end());
    }
  }
  tighten_path(path);
  return path;
}

// --- plain text format ------------------------------------------------------
// vertices <n>
// basepoint <v>
// edge <from> <to> <p/q>          (geometric edges in index order)
// marking <i1> <i2> ...           (oriented: k+1 forward, -(k+1) backward)

inline std::string marked_graph_str(const MarkedGraph& g) {
  std::ostringstream os;
  os << "vertices " << g.num_vertices << "\n";
  os << "basepoint " << g.basepoint << "\n";
  for (int k = 0; k < g.num_edges(); ++k)
    os << "edge " << g.from(2 * k) << " " << g.to(2 * k) << " " << g.elen[std::size_t(k)].str()
       << "\n";
  for (const auto& loop : g.marking) {
    os << "marking";
    for (int e : loop) os << " " << ((e % 2 == 0) ? (e / 2 + 1) : -(e / 2 + 1));
    os << "\n";
  }
  return os.str();
}

inline MarkedGraph parse_marked_graph(const std::string& text) {
  MarkedGraph g;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    std::istringstream ls(line);
    std::string kind;
    if (!(ls >> kind) || kind[0] == '#') continue;
    if (kind == "vertices") ls >> g.num_vertices;
    else if (kind == "basepoint") ls >> g.basepoint;
    else if (kind == "edge") {
      int a, b;
      std::string len;
      if (!(ls >> a >> b >> len)) throw std::invalid_argument("marked graph parse: bad edge line");
      g.add_edge(a, b, parse_rational(len));
    } else if (kind == "marking") {
      std::vector<int> loop;
      int v;
      while (ls >> v) {
        if (v == 0) throw std::invalid_argument("marked graph parse: zero edge index");
        int k = std::abs(v) - 1;
        if (k >= g.num_edges()) throw std::invalid_argument("marked graph parse: edge out of range");
        loop.push_back(v > 0 ? 2 * k : 2 * k + 1);
      }
      g.marking.push_back(std::move(loop));
    } else {
      throw std::invalid_argument("marked graph parse: unknown line '" + kind + "'");
    }
  }
  return g;
}

}  // namespace tact
