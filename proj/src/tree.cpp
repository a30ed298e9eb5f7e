#include "treesearch/tree.hpp"

#include <algorithm>
#include <istream>
#include <set>
#include <sstream>
#include <utility>

#include "treesearch/errors.hpp"

namespace treesearch {

WeightedTree::WeightedTree(int n, std::vector<Edge> edges)
    : n_(n), edges_(std::move(edges)) {
  if (n_ < 1) {
    throw InvalidInstance(InvalidInstance::Code::MalformedLine,
                          "vertex count must be at least 1");
  }
  if (static_cast<int>(edges_.size()) != n_ - 1) {
    throw InvalidInstance(InvalidInstance::Code::MalformedLine,
                          "expected " + std::to_string(n_ - 1) + " edges, got " +
                              std::to_string(edges_.size()));
  }
  std::set<std::pair<int, int>> seen;
  adj_.assign(static_cast<size_t>(n_), {});
  for (size_t id = 0; id < edges_.size(); ++id) {
    Edge& e = edges_[id];
    if (e.u > e.v) std::swap(e.u, e.v);
    if (e.u < 0 || e.v >= n_) {
      throw InvalidInstance(InvalidInstance::Code::VertexOutOfRange,
                            "edge " + std::to_string(id) + " endpoint out of range");
    }
    if (e.cost < 0) {
      throw InvalidInstance(InvalidInstance::Code::NegativeCost,
                            "edge " + std::to_string(id) + " has negative cost");
    }
    if (e.u == e.v) {
      throw InvalidInstance(InvalidInstance::Code::NotATree,
                            "edge " + std::to_string(id) + " is a self-loop");
    }
    if (!seen.insert({e.u, e.v}).second) {
      throw InvalidInstance(InvalidInstance::Code::DuplicateEdge,
                            "duplicate edge {" + std::to_string(e.u) + "," +
                                std::to_string(e.v) + "}");
    }
    adj_[static_cast<size_t>(e.u)].push_back({e.v, static_cast<int>(id)});
    adj_[static_cast<size_t>(e.v)].push_back({e.u, static_cast<int>(id)});
  }
  // n-1 distinct edges: connected iff acyclic; one BFS decides both.
  std::vector<char> seen_v(static_cast<size_t>(n_), 0);
  std::vector<int> queue{0};
  seen_v[0] = 1;
  for (size_t head = 0; head < queue.size(); ++head) {
    for (auto [w, id] : adj_[static_cast<size_t>(queue[head])]) {
      if (!seen_v[static_cast<size_t>(w)]) {
        seen_v[static_cast<size_t>(w)] = 1;
        queue.push_back(w);
      }
    }
  }
  if (static_cast<int>(queue.size()) != n_) {
    throw InvalidInstance(InvalidInstance::Code::NotATree,
                          "edge set is disconnected (hence cyclic)");
  }
}

int WeightedTree::max_degree() const {
  int best = 0;
  for (int v = 0; v < n_; ++v) best = std::max(best, degree(v));
  return best;
}

bool WeightedTree::is_spider() const {
  int branches = 0;
  for (int v = 0; v < n_; ++v) {
    if (degree(v) >= 3 && ++branches > 1) return false;
  }
  return true;
}

WeightedTree WeightedTree::with_edge_cost(int edge_id, Rat cost) const {
  std::vector<Edge> edges = edges_;
  edges.at(static_cast<size_t>(edge_id)).cost = std::move(cost);
  return WeightedTree(n_, std::move(edges));
}

std::string WeightedTree::serialize() const {
  std::string out = std::to_string(n_);
  out += '\n';
  for (const Edge& e : edges_) {
    out += std::to_string(e.u);
    out += ' ';
    out += std::to_string(e.v);
    out += ' ';
    out += format_rational(e.cost);
    out += '\n';
  }
  return out;
}

std::string WeightedTree::digest() const {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : serialize()) {
    h ^= c;
    h *= 1099511628211ull;
  }
  static const char* hex = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<size_t>(i)] = hex[h & 0xf];
    h >>= 4;
  }
  return out;
}

namespace {

std::vector<std::string> tokens_of(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream ss(line);
  std::string tok;
  while (ss >> tok) out.push_back(tok);
  return out;
}

bool parse_int(const std::string& tok, int& out) {
  if (tok.empty()) return false;
  size_t i = 0;
  long long val = 0;
  for (; i < tok.size(); ++i) {
    if (tok[i] < '0' || tok[i] > '9') return false;
    val = val * 10 + (tok[i] - '0');
    if (val > 2'000'000'000) return false;
  }
  out = static_cast<int>(val);
  return true;
}

}  // namespace

WeightedTree parse_instance(std::istream& in) {
  std::string line;
  int line_no = 0;
  int n = -1;
  std::vector<Edge> edges;
  while (std::getline(in, line)) {
    ++line_no;
    auto toks = tokens_of(line);
    if (toks.empty()) {
      // Tolerate blank lines only after all the content.
      std::string rest;
      while (std::getline(in, rest)) {
        ++line_no;
        if (!tokens_of(rest).empty()) {
          throw InvalidInstance(InvalidInstance::Code::MalformedLine,
                                "content after blank line", line_no);
        }
      }
      break;
    }
    if (n < 0) {
      if (toks.size() != 1 || !parse_int(toks[0], n) || n < 1) {
        throw InvalidInstance(InvalidInstance::Code::MalformedLine,
                              "first line must be the vertex count", line_no);
      }
      continue;
    }
    if (toks.size() != 3) {
      throw InvalidInstance(InvalidInstance::Code::MalformedLine,
                            "expected 'u v c'", line_no);
    }
    Edge e;
    if (!parse_int(toks[0], e.u) || !parse_int(toks[1], e.v)) {
      throw InvalidInstance(InvalidInstance::Code::MalformedLine,
                            "bad vertex id", line_no);
    }
    if (e.u >= n || e.v >= n) {
      throw InvalidInstance(InvalidInstance::Code::VertexOutOfRange,
                            "vertex id must be below " + std::to_string(n), line_no);
    }
    if (!try_parse_rational(toks[2], e.cost)) {
      throw InvalidInstance(InvalidInstance::Code::MalformedLine,
                            "bad cost '" + toks[2] + "'", line_no);
    }
    if (e.cost < 0) {
      throw InvalidInstance(InvalidInstance::Code::NegativeCost,
                            "negative cost", line_no);
    }
    edges.push_back(std::move(e));
  }
  if (n < 0) {
    throw InvalidInstance(InvalidInstance::Code::MalformedLine, "empty instance", 1);
  }
  return WeightedTree(n, std::move(edges));
}

WeightedTree parse_instance(const std::string& text) {
  std::istringstream ss(text);
  return parse_instance(ss);
}

InducedSubtree induced_subtree(const WeightedTree& tree, const std::vector<int>& keep) {
  if (keep.empty()) throw PreconditionError("induced_subtree: empty vertex set");
  std::vector<int> verts = keep;
  std::sort(verts.begin(), verts.end());
  if (std::adjacent_find(verts.begin(), verts.end()) != verts.end()) {
    throw PreconditionError("induced_subtree: duplicate vertex");
  }
  if (verts.front() < 0 || verts.back() >= tree.n()) {
    throw PreconditionError("induced_subtree: vertex out of range");
  }
  std::vector<int> new_id(static_cast<size_t>(tree.n()), -1);
  for (size_t i = 0; i < verts.size(); ++i) new_id[static_cast<size_t>(verts[i])] = static_cast<int>(i);

  std::vector<int> edge_ids;
  std::vector<Edge> edges;
  for (int id = 0; id < tree.edge_count(); ++id) {
    const Edge& e = tree.edge(id);
    if (new_id[static_cast<size_t>(e.u)] >= 0 && new_id[static_cast<size_t>(e.v)] >= 0) {
      edge_ids.push_back(id);
      edges.push_back({new_id[static_cast<size_t>(e.u)], new_id[static_cast<size_t>(e.v)], e.cost});
    }
  }
  if (edges.size() + 1 != verts.size()) {
    throw PreconditionError("induced_subtree: vertex set is not connected");
  }
  return InducedSubtree{WeightedTree(static_cast<int>(verts.size()), std::move(edges)),
                        std::move(verts), std::move(edge_ids)};
}

std::pair<std::vector<int>, std::vector<int>> split_by_edge(const WeightedTree& tree,
                                                            int edge_id) {
  const Edge& e = tree.edge(edge_id);
  std::vector<char> on_u(static_cast<size_t>(tree.n()), 0);
  std::vector<int> queue{e.u};
  on_u[static_cast<size_t>(e.u)] = 1;
  for (size_t head = 0; head < queue.size(); ++head) {
    for (auto [w, id] : tree.adjacent(queue[head])) {
      if (id != edge_id && !on_u[static_cast<size_t>(w)]) {
        on_u[static_cast<size_t>(w)] = 1;
        queue.push_back(w);
      }
    }
  }
  std::pair<std::vector<int>, std::vector<int>> out;
  for (int v = 0; v < tree.n(); ++v) {
    (on_u[static_cast<size_t>(v)] ? out.first : out.second).push_back(v);
  }
  return out;
}

}  // namespace treesearch
