#include "treesearch/ts.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <utility>

#include <json.hpp>

#include "treesearch/errors.hpp"
#include "treesearch/exact.hpp"
#include "treesearch/spider.hpp"

namespace treesearch {

using nlohmann::json;

int paper_t(int n) {
  if (n < 4) throw PreconditionError("t formula needs n >= 4");
  // Largest b with 2^(2^b) <= n; int-sized n keeps b <= 4 (t <= 64).
  int b = 1;
  for (int nb = 2; nb <= 4; ++nb) {
    if (n >= (1LL << (1 << nb))) b = nb;
  }
  return 1 << (b + 2);
}

Rat approx_bound(int n) {
  if (n < 4) throw PreconditionError("approximation bound needs n >= 4");
  int a = 0;
  while ((1LL << (a + 1)) <= n) ++a;
  if ((1LL << a) == n && (a & (a - 1)) == 0) {
    int b = 0;
    while ((1 << (b + 1)) <= a) ++b;
    return Rat(4 * a, b);  // both logs exact
  }
  const long double lg = std::log2l(static_cast<long double>(n));
  const long double val = 4.0L * lg / std::log2l(lg);
  // Dyadic upper enclosure: one ulp above the rounded value, never below the
  // real one. Callers compare ratios against this, so erring up is the sound
  // direction (and the error is ~2^-40, noise next to ratios near 1).
  const long long denom = 1LL << 40;
  const long long scaled = llroundl(val * static_cast<long double>(denom)) + 1;
  return Rat(Int(scaled), Int(denom));
}

int centroid(const WeightedTree& tree, const std::vector<int>& within) {
  if (within.empty()) throw PreconditionError("centroid of an empty set");
  const int n = tree.n();
  const int total = static_cast<int>(within.size());
  std::vector<char> member(static_cast<size_t>(n), 0);
  for (int v : within) {
    if (v < 0 || v >= n) throw PreconditionError("centroid: vertex out of range");
    if (member[static_cast<size_t>(v)]) throw PreconditionError("centroid: duplicate vertex");
    member[static_cast<size_t>(v)] = 1;
  }
  std::vector<int> parent(static_cast<size_t>(n), -2);
  std::vector<int> order{within.front()};
  parent[static_cast<size_t>(within.front())] = -1;
  for (size_t head = 0; head < order.size(); ++head) {
    for (auto [w, eid] : tree.adjacent(order[head])) {
      if (member[static_cast<size_t>(w)] && parent[static_cast<size_t>(w)] == -2) {
        parent[static_cast<size_t>(w)] = order[head];
        order.push_back(w);
      }
    }
  }
  if (static_cast<int>(order.size()) != total) {
    throw PreconditionError("centroid: vertex set is disconnected");
  }
  std::vector<int> size(static_cast<size_t>(n), 1);
  std::vector<int> worst(static_cast<size_t>(n), 0);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const int p = parent[static_cast<size_t>(*it)];
    if (p >= 0) {
      size[static_cast<size_t>(p)] += size[static_cast<size_t>(*it)];
      worst[static_cast<size_t>(p)] = std::max(worst[static_cast<size_t>(p)], size[static_cast<size_t>(*it)]);
    }
  }
  for (int v = 0; v < n; ++v) {
    if (member[static_cast<size_t>(v)]) {
      worst[static_cast<size_t>(v)] = std::max(worst[static_cast<size_t>(v)], total - size[static_cast<size_t>(v)]);
      if (2 * worst[static_cast<size_t>(v)] <= total) return v;  // ascending scan: ties go low
    }
  }
  throw std::logic_error("tree without a centroid");
}

TSTrace build_skeleton(const WeightedTree& tree, int t) {
  if (t < 1) throw PreconditionError("skeleton needs t >= 1");
  const int n = tree.n();
  std::vector<char> in_s(static_cast<size_t>(n), 0);
  int s_count = 0;
  TSTrace trace;

  std::vector<int> comp;
  for (int iter = 0; iter < t && s_count < n; ++iter) {
    // Largest component of T - S; ascending seeds make ties favour the
    // component holding the smallest vertex.
    std::vector<char> seen = in_s;
    std::vector<int> largest;
    for (int seed = 0; seed < n; ++seed) {
      if (seen[static_cast<size_t>(seed)]) continue;
      comp.assign(1, seed);
      seen[static_cast<size_t>(seed)] = 1;
      for (size_t head = 0; head < comp.size(); ++head) {
        for (auto [w, eid] : tree.adjacent(comp[head])) {
          if (!seen[static_cast<size_t>(w)]) {
            seen[static_cast<size_t>(w)] = 1;
            comp.push_back(w);
          }
        }
      }
      if (comp.size() > largest.size()) largest = comp;
    }

    const int x = centroid(tree, largest);
    trace.centroids.push_back(x);
    if (s_count == 0) {
      in_s[static_cast<size_t>(x)] = 1;
      ++s_count;
      continue;
    }
    // Minimal subtree containing S and x: S plus x's path to its gate into S.
    std::vector<int> parent(static_cast<size_t>(n), -2);
    std::vector<int> queue{x};
    parent[static_cast<size_t>(x)] = -1;
    int gate = -1;
    for (size_t head = 0; head < queue.size() && gate < 0; ++head) {
      for (auto [w, eid] : tree.adjacent(queue[head])) {
        if (parent[static_cast<size_t>(w)] != -2) continue;
        parent[static_cast<size_t>(w)] = queue[head];
        if (in_s[static_cast<size_t>(w)]) {
          gate = w;
          break;
        }
        queue.push_back(w);
      }
    }
    for (int v = parent[static_cast<size_t>(gate)]; v != -1; v = parent[static_cast<size_t>(v)]) {
      in_s[static_cast<size_t>(v)] = 1;
      ++s_count;
    }
  }

  for (int v = 0; v < n; ++v) {
    if (in_s[static_cast<size_t>(v)]) trace.skeleton.push_back(v);
  }
  // X: the picked centroids plus skeleton vertices of skeleton-degree >= 3.
  std::vector<char> in_x(static_cast<size_t>(n), 0);
  for (int x : trace.centroids) in_x[static_cast<size_t>(x)] = 1;
  for (int v : trace.skeleton) {
    int deg_s = 0;
    for (auto [w, eid] : tree.adjacent(v)) deg_s += in_s[static_cast<size_t>(w)];
    if (deg_s >= 3) in_x[static_cast<size_t>(v)] = 1;
  }
  for (int v = 0; v < n; ++v) {
    if (in_x[static_cast<size_t>(v)]) trace.branch_vertices.push_back(v);
  }
  return trace;
}

void contract_to_Y(TSTrace& trace, const WeightedTree& tree) {
  if (trace.branch_vertices.empty()) {
    throw PreconditionError("contract_to_Y: run build_skeleton first");
  }
  const int n = tree.n();
  trace.x_vertices = trace.branch_vertices;
  const int k = static_cast<int>(trace.x_vertices.size());

  std::vector<char> in_s(static_cast<size_t>(n), 0);
  for (int v : trace.skeleton) in_s[static_cast<size_t>(v)] = 1;
  std::vector<int> yid(static_cast<size_t>(n), -1);
  for (int i = 0; i < k; ++i) yid[static_cast<size_t>(trace.x_vertices[static_cast<size_t>(i)])] = i;

  // Anchored DFS over S from the first branch vertex: carry the cheapest edge
  // (ties to the smaller id) since the nearest X ancestor; each X vertex hit
  // closes one X-free path and becomes the new anchor.
  struct Found {
    int yu, yv;      // canonical aux endpoints
    Rat cost;
    int orig_edge;
    int toward_u;    // endpoint of orig_edge on yu's side
  };
  std::vector<Found> found;
  struct Item {
    int v;
    int parent_edge;
    int anchor;
    int best_edge;  // -1 when fresh from the anchor
    int best_top;   // endpoint of best_edge nearer the anchor
  };
  std::vector<Item> stack{{trace.x_vertices.front(), -1, trace.x_vertices.front(), -1, -1}};
  while (!stack.empty()) {
    Item it = stack.back();
    stack.pop_back();
    if (yid[static_cast<size_t>(it.v)] >= 0 && it.v != it.anchor) {
      const Edge& be = tree.edge(it.best_edge);
      const int ya = yid[static_cast<size_t>(it.anchor)];
      const int yb = yid[static_cast<size_t>(it.v)];
      Found f;
      f.yu = std::min(ya, yb);
      f.yv = std::max(ya, yb);
      f.cost = be.cost;
      f.orig_edge = it.best_edge;
      f.toward_u = ya < yb ? it.best_top : be.u + be.v - it.best_top;
      found.push_back(std::move(f));
      it.anchor = it.v;
      it.best_edge = -1;
    }
    for (auto [w, eid] : tree.adjacent(it.v)) {
      if (eid == it.parent_edge || !in_s[static_cast<size_t>(w)]) continue;
      int nbe = it.best_edge;
      int nbt = it.best_top;
      if (nbe < 0 || tree.edge(eid).cost < tree.edge(nbe).cost ||
          (tree.edge(eid).cost == tree.edge(nbe).cost && eid < nbe)) {
        nbe = eid;
        nbt = it.v;
      }
      stack.push_back({w, eid, it.anchor, nbe, nbt});
    }
  }

  std::sort(found.begin(), found.end(), [](const Found& a, const Found& b) {
    return std::pair(a.yu, a.yv) < std::pair(b.yu, b.yv);
  });
  std::vector<Edge> y_edges;
  trace.aux_edges.clear();
  trace.z_edges.clear();
  for (const Found& f : found) {
    y_edges.push_back({f.yu, f.yv, f.cost});
    trace.aux_edges.push_back({f.orig_edge, f.toward_u});
    trace.z_edges.push_back(f.orig_edge);
  }
  trace.aux = WeightedTree(k, std::move(y_edges));
  std::sort(trace.z_edges.begin(), trace.z_edges.end());

  // Components of S - Z (these are spiders, one branch vertex each).
  std::vector<char> cut(static_cast<size_t>(tree.edge_count()), 0);
  for (int e : trace.z_edges) cut[static_cast<size_t>(e)] = 1;
  trace.spider_components.clear();
  {
    std::vector<char> seen(static_cast<size_t>(n), 0);
    for (int seed : trace.skeleton) {
      if (seen[static_cast<size_t>(seed)]) continue;
      std::vector<int> comp{seed};
      seen[static_cast<size_t>(seed)] = 1;
      for (size_t head = 0; head < comp.size(); ++head) {
        for (auto [w, eid] : tree.adjacent(comp[head])) {
          if (in_s[static_cast<size_t>(w)] && !cut[static_cast<size_t>(eid)] &&
              !seen[static_cast<size_t>(w)]) {
            seen[static_cast<size_t>(w)] = 1;
            comp.push_back(w);
          }
        }
      }
      std::sort(comp.begin(), comp.end());
      trace.spider_components.push_back(std::move(comp));
    }
  }

  // Components of T - S with their attachment edges.
  trace.hanging.clear();
  {
    std::vector<char> seen(static_cast<size_t>(n), 0);
    for (int seed = 0; seed < n; ++seed) {
      if (seen[static_cast<size_t>(seed)] || in_s[static_cast<size_t>(seed)]) continue;
      HangingComponent h;
      h.vertices.push_back(seed);
      seen[static_cast<size_t>(seed)] = 1;
      for (size_t head = 0; head < h.vertices.size(); ++head) {
        for (auto [w, eid] : tree.adjacent(h.vertices[head])) {
          if (in_s[static_cast<size_t>(w)]) {
            h.attach_edge = eid;  // unique: a second edge into S would close a cycle
            continue;
          }
          if (!seen[static_cast<size_t>(w)]) {
            seen[static_cast<size_t>(w)] = 1;
            h.vertices.push_back(w);
          }
        }
      }
      std::sort(h.vertices.begin(), h.vertices.end());
      trace.hanging.push_back(std::move(h));
    }
  }
}

namespace {

// Cap fallback: exact on paths, the 2-approximation on spiders, otherwise
// query the centroid's star and recurse per component. Always valid; only the
// path case keeps an exactness certificate.
SolveReport solve_star_fallback(const WeightedTree& tree) {
  if (tree.n() == 1) {
    SolveReport report;
    report.algorithm = "star-fallback";
    report.strategy = DecisionTree::single_leaf(0);
    report.profile = evaluate_unchecked(tree, report.strategy);
    return report;
  }
  if (tree.is_path()) {
    SolveReport report = solve_path(tree);
    report.algorithm = "star-fallback";
    return report;
  }
  if (tree.is_spider()) {
    SolveReport report = solve_spider(tree);
    report.algorithm = "star-fallback";
    report.certified = false;
    return report;
  }
  std::vector<int> all(static_cast<size_t>(tree.n()));
  for (int v = 0; v < tree.n(); ++v) all[static_cast<size_t>(v)] = v;
  const int c = centroid(tree, all);

  DecisionTree d;
  std::vector<int> branch_roots;
  for (auto [w, eid] : tree.adjacent(c)) {
    std::vector<char> seen(static_cast<size_t>(tree.n()), 0);
    std::vector<int> comp{w};
    seen[static_cast<size_t>(w)] = 1;
    seen[static_cast<size_t>(c)] = 1;
    for (size_t head = 0; head < comp.size(); ++head) {
      for (auto [x, eid2] : tree.adjacent(comp[head])) {
        if (!seen[static_cast<size_t>(x)]) {
          seen[static_cast<size_t>(x)] = 1;
          comp.push_back(x);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    InducedSubtree sub = induced_subtree(tree, comp);
    SolveReport inner = solve_star_fallback(sub.tree);
    branch_roots.push_back(
        graft_strategy(d, inner.strategy, sub.tree, tree, sub.vertices, sub.edge_ids));
  }
  int cont = d.add_leaf(c);
  const auto& star = tree.adjacent(c);
  for (size_t i = star.size(); i-- > 0;) {
    const auto [w, eid] = star[i];
    cont = tree.edge(eid).u == w ? d.add_query(eid, branch_roots[i], cont)
                                 : d.add_query(eid, cont, branch_roots[i]);
  }
  d.set_root(cont);

  SolveReport report;
  report.algorithm = "star-fallback";
  report.certified = false;
  report.profile = evaluate_unchecked(tree, d);
  report.strategy = std::move(d);
  return report;
}

}  // namespace

SolveReport skeleton_strategy(const WeightedTree& tree, const TSTrace& trace,
                              const TSConfig& cfg) {
  if (trace.x_vertices.empty()) {
    throw PreconditionError("skeleton_strategy: run contract_to_Y first");
  }
  InducedSubtree s_ind = induced_subtree(tree, trace.skeleton);
  std::vector<int> snew(static_cast<size_t>(tree.n()), -1);
  for (size_t i = 0; i < s_ind.vertices.size(); ++i) {
    snew[static_cast<size_t>(s_ind.vertices[i])] = static_cast<int>(i);
  }
  std::vector<int> enew(static_cast<size_t>(tree.edge_count()), -1);
  for (size_t i = 0; i < s_ind.edge_ids.size(); ++i) {
    enew[static_cast<size_t>(s_ind.edge_ids[i])] = static_cast<int>(i);
  }

  const int k = static_cast<int>(trace.x_vertices.size());
  SolveReport y_report = k <= std::min(cfg.subset_dp_cap, 64)
                             ? solve_subset_dp(trace.aux, cfg.subset_dp_cap)
                             : solve_star_fallback(trace.aux);
  bool certified = y_report.certified;

  std::vector<int> yid(static_cast<size_t>(tree.n()), -1);
  for (int i = 0; i < k; ++i) yid[static_cast<size_t>(trace.x_vertices[static_cast<size_t>(i)])] = i;

  // Spider strategy per component of S - Z, grafted into skeleton-local ids.
  DecisionTree ds;
  std::vector<int> comp_root_of_yid(static_cast<size_t>(k), -1);
  for (const auto& comp : trace.spider_components) {
    InducedSubtree ci = induced_subtree(tree, comp);
    SolveReport sp = solve_spider(ci.tree);
    std::vector<int> vmap(ci.vertices.size());
    for (size_t i = 0; i < ci.vertices.size(); ++i) {
      vmap[i] = snew[static_cast<size_t>(ci.vertices[i])];
    }
    std::vector<int> emap(ci.edge_ids.size());
    for (size_t i = 0; i < ci.edge_ids.size(); ++i) {
      emap[i] = enew[static_cast<size_t>(ci.edge_ids[i])];
    }
    const int root = graft_strategy(ds, sp.strategy, ci.tree, s_ind.tree, vmap, emap);
    int branch = -1;
    for (int v : comp) {
      if (yid[static_cast<size_t>(v)] >= 0) {
        if (branch >= 0) throw std::logic_error("component with two branch vertices");
        branch = yid[static_cast<size_t>(v)];
      }
    }
    if (branch < 0) throw std::logic_error("component without a branch vertex");
    comp_root_of_yid[static_cast<size_t>(branch)] = root;
  }

  // Relabel the aux strategy onto the cut edges, leaves onto component roots.
  const DecisionTree& dy = y_report.strategy;
  std::vector<int> order;
  std::vector<int> walk{dy.root()};
  while (!walk.empty()) {
    int id = walk.back();
    walk.pop_back();
    order.push_back(id);
    if (!dy.node(id).is_leaf()) {
      walk.push_back(dy.node(id).child_u);
      walk.push_back(dy.node(id).child_v);
    }
  }
  std::vector<int> copied(static_cast<size_t>(dy.size()), -1);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const auto& node = dy.node(*it);
    if (node.is_leaf()) {
      copied[static_cast<size_t>(*it)] = comp_root_of_yid.at(static_cast<size_t>(node.leaf));
      continue;
    }
    const auto& info = trace.aux_edges[static_cast<size_t>(node.query)];
    const int mapped = enew[static_cast<size_t>(info.orig_edge)];
    const bool same = info.toward_u == tree.edge(info.orig_edge).u;
    const int cu = copied[static_cast<size_t>(same ? node.child_u : node.child_v)];
    const int cv = copied[static_cast<size_t>(same ? node.child_v : node.child_u)];
    copied[static_cast<size_t>(*it)] = ds.add_query(mapped, cu, cv);
  }
  ds.set_root(copied[static_cast<size_t>(dy.root())]);

  SolveReport report;
  report.algorithm = "ts-skeleton";
  report.certified = certified;
  report.profile = evaluate_unchecked(s_ind.tree, ds);
  report.strategy = std::move(ds);
  return report;
}

TSResult solve_ts(const WeightedTree& tree, const TSConfig& cfg) {
  if (cfg.t_override && *cfg.t_override < 2) {
    throw PreconditionError("t_override must be >= 2");
  }
  const int dp_cap = std::min(cfg.subset_dp_cap, 64);
  if (dp_cap < 4) throw PreconditionError("subset_dp_cap must be >= 4");
  // The formula default keeps desk-scale runs exact; an override drops the
  // cutoff to the floor so the machinery it exists to exercise actually runs.
  const int cutoff = std::max(4, cfg.small_cutoff.value_or(cfg.t_override ? 4 : 16));
  // t is fixed once, from the original instance size.
  const int t = cfg.t_override ? *cfg.t_override
                               : (tree.n() >= 4 ? paper_t(tree.n()) : 0);

  TSResult result;
  struct Rec {
    DecisionTree d;
    bool certified;
  };
  std::function<Rec(const WeightedTree&, bool)> rec = [&](const WeightedTree& sub,
                                                          bool top) -> Rec {
    const int m = sub.n();
    if ((m <= cutoff || m <= t) && m <= dp_cap) {
      SolveReport exact = solve_subset_dp(sub, dp_cap);
      return {std::move(exact.strategy), true};
    }
    // Also lands here for dp_cap < m <= t: the loop below stops with S = T
    // and the skeleton strategy (with its Y fallback) is the answer.
    TSTrace trace = build_skeleton(sub, t);
    contract_to_Y(trace, sub);
    SolveReport ds = skeleton_strategy(sub, trace, cfg);
    bool certified = ds.certified;
    InducedSubtree s_ind = induced_subtree(sub, trace.skeleton);

    if (static_cast<int>(trace.skeleton.size()) == m) {
      // S covers everything; skeleton ids are the identity.
      if (top && cfg.want_trace) result.trace = std::move(trace);
      return {std::move(ds.strategy), certified};
    }

    DecisionTree full;
    // Boundary stars: group hanging components by their skeleton vertex,
    // query attachment edges in ascending id, recurse into each component.
    std::vector<char> in_s(static_cast<size_t>(m), 0);
    for (int v : trace.skeleton) in_s[static_cast<size_t>(v)] = 1;
    std::map<int, std::vector<const HangingComponent*>> by_vertex;
    for (const auto& h : trace.hanging) {
      const Edge& e = sub.edge(h.attach_edge);
      by_vertex[in_s[static_cast<size_t>(e.u)] ? e.u : e.v].push_back(&h);
    }
    std::map<int, int> chain_root;
    for (auto& [v, comps] : by_vertex) {
      std::sort(comps.begin(), comps.end(),
                [](const HangingComponent* a, const HangingComponent* b) {
                  return a->attach_edge < b->attach_edge;
                });
      int cont = full.add_leaf(v);
      for (size_t i = comps.size(); i-- > 0;) {
        const HangingComponent& h = *comps[i];
        InducedSubtree hi = induced_subtree(sub, h.vertices);
        Rec inner = rec(hi.tree, false);
        certified = certified && inner.certified;
        const int hroot =
            graft_strategy(full, inner.d, hi.tree, sub, hi.vertices, hi.edge_ids);
        const Edge& e = sub.edge(h.attach_edge);
        const int w = e.u == v ? e.v : e.u;
        cont = e.u == w ? full.add_query(h.attach_edge, hroot, cont)
                        : full.add_query(h.attach_edge, cont, hroot);
      }
      chain_root[v] = cont;
    }
    const int root = graft_strategy(
        full, ds.strategy, s_ind.tree, sub, s_ind.vertices, s_ind.edge_ids,
        [&chain_root](int vertex) {
          auto it = chain_root.find(vertex);
          return it == chain_root.end() ? -1 : it->second;
        });
    full.set_root(root);
    if (top && cfg.want_trace) result.trace = std::move(trace);
    return {std::move(full), certified};
  };

  Rec outcome = rec(tree, true);
  result.report.algorithm = "ts";
  result.report.certified = outcome.certified;
  result.report.profile = evaluate_unchecked(tree, outcome.d);
  result.report.strategy = std::move(outcome.d);
  return result;
}

std::string trace_to_json(const TSTrace& trace) {
  json y_edges = json::array();
  for (size_t i = 0; i < trace.aux.edges().size(); ++i) {
    const Edge& e = trace.aux.edges()[i];
    y_edges.push_back(
        {{"u", trace.x_vertices[static_cast<size_t>(e.u)]},
         {"v", trace.x_vertices[static_cast<size_t>(e.v)]},
         {"cost", format_rational(e.cost)},
         {"cut_edge", trace.aux_edges[i].orig_edge}});
  }
  json hanging = json::array();
  for (const auto& h : trace.hanging) {
    hanging.push_back({{"vertices", h.vertices}, {"attach_edge", h.attach_edge}});
  }
  return json{{"skeleton", trace.skeleton},
              {"centroids", trace.centroids},
              {"x", trace.branch_vertices},
              {"y_edges", std::move(y_edges)},
              {"z", trace.z_edges},
              {"spider_components", trace.spider_components},
              {"hanging", std::move(hanging)}}
      .dump(2);
}

}  // namespace treesearch
