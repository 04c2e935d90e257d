// Anchored enumeration of polymer supports.
//
// Connected edge sets whose vertex set contains the anchor are generated with
// Redelmeier's method (a virtual root adjacent to the six anchor edges). A
// consistent labeling has zero flow around every triangle, so no triangle can
// carry exactly one support edge; branches violating this are cut as soon as
// the offending triangle is fully decided, and when the remaining edge budget
// cannot repair the triangles that still carry a single edge.
//
// On a planar patch zero flow around triangles makes the labeling a gradient
// of a potential that vanishes far away. The labelings with support exactly E
// therefore correspond to assignments of values to the classes of sites
// joined by non-E edges, with the outer class fixed at 0 and classes on the
// two sides of each E edge distinct.

#include <algorithm>
#include <memory>
#include <string>

#include "sops/errors.hpp"
#include "sops/lattice.hpp"
#include "sops/theory.hpp"

namespace sops {

namespace {

class SupportEnumerator {
 public:
  SupportEnumerator(int max_edges, int max_q)
      : max_edges_(max_edges), max_q_(max_q), geometry_(2 * max_edges + 5) {
    const LatticeGeometry& g = geometry_;
    anchor_ = g.index({g.side() / 2, g.side() / 2});
    const std::size_t edges = static_cast<std::size_t>(g.edge_count());
    in_.assign(edges, 0);
    seen_.assign(edges, 0);
    tri_in_.assign(static_cast<std::size_t>(g.dual_vertex_count()), 0);
    tri_out_.assign(static_cast<std::size_t>(g.dual_vertex_count()), 0);
    class_of_.assign(static_cast<std::size_t>(g.site_count()), -1);
    distance_.assign(static_cast<std::size_t>(g.site_count()), -1);
    std::vector<SiteIndex> frontier{anchor_};
    distance_[static_cast<std::size_t>(anchor_)] = 0;
    for (std::size_t i = 0; i < frontier.size(); ++i)
      for (SiteIndex u : g.neighbors(frontier[i]))
        if (distance_[static_cast<std::size_t>(u)] < 0) {
          distance_[static_cast<std::size_t>(u)] = distance_[static_cast<std::size_t>(frontier[i])] + 1;
          frontier.push_back(u);
        }
    result_.max_edges = max_edges;
    result_.max_q = max_q;
    result_.nu.assign(static_cast<std::size_t>(max_edges + 1), std::vector<std::uint64_t>(static_cast<std::size_t>(max_q + 1), 0));
  }

  PolymerCounts run() {
    std::vector<EdgeIndex> untried;
    for (int d = 0; d < 6; ++d) {
      const EdgeIndex e = geometry_.edge(anchor_, d);
      seen_[static_cast<std::size_t>(e)] = 1;
      untried.push_back(e);
    }
    extend(untried, 0);
    return result_;
  }

 private:
  std::array<DualVertex, 2> triangles(EdgeIndex e) const {
    const auto [a, b] = geometry_.dual_endpoints(e);
    return {a, b};
  }

  void extend(std::vector<EdgeIndex> untried, int size) {
    std::vector<EdgeIndex> excluded_here;
    while (!untried.empty()) {
      const EdgeIndex e = untried.back();
      untried.pop_back();

      bool dead = false;
      in_[static_cast<std::size_t>(e)] = 1;
      support_.push_back(e);
      for (DualVertex t : triangles(e)) {
        auto& k = tri_in_[static_cast<std::size_t>(t)];
        ++k;
        if (k == 1) ++single_;
        if (k == 2) --single_;
        if (k == 1 && tri_out_[static_cast<std::size_t>(t)] == 2) dead = true;
      }
      if (!dead) {
        ++result_.supports_visited;
        if (single_ == 0) record();
        const int remaining = max_edges_ - size - 1;
        if (remaining > 0 && single_ <= 2 * remaining) {
          std::vector<EdgeIndex> next = untried;
          std::vector<EdgeIndex> fresh;
          const auto [tail, head] = geometry_.endpoints(e);
          for (SiteIndex s : {tail, head})
            for (int d = 0; d < 6; ++d) {
              const EdgeIndex f = geometry_.edge(s, d);
              if (seen_[static_cast<std::size_t>(f)]) continue;
              seen_[static_cast<std::size_t>(f)] = 1;
              fresh.push_back(f);
              next.push_back(f);
            }
          extend(std::move(next), size + 1);
          for (EdgeIndex f : fresh) seen_[static_cast<std::size_t>(f)] = 0;
        }
      }
      for (DualVertex t : triangles(e)) {
        auto& k = tri_in_[static_cast<std::size_t>(t)];
        if (k == 1) --single_;
        if (k == 2) ++single_;
        --k;
      }
      support_.pop_back();
      in_[static_cast<std::size_t>(e)] = 0;

      excluded_here.push_back(e);
      bool blocked = false;
      for (DualVertex t : triangles(e)) {
        ++tri_out_[static_cast<std::size_t>(t)];
        if (tri_in_[static_cast<std::size_t>(t)] == 1 && tri_out_[static_cast<std::size_t>(t)] == 2) blocked = true;
      }
      if (blocked) break;
    }
    for (EdgeIndex e : excluded_here)
      for (DualVertex t : triangles(e)) --tri_out_[static_cast<std::size_t>(t)];
  }

  // Adds the number of consistent labelings with support exactly support_.
  void record() {
    const LatticeGeometry& g = geometry_;
    const int reach = max_edges_ + 1;
    std::vector<SiteIndex> touched;
    std::vector<SiteIndex> vertices;
    for (EdgeIndex e : support_) {
      const auto [a, b] = g.endpoints(e);
      vertices.push_back(a);
      vertices.push_back(b);
    }
    // Class 0 is the outer class; inner classes are numbered from 1.
    int classes = 1;
    std::vector<SiteIndex> stack;
    for (SiteIndex start : vertices) {
      if (class_of_[static_cast<std::size_t>(start)] >= 0) continue;
      std::vector<SiteIndex> members{start};
      class_of_[static_cast<std::size_t>(start)] = classes;
      touched.push_back(start);
      bool outer = false;
      stack.assign(1, start);
      while (!stack.empty() && !outer) {
        const SiteIndex u = stack.back();
        stack.pop_back();
        for (int d = 0; d < 6; ++d) {
          const SiteIndex w = g.neighbor(u, d);
          if (in_[static_cast<std::size_t>(g.edge(u, d))]) continue;
          const int cw = class_of_[static_cast<std::size_t>(w)];
          if (cw == 0 || distance_[static_cast<std::size_t>(w)] > reach) {
            outer = true;
            break;
          }
          if (cw >= 0) continue;
          class_of_[static_cast<std::size_t>(w)] = classes;
          touched.push_back(w);
          members.push_back(w);
          stack.push_back(w);
        }
      }
      if (outer) {
        for (SiteIndex s : members) class_of_[static_cast<std::size_t>(s)] = 0;
      } else {
        ++classes;
      }
    }

    std::vector<std::pair<int, int>> constraints;
    bool feasible = true;
    for (EdgeIndex e : support_) {
      const auto [a, b] = g.endpoints(e);
      const int ca = class_of_[static_cast<std::size_t>(a)];
      const int cb = class_of_[static_cast<std::size_t>(b)];
      if (ca == cb) feasible = false;
      constraints.emplace_back(std::min(ca, cb), std::max(ca, cb));
    }
    for (SiteIndex s : touched) class_of_[static_cast<std::size_t>(s)] = -1;
    if (!feasible) return;

    const auto m = static_cast<std::size_t>(support_.size());
    for (int q = 2; q <= max_q_; ++q) result_.nu[m][static_cast<std::size_t>(q)] += colourings(classes, constraints, q);
  }

  static std::uint64_t colourings(int classes, const std::vector<std::pair<int, int>>& constraints, int q) {
    std::vector<int> value(static_cast<std::size_t>(classes), 0);
    std::uint64_t count = 0;
    // Depth-first assignment of classes 1..classes-1; class 0 is fixed at 0.
    auto assign = [&](auto&& self, int k) -> void {
      if (k == classes) {
        ++count;
        return;
      }
      for (int v = 0; v < q; ++v) {
        value[static_cast<std::size_t>(k)] = v;
        bool ok = true;
        for (const auto& [lo, hi] : constraints)
          if (hi == k && value[static_cast<std::size_t>(lo)] == v) {
            ok = false;
            break;
          }
        if (ok) self(self, k + 1);
      }
    };
    assign(assign, 1);
    return count;
  }

  int max_edges_;
  int max_q_;
  LatticeGeometry geometry_;
  SiteIndex anchor_ = 0;
  std::vector<char> in_;
  std::vector<char> seen_;
  std::vector<int> tri_in_;
  std::vector<int> tri_out_;
  std::vector<int> class_of_;
  std::vector<int> distance_;
  std::vector<EdgeIndex> support_;
  int single_ = 0;
  PolymerCounts result_;
};

}  // namespace

PolymerCounts count_polymers(int max_edges, int max_q) {
  if (max_edges < 1) throw domain_error("polymer enumeration needs at least one edge");
  if (max_edges > kPolymerEnumerationLimit)
    throw budget_error("polymer enumeration is limited to " + std::to_string(kPolymerEnumerationLimit) + " edges");
  if (max_q < 2 || max_q > 5) throw domain_error("polymer enumeration supports 2 <= q <= 5");
  return SupportEnumerator(max_edges, max_q).run();
}

std::uint64_t enumerate_polymers(int m, int q) {
  if (m < 6 && m >= 1) return 0;
  return count_polymers(m, q).nu[static_cast<std::size_t>(m)][static_cast<std::size_t>(q)];
}

std::uint64_t nu_listed(int m, int q) {
  const auto a = static_cast<std::uint64_t>(q - 1);
  const std::uint64_t b = q >= 2 ? static_cast<std::uint64_t>(q - 2) : 0;
  const std::uint64_t c = q >= 3 ? static_cast<std::uint64_t>(q - 3) : 0;
  switch (m) {
    case 6:
      return 7 * a;
    case 10:
      return 30 * a;
    case 11:
      return 30 * a * b;
    case 12:
      return 24 * a + 28 * a * a;
    case 14:
      return 137 * a + 72 * a * b;
    case 15:
      return 24 * a * b * c + 246 * a * b;
    default:
      if (m >= 6 && m <= 15) return 0;
      throw domain_error("listed polymer counts cover 6 <= m <= 15");
  }
}

}  // namespace sops
