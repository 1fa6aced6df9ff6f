#include "boxslash/exact_solver.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <thread>

#include "boxslash/errors.hpp"

namespace boxslash {

namespace {

using Clock = std::chrono::steady_clock;

struct Fit {
  bool ok{false};
  EdgeColoring coloring;
};

Fit fits(const Graph& graph, const LinearOrder& order, LayoutKind kind, int k,
         std::uint64_t& nodes) {
  Fit out;
  if (kind == LayoutKind::Stack) {
    const auto adj = conflict_graph(graph, order, PairRelation::Cross);
    if (auto colors = k_color(adj, k, &nodes)) {
      out.ok = true;
      out.coloring = {std::move(*colors), k};
    }
  } else {
    auto q = queues_for_order(graph, order);
    if (q.count <= k) {
      out.ok = true;
      out.coloring = std::move(q.coloring);
      out.coloring.k = k;
    }
  }
  return out;
}

// Enumerates orders as: fixed prefix (vertex 0 when pinned), then one branch
// vertex, then every permutation of the rest in lexicographic order.
class OrderSpace {
 public:
  OrderSpace(std::size_t n, bool pin_first, bool prune_reversals)
      : n_(n), pin_(pin_first && n > 0), prune_(prune_reversals) {
    for (Vertex v = pin_ ? 1 : 0; v < n_; ++v) free_.push_back(v);
  }

  std::size_t branch_count() const { return std::max<std::size_t>(free_.size(), 1); }

  // Calls visit(seq) for every canonical order in the branch until it
  // returns true; returns whether it did.
  template <class Visit>
  bool scan_branch(std::size_t branch, Visit&& visit) const {
    std::vector<Vertex> seq;
    if (pin_) seq.push_back(0);
    if (free_.empty()) return visit(seq);
    seq.push_back(free_[branch]);
    std::vector<Vertex> rest;
    for (std::size_t i = 0; i < free_.size(); ++i) {
      if (i != branch) rest.push_back(free_[i]);
    }
    const std::size_t head = seq.size();
    seq.insert(seq.end(), rest.begin(), rest.end());
    do {
      if (canonical(seq) && visit(seq)) return true;
    } while (std::next_permutation(seq.begin() + static_cast<std::ptrdiff_t>(head), seq.end()));
    return false;
  }

 private:
  // Keeps exactly one of each order/reversal pair.
  bool canonical(const std::vector<Vertex>& seq) const {
    if (!prune_) return true;
    if (pin_) return n_ < 3 || seq[1] < seq[n_ - 1];
    return n_ < 2 || seq[0] < seq[n_ - 1];
  }

  std::size_t n_;
  bool pin_;
  bool prune_;
  std::vector<Vertex> free_;
};

SolveResult fallback(const Graph& graph, LayoutKind kind) {
  SolveResult out;
  out.order = LinearOrder::identity(graph.vertex_count());
  auto count = kind == LayoutKind::Stack ? stack_pages_for_order(graph, out.order)
                                         : queues_for_order(graph, out.order);
  out.value = count.count;
  out.coloring = std::move(count.coloring);
  return out;
}

}  // namespace

SolveResult solve(const Graph& graph, LayoutKind kind, const SolveOptions& options) {
  const std::size_t n = graph.vertex_count();
  if (n > options.max_vertices) {
    throw size_error("exhaustive search limited to " + std::to_string(options.max_vertices) +
                     " vertices, graph has " + std::to_string(n));
  }
  const int edges = static_cast<int>(graph.edge_count());
  const int limit = options.upper_limit < 0 ? edges : options.upper_limit;
  const auto start = Clock::now();
  auto over_budget = [&] { return options.budget && Clock::now() - start > *options.budget; };

  const OrderSpace space(n, kind == LayoutKind::Stack && options.fix_first_vertex,
                         options.prune_reversals);
  const std::size_t branches = space.branch_count();
  const unsigned jobs = std::max(1u, options.jobs);
  std::atomic<std::uint64_t> nodes{0};

  for (int k = edges == 0 ? 0 : 1; k <= limit; ++k) {
    std::atomic<std::size_t> best_branch{branches};
    std::atomic<bool> aborted{false};
    std::mutex witness_mutex;
    std::vector<std::optional<std::pair<std::vector<Vertex>, EdgeColoring>>> found(branches);

    auto worker = [&](unsigned id) {
      std::uint64_t local_nodes = 0;
      for (std::size_t b = id; b < branches; b += jobs) {
        if (b > best_branch.load() || aborted.load()) break;
        std::uint64_t tick = 0;
        space.scan_branch(b, [&](const std::vector<Vertex>& seq) {
          ++local_nodes;
          if ((++tick & 0xff) == 0 && (b > best_branch.load() || aborted.load())) return true;
          if ((tick & 0xff) == 0 && over_budget()) {
            aborted = true;
            return true;
          }
          const auto order = LinearOrder::from_sequence(seq);
          auto fit = fits(graph, order, kind, k, local_nodes);
          if (!fit.ok) return false;
          std::lock_guard lock(witness_mutex);
          found[b] = {seq, std::move(fit.coloring)};
          std::size_t current = best_branch.load();
          while (b < current && !best_branch.compare_exchange_weak(current, b)) {
          }
          return true;
        });
      }
      nodes += local_nodes;
    };

    if (jobs == 1) {
      worker(0);
    } else {
      std::vector<std::thread> pool;
      for (unsigned id = 0; id < jobs; ++id) pool.emplace_back(worker, id);
      for (auto& t : pool) t.join();
    }

    const std::size_t b = best_branch.load();
    if (aborted.load() && b == branches) {
      SolveResult out = fallback(graph, kind);
      out.lower_bound = k;
      out.exact = out.value == out.lower_bound;
      out.nodes_explored = nodes.load();
      return out;
    }
    // Every k' < k was refuted in full, so a witness at k is minimal even if
    // the budget cut other branches short (only witness choice may differ).
    if (b < branches) {
      SolveResult out;
      out.value = k;
      out.lower_bound = k;
      out.order = LinearOrder::from_sequence(found[b]->first);
      out.coloring = std::move(found[b]->second);
      out.exact = true;
      out.nodes_explored = nodes.load();
      return out;
    }
  }

  SolveResult out = fallback(graph, kind);
  out.lower_bound = limit + 1;
  out.limit_exceeded = true;
  out.exact = out.value == out.lower_bound;
  out.nodes_explored = nodes.load();
  return out;
}

SolveResult stack_number(const Graph& graph, const SolveOptions& options) {
  return solve(graph, LayoutKind::Stack, options);
}

SolveResult queue_number(const Graph& graph, const SolveOptions& options) {
  return solve(graph, LayoutKind::Queue, options);
}

ProbeReport probe_queue_lower_bound(const std::function<std::optional<NamedGraph>()>& next,
                                    int q, const SolveOptions& options) {
  ProbeReport report;
  while (auto instance = next()) {
    ++report.examined;
    SolveResult result = queue_number(instance->graph, options);
    if (result.lower_bound > q) {
      report.exceeded = true;
      report.name = instance->name;
      report.result = std::move(result);
      return report;
    }
  }
  return report;
}

}  // namespace boxslash
