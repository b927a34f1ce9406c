#include "simfvs/reductions.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace simfvs {

std::vector<VertexId> ReductionTrace::forced() const {
  std::vector<VertexId> out;
  for (const TraceEvent& e : events)
    if (e.kind == TraceEventKind::R5Take || e.kind == TraceEventKind::R6Take) out.push_back(e.v);
  return out;
}

std::vector<VertexId> ReductionTrace::lift(std::vector<VertexId> solution) const {
  std::set<VertexId> s(solution.begin(), solution.end());
  for (auto it = events.rbegin(); it != events.rend(); ++it) {
    const TraceEvent& e = *it;
    switch (e.kind) {
      case TraceEventKind::R5Take:
      case TraceEventKind::R6Take:
        s.insert(e.v);
        break;
      case TraceEventKind::R8Unravel: {
        bool any = false;
        for (const auto& [color, copy] : e.copies) any |= s.erase(copy) > 0;
        if (any) s.insert(e.v);
        break;
      }
      case TraceEventKind::R1Delete:
      case TraceEventKind::R3Bypass:
        if (s.count(e.v))
          throw std::invalid_argument("solution contains a vertex the trace eliminated");
        break;
      default:
        break;  // edge rewrites keep solutions valid as-is
    }
  }
  return {s.begin(), s.end()};
}

void ReductionTrace::append(const ReductionTrace& tail) {
  events.insert(events.end(), tail.events.begin(), tail.events.end());
}

namespace {

bool is_frozen(const std::vector<char>& frozen, VertexId v) {
  return static_cast<size_t>(v) < frozen.size() && frozen[v];
}

std::vector<char> frozen_mask(const EdgeColoredGraph& g, const std::vector<VertexId>& frozen) {
  std::vector<char> mask;
  for (VertexId v : frozen) {
    if (!g.has_vertex(v)) throw std::invalid_argument("frozen set contains unknown vertex");
    if (static_cast<size_t>(v) >= mask.size()) mask.resize(v + 1, 0);
    mask[v] = 1;
  }
  return mask;
}

TraceEvent make_event(TraceEventKind kind, VertexId v) {
  TraceEvent e;
  e.kind = kind;
  e.v = v;
  return e;
}

std::optional<TraceEvent> scan_rule(const EdgeColoredGraph& g, int rule,
                                    const std::vector<char>& frozen) {
  for (VertexId v : g.vertices()) {
    switch (rule) {
      case 1: {  // isolated vertex
        if (g.total_degree(v) == 0 && !is_frozen(frozen, v))
          return make_event(TraceEventKind::R1Delete, v);
        break;
      }
      case 2: {  // single color edge counting multiplicity (a loop gives 2)
        for (ColorId c = 1; c <= g.alpha(); ++c) {
          if (g.degree(v, c) == 1) {
            TraceEvent e = make_event(TraceEventKind::R2EdgeDrop, v);
            e.u = g.neighbors(v, c).front().first;
            e.color = c;
            return e;
          }
        }
        break;
      }
      case 3: {  // total degree exactly two, both edges necessarily one color
        if (is_frozen(frozen, v) || g.total_degree(v) != 2) break;
        ColorId c = 0;
        for (ColorId ci = 1; ci <= g.alpha(); ++ci)
          if (g.degree(v, ci) == 2) c = ci;
        if (c == 0)
          throw std::logic_error("degree-two vertex with edges of two colors survived rule 2");
        const auto& nbrs = g.neighbors(v, c);
        if (nbrs.size() == 1 && nbrs.front().first == v) break;  // loop, rule 5 territory
        VertexId u, w;
        if (nbrs.size() == 1) {
          u = w = nbrs.front().first;  // double edge
        } else {
          u = nbrs[0].first;
          w = nbrs[1].first;
        }
        if (is_frozen(frozen, u) && is_frozen(frozen, w)) break;
        TraceEvent e = make_event(TraceEventKind::R3Bypass, v);
        e.u = u;
        e.w = w;
        e.color = c;
        return e;
      }
      case 4: {  // multiplicity above two
        for (ColorId c = 1; c <= g.alpha(); ++c)
          for (const auto& [u, mult] : g.neighbors(v, c))
            if (u >= v && mult > 2) {
              TraceEvent e = make_event(TraceEventKind::R4Cap, v);
              e.u = u;
              e.color = c;
              e.old_multiplicity = mult;
              return e;
            }
        break;
      }
      case 5: {  // loop
        for (ColorId c = 1; c <= g.alpha(); ++c)
          if (g.multiplicity(v, v, c) > 0) {
            TraceEvent e = make_event(TraceEventKind::R5Take, v);
            e.color = c;
            return e;
          }
        break;
      }
      default:
        throw std::invalid_argument("rule number must be 1..5");
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<TraceEvent> find_rule(const EdgeColoredGraph& g, int rule,
                                    const std::vector<VertexId>& frozen) {
  return scan_rule(g, rule, frozen_mask(g, frozen));
}

void apply_rule(EdgeColoredGraph& g, const TraceEvent& event, int* k) {
  switch (event.kind) {
    case TraceEventKind::R1Delete:
      g.remove_vertex(event.v);
      break;
    case TraceEventKind::R2EdgeDrop:
      g.remove_edge(event.v, event.u, event.color, 1);
      break;
    case TraceEventKind::R3Bypass:
      g.remove_vertex(event.v);
      g.add_edge(event.u, event.w, event.color, 1);
      break;
    case TraceEventKind::R4Cap:
      g.set_multiplicity(event.v, event.u, event.color, 2);
      break;
    case TraceEventKind::R5Take:
      g.remove_vertex(event.v);
      if (k) --*k;
      break;
    default:
      throw std::invalid_argument("apply_rule only handles rules 1..5");
  }
}

ReducedInstance reduce_exhaustive(const EdgeColoredGraph& g, int k,
                                  const std::vector<VertexId>& frozen) {
  ReducedInstance out{g, k, {}, {}, ReduceStatus::Ok};
  std::vector<char> mask = frozen_mask(g, frozen);
  for (;;) {
    std::optional<TraceEvent> event;
    for (int rule = 1; rule <= 5 && !event; ++rule) event = scan_rule(out.graph, rule, mask);
    if (!event) break;
    if (event->kind == TraceEventKind::R5Take && is_frozen(mask, event->v)) {
      out.status = ReduceStatus::BranchInfeasible;
      return out;
    }
    apply_rule(out.graph, *event, &out.k);
    if (event->kind == TraceEventKind::R5Take) out.forced.push_back(event->v);
    out.trace.events.push_back(std::move(*event));
    if (out.k < 0) {
      out.status = ReduceStatus::Infeasible;
      return out;
    }
  }
  return out;
}

}  // namespace simfvs
