#include "asmm/dot.hpp"

#include <sstream>

namespace asmm {

namespace {

std::string node_id(const EventId& e) {
  if (e.is_init()) return "init_" + std::to_string(e.init_loc());
  return "e_" + std::to_string(e.tid) + "_" + std::to_string(e.idx);
}

void emit_edges(std::ostringstream& os, const Relation& r,
                const std::string& attrs) {
  for (const auto& [a, b] : r.pairs())
    os << "  " << node_id(a) << " -> " << node_id(b) << " [" << attrs
       << "];\n";
}

// po restricted to immediate successors, to keep pictures readable.
Relation po_hasse(const Relation& po) {
  Relation out;
  for (const auto& [a, b] : po.pairs()) {
    bool immediate = true;
    for (const auto& [c, d] : po.pairs()) {
      if (c == a && po.contains(d, b)) {
        immediate = false;
        break;
      }
      (void)d;
    }
    if (immediate) out.insert(a, b);
  }
  return out;
}

}  // namespace

std::string execution_to_dot(const CandidateExecution& x, ModelId model,
                             const std::string& name) {
  std::ostringstream os;
  os << "digraph \"" << name << "\" {\n  rankdir=TB;\n"
     << "  node [shape=box, fontname=\"monospace\"];\n";
  for (const auto& [e, l] : x.graph.events)
    os << "  " << node_id(e) << " [label=\"" << to_string(e) << "\\n"
       << to_string(l) << "\"];\n";

  DerivedRelations d = derive_relations(x, model);
  emit_edges(os, po_hasse(d.po), "color=black, label=\"po\"");
  emit_edges(os, x.rf, "color=green4, label=\"rf\"");
  emit_edges(os, x.mo, "color=orange, label=\"mo\"");
  emit_edges(os, d.rb, "color=red, style=dashed, label=\"rb\"");
  if (model == ModelId::RC11Ext)
    emit_edges(os, d.ppo_asm.minus(d.po_rc).minus(x.rf),
               "color=blue, label=\"ppo_asm\"");
  os << "}\n";
  return os.str();
}

std::string mixed_to_dot(const MixedGraph& m, const std::string& name) {
  std::ostringstream os;
  os << "digraph \"" << name << "\" {\n  rankdir=TB;\n"
     << "  node [shape=record, fontname=\"monospace\"];\n";
  for (const auto& [id, n] : m.nodes) {
    os << "  " << node_id(id) << " [label=\"{" << to_string(n.kind) << " "
       << to_string(id) << "|" << to_string(n.source_label) << "|";
    bool first = true;
    for (const auto& [te, tl] : n.targets) {
      if (!first) os << "\\n";
      first = false;
      os << to_string(tl);
      (void)te;
    }
    if (n.targets.empty()) os << "(erased)";
    os << "}\"];\n";
  }

  Relation po;
  std::vector<EventId> ids;
  for (const auto& [id, _] : m.nodes) ids.push_back(id);
  for (const auto& a : ids)
    for (const auto& b : ids) {
      if (a.is_init() && !b.is_init()) po.insert(a, b);
      if (!a.is_init() && !b.is_init() && a.tid == b.tid && a.idx < b.idx)
        po.insert(a, b);
    }
  Relation rb = compose(m.rf.inverse(), m.mo);
  rb = rb.filter_pairs([](const EventId& a, const EventId& b) { return !(a == b); });

  emit_edges(os, po_hasse(po), "color=black, label=\"po\"");
  emit_edges(os, m.rf, "color=green4, label=\"rf\"");
  emit_edges(os, m.mo, "color=orange, label=\"mo\"");
  emit_edges(os, rb, "color=red, style=dashed, label=\"rb\"");
  os << "}\n";
  return os.str();
}

}  // namespace asmm
