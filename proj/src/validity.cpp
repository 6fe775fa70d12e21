#include "ldc/validity.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <set>

#include <json.hpp>

namespace ldc {

namespace {

struct Box {
  int id;
  bool alive = true;
  std::set<int> nodes;
  std::set<std::string> wires;
};

struct Candidate {
  std::string rule;
  int node = -1;   // node rules
  int box = -1;    // absorbing box, or first box of a merge
  int other = -1;  // second box of a merge
};

class Boxing {
public:
  explicit Boxing(const Circuit& c) {
    check_circuit(c);
    splice(c);
  }

  ValidityReport run(std::optional<std::uint64_t> seed) {
    ValidityReport rep;
    if (nodes_.empty() && wires_.size() == 1) {
      rep.valid = true;
      return rep;
    }
    init(rep.trace);
    std::mt19937_64 rng(seed.value_or(0));
    while (true) {
      auto cands = candidates(!seed.has_value());
      if (cands.empty()) break;
      const Candidate& pick = seed ? cands[std::uniform_int_distribution<size_t>(0, cands.size() - 1)(rng)] : cands[0];
      apply(pick, rep.trace);
    }
    int alive = 0;
    for (const auto& b : boxes_) alive += b.alive;
    bool all_boxed = std::all_of(node_box_.begin(), node_box_.end(), [](int b) { return b >= 0; });
    rep.valid = alive == 1 && all_boxed;
    if (!rep.valid) rep.stuck = stuck();
    return rep;
  }

private:
  std::vector<Node> nodes_;          // symmetry-free nodes with spliced wire names
  std::vector<int> orig_id_;         // original node index
  std::set<std::string> wires_;
  std::vector<int> node_box_;
  std::vector<Box> boxes_;

  void splice(const Circuit& c) {
    std::map<std::string, std::string> parent;
    for (const auto& w : c.wires) parent[w.id] = w.id;
    std::function<std::string(const std::string&)> find = [&](const std::string& w) {
      return parent[w] == w ? w : parent[w] = find(parent[w]);
    };
    for (const auto& n : c.nodes)
      if (n.kind == NodeKind::Symmetry) {
        parent[find(n.ports[3])] = find(n.ports[0]);
        parent[find(n.ports[2])] = find(n.ports[1]);
      }
    for (const auto& w : c.wires) wires_.insert(find(w.id));
    for (size_t i = 0; i < c.nodes.size(); ++i) {
      if (c.nodes[i].kind == NodeKind::Symmetry) continue;
      Node n = c.nodes[i];
      for (auto& p : n.ports) p = find(p);
      if (!n.thin.empty()) n.thin = find(n.thin);
      nodes_.push_back(n);
      orig_id_.push_back(static_cast<int>(i));
    }
    node_box_.assign(nodes_.size(), -1);
  }

  int new_box(std::set<int> ns, std::set<std::string> ws) {
    Box b{static_cast<int>(boxes_.size()), true, std::move(ns), std::move(ws)};
    for (int n : b.nodes) node_box_[n] = b.id;
    boxes_.push_back(std::move(b));
    return boxes_.back().id;
  }

  std::set<std::string> incident(int n) const { return {nodes_[n].ports.begin(), nodes_[n].ports.end()}; }

  void init(std::vector<BoxingStep>& trace) {
    for (size_t i = 0; i < nodes_.size(); ++i) {
      std::string rule;
      switch (nodes_[i].kind) {
      case NodeKind::TensorIntro: rule = "a1"; break;
      case NodeKind::ParElim: rule = "a2"; break;
      case NodeKind::BotElim: rule = "d1"; break;
      case NodeKind::TopIntro: rule = "d2"; break;
      case NodeKind::Generator:
      case NodeKind::DaggerBox: rule = "g"; break;
      default: continue;
      }
      int b = new_box({static_cast<int>(i)}, incident(static_cast<int>(i)));
      trace.push_back({rule, {b}, orig_id_[i], ""});
    }
    std::set<std::string> covered;
    for (const auto& b : boxes_) covered.insert(b.wires.begin(), b.wires.end());
    for (const auto& w : wires_)
      if (!covered.count(w)) {
        int b = new_box({}, {w});
        trace.push_back({"d3", {b}, -1, w});
      }
  }

  int box_holding(const std::string& w, int avoid = -1) const {
    for (const auto& b : boxes_)
      if (b.alive && b.id != avoid && b.wires.count(w)) return b.id;
    return -1;
  }

  std::vector<Candidate> candidates(bool first_only) const {
    std::vector<Candidate> out;
    // rule b
    for (size_t i = 0; i < nodes_.size(); ++i) {
      if (node_box_[i] >= 0) continue;
      const Node& n = nodes_[i];
      std::vector<std::string> branch;
      std::string rule;
      if (n.kind == NodeKind::TensorElim) {
        branch = n.outputs();
        rule = "b1";
      } else if (n.kind == NodeKind::ParIntro) {
        branch = n.inputs();
        rule = "b2";
      } else {
        continue;
      }
      for (const auto& b : boxes_)
        if (b.alive && b.wires.count(branch[0]) && b.wires.count(branch[1])) {
          out.push_back({rule, static_cast<int>(i), b.id, -1});
          if (first_only) return out;
        }
    }
    // rule c
    for (size_t x = 0; x < boxes_.size(); ++x) {
      if (!boxes_[x].alive) continue;
      for (size_t y = x + 1; y < boxes_.size(); ++y) {
        if (!boxes_[y].alive) continue;
        int shared = 0;
        for (const auto& w : boxes_[x].wires) shared += boxes_[y].wires.count(w) ? 1 : 0;
        if (shared == 1) {
          out.push_back({"c", -1, static_cast<int>(x), static_cast<int>(y)});
          if (first_only) return out;
        }
      }
    }
    // rule e
    for (size_t i = 0; i < nodes_.size(); ++i) {
      if (node_box_[i] >= 0) continue;
      const Node& n = nodes_[i];
      if (n.kind != NodeKind::TopElim && n.kind != NodeKind::BotIntro) continue;
      std::string rule = n.kind == NodeKind::TopElim ? "e1" : "e3";
      for (const auto& b : boxes_)
        if (b.alive && b.wires.count(n.thin)) {
          out.push_back({rule, static_cast<int>(i), b.id, -1});
          if (first_only) return out;
        }
    }
    return out;
  }

  void apply(const Candidate& k, std::vector<BoxingStep>& trace) {
    if (k.rule == "c") {
      Box& x = boxes_[k.box];
      Box& y = boxes_[k.other];
      for (int n : y.nodes) node_box_[n] = x.id;
      x.nodes.insert(y.nodes.begin(), y.nodes.end());
      x.wires.insert(y.wires.begin(), y.wires.end());
      y.alive = false;
      trace.push_back({"c", {x.id, y.id}, -1, ""});
      return;
    }
    Box& x = boxes_[k.box];
    x.nodes.insert(k.node);
    node_box_[k.node] = x.id;
    auto inc = incident(k.node);
    x.wires.insert(inc.begin(), inc.end());
    trace.push_back({k.rule, {x.id}, orig_id_[k.node], ""});
  }

  StuckState stuck() const {
    StuckState s;
    std::map<std::string, int> holders;
    for (const auto& b : boxes_) {
      if (!b.alive) continue;
      ResidualBox r{b.id, {}, {b.wires.begin(), b.wires.end()}};
      for (int n : b.nodes) r.nodes.push_back(orig_id_[n]);
      std::sort(r.nodes.begin(), r.nodes.end());
      s.boxes.push_back(r);
      for (const auto& w : b.wires) ++holders[w];
    }
    std::set<std::string> cut;
    for (const auto& [w, k] : holders)
      if (k > 1) cut.insert(w);
    for (size_t i = 0; i < nodes_.size(); ++i) {
      if (node_box_[i] >= 0) continue;
      s.unboxed_nodes.push_back(orig_id_[i]);
      for (const auto& w : nodes_[i].ports)
        if (holders.count(w)) cut.insert(w);
    }
    s.cut_wires.assign(cut.begin(), cut.end());
    return s;
  }
};

} // namespace

ValidityReport validate(const Circuit& c, std::optional<std::uint64_t> seed) {
  Boxing b(c);
  return b.run(seed);
}

bool validate_all_orders(const Circuit& c, const std::vector<std::uint64_t>& seeds) {
  bool expect = validate(c).valid;
  for (auto s : seeds)
    if (validate(c, s).valid != expect) return false;
  return true;
}

std::string trace_jsonl(const std::vector<BoxingStep>& trace) {
  std::string out;
  for (const auto& s : trace) {
    nlohmann::json j{{"rule", s.rule}, {"boxes", s.boxes}};
    if (s.node >= 0) j["node"] = s.node;
    if (!s.wire.empty()) j["wire"] = s.wire;
    out += j.dump() + "\n";
  }
  return out;
}

std::string stuck_json(const StuckState& s) {
  nlohmann::json j;
  j["boxes"] = nlohmann::json::array();
  for (const auto& b : s.boxes) j["boxes"].push_back({{"id", b.id}, {"nodes", b.nodes}, {"wires", b.wires}});
  j["unboxed_nodes"] = s.unboxed_nodes;
  j["cut_wires"] = s.cut_wires;
  return j.dump();
}

} // namespace ldc
