#include "ldc/templates.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <optional>

namespace ldc {

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\n");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> r;
  std::string cur;
  for (char ch : s) {
    if (ch == ',') {
      if (!trim(cur).empty()) r.push_back(trim(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (!trim(cur).empty()) r.push_back(trim(cur));
  return r;
}

struct RawFactor {
  std::string name;
  bool dag = false;
  bool semi = false;
  std::vector<std::string> a, b;  // before and after ';'
};

std::vector<RawFactor> parse_product(const std::string& text) {
  std::vector<RawFactor> fs;
  size_t i = 0;
  const size_t n = text.size();
  auto is_name = [](char ch) { return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' || ch == '$'; };
  while (i < n) {
    if (std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    RawFactor f;
    size_t s = i;
    while (i < n && is_name(text[i])) ++i;
    f.name = text.substr(s, i - s);
    if (f.name.empty()) throw TemplateError("unexpected '" + std::string(1, text[i]) + "' in template: " + text);
    if (i < n && text[i] == '^') {
      f.dag = true;
      ++i;
    }
    if (i >= n || text[i] != '[') throw TemplateError("factor " + f.name + " needs an index list");
    size_t close = text.find(']', i);
    if (close == std::string::npos) throw TemplateError("unclosed index list in " + text);
    std::string inside = text.substr(i + 1, close - i - 1);
    size_t semi = inside.find(';');
    if (semi != std::string::npos) {
      f.semi = true;
      f.a = split_list(inside.substr(0, semi));
      f.b = split_list(inside.substr(semi + 1));
    } else {
      f.a = split_list(inside);
    }
    i = close + 1;
    fs.push_back(std::move(f));
  }
  return fs;
}

enum class FKind { Role, Box, Id, TensorI, TensorE, ParI, ParE };

struct Factor {
  FKind kind = FKind::Role;
  std::string name;
  std::vector<std::string> outs, ins;
  std::shared_ptr<const Circuit> inner;  // Box
};

bool derivable(const Gadget& g, const std::string& role) {
  if (g.has(role)) return true;
  const std::string suf = "_inv";
  return role.size() > suf.size() && role.compare(role.size() - suf.size(), suf.size(), suf) == 0 &&
         g.has(role.substr(0, role.size() - suf.size()));
}

class Compiler {
public:
  explicit Compiler(const TemplateContext& ctx) : ctx_(ctx) {}

  Circuit run(const std::string& text, const std::vector<std::string>& outs, const std::vector<std::string>& ins,
              const TypeMap& boundary) {
    std::vector<Factor> fs;
    expand(text, {}, fs, 0);
    return build(fs, outs, ins, boundary);
  }

private:
  const TemplateContext& ctx_;
  int fresh_ = 0;

  size_t out_count(const RawFactor& f) const {
    if (f.name == "id" || f.name == "tensor" || f.name == "par") return 1;
    if (f.name == "untensor" || f.name == "unpar") return 2;
    if (auto d = ctx_.defs.find(f.name); d != ctx_.defs.end())
      return f.dag ? d->second.ins.size() : d->second.outs.size();
    auto s = ctx_.sigs.find(f.name);
    if (s == ctx_.sigs.end()) throw TemplateError("unknown role " + f.name);
    return f.dag ? s->second.dom.size() : s->second.cod.size();
  }

  std::pair<std::vector<std::string>, std::vector<std::string>> split(const RawFactor& f) const {
    if (f.semi) return {f.a, f.b};
    size_t k = out_count(f);
    if (k > f.a.size()) throw TemplateError("factor " + f.name + " has too few indices");
    return {{f.a.begin(), f.a.begin() + static_cast<long>(k)}, {f.a.begin() + static_cast<long>(k), f.a.end()}};
  }

  Obj obj(const std::string& role) const { return ctx_.gadget->object(role); }

  std::vector<Obj> objs(const std::vector<std::string>& roles) const {
    std::vector<Obj> r;
    for (const auto& x : roles) r.push_back(obj(x));
    return r;
  }

  void expand(const std::string& text, const std::map<std::string, std::string>& rename, std::vector<Factor>& out,
              int depth) {
    if (depth > 32) throw TemplateError("definition nesting too deep");
    auto mapped = [&](const std::vector<std::string>& v) {
      std::vector<std::string> r;
      for (const auto& x : v) {
        auto it = rename.find(x);
        r.push_back(it == rename.end() ? x : it->second);
      }
      return r;
    };
    for (const auto& raw : parse_product(text)) {
      auto [o, i] = split(raw);
      o = mapped(o);
      i = mapped(i);
      Factor f;
      f.name = raw.name;
      f.outs = o;
      f.ins = i;
      auto def = ctx_.defs.find(raw.name);
      if (raw.name == "id") {
        if (raw.dag || o.size() != 1 || i.size() != 1) throw TemplateError("id takes one output and one input");
        f.kind = FKind::Id;
      } else if (raw.name == "tensor" || raw.name == "par") {
        if (o.size() != 1 || i.size() != 2) throw TemplateError(raw.name + " takes [w;a,c]");
        f.kind = raw.name == "tensor" ? FKind::TensorI : FKind::ParI;
      } else if (raw.name == "untensor" || raw.name == "unpar") {
        if (o.size() != 2 || i.size() != 1) throw TemplateError(raw.name + " takes [a,c;w]");
        f.kind = raw.name == "untensor" ? FKind::TensorE : FKind::ParE;
      } else if (def != ctx_.defs.end() && !raw.dag) {
        const Definition& d = def->second;
        if (o.size() != d.outs.size() || i.size() != d.ins.size())
          throw TemplateError("definition " + d.name + " used with wrong arity");
        std::map<std::string, std::string> sub;
        const std::string tag = d.name + "@" + std::to_string(fresh_++) + ":";
        for (const auto& raw2 : parse_product(d.body)) {
          auto [o2, i2] = split(raw2);
          for (const auto& x : o2) sub[x] = tag + x;
          for (const auto& x : i2) sub[x] = tag + x;
        }
        for (size_t k = 0; k < d.outs.size(); ++k) sub[d.outs[k]] = o[k];
        for (size_t k = 0; k < d.ins.size(); ++k) sub[d.ins[k]] = i[k];
        expand(d.body, sub, out, depth + 1);
        continue;
      } else if (def != ctx_.defs.end()) {
        const Definition& d = def->second;
        Compiler sub(ctx_);
        f.kind = FKind::Box;
        f.inner = std::make_shared<Circuit>(sub.run(d.body, d.outs, d.ins, {}));
        if (o.size() != d.ins.size() || i.size() != d.outs.size())
          throw TemplateError("dagger of " + d.name + " used with wrong arity");
      } else {
        auto s = ctx_.sigs.find(raw.name);
        if (s == ctx_.sigs.end()) throw TemplateError("unknown role " + raw.name);
        if (!derivable(*ctx_.gadget, raw.name)) throw MissingRole(raw.name);
        const Signature& sig = s->second;
        if (raw.dag) {
          if (o.size() != sig.dom.size() || i.size() != sig.cod.size())
            throw TemplateError("dagger of " + raw.name + " used with wrong arity");
          f.kind = FKind::Box;
          f.inner = std::make_shared<Circuit>(generator_circuit(raw.name, objs(sig.dom), objs(sig.cod)));
        } else {
          if (o.size() != sig.cod.size() || i.size() != sig.dom.size())
            throw TemplateError("role " + raw.name + " used with wrong arity");
          f.kind = FKind::Role;
        }
      }
      out.push_back(std::move(f));
    }
  }

  struct Slot {
    int factor;  // -1 for the boundary
    bool producer;
    Obj type;
  };

  Circuit build(const std::vector<Factor>& fs, const std::vector<std::string>& outs,
                const std::vector<std::string>& ins, const TypeMap& boundary) {
    std::map<std::string, std::string> parent;
    std::function<std::string(const std::string&)> find = [&](const std::string& x) -> std::string {
      auto it = parent.find(x);
      if (it == parent.end() || it->second == x) return x;
      return it->second = find(it->second);
    };
    for (const auto& f : fs)
      if (f.kind == FKind::Id) parent[find(f.outs[0])] = find(f.ins[0]);

    std::vector<Slot> slots;
    std::map<std::string, std::vector<int>> cls;  // class -> slot ids
    // per factor: slot ids for its inputs and outputs
    std::vector<std::vector<int>> fin(fs.size()), fout(fs.size());
    auto add = [&](const std::string& idx, int factor, bool producer, Obj t) {
      slots.push_back({factor, producer, std::move(t)});
      int id = static_cast<int>(slots.size()) - 1;
      cls[find(idx)].push_back(id);
      return id;
    };
    for (size_t k = 0; k < fs.size(); ++k) {
      const Factor& f = fs[k];
      if (f.kind == FKind::Id) continue;
      std::vector<Obj> ti(f.ins.size()), to(f.outs.size());
      if (f.kind == FKind::Role) {
        const Signature& sig = ctx_.sigs.at(f.name);
        ti = objs(sig.dom);
        to = objs(sig.cod);
      } else if (f.kind == FKind::Box) {
        ti = dagger_all(f.inner->output_types());
        to = dagger_all(f.inner->input_types());
      }
      for (size_t p = 0; p < f.ins.size(); ++p) fin[k].push_back(add(f.ins[p], static_cast<int>(k), false, ti[p]));
      for (size_t p = 0; p < f.outs.size(); ++p) fout[k].push_back(add(f.outs[p], static_cast<int>(k), true, to[p]));
    }
    auto pinned = [&](const std::string& idx) -> Obj {
      auto it = boundary.find(idx);
      return it == boundary.end() ? nullptr : it->second;
    };
    std::vector<int> bin, bout;
    for (const auto& x : ins) bin.push_back(add(x, -1, true, pinned(x)));
    for (const auto& x : outs) bout.push_back(add(x, -1, false, pinned(x)));

    std::map<std::string, std::pair<int, int>> ends;  // class -> (producer slot, consumer slot)
    for (const auto& [c, ids] : cls) {
      int p = -1, q = -1, np = 0, nq = 0;
      for (int id : ids) {
        if (slots[id].producer) {
          p = id;
          ++np;
        } else {
          q = id;
          ++nq;
        }
      }
      if (np != 1 || nq != 1)
        throw TemplateError("index " + c + " has " + std::to_string(np) + " producers and " + std::to_string(nq) +
                            " consumers");
      ends[c] = {p, q};
    }

    // type inference to a fixpoint
    auto infer_struct = [&](const Factor& f, size_t k) {
      bool tens = f.kind == FKind::TensorI || f.kind == FKind::TensorE;
      int w, a, c;
      if (f.kind == FKind::TensorI || f.kind == FKind::ParI) {
        w = fout[k][0];
        a = fin[k][0];
        c = fin[k][1];
      } else {
        w = fin[k][0];
        a = fout[k][0];
        c = fout[k][1];
      }
      bool changed = false;
      if (!slots[w].type && slots[a].type && slots[c].type) {
        slots[w].type = tens ? ObjectExpr::tensor(slots[a].type, slots[c].type)
                             : ObjectExpr::par(slots[a].type, slots[c].type);
        changed = true;
      }
      const Obj& wt = slots[w].type;
      if (wt && wt->kind() == (tens ? ObjectExpr::Kind::Tensor : ObjectExpr::Kind::Par)) {
        if (!slots[a].type) {
          slots[a].type = wt->left();
          changed = true;
        }
        if (!slots[c].type) {
          slots[c].type = wt->right();
          changed = true;
        }
      }
      return changed;
    };
    for (bool changed = true; changed;) {
      changed = false;
      for (auto& [c, pq] : ends) {
        auto& [p, q] = pq;
        if (!slots[p].type && slots[q].type) {
          slots[p].type = slots[q].type;
          changed = true;
        } else if (slots[p].type && !slots[q].type) {
          slots[q].type = slots[p].type;
          changed = true;
        }
      }
      for (size_t k = 0; k < fs.size(); ++k)
        if (fs[k].kind != FKind::Role && fs[k].kind != FKind::Box && fs[k].kind != FKind::Id)
          changed = infer_struct(fs[k], k) || changed;
    }
    for (const auto& [c, pq] : ends)
      if (!slots[pq.first].type || !slots[pq.second].type) throw TemplateError("cannot infer type of index " + c);

    Circuit circ;
    std::vector<std::string> slot_wire(slots.size());
    for (const auto& [c, pq] : ends) {
      auto [p, q] = pq;
      if (same_object(slots[p].type, slots[q].type)) {
        circ.wires.push_back({c, slots[p].type});
        slot_wire[p] = slot_wire[q] = c;
      } else {
        circ.wires.push_back({c, slots[p].type});
        circ.wires.push_back({c + "~", slots[q].type});
        slot_wire[p] = c;
        slot_wire[q] = c + "~";
        Node iso;
        iso.kind = NodeKind::Generator;
        iso.name = "$iso";
        iso.ports = {c, c + "~"};
        iso.n_in = 1;
        circ.nodes.push_back(iso);
      }
    }
    for (size_t k = 0; k < fs.size(); ++k) {
      const Factor& f = fs[k];
      if (f.kind == FKind::Id) continue;
      Node n;
      switch (f.kind) {
      case FKind::Role: n.kind = NodeKind::Generator; break;
      case FKind::Box: n.kind = NodeKind::DaggerBox; break;
      case FKind::TensorI: n.kind = NodeKind::TensorIntro; break;
      case FKind::TensorE: n.kind = NodeKind::TensorElim; break;
      case FKind::ParI: n.kind = NodeKind::ParIntro; break;
      case FKind::ParE: n.kind = NodeKind::ParElim; break;
      case FKind::Id: break;
      }
      if (f.kind == FKind::Role) n.name = f.name;
      n.inner = f.inner;
      for (int id : fin[k]) n.ports.push_back(slot_wire[id]);
      for (int id : fout[k]) n.ports.push_back(slot_wire[id]);
      n.n_in = static_cast<int>(fin[k].size());
      circ.nodes.push_back(std::move(n));
    }
    for (int id : bin) circ.inputs.push_back(slot_wire[id]);
    for (int id : bout) circ.outputs.push_back(slot_wire[id]);
    check_circuit(circ);
    return circ;
  }
};

bool is_inference_failure(const TemplateError& e) {
  return std::string(e.what()).rfind("cannot infer", 0) == 0;
}

} // namespace

Definition parse_definition(const std::string& text) {
  size_t eq = text.find('=');
  if (eq == std::string::npos) throw TemplateError("definition needs '=': " + text);
  auto head = parse_product(text.substr(0, eq));
  if (head.size() != 1 || head[0].dag) throw TemplateError("definition head must be a single factor: " + text);
  Definition d;
  d.name = head[0].name;
  d.outs = head[0].a;
  d.ins = head[0].b;
  d.body = trim(text.substr(eq + 1));
  return d;
}

Circuit compile_template(const std::string& text, const std::vector<std::string>& outs,
                         const std::vector<std::string>& ins, const TemplateContext& ctx, const TypeMap& boundary) {
  if (!ctx.gadget) throw TemplateError("template compiled without a gadget");
  Compiler c(ctx);
  return c.run(text, outs, ins, boundary);
}

std::pair<Circuit, Circuit> compile_equation(const std::string& lhs, const std::string& rhs,
                                             const std::vector<std::string>& outs,
                                             const std::vector<std::string>& ins, const TemplateContext& ctx) {
  auto types_of = [&](const Circuit& c) {
    TypeMap m;
    for (size_t k = 0; k < outs.size(); ++k) m[outs[k]] = c.type_of(c.outputs[k]);
    for (size_t k = 0; k < ins.size(); ++k) m[ins[k]] = c.type_of(c.inputs[k]);
    return m;
  };
  std::optional<Circuit> l;
  try {
    l = compile_template(lhs, outs, ins, ctx);
  } catch (const TemplateError& e) {
    if (!is_inference_failure(e)) throw;
  }
  if (l) return {*l, compile_template(rhs, outs, ins, ctx, types_of(*l))};
  Circuit r = compile_template(rhs, outs, ins, ctx);
  return {compile_template(lhs, outs, ins, ctx, types_of(r)), r};
}

} // namespace ldc
