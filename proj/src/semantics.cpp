#include "stablelab/semantics.hpp"

#include <unordered_map>

namespace stablelab {

StableModel make_stable_model(FinLattice frame, std::map<std::string, Bitset> valuation,
                              std::optional<StableBimodule> bimodule) {
  if (!frame.distributive) {
    std::string msg = "frame not distributive";
    if (frame.distributivity_witness) {
      const auto& w = *frame.distributivity_witness;
      msg += ": witness (" + std::to_string(w.a) + "," + std::to_string(w.x) + "," +
             std::to_string(w.y) + ")";
    }
    throw ValidationError(msg);
  }
  for (const auto& [name, S] : valuation)
    if (auto v = filter_violation(frame, S))
      throw ValidationError("valuation '" + name + "' is not a filter: " + v->to_string());
  if (bimodule) {
    if (bimodule->n != frame.n())
      throw ValidationError("bimodule not sized to the frame");
    if (auto v = bimodule_violation(frame, bimodule->rel)) throw ValidationError(v->to_string());
  }
  return StableModel{std::move(frame), std::move(valuation), std::move(bimodule)};
}

namespace {

struct ForcingEval {
  const StableModel& M;
  bool lenient;
  std::unordered_map<const Formula*, Bitset> memo;

  Bitset atom_set(const std::string& name) const {
    auto it = M.valuation.find(name);
    if (it != M.valuation.end()) return it->second;
    if (lenient) return bit(M.frame.top);  // the bottom filter {1}
    throw UnboundAtom(name);
  }

  Bitset eval(const Formula& f) {
    auto it = memo.find(&f);
    if (it != memo.end()) return it->second;
    const FinLattice& W = M.frame;
    const int n = W.n();
    Bitset out = 0;
    switch (f.kind) {
      case Conn::Atom:
        out = atom_set(f.atom);
        break;
      case Conn::Top:
        out = W.carrier_mask();
        break;
      case Conn::Bot:
        out = bit(W.top);  // falsity holds at the top world alone
        break;
      case Conn::And:
        out = eval(*f.left) & eval(*f.right);
        break;
      case Conn::Or: {
        // w is forced when the disjuncts hold at some v1, v2 with
        // v1 /\ v2 below w.
        Bitset sl = eval(*f.left), sr = eval(*f.right);
        for (int v1 : BitRange(sl))
          for (int v2 : BitRange(sr)) out |= W.up_set(W.meet(v1, v2));
        break;
      }
      case Conn::Imp: {
        Bitset sl = eval(*f.left), sr = eval(*f.right);
        for (int w = 0; w < n; ++w)
          if ((W.up_set(w) & sl & ~sr) == 0) out |= bit(w);
        break;
      }
      case Conn::Dia: {
        if (!M.bimodule) throw MissingBimodule();
        out = diamond_set(W, M.bimodule->rel, eval(*f.left));
        break;
      }
      case Conn::Box: {
        if (!M.bimodule) throw MissingBimodule();
        out = box_set(W, M.bimodule->rel, eval(*f.left));
        break;
      }
    }
    memo.emplace(&f, out);
    return out;
  }
};

}  // namespace

Bitset forcing_set(const StableModel& M, const Formula& f, bool lenient_atoms) {
  ForcingEval ev{M, lenient_atoms, {}};
  return ev.eval(f);
}

bool force(const StableModel& M, int w, const Formula& f, bool lenient_atoms) {
  return has_bit(forcing_set(M, f, lenient_atoms), w);
}

Filter eval_filter(const StableModel& M, const Formula& f, bool lenient_atoms) {
  const FinLattice& W = M.frame;
  switch (f.kind) {
    case Conn::Atom: {
      auto it = M.valuation.find(f.atom);
      if (it != M.valuation.end()) return make_filter(W, it->second);
      if (lenient_atoms) return principal_filter(W, W.top);
      throw UnboundAtom(f.atom);
    }
    case Conn::Top:
      return principal_filter(W, W.bottom);
    case Conn::Bot:
      return principal_filter(W, W.top);
    case Conn::And:
      return filter_meet(eval_filter(M, *f.left, lenient_atoms),
                         eval_filter(M, *f.right, lenient_atoms));
    case Conn::Or:
      return filter_join(eval_filter(M, *f.left, lenient_atoms),
                         eval_filter(M, *f.right, lenient_atoms));
    case Conn::Imp:
      return filter_heyting(eval_filter(M, *f.left, lenient_atoms),
                            eval_filter(M, *f.right, lenient_atoms));
    case Conn::Dia:
      if (!M.bimodule) throw MissingBimodule();
      return diamond_r(W, *M.bimodule, eval_filter(M, *f.left, lenient_atoms));
    case Conn::Box:
      if (!M.bimodule) throw MissingBimodule();
      return box_r(W, *M.bimodule, eval_filter(M, *f.left, lenient_atoms));
  }
  throw std::logic_error("unreachable formula kind");
}

int heyting_eval(const HeytingAssignment& asg, const Formula& f, const LatticeAdjunction* adj) {
  const FinLattice& H = *asg.algebra;
  if (!H.distributive) throw ValidationError("algebra must be distributive");
  switch (f.kind) {
    case Conn::Atom: {
      auto it = asg.elements.find(f.atom);
      if (it == asg.elements.end()) throw UnboundAtom(f.atom);
      return it->second;
    }
    case Conn::Top:
      return H.top;
    case Conn::Bot:
      return H.bottom;
    case Conn::And:
      return H.meet(heyting_eval(asg, *f.left, adj), heyting_eval(asg, *f.right, adj));
    case Conn::Or:
      return H.join(heyting_eval(asg, *f.left, adj), heyting_eval(asg, *f.right, adj));
    case Conn::Imp:
      return heyting_implies(H, heyting_eval(asg, *f.left, adj),
                             heyting_eval(asg, *f.right, adj));
    case Conn::Dia:
      if (!adj) throw ValidationError("modal formula needs an adjunction on the algebra");
      return adj->dia[heyting_eval(asg, *f.left, adj)];
    case Conn::Box:
      if (!adj) throw ValidationError("modal formula needs an adjunction on the algebra");
      return adj->box[heyting_eval(asg, *f.left, adj)];
  }
  throw std::logic_error("unreachable formula kind");
}

KripkeModel make_kripke_model(FinPoset frame, std::map<std::string, Bitset> valuation,
                              std::optional<std::vector<std::uint8_t>> rel) {
  if (auto v = find_poset_violation(frame.n, frame.leq)) throw ValidationError(v->to_string());
  for (const auto& [name, S] : valuation)
    for (int w : BitRange(S & full_mask(frame.n)))
      if ((frame.up_set(w) & ~S) != 0)
        throw ValidationError("valuation '" + name + "' is not an upper set");
  if (rel) {
    const int n = frame.n;
    if (rel->size() != static_cast<size_t>(n) * n)
      throw ValidationError("relation not sized to the frame");
    auto at = [&](int w, int v) { return (*rel)[static_cast<size_t>(w) * n + v] != 0; };
    for (int w = 0; w < n; ++w)
      for (int v = 0; v < n; ++v) {
        if (!at(w, v)) continue;
        for (int w2 = 0; w2 < n; ++w2)
          for (int v2 = 0; v2 < n; ++v2)
            if (frame.le(w2, w) && frame.le(v, v2) && !at(w2, v2))
              throw ValidationError("relation violates the bimodule law");
      }
  }
  return KripkeModel{std::move(frame), std::move(valuation), std::move(rel)};
}

namespace {

struct KripkeEval {
  const KripkeModel& K;
  std::unordered_map<const Formula*, Bitset> memo;

  Bitset eval(const Formula& f) {
    auto it = memo.find(&f);
    if (it != memo.end()) return it->second;
    const FinPoset& W = K.frame;
    const int n = W.n;
    Bitset out = 0;
    switch (f.kind) {
      case Conn::Atom: {
        auto v = K.valuation.find(f.atom);
        if (v == K.valuation.end()) throw UnboundAtom(f.atom);
        out = v->second;
        break;
      }
      case Conn::Top:
        out = full_mask(n);
        break;
      case Conn::Bot:
        out = 0;
        break;
      case Conn::And:
        out = eval(*f.left) & eval(*f.right);
        break;
      case Conn::Or:
        out = eval(*f.left) | eval(*f.right);
        break;
      case Conn::Imp: {
        Bitset sl = eval(*f.left), sr = eval(*f.right);
        for (int w = 0; w < n; ++w)
          if ((W.up_set(w) & sl & ~sr) == 0) out |= bit(w);
        break;
      }
      case Conn::Dia: {
        if (!K.rel) throw MissingBimodule();
        Bitset s = eval(*f.left);
        for (int w = 0; w < n; ++w)
          for (int v : BitRange(s))
            if ((*K.rel)[static_cast<size_t>(v) * n + w]) {
              out |= bit(w);
              break;
            }
        break;
      }
      case Conn::Box: {
        if (!K.rel) throw MissingBimodule();
        Bitset s = eval(*f.left);
        for (int w = 0; w < n; ++w) {
          bool all = true;
          for (int v = 0; v < n; ++v)
            if ((*K.rel)[static_cast<size_t>(w) * n + v] && !has_bit(s, v)) {
              all = false;
              break;
            }
          if (all) out |= bit(w);
        }
        break;
      }
    }
    memo.emplace(&f, out);
    return out;
  }
};

}  // namespace

Bitset kripke_forcing_set(const KripkeModel& K, const Formula& f) {
  KripkeEval ev{K, {}};
  return ev.eval(f);
}

bool kripke_force(const KripkeModel& K, int w, const Formula& f) {
  return has_bit(kripke_forcing_set(K, f), w);
}

StableModel build_upset_model(const HeytingAssignment& asg, const LatticeAdjunction* adj) {
  const FinLattice& H = *asg.algebra;
  if (!H.distributive) throw ValidationError("algebra must be distributive");
  std::map<std::string, Bitset> valuation;
  for (const auto& [name, x] : asg.elements) valuation[name] = H.down_set(x);
  if (adj) {
    ModalFrame MF = bimodule_from_adjunction(H, *adj);
    return make_stable_model(std::move(MF.frame), std::move(valuation), std::move(MF.bimodule));
  }
  return make_stable_model(opposite(H), std::move(valuation));
}

SearchOutcome countermodel_search(const Formula& f, int max_base_size, int vars_cap) {
  if (has_modality(f))
    throw CapExceeded("countermodel search covers the propositional fragment only");
  std::set<std::string> names = atoms(f);
  if (static_cast<int>(names.size()) > vars_cap)
    throw CapExceeded("formula uses " + std::to_string(names.size()) + " atoms, cap is " +
                      std::to_string(vars_cap));
  std::vector<std::string> order(names.begin(), names.end());

  SearchOutcome out;
  for (FinLattice& L : enumerate_distributive_lattices(max_base_size)) {
    FilterLattice FL = enumerate_filters(L);
    const int m = FL.size();
    std::vector<int> odo(order.size(), 0);
    while (true) {
      std::map<std::string, Bitset> valuation;
      for (size_t a = 0; a < order.size(); ++a) valuation[order[a]] = FL.filters[odo[a]];
      StableModel M = make_stable_model(L, std::move(valuation));
      ++out.models_checked;
      Bitset forced = forcing_set(M, f);
      if (forced != L.carrier_mask()) {
        out.found = true;
        out.world = first_bit(L.carrier_mask() & ~forced);
        out.model = std::move(M);
        return out;
      }
      // Advance the odometer, first atom slowest.
      size_t a = order.size();
      while (a > 0) {
        --a;
        if (++odo[a] < m) break;
        odo[a] = 0;
        if (a == 0) goto next_lattice;
      }
      if (order.empty()) break;  // closed formula: single valuation
    }
  next_lattice:;
  }
  return out;
}

namespace {

void explain_rec(const StableModel& M, ForcingEval& ev, int w, const Formula& f,
                 const std::vector<std::string>& names, int indent, std::string& out) {
  const FinLattice& W = M.frame;
  auto name = [&](int i) {
    return i < static_cast<int>(names.size()) ? names[i] : "w" + std::to_string(i);
  };
  Bitset set = ev.eval(f);
  bool holds = has_bit(set, w);
  out += std::string(static_cast<size_t>(indent) * 2, ' ');
  out += name(w) + " ||- " + print(f) + " : " + (holds ? "true" : "false");
  switch (f.kind) {
    case Conn::Bot:
      if (holds) out += "   (top world forces everything)";
      out += "\n";
      break;
    case Conn::Atom:
      out += holds ? "   (atom holds here)" : "   (atom fails here)";
      out += "\n";
      break;
    case Conn::Top:
      out += "\n";
      break;
    case Conn::And:
      out += "\n";
      explain_rec(M, ev, w, *f.left, names, indent + 1, out);
      explain_rec(M, ev, w, *f.right, names, indent + 1, out);
      break;
    case Conn::Or: {
      if (holds) {
        Bitset sl = ev.eval(*f.left), sr = ev.eval(*f.right);
        for (int v1 : BitRange(sl)) {
          for (int v2 : BitRange(sr)) {
            if (W.le(W.meet(v1, v2), w)) {
              out += "   (v1=" + name(v1) + ", v2=" + name(v2) + ", v1/\\v2=" +
                     name(W.meet(v1, v2)) + " below " + name(w) + ")\n";
              explain_rec(M, ev, v1, *f.left, names, indent + 1, out);
              explain_rec(M, ev, v2, *f.right, names, indent + 1, out);
              return;
            }
          }
        }
      }
      out += "   (no witness pair)\n";
      break;
    }
    case Conn::Imp: {
      if (!holds) {
        Bitset sl = ev.eval(*f.left), sr = ev.eval(*f.right);
        Bitset bad = W.up_set(w) & sl & ~sr;
        int v = first_bit(bad);
        out += "   (fails above at " + name(v) + ")\n";
        explain_rec(M, ev, v, *f.left, names, indent + 1, out);
        explain_rec(M, ev, v, *f.right, names, indent + 1, out);
      } else {
        out += "   (holds at every world above)\n";
      }
      break;
    }
    case Conn::Dia: {
      if (holds) {
        Bitset s = ev.eval(*f.left);
        for (int v : BitRange(s))
          if (M.bimodule->at(v, w)) {
            out += "   (witness " + name(v) + " R " + name(w) + ")\n";
            explain_rec(M, ev, v, *f.left, names, indent + 1, out);
            return;
          }
      }
      out += "   (no related witness)\n";
      break;
    }
    case Conn::Box: {
      if (!holds) {
        Bitset s = ev.eval(*f.left);
        for (int v = 0; v < W.n(); ++v)
          if (M.bimodule->at(w, v) && !has_bit(s, v)) {
            out += "   (fails at successor " + name(v) + ")\n";
            explain_rec(M, ev, v, *f.left, names, indent + 1, out);
            return;
          }
      }
      out += "   (holds at every successor)\n";
      break;
    }
  }
}

}  // namespace

std::string explain_force(const StableModel& M, int w, const Formula& f,
                          const std::vector<std::string>& names, bool lenient_atoms) {
  ForcingEval ev{M, lenient_atoms, {}};
  std::string out;
  explain_rec(M, ev, w, f, names, 0, out);
  return out;
}

}  // namespace stablelab
