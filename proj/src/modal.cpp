#include "stablelab/modal.hpp"

#include <algorithm>

namespace stablelab {

std::string BimoduleViolation::to_string() const {
  auto pair = [](int a, int b) { return "(" + std::to_string(a) + "," + std::to_string(b) + ")"; };
  switch (cond) {
    case Cond::Law:
      return "bimodule law violated: " + pair(w, v) + " forces " + pair(w2, v2);
    case Cond::I:
      return "condition (i) violated at w=" + std::to_string(w) + ", v1=" + std::to_string(v) +
             ", v2=" + std::to_string(v2);
    case Cond::II:
      return "condition (ii) violated: no R to top from w=" + std::to_string(w);
    case Cond::III:
      return "condition (iii) violated at w1=" + std::to_string(w) + ", w2=" + std::to_string(w2) +
             ", v=" + std::to_string(v);
    case Cond::IV:
      return "condition (iv) violated: top R " + std::to_string(v);
  }
  return "unknown violation";
}

std::optional<BimoduleViolation> bimodule_violation(const FinLattice& frame,
                                                    const std::vector<std::uint8_t>& rel) {
  const int n = frame.n();
  if (rel.size() != static_cast<size_t>(n) * n)
    return BimoduleViolation{BimoduleViolation::Cond::Law, -1, -1, -1, -1};
  auto at = [&](int w, int v) { return rel[static_cast<size_t>(w) * n + v] != 0; };

  for (int w = 0; w < n; ++w)
    for (int v = 0; v < n; ++v) {
      if (!at(w, v)) continue;
      for (int w2 = 0; w2 < n; ++w2)
        for (int v2 = 0; v2 < n; ++v2)
          if (frame.le(w2, w) && frame.le(v, v2) && !at(w2, v2))
            return BimoduleViolation{BimoduleViolation::Cond::Law, w, v, w2, v2};
    }

  for (int w = 0; w < n; ++w)
    for (int v1 = 0; v1 < n; ++v1)
      for (int v2 = 0; v2 < n; ++v2)
        if (at(w, v1) && at(w, v2) && !at(w, frame.meet(v1, v2)))
          return BimoduleViolation{BimoduleViolation::Cond::I, w, v1, -1, v2};

  for (int w = 0; w < n; ++w)
    if (!at(w, frame.top)) {
      // (ii) follows from the law plus (iv): with the law already
      // validated, a missing w R top forces top R top to be missing too.
      if (at(frame.top, frame.top))
        throw std::logic_error("condition (ii) failed although derivable");
      return BimoduleViolation{BimoduleViolation::Cond::II, w};
    }

  for (int w1 = 0; w1 < n; ++w1)
    for (int w2 = 0; w2 < n; ++w2)
      for (int v = 0; v < n; ++v) {
        if (!at(frame.meet(w1, w2), v)) continue;
        bool found = false;
        for (int v1 = 0; v1 < n && !found; ++v1)
          for (int v2 = 0; v2 < n && !found; ++v2)
            if (at(w1, v1) && at(w2, v2) && frame.le(frame.meet(v1, v2), v)) found = true;
        if (!found) return BimoduleViolation{BimoduleViolation::Cond::III, w1, v, w2};
      }

  for (int v = 0; v < n; ++v)
    if (at(frame.top, v) != (v == frame.top))
      return BimoduleViolation{BimoduleViolation::Cond::IV, frame.top, v};

  return std::nullopt;
}

StableBimodule check_stable_bimodule(const FinLattice& frame, std::vector<std::uint8_t> rel) {
  if (auto v = bimodule_violation(frame, rel)) throw ValidationError(v->to_string());
  return StableBimodule{frame.n(), std::move(rel)};
}

StableBimodule order_bimodule(const FinLattice& frame) {
  return check_stable_bimodule(frame, frame.poset.leq);
}

Bitset diamond_set(const FinLattice& frame, const std::vector<std::uint8_t>& rel, Bitset F) {
  const int n = frame.n();
  Bitset out = 0;
  for (int w = 0; w < n; ++w)
    for (int v : BitRange(F))
      if (rel[static_cast<size_t>(v) * n + w]) {
        out |= bit(w);
        break;
      }
  return out;
}

Bitset box_set(const FinLattice& frame, const std::vector<std::uint8_t>& rel, Bitset F) {
  const int n = frame.n();
  Bitset out = 0;
  for (int w = 0; w < n; ++w) {
    bool all = true;
    for (int v = 0; v < n; ++v)
      if (rel[static_cast<size_t>(w) * n + v] && !has_bit(F, v)) {
        all = false;
        break;
      }
    if (all) out |= bit(w);
  }
  return out;
}

namespace {

void require_on_frame(const FinLattice& frame, const Filter& F) {
  if (!F.carrier || !same_lattice(*F.carrier, frame))
    throw CarrierMismatch("filter does not live on the bimodule's frame");
}

}  // namespace

Filter diamond_r(const FinLattice& frame, const StableBimodule& B, const Filter& F) {
  require_on_frame(frame, F);
  return make_filter(frame, diamond_set(frame, B.rel, F.members));
}

Filter box_r(const FinLattice& frame, const StableBimodule& B, const Filter& F) {
  require_on_frame(frame, F);
  return make_filter(frame, box_set(frame, B.rel, F.members));
}

AdjunctionOnFiltersReport check_adjunction_on_filters(const FinLattice& frame,
                                                      const StableBimodule& B) {
  AdjunctionOnFiltersReport rep;
  FilterLattice FL = enumerate_filters(frame);
  const int m = FL.size();

  std::vector<int> dia(m), box(m);
  for (int i = 0; i < m; ++i) {
    dia[i] = FL.index_of(diamond_set(frame, B.rel, FL.filters[i]));
    box[i] = FL.index_of(box_set(frame, B.rel, FL.filters[i]));
    if (dia[i] < 0 || box[i] < 0) {
      rep.ok = false;
      rep.failure = "modal image of filter " + std::to_string(i) + " is not a filter";
      return rep;
    }
  }

  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      ++rep.pairs_checked;
      if (FL.order.le(dia[i], j) != FL.order.le(i, box[j])) {
        rep.ok = false;
        rep.failure = "adjunction fails at filter pair (" + std::to_string(i) + "," +
                      std::to_string(j) + ")";
        return rep;
      }
    }

  // Diamond is a left adjoint: preserves joins and the bottom filter;
  // box preserves intersections and the top.
  if (dia[FL.bottom()] != FL.bottom() || box[FL.top()] != FL.top()) {
    rep.ok = false;
    rep.failure = "bounds not preserved";
    return rep;
  }
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      if (dia[FL.order.join(i, j)] != FL.order.join(dia[i], dia[j])) {
        rep.ok = false;
        rep.failure = "diamond does not preserve the join of (" + std::to_string(i) + "," +
                      std::to_string(j) + ")";
        return rep;
      }
      if (box[FL.order.meet(i, j)] != FL.order.meet(box[i], box[j])) {
        rep.ok = false;
        rep.failure = "box does not preserve the meet of (" + std::to_string(i) + "," +
                      std::to_string(j) + ")";
        return rep;
      }
    }

  // The same adjunction must arise as the Scott-continuous extension of
  // w |-> {v : w R v} along the principal embedding.
  FinLattice opp = opposite(frame);
  MonotoneMap lam{&opp, &FL.order, {}};
  lam.table.resize(frame.n());
  for (int w = 0; w < frame.n(); ++w) {
    Bitset row = 0;
    for (int v = 0; v < frame.n(); ++v)
      if (B.at(w, v)) row |= bit(v);
    lam.table[w] = FL.index_of(row);
    if (lam.table[w] < 0) {
      rep.ok = false;
      rep.failure = "relation row of " + std::to_string(w) + " is not a filter";
      return rep;
    }
  }
  ScottExtension ext = scott_extend(lam);
  if (ext.domain_filters != FL.filters)
    throw std::logic_error("extension domain does not match the filter locale");
  for (int i = 0; i < m; ++i) {
    if (ext.sigma[i] != dia[i]) {
      rep.ok = false;
      rep.failure = "diamond disagrees with the Scott extension at filter " + std::to_string(i);
      return rep;
    }
  }
  for (int j = 0; j < m; ++j) {
    if (ext.nerve[j] != box[j]) {
      rep.ok = false;
      rep.failure = "box disagrees with the extension's right adjoint at filter " +
                    std::to_string(j);
      return rep;
    }
  }
  return rep;
}

std::optional<std::string> adjunction_violation(const LatticeAdjunction& A) {
  const FinLattice& H = *A.algebra;
  const int n = H.n();
  if (static_cast<int>(A.dia.size()) != n || static_cast<int>(A.box.size()) != n)
    return "tables not sized to the algebra";
  if (A.dia[H.bottom] != H.bottom) return "dia does not preserve bottom";
  if (A.box[H.top] != H.top) return "box does not preserve top";
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (A.dia[H.join(a, b)] != H.join(A.dia[a], A.dia[b]))
        return "dia does not preserve the join of (" + std::to_string(a) + "," +
               std::to_string(b) + ")";
      if (A.box[H.meet(a, b)] != H.meet(A.box[a], A.box[b]))
        return "box does not preserve the meet of (" + std::to_string(a) + "," +
               std::to_string(b) + ")";
      if (H.le(A.dia[a], b) != H.le(a, A.box[b]))
        return "adjunction fails at (" + std::to_string(a) + "," + std::to_string(b) + ")";
    }
  return std::nullopt;
}

LatticeAdjunction make_adjunction(const FinLattice& H, std::vector<int> dia,
                                  std::vector<int> box) {
  LatticeAdjunction A{&H, std::move(dia), std::move(box)};
  if (auto v = adjunction_violation(A)) throw ValidationError("invalid adjunction: " + *v);
  return A;
}

std::vector<int> right_adjoint_of(const FinLattice& H, const std::vector<int>& dia) {
  MonotoneMap m{&H, &H, dia};
  if (auto v = monotonicity_violation(m))
    throw ValidationError("dia not monotone at (" + std::to_string(v->first) + "," +
                          std::to_string(v->second) + ")");
  JoinPreservationCheck jp = check_join_preserving(m);
  if (!jp.ok) throw ValidationError("dia not join-preserving: " + jp.to_string());
  std::vector<int> box(H.n());
  for (int y = 0; y < H.n(); ++y) {
    int b = H.bottom;
    for (int x = 0; x < H.n(); ++x)
      if (H.le(dia[x], y)) b = H.join(b, x);
    box[y] = b;
  }
  make_adjunction(H, dia, box);  // validates the pair
  return box;
}

ModalFrame bimodule_from_adjunction(const FinLattice& H, const LatticeAdjunction& A) {
  if (!H.distributive) throw ValidationError("algebra must be distributive");
  if (auto v = adjunction_violation(A)) throw ValidationError("invalid adjunction: " + *v);
  const int n = H.n();
  ModalFrame MF;
  MF.frame = opposite(H);
  std::vector<std::uint8_t> rel(static_cast<size_t>(n) * n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) rel[static_cast<size_t>(x) * n + y] = H.le(y, A.dia[x]) ? 1 : 0;
  MF.bimodule = check_stable_bimodule(MF.frame, std::move(rel));

  // Condition (iii) admits canonical witnesses y_i = y /\ dia(x_i); verify
  // they really witness every instance.
  for (int x1 = 0; x1 < n; ++x1)
    for (int x2 = 0; x2 < n; ++x2)
      for (int y = 0; y < n; ++y) {
        if (!MF.bimodule.at(MF.frame.meet(x1, x2), y)) continue;
        int y1 = H.meet(y, A.dia[x1]);
        int y2 = H.meet(y, A.dia[x2]);
        if (!MF.bimodule.at(x1, y1) || !MF.bimodule.at(x2, y2) ||
            !MF.frame.le(MF.frame.meet(y1, y2), y))
          throw std::logic_error("canonical witnesses fail condition (iii)");
      }
  return MF;
}

EmbeddingReport modal_embedding_check(const FinLattice& H, const LatticeAdjunction& A) {
  EmbeddingReport rep;
  ModalFrame MF = bimodule_from_adjunction(H, A);
  const FinLattice& fr = MF.frame;
  for (int z = 0; z < H.n(); ++z) {
    ++rep.instances;
    Bitset principal = fr.up_set(z);
    if (diamond_set(fr, MF.bimodule.rel, principal) != fr.up_set(A.dia[z])) {
      rep.ok = false;
      rep.failure = "diamond square fails at " + std::to_string(z);
      return rep;
    }
    if (box_set(fr, MF.bimodule.rel, principal) != fr.up_set(A.box[z])) {
      rep.ok = false;
      rep.failure = "box square fails at " + std::to_string(z);
      return rep;
    }
  }
  return rep;
}

void enumerate_stable_bimodules(const FinLattice& frame,
                                const std::function<void(const StableBimodule&)>& yield) {
  const int n = frame.n();
  const int pairs = n * n;
  if (pairs > kMaxElements) throw CapExceeded("bimodule enumeration capped at 8x8 frames");

  // A bimodule is exactly an upper set of the product order
  // (w,v) <= (w',v') iff w' <= w and v <= v'. Including a pair forces in
  // everything above it; excluding forces out everything below.
  std::vector<Bitset> up(pairs), down(pairs);
  for (int w = 0; w < n; ++w)
    for (int v = 0; v < n; ++v) {
      int p = w * n + v;
      for (int w2 = 0; w2 < n; ++w2)
        for (int v2 = 0; v2 < n; ++v2) {
          if (frame.le(w2, w) && frame.le(v, v2)) up[p] |= bit(w2 * n + v2);
          if (frame.le(w, w2) && frame.le(v2, v)) down[p] |= bit(w2 * n + v2);
        }
    }

  std::vector<std::uint8_t> rel(pairs);
  auto emit = [&](Bitset in) {
    for (int p = 0; p < pairs; ++p) rel[p] = has_bit(in, p) ? 1 : 0;
    if (!bimodule_violation(frame, rel)) yield(StableBimodule{n, rel});
  };

  auto rec = [&](auto&& self, int idx, Bitset in, Bitset out) -> void {
    while (idx < pairs && (has_bit(in, idx) || has_bit(out, idx))) ++idx;
    if (idx == pairs) {
      emit(in);
      return;
    }
    Bitset nout = out | down[idx];
    if ((in & nout) == 0) self(self, idx + 1, in, nout);
    Bitset nin = in | up[idx];
    if ((nin & out) == 0) self(self, idx + 1, nin, out);
  };
  rec(rec, 0, 0, 0);
}

void enumerate_join_preserving_maps(const FinLattice& H, const FinLattice& L,
                                    const std::function<void(const std::vector<int>&)>& yield) {
  std::vector<int> J = join_irreducibles(H);
  std::vector<int> g(J.size(), -1);
  std::vector<int> table(H.n());

  auto induce = [&]() {
    for (int x = 0; x < H.n(); ++x) {
      int j = L.bottom;
      for (size_t t = 0; t < J.size(); ++t)
        if (H.le(J[t], x)) j = L.join(j, g[t]);
      table[x] = j;
    }
    MonotoneMap m{&H, &L, table};
    if (check_join_preserving(m).ok) yield(table);
  };

  auto rec = [&](auto&& self, size_t t) -> void {
    if (t == J.size()) {
      induce();
      return;
    }
    for (int y = 0; y < L.n(); ++y) {
      bool ok = true;
      for (size_t s = 0; s < t; ++s) {
        if (H.le(J[s], J[t]) && !L.le(g[s], y)) ok = false;
        if (H.le(J[t], J[s]) && !L.le(y, g[s])) ok = false;
      }
      if (!ok) continue;
      g[t] = y;
      self(self, t + 1);
    }
    g[t] = -1;
  };
  rec(rec, 0);
}

void enumerate_stable_maps(const FinLattice& H, const FinLattice& L,
                           const std::function<void(const MonotoneMap&)>& yield) {
  std::vector<int> M = meet_irreducibles(H);
  std::vector<int> g(M.size(), -1);
  std::vector<int> table(H.n());

  auto induce = [&]() {
    for (int x = 0; x < H.n(); ++x) {
      int j = L.top;
      for (size_t t = 0; t < M.size(); ++t)
        if (H.le(x, M[t])) j = L.meet(j, g[t]);
      table[x] = j;
    }
    MonotoneMap m{&H, &L, table};
    if (is_stable_map(m).ok) yield(m);
  };

  auto rec = [&](auto&& self, size_t t) -> void {
    if (t == M.size()) {
      induce();
      return;
    }
    for (int y = 0; y < L.n(); ++y) {
      bool ok = true;
      for (size_t s = 0; s < t; ++s) {
        if (H.le(M[s], M[t]) && !L.le(g[s], y)) ok = false;
        if (H.le(M[t], M[s]) && !L.le(y, g[s])) ok = false;
      }
      if (!ok) continue;
      g[t] = y;
      self(self, t + 1);
    }
    g[t] = -1;
  };
  rec(rec, 0);
}

}  // namespace stablelab
