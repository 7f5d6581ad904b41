#include "stablelab/filter.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace stablelab {

namespace {

void require_same_carrier(const Filter& a, const Filter& b) {
  if (!a.carrier || !b.carrier || !same_lattice(*a.carrier, *b.carrier))
    throw CarrierMismatch("filters live on different lattices");
}

Filter checked(const FinLattice& W, Bitset S, const char* what) {
  if (auto v = filter_violation(W, S))
    throw std::logic_error(std::string(what) + " produced a non-filter: " + v->to_string());
  return Filter{&W, S};
}

}  // namespace

std::string FilterViolation::to_string() const {
  switch (kind) {
    case Kind::Empty:
      return "empty set";
    case Kind::NotUpper:
      return "not upper: contains " + std::to_string(w) + " but not " + std::to_string(v);
    case Kind::NotMeetClosed:
      return "not meet-closed: contains " + std::to_string(w) + " and " + std::to_string(v) +
             " but not their meet";
  }
  return "unknown violation";
}

std::optional<FilterViolation> filter_violation(const FinLattice& W, Bitset S) {
  S &= W.carrier_mask();

  // Raw definition: non-empty, upper, filtered (some member below each pair).
  bool raw_ok = S != 0;
  if (raw_ok) {
    for (int w : BitRange(S)) {
      if ((W.up_set(w) & ~S) != 0) raw_ok = false;
    }
  }
  if (raw_ok) {
    for (int w : BitRange(S)) {
      for (int v : BitRange(S))
        if ((S & W.down_set(w) & W.down_set(v)) == 0) raw_ok = false;
    }
  }

  // Sub-meet-semilattice characterization, which also names the witness.
  std::optional<FilterViolation> diag;
  if (S == 0) {
    diag = FilterViolation{FilterViolation::Kind::Empty};
  } else {
    for (int w : BitRange(S)) {
      Bitset missing = W.up_set(w) & ~S;
      if (missing != 0) {
        diag = FilterViolation{FilterViolation::Kind::NotUpper, w, first_bit(missing)};
        break;
      }
    }
    if (!diag) {
      for (int w : BitRange(S)) {
        for (int v : BitRange(S)) {
          if (!has_bit(S, W.meet(w, v))) {
            diag = FilterViolation{FilterViolation::Kind::NotMeetClosed, w, v};
            break;
          }
        }
        if (diag) break;
      }
    }
  }

  if (raw_ok != !diag.has_value())
    throw std::logic_error("filter characterizations disagree on a meet-semilattice");
  return diag;
}

bool is_filter(const FinLattice& W, Bitset S) { return !filter_violation(W, S).has_value(); }

Filter make_filter(const FinLattice& W, Bitset S) {
  if (auto v = filter_violation(W, S)) throw ValidationError("not a filter: " + v->to_string());
  return Filter{&W, S};
}

Filter principal_filter(const FinLattice& W, int w) { return Filter{&W, W.up_set(w)}; }

int FilterLattice::index_of(Bitset f) const {
  auto it = std::find(filters.begin(), filters.end(), f);
  return it == filters.end() ? -1 : static_cast<int>(it - filters.begin());
}

namespace {

// The sweeps rebuild Filt(W) for the same handful of lattices thousands of
// times; memoize the carrier-independent part, keyed by the order table.
struct FilterData {
  std::vector<Bitset> filters;
  FinLattice order;
};

std::string lattice_key(const FinLattice& W) {
  std::string key(W.poset.leq.begin(), W.poset.leq.end());
  key.push_back('#');
  key += std::to_string(W.n());
  return key;
}

std::mutex filter_cache_mutex;
std::map<std::string, FilterData>& filter_cache() {
  static std::map<std::string, FilterData> cache;
  return cache;
}

}  // namespace

FilterLattice enumerate_filters(const FinLattice& W) {
  {
    std::scoped_lock lock(filter_cache_mutex);
    auto it = filter_cache().find(lattice_key(W));
    if (it != filter_cache().end())
      return FilterLattice{&W, it->second.filters, it->second.order};
  }
  const int n = W.n();
  std::vector<Bitset> by_principal;
  for (int w = 0; w < n; ++w) by_principal.push_back(W.up_set(w));
  std::sort(by_principal.begin(), by_principal.end());
  by_principal.erase(std::unique(by_principal.begin(), by_principal.end()), by_principal.end());

  std::vector<Bitset> filters;
  if (n <= kFilterScanLimit) {
    for (Bitset S = 1; S <= W.carrier_mask(); ++S)
      if (is_filter(W, S)) filters.push_back(S);
    if (filters != by_principal)
      throw std::logic_error("filter scan disagrees with principal enumeration");
  } else {
    filters = by_principal;
    for (Bitset S : filters)
      if (!is_filter(W, S)) throw std::logic_error("principal up-set is not a filter");
  }

  std::sort(filters.begin(), filters.end(), [](Bitset a, Bitset b) {
    return std::pair(popcount(a), a) < std::pair(popcount(b), b);
  });

  const int m = static_cast<int>(filters.size());
  FinPoset inclusion;
  inclusion.n = m;
  inclusion.leq.resize(static_cast<size_t>(m) * m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      inclusion.leq[static_cast<size_t>(a) * m + b] = (filters[a] & ~filters[b]) == 0 ? 1 : 0;

  FilterLattice FL;
  FL.carrier = &W;
  FL.filters = std::move(filters);
  FL.order = complete_lattice(inclusion);

  // Cross-check the bound-scan tables against the locale formulas.
  if (FL.filters[FL.order.bottom] != W.up_set(W.top) ||
      FL.filters[FL.order.top] != W.carrier_mask())
    throw std::logic_error("filter lattice bounds are not {top} and W");
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      Filter fa = FL.at(a), fb = FL.at(b);
      if (FL.filters[FL.order.meet(a, b)] != (fa.members & fb.members))
        throw std::logic_error("filter meet is not intersection");
      if (FL.filters[FL.order.join(a, b)] != filter_join(fa, fb).members)
        throw std::logic_error("filter join disagrees with the pairwise-meet closure");
    }
  {
    std::scoped_lock lock(filter_cache_mutex);
    filter_cache().emplace(lattice_key(W), FilterData{FL.filters, FL.order});
  }
  return FL;
}

Filter filter_meet(const Filter& f1, const Filter& f2) {
  require_same_carrier(f1, f2);
  return checked(*f1.carrier, f1.members & f2.members, "filter_meet");
}

Filter filter_join(const Filter& f1, const Filter& f2) {
  require_same_carrier(f1, f2);
  const FinLattice& W = *f1.carrier;
  Bitset out = 0;
  for (int a : BitRange(f1.members))
    for (int b : BitRange(f2.members)) out |= W.up_set(W.meet(a, b));
  return checked(W, out, "filter_join");
}

Filter filter_heyting(const Filter& f1, const Filter& f2) {
  require_same_carrier(f1, f2);
  const FinLattice& W = *f1.carrier;
  if (!W.distributive)
    throw ValidationError("filter exponential requires a distributive carrier");
  Bitset out = 0;
  for (int w = 0; w < W.n(); ++w)
    if ((W.up_set(w) & f1.members & ~f2.members) == 0) out |= bit(w);
  return checked(W, out, "filter_heyting");
}

std::vector<int> compact_elements(const FilterLattice& FL) {
  const FinLattice& O = FL.order;
  const int m = O.n();
  if (m > 22) throw CapExceeded("compactness scan infeasible beyond 22 filters");
  // ub[x][y]: elements above both x and y; X is directed iff every pair of
  // members has an upper bound inside X.
  std::vector<Bitset> ub(static_cast<size_t>(m) * m);
  for (int x = 0; x < m; ++x)
    for (int y = 0; y < m; ++y) ub[static_cast<size_t>(x) * m + y] = O.up_set(x) & O.up_set(y);

  std::vector<std::uint8_t> compact(m, 1);
  for (Bitset X = 1; X <= full_mask(m); ++X) {
    bool directed = true;
    int sup = -1;
    for (int x : BitRange(X)) {
      sup = sup == -1 ? x : O.join(sup, x);
      for (int y : BitRange(X))
        if ((ub[static_cast<size_t>(x) * m + y] & X) == 0) {
          directed = false;
          break;
        }
      if (!directed) break;
    }
    if (!directed) continue;
    for (int d = 0; d < m; ++d) {
      if (!compact[d] || !O.le(d, sup)) continue;
      if ((O.up_set(d) /* == {x : d <= x} */ & X) == 0) compact[d] = 0;
    }
  }

  std::vector<int> out;
  for (int d = 0; d < m; ++d)
    if (compact[d]) out.push_back(d);
  return out;
}

CoherenceReport coherent_reconstruct(const FinLattice& W) {
  if (!W.distributive) throw ValidationError("coherent reconstruction requires distributivity");
  CoherenceReport rep;
  rep.orientation_note =
      "filter inclusion reverses the order of principals, so the isomorphism "
      "exhibited is Filt(W) = Filt(opposite(K)) rather than Filt(K)";

  FilterLattice FL = enumerate_filters(W);
  rep.compact_indices = compact_elements(FL);
  const FinLattice& O = FL.order;
  Bitset compact_mask = 0;
  for (int c : rep.compact_indices) compact_mask |= bit(c);

  rep.joins_of_compacts = true;
  for (int d = 0; d < O.n(); ++d) {
    int j = O.bottom;
    for (int c : rep.compact_indices)
      if (O.le(c, d)) j = O.join(j, c);
    if (j != d) {
      rep.joins_of_compacts = false;
      rep.failure = "element " + std::to_string(d) + " is not a join of compacts";
      return rep;
    }
  }

  rep.compacts_sublattice = has_bit(compact_mask, O.bottom) && has_bit(compact_mask, O.top);
  for (int a : rep.compact_indices)
    for (int b : rep.compact_indices)
      if (!has_bit(compact_mask, O.meet(a, b)) || !has_bit(compact_mask, O.join(a, b)))
        rep.compacts_sublattice = false;
  if (!rep.compacts_sublattice) {
    rep.failure = "compact elements do not form a sublattice";
    return rep;
  }

  // The compacts as a lattice in their own right, then its filter locale
  // with the order flipped back.
  const int k = static_cast<int>(rep.compact_indices.size());
  FinPoset kp;
  kp.n = k;
  kp.leq.resize(static_cast<size_t>(k) * k);
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b)
      kp.leq[static_cast<size_t>(a) * k + b] =
          O.le(rep.compact_indices[a], rep.compact_indices[b]) ? 1 : 0;
  FinLattice K = complete_lattice(kp);
  FinLattice K_op = opposite(K);
  FilterLattice FL2 = enumerate_filters(K_op);

  auto iso = find_lattice_isomorphism(FL.order, FL2.order);
  if (!iso) {
    rep.failure = "no isomorphism Filt(W) = Filt(opposite(K))";
    return rep;
  }
  rep.isomorphism = *iso;
  rep.ok = true;
  return rep;
}

ScottExtension scott_extend(const MonotoneMap& f) {
  if (auto v = monotonicity_violation(f))
    throw ValidationError("map not monotone at (" + std::to_string(v->first) + "," +
                          std::to_string(v->second) + ")");
  JoinPreservationCheck jp = check_join_preserving(f);
  if (!jp.ok) throw ValidationError("not join-preserving: " + jp.to_string());

  const FinLattice& S = *f.source;
  const FinLattice& L = *f.target;

  ScottExtension ext;
  ext.opposite_source = opposite(S);
  FilterLattice FL = enumerate_filters(ext.opposite_source);
  ext.domain_filters = FL.filters;
  ext.domain_order = FL.order;

  ext.principal.resize(S.n());
  for (int w = 0; w < S.n(); ++w) {
    int idx = FL.index_of(ext.opposite_source.up_set(w));
    if (idx < 0) throw std::logic_error("principal filter missing from enumeration");
    ext.principal[w] = idx;
  }

  ext.sigma.resize(FL.size());
  for (int i = 0; i < FL.size(); ++i) {
    int j = L.bottom;
    for (int w : BitRange(ext.domain_filters[i])) j = L.join(j, f.apply(w));
    ext.sigma[i] = j;
  }
  for (int w = 0; w < S.n(); ++w)
    if (ext.sigma[ext.principal[w]] != f.apply(w))
      throw std::logic_error("extension disagrees with f on a principal filter");

  // Right adjoint by exhaustive max: the largest filter sigma maps below y.
  ext.nerve.resize(L.n());
  for (int y = 0; y < L.n(); ++y) {
    int best = -1;
    for (int i = 0; i < FL.size(); ++i) {
      if (!L.le(ext.sigma[i], y)) continue;
      if (best == -1 || ext.domain_order.le(best, i)) best = i;
    }
    if (best == -1) throw std::logic_error("nerve candidate set empty");
    for (int i = 0; i < FL.size(); ++i)
      if (L.le(ext.sigma[i], y) && !ext.domain_order.le(i, best))
        throw std::logic_error("nerve candidates have no maximum");
    ext.nerve[y] = best;
  }
  return ext;
}

std::string StableCheck::to_string() const {
  if (ok) return "stable";
  if (top_failed) return "top not preserved";
  return "meet not preserved at (" + std::to_string(a) + "," + std::to_string(b) + ")";
}

StableCheck is_stable_map(const MonotoneMap& f) {
  const FinLattice& s = *f.source;
  const FinLattice& t = *f.target;
  if (f.apply(s.top) != t.top) return {false, true};
  for (int a = 0; a < s.n(); ++a)
    for (int b = 0; b < s.n(); ++b)
      if (f.apply(s.meet(a, b)) != t.meet(f.apply(a), f.apply(b))) return {false, false, a, b};
  return {};
}

Filter preimage(const MonotoneMap& f, const Filter& F) {
  StableCheck sc = is_stable_map(f);
  if (!sc.ok) throw ValidationError("preimage requires a stable map: " + sc.to_string());
  if (!F.carrier || !same_lattice(*F.carrier, *f.target))
    throw CarrierMismatch("filter does not live on the map's target");
  Bitset out = 0;
  for (int v = 0; v < f.source->n(); ++v)
    if (F.contains(f.apply(v))) out |= bit(v);
  return checked(*f.source, out, "preimage");
}

DualityRoundtrip duality_roundtrip(const MonotoneMap& f) {
  StableCheck sc = is_stable_map(f);
  if (!sc.ok) throw ValidationError("duality roundtrip requires a stable map: " + sc.to_string());
  const FinLattice& W = *f.source;
  const FinLattice& Wp = *f.target;
  FilterLattice FW = enumerate_filters(W);
  FilterLattice FWp = enumerate_filters(Wp);

  DualityRoundtrip out;
  out.preimage_table.resize(FWp.size());
  for (int t = 0; t < FWp.size(); ++t) {
    int idx = FW.index_of(preimage(f, FWp.at(t)).members);
    if (idx < 0) throw std::logic_error("preimage missing from filter enumeration");
    out.preimage_table[t] = idx;
  }

  // Left adjoint by exhaustive min over candidates T with S <= pre(T).
  out.left_adjoint.resize(FW.size());
  for (int s = 0; s < FW.size(); ++s) {
    int best = -1;
    for (int t = 0; t < FWp.size(); ++t) {
      if (!FW.order.le(s, out.preimage_table[t])) continue;
      if (best == -1 || FWp.order.le(t, best)) best = t;
    }
    if (best == -1) throw std::logic_error("left adjoint candidate set empty");
    for (int t = 0; t < FWp.size(); ++t)
      if (FW.order.le(s, out.preimage_table[t]) && !FWp.order.le(best, t))
        throw std::logic_error("left adjoint candidates have no minimum");
    out.left_adjoint[s] = best;
  }

  out.adjunction_ok = true;
  for (int s = 0; s < FW.size(); ++s)
    for (int t = 0; t < FWp.size(); ++t) {
      bool lhs = FWp.order.le(out.left_adjoint[s], t);
      bool rhs = FW.order.le(s, out.preimage_table[t]);
      if (lhs != rhs) out.adjunction_ok = false;
    }

  out.compacts_preserved = true;
  out.recovered.assign(W.n(), -1);
  for (int w = 0; w < W.n(); ++w) {
    int s = FW.index_of(W.up_set(w));
    Bitset image = FWp.filters[out.left_adjoint[s]];
    int g = first_bit(image);
    if (image != Wp.up_set(g)) {
      out.compacts_preserved = false;
      continue;
    }
    out.recovered[w] = g;
  }
  out.equal = out.compacts_preserved && out.recovered == f.table;
  return out;
}

}  // namespace stablelab
