#include "cylkit/search.hpp"

#include <algorithm>
#include <set>

namespace cylkit {

namespace {

struct Slot {
  enum Family { T, R, P, D } family;
  int i = 0, j = 0;

  bool operator<(const Slot& o) const {
    if (family != o.family) return family < o.family;
    if (i != o.i) return i < o.i;
    return j < o.j;
  }
};

void collect_slots(const Term& t, std::set<Slot>& slots) {
  switch (t.kind) {
    case TermKind::Cyl:
      slots.insert({Slot::T, t.i, 0});
      break;
    case TermKind::CylSet:
      for (int g : t.gamma) slots.insert({Slot::T, g, 0});
      break;
    case TermKind::Subst:
      slots.insert({Slot::R, t.i, t.j});
      break;
    case TermKind::Perm:
      slots.insert({Slot::P, t.i, t.j});
      break;
    case TermKind::Diag:
      slots.insert({Slot::D, t.i, t.j});
      break;
    default:
      break;
  }
  for (const auto& c : t.children) collect_slots(*c, slots);
}

}  // namespace

SearchResult search_counterexample(const Equation& eq, Dimension dim,
                                   const SearchBounds& bounds) {
  if (bounds.max_atoms < 1 || bounds.max_atoms > 6)
    throw InputError("search supports 1..6 atoms");

  // General s_sigma nodes are expanded first so slots are concrete.
  Equation flat{expand_sigma(eq.lhs), expand_sigma(eq.rhs), eq.label};
  std::set<Slot> slot_set;
  collect_slots(*flat.lhs, slot_set);
  collect_slots(*flat.rhs, slot_set);
  const std::vector<Slot> slots(slot_set.begin(), slot_set.end());

  CheckStrategy strat;
  strat.mode = CheckStrategy::Exhaustive;

  SearchResult result;
  for (int n = 1; n <= bounds.max_atoms; ++n) {
    const uint64_t rel_options = uint64_t(1) << (n * n);  // subsets of X^2
    const uint64_t set_options = uint64_t(1) << n;        // subsets of X
    // Odometer over the slot contents, least-significant slot first.
    std::vector<uint64_t> counter(slots.size(), 0);
    auto option_count = [&](const Slot& s) {
      return s.family == Slot::D ? set_options : rel_options;
    };
    while (true) {
      if (result.structures_tried >= bounds.max_structures) {
        result.budget_exhausted = true;
        return result;
      }
      ++result.structures_tried;

      duality::AtomStructure s(n, dim);
      for (size_t k = 0; k < slots.size(); ++k) {
        const Slot& slot = slots[k];
        if (slot.family == Slot::D) {
          std::vector<int> atoms;
          for (int a = 0; a < n; ++a)
            if ((counter[k] >> a) & 1) atoms.push_back(a);
          s.set_D(slot.i, slot.j, std::move(atoms));
        } else {
          std::vector<duality::AtomPair> pairs;
          for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y)
              if ((counter[k] >> (x * n + y)) & 1) pairs.emplace_back(x, y);
          switch (slot.family) {
            case Slot::T: s.set_T(slot.i, std::move(pairs)); break;
            case Slot::R: s.set_R(slot.i, slot.j, std::move(pairs)); break;
            case Slot::P: s.set_P(slot.i, slot.j, std::move(pairs)); break;
            case Slot::D: break;
          }
        }
      }

      const auto alg = duality::FiniteAlgebra::cm(s);
      const Verdict v = check_equation(alg, flat, strat);
      if (v.status == Verdict::CounterexampleFound) {
        result.found = true;
        result.structure = s;
        result.counterexample = v.detail;
        return result;
      }

      if (slots.empty()) break;  // constant equation: one structure per n
      size_t pos = 0;
      while (pos < slots.size() && ++counter[pos] == option_count(slots[pos])) {
        counter[pos] = 0;
        ++pos;
      }
      if (pos == slots.size()) break;
    }
  }
  return result;
}

}  // namespace cylkit
