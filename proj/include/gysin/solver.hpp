#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gysin/error.hpp"

namespace gysin {

/// Facts about one map in an exact sequence over a field. An isomorphism
/// is recorded through the two component flags.
struct MapFact {
  bool zero = false;
  bool injective = false;
  bool surjective = false;
  bool is_iso() const { return injective && surjective; }
};

/// An exact sequence over a field with partial knowledge: slot dimensions
/// (optional) and per-map facts. When bounded, slots beyond both ends are
/// zero and exactness holds at the end slots too. Slots sharing a group_id
/// denote the same group (long exact sequences repeat their entries), so a
/// dimension learned at one slot holds at all of them.
struct LesProblem {
  std::vector<std::string> labels;       // one per slot
  std::vector<std::optional<int>> dims;  // one per slot
  std::vector<MapFact> maps;             // size = slots - 1
  std::vector<int> group_id;             // optional; empty = all distinct
  bool bounded = true;
};

struct SolvedReport {
  std::vector<std::optional<int>> dims;
  std::vector<MapFact> maps;
  std::vector<std::string> deductions;
};

/// Fixed-point propagation of exactness constraints:
///  - a zero slot forces the adjacent maps to vanish;
///  - a zero map makes the next map injective and the previous surjective;
///  - injective kills the previous map, surjective kills the next;
///  - injective + surjective = isomorphism, equating the two dimensions;
///  - on a window flanked by zero maps the alternating dimension sum
///    vanishes, which pins a single unknown dimension.
/// Throws Contradiction on inconsistent input.
inline SolvedReport les_solve(const LesProblem& prob) {
  const int n = int(prob.labels.size());
  if (int(prob.dims.size()) != n || int(prob.maps.size()) + 1 != n)
    throw BadParams("les_solve: slot/map count mismatch");
  SolvedReport st{prob.dims, prob.maps, {}};
  auto slot_name = [&](int i) {
    return prob.labels[i].empty() ? "slot " + std::to_string(i)
                                  : prob.labels[i];
  };
  if (!prob.group_id.empty() && int(prob.group_id.size()) != n)
    throw BadParams("les_solve: group_id size mismatch");
  bool changed = false;
  auto set_one = [&](int i, long v, const std::string& why) {
    if (v < 0) throw Contradiction("negative dimension at " + slot_name(i));
    if (st.dims[i]) {
      if (*st.dims[i] != v)
        throw Contradiction("dimension clash at " + slot_name(i) + ": " +
                            std::to_string(*st.dims[i]) + " vs " +
                            std::to_string(v) + " (" + why + ")");
      return;
    }
    st.dims[i] = int(v);
    st.deductions.push_back("dim " + slot_name(i) + " = " + std::to_string(v) +
                            " (" + why + ")");
    changed = true;
  };
  auto set_dim = [&](int i, long v, const std::string& why) {
    set_one(i, v, why);
    if (!prob.group_id.empty())
      for (int j = 0; j < n; ++j)
        if (prob.group_id[j] == prob.group_id[i] && j != i)
          set_one(j, v, "same group as " + slot_name(i));
  };
  // seed: aliased slots share any known dimension up front
  if (!prob.group_id.empty())
    for (int i = 0; i < n; ++i)
      if (st.dims[i]) set_dim(i, *st.dims[i], "given");
  auto set_map = [&](int i, bool MapFact::* field, const char* what,
                     const std::string& why) {
    if (st.maps[i].*field) return;
    st.maps[i].*field = true;
    st.deductions.push_back("map " + slot_name(i) + " -> " + slot_name(i + 1) +
                            " is " + what + " (" + why + ")");
    changed = true;
  };
  // a zero map on the given side of slot i, counting the virtual maps
  // beyond the ends of a bounded sequence
  auto zero_before = [&](int i) {
    return i == 0 ? prob.bounded : st.maps[i - 1].zero;
  };
  auto zero_after = [&](int i) {
    return i == n - 1 ? prob.bounded : st.maps[i].zero;
  };

  int guard = 0;
  do {
    if (++guard > 10 * n + 100) throw Error("les_solve: no fixed point");
    changed = false;
    for (int i = 0; i < n; ++i) {
      if (st.dims[i] && *st.dims[i] == 0) {
        if (i > 0) {
          set_map(i - 1, &MapFact::zero, "zero", "target is zero");
          set_map(i - 1, &MapFact::surjective, "surjective", "target is zero");
        }
        if (i < n - 1) {
          set_map(i, &MapFact::zero, "zero", "source is zero");
          set_map(i, &MapFact::injective, "injective", "source is zero");
        }
      }
      if (zero_before(i) && zero_after(i))
        set_dim(i, 0, "flanked by zero maps");
    }
    for (int i = 0; i + 1 < n; ++i) {
      // exactness at the source slot of map i
      if (zero_before(i))
        set_map(i, &MapFact::injective, "injective",
                "exactness after a zero map");
      // exactness at the target slot of map i
      if (zero_after(i + 1))
        set_map(i, &MapFact::surjective, "surjective",
                "exactness before a zero map");
      if (st.maps[i].injective && i > 0)
        set_map(i - 1, &MapFact::zero, "zero", "next map is injective");
      if (st.maps[i].surjective && i + 1 < n - 1)
        set_map(i + 1, &MapFact::zero, "zero", "previous map is surjective");
      if (st.maps[i].is_iso()) {
        if (st.dims[i]) set_dim(i + 1, *st.dims[i], "isomorphic slots");
        if (st.dims[i + 1]) set_dim(i, *st.dims[i + 1], "isomorphic slots");
      }
      if (st.dims[i] && st.dims[i + 1]) {
        if (st.maps[i].injective && *st.dims[i] > *st.dims[i + 1])
          throw Contradiction("injective map from " + slot_name(i) +
                              " into smaller " + slot_name(i + 1));
        if (st.maps[i].surjective && *st.dims[i] < *st.dims[i + 1])
          throw Contradiction("surjective map from " + slot_name(i) +
                              " onto larger " + slot_name(i + 1));
      }
    }
    // alternating sums on windows flanked by zero maps
    std::vector<int> cuts;
    if (prob.bounded) cuts.push_back(-1);
    for (int i = 0; i + 1 < n; ++i)
      if (st.maps[i].zero) cuts.push_back(i);
    if (prob.bounded) cuts.push_back(n - 1);
    for (size_t c = 0; c + 1 < cuts.size(); ++c) {
      int a = cuts[c] + 1, b = cuts[c + 1];
      if (a > b) continue;
      int unknown = -1, count = 0;
      long sum = 0;
      for (int i = a; i <= b; ++i) {
        if (!st.dims[i]) {
          unknown = i;
          ++count;
        } else {
          sum += ((i - a) % 2 == 0) ? *st.dims[i] : -*st.dims[i];
        }
      }
      if (count == 0 && sum != 0)
        throw Contradiction(
            "alternating dimension sum is nonzero on the exact window " +
            slot_name(a) + " .. " + slot_name(b));
      if (count == 1)
        set_dim(unknown, ((unknown - a) % 2 == 0) ? -sum : sum,
                "alternating sum over an exact window");
    }
  } while (changed);
  return st;
}

}  // namespace gysin
