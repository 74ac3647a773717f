#pragma once

#include <string>
#include <vector>

#include "gysin/lattice.hpp"

namespace gysin {

/// Finitely generated abelian group in invariant-factor form:
/// Z^free_rank + Z/d1 + ... + Z/dk with d1 | d2 | ... and each di >= 2.
/// Over a field the torsion list is empty and free_rank is the dimension.
struct FGAbelianGroup {
  int free_rank = 0;
  std::vector<Int> torsion;

  static FGAbelianGroup free(int r) { return FGAbelianGroup{r, {}}; }

  bool is_trivial() const { return free_rank == 0 && torsion.empty(); }

  bool operator==(const FGAbelianGroup& o) const {
    return free_rank == o.free_rank && torsion == o.torsion;
  }
  bool operator!=(const FGAbelianGroup& o) const { return !(*this == o); }

  /// Order of the group; 0 stands for infinite.
  Int order() const {
    if (free_rank > 0) return 0;
    Int n = 1;
    for (const Int& d : torsion) n *= d;
    return n;
  }

  bool chain_valid() const {
    for (size_t i = 0; i < torsion.size(); ++i) {
      if (torsion[i] < 2) return false;
      if (i + 1 < torsion.size() && !divides(torsion[i], torsion[i + 1]))
        return false;
    }
    return true;
  }

  /// Direct sum, renormalized back into a divisibility chain.
  FGAbelianGroup direct_sum(const FGAbelianGroup& o) const {
    std::vector<Int> all = torsion;
    all.insert(all.end(), o.torsion.begin(), o.torsion.end());
    FGAbelianGroup r;
    r.free_rank = free_rank + o.free_rank;
    if (!all.empty()) {
      IntMat D(int(all.size()), int(all.size()));
      for (int i = 0; i < int(all.size()); ++i) D(i, i) = all[i];
      lin::SnfResult s = lin::snf(Ring::Z(), D);
      for (const Int& d : s.diag())
        if (d >= 2) r.torsion.push_back(d);
    }
    return r;
  }

  std::string to_string() const {
    if (is_trivial()) return "0";
    std::string s;
    if (free_rank == 1) s = "Z";
    else if (free_rank > 1) s = "Z^" + std::to_string(free_rank);
    for (const Int& d : torsion) {
      if (!s.empty()) s += "+";
      s += "Z/" + gysin::to_string(d);
    }
    return s;
  }
};

}  // namespace gysin
